#include "tz/solenoid.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tz/errors.hpp"
#include "tz/number_theory.hpp"

namespace tz {

namespace {

Integer power(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    guard_bits(out);
    return out;
}

Rational power(const Rational& base, unsigned long e) {
    return make_rational(power(Integer(base.get_num()), e), power(Integer(base.get_den()), e));
}

/// F(j) = alpha^j - beta^j once no prime of S0 is a unit for xi.
std::pair<Integer, Integer> alpha_beta(const Rational& xi) {
    const Integer a = xi.get_num();
    const Integer b = xi.get_den();
    if (abs(a) > abs(b)) return {abs(a), sgn(a) * b};
    return {abs(b), sgn(b) * a};
}

std::vector<Integer> unit_primes(const SolenoidSpec& s) {
    std::vector<Integer> out;
    for (const auto& p : s.primes())
        if (!mpz_divisible_p(s.xi().get_num().get_mpz_t(), p.get_mpz_t()) &&
            !mpz_divisible_p(s.xi().get_den().get_mpz_t(), p.get_mpz_t()))
            out.push_back(p);
    return out;
}

constexpr std::size_t kFirstWindow = 8;
constexpr std::size_t kLastWindow = 64;
constexpr std::size_t kBoundaryProbeTerms = 40;
constexpr std::size_t kShortRecurrence = 12;

}  // namespace

SolenoidSpec::SolenoidSpec(std::vector<Integer> primes, Rational xi) : primes_(std::move(primes)), xi_(std::move(xi)) {
    xi_.canonicalize();
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (const auto& p : primes_)
        if (!is_prime(p)) throw std::invalid_argument("solenoid: S0 entry " + tz::to_string(p) + " is not prime");
    if (xi_ == 0 || xi_ == 1 || xi_ == -1)
        throw std::invalid_argument("solenoid: multiplier xi = " + tz::to_string(xi_) +
                                    " must not be 0 or a root of unity");
    if (strip_primes(xi_.get_den(), primes_) != 1)
        throw std::invalid_argument("solenoid: denominator of xi = " + tz::to_string(xi_) +
                                    " has a prime outside S0, so x -> xi x does not map Z[1/S0] into itself");
}

Integer SolenoidSpec::dominant() const { return std::max(Integer(abs(xi_.get_num())), Integer(xi_.get_den())); }

std::string SolenoidSpec::to_string() const {
    std::ostringstream out;
    out << "x -> (" << tz::to_string(xi_) << ") x on Z[1/S0], S0 = {";
    for (std::size_t i = 0; i < primes_.size(); ++i) out << (i ? ", " : "") << tz::to_string(primes_[i]);
    out << "}";
    return out.str();
}

Integer periodic_count(const SolenoidSpec& s, unsigned long j) {
    if (j == 0) throw std::invalid_argument("periodic_count: j must be >= 1");
    const Rational x = power(s.xi(), j) - 1;
    Rational value = abs_inf(x);
    for (const auto& p : s.primes()) value *= p_adic_abs(x, p);
    if (!is_integer(value) || value < 1)
        throw std::logic_error("periodic_count: place product " + tz::to_string(value) + " is not a positive integer");
    return value.get_num();
}

std::vector<Integer> periodic_counts(const SolenoidSpec& s, std::size_t count) {
    std::vector<Integer> out;
    out.reserve(count);
    for (unsigned long j = 1; j <= count; ++j) out.push_back(periodic_count(s, j));
    return out;
}

TruncatedSeriesQ zeta_series(const SolenoidSpec& s, std::size_t order) {
    if (order == 0) throw std::invalid_argument("zeta_series: order must be >= 1");
    const auto f = periodic_counts(s, order);
    return exp_zeta_series(std::span<const Integer>(f));
}

RationalClosedForm rational_closed_form(const SolenoidSpec& s) {
    if (!unit_primes(s).empty())
        throw MathError("rational_closed_form: some p in S0 has |xi|_p = 1, so the zeta function is not rational");
    for (std::size_t window = kFirstWindow; window <= kLastWindow; window *= 2) {
        const auto f = periodic_counts(s, 2 * window);
        const std::vector<Rational> terms(f.begin(), f.end());
        const std::span<const Rational> all(terms);
        const auto rec = berlekamp_massey(all.first(window));
        if (!rec || !rec->reproduces(all)) continue;
        const auto product = exponential_product(*rec, all);
        if (!product || !product->has_integer_exponents())
            throw std::logic_error("rational_closed_form: characteristic roots are not rational");
        RationalClosedForm out{product->to_rational_function(), *product, *rec, window};
        if (series_of_rational(out.zeta, 2 * window) != exp_zeta_series(std::span<const Integer>(f)))
            throw std::logic_error("rational_closed_form: closed form disagrees with the series");
        return out;
    }
    throw std::logic_error("rational_closed_form: no recurrence found");
}

std::string to_string(DichotomyVerdict::Tag tag) {
    return tag == DichotomyVerdict::Tag::rational ? "RATIONAL" : "NATURAL_BOUNDARY";
}

DichotomyVerdict classify(const SolenoidSpec& s) {
    DichotomyVerdict v;
    v.witnesses = unit_primes(s);
    v.radius = make_rational(1, s.dominant());
    if (v.witnesses.empty()) {
        v.tag = DichotomyVerdict::Tag::rational;
        v.closed_form = rational_closed_form(s);
        return v;
    }
    v.tag = DichotomyVerdict::Tag::natural_boundary;
    const auto f = periodic_counts(s, kBoundaryProbeTerms);
    const auto rec = berlekamp_massey(std::span<const Integer>(f));
    v.no_short_recurrence = !rec || rec->order() > kShortRecurrence;
    return v;
}

unsigned long lte_valuation(const Rational& xi, const Integer& p, unsigned long n) {
    if (n == 0) throw std::invalid_argument("lte_valuation: n must be >= 1");
    if (p == 2) throw std::invalid_argument("lte_valuation: p = 2 is not covered by lifting the exponent");
    if (!is_prime(p)) throw std::invalid_argument("lte_valuation: " + tz::to_string(p) + " is not prime");
    if (mpz_divisible_p(xi.get_num().get_mpz_t(), p.get_mpz_t()) ||
        mpz_divisible_p(xi.get_den().get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("lte_valuation: |xi|_p must be 1");
    const std::uint64_t d = multiplicative_order(xi, p);
    if (n % d != 0) return 0;
    const long base = valuation(Rational(power(xi, d) - 1), p);
    return static_cast<unsigned long>(base) + valuation(Integer(n / d), p);
}

BoundaryExpansion boundary_expansion(const SolenoidSpec& s, unsigned depth, std::size_t order) {
    if (order == 0) throw std::invalid_argument("boundary_expansion: order must be >= 1");
    const auto witnesses = unit_primes(s);
    if (witnesses.empty()) throw MathError("boundary expansion needs a natural-boundary spec; this one is rational");
    if (witnesses.size() > 1)
        throw MathError("boundary expansion supports a single witness prime; found " +
                        std::to_string(witnesses.size()));
    const Integer& p = witnesses.front();
    if (p == 2) throw MathError("boundary expansion declined: witness prime 2 is not covered by lifting the exponent");

    BoundaryExpansion out;
    out.prime = p;
    out.depth = depth;
    out.order_d = multiplicative_order(s.xi(), p);
    out.lift_e = lte_valuation(s.xi(), p, out.order_d);

    const auto [alpha, beta] = alpha_beta(s.xi());
    const unsigned long d = out.order_d;
    const Integer big_a = power(alpha, d);
    const Integer big_b = power(beta, d);
    const Rational inv_d = make_rational(1, Integer(d));
    const Rational p_e = make_rational(1, power(p, out.lift_e));

    auto ratio = [](const Integer& num_root, const Integer& den_root, std::size_t degree) {
        return RationalFunctionQ(Polynomial::from_integers({Integer(1), Integer(-num_root)}).inflate(degree),
                                 Polynomial::from_integers({Integer(1), Integer(-den_root)}).inflate(degree));
    };

    // d not dividing j
    out.factors.push_back({ratio(beta, alpha, 1), Rational(1)});
    out.factors.push_back({ratio(big_b, big_a, d), Rational(-inv_d)});
    // d | j, split by v_p(j / d)
    out.factors.push_back({ratio(big_b, big_a, d), Rational(p_e * inv_d)});
    for (unsigned k = 1; k <= depth; ++k) {
        const Integer pk = power(p, k);
        const unsigned long pk_ui = pk.get_ui();
        const Rational weight = make_rational(Integer(p - 1), power(p, out.lift_e + 2 * k)) * inv_d;
        out.factors.push_back({ratio(power(big_a, pk_ui), power(big_b, pk_ui), d * pk_ui), weight});
    }

    TruncatedSeriesQ product(order);
    product[0] = 1;
    for (const auto& f : out.factors) product = product * series_of_rational(f.base, order).pow(f.exponent);
    const TruncatedSeriesQ zeta = zeta_series(s, order);
    out.residual = zeta * product.inverse();

    const Integer horizon = Integer(d) * power(p, depth + 1) - 1;
    out.exact_order = horizon < Integer(static_cast<unsigned long>(order)) ? horizon.get_ui() : order;
    if (agreement_order(zeta, product) <= out.exact_order)
        throw std::logic_error("boundary_expansion: truncated product disagrees with the series");
    return out;
}

}  // namespace tz
