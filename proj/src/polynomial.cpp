#include "tz/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tz/number_theory.hpp"

namespace tz {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial::Polynomial(std::initializer_list<long> coefficients) {
    coeffs_.reserve(coefficients.size());
    for (long c : coefficients) coeffs_.emplace_back(c);
    trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_integers(const std::vector<Integer>& coefficients) {
    std::vector<Rational> v;
    v.reserve(coefficients.size());
    for (const auto& c : coefficients) v.emplace_back(c);
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    for (const auto& c : coeffs_) guard_bits(c);
}

Rational Polynomial::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

Rational Polynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Polynomial::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::scale_variable(const Rational& s) const {
    std::vector<Rational> v(coeffs_);
    Rational power = 1;
    for (auto& c : v) {
        c *= power;
        power *= s;
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::inflate(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("Polynomial::inflate: k must be positive");
    if (coeffs_.empty()) return {};
    std::vector<Rational> v((coeffs_.size() - 1) * k + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * k] = coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::reversed(std::size_t n) const {
    if (degree() > static_cast<int>(n)) throw std::invalid_argument("Polynomial::reversed: n below degree");
    std::vector<Rational> v(n + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[n - i] = coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    return Rational(1) / leading() * (*this);
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = constant(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

std::pair<Rational, std::vector<Integer>> Polynomial::primitive_part() const {
    if (is_zero()) return {Rational(0), {}};
    Integer den_lcm = 1;
    for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> ints;
    ints.reserve(coeffs_.size());
    Integer g = 0;
    for (const auto& c : coeffs_) {
        Integer v = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(std::move(v));
    }
    if (ints.back() < 0) g = -g;
    for (auto& v : ints) v /= g;
    return {make_rational(g, den_lcm), std::move(ints)};
}

bool Polynomial::has_integer_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Polynomial Polynomial::operator-() const {
    std::vector<Rational> v(coeffs_);
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
    std::vector<Rational> v(p.coeffs_);
    for (auto& x : v) x *= c;
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial{}, a};
    std::vector<Rational> rem(a.coeffs_);
    std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
    const Rational lead = b.leading();
    const std::size_t db = b.coeffs_.size() - 1;
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Rational q = rem[k + db] / lead;
        quot[k] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const bool show_coeff = k == 0 || mag != 1;
        if (show_coeff) {
            const bool paren = k > 0 && mag.get_den() != 1;
            if (paren) os << "(";
            os << tz::to_string(mag);
            if (paren) os << ")";
        }
        if (k >= 1) os << var;
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_decomposition of the zero polynomial");
    std::vector<std::pair<Polynomial, unsigned>> out;
    if (p.is_constant()) return out;
    // Yun's algorithm over a field of characteristic zero.
    Polynomial f = p.monic();
    Polynomial fp = f.derivative();
    Polynomial a = Polynomial::gcd(f, fp);
    Polynomial b = Polynomial::divmod(f, a).first;
    Polynomial c = Polynomial::divmod(fp, a).first;
    Polynomial d = c - b.derivative();
    unsigned i = 1;
    while (!b.is_constant()) {
        Polynomial g = Polynomial::gcd(b, d);
        if (!g.is_constant()) out.emplace_back(g, i);
        b = Polynomial::divmod(b, g).first;
        c = Polynomial::divmod(d, g).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

namespace {

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    std::vector<Polynomial> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        Polynomial r = Polynomial::divmod(chain[chain.size() - 2], chain.back()).second;
        chain.push_back(-r);
    }
    chain.pop_back();
    return chain;
}

int sign_at(const Polynomial& q, const std::optional<Rational>& x, bool at_plus_infinity) {
    if (x) return sgn(q.eval(*x));
    const int lead = sgn(q.leading());
    if (at_plus_infinity || q.degree() % 2 == 0) return lead;
    return -lead;
}

std::size_t variations(const std::vector<Polynomial>& chain, const std::optional<Rational>& x, bool plus_inf) {
    std::size_t count = 0;
    int prev = 0;
    for (const auto& q : chain) {
        const int s = sign_at(q, x, plus_inf);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

/// Distinct roots of a squarefree p in (lo, hi].
std::size_t sturm_count(const std::vector<Polynomial>& chain, const std::optional<Rational>& lo,
                        const std::optional<Rational>& hi) {
    const std::size_t v_lo = variations(chain, lo, false);
    const std::size_t v_hi = variations(chain, hi, true);
    return v_lo - v_hi;
}

}  // namespace

std::size_t count_real_roots(const Polynomial& p, const RealInterval& interval) {
    if (p.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
    if (interval.lo && interval.hi && *interval.lo >= *interval.hi) {
        throw std::invalid_argument("count_real_roots: degenerate interval");
    }
    std::size_t total = 0;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        const auto chain = sturm_chain(factor);
        std::size_t n = sturm_count(chain, interval.lo, interval.hi);
        if (interval.hi && factor.eval(*interval.hi) == 0) --n;
        total += n * mult;
    }
    return total;
}

std::vector<std::pair<Rational, unsigned>> rational_roots(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<std::pair<Rational, unsigned>> out;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        const auto [content, ints] = factor.primitive_part();
        const Polynomial f = Polynomial::from_integers(ints);
        const Integer lead = abs(ints.back());
        // Any rational root p/q has q | lead, so it lies on the lattice Z/lead.
        Rational bound = 0;
        for (std::size_t k = 0; k + 1 < ints.size(); ++k) {
            const Rational ratio = Rational(abs(ints[k])) / Rational(lead);
            if (ratio > bound) bound = ratio;
        }
        bound += 1;
        const auto chain = sturm_chain(f);
        const Rational spacing = make_rational(1, lead);

        std::function<void(const Rational&, const Rational&)> isolate = [&](const Rational& lo, const Rational& hi) {
            const std::size_t n = sturm_count(chain, lo, hi);
            if (n == 0) return;
            if (n == 1 && hi - lo < spacing) {
                Integer k;
                const Rational scaled = hi * Rational(lead);
                mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
                const Rational candidate = make_rational(k, lead);
                if (candidate > lo && f.eval(candidate) == 0) out.emplace_back(candidate, mult);
                return;
            }
            const Rational mid = (lo + hi) / 2;
            isolate(lo, mid);
            isolate(mid, hi);
        };
        isolate(-bound, bound);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

Polynomial cyclotomic(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
    Polynomial num = Polynomial::constant(1);
    Polynomial den = Polynomial::constant(1);
    for (std::uint64_t d : divisors(n)) {
        const int mu = mobius(n / d);
        if (mu == 0) continue;
        Polynomial factor = Polynomial::monomial(1, d) - Polynomial::constant(1);
        if (mu > 0) {
            num = num * factor;
        } else {
            den = den * factor;
        }
    }
    return Polynomial::divmod(num, den).first;
}

namespace {
std::uint64_t totient(std::uint64_t k) {
    std::uint64_t result = k;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
        if (k % p != 0) continue;
        while (k % p == 0) k /= p;
        result -= result / p;
    }
    if (k > 1) result -= result / k;
    return result;
}
}  // namespace

bool has_root_of_unity(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("has_root_of_unity: zero polynomial");
    const auto degree = static_cast<std::uint64_t>(std::max(p.degree(), 0));
    if (degree == 0) return false;
    // totient(k) >= sqrt(k / 2), so only k <= 2 deg^2 can matter.
    const std::uint64_t limit = 2 * degree * degree + 2;
    for (std::uint64_t k = 1; k <= limit; ++k) {
        if (totient(k) > degree) continue;
        if (Polynomial::divmod(p, cyclotomic(k)).second.is_zero()) return true;
    }
    return false;
}

bool vanishes_at_root_of_unity(const Polynomial& p, const Integer& a, const Integer& b) {
    if (b <= 0) throw std::invalid_argument("root of unity exp(2 pi i a/b) needs b >= 1");
    if (p.is_zero()) return true;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer order = b / g;
    if (!order.fits_ulong_p()) throw std::invalid_argument("root of unity order too large");
    return Polynomial::divmod(p, cyclotomic(order.get_ui())).second.is_zero();
}

}  // namespace tz
