#include "tz/fgab.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tz/errors.hpp"
#include "tz/orbit_zeta.hpp"

namespace tz {

namespace {

Integer mod_floor(const Integer& x, const Integer& n) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return r;
}

IntMatrix shaped(const IntMatrix& m, std::size_t rows, std::size_t cols, const char* name) {
    if (m.rows() == rows && m.cols() == cols) return m;
    if (m.rows() == 0 && m.cols() == 0 && rows * cols == 0) return IntMatrix(rows, cols);
    throw std::invalid_argument(std::string("endomorphism: block ") + name + " must be " + std::to_string(rows) + "x" +
                                std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
}

IntMatrix submatrix(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    IntMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

/// Quotient structure of Z^k by the lattice spanned by the columns of gens:
/// (free rank, order of the torsion).
std::pair<std::size_t, Integer> quotient_signature(const IntMatrix& gens) {
    const std::size_t k = gens.rows();
    if (gens.cols() == 0) return {k, Integer(1)};
    const SmithForm snf = smith_normal_form(gens);
    Integer order = 1;
    for (std::size_t i = 0; i < snf.rank; ++i) order *= snf.invariants[i];
    return {k - snf.rank, order};
}

/// Basis (columns) of the lattice spanned by the columns of gens.
IntMatrix lattice_basis(const IntMatrix& gens) {
    const SmithForm snf = smith_normal_form(gens);
    IntMatrix basis(gens.rows(), snf.rank);
    for (std::size_t i = 0; i < gens.rows(); ++i)
        for (std::size_t j = 0; j < snf.rank; ++j) basis(i, j) = snf.left_inverse(i, j) * snf.invariants[j];
    return basis;
}

/// Coordinates of each column of v in a lattice basis with Smith form snf.
IntMatrix lattice_coordinates(const SmithForm& snf, const IntMatrix& v) {
    const IntMatrix uv = snf.left * v;
    const std::size_t q = snf.rank;
    IntMatrix y(snf.right.rows(), v.cols());
    for (std::size_t c = 0; c < v.cols(); ++c) {
        for (std::size_t i = 0; i < uv.rows(); ++i) {
            if (i < q) {
                if (!mpz_divisible_p(uv(i, c).get_mpz_t(), snf.invariants[i].get_mpz_t()))
                    throw std::logic_error("lattice_coordinates: vector outside the lattice");
                y(i, c) = uv(i, c) / snf.invariants[i];
            } else if (uv(i, c) != 0) {
                throw std::logic_error("lattice_coordinates: vector outside the lattice");
            }
        }
    }
    return snf.right * y;
}

struct Presented {
    FgAbEndo endo;
    IntMatrix projection;  ///< new coordinates = projection * old
    IntMatrix section;     ///< columns: old coordinates of the new generators
};

/// The endomorphism induced by t on Z^k / (column span of rel); rel must be t-invariant.
Presented present(const IntMatrix& t, const IntMatrix& rel) {
    const std::size_t k = t.rows();
    IntMatrix u = IntMatrix::identity(k);
    IntMatrix uinv = IntMatrix::identity(k);
    std::vector<Integer> d(k, Integer(0));
    if (k > 0 && rel.cols() > 0) {
        SmithForm snf = smith_normal_form(rel);
        u = std::move(snf.left);
        uinv = std::move(snf.left_inverse);
        for (std::size_t i = 0; i < snf.invariants.size(); ++i) d[i] = snf.invariants[i];
    }
    std::vector<std::size_t> free_idx, tors_idx;
    for (std::size_t i = 0; i < k; ++i) {
        if (d[i] == 0)
            free_idx.push_back(i);
        else if (d[i] != 1)
            tors_idx.push_back(i);
    }
    const IntMatrix conj = u * t * uinv;
    for (std::size_t i : free_idx)
        for (std::size_t j : tors_idx)
            if (conj(i, j) != 0) throw std::logic_error("present: torsion maps into the free part");

    FgAbGroup group;
    group.rank = free_idx.size();
    for (std::size_t i : tors_idx) group.torsion.push_back(d[i]);
    FgAbEndo endo(group, submatrix(conj, free_idx, free_idx), submatrix(conj, tors_idx, free_idx),
                  submatrix(conj, tors_idx, tors_idx));

    std::vector<std::size_t> kept = free_idx;
    kept.insert(kept.end(), tors_idx.begin(), tors_idx.end());
    std::vector<std::size_t> all(k);
    for (std::size_t i = 0; i < k; ++i) all[i] = i;
    return {std::move(endo), submatrix(u, kept, all), submatrix(uinv, all, kept)};
}

std::pair<std::size_t, Integer> group_signature(const FgAbGroup& g) { return {g.rank, g.torsion_order()}; }

std::size_t reduction_step_limit(const FgAbEndo& e) {
    return e.lift().rows() + mpz_sizeinbase(e.group().torsion_order().get_mpz_t(), 2) + 4;
}

constexpr unsigned long kMaxEnumeratedOrder = 1UL << 20;
constexpr std::size_t kFirstWindow = 16;
constexpr std::size_t kLastWindow = 128;
constexpr std::size_t kExtraTerms = 10;

}  // namespace

void FgAbGroup::validate() const {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i] < 2)
            throw std::invalid_argument("group: torsion invariant n_" + std::to_string(i + 1) + " = " +
                                        tz::to_string(torsion[i]) + " must be >= 2");
        if (i > 0 && !mpz_divisible_p(torsion[i].get_mpz_t(), torsion[i - 1].get_mpz_t()))
            throw std::invalid_argument("group: torsion invariants must form a chain n_1 | n_2 | ..., but " +
                                        tz::to_string(torsion[i - 1]) + " does not divide " +
                                        tz::to_string(torsion[i]));
    }
}

Integer FgAbGroup::torsion_order() const {
    Integer order = 1;
    for (const auto& n : torsion) order *= n;
    return order;
}

std::string FgAbGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream out;
    bool first = true;
    if (rank > 0) {
        out << "Z";
        if (rank > 1) out << "^" << rank;
        first = false;
    }
    for (const auto& n : torsion) {
        if (!first) out << " + ";
        first = false;
        out << "Z/" << tz::to_string(n);
    }
    return out.str();
}

FgAbEndo::FgAbEndo(FgAbGroup group, IntMatrix free_part, IntMatrix mixing, IntMatrix torsion_part)
    : group_(std::move(group)) {
    group_.validate();
    const std::size_t r = group_.rank;
    const std::size_t s = group_.torsion.size();
    a_ = shaped(free_part, r, r, "A");
    b_ = shaped(mixing, s, r, "B");
    c_ = shaped(torsion_part, s, s, "C");
    for (std::size_t i = 0; i < s; ++i) {
        const Integer& ni = group_.torsion[i];
        for (std::size_t j = 0; j < s; ++j) {
            if (!mpz_divisible_p(Integer(group_.torsion[j] * c_(i, j)).get_mpz_t(), ni.get_mpz_t()))
                throw std::invalid_argument("endomorphism: C[" + std::to_string(i) + "][" + std::to_string(j) +
                                            "] = " + tz::to_string(c_(i, j)) + " does not define a homomorphism (n_" +
                                            std::to_string(j + 1) + " * C[i][j] must vanish mod n_" +
                                            std::to_string(i + 1) + ")");
            c_(i, j) = mod_floor(c_(i, j), ni);
        }
        for (std::size_t j = 0; j < r; ++j) b_(i, j) = mod_floor(b_(i, j), ni);
    }
}

FgAbEndo FgAbEndo::free(const IntMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("endomorphism: A must be square");
    return FgAbEndo(FgAbGroup{a.rows(), {}}, a, IntMatrix(), IntMatrix());
}

FgAbEndo FgAbEndo::finite(std::vector<Integer> invariants, const IntMatrix& c) {
    return FgAbEndo(FgAbGroup{0, std::move(invariants)}, IntMatrix(), IntMatrix(), c);
}

IntMatrix FgAbEndo::lift() const {
    const std::size_t r = group_.rank;
    const std::size_t s = group_.torsion.size();
    IntMatrix m(r + s, r + s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m(i, j) = a_(i, j);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < r; ++j) m(r + i, j) = b_(i, j);
        for (std::size_t j = 0; j < s; ++j) m(r + i, r + j) = c_(i, j);
    }
    return m;
}

IntMatrix FgAbEndo::relations() const {
    const std::size_t r = group_.rank;
    const std::size_t s = group_.torsion.size();
    IntMatrix rel(r + s, s);
    for (std::size_t i = 0; i < s; ++i) rel(r + i, i) = group_.torsion[i];
    return rel;
}

IntMatrix FgAbEndo::reduce_rows(IntMatrix m) const {
    const std::size_t r = group_.rank;
    for (std::size_t i = 0; i < group_.torsion.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(r + i, j) = mod_floor(m(r + i, j), group_.torsion[i]);
    return m;
}

IntMatrix FgAbEndo::lifted_power(unsigned long n) const {
    const IntMatrix base0 = lift();
    IntMatrix result = IntMatrix::identity(base0.rows());
    IntMatrix base = base0;
    while (n > 0) {
        if (n & 1UL) result = reduce_rows(result * base);
        n >>= 1UL;
        if (n > 0) base = reduce_rows(base * base);
    }
    return result;
}

ReidemeisterCount::ReidemeisterCount(Integer value) : value_(std::move(value)) {
    if (*value_ < 1) throw std::invalid_argument("Reidemeister count must be positive");
}

ReidemeisterCount ReidemeisterCount::infinite() { return ReidemeisterCount(); }

const Integer& ReidemeisterCount::value() const {
    if (!value_) throw MathError("Reidemeister number is infinite");
    return *value_;
}

std::string ReidemeisterCount::to_string() const { return value_ ? tz::to_string(*value_) : "INFINITE"; }

bool ReidemeisterSequence::zeta_defined() const {
    return std::none_of(values.begin(), values.end(), [](const auto& v) { return v.is_infinite(); });
}

std::vector<Integer> ReidemeisterSequence::finite_values() const {
    std::vector<Integer> out;
    out.reserve(values.size());
    for (std::size_t n = 0; n < values.size(); ++n) {
        if (values[n].is_infinite())
            throw MathError("R(phi^" + std::to_string(n + 1) +
                            ") is infinite (Coker(phi^n - id) has positive rank), so the Reidemeister zeta "
                            "function is undefined");
        out.push_back(values[n].value());
    }
    return out;
}

FiniteMap dual_character_map(const FgAbEndo& e) {
    if (e.rank() != 0) throw std::invalid_argument("dual_character_map: group has a free part");
    if (e.group().torsion_order() > kMaxEnumeratedOrder)
        throw std::invalid_argument("dual_character_map: group order exceeds 2^20");
    const auto& n = e.group().torsion;
    const std::size_t s = n.size();
    const IntMatrix& c = e.torsion_part();
    std::vector<unsigned long> radix(s);
    std::size_t size = 1;
    for (std::size_t i = 0; i < s; ++i) {
        radix[i] = n[i].get_ui();
        size *= radix[i];
    }
    // chi'_j = sum_i C[i][j] (n_j / n_i) chi_i mod n_j
    std::vector<std::vector<unsigned long>> hat(s, std::vector<unsigned long>(s));
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < s; ++i) {
            const Integer v = mod_floor(c(i, j) * n[j] / n[i], n[j]);
            hat[j][i] = v.get_ui();
        }
    std::vector<std::size_t> table(size);
    std::vector<unsigned long> chi(s, 0);
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = s; i-- > 0;) {
            chi[i] = rest % radix[i];
            rest /= radix[i];
        }
        std::size_t image = 0;
        for (std::size_t j = 0; j < s; ++j) {
            unsigned long long acc = 0;
            for (std::size_t i = 0; i < s; ++i) acc = (acc + static_cast<unsigned long long>(hat[j][i]) * chi[i]) % radix[j];
            image = image * radix[j] + static_cast<std::size_t>(acc);
        }
        table[idx] = image;
    }
    return FiniteMap(std::move(table));
}

ReidemeisterCount reidemeister_number(const FgAbEndo& e, unsigned long n) {
    if (n == 0) throw std::invalid_argument("reidemeister_number: n must be >= 1");
    const IntMatrix p = e.lifted_power(n) - IntMatrix::identity(e.lift().rows());
    const std::size_t m = p.rows();
    if (m == 0) return ReidemeisterCount(Integer(1));
    const SmithForm snf = smith_normal_form(p.hconcat(e.relations()));
    if (snf.rank < m) return ReidemeisterCount::infinite();
    Integer order = 1;
    for (std::size_t i = 0; i < m; ++i) order *= snf.invariants[i];
    guard_bits(order);
    return ReidemeisterCount(order);
}

ReidemeisterSequence reidemeister_sequence(const FgAbEndo& e, std::size_t count) {
    ReidemeisterSequence seq;
    seq.values.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) seq.values.push_back(reidemeister_number(e, n));
    return seq;
}

Integer lefschetz_number(const IntMatrix& a, unsigned long n) {
    if (!a.is_square()) throw std::invalid_argument("lefschetz_number: matrix not square");
    Integer total = 0;
    for (std::size_t k = 0; k <= a.rows(); ++k) {
        const Integer t = exterior_power(a, k).power(n).trace();
        if (k % 2 == 0)
            total += t;
        else
            total -= t;
    }
    return total;
}

RationalFunctionQ lefschetz_zeta(const IntMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("lefschetz_zeta: matrix not square");
    Polynomial num = Polynomial::constant(1);
    Polynomial den = Polynomial::constant(1);
    for (std::size_t k = 0; k <= a.rows(); ++k) {
        const Polynomial f = reciprocal_characteristic_polynomial(exterior_power(a, k));
        if (k % 2 == 1)
            num = num * f;
        else
            den = den * f;
    }
    return RationalFunctionQ(num, den);
}

SignData sigma_r_p(const IntMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("sigma_r_p: matrix not square");
    const Polynomial cp = characteristic_polynomial(a);
    if (cp.eval(1) == 0) throw MathError("free part has eigenvalue +1: det(A - I) = 0, so R(phi) is infinite");
    if (cp.eval(-1) == 0)
        throw MathError("free part has eigenvalue -1: det(A^2 - I) = 0, so R(phi^2) is infinite");
    SignData out;
    out.p = count_real_roots(cp, RealInterval{std::nullopt, Rational(-1)});
    out.r = out.p + count_real_roots(cp, RealInterval{Rational(1), std::nullopt});
    out.sigma = (out.p % 2 == 0) ? 1 : -1;
    return out;
}

std::string to_string(ClosedFormRoute route) {
    switch (route) {
        case ClosedFormRoute::lefschetz: return "lefschetz";
        case ClosedFormRoute::dual_orbits: return "dual-orbits";
        case ClosedFormRoute::recurrence: return "recurrence";
        case ClosedFormRoute::none: return "none";
    }
    return "none";
}

ZetaForm reidemeister_zeta(const FgAbEndo& e, std::size_t order) {
    if (order == 0) throw std::invalid_argument("reidemeister_zeta: order must be >= 1");
    const IntMatrix& a = e.free_part();
    const std::size_t r = e.rank();
    const std::size_t s = e.group().torsion_count();

    ZetaForm out;
    out.sequence = reidemeister_sequence(e, order).finite_values();
    if (r > 0) {
        const Polynomial cp = characteristic_polynomial(a);
        if (has_root_of_unity(cp)) {
            std::uint64_t k = 1;
            while (Polynomial::gcd(cp, cyclotomic(k)).degree() < 1) ++k;
            throw MathError("free part has an eigenvalue that is a primitive " + std::to_string(k) +
                            "-th root of unity, so R(phi^" + std::to_string(k) +
                            ") is infinite and the Reidemeister zeta function is undefined");
        }
    }
    out.series = exp_zeta_series(std::span<const Integer>(out.sequence));

    auto require_agreement = [&](const RationalFunctionQ& f) {
        if (series_of_rational(f, order) != out.series)
            throw std::logic_error("reidemeister_zeta: closed form disagrees with the series");
    };

    if (r > 0 && s == 0) {
        out.signs = sigma_r_p(a);
        out.closed_form = lefschetz_zeta(a).scale_variable(out.signs->sigma).pow(out.signs->r % 2 == 0 ? 1 : -1);
        out.route = ClosedFormRoute::lefschetz;
        require_agreement(*out.closed_form);
        return out;
    }

    if (r == 0 && e.group().torsion_order() <= kMaxEnumeratedOrder) {
        out.closed_form = zeta_from_orbits(dual_character_map(e)).zeta;
        out.route = ClosedFormRoute::dual_orbits;
        require_agreement(*out.closed_form);
        return out;
    }

    std::vector<Rational> terms(out.sequence.begin(), out.sequence.end());
    for (std::size_t window = kFirstWindow; window <= kLastWindow; window *= 2) {
        while (terms.size() < window + kExtraTerms)
            terms.emplace_back(reidemeister_number(e, terms.size() + 1).value());
        const std::span<const Rational> probe(terms.data(), window + kExtraTerms);
        const auto rec = berlekamp_massey(probe.first(window));
        if (!rec || !rec->reproduces(probe)) continue;
        out.certificate = rec;
        const auto product = exponential_product(*rec, probe);
        if (product && product->has_integer_exponents()) {
            out.product = product;
            out.closed_form = product->to_rational_function();
            out.route = ClosedFormRoute::recurrence;
            require_agreement(*out.closed_form);
        }
        return out;
    }
    return out;
}

FunctionalEquationCheck verify_functional_equation(const RationalFunctionQ& f, const Integer& d, std::size_t m,
                                                   std::size_t r) {
    if (d == 0) throw std::invalid_argument("functional equation: degree d must be nonzero");
    FunctionalEquationCheck out;
    const RationalFunctionQ lhs = f.substitute_reciprocal(Rational(d));
    out.quotient = lhs / f.pow(m % 2 == 0 ? 1 : -1);
    if (!out.quotient.is_constant()) return out;
    const Rational q = out.quotient.constant_value();
    if (q == 0) return out;
    out.holds = true;
    out.epsilon = (r % 2 == 0) ? q : Rational(1 / q);
    return out;
}

Reduction eventual_image(const FgAbEndo& e) {
    const IntMatrix m = e.lift();
    const IntMatrix rel = e.relations();
    const std::size_t k = m.rows();
    if (k == 0 || quotient_signature(m.hconcat(rel)) == std::pair<std::size_t, Integer>{0, Integer(1)})
        return {e, IntMatrix::identity(k), 0};

    auto image = [&](unsigned long step) {
        const IntMatrix basis = lattice_basis(e.lifted_power(step).hconcat(rel));
        const SmithForm snf = smith_normal_form(basis);
        Presented p = present(lattice_coordinates(snf, m * basis), lattice_coordinates(snf, rel));
        return std::pair<IntMatrix, Presented>(basis * p.section, std::move(p));
    };

    const std::size_t limit = reduction_step_limit(e);
    auto current = image(1);
    for (unsigned long step = 1; step <= limit; ++step) {
        auto next = image(step + 1);
        if (group_signature(current.second.endo.group()) == group_signature(next.second.endo.group()))
            return {std::move(current.second.endo), std::move(current.first), step};
        current = std::move(next);
    }
    throw std::logic_error("eventual_image: image chain did not stabilize");
}

Reduction nilpotent_radical_quotient(const FgAbEndo& e) {
    const IntMatrix m = e.lift();
    const IntMatrix rel = e.relations();
    const std::size_t k = m.rows();
    if (k == 0) return {e, IntMatrix(), 0};

    auto kernel = [&](unsigned long step) {
        const IntMatrix ker = integer_kernel(e.lifted_power(step).hconcat(rel));
        IntMatrix top(k, ker.cols());
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < ker.cols(); ++j) top(i, j) = ker(i, j);
        return top.hconcat(rel);
    };

    IntMatrix current = kernel(1);
    if (quotient_signature(current) == quotient_signature(rel)) return {e, IntMatrix::identity(k), 0};
    const std::size_t limit = reduction_step_limit(e);
    for (unsigned long step = 1; step <= limit; ++step) {
        IntMatrix next = kernel(step + 1);
        if (quotient_signature(current) == quotient_signature(next)) {
            Presented p = present(m, current);
            return {std::move(p.endo), std::move(p.projection), step};
        }
        current = std::move(next);
    }
    throw std::logic_error("nilpotent_radical_quotient: kernel chain did not stabilize");
}

}  // namespace tz
