#include "tz/orbit_zeta.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tz/number_theory.hpp"

namespace tz {

FiniteMap::FiniteMap(std::vector<std::size_t> table) : table_(std::move(table)) {
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (table_[i] >= table_.size())
            throw std::invalid_argument("map: t[" + std::to_string(i) + "] = " + std::to_string(table_[i]) +
                                        " is outside [0, " + std::to_string(table_.size()) + ")");
}

std::size_t OrbitDecomposition::periodic_points() const {
    return std::accumulate(cycle_lengths.begin(), cycle_lengths.end(), std::size_t{0});
}

OrbitDecomposition orbit_decomposition(const FiniteMap& f) {
    const std::size_t n = f.size();
    // 0 = unvisited, 1 = on the current path, 2 = finished
    std::vector<unsigned char> state(n, 0);
    std::vector<std::size_t> path;
    OrbitDecomposition out;
    for (std::size_t start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        path.clear();
        std::size_t x = start;
        while (state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = f(x);
        }
        if (state[x] == 1) {
            const auto at = std::find(path.begin(), path.end(), x);
            out.cycle_lengths.push_back(static_cast<std::size_t>(path.end() - at));
        }
        for (std::size_t y : path) state[y] = 2;
    }
    std::sort(out.cycle_lengths.begin(), out.cycle_lengths.end());
    out.transient = n - out.periodic_points();
    return out;
}

Integer fixed_count(const OrbitDecomposition& orbits, unsigned long n) {
    if (n == 0) throw std::invalid_argument("fixed_count: n must be >= 1");
    Integer total = 0;
    for (std::size_t len : orbits.cycle_lengths)
        if (n % len == 0) total += static_cast<unsigned long>(len);
    return total;
}

Integer fixed_count(const FiniteMap& f, unsigned long n) { return fixed_count(orbit_decomposition(f), n); }

bool orbit_functional_equation_holds(const RationalFunctionQ& zeta, std::size_t a, std::size_t b) {
    const RationalFunctionQ lhs = zeta.substitute_reciprocal(1);
    const Rational sign = (a % 2 == 0) ? 1 : -1;
    const RationalFunctionQ rhs = RationalFunctionQ(Polynomial::monomial(sign, b)) * zeta;
    return lhs == rhs;
}

OrbitZeta zeta_from_orbits(const OrbitDecomposition& orbits) {
    Polynomial den = Polynomial::constant(1);
    for (std::size_t len : orbits.cycle_lengths) den = den * (Polynomial{1} - Polynomial::monomial(1, len));
    OrbitZeta out;
    out.zeta = RationalFunctionQ(Polynomial::constant(1), den);
    out.a = orbits.cycle_lengths.size();
    out.b = orbits.periodic_points();
    out.functional_equation = orbit_functional_equation_holds(out.zeta, out.a, out.b);
    return out;
}

OrbitZeta zeta_from_orbits(const FiniteMap& f) { return zeta_from_orbits(orbit_decomposition(f)); }

TruncatedSeriesQ FormalProduct::series(std::size_t order) const {
    // log(1 - z^d) = -sum_k z^(dk) / k
    TruncatedSeriesQ log_sum(order);
    for (const auto& factor : factors) {
        if (factor.d == 0) throw std::invalid_argument("FormalProduct: d must be >= 1");
        for (std::uint64_t k = 1; factor.d * k <= order; ++k)
            log_sum[factor.d * k] -= factor.exponent / Rational(Integer(static_cast<unsigned long>(k)));
    }
    return log_sum.exp();
}

std::string FormalProduct::to_string() const {
    if (factors.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& factor : factors) {
        if (!first) out << " * ";
        first = false;
        out << "(1 - z";
        if (factor.d != 1) out << "^" << factor.d;
        out << ")^(" << tz::to_string(factor.exponent) << ")";
    }
    return out.str();
}

PeriodicProduct periodic_product_formula(std::uint64_t m, const std::map<std::uint64_t, Integer>& values) {
    if (m == 0) throw std::invalid_argument("periodic product: period m must be >= 1");
    const auto ds = divisors(m);
    for (std::uint64_t d : ds)
        if (!values.contains(d))
            throw std::invalid_argument("periodic product: missing Z(phi^" + std::to_string(d) + ") for divisor " +
                                        std::to_string(d) + " of the period " + std::to_string(m));
    PeriodicProduct out;
    out.period = m;
    for (std::uint64_t d : ds) {
        Integer p = 0;
        for (std::uint64_t d1 : divisors(d)) p += mobius(d1) * values.at(d / d1);
        out.primitive[d] = p;
        if (p < 0) out.warnings.push_back("P(" + std::to_string(d) + ") = " + tz::to_string(p) + " is negative");
        if (mpz_divisible_ui_p(p.get_mpz_t(), d) == 0)
            out.warnings.push_back("P(" + std::to_string(d) + ") = " + tz::to_string(p) + " is not divisible by " +
                                   std::to_string(d));
        if (p != 0)
            out.product.factors.push_back({d, -Rational(p) / Rational(Integer(static_cast<unsigned long>(d)))});
    }
    return out;
}

std::vector<Integer> periodic_extension(std::uint64_t m, const std::map<std::uint64_t, Integer>& values,
                                        std::size_t count) {
    std::vector<Integer> out;
    out.reserve(count);
    for (std::uint64_t n = 1; n <= count; ++n) {
        const std::uint64_t g = std::gcd(n, m);
        const auto it = values.find(g);
        if (it == values.end())
            throw std::invalid_argument("periodic extension: missing Z(phi^" + std::to_string(g) + ")");
        out.push_back(it->second);
    }
    return out;
}

FormalProduct prime_period_form(std::uint64_t m, const Integer& z1, const Integer& zm) {
    if (!is_prime(Integer(static_cast<unsigned long>(m))))
        throw std::invalid_argument("prime period form needs a prime period");
    FormalProduct out;
    out.factors.push_back({1, -Rational(z1)});
    out.factors.push_back({m, Rational(z1 - zm) / Rational(Integer(static_cast<unsigned long>(m)))});
    return out;
}

}  // namespace tz
