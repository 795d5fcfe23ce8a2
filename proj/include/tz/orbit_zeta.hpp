#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tz/integer.hpp"
#include "tz/rational_function.hpp"
#include "tz/series.hpp"

namespace tz {

/// Self-map of {0, ..., N-1} given by its successor table.
class FiniteMap {
public:
    /// Throws std::invalid_argument when an entry is out of range.
    explicit FiniteMap(std::vector<std::size_t> table);

    std::size_t size() const { return table_.size(); }
    std::size_t operator()(std::size_t x) const { return table_[x]; }
    const std::vector<std::size_t>& table() const { return table_; }

private:
    std::vector<std::size_t> table_;
};

struct OrbitDecomposition {
    std::vector<std::size_t> cycle_lengths;  ///< ascending, with multiplicity
    std::size_t transient = 0;               ///< points on no cycle

    std::size_t periodic_points() const;
};

OrbitDecomposition orbit_decomposition(const FiniteMap& f);

/// #{x : f^n(x) = x}
Integer fixed_count(const OrbitDecomposition& orbits, unsigned long n);
Integer fixed_count(const FiniteMap& f, unsigned long n);

struct OrbitZeta {
    RationalFunctionQ zeta;  ///< prod over cycles of 1 / (1 - z^length)
    std::size_t a = 0;       ///< number of cycles
    std::size_t b = 0;       ///< number of periodic points
    bool functional_equation = false;  ///< Z(1/z) = (-1)^a z^b Z(z)
};

OrbitZeta zeta_from_orbits(const OrbitDecomposition& orbits);
OrbitZeta zeta_from_orbits(const FiniteMap& f);

/// Exact check of Z(1/z) = (-1)^a z^b Z(z) as an identity of rational functions.
bool orbit_functional_equation_holds(const RationalFunctionQ& zeta, std::size_t a, std::size_t b);

/// prod (1 - z^d)^(exponent), exponents exact rationals.
struct FormalProduct {
    struct Factor {
        std::uint64_t d = 1;
        Rational exponent;
    };
    std::vector<Factor> factors;

    /// Expansion through z^order by generalized binomial series.
    TruncatedSeriesQ series(std::size_t order) const;
    std::string to_string() const;
};

struct PeriodicProduct {
    std::uint64_t period = 1;
    std::map<std::uint64_t, Integer> primitive;  ///< P(d) for d | m
    FormalProduct product;                       ///< factors (1 - z^d)^(-P(d)/d), zero exponents omitted
    std::vector<std::string> warnings;
};

/// Builds the product from Z(phi^d) for every divisor d of the least period m.
/// Throws std::invalid_argument when a divisor value is missing.
PeriodicProduct periodic_product_formula(std::uint64_t m, const std::map<std::uint64_t, Integer>& values);

/// a_1..a_count with a_n = Z(phi^gcd(n, m)).
std::vector<Integer> periodic_extension(std::uint64_t m, const std::map<std::uint64_t, Integer>& values,
                                        std::size_t count);

/// (1 - z)^(-Z1) ((1 - z^m)^(Z1 - Zm))^(1/m) for a prime period m.
FormalProduct prime_period_form(std::uint64_t m, const Integer& z1, const Integer& zm);

}  // namespace tz
