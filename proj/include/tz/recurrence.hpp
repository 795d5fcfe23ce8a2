#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tz/integer.hpp"
#include "tz/polynomial.hpp"
#include "tz/rational_function.hpp"
#include "tz/series.hpp"

namespace tz {

/// a_{n} = q_1 a_{n-1} + ... + q_L a_{n-L} for n > L, seeded by a_1..a_L.
struct LinearRecurrence {
    std::vector<Rational> coefficients;  ///< q_1..q_L, q_L != 0
    std::vector<Rational> seed;          ///< a_1..a_L

    std::size_t order() const { return coefficients.size(); }
    /// Terms a_1..a_count.
    std::vector<Rational> generate(std::size_t count) const;
    /// True when the recurrence reproduces every term of `sequence`.
    bool reproduces(std::span<const Rational> sequence) const;
    /// x^L - q_1 x^(L-1) - ... - q_L.
    Polynomial characteristic_polynomial() const;
};

/// Minimal linear recurrence for the sequence over Q, or nullopt when the
/// minimal order exceeds floor(len / 2) (too few terms to trust it) or the
/// minimal register is not a proper recurrence (q_L == 0).
/// Throws std::invalid_argument for fewer than two terms.
std::optional<LinearRecurrence> berlekamp_massey(std::span<const Rational> sequence);
std::optional<LinearRecurrence> berlekamp_massey(std::span<const Integer> sequence);

/// prod_i (1 - w_i z)^(e_i), a closed form for exp(sum a_n z^n / n) when
/// a_n = -sum_i e_i w_i^n.
struct ExponentialProduct {
    struct Factor {
        Rational root;      ///< w
        Rational exponent;  ///< e
    };
    std::vector<Factor> factors;

    bool has_integer_exponents() const;
    /// Throws std::logic_error unless every exponent is an integer.
    RationalFunctionQ to_rational_function() const;
    TruncatedSeriesQ series(std::size_t order) const;
    std::string to_string() const;
};

/// Writes a_n = sum_i d_i w_i^n using the recurrence's characteristic roots.
/// Succeeds only when every root is rational and simple and the resulting
/// power sum reproduces all of `sequence` (indexed from n = 1).
std::optional<ExponentialProduct> exponential_product(const LinearRecurrence& rec,
                                                      std::span<const Rational> sequence);

}  // namespace tz
