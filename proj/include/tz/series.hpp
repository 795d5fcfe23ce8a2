#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tz/integer.hpp"
#include "tz/polynomial.hpp"
#include "tz/rational_function.hpp"

namespace tz {

/// Formal power series truncated after z^N: exactly N + 1 rational
/// coefficients c_0..c_N.
class TruncatedSeriesQ {
public:
    explicit TruncatedSeriesQ(std::size_t order);
    TruncatedSeriesQ(std::size_t order, const std::vector<Rational>& leading_coefficients);
    static TruncatedSeriesQ from_polynomial(const Polynomial& p, std::size_t order);

    std::size_t order() const { return coeffs_.size() - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
    Rational& operator[](std::size_t k) { return coeffs_[k]; }

    /// Same series truncated at a lower order.
    TruncatedSeriesQ truncate(std::size_t order) const;

    /// Requires c_0 == 1.
    TruncatedSeriesQ log() const;
    /// Requires c_0 == 0.
    TruncatedSeriesQ exp() const;
    /// Requires c_0 == 1; exact for every rational exponent.
    TruncatedSeriesQ pow(const Rational& exponent) const;
    /// Requires c_0 != 0.
    TruncatedSeriesQ inverse() const;

    TruncatedSeriesQ operator-() const;
    friend TruncatedSeriesQ operator+(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b);
    friend TruncatedSeriesQ operator-(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b);
    friend TruncatedSeriesQ operator*(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b);
    friend TruncatedSeriesQ operator*(const Rational& c, const TruncatedSeriesQ& s);
    friend bool operator==(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b) = default;

    std::vector<std::string> to_strings() const;

private:
    std::vector<Rational> coeffs_;
};

/// Coefficients of exp(sum_{n=1}^N a_n z^n / n) through z^N.
/// Throws std::invalid_argument for an empty sequence.
TruncatedSeriesQ exp_zeta_series(std::span<const Rational> values);
TruncatedSeriesQ exp_zeta_series(std::span<const Integer> values);

/// The sum_{n>=1} a_n z^n / n recovered from a zeta-type series (c_0 = 1);
/// entry n of the result is a_n.
std::vector<Rational> zeta_log_coefficients(const TruncatedSeriesQ& zeta);

/// Taylor coefficients at 0 through z^N. Throws MathError when the
/// denominator vanishes at the origin.
TruncatedSeriesQ series_of_rational(const RationalFunctionQ& f, std::size_t order);

/// Index of the first coefficient where the two series differ, or
/// min(order)+1 when they agree on the common range.
std::size_t agreement_order(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b);

}  // namespace tz
