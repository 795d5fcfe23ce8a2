#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tz/integer.hpp"
#include "tz/rational_function.hpp"
#include "tz/recurrence.hpp"
#include "tz/series.hpp"

namespace tz {

/// Multiplication by xi = a/b on Z[1/S0].
class SolenoidSpec {
public:
    /// Throws std::invalid_argument unless every entry of S0 is prime,
    /// xi is not 0 or +-1 and every prime factor of b lies in S0.
    SolenoidSpec(std::vector<Integer> primes, Rational xi);

    const std::vector<Integer>& primes() const { return primes_; }  ///< ascending, distinct
    const Rational& xi() const { return xi_; }
    /// max(|a|, |b|)
    Integer dominant() const;
    std::string to_string() const;

private:
    std::vector<Integer> primes_;
    Rational xi_;
};

/// |xi^j - 1|_inf * prod_{p in S0} |xi^j - 1|_p, asserted to be a positive integer.
Integer periodic_count(const SolenoidSpec& s, unsigned long j);
std::vector<Integer> periodic_counts(const SolenoidSpec& s, std::size_t count);

/// exp(sum F(j) z^j / j) through z^order.
TruncatedSeriesQ zeta_series(const SolenoidSpec& s, std::size_t order);

struct RationalClosedForm {
    RationalFunctionQ zeta;
    ExponentialProduct product;
    LinearRecurrence recurrence;
    std::size_t window = 0;  ///< terms used by the reconstruction; the series is checked to twice this
};

/// Reconstruction of the zeta function from F(j) when no prime of S0 has
/// |xi|_p = 1. Throws MathError when that condition fails.
RationalClosedForm rational_closed_form(const SolenoidSpec& s);

struct DichotomyVerdict {
    enum class Tag { rational, natural_boundary };
    Tag tag = Tag::rational;
    std::optional<RationalClosedForm> closed_form;  ///< rational case
    std::vector<Integer> witnesses;                 ///< p in S0 with |xi|_p = 1
    Rational radius;                                ///< 1 / max(|a|, |b|)
    /// Natural-boundary case: no recurrence of order <= 12 fits F(1..40).
    bool no_short_recurrence = false;
};

std::string to_string(DichotomyVerdict::Tag tag);

DichotomyVerdict classify(const SolenoidSpec& s);

/// v_p(xi^n - 1) by lifting the exponent. Throws std::invalid_argument for
/// p = 2, p not prime, or p dividing the numerator or denominator of xi.
unsigned long lte_valuation(const Rational& xi, const Integer& p, unsigned long n);

struct ExpansionFactor {
    RationalFunctionQ base;
    Rational exponent;
};

struct BoundaryExpansion {
    Integer prime;           ///< the witness p
    std::uint64_t order_d = 0;     ///< multiplicative order of xi mod p
    unsigned long lift_e = 0;      ///< v_p(xi^d - 1)
    unsigned depth = 0;            ///< J
    std::vector<ExpansionFactor> factors;
    TruncatedSeriesQ residual{0};  ///< zeta divided by the truncated product
    std::size_t exact_order = 0;   ///< min(N, d p^(J+1) - 1): agreement asserted through here
};

/// Truncated product expansion of the zeta function for a single odd
/// witness prime. Throws MathError when s is rational, has several
/// witnesses, or the witness is 2.
BoundaryExpansion boundary_expansion(const SolenoidSpec& s, unsigned depth, std::size_t order);

}  // namespace tz
