#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tz/integer.hpp"

namespace tz {

/// Univariate polynomial over Q, coefficients stored in ascending degree.
/// Trailing zero coefficients are never stored, so the zero polynomial has
/// an empty coefficient vector and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);
    Polynomial(std::initializer_list<long> coefficients);

    static Polynomial constant(const Rational& c);
    /// c * z^k
    static Polynomial monomial(const Rational& c, std::size_t k);
    static Polynomial from_integers(const std::vector<Integer>& coefficients);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coeff(std::size_t k) const;
    Rational leading() const;

    Rational eval(const Rational& x) const;
    Polynomial derivative() const;
    /// p(s z)
    Polynomial scale_variable(const Rational& s) const;
    /// p(z^k)
    Polynomial inflate(std::size_t k) const;
    /// z^n p(1/z); requires n >= degree().
    Polynomial reversed(std::size_t n) const;
    Polynomial monic() const;
    Polynomial pow(unsigned e) const;

    /// Integer coefficients with gcd 1 and positive leading coefficient,
    /// together with the rational c such that *this == c * result.
    std::pair<Rational, std::vector<Integer>> primitive_part() const;
    bool has_integer_coefficients() const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    /// Polynomial long division; throws std::domain_error on a zero divisor.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
    /// Monic gcd; gcd(0, 0) = 0.
    static Polynomial gcd(const Polynomial& a, const Polynomial& b);

    /// Human-readable form in the variable `var`, e.g. "1 - 2z + z^2".
    std::string to_string(const std::string& var = "z") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Squarefree decomposition p = c * f_1 * f_2^2 * ... (Yun). Returns the
/// pairs (f_i, i) for the non-constant factors, each f_i monic.
std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& p);

/// Open interval with optional (infinite) endpoints.
struct RealInterval {
    std::optional<Rational> lo;  ///< nullopt means -infinity
    std::optional<Rational> hi;  ///< nullopt means +infinity
};

/// Number of real roots of p in the open interval, counted with
/// multiplicity. Throws std::invalid_argument for p == 0 or lo >= hi.
std::size_t count_real_roots(const Polynomial& p, const RealInterval& interval);

/// All rational roots of p with multiplicities, ascending.
std::vector<std::pair<Rational, unsigned>> rational_roots(const Polynomial& p);

/// n-th cyclotomic polynomial.
Polynomial cyclotomic(std::uint64_t n);

/// True when some root of unity is a root of p.
bool has_root_of_unity(const Polynomial& p);

/// True when exp(2 pi i a / b) is a root of p.
bool vanishes_at_root_of_unity(const Polynomial& p, const Integer& a, const Integer& b);

}  // namespace tz
