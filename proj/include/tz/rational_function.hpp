#pragma once

#include <string>
#include <vector>

#include "tz/integer.hpp"
#include "tz/polynomial.hpp"

namespace tz {

/// Quotient of integer-coefficient polynomials in z, kept reduced: no common
/// polynomial factor, the combined coefficient content is 1 and the
/// denominator's constant term is positive (leading coefficient if z | den).
class RationalFunctionQ {
public:
    RationalFunctionQ();  ///< the constant 1
    RationalFunctionQ(const Polynomial& numerator, const Polynomial& denominator);
    explicit RationalFunctionQ(const Polynomial& p);
    static RationalFunctionQ constant(const Rational& c);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    std::vector<Integer> numerator_coefficients() const;
    std::vector<Integer> denominator_coefficients() const;

    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Value of a constant function; throws std::logic_error otherwise.
    Rational constant_value() const;

    /// Throws MathError when z is a pole.
    Rational eval(const Rational& z) const;
    /// f(s z)
    RationalFunctionQ scale_variable(const Rational& s) const;
    /// f(1 / (d z)), rewritten as a quotient of polynomials in z.
    RationalFunctionQ substitute_reciprocal(const Rational& d) const;
    RationalFunctionQ pow(long e) const;
    RationalFunctionQ inverse() const;

    friend RationalFunctionQ operator*(const RationalFunctionQ& a, const RationalFunctionQ& b);
    friend RationalFunctionQ operator/(const RationalFunctionQ& a, const RationalFunctionQ& b);
    friend bool operator==(const RationalFunctionQ& a, const RationalFunctionQ& b) = default;

    std::string to_string() const;

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

}  // namespace tz
