#include "tz/rational_function.hpp"

#include <stdexcept>

#include "tz/errors.hpp"

namespace tz {

RationalFunctionQ::RationalFunctionQ() : num_(Polynomial::constant(1)), den_(Polynomial::constant(1)) {}

RationalFunctionQ::RationalFunctionQ(const Polynomial& numerator, const Polynomial& denominator)
    : num_(numerator), den_(denominator) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFunctionQ: zero denominator");
    normalize();
}

RationalFunctionQ::RationalFunctionQ(const Polynomial& p) : RationalFunctionQ(p, Polynomial::constant(1)) {}

RationalFunctionQ RationalFunctionQ::constant(const Rational& c) {
    return RationalFunctionQ(Polynomial::constant(c), Polynomial::constant(1));
}

void RationalFunctionQ::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(1);
        return;
    }
    const Polynomial g = Polynomial::gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = Polynomial::divmod(num_, g).first;
        den_ = Polynomial::divmod(den_, g).first;
    }
    auto [cn, pn] = num_.primitive_part();
    auto [cd, pd] = den_.primitive_part();
    const Rational ratio = cn / cd;
    num_ = Rational(ratio.get_num()) * Polynomial::from_integers(pn);
    den_ = Rational(ratio.get_den()) * Polynomial::from_integers(pd);
    const Rational lead = den_.coeff(0) != 0 ? den_.coeff(0) : den_.leading();
    if (lead < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

std::vector<Integer> RationalFunctionQ::numerator_coefficients() const {
    std::vector<Integer> out;
    for (const auto& c : num_.coefficients()) out.push_back(c.get_num());
    return out;
}

std::vector<Integer> RationalFunctionQ::denominator_coefficients() const {
    std::vector<Integer> out;
    for (const auto& c : den_.coefficients()) out.push_back(c.get_num());
    return out;
}

Rational RationalFunctionQ::constant_value() const {
    if (!is_constant()) throw std::logic_error("RationalFunctionQ::constant_value on non-constant function");
    return num_.coeff(0) / den_.coeff(0);
}

Rational RationalFunctionQ::eval(const Rational& z) const {
    const Rational d = den_.eval(z);
    if (d == 0) throw MathError("rational function has a pole at z = " + tz::to_string(z));
    return num_.eval(z) / d;
}

RationalFunctionQ RationalFunctionQ::scale_variable(const Rational& s) const {
    return RationalFunctionQ(num_.scale_variable(s), den_.scale_variable(s));
}

RationalFunctionQ RationalFunctionQ::substitute_reciprocal(const Rational& d) const {
    if (d == 0) throw std::invalid_argument("substitute_reciprocal: d must be nonzero");
    if (num_.is_zero()) return *this;
    // P(1/(dz)) = P~(z) / (dz)^deg P with P~(z) = sum p_i (dz)^(deg P - i).
    const auto flip = [&](const Polynomial& p) {
        const auto n = static_cast<std::size_t>(p.degree());
        return p.reversed(n).scale_variable(d);
    };
    const int dn = num_.degree();
    const int dd = den_.degree();
    Polynomial top = flip(num_);
    Polynomial bottom = flip(den_);
    // Remaining factor (dz)^(dd - dn).
    const int shift = dd - dn;
    const Polynomial dz = Polynomial::monomial(d, 1);
    if (shift > 0) top = top * dz.pow(static_cast<unsigned>(shift));
    if (shift < 0) bottom = bottom * dz.pow(static_cast<unsigned>(-shift));
    return RationalFunctionQ(top, bottom);
}

RationalFunctionQ RationalFunctionQ::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return RationalFunctionQ(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RationalFunctionQ RationalFunctionQ::inverse() const {
    if (num_.is_zero()) throw MathError("inverse of the zero rational function");
    return RationalFunctionQ(den_, num_);
}

RationalFunctionQ operator*(const RationalFunctionQ& a, const RationalFunctionQ& b) {
    return RationalFunctionQ(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunctionQ operator/(const RationalFunctionQ& a, const RationalFunctionQ& b) { return a * b.inverse(); }

std::string RationalFunctionQ::to_string() const {
    if (den_ == Polynomial::constant(1)) return num_.to_string();
    const std::string top = num_.degree() == 0 ? num_.to_string() : "(" + num_.to_string() + ")";
    return top + " / (" + den_.to_string() + ")";
}

}  // namespace tz
