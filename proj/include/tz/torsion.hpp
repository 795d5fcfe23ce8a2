#pragma once

#include <string>

#include "tz/integer.hpp"
#include "tz/rational_function.hpp"

namespace tz {

struct TorsionValue {
    enum class Kind {
        value,         ///< tau = |L(lambda)|^-1, finite and positive
        pole,          ///< lambda is a root of the numerator of L: tau infinite
        zero_divisor,  ///< lambda is a root of the denominator of L: tau = 0
    };
    Kind kind = Kind::value;
    std::string decimal;  ///< fixed-point digits after the decimal point; empty unless kind == value
    unsigned digits = 0;
};

std::string to_string(TorsionValue::Kind kind);

/// |L(exp(2 pi i angle))|^-1 to `digits` decimal places. Vanishing is
/// decided exactly through cyclotomic divisibility; the value itself comes
/// from multiprecision evaluation repeated at growing precision until two
/// successive results agree well past the requested digits.
TorsionValue torsion_tau(const RationalFunctionQ& l, const Rational& angle, unsigned digits = 30);

}  // namespace tz
