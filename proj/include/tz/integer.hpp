#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tz {

using Integer = mpz_class;
using Rational = mpq_class;

/// Cap on the size in bits of intermediate integers. Zero means unlimited.
/// Process-wide; set once at startup by the CLI.
void set_bit_limit(std::size_t bits);
std::size_t bit_limit();

/// Throws BitLimitExceeded when |x| exceeds the configured cap.
void guard_bits(const Integer& x);
void guard_bits(const Rational& x);

Integer parse_integer(std::string_view text);
/// Accepts "p", "p/q" and "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& x);
/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& x);

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace tz
