#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tz/integer.hpp"

namespace tz {

/// Möbius function; throws std::invalid_argument for n == 0.
int mobius(std::uint64_t n);

/// Positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<Integer, unsigned>> factorize(Integer n);

bool is_prime(const Integer& p);

/// Largest e with p^e | x. x must be nonzero.
unsigned long valuation(const Integer& x, const Integer& p);
/// v_p(num) - v_p(den). x must be nonzero.
long valuation(const Rational& x, const Integer& p);

/// Normalised p-adic absolute value p^(-v_p(x)) for x != 0 and p prime.
Rational p_adic_abs(const Rational& x, const Integer& p);

/// Archimedean absolute value.
inline Rational abs_inf(const Rational& x) { return abs(x); }

/// Removes every factor of the given primes from |n|.
Integer strip_primes(Integer n, const std::vector<Integer>& primes);

/// Multiplicative order of xi modulo the prime p, where p divides neither
/// the numerator nor the denominator of xi.
std::uint64_t multiplicative_order(const Rational& xi, const Integer& p);

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace tz
