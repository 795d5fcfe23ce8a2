#include "tz/number_theory.hpp"

#include <numeric>
#include <stdexcept>

namespace tz {

int mobius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius: n must be positive");
    int result = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("divisors: n must be positive");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    n = abs(n);
    std::vector<std::pair<Integer, unsigned>> out;
    for (Integer p = 2; p * p <= n; ++p) {
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) == 0) continue;
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(const Integer& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) != 0; }

unsigned long valuation(const Integer& x, const Integer& p) {
    if (x == 0) throw std::invalid_argument("valuation: zero has infinite valuation");
    Integer rest = x;
    return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

long valuation(const Rational& x, const Integer& p) {
    if (x == 0) throw std::invalid_argument("valuation: zero has infinite valuation");
    return static_cast<long>(valuation(x.get_num(), p)) - static_cast<long>(valuation(x.get_den(), p));
}

Rational p_adic_abs(const Rational& x, const Integer& p) {
    if (x == 0) throw std::invalid_argument("p_adic_abs: |0|_p is zero, valuation infinite");
    if (!is_prime(p)) throw std::invalid_argument("p_adic_abs: " + to_string(p) + " is not prime");
    const long v = valuation(x, p);
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
    return v >= 0 ? make_rational(1, power) : Rational(power);
}

Integer strip_primes(Integer n, const std::vector<Integer>& primes) {
    n = abs(n);
    if (n == 0) return n;
    for (const auto& p : primes) mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return n;
}

std::uint64_t multiplicative_order(const Rational& xi, const Integer& p) {
    if (mpz_divisible_p(xi.get_num().get_mpz_t(), p.get_mpz_t()) != 0 ||
        mpz_divisible_p(xi.get_den().get_mpz_t(), p.get_mpz_t()) != 0) {
        throw std::invalid_argument("multiplicative_order: xi is not a unit modulo p");
    }
    if (!p.fits_ulong_p()) throw std::invalid_argument("multiplicative_order: prime too large");
    Integer inv;
    mpz_invert(inv.get_mpz_t(), xi.get_den().get_mpz_t(), p.get_mpz_t());
    Integer unit = xi.get_num() * inv;
    mpz_mod(unit.get_mpz_t(), unit.get_mpz_t(), p.get_mpz_t());

    const std::uint64_t group_order = p.get_ui() - 1;
    for (std::uint64_t d : divisors(group_order)) {
        Integer r;
        mpz_powm_ui(r.get_mpz_t(), unit.get_mpz_t(), d, p.get_mpz_t());
        if (r == 1) return d;
    }
    return group_order;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

}  // namespace tz
