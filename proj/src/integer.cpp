#include "tz/integer.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#include "tz/errors.hpp"

namespace tz {

namespace {
std::atomic<std::size_t> g_bit_limit{0};
}

void set_bit_limit(std::size_t bits) { g_bit_limit.store(bits, std::memory_order_relaxed); }

std::size_t bit_limit() { return g_bit_limit.load(std::memory_order_relaxed); }

void guard_bits(const Integer& x) {
    const std::size_t limit = bit_limit();
    if (limit == 0 || sgn(x) == 0) return;
    const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
    if (bits > limit) {
        throw BitLimitExceeded("intermediate integer of " + std::to_string(bits) +
                               " bits exceeds TWISTED_ZETA_MAX_BITS=" + std::to_string(limit));
    }
}

void guard_bits(const Rational& x) {
    guard_bits(x.get_num());
    guard_bits(x.get_den());
}

Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed integer literal '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer literal '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
}

std::string to_string(const Integer& x) { return x.get_str(10); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str(10);
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

}  // namespace tz
