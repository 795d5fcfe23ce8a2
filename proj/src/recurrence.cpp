#include "tz/recurrence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tz {

std::vector<Rational> LinearRecurrence::generate(std::size_t count) const {
    std::vector<Rational> out(seed.begin(), seed.begin() + static_cast<long>(std::min(count, seed.size())));
    const std::size_t L = order();
    while (out.size() < count) {
        Rational next = 0;
        for (std::size_t i = 1; i <= L; ++i) next += coefficients[i - 1] * out[out.size() - i];
        out.push_back(next);
    }
    return out;
}

bool LinearRecurrence::reproduces(std::span<const Rational> sequence) const {
    const auto gen = generate(sequence.size());
    return std::equal(gen.begin(), gen.end(), sequence.begin());
}

Polynomial LinearRecurrence::characteristic_polynomial() const {
    const std::size_t L = order();
    std::vector<Rational> c(L + 1);
    c[L] = 1;
    for (std::size_t i = 1; i <= L; ++i) c[L - i] = -coefficients[i - 1];
    return Polynomial(std::move(c));
}

std::optional<LinearRecurrence> berlekamp_massey(std::span<const Rational> s) {
    if (s.size() < 2) throw std::invalid_argument("berlekamp_massey needs at least two terms");
    // Connection polynomial C(x) = 1 + c_1 x + ... with sum_i c_i s_{n-i} = 0.
    std::vector<Rational> C{1}, B{1};
    std::size_t L = 0, m = 1;
    Rational b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        Rational d = s[n];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * s[n - i];
        if (d == 0) {
            ++m;
            continue;
        }
        const Rational coef = d / b;
        std::vector<Rational> T = C;
        if (C.size() < B.size() + m) C.resize(B.size() + m);
        for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
        if (2 * L <= n) {
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            ++m;
        }
    }
    if (L == 0 || 2 * L > s.size()) return std::nullopt;
    C.resize(L + 1);
    if (C[L] == 0) return std::nullopt;
    LinearRecurrence rec;
    rec.coefficients.resize(L);
    for (std::size_t i = 1; i <= L; ++i) rec.coefficients[i - 1] = -C[i];
    rec.seed.assign(s.begin(), s.begin() + static_cast<long>(L));
    if (!rec.reproduces(s)) return std::nullopt;
    return rec;
}

std::optional<LinearRecurrence> berlekamp_massey(std::span<const Integer> sequence) {
    std::vector<Rational> q(sequence.begin(), sequence.end());
    return berlekamp_massey(std::span<const Rational>(q));
}

bool ExponentialProduct::has_integer_exponents() const {
    return std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return is_integer(f.exponent); });
}

RationalFunctionQ ExponentialProduct::to_rational_function() const {
    if (!has_integer_exponents()) throw std::logic_error("ExponentialProduct has fractional exponents");
    RationalFunctionQ f;
    for (const auto& [w, e] : factors) {
        const RationalFunctionQ base(Polynomial{1} - Polynomial::monomial(w, 1));
        f = f * base.pow(e.get_num().get_si());
    }
    return f;
}

TruncatedSeriesQ ExponentialProduct::series(std::size_t order) const {
    TruncatedSeriesQ s(order);
    s[0] = 1;
    for (const auto& [w, e] : factors) {
        TruncatedSeriesQ base(order);
        base[0] = 1;
        if (order >= 1) base[1] = -w;
        s = s * base.pow(e);
    }
    return s;
}

std::string ExponentialProduct::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, e] : factors) {
        if (!first) os << " * ";
        first = false;
        os << "(" << (Polynomial{1} - Polynomial::monomial(w, 1)).to_string() << ")^(" << tz::to_string(e) << ")";
    }
    if (first) os << "1";
    return os.str();
}

namespace {

/// Solves the square system m x = rhs over Q by Gaussian elimination.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

}  // namespace

std::optional<ExponentialProduct> exponential_product(const LinearRecurrence& rec,
                                                      std::span<const Rational> sequence) {
    const std::size_t L = rec.order();
    if (sequence.size() < L) return std::nullopt;
    const auto roots = rational_roots(rec.characteristic_polynomial());
    if (roots.size() != L) return std::nullopt;
    for (const auto& r : roots)
        if (r.second != 1) return std::nullopt;

    // Vandermonde system a_n = sum_i d_i w_i^n for n = 1..L.
    std::vector<std::vector<Rational>> m(L, std::vector<Rational>(L));
    for (std::size_t i = 0; i < L; ++i) {
        Rational power = roots[i].first;
        for (std::size_t n = 0; n < L; ++n) {
            m[n][i] = power;
            power *= roots[i].first;
        }
    }
    const auto d = solve(m, std::vector<Rational>(sequence.begin(), sequence.begin() + static_cast<long>(L)));
    if (!d) return std::nullopt;

    for (std::size_t n = 1; n <= sequence.size(); ++n) {
        Rational value = 0;
        for (std::size_t i = 0; i < L; ++i) {
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), roots[i].first.get_num_mpz_t(), n);
            mpz_pow_ui(p.get_den_mpz_t(), roots[i].first.get_den_mpz_t(), n);
            p.canonicalize();
            value += (*d)[i] * p;
        }
        if (value != sequence[n - 1]) return std::nullopt;
    }

    ExponentialProduct out;
    for (std::size_t i = 0; i < L; ++i) {
        if ((*d)[i] == 0) continue;
        out.factors.push_back({roots[i].first, -(*d)[i]});
    }
    return out;
}

}  // namespace tz
