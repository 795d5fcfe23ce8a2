#include "tz/series.hpp"

#include <algorithm>
#include <stdexcept>

#include "tz/errors.hpp"

namespace tz {

TruncatedSeriesQ::TruncatedSeriesQ(std::size_t order) : coeffs_(order + 1) {}

TruncatedSeriesQ::TruncatedSeriesQ(std::size_t order, const std::vector<Rational>& leading_coefficients)
    : coeffs_(order + 1) {
    const std::size_t n = std::min(coeffs_.size(), leading_coefficients.size());
    std::copy_n(leading_coefficients.begin(), n, coeffs_.begin());
}

TruncatedSeriesQ TruncatedSeriesQ::from_polynomial(const Polynomial& p, std::size_t order) {
    return TruncatedSeriesQ(order, p.coefficients());
}

TruncatedSeriesQ TruncatedSeriesQ::truncate(std::size_t order) const {
    if (order > this->order()) throw std::invalid_argument("TruncatedSeriesQ::truncate: order too large");
    return TruncatedSeriesQ(order, coeffs_);
}

TruncatedSeriesQ TruncatedSeriesQ::log() const {
    if (coeffs_[0] != 1) throw std::domain_error("series log needs constant term 1");
    const std::size_t n = order();
    TruncatedSeriesQ l(n);
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (std::size_t k = 1; k < m; ++k) acc += Rational(static_cast<long>(k)) * l[k] * coeffs_[m - k];
        l[m] = coeffs_[m] - acc / Rational(static_cast<long>(m));
        guard_bits(l[m]);
    }
    return l;
}

TruncatedSeriesQ TruncatedSeriesQ::exp() const {
    if (coeffs_[0] != 0) throw std::domain_error("series exp needs constant term 0");
    const std::size_t n = order();
    TruncatedSeriesQ e(n);
    e[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= m; ++k) acc += Rational(static_cast<long>(k)) * coeffs_[k] * e[m - k];
        e[m] = acc / Rational(static_cast<long>(m));
        guard_bits(e[m]);
    }
    return e;
}

TruncatedSeriesQ TruncatedSeriesQ::pow(const Rational& exponent) const { return (exponent * log()).exp(); }

TruncatedSeriesQ TruncatedSeriesQ::inverse() const {
    if (coeffs_[0] == 0) throw std::domain_error("series inverse needs nonzero constant term");
    const std::size_t n = order();
    TruncatedSeriesQ inv(n);
    inv[0] = 1 / coeffs_[0];
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= m; ++k) acc += coeffs_[k] * inv[m - k];
        inv[m] = -acc * inv[0];
    }
    return inv;
}

TruncatedSeriesQ TruncatedSeriesQ::operator-() const {
    TruncatedSeriesQ s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
}

namespace {
void require_same_order(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b) {
    if (a.order() != b.order()) throw std::invalid_argument("TruncatedSeriesQ: order mismatch");
}
}  // namespace

TruncatedSeriesQ operator+(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b) {
    require_same_order(a, b);
    TruncatedSeriesQ s = a;
    for (std::size_t k = 0; k < s.coeffs_.size(); ++k) s.coeffs_[k] += b.coeffs_[k];
    return s;
}

TruncatedSeriesQ operator-(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b) { return a + (-b); }

TruncatedSeriesQ operator*(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b) {
    require_same_order(a, b);
    const std::size_t n = a.order();
    TruncatedSeriesQ s(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) s.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return s;
}

TruncatedSeriesQ operator*(const Rational& c, const TruncatedSeriesQ& s) {
    TruncatedSeriesQ r = s;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

std::vector<std::string> TruncatedSeriesQ::to_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(tz::to_string(c));
    return out;
}

TruncatedSeriesQ exp_zeta_series(std::span<const Rational> values) {
    if (values.empty()) throw std::invalid_argument("exp_zeta_series needs at least one term");
    const std::size_t n = values.size();
    TruncatedSeriesQ c(n);
    c[0] = 1;
    // n c_n = sum_{k=1}^n a_k c_{n-k}
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= m; ++k) acc += values[k - 1] * c[m - k];
        c[m] = acc / Rational(static_cast<long>(m));
        guard_bits(c[m]);
    }
    return c;
}

TruncatedSeriesQ exp_zeta_series(std::span<const Integer> values) {
    std::vector<Rational> q(values.begin(), values.end());
    return exp_zeta_series(std::span<const Rational>(q));
}

std::vector<Rational> zeta_log_coefficients(const TruncatedSeriesQ& zeta) {
    const TruncatedSeriesQ l = zeta.log();
    std::vector<Rational> a(l.order() + 1);
    for (std::size_t n = 1; n <= l.order(); ++n) a[n] = l[n] * Rational(static_cast<long>(n));
    return a;
}

TruncatedSeriesQ series_of_rational(const RationalFunctionQ& f, std::size_t order) {
    const Rational d0 = f.denominator().coeff(0);
    if (d0 == 0) throw MathError("rational function has a pole at the origin; no Taylor expansion at 0");
    const TruncatedSeriesQ num = TruncatedSeriesQ::from_polynomial(f.numerator(), order);
    const TruncatedSeriesQ den = TruncatedSeriesQ::from_polynomial(f.denominator(), order);
    return num * den.inverse();
}

std::size_t agreement_order(const TruncatedSeriesQ& a, const TruncatedSeriesQ& b) {
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t k = 0; k <= n; ++k)
        if (a[k] != b[k]) return k;
    return n + 1;
}

}  // namespace tz
