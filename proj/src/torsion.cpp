#include "tz/torsion.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace tz {

namespace {

class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    ~Real() { mpfr_clear(x_); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;
    mpfr_ptr get() { return x_; }

private:
    mpfr_t x_;
};

void set_rational(mpfr_ptr out, const Rational& q) { mpfr_set_q(out, q.get_mpq_t(), MPFR_RNDN); }

/// |p(lambda)| for lambda = c + i s, by complex Horner.
void abs_at(mpfr_ptr out, const Polynomial& p, mpfr_ptr c, mpfr_ptr s, mpfr_prec_t prec) {
    Real re(prec), im(prec), t1(prec), t2(prec), coeff(prec);
    mpfr_set_zero(re.get(), 1);
    mpfr_set_zero(im.get(), 1);
    const auto& coeffs = p.coefficients();
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        // (re + i im)(c + i s) + a_k
        mpfr_mul(t1.get(), re.get(), c, MPFR_RNDN);
        mpfr_mul(t2.get(), im.get(), s, MPFR_RNDN);
        mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), re.get(), s, MPFR_RNDN);
        mpfr_mul(im.get(), im.get(), c, MPFR_RNDN);
        mpfr_add(im.get(), im.get(), t2.get(), MPFR_RNDN);
        set_rational(coeff.get(), coeffs[k]);
        mpfr_add(re.get(), t1.get(), coeff.get(), MPFR_RNDN);
    }
    mpfr_hypot(out, re.get(), im.get(), MPFR_RNDN);
}

void evaluate_tau(mpfr_ptr out, const RationalFunctionQ& l, const Rational& angle, mpfr_prec_t prec) {
    Real theta(prec), c(prec), s(prec), q(prec), num(prec), den(prec);
    mpfr_const_pi(theta.get(), MPFR_RNDN);
    set_rational(q.get(), 2 * angle);
    mpfr_mul(theta.get(), theta.get(), q.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
    abs_at(num.get(), l.numerator(), c.get(), s.get(), prec);
    abs_at(den.get(), l.denominator(), c.get(), s.get(), prec);
    mpfr_div(out, den.get(), num.get(), MPFR_RNDN);
}

}  // namespace

std::string to_string(TorsionValue::Kind kind) {
    switch (kind) {
        case TorsionValue::Kind::value: return "VALUE";
        case TorsionValue::Kind::pole: return "POLE";
        case TorsionValue::Kind::zero_divisor: return "ZERO_DIVISOR";
    }
    return "VALUE";
}

TorsionValue torsion_tau(const RationalFunctionQ& l, const Rational& angle, unsigned digits) {
    TorsionValue out;
    out.digits = digits;
    const Integer a = angle.get_num();
    const Integer b = angle.get_den();
    if (vanishes_at_root_of_unity(l.numerator(), a, b)) {
        out.kind = TorsionValue::Kind::pole;
        return out;
    }
    if (vanishes_at_root_of_unity(l.denominator(), a, b)) {
        out.kind = TorsionValue::Kind::zero_divisor;
        return out;
    }

    constexpr mpfr_prec_t kMaxPrecision = 1 << 20;
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 3.33) + 64;
    Real previous(prec);
    evaluate_tau(previous.get(), l, angle, prec);
    while (prec < kMaxPrecision) {
        const mpfr_prec_t next_prec = prec * 2;
        Real current(next_prec), diff(next_prec), tol(next_prec), scale(next_prec);
        evaluate_tau(current.get(), l, angle, next_prec);
        mpfr_sub(diff.get(), current.get(), previous.get(), MPFR_RNDN);
        mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
        mpfr_abs(scale.get(), current.get(), MPFR_RNDN);
        if (mpfr_cmp_ui(scale.get(), 1) < 0) mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
        mpfr_set_ui(tol.get(), 10, MPFR_RNDN);
        mpfr_pow_si(tol.get(), tol.get(), -static_cast<long>(digits) - 8, MPFR_RNDN);
        mpfr_mul(tol.get(), tol.get(), scale.get(), MPFR_RNDN);
        if (mpfr_cmp(diff.get(), tol.get()) <= 0) {
            char* text = nullptr;
            mpfr_asprintf(&text, "%.*Rf", static_cast<int>(digits), current.get());
            out.decimal = text;
            mpfr_free_str(text);
            return out;
        }
        mpfr_set_prec(previous.get(), next_prec);
        mpfr_set(previous.get(), current.get(), MPFR_RNDN);
        prec = next_prec;
    }
    throw std::runtime_error("torsion_tau: evaluation did not stabilize");
}

}  // namespace tz
