#include "qrec/prec_complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

namespace qrec {

std::string Real::to_string() const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    // Enough digits to reproduce the binary value: ceil(prec*log10(2)) + 2.
    size_t digits = static_cast<size_t>(prec() * 0.30103) + 3;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    std::string sign;
    if (mant[0] == '-') {
        sign = "-";
        mant = mant.substr(1);
    }
    // Strip trailing zeros of the mantissa for readability.
    size_t last = mant.find_last_not_of('0');
    mant = mant.substr(0, std::max<size_t>(last + 1, 1));
    return sign + "0." + mant + "e" + std::to_string(static_cast<long>(e));
}

Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& a) {
    if (a.sign() < 0) throw std::invalid_argument("sqrt(Real): negative argument");
    Real r(a.prec());
    mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real exp(const Real& a) {
    Real r(a.prec());
    mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real log(const Real& a) {
    if (a.sign() <= 0) throw std::invalid_argument("log(Real): non-positive argument");
    Real r(a.prec());
    mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real log_integer(const Integer& n, mpfr_prec_t prec) {
    if (sgn(n) <= 0) throw std::invalid_argument("log_integer: non-positive argument");
    return log(Real::of(n, prec));
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

PrecComplex operator+(const PrecComplex& a, const PrecComplex& b) {
    return PrecComplex(a.re + b.re, a.im + b.im);
}

PrecComplex operator-(const PrecComplex& a, const PrecComplex& b) {
    return PrecComplex(a.re - b.re, a.im - b.im);
}

PrecComplex operator*(const PrecComplex& a, const PrecComplex& b) {
    return PrecComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

PrecComplex operator/(const PrecComplex& a, const PrecComplex& b) {
    Real n = b.re * b.re + b.im * b.im;
    if (n.is_zero()) throw std::invalid_argument("PrecComplex division by zero");
    return PrecComplex((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
}

PrecComplex operator-(const PrecComplex& a) { return PrecComplex(-a.re, -a.im); }

PrecComplex operator*(const Real& a, const PrecComplex& b) {
    return PrecComplex(a * b.re, a * b.im);
}

PrecComplex& operator+=(PrecComplex& a, const PrecComplex& b) {
    a.re += b.re;
    a.im += b.im;
    return a;
}

PrecComplex& operator-=(PrecComplex& a, const PrecComplex& b) {
    a.re -= b.re;
    a.im -= b.im;
    return a;
}

PrecComplex conj(const PrecComplex& a) { return PrecComplex(a.re, -a.im); }

Real abs(const PrecComplex& a) { return hypot(a.re, a.im); }

PrecComplex exp(const PrecComplex& a) {
    mpfr_prec_t p = a.prec();
    Real m = exp(a.re);
    Real c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), a.im.raw(), MPFR_RNDN);
    return PrecComplex(m * c, m * s);
}

PrecComplex sqrt(const PrecComplex& a) {
    mpfr_prec_t p = a.prec();
    if (a.im.is_zero()) {
        if (a.re.sign() >= 0) return PrecComplex(sqrt(a.re), Real(p));
        return PrecComplex(Real(p), sqrt(-a.re));
    }
    // sqrt(a) = (u, b/(2u)) with u = sqrt((|a| + re)/2), sign matching im.
    Real r = abs(a);
    Real half = Real::of(0.5, p);
    Real u = sqrt((r + a.re) * half);
    Real w = sqrt((r - a.re) * half);
    if (a.im.sign() < 0) w = -w;
    return PrecComplex(u, w);
}

PrecComplex unit_root(const Rational& x, mpfr_prec_t prec) {
    Rational f = frac_mod1(x);
    Real angle(prec);
    mpfr_const_pi(angle.raw(), MPFR_RNDN);
    mpfr_mul_2ui(angle.raw(), angle.raw(), 1, MPFR_RNDN);
    mpfr_mul_q(angle.raw(), angle.raw(), f.get_mpq_t(), MPFR_RNDN);
    Real c(prec), s(prec);
    mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
    return PrecComplex(c, s);
}

PrecComplex exp_i_pi(const Rational& x, mpfr_prec_t prec) {
    return unit_root(Rational(x / 2), prec);
}

PrecComplex unit_root(const Real& x) {
    mpfr_prec_t p = x.prec();
    Real angle = Real::pi(p);
    mpfr_mul_2ui(angle.raw(), angle.raw(), 1, MPFR_RNDN);
    angle = angle * x;
    Real c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
    return PrecComplex(c, s);
}

PrecComplex pow_integer(const Integer& d, const PrecComplex& s) {
    if (sgn(d) <= 0) throw std::invalid_argument("pow_integer: base must be positive");
    Real l = log_integer(d, s.prec());
    return exp(PrecComplex(s.re * l, s.im * l));
}

}  // namespace qrec
