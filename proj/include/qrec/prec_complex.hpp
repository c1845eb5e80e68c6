// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Real wraps a single mpfr_t with value semantics.  Every binary
// operation allocates its result at the larger precision of the two
// operands, so precision never silently degrades along a computation.
// PrecComplex is a plain (re, im) pair of Reals; the system MPFR has no
// companion complex library, so the few complex primitives needed here
// (exp, sqrt, abs, division) are spelled out directly.
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "qrec/rational.hpp"

namespace qrec {

inline constexpr mpfr_prec_t kDefaultPrec = 128;
inline constexpr mpfr_prec_t kMinPrec = 64;

class Real {
  public:
    explicit Real(mpfr_prec_t prec = kDefaultPrec) {
        check_prec(prec);
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(double x, mpfr_prec_t prec = kDefaultPrec) {
        Real r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(long x, mpfr_prec_t prec = kDefaultPrec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(const Integer& x, mpfr_prec_t prec = kDefaultPrec) {
        Real r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real of(const Rational& x, mpfr_prec_t prec = kDefaultPrec) {
        Real r(prec);
        mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    // Parses a decimal string at the requested precision.
    static Real parse(const std::string& s, mpfr_prec_t prec = kDefaultPrec) {
        Real r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("Real::parse: cannot parse '" + s + "'");
        return r;
    }
    static Real pi(mpfr_prec_t prec = kDefaultPrec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    // Full-precision decimal form, stable across runs.
    std::string to_string() const;

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) {
        if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }

  private:
    static void check_prec(mpfr_prec_t prec) {
        if (prec < kMinPrec)
            throw std::invalid_argument("Real: precision below 64 bits");
    }
    mpfr_t v_;
};

Real abs(const Real& a);
Real sqrt(const Real& a);  // requires a >= 0
Real exp(const Real& a);
Real log(const Real& a);  // requires a > 0
Real hypot(const Real& a, const Real& b);
Real atan2(const Real& y, const Real& x);
// Natural log of a positive integer at the given precision.
Real log_integer(const Integer& n, mpfr_prec_t prec);
Real max(const Real& a, const Real& b);

struct PrecComplex {
    Real re, im;

    explicit PrecComplex(mpfr_prec_t prec = kDefaultPrec) : re(prec), im(prec) {}
    PrecComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    static PrecComplex of(double r, double i, mpfr_prec_t prec = kDefaultPrec) {
        return PrecComplex(Real::of(r, prec), Real::of(i, prec));
    }
    static PrecComplex of(const Rational& r, mpfr_prec_t prec = kDefaultPrec) {
        return PrecComplex(Real::of(r, prec), Real(prec));
    }
    static PrecComplex zero(mpfr_prec_t prec = kDefaultPrec) { return PrecComplex(prec); }
    static PrecComplex one(mpfr_prec_t prec = kDefaultPrec) {
        return PrecComplex(Real::of(1L, prec), Real(prec));
    }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    std::string to_string() const { return re.to_string() + " + " + im.to_string() + "i"; }
};

PrecComplex operator+(const PrecComplex& a, const PrecComplex& b);
PrecComplex operator-(const PrecComplex& a, const PrecComplex& b);
PrecComplex operator*(const PrecComplex& a, const PrecComplex& b);
PrecComplex operator/(const PrecComplex& a, const PrecComplex& b);
PrecComplex operator-(const PrecComplex& a);
PrecComplex operator*(const Real& a, const PrecComplex& b);
PrecComplex& operator+=(PrecComplex& a, const PrecComplex& b);
PrecComplex& operator-=(PrecComplex& a, const PrecComplex& b);

PrecComplex conj(const PrecComplex& a);
Real abs(const PrecComplex& a);
PrecComplex exp(const PrecComplex& a);
// Principal branch (cut along the negative real axis).
PrecComplex sqrt(const PrecComplex& a);

// e(x) = exp(2 pi i x) for exact rational x, reduced mod 1 before any
// rounding so the only error is the final trig evaluation.
PrecComplex unit_root(const Rational& x, mpfr_prec_t prec = kDefaultPrec);
// exp(i pi x) for exact rational x.
PrecComplex exp_i_pi(const Rational& x, mpfr_prec_t prec = kDefaultPrec);
// exp(2 pi i x) for a real argument x.
PrecComplex unit_root(const Real& x);
// d^s = exp(s log d) for a positive integer base, principal branch.
PrecComplex pow_integer(const Integer& d, const PrecComplex& s);

}  // namespace qrec
