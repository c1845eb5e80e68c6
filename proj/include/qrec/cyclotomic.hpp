// Exact arithmetic in rings of cyclotomic integers Z[zeta_m].
//
// A CyclotomicInt of order m is stored as an integer coefficient vector
// of length m representing sum_k c_k zeta_m^k.  The canonical form keeps
// the polynomial reduced modulo the m-th cyclotomic polynomial Phi_m, so
// only coefficients below deg Phi_m = phi(m) can be nonzero and equality
// of values is equality of vectors (the power basis is an integral
// basis).  Mixed orders combine through the lcm embedding
// zeta_m = zeta_M^(M/m).
//
// Exact square roots: sqrt(2) = zeta_8 + zeta_8^(-1), and for odd u > 0
// sqrt(u) is a fourth root of unity times the centered quadratic sum
// sum_x zeta_u^(x^2).  This is what lets the verification layers clear
// 1/sqrt(n) normalizers and test identities by exact equality.
#pragma once

#include <vector>

#include "qrec/arith.hpp"
#include "qrec/prec_complex.hpp"
#include "qrec/rational.hpp"

namespace qrec {

class CyclotomicInt {
  public:
    CyclotomicInt() : order_(1), coeffs_(1, Integer(0)) {}

    static CyclotomicInt zero(long m = 1);
    static CyclotomicInt one();
    static CyclotomicInt integer(const Integer& k);
    // zeta_m^k in canonical form; k may be any integer (reduced mod m).
    static CyclotomicInt zeta_power(long m, long k);
    // Builds sum_j raw[j] zeta_m^j, reducing to canonical form.  raw may
    // have any length; indices wrap modulo m.
    static CyclotomicInt from_coeffs(long m, std::vector<Integer> raw);

    long order() const { return order_; }
    const std::vector<Integer>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    // True when the value lies in Z; then *out (if given) is that integer.
    bool is_integer(Integer* out = nullptr) const;

    // Same value in Z[zeta_M]; requires order() | M.
    CyclotomicInt promoted(long M) const;
    // Complex conjugate (zeta^k -> zeta^(-k)).
    CyclotomicInt conj() const;

    friend CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b);
    friend CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b);
    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
    friend CyclotomicInt operator-(const CyclotomicInt& a);
    friend CyclotomicInt operator*(const Integer& k, const CyclotomicInt& a);
    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);
    friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

    CyclotomicInt& operator+=(const CyclotomicInt& o) { return *this = *this + o; }
    CyclotomicInt& operator-=(const CyclotomicInt& o) { return *this = *this - o; }
    CyclotomicInt& operator*=(const CyclotomicInt& o) { return *this = *this * o; }

  private:
    long order_;
    std::vector<Integer> coeffs_;
};

// Accumulates a sum of roots of unity e(x) with integer weights at a
// fixed order M (every exponent denominator must divide M), performing
// a single canonical reduction at the end.  This keeps the big direct
// sums linear-time instead of reducing after every term.
class CycloSum {
  public:
    explicit CycloSum(long order) : order_(order), raw_(order, Integer(0)) {
        if (order < 1) throw std::invalid_argument("CycloSum: order must be positive");
    }
    // Adds weight * e(x); x is reduced mod 1, den(x) must divide the order.
    void add_unit_root(const Rational& x, const Integer& weight = Integer(1));
    long order() const { return order_; }
    CyclotomicInt value() const { return CyclotomicInt::from_coeffs(order_, raw_); }

  private:
    long order_;
    std::vector<Integer> raw_;
};

// e(x) = exp(2 pi i x) as an exact root of unity; order = den(x mod 1).
CyclotomicInt root_of_unity(const Rational& x);

// epsilon_a for odd a: 1 if a = 1 (mod 4), zeta_4 if a = 3 (mod 4).
CyclotomicInt epsilon_a(const Integer& a);

// Exact sqrt(m) for m >= 1, living in Z[zeta_lcm(8, m)] (or a divisor).
CyclotomicInt sqrt_as_cyclotomic(long m);

// Numerical embedding sum_k c_k exp(2 pi i k / m) at the given
// precision.  Error is bounded by a few ulps times sum_k |c_k|.
PrecComplex cyclo_embed(const CyclotomicInt& v, mpfr_prec_t prec = kDefaultPrec);

}  // namespace qrec
