// One-dimensional quadratic exponential sums and their closed forms:
//   S_{a,b,c} = (1/sqrt|c|) sum_{x mod |c|} e((ax^2+bx)/2c)
//   g(a,n)    = sum_{x mod n} e(ax^2/n)
//   T(s,t)    = (1/2) sum_{x mod 2*den(t)} e(x^2 t/2 + x s)
//   u(p/q)    = (1/2q) sum_{x mod 2q} e(px^2/2q)
// together with the reciprocity S_{a,b,c} = e(sgn(ac)/8) e(-b^2/8ac) S_{-c,b,a},
// the sign formula for g, the transformation law of T, and the evaluation
// of u at prime-power denominators.
//
// Exact values are carried as cyclotomic integers; square-root normalizers
// are themselves cyclotomic (sqrt_as_cyclotomic), so every identity here
// can be checked as an equality in Z[zeta_M].
#pragma once

#include "qrec/cyclotomic.hpp"
#include "qrec/prec_complex.hpp"
#include "qrec/rational.hpp"

namespace qrec {

struct GaussSumSpec {
    long a = 1, b = 0, c = 1;
};

// Throws unless c != 0 and ac + b is even (the phase must descend to Z/cZ).
void validate_gauss_spec(const GaussSumSpec& spec);

PrecComplex gauss_S(const GaussSumSpec& spec, mpfr_prec_t prec = kDefaultPrec);

// S_{a,b,c} as numerator / normalizer with both parts in Z[zeta]:
// numerator = sum_{x mod |c|} e((ax^2+bx)/2c), normalizer = sqrt(|c|).
struct ExactNormalized {
    CyclotomicInt numerator;
    CyclotomicInt normalizer;
};

ExactNormalized gauss_S_exact(const GaussSumSpec& spec);

// g(a,n) by direct summation, exactly.
CyclotomicInt quad_gauss_brute(long a, long n);

// Sign formula: g(a,n)/sqrt(n) = (a|n) for n = 1 mod 4, 0 for n = 2 mod 4,
// (a|n) i for n = 3 mod 4, and (n|a)(1+i^a) for n = 0 mod 4.  The even case
// must flip the symbol to Jacobi (n|a): no extension keeping it in the
// upper slot works, since g(7,12) = 2 sqrt(3)(-1+i) needs the value -1
// where the Kronecker symbol (7|12) is +1.  Requires gcd(a,n) = 1.
CyclotomicInt quad_gauss_closed(long a, long n);

PrecComplex quad_gauss_float(long a, long n, mpfr_prec_t prec = kDefaultPrec);

// |S_{a,b,c} - e(sgn(ac)/8) e(-b^2/8ac) S_{-c,b,a}|.
Real reciprocity_residual(long a, long b, long c, mpfr_prec_t prec = kDefaultPrec);

// Same identity cleared of square roots, decided in Z[zeta_{8|ac|}]:
//   sqrt|a| * num(S_{a,b,c}) == e(sgn(ac)/8 - b^2/8ac) * sqrt|c| * num(S_{-c,b,a}).
bool reciprocity_exact_holds(long a, long b, long c);

// T(s,t); T(s,0) = 0 by convention, and T(s,t) = T(s,t+2).
PrecComplex finite_theta_T(const Rational& s, const Rational& t,
                           mpfr_prec_t prec = kDefaultPrec);

// |T(s/t, -1/t) - sqrt(-it) e^{pi i s^2/t} T(s,t)|, principal square root.
Real theta_T_transform_residual(const Rational& s, const Rational& t,
                                mpfr_prec_t prec = kDefaultPrec);

// Unnormalized U-sum over 2q points; q > 0, p arbitrary (not necessarily
// coprime to q): sum_{x mod 2q} e(p x^2 / 2q).  u(p/q) = U_raw(p,q)/(2q).
CyclotomicInt u_raw(long p, long q);

enum class UMode { brute, closed };

// u(r) for reduced r = p/q.  brute: direct summation.  closed:
//   pq odd            -> 0
//   p odd  (q even)   -> w^p (q|p|) / sqrt q
//   p even (q odd)    -> w^{1-q} (p|q) / sqrt q
// with w = e^{i pi/4}.  closed mode rejects r = 0.
PrecComplex u_value(const Rational& r, UMode mode, mpfr_prec_t prec = kDefaultPrec);

// The unit epsilon(m,p,r) with u(m/p^r) = epsilon / sqrt(p^r), for p prime,
// r > 0, m > 0, p not dividing m, mp even:
//   p odd, r even -> 1            p odd, r odd -> w^{1-p^r} (m|p)
//   p = 2, r even -> w^m          p = 2, r odd -> w^m (2|m)
CyclotomicInt u_epsilon(long m, long p, long r);

// Exact form of the epsilon evaluation: u_raw(m, p^r) == 2 epsilon sqrt(p^r).
bool u_epsilon_exact_holds(long m, long p, long r);

}  // namespace qrec
