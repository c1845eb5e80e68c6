// The finite Dirichlet polynomial attached to an even modulus n,
//   Z_n(s) = sum_{d | n} u(d'/d) d^s / sqrt(gcd(d, d')),   d' = n/d,
// its completed form L_n(s) = n^{-s/2} Z_n(s) with functional equation
// L_n(1-s) = w conj(L_n(conj s)), its Euler product over p | n, the
// closed factorization of each local factor, and the exact enumeration
// of its zeros, all of which lie on the line Re(s) = 1/2.
#pragma once

#include <vector>

#include "qrec/prec_complex.hpp"
#include "qrec/rational.hpp"

namespace qrec {

PrecComplex zeta_direct(long n, const PrecComplex& s);

PrecComplex zeta_completed(long n, const PrecComplex& s);  // n^{-s/2} Z_n(s)

enum class EulerMode {
    direct,   // sum over k of u(n/p^{2k}) p^{ks - mu(k)/2}, mu(k) = min(k, alpha-k)
    closed,   // factored geometric form (see euler_factor notes below)
    display,  // documented variant differing for p = 2, alpha odd; WRONG at n = 2
};

// Local factor Z_{n,p}(s) for p prime, p | n, n even.  With y = s - 1/2,
// beta = floor(alpha/2), L = beta + 1, P = p^{Ly}, and the geometric
// partial sum G_K(y) = sum_{k=0}^{K} p^{ky} (no pole at y = 0):
//   p odd,  alpha even:  G_alpha
//   p odd,  alpha odd:   G_beta (1 + w^{1-p} (m|p) P)
//   p = 2,  alpha odd:   G_beta (1 + w^m (2|m) P)
//   p = 2,  alpha even:  G_{beta-1} (1 + w^m P)
// where m = n/p^alpha.  EulerMode::display replaces G_beta by (1 + P) in
// the p = 2, alpha odd case; it disagrees with the direct sum already at
// n = 2 and is retained for documentation only.
PrecComplex euler_factor(long n, long p, const PrecComplex& s,
                         EulerMode mode = EulerMode::closed);

// |L_n(1-s) - w conj(L_n(conj s))|.
Real functional_equation_residual(long n, const PrecComplex& s);

// |Z_n(s) - prod_{p | n} Z_{n,p}(s)| with direct-mode factors.
Real euler_product_residual(long n, const PrecComplex& s);

// A zero s = 1/2 + i t with t = pi coeff / ln p, enumerated exactly from
// the closed factorization: G_K contributes t = 2 pi k / ((K+1) ln p) for
// (K+1) not dividing k, and each unit factor (1 + eps p^{Ly}) contributes
// the arithmetic progression solving p^{iLt} = -1/eps.  Zeros sharing an
// exact (p, coeff) key are one zero with summed multiplicity; distinct
// keys never collide except at t = 0 (p^c = p'^{c'} forces c = c' = 0),
// which is keyed specially as p = 0.
struct ZeroOnLine {
    long p = 0;
    Rational coeff;
    long multiplicity = 1;
    Real t;
};

std::vector<ZeroOnLine> zeros_in_window(long n, double t_min, double t_max,
                                        mpfr_prec_t prec = kDefaultPrec);

}  // namespace qrec
