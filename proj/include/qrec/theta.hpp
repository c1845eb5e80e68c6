// Certified-precision Jacobi and Riemann theta evaluation.
//
// Every series here is truncated against an analytic tail bound (geometric
// comparison in one variable, a product-box comparison in n variables), so a
// returned value carries a proven bound on the discarded part.  On top of the
// evaluators sit residual checks for the modular transformations and for the
// coset-averaged reciprocity identity at finite tau whose large-tau limit is
// the multidimensional Gauss-sum reciprocity law.
#pragma once

#include <vector>

#include "qrec/lattice.hpp"
#include "qrec/prec_complex.hpp"

namespace qrec {

using CplxMatrix = Matrix<PrecComplex>;
using CplxVector = std::vector<PrecComplex>;
using RealMatrix = Matrix<Real>;

// Truncated series value.  tail_bound dominates the discarded part of the
// series and is never larger than the tolerance the caller asked for.
struct ThetaValue {
    PrecComplex value;
    long truncation_radius = 0;
    Real tail_bound;
};

// A point (z, tau) with tau complex symmetric and Im(tau) positive definite.
// im_lambda_lb is a Cholesky-certified lower bound on the smallest eigenvalue
// of Im(tau); construction rejects points whose bound falls below
// 2^{-prec/2}, since every truncation radius downstream depends on it.
struct SiegelPoint {
    long n = 0;
    CplxVector z;
    CplxMatrix tau;
    Real im_lambda_lb;
};
SiegelPoint make_siegel_point(CplxVector z, CplxMatrix tau);

// theta(z, tau) = sum over integer n of e(n^2 tau / 2 + n z), Im(tau) > 0.
ThetaValue jacobi_theta(const PrecComplex& z, const PrecComplex& tau, double tol);

// | theta(z/tau, -1/tau) - sqrt(-i tau) e(z^2 / 2tau) theta(z, tau) |,
// principal square root (Re(-i tau) > 0 on the upper half-plane).
Real jacobi_transform_residual(const PrecComplex& z, const PrecComplex& tau,
                               double tol);

// Arithmetic-progression slice: sum over n = k (mod m) of the theta series,
// together with the defect of its modular expression
//   (1/m) (-i tau)^{-1/2} e(-z^2/2tau) theta(k/m + z/(m tau), -1/(m^2 tau)).
struct ThetaKmValue {
    PrecComplex value;
    Real lemma_residual;
};
ThetaKmValue theta_km(long k, long m, const PrecComplex& z,
                      const PrecComplex& tau, double tol);

// Residual of the averaged transformation law, for a, b nonzero coprime and
// ab + c even:
//   (1/|b|) sum_{x mod |b|} e((a x^2 + c x)/2b) theta(x/b + z, tau)
//     = sqrt(i a/b) e(-c^2/8ab) (1/|a|) sum_{y mod |a|} e((-b y^2 + c y)/2a)
//         theta(y/a + z - c/2ab, tau - 1/ab).
// As Im(tau) -> infinity both sides collapse to the two sides of the
// one-dimensional Gauss-sum reciprocity law.
Real theta_average_residual(long a, long b, long c, const PrecComplex& z,
                            const PrecComplex& tau, double tol);

// Riemann theta: sum over x in Z^n of e(txx tau x / 2 + tx z), truncated over
// the box |x|_inf <= R with the product-form tail bound recorded.
ThetaValue riemann_theta(const SiegelPoint& p, double tol);

// Continuous branch of det(-i tau)^{1/2}.
//   siegel:     Im(tau) positive definite; factor Im(tau) = ta a, diagonalize
//               ta^{-1} Re(tau) a^{-1}, return |det a| prod sqrt(1 - i d_j)
//               with principal square roots.  Positive when tau is purely
//               imaginary.
//   real_limit: tau real symmetric nonsingular; the boundary value
//               |det tau|^{1/2} e^{-i pi sigma/4}, sigma the signature.
enum class DetBranchMode { siegel, real_limit };
PrecComplex det_branch(const CplxMatrix& tau, DetBranchMode mode);

// | Theta(tau^{-1} z, -tau^{-1}) - det(-i tau)^{1/2} exp(i pi tz tau^{-1} z)
//   Theta(z, tau) |, with det_branch in siegel mode.
Real riemann_transform_residual(const SiegelPoint& p, double tol);

// Residual of the coset-averaged reciprocity identity at finite tau.  For
// t = A B^{-1} nonsingular rational symmetric in reduced form, n = tB A, and
// shift c with n + 2 diag(c) integral and even:
//   sum_{x in B^{-1}Z^n mod Z^n} e(tx n x / 2 + tx c) Theta(z + x, tau)
//     = |det t|^{-1/2} e^{i pi sigma(n)/4} exp(-i pi tc n^{-1} c)
//       sum_{x1 in A^{-1}Z^n mod Z^n} e(-tx1 n x1 / 2 + tx1 c)
//         Theta(z + x1 - n^{-1}c, tau - n^{-1}).
// Sending tau -> i t I with t -> infinity recovers the reciprocity law
// checked exactly in multidim_gauss.
Real thmB_finite_tau_residual(const RatSymMatrix& t, const RatVector& c,
                              const CplxVector& z, const CplxMatrix& tau,
                              double tol);

// Dense linear algebra over PrecComplex / Real used by the checks above and
// by the command-line driver.
CplxMatrix complex_inverse(const CplxMatrix& m);   // partial-pivot Gauss-Jordan
PrecComplex complex_det(const CplxMatrix& m);
std::vector<Real> sym_eigenvalues(const RealMatrix& m);  // cyclic Jacobi

// exp(i pi w) for complex w.
PrecComplex cexp_i_pi(const PrecComplex& w);

}  // namespace qrec
