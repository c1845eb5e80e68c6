#pragma once

#include <vector>

#include "qrec/cyclotomic.hpp"
#include "qrec/lattice.hpp"
#include "qrec/prec_complex.hpp"

namespace qrec {

enum class SumSide { B, A };

// A multidimensional quadratic exponential sum, pinned to one witness of the
// reduced form t = A B^{-1} and to a half-integer shift vector s for which
// the sums over Z^n mod B and Z^n mod A are representative-independent.
struct QuadSumProblem {
    RatSymMatrix t;
    RatVector s;        // entries in (1/2) Z
    ReducedForm rf;
    IntMatrix n_mat;    // transpose(B) A, symmetric and integral
    RatMatrix t_inv;
    RatVector t_inv_s;  // t^{-1} s, the linear twist of the A-side sum
};

// Validates nonsingularity of t, half-integrality of s, and the evenness of
// transpose(B) A + 2 diag(transpose(B) s); throws std::invalid_argument
// otherwise (the sums would depend on the choice of representatives).
QuadSumProblem make_quad_problem(const RatSymMatrix& t, const RatVector& s);

// Phase of a single lattice point, as an exact rational:
// side B:  (1/2) x' t x + x' s        over x in Z^n mod B
// side A: -(1/2) x' t^{-1} x + x' (t^{-1} s)   over x in Z^n mod A
Rational quad_phase(const QuadSumProblem& p, SumSide side, const IntVector& x);

CyclotomicInt quad_sum_over_reps_exact(const QuadSumProblem& p, SumSide side,
                                       const std::vector<IntVector>& reps);
CyclotomicInt quad_sum_modB_exact(const QuadSumProblem& p, SumSide side);
PrecComplex quad_sum_modB(const QuadSumProblem& p, SumSide side,
                          mpfr_prec_t prec = kDefaultPrec);

// |LHS - RHS| of
//   |det B|^{-1/2} sum_B e((1/2) x' t x + x' s)
//     = e^{i pi sig(t)/4} |det A|^{-1/2} exp(-pi i s' t^{-1} s)
//       * sum_A e(-(1/2) x' t^{-1} x + x' t^{-1} s).
// The A-side twist is t^{-1} s: with x' s instead the identity is false
// already for t = [3], s = (1/2), while t^{-1} s reduces to the scalar
// reciprocity law under b = 2 c s.
Real reciprocity_nd_residual(const QuadSumProblem& p,
                             mpfr_prec_t prec = kDefaultPrec);
bool reciprocity_nd_exact_holds(const QuadSumProblem& p);

// Reciprocity over the dual cosets B^{-1}Z^n / Z^n and A^{-1}Z^n / Z^n with
// integral phase matrix n = transpose(B) A and rational twist c:
//   |det B|^{-1/2} sum_{B^{-1}Z^n / Z^n} e((1/2) y' n y + y' c)
//     = exp(-pi i c' n^{-1} c) e^{i pi sig(n)/4} |det A|^{-1/2}
//       * sum_{A^{-1}Z^n / Z^n} e(-(1/2) y' n y + y' c).
// When c = transpose(B) s for a half-integer s, the same identity in the
// mod-B formulation is checked as well (thm_b_checked reports whether that
// translation applied).
struct CorGrResult {
    Real gr_residual;
    Real thm_b_residual;
    bool thm_b_checked = false;
};
CorGrResult cor_gr_residual(const RatSymMatrix& t, const RatVector& c,
                            mpfr_prec_t prec = kDefaultPrec);

// The shift-free special case; requires transpose(B) A to have even diagonal.
Real landsberg_schaar_nd_residual(const RatSymMatrix& t,
                                  mpfr_prec_t prec = kDefaultPrec);

}  // namespace qrec
