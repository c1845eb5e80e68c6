#include "qrec/multidim_gauss.hpp"

#include <stdexcept>

namespace qrec {

namespace {

constexpr long kMaxCycloOrder = 1L << 20;
constexpr long kMaxSqrtArg = 1000000;

Rational dot(const RatVector& x, const RatVector& y) {
    Rational r(0);
    for (size_t i = 0; i < x.size(); ++i) r += x[i] * y[i];
    return r;
}

Rational qform(const RatMatrix& m, const RatVector& x) {
    Rational r(0);
    for (long i = 0; i < m.rows; ++i) {
        if (x[i] == 0) continue;
        Rational row(0);
        for (long j = 0; j < m.cols; ++j) row += m(i, j) * x[j];
        r += x[i] * row;
    }
    return r;
}

long small_abs_det(const IntMatrix& m) {
    Integer d = abs(det_integer(m));
    if (d > kMaxSqrtArg)
        throw std::length_error("quadratic sum: |det| too large for exact surd");
    return d.get_si();
}

CyclotomicInt sum_unit_roots(const std::vector<Rational>& phases) {
    long order = 1;
    for (const Rational& ph : phases) {
        order = lcm_long(order, ph.get_den().get_si());
        if (order > kMaxCycloOrder)
            throw std::length_error("quadratic sum: cyclotomic order too large");
    }
    CycloSum acc(order);
    for (const Rational& ph : phases) acc.add_unit_root(ph);
    return acc.value();
}

// Sum over a rational coset system (used by the dual-coset formulation).
PrecComplex sum_over_rational(const RatMatrix& m_inv, const IntMatrix& m,
                              const RatMatrix& phase_mat, const RatVector& c,
                              int quad_sign, mpfr_prec_t prec) {
    PrecComplex acc = PrecComplex::zero(prec);
    for (const IntVector& r : coset_reps(m)) {
        RatVector y(r.size());
        for (size_t k = 0; k < r.size(); ++k) y[k] = Rational(r[k]);
        y = m_inv * y;
        Rational ph = make_rational(quad_sign, 2) * qform(phase_mat, y) + dot(y, c);
        acc += unit_root(ph, prec);
    }
    return acc;
}

}  // namespace

QuadSumProblem make_quad_problem(const RatSymMatrix& t, const RatVector& s) {
    if (static_cast<long>(s.size()) != t.n())
        throw std::invalid_argument("make_quad_problem: shift dimension mismatch");
    ReducedForm rf = reduced_form(t);  // rejects singular t
    if (!evenness_check(rf.A, rf.B, s))
        throw std::invalid_argument(
            "make_quad_problem: sums would depend on the choice of representatives");
    IntMatrix n_mat = transpose(rf.B) * rf.A;
    if (!(n_mat == transpose(n_mat)))
        throw std::logic_error("make_quad_problem: inner matrix not symmetric");
    RatMatrix t_inv = inverse(t.mat());
    RatVector t_inv_s = t_inv * s;
    return {t, s, rf, n_mat, t_inv, t_inv_s};
}

Rational quad_phase(const QuadSumProblem& p, SumSide side, const IntVector& x) {
    RatVector xr(x.size());
    for (size_t i = 0; i < x.size(); ++i) xr[i] = Rational(x[i]);
    if (side == SumSide::B)
        return make_rational(1, 2) * qform(p.t.mat(), xr) + dot(xr, p.s);
    return make_rational(-1, 2) * qform(p.t_inv, xr) + dot(xr, p.t_inv_s);
}

CyclotomicInt quad_sum_over_reps_exact(const QuadSumProblem& p, SumSide side,
                                       const std::vector<IntVector>& reps) {
    std::vector<Rational> phases;
    phases.reserve(reps.size());
    for (const IntVector& r : reps) phases.push_back(quad_phase(p, side, r));
    return sum_unit_roots(phases);
}

CyclotomicInt quad_sum_modB_exact(const QuadSumProblem& p, SumSide side) {
    return quad_sum_over_reps_exact(
        p, side, coset_reps(side == SumSide::B ? p.rf.B : p.rf.A));
}

PrecComplex quad_sum_modB(const QuadSumProblem& p, SumSide side,
                          mpfr_prec_t prec) {
    PrecComplex acc = PrecComplex::zero(prec);
    for (const IntVector& r : coset_reps(side == SumSide::B ? p.rf.B : p.rf.A))
        acc += unit_root(quad_phase(p, side, r), prec);
    return acc;
}

Real reciprocity_nd_residual(const QuadSumProblem& p, mpfr_prec_t prec) {
    const Real one = Real::of(1L, prec);
    PrecComplex lhs =
        (one / sqrt(Real::of(Integer(abs(det_integer(p.rf.B))), prec))) *
        quad_sum_modB(p, SumSide::B, prec);
    Rational gamma = dot(p.s, p.t_inv_s);  // s' t^{-1} s
    PrecComplex rhs =
        (one / sqrt(Real::of(Integer(abs(det_integer(p.rf.A))), prec))) *
        (exp_i_pi(make_rational(signature(p.t), 4), prec) *
         exp_i_pi(-gamma, prec) * quad_sum_modB(p, SumSide::A, prec));
    return abs(lhs - rhs);
}

bool reciprocity_nd_exact_holds(const QuadSumProblem& p) {
    const long det_a = small_abs_det(p.rf.A), det_b = small_abs_det(p.rf.B);
    Rational gamma = dot(p.s, p.t_inv_s);
    // cleared form: sqrt|det A| * Sum_B == e(sig/8 - gamma/2) sqrt|det B| * Sum_A
    CyclotomicInt lhs =
        quad_sum_modB_exact(p, SumSide::B) * sqrt_as_cyclotomic(det_a);
    CyclotomicInt rhs =
        root_of_unity(make_rational(signature(p.t), 8) - gamma / 2) *
        sqrt_as_cyclotomic(det_b) * quad_sum_modB_exact(p, SumSide::A);
    return lhs == rhs;
}

CorGrResult cor_gr_residual(const RatSymMatrix& t, const RatVector& c,
                            mpfr_prec_t prec) {
    if (static_cast<long>(c.size()) != t.n())
        throw std::invalid_argument("cor_gr_residual: twist dimension mismatch");
    ReducedForm rf = reduced_form(t);
    IntMatrix n_mat = transpose(rf.B) * rf.A;
    for (long i = 0; i < t.n(); ++i) {
        Rational d = Rational(n_mat(i, i)) + 2 * c[i];
        if (d.get_den() != 1 || d.get_num() % 2 != 0)
            throw std::invalid_argument(
                "cor_gr_residual: n + 2 diag(c) must be integral and even");
    }

    RatMatrix b_inv = inverse(to_rational(rf.B));
    RatMatrix a_inv = inverse(to_rational(rf.A));
    RatMatrix n_rat = to_rational(n_mat);
    const Real one = Real::of(1L, prec);
    PrecComplex lhs =
        (one / sqrt(Real::of(Integer(abs(det_integer(rf.B))), prec))) *
        sum_over_rational(b_inv, rf.B, n_rat, c, +1, prec);
    Rational gamma = dot(c, inverse(n_rat) * c);
    PrecComplex rhs =
        (one / sqrt(Real::of(Integer(abs(det_integer(rf.A))), prec))) *
        (exp_i_pi(-gamma, prec) * exp_i_pi(make_rational(signature(t), 4), prec) *
         sum_over_rational(a_inv, rf.A, n_rat, c, -1, prec));

    CorGrResult out{abs(lhs - rhs), Real::of(0L, prec), false};
    // c = transpose(B) s translates the identity back to the mod-B form
    RatVector s = transpose(b_inv) * c;
    bool half_integral = true;
    for (const Rational& si : s)
        if (si.get_den() != 1 && si.get_den() != 2) half_integral = false;
    if (half_integral) {
        out.thm_b_residual = reciprocity_nd_residual(make_quad_problem(t, s), prec);
        out.thm_b_checked = true;
    }
    return out;
}

Real landsberg_schaar_nd_residual(const RatSymMatrix& t, mpfr_prec_t prec) {
    ReducedForm rf = reduced_form(t);
    RatVector zero(t.n(), Rational(0));
    if (!evenness_check(rf.A, rf.B, zero))
        throw std::invalid_argument(
            "landsberg_schaar_nd_residual: transpose(B) A must be even");
    return reciprocity_nd_residual(make_quad_problem(t, zero), prec);
}

}  // namespace qrec
