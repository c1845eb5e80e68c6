#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qrec/gauss_sums.hpp"
#include "qrec/multidim_gauss.hpp"
#include "qrec/theta.hpp"

using namespace qrec;

namespace {

PrecComplex pc(double re, double im = 0.0) { return PrecComplex::of(re, im); }

double rd(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CplxMatrix cmat(const std::vector<std::vector<PrecComplex>>& rows) {
    CplxMatrix m(rows.size(), rows[0].size());
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

// Symmetric with Im = tM M + d I, so Im is positive definite by construction.
CplxMatrix random_siegel_tau(std::mt19937& rng, long n) {
    std::vector<std::vector<double>> w(n, std::vector<double>(n));
    for (auto& row : w)
        for (auto& e : row) e = rd(rng, -0.7, 0.7);
    double d = rd(rng, 0.6, 1.5);
    CplxMatrix t(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            double im = (i == j) ? d : 0.0;
            for (long k = 0; k < n; ++k) im += w[k][i] * w[k][j];
            double re = rd(rng, -1.0, 1.0);
            t(i, j) = pc(re, im);
            t(j, i) = t(i, j);
        }
    return t;
}

CplxVector random_z(std::mt19937& rng, long n) {
    CplxVector z;
    for (long i = 0; i < n; ++i) z.push_back(pc(rd(rng, -1, 1), rd(rng, -0.5, 0.5)));
    return z;
}

RatSymMatrix sym(const std::vector<std::vector<Rational>>& rows) {
    RatMatrix m(rows.size(), rows[0].size());
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return RatSymMatrix(m);
}

CplxMatrix scaled_ci(long n, double im_scale) {
    CplxMatrix t(n, n);
    for (long i = 0; i < n; ++i) t(i, i) = pc(0.0, im_scale);
    return t;
}

}  // namespace

TEST_CASE("Jacobi theta: certified evaluation") {
    ThetaValue v = jacobi_theta(pc(0), pc(0, 1), 1e-25);
    CHECK(v.value.im.is_zero());
    CHECK(std::abs(v.value.re.to_double() - 1.0864348112) < 1e-9);
    CHECK(v.tail_bound <= 1e-25);

    // Independent direct summation at doubled radius.
    {
        Real pi = Real::pi(192);
        Real acc = Real::of(1L, 192);
        for (long k = 1; k <= 2 * v.truncation_radius; ++k)
            acc += Real::of(2L, 192) * exp(-(pi * Real::of(k * k, 192)));
        CHECK(abs(v.value.re - acc) < 1e-24);
    }

    // Far up the imaginary axis the series collapses to its constant term.
    ThetaValue far = jacobi_theta(pc(0), pc(0, 1e6), 1e-20);
    CHECK(abs(far.value - PrecComplex::one()) < 1e-20);

    // Shift by one in z is invisible to the defining sum.
    std::mt19937 rng(411);
    for (int i = 0; i < 5; ++i) {
        PrecComplex z = pc(rd(rng, -1, 1), rd(rng, -0.6, 0.6));
        PrecComplex tau = pc(rd(rng, -2, 2), rd(rng, 0.4, 3));
        PrecComplex a = jacobi_theta(z + PrecComplex::one(), tau, 1e-20).value;
        PrecComplex b = jacobi_theta(z, tau, 1e-20).value;
        CHECK(abs(a - b) < 2e-20);
    }

    // Self-consistency: refining the tolerance moves the value by less than
    // the reported tail bound.
    {
        PrecComplex z = pc(0.3, 0.2), tau = pc(0.5, 0.8);
        ThetaValue coarse = jacobi_theta(z, tau, 1e-8);
        ThetaValue fine = jacobi_theta(z, tau, 1e-30);
        CHECK(coarse.tail_bound <= 1e-8);
        CHECK(fine.truncation_radius >= 2 * coarse.truncation_radius);
        CHECK(abs(coarse.value - fine.value) < coarse.tail_bound);
    }

    CHECK_THROWS_AS(jacobi_theta(pc(0), pc(1, 0), 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_theta(pc(0), pc(0, -1), 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_theta(pc(0), pc(0, 1), 0.0), std::invalid_argument);
}

TEST_CASE("Jacobi theta: modular transformation") {
    CHECK(jacobi_transform_residual(pc(0), pc(0, 1), 1e-20) < 1e-25);
    CHECK(jacobi_transform_residual(pc(0.3, 0.1), pc(0.2, 1.5), 1e-20) < 1e-20);
    CHECK(jacobi_transform_residual(pc(0.5), pc(0, 2), 1e-20) < 1e-20);

    std::mt19937 rng(412);
    for (int i = 0; i < 10; ++i) {
        PrecComplex z = pc(rd(rng, -1, 1), rd(rng, -0.5, 0.5));
        PrecComplex tau = pc(rd(rng, -1.5, 1.5), rd(rng, 0.5, 2.5));
        CHECK(jacobi_transform_residual(z, tau, 1e-20) < 1e-18);
    }
}

TEST_CASE("Jacobi theta on arithmetic progressions") {
    // m = 1 is the whole series, so its residual is the plain transformation law's.
    {
        PrecComplex z = pc(0.2, 0.1), tau = pc(0.3, 1.1);
        ThetaKmValue whole = theta_km(0, 1, z, tau, 1e-20);
        CHECK(abs(whole.value - jacobi_theta(z, tau, 1e-20).value) < 1e-19);
        CHECK(whole.lemma_residual < 1e-18);
    }

    // The m slices partition the series.
    std::mt19937 rng(413);
    for (int i = 0; i < 4; ++i) {
        PrecComplex z = pc(rd(rng, -1, 1), rd(rng, -0.4, 0.4));
        PrecComplex tau = pc(rd(rng, -1, 1), rd(rng, 0.5, 2));
        PrecComplex acc = PrecComplex::zero();
        for (long k = 0; k < 3; ++k) acc += theta_km(k, 3, z, tau, 1e-20).value;
        CHECK(abs(acc - jacobi_theta(z, tau, 1e-20).value) < 1e-18);
    }

    CHECK(theta_km(1, 2, pc(0), pc(0, 1), 1e-20).lemma_residual < 1e-20);

    // Progression membership only depends on k mod m.
    {
        PrecComplex z = pc(0.4), tau = pc(0.2, 0.9);
        PrecComplex a = theta_km(-1, 3, z, tau, 1e-20).value;
        PrecComplex b = theta_km(2, 3, z, tau, 1e-20).value;
        CHECK(abs(a - b) < 1e-30);
    }

    CHECK_THROWS_AS(theta_km(0, 0, pc(0), pc(0, 1), 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(theta_km(0, -2, pc(0), pc(0, 1), 1e-10), std::invalid_argument);
}

TEST_CASE("averaged transformation law for theta") {
    CHECK(theta_average_residual(1, 2, 0, pc(0), pc(0, 2), 1e-18) < 1e-18);
    CHECK(theta_average_residual(3, 2, 0, pc(0.1), pc(1, 1), 1e-18) < 1e-18);
    CHECK(theta_average_residual(3, 4, 2, pc(0.1), pc(1, 1), 1e-18) < 1e-18);
    CHECK(theta_average_residual(3, 1, 1, pc(-0.2, 0.1), pc(0.4, 0.7), 1e-18) < 1e-18);
    CHECK(theta_average_residual(-3, 2, 0, pc(0.2), pc(0.3, 1.0), 1e-18) < 1e-18);
    CHECK(theta_average_residual(5, -3, 1, pc(0.05, 0.02), pc(-0.2, 0.8), 1e-18) < 1e-18);

    // With tau far up the imaginary axis, each side collapses onto the
    // corresponding side of the one-dimensional reciprocity law; the average
    // over x mod |b| is the (a, c, b) quadratic Gauss sum over 1/|b|.
    {
        const long a = 3, b = 2, c = 0;
        PrecComplex tau = pc(0, 1e4);
        PrecComplex lhs = PrecComplex::zero();
        for (long x = 0; x < b; ++x)
            lhs += unit_root(make_rational(a * x * x + c * x, 2 * b)) *
                   jacobi_theta(PrecComplex::of(make_rational(x, b)), tau, 1e-12).value;
        lhs = (Real::of(1L) / Real::of(b)) * lhs;
        PrecComplex want_lhs =
            (Real::of(1L) / sqrt(Real::of(static_cast<long>(b)))) * gauss_S({a, c, b});
        CHECK(abs(lhs - want_lhs) < 1e-6);

        PrecComplex tau1 = tau - PrecComplex::of(make_rational(1, a * b));
        PrecComplex rhs = PrecComplex::zero();
        for (long y = 0; y < a; ++y)
            rhs += unit_root(make_rational(-b * y * y + c * y, 2 * a)) *
                   jacobi_theta(PrecComplex::of(make_rational(y, a)), tau1, 1e-12).value;
        PrecComplex root_it = sqrt(Real::of(make_rational(a, b))) *
                              exp_i_pi(make_rational(1, 4));
        rhs = (Real::of(1L) / Real::of(a)) *
              (root_it * unit_root(make_rational(-c * c, 8 * a * b)) * rhs);
        PrecComplex want_rhs = root_it *
                               unit_root(make_rational(-c * c, 8 * a * b)) *
                               ((Real::of(1L) / sqrt(Real::of(static_cast<long>(a)))) *
                                gauss_S({-b, c, a}));
        CHECK(abs(rhs - want_rhs) < 1e-6);
        CHECK(abs(lhs - rhs) < 1e-6);
    }

    CHECK_THROWS_AS(theta_average_residual(2, 2, 0, pc(0), pc(0, 1), 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(theta_average_residual(3, 2, 1, pc(0), pc(0, 1), 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(theta_average_residual(0, 1, 0, pc(0), pc(0, 1), 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(theta_average_residual(1, 2, 0, pc(0), pc(0, -1), 1e-10),
                    std::invalid_argument);
}

TEST_CASE("Riemann theta: box truncation and degenerations") {
    std::mt19937 rng(414);

    // One variable: the box sum is the Jacobi series.
    for (int i = 0; i < 5; ++i) {
        PrecComplex z = pc(rd(rng, -1, 1), rd(rng, -0.5, 0.5));
        PrecComplex tau = pc(rd(rng, -1.5, 1.5), rd(rng, 0.5, 2.5));
        SiegelPoint p = make_siegel_point({z}, cmat({{tau}}));
        CHECK(abs(riemann_theta(p, 1e-27).value - jacobi_theta(z, tau, 1e-27).value) <
              1e-25);
    }

    // Far up the imaginary axis only the origin survives.
    {
        CplxMatrix tau(2, 2);
        tau(0, 0) = pc(0.7, 1e4);
        tau(1, 1) = pc(-0.4, 1e4);
        tau(0, 1) = pc(0.3, 0);
        tau(1, 0) = tau(0, 1);
        SiegelPoint p = make_siegel_point({pc(0.3), pc(-0.2)}, tau);
        CHECK(abs(riemann_theta(p, 1e-20).value - PrecComplex::one()) < 1e-12);
    }

    // Diagonal tau factorizes the box sum.
    {
        PrecComplex t1 = pc(0.3, 1.1), t2 = pc(-0.7, 0.8);
        PrecComplex z1 = pc(0.2, 0.1), z2 = pc(-0.4, 0.0);
        CplxMatrix tau(2, 2);
        tau(0, 0) = t1;
        tau(1, 1) = t2;
        SiegelPoint p = make_siegel_point({z1, z2}, tau);
        PrecComplex prod =
            jacobi_theta(z1, t1, 1e-22).value * jacobi_theta(z2, t2, 1e-22).value;
        CHECK(abs(riemann_theta(p, 1e-20).value - prod) < 1e-18);
    }

    // Quasi-periodicity under integer shifts of z.
    for (int i = 0; i < 3; ++i) {
        CplxMatrix tau = random_siegel_tau(rng, 2);
        CplxVector z = random_z(rng, 2);
        CplxVector zs = z;
        zs[0] += pc(1);
        zs[1] += pc(-2);
        PrecComplex a = riemann_theta(make_siegel_point(zs, tau), 1e-20).value;
        PrecComplex b = riemann_theta(make_siegel_point(z, tau), 1e-20).value;
        CHECK(abs(a - b) < 1e-18);
    }

    // Tail bound honesty under refinement.
    {
        CplxMatrix tau = random_siegel_tau(rng, 2);
        CplxVector z = random_z(rng, 2);
        SiegelPoint p = make_siegel_point(z, tau);
        ThetaValue coarse = riemann_theta(p, 1e-8);
        ThetaValue fine = riemann_theta(p, 1e-24);
        CHECK(coarse.tail_bound <= 1e-8);
        CHECK(abs(coarse.value - fine.value) < coarse.tail_bound);
    }

    // Rejections: wrong z length, asymmetry, indefinite imaginary part.
    {
        CplxMatrix tau = scaled_ci(2, 1.0);
        CHECK_THROWS_AS(make_siegel_point({pc(0)}, tau), std::invalid_argument);
        CplxMatrix bad = tau;
        bad(0, 1) = pc(1);
        CHECK_THROWS_AS(make_siegel_point({pc(0), pc(0)}, bad), std::invalid_argument);
        CplxMatrix indef(2, 2);
        indef(0, 0) = pc(0, 1);
        indef(1, 1) = pc(0, -1);
        CHECK_THROWS_AS(make_siegel_point({pc(0), pc(0)}, indef), std::invalid_argument);
        CplxMatrix tiny(1, 1);
        tiny(0, 0) = pc(0, 1e-30);
        CHECK_THROWS_AS(make_siegel_point({pc(0)}, tiny), std::invalid_argument);
    }
}

TEST_CASE("det branch: anchor, boundary values, continuity") {
    for (long n = 1; n <= 3; ++n)
        CHECK(abs(det_branch(scaled_ci(n, 1.0), DetBranchMode::siegel) -
                  PrecComplex::one()) < 1e-30);

    // Boundary values on real symmetric matrices.
    {
        CplxMatrix d(2, 2);
        d(0, 0) = pc(1);
        d(1, 1) = pc(-1);
        CHECK(abs(det_branch(d, DetBranchMode::real_limit) - PrecComplex::one()) <
              1e-30);
        CplxMatrix s(1, 1);
        s(0, 0) = pc(3);
        PrecComplex want = sqrt(Real::of(3L)) * exp_i_pi(make_rational(-1, 4));
        CHECK(abs(det_branch(s, DetBranchMode::real_limit) - want) < 1e-30);
    }

    // The square of the branch is the plain determinant of -i tau.
    std::mt19937 rng(415);
    for (int i = 0; i < 50; ++i) {
        long n = 1 + static_cast<long>(i % 3);
        CplxMatrix tau = random_siegel_tau(rng, n);
        PrecComplex db = det_branch(tau, DetBranchMode::siegel);
        CplxMatrix mitau(n, n);
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c)
                mitau(r, c) = PrecComplex(tau(r, c).im, -tau(r, c).re);
        CHECK(abs(db * db - complex_det(mitau)) < 1e-25);
    }

    // No branch jumps along a segment from i I to a generic point.
    {
        CplxMatrix tau1 = cmat({{pc(0.9, 1.3), pc(0.4, -0.2)},
                                {pc(0.4, -0.2), pc(-0.6, 1.7)}});
        PrecComplex prev;
        for (int step = 0; step <= 100; ++step) {
            double lam = step / 100.0;
            CplxMatrix t(2, 2);
            for (long r = 0; r < 2; ++r)
                for (long c = 0; c < 2; ++c) {
                    Real re = Real::of(lam) * tau1(r, c).re;
                    Real im = Real::of(lam) * tau1(r, c).im +
                              Real::of((r == c) ? 1.0 - lam : 0.0);
                    t(r, c) = PrecComplex(re, im);
                }
            PrecComplex cur = det_branch(t, DetBranchMode::siegel);
            if (step > 0) CHECK(abs(cur - prev) < 0.1);
            prev = cur;
        }
    }

    // The siegel branch converges to the boundary value from above.
    {
        std::uniform_int_distribution<long> num(-6, 6);
        int done = 0;
        while (done < 20) {
            long n = 1 + static_cast<long>(done % 3);
            CplxMatrix t(n, n);
            RealMatrix re(n, n);
            for (long i = 0; i < n; ++i)
                for (long j = i; j < n; ++j) {
                    double e = static_cast<double>(num(rng)) / 2.0;
                    t(i, j) = pc(e);
                    t(j, i) = t(i, j);
                    re(i, j) = Real::of(e);
                    re(j, i) = re(i, j);
                }
            bool ok = true;
            for (const auto& d : sym_eigenvalues(re))
                if (!(abs(d) > 0.25)) ok = false;
            if (!ok) continue;
            ++done;
            PrecComplex boundary = det_branch(t, DetBranchMode::real_limit);
            Real err[3];
            double eps[3] = {1e-1, 1e-2, 1e-3};
            for (int e = 0; e < 3; ++e) {
                CplxMatrix lifted = t;
                for (long i = 0; i < n; ++i)
                    lifted(i, i) = lifted(i, i) + pc(0, eps[e]);
                err[e] = abs(det_branch(lifted, DetBranchMode::siegel) - boundary);
            }
            CHECK(err[0] > err[1]);
            CHECK(err[1] > err[2]);
        }
    }

    // Rejections.
    {
        CplxMatrix c1(1, 1);
        c1(0, 0) = pc(1, 1);
        CHECK_THROWS_AS(det_branch(c1, DetBranchMode::real_limit),
                        std::invalid_argument);
        CplxMatrix sing(2, 2);
        sing(0, 0) = pc(1);
        CHECK_THROWS_AS(det_branch(sing, DetBranchMode::real_limit),
                        std::invalid_argument);
        CplxMatrix notpd(1, 1);
        notpd(0, 0) = pc(1, -2);
        CHECK_THROWS_AS(det_branch(notpd, DetBranchMode::siegel),
                        std::invalid_argument);
    }
}

TEST_CASE("Riemann theta: transformation law") {
    CHECK(riemann_transform_residual(
              make_siegel_point({pc(0), pc(0)}, scaled_ci(2, 1.0)), 1e-20) < 1e-25);

    // One variable: same residual as the Jacobi check.
    {
        PrecComplex z = pc(0.3, 0.1), tau = pc(0.2, 1.5);
        Real r1 = riemann_transform_residual(make_siegel_point({z}, cmat({{tau}})),
                                             1e-20);
        Real r2 = jacobi_transform_residual(z, tau, 1e-20);
        CHECK(r1 < 1e-18);
        CHECK(abs(r1 - r2) < 1e-18);
    }

    std::mt19937 rng(416);
    for (int i = 0; i < 5; ++i) {
        CplxMatrix tau = random_siegel_tau(rng, 2);
        SiegelPoint p = make_siegel_point(random_z(rng, 2), tau);
        CHECK(riemann_transform_residual(p, 1e-20) < 1e-18);
    }
    {
        CplxMatrix tau = random_siegel_tau(rng, 3);
        for (long i = 0; i < 3; ++i) tau(i, i) = tau(i, i) + pc(0, 0.8);
        SiegelPoint p = make_siegel_point(random_z(rng, 3), tau);
        CHECK(riemann_transform_residual(p, 1e-16) < 1e-15);
    }
}

TEST_CASE("coset-averaged theta reciprocity at finite tau") {
    // One variable, half-integral form.
    CHECK(thmB_finite_tau_residual(sym({{make_rational(1, 2)}}), {Rational(0)},
                                   {pc(0)}, cmat({{pc(0, 2)}}), 1e-18) < 1e-16);

    // Unit form with a genuine half-integral shift: the identity reduces to
    // theta(z, tau) = theta(z - 1/2, tau - 1).
    CHECK(thmB_finite_tau_residual(sym({{Rational(1)}}), {make_rational(1, 2)},
                                   {pc(0.1, 0.05)}, cmat({{pc(0.2, 1.5)}}),
                                   1e-18) < 1e-15);

    // Two variables, diagonal.
    {
        RatSymMatrix t = sym({{make_rational(1, 2), Rational(0)},
                              {Rational(0), make_rational(1, 2)}});
        RatVector c = {Rational(0), Rational(0)};
        CplxVector z = {pc(0), pc(0)};
        CHECK(thmB_finite_tau_residual(t, c, z, scaled_ci(2, 3.0), 1e-16) < 1e-14);
    }

    // Two variables, off-diagonal form.
    {
        RatSymMatrix t = sym({{Rational(0), make_rational(1, 2)},
                              {make_rational(1, 2), Rational(0)}});
        RatVector c = {Rational(0), Rational(0)};
        CplxVector z = {pc(0.1, 0.05), pc(-0.2)};
        CplxMatrix tau = cmat({{pc(0.1, 1.2), pc(0.05)},
                               {pc(0.05), pc(-0.2, 0.9)}});
        CHECK(thmB_finite_tau_residual(t, c, z, tau, 1e-14) < 1e-13);
    }

    // Far up the imaginary axis the identity degenerates to the reciprocity
    // law between the two coset Gauss sums.
    {
        RatSymMatrix t = sym({{make_rational(1, 2)}});
        QuadSumProblem p = make_quad_problem(t, {Rational(0)});
        PrecComplex tau = pc(0, 1e4);
        CHECK(thmB_finite_tau_residual(t, {Rational(0)}, {pc(0)},
                                       cmat({{tau}}), 1e-4) < 1e-6);

        PrecComplex lhs = PrecComplex::zero();
        for (long r = 0; r < 2; ++r) {
            Rational x = make_rational(r, 2);
            Rational ph = x * x;  // half of tx (2) x
            lhs += unit_root(ph) * jacobi_theta(PrecComplex::of(x), tau, 1e-10).value;
        }
        CHECK(abs(lhs - quad_sum_modB(p, SumSide::B, kDefaultPrec)) < 1e-6);

        PrecComplex rhs_sum =
            jacobi_theta(pc(0), tau - PrecComplex::of(make_rational(1, 2)), 1e-10)
                .value;
        CHECK(abs(rhs_sum - quad_sum_modB(p, SumSide::A, kDefaultPrec)) < 1e-6);
    }

    // Rejections: odd inner form, shifts off the half-integral lattice,
    // singular forms, shape mismatches.
    CHECK_THROWS_AS(thmB_finite_tau_residual(sym({{Rational(1)}}), {Rational(0)},
                                             {pc(0)}, cmat({{pc(0, 1)}}), 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(thmB_finite_tau_residual(sym({{Rational(1)}}),
                                             {make_rational(1, 3)}, {pc(0)},
                                             cmat({{pc(0, 1)}}), 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(thmB_finite_tau_residual(sym({{Rational(0)}}), {Rational(0)},
                                             {pc(0)}, cmat({{pc(0, 1)}}), 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(thmB_finite_tau_residual(sym({{make_rational(1, 2)}}),
                                             {Rational(0), Rational(0)}, {pc(0)},
                                             cmat({{pc(0, 1)}}), 1e-10),
                    std::invalid_argument);
}
