#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "qrec/gauss_sums.hpp"
#include "qrec/multidim_gauss.hpp"

using namespace qrec;

namespace {

RatSymMatrix sym(const std::vector<std::vector<Rational>>& rows) {
    RatMatrix m(rows.size(), rows[0].size());
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return RatSymMatrix(m);
}

const Rational kHalf = make_rational(1, 2);

// Integral symmetric numerators over a small common denominator, with a
// search over shifts in {0, +-1/2}^n for one making the sums well-defined.
std::optional<QuadSumProblem> random_problem(std::mt19937& rng, long n) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    for (int attempt = 0; attempt < 60; ++attempt) {
        const long d = den(rng);
        RatMatrix m(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = i; j < n; ++j) {
                m(i, j) = make_rational(num(rng), d);
                m(j, i) = m(i, j);
            }
        if (det_rational(m) == 0) continue;
        RatSymMatrix t(m);
        ReducedForm rf = reduced_form(t);
        long combos = 1;
        for (long i = 0; i < n; ++i) combos *= 3;
        for (long c = 0; c < combos; ++c) {
            RatVector s(n);
            long rest = c;
            for (long i = 0; i < n; ++i) {
                const long v = rest % 3;
                rest /= 3;
                s[i] = v == 0 ? Rational(0) : (v == 1 ? kHalf : -kHalf);
            }
            if (evenness_check(rf.A, rf.B, s)) return make_quad_problem(t, s);
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("coset sums of quadratic phases") {
    {
        auto p = make_quad_problem(sym({{kHalf}}), {Rational(0)});
        PrecComplex v = quad_sum_modB(p, SumSide::B);
        CHECK(abs(v - PrecComplex{Real::of(1L), Real::of(1L)}) < 1e-30);
        CyclotomicInt want =
            CyclotomicInt::one() + CyclotomicInt::zeta_power(4, 1);
        CHECK(quad_sum_modB_exact(p, SumSide::B) == want);
        CHECK(quad_phase(p, SumSide::B, {Integer(1)}) == make_rational(1, 4));
    }
    {
        // identity form: a single representative once the shift makes the
        // odd diagonal admissible
        auto p = make_quad_problem(
            RatSymMatrix(to_rational(IntMatrix::identity(2))), {kHalf, kHalf});
        CHECK(abs(quad_sum_modB(p, SumSide::B) - PrecComplex::one()) < 1e-30);
        // with zero shift the diagonal is odd and the sum is ill-defined
        CHECK_THROWS_AS(
            make_quad_problem(RatSymMatrix(to_rational(IntMatrix::identity(2))),
                              {Rational(0), Rational(0)}),
            std::invalid_argument);
    }
    {
        auto p = make_quad_problem(
            sym({{Rational(0), kHalf}, {kHalf, Rational(0)}}),
            {Rational(0), Rational(0)});
        CHECK(abs(quad_sum_modB(p, SumSide::B) - PrecComplex::of(2.0, 0.0)) <
              1e-30);
    }
    CHECK_THROWS_AS(make_quad_problem(sym({{kHalf}}), {make_rational(1, 3)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_quad_problem(sym({{kHalf}}), {Rational(0), Rational(0)}),
                    std::invalid_argument);
}

TEST_CASE("coset sums do not depend on the representatives") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> zent(-2, 2);
    int done = 0;
    while (done < 12) {
        const long n = 1 + done % 2;
        auto p = random_problem(rng, n);
        if (!p) continue;
        for (SumSide side : {SumSide::B, SumSide::A}) {
            const IntMatrix& mod = side == SumSide::B ? p->rf.B : p->rf.A;
            auto reps = coset_reps(mod);
            CyclotomicInt base = quad_sum_over_reps_exact(*p, side, reps);
            for (auto& r : reps) {
                IntVector z(n);
                for (long i = 0; i < n; ++i) z[i] = Integer(zent(rng));
                IntVector shift = mod * z;
                for (long i = 0; i < n; ++i) r[i] += shift[i];
            }
            CHECK(quad_sum_over_reps_exact(*p, side, reps) == base);
        }
        ++done;
    }
}

TEST_CASE("diagonal forms factor into one-dimensional sums") {
    auto check_diag = [](const std::vector<std::pair<long, long>>& pq) {
        const long n = pq.size();
        RatMatrix m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = make_rational(pq[i].first, pq[i].second);
        auto p = make_quad_problem(RatSymMatrix(m), RatVector(n, Rational(0)));
        PrecComplex prod = PrecComplex::one();
        for (auto [pv, qv] : pq)
            prod = prod * (sqrt(Real::of(qv)) * gauss_S({pv, 0, qv}));
        CHECK(abs(quad_sum_modB(p, SumSide::B) - prod) < 1e-25);
    };
    check_diag({{1, 2}});
    check_diag({{1, 2}, {3, 4}});
    check_diag({{1, 2}, {1, 2}});
    check_diag({{-3, 2}, {5, 6}});
    check_diag({{1, 2}, {3, 4}, {5, 6}});
}

TEST_CASE("n-dimensional reciprocity") {
    auto p1 = make_quad_problem(sym({{kHalf}}), {Rational(0)});
    CHECK(reciprocity_nd_residual(p1) < 1e-25);

    auto p2 = make_quad_problem(sym({{kHalf, Rational(0)}, {Rational(0), kHalf}}),
                                {Rational(0), Rational(0)});
    CHECK(reciprocity_nd_residual(p2) < 1e-25);

    auto p3 = make_quad_problem(sym({{Rational(0), kHalf}, {kHalf, Rational(0)}}),
                                {Rational(0), Rational(0)});
    CHECK(signature(p3.t) == 0);
    CHECK(reciprocity_nd_residual(p3) < 1e-25);

    // the case separating the t^{-1} s twist from a bare s twist
    auto p4 = make_quad_problem(sym({{Rational(3)}}), {kHalf});
    CHECK(reciprocity_nd_residual(p4) < 1e-25);
    CHECK(reciprocity_nd_exact_holds(p4));

    std::mt19937 rng(31);
    int done = 0;
    while (done < 40) {
        auto p = random_problem(rng, 1 + done % 3);
        if (!p) continue;
        CHECK(reciprocity_nd_residual(*p) < 1e-22);
        ++done;
    }
    done = 0;
    while (done < 15) {
        auto p = random_problem(rng, 1 + done % 2);
        if (!p) continue;
        CHECK(reciprocity_nd_exact_holds(*p));
        ++done;
    }
}

TEST_CASE("scalar case matches one-dimensional reciprocity exactly") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<long> adist(-6, 6), cdist(1, 6), kdist(-3, 3);
    int done = 0;
    while (done < 60) {
        const long a = adist(rng), c = cdist(rng), k = kdist(rng);
        if (a == 0 || gcd(Integer(a), Integer(c)) != 1) continue;
        if ((c * (a + k)) % 2 != 0) continue;  // both sides need this parity
        auto p = make_quad_problem(sym({{make_rational(a, c)}}),
                                   {make_rational(k, 2)});
        Real nd = reciprocity_nd_residual(p);
        Real one_d = reciprocity_residual(a, c * k, c);
        CHECK(nd < 1e-25);
        CHECK(abs(nd - one_d) < 1e-25);
        ++done;
    }
}

TEST_CASE("reciprocity over the dual coset system") {
    {
        auto r = cor_gr_residual(sym({{Rational(2)}}), {Rational(0)});
        CHECK(r.gr_residual < 1e-25);
        CHECK(r.thm_b_checked);
        CHECK(r.thm_b_residual < 1e-25);
    }
    {
        auto r = cor_gr_residual(sym({{kHalf, Rational(0)}, {Rational(0), kHalf}}),
                                 {Rational(0), Rational(0)});
        CHECK(r.gr_residual < 1e-25);
        CHECK(r.thm_b_checked);
        CHECK(r.thm_b_residual < 1e-25);
    }
    {
        // odd scalar made admissible by the twist
        auto r = cor_gr_residual(sym({{Rational(1)}}), {kHalf});
        CHECK(r.gr_residual < 1e-25);
        CHECK(r.thm_b_checked);
        CHECK(r.thm_b_residual < 1e-25);
    }
    CHECK_THROWS_AS(cor_gr_residual(sym({{Rational(1)}}), {Rational(0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cor_gr_residual(sym({{Rational(2)}}), {make_rational(1, 3)}),
                    std::invalid_argument);

    std::mt19937 rng(41);
    int done = 0;
    while (done < 20) {
        auto p = random_problem(rng, 1 + done % 3);
        if (!p) continue;
        RatVector c = transpose(to_rational(p->rf.B)) * p->s;
        auto r = cor_gr_residual(p->t, c);
        CHECK(r.gr_residual < 1e-22);
        CHECK(r.thm_b_checked);
        CHECK(r.thm_b_residual < 1e-22);
        ++done;
    }
}

TEST_CASE("shift-free reciprocity for even inner forms") {
    CHECK(landsberg_schaar_nd_residual(sym({{make_rational(6, 5)}})) < 1e-25);
    CHECK(landsberg_schaar_nd_residual(
              sym({{kHalf, Rational(0)}, {Rational(0), kHalf}})) < 1e-25);
    CHECK(landsberg_schaar_nd_residual(
              sym({{Rational(0), kHalf}, {kHalf, Rational(0)}})) < 1e-25);
    CHECK_THROWS_AS(landsberg_schaar_nd_residual(sym({{Rational(1)}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(landsberg_schaar_nd_residual(sym({{make_rational(1, 3)}})),
                    std::invalid_argument);
}
