#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qrec/lattice.hpp"

using namespace qrec;

namespace {

IntMatrix imat(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows[0].size());
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) m(i, j) = Integer(rows[i][j]);
    return m;
}

RatMatrix rmat(const std::vector<std::vector<Rational>>& rows) {
    RatMatrix m(rows.size(), rows[0].size());
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

RatVector rat_vec(const IntVector& v) {
    RatVector r;
    for (const Integer& x : v) r.emplace_back(x);
    return r;
}

bool integral(const RatVector& v) {
    for (const Rational& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

void check_snf(const IntMatrix& n_mat, const SmithNormalForm& f) {
    CHECK(f.U * f.S * f.V == n_mat);
    CHECK(abs(det_integer(f.U)) == 1);
    CHECK(abs(det_integer(f.V)) == 1);
    for (long i = 0; i < f.S.rows; ++i)
        for (long j = 0; j < f.S.cols; ++j)
            if (i != j) CHECK(f.S(i, j) == 0);
    const long d = std::min(f.S.rows, f.S.cols);
    for (long i = 0; i < d; ++i) CHECK(f.S(i, i) >= 0);
    for (long i = 0; i + 1 < d; ++i) {
        if (f.S(i, i) == 0)
            CHECK(f.S(i + 1, i + 1) == 0);
        else
            CHECK(f.S(i + 1, i + 1) % f.S(i, i) == 0);
    }
}

void check_reduced(const RatSymMatrix& t, const ReducedForm& rf) {
    CHECK(abs(det_integer(rf.U)) == 1);
    CHECK(abs(det_integer(rf.V)) == 1);
    for (long i = 0; i < rf.P.rows; ++i)
        for (long j = 0; j < rf.P.cols; ++j)
            if (i != j) {
                CHECK(rf.P(i, j) == 0);
                CHECK(rf.Q(i, j) == 0);
            }
    for (long i = 0; i < rf.Q.rows; ++i) {
        CHECK(rf.Q(i, i) > 0);
        CHECK(gcd(rf.P(i, i), rf.Q(i, i)) == 1);
    }
    CHECK(rf.A == rf.U * rf.P);
    CHECK(rf.B == rf.V * rf.Q);
    CHECK(t.mat() * to_rational(rf.B) == to_rational(rf.A));
    CHECK(to_rational(rf.A) * inverse(to_rational(rf.B)) == t.mat());
}

// Jacobi eigenvalue iteration in doubles; used only as an independent
// cross-check of the exact signature.
long float_signature(const RatMatrix& m, double min_abs) {
    const long n = m.rows;
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) a[i][j] = m(i, j).get_d();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (long p = 0; p < n; ++p)
            for (long q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;
        for (long p = 0; p < n; ++p)
            for (long q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-14) continue;
                double tau = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                double tt = (tau >= 0 ? 1.0 : -1.0) /
                            (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + tt * tt), s = tt * c;
                for (long k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (long k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    long sig = 0;
    for (long i = 0; i < n; ++i) {
        if (std::abs(a[i][i]) < min_abs) return 1000000;  // not well separated
        sig += a[i][i] > 0 ? 1 : -1;
    }
    return sig;
}

}  // namespace

TEST_CASE("Smith normal form: examples and random sweep") {
    check_snf(IntMatrix::identity(3), smith_normal_form(IntMatrix::identity(3)));
    CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));

    IntMatrix d23 = imat({{2, 0}, {0, 3}});
    auto f = smith_normal_form(d23);
    check_snf(d23, f);
    CHECK(f.S == imat({{1, 0}, {0, 6}}));

    IntMatrix swap2 = imat({{0, 1}, {1, 0}});
    f = smith_normal_form(swap2);
    check_snf(swap2, f);
    CHECK(f.S == IntMatrix::identity(2));

    std::mt19937 rng(5);
    std::uniform_int_distribution<long> ent(-9, 9), dim(1, 4);
    for (int it = 0; it < 200; ++it) {
        IntMatrix n_mat(dim(rng), dim(rng));
        for (long i = 0; i < n_mat.rows; ++i)
            for (long j = 0; j < n_mat.cols; ++j) n_mat(i, j) = Integer(ent(rng));
        check_snf(n_mat, smith_normal_form(n_mat));
    }
}

TEST_CASE("reduced form of a rational symmetric matrix") {
    {
        RatSymMatrix t(rmat({{make_rational(3, 5)}}));
        auto rf = reduced_form(t);
        check_reduced(t, rf);
        CHECK(rf.A == imat({{3}}));
        CHECK(rf.B == imat({{5}}));
    }
    {
        RatSymMatrix t(rmat({{make_rational(-2, 7)}}));
        check_reduced(t, reduced_form(t));
    }
    {
        RatSymMatrix t(
            rmat({{make_rational(1, 2), Rational(0)}, {Rational(0), make_rational(3, 4)}}));
        auto rf = reduced_form(t);
        check_reduced(t, rf);
        CHECK(abs(det_integer(rf.B)) == 8);
    }
    {
        RatSymMatrix t(
            rmat({{Rational(0), make_rational(1, 2)}, {make_rational(1, 2), Rational(0)}}));
        auto rf = reduced_form(t);
        check_reduced(t, rf);
        CHECK(abs(det_integer(rf.A)) == 1);
        CHECK(abs(det_integer(rf.B)) == 4);
    }
    CHECK_THROWS_AS(
        reduced_form(RatSymMatrix(rmat({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}))),
        std::invalid_argument);

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4), dim(1, 4);
    int done = 0;
    while (done < 200) {
        const long n = dim(rng);
        RatMatrix m(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = i; j < n; ++j) {
                m(i, j) = make_rational(num(rng), den(rng));
                m(j, i) = m(i, j);
            }
        if (det_rational(m) == 0) continue;
        RatSymMatrix t(m);
        check_reduced(t, reduced_form(t));
        ++done;
    }
}

TEST_CASE("coset representatives of Z^n mod B Z^n") {
    auto reps = coset_reps(IntMatrix::identity(2));
    REQUIRE(reps.size() == 1);
    CHECK(reps[0] == IntVector{Integer(0), Integer(0)});

    auto check_coset = [](const IntMatrix& b) {
        auto rs = coset_reps(b);
        CHECK(Integer(rs.size()) == abs(det_integer(b)));
        RatMatrix b_inv = inverse(to_rational(b));
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = i + 1; j < rs.size(); ++j) {
                RatVector d(rs[i].size());
                for (size_t k = 0; k < d.size(); ++k)
                    d[k] = Rational(rs[i][k] - rs[j][k]);
                CHECK(!integral(b_inv * d));
            }
    };
    check_coset(imat({{2, 0}, {0, 2}}));
    CHECK(coset_reps(imat({{1, 1}, {0, 2}})).size() == 2);
    check_coset(imat({{1, 1}, {0, 2}}));

    CHECK_THROWS_AS(coset_reps(imat({{1, 1}, {1, 1}})), std::invalid_argument);

    std::mt19937 rng(13);
    std::uniform_int_distribution<long> ent(-4, 4), dim(1, 3);
    int done = 0;
    while (done < 100) {
        const long n = dim(rng);
        IntMatrix b(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) b(i, j) = Integer(ent(rng));
        if (det_integer(b) == 0) continue;
        check_coset(b);
        ++done;
    }
}

TEST_CASE("exact signature vs floating-point eigenvalue signs") {
    for (long n = 1; n <= 4; ++n)
        CHECK(signature(RatSymMatrix(to_rational(IntMatrix::identity(n)))) == n);
    CHECK(signature(RatSymMatrix(rmat({{Rational(1), Rational(0)},
                                       {Rational(0), Rational(-2)}}))) == 0);
    CHECK(signature(RatSymMatrix(rmat({{Rational(0), Rational(1)},
                                       {Rational(1), Rational(0)}}))) == 0);
    CHECK_THROWS_AS(signature(RatSymMatrix(rmat({{Rational(1), Rational(1)},
                                                 {Rational(1), Rational(1)}}))),
                    std::invalid_argument);

    std::mt19937 rng(17);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3), dim(1, 5);
    int done = 0;
    while (done < 100) {
        const long n = dim(rng);
        RatMatrix m(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = i; j < n; ++j) {
                m(i, j) = make_rational(num(rng), den(rng));
                m(j, i) = m(i, j);
            }
        if (det_rational(m) == 0) continue;
        long fs = float_signature(m, 1e-4);
        if (fs == 1000000) continue;  // eigenvalue too close to zero to trust
        CHECK(signature(RatSymMatrix(m)) == fs);
        ++done;
    }
}

TEST_CASE("evenness of tBA + 2 diag(tB s)") {
    CHECK(evenness_check(imat({{2}}), imat({{1}}), {Rational(0)}));
    CHECK(evenness_check(imat({{1}}), imat({{2}}), {make_rational(1, 2)}));
    CHECK(!evenness_check(imat({{1}}), imat({{1}}), {Rational(0)}));
    CHECK(evenness_check(imat({{1}}), imat({{1}}), {make_rational(1, 2)}));
    CHECK(evenness_check(IntMatrix::identity(2), imat({{2, 0}, {0, 2}}),
                         {Rational(0), Rational(0)}));

    // the off-diagonal rank-2 form: tBA is even for its reduced form
    RatSymMatrix t(
        rmat({{Rational(0), make_rational(1, 2)}, {make_rational(1, 2), Rational(0)}}));
    auto rf = reduced_form(t);
    CHECK(evenness_check(rf.A, rf.B, {Rational(0), Rational(0)}));

    CHECK_THROWS_AS(evenness_check(imat({{1}}), imat({{1}}), {make_rational(1, 3)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        evenness_check(imat({{1}}), imat({{1}}), {Rational(0), Rational(0)}),
        std::invalid_argument);
}

TEST_CASE("y and ty integral exactly when y lies in B Z^n") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4), dim(1, 3), yent(-10, 10);
    int done = 0;
    while (done < 30) {
        const long n = dim(rng);
        RatMatrix m(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = i; j < n; ++j) {
                m(i, j) = make_rational(num(rng), den(rng));
                m(j, i) = m(i, j);
            }
        if (det_rational(m) == 0) continue;
        RatSymMatrix t(m);
        auto rf = reduced_form(t);
        RatMatrix b_inv = inverse(to_rational(rf.B));
        for (int k = 0; k < 200; ++k) {
            RatVector y(n);
            for (long i = 0; i < n; ++i) y[i] = Rational(yent(rng));
            CHECK(integral(t.mat() * y) == integral(b_inv * y));
        }
        ++done;
    }
}
