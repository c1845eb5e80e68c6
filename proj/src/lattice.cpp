#include "qrec/lattice.hpp"

#include <algorithm>

namespace qrec {

namespace {

constexpr long kMaxCosetCount = 1L << 20;

}  // namespace

Integer det_integer(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("det_integer: not square");
    const long n = m.rows;
    IntMatrix w = m;
    Integer prev(1);
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            long r = -1;
            for (long i = k + 1; i < n && r < 0; ++i)
                if (w(i, k) != 0) r = i;
            if (r < 0) return Integer(0);
            for (long c = 0; c < n; ++c) std::swap(w(k, c), w(r, c));
            sign = -sign;
        }
        // Bareiss: the division is exact
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j)
                w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

Rational det_rational(const RatMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("det_rational: not square");
    const long n = m.rows;
    RatMatrix w = m;
    Rational det(1);
    for (long k = 0; k < n; ++k) {
        if (w(k, k) == 0) {
            long r = -1;
            for (long i = k + 1; i < n && r < 0; ++i)
                if (w(i, k) != 0) r = i;
            if (r < 0) return Rational(0);
            for (long c = 0; c < n; ++c) std::swap(w(k, c), w(r, c));
            det = -det;
        }
        det *= w(k, k);
        for (long i = k + 1; i < n; ++i) {
            if (w(i, k) == 0) continue;
            Rational f = w(i, k) / w(k, k);
            for (long j = k; j < n; ++j) w(i, j) -= f * w(k, j);
        }
    }
    return det;
}

RatMatrix inverse(const RatMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: not square");
    const long n = m.rows;
    RatMatrix w = m, inv = RatMatrix::identity(n);
    for (long k = 0; k < n; ++k) {
        long r = -1;
        for (long i = k; i < n && r < 0; ++i)
            if (w(i, k) != 0) r = i;
        if (r < 0) throw std::invalid_argument("inverse: singular matrix");
        if (r != k)
            for (long c = 0; c < n; ++c) {
                std::swap(w(k, c), w(r, c));
                std::swap(inv(k, c), inv(r, c));
            }
        Rational piv = w(k, k);
        for (long c = 0; c < n; ++c) {
            w(k, c) /= piv;
            inv(k, c) /= piv;
        }
        for (long i = 0; i < n; ++i) {
            if (i == k || w(i, k) == 0) continue;
            Rational f = w(i, k);
            for (long c = 0; c < n; ++c) {
                w(i, c) -= f * w(k, c);
                inv(i, c) -= f * inv(k, c);
            }
        }
    }
    return inv;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix z(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) z(i, j) = Rational(m(i, j));
    return z;
}

IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix z(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) {
            if (m(i, j).get_den() != 1)
                throw std::invalid_argument("to_integer: non-integral entry");
            z(i, j) = m(i, j).get_num();
        }
    return z;
}

SmithNormalForm smith_normal_form(const IntMatrix& n_mat) {
    const long m = n_mat.rows, n = n_mat.cols;
    IntMatrix S = n_mat;
    IntMatrix U = IntMatrix::identity(m), V = IntMatrix::identity(n);
    // Invariant throughout: U * S * V == n_mat.  A row operation S <- E S is
    // paired with U <- U E^{-1}; a column operation S <- S F with V <- F^{-1} V.
    auto swap_rows = [&](long i, long j) {
        if (i == j) return;
        for (long c = 0; c < n; ++c) std::swap(S(i, c), S(j, c));
        for (long r = 0; r < m; ++r) std::swap(U(r, i), U(r, j));
    };
    auto swap_cols = [&](long i, long j) {
        if (i == j) return;
        for (long r = 0; r < m; ++r) std::swap(S(r, i), S(r, j));
        for (long c = 0; c < n; ++c) std::swap(V(i, c), V(j, c));
    };
    auto row_sub = [&](long i, long j, const Integer& q) {  // row i -= q * row j
        if (q == 0) return;
        for (long c = 0; c < n; ++c) S(i, c) -= q * S(j, c);
        for (long r = 0; r < m; ++r) U(r, j) += q * U(r, i);
    };
    auto col_sub = [&](long j, long i, const Integer& q) {  // col j -= q * col i
        if (q == 0) return;
        for (long r = 0; r < m; ++r) S(r, j) -= q * S(r, i);
        for (long c = 0; c < n; ++c) V(i, c) += q * V(j, c);
    };

    const long steps = std::min(m, n);
    for (long d = 0; d < steps; ++d) {
        // smallest nonzero |entry| of the trailing block as pivot
        long pi = -1, pj = -1;
        for (long i = d; i < m; ++i)
            for (long j = d; j < n; ++j)
                if (S(i, j) != 0 && (pi < 0 || abs(S(i, j)) < abs(S(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;  // trailing block is zero
        swap_rows(d, pi);
        swap_cols(d, pj);

        for (bool clean = false; !clean;) {
            clean = true;
            for (long i = d + 1; i < m; ++i) {
                if (S(i, d) == 0) continue;
                row_sub(i, d, Integer(S(i, d) / S(d, d)));
                if (S(i, d) != 0) {  // remainder becomes the smaller pivot
                    swap_rows(i, d);
                    clean = false;
                }
            }
            for (long j = d + 1; j < n; ++j) {
                if (S(d, j) == 0) continue;
                col_sub(j, d, Integer(S(d, j) / S(d, d)));
                if (S(d, j) != 0) {
                    swap_cols(j, d);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the whole trailing block
            for (long i = d + 1; i < m && clean; ++i)
                for (long j = d + 1; j < n && clean; ++j)
                    if (S(i, j) % S(d, d) != 0) {
                        row_sub(d, i, Integer(-1));  // row d += row i
                        clean = false;
                    }
        }
        if (S(d, d) < 0) {
            for (long c = 0; c < n; ++c) S(d, c) = -S(d, c);
            for (long r = 0; r < m; ++r) U(r, d) = -U(r, d);
        }
    }
    return {U, S, V};
}

ReducedForm reduced_form(const RatSymMatrix& t) {
    const long n = t.n();
    Integer d(1);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) d = lcm(d, Integer(t(i, j).get_den()));
    IntMatrix n_mat(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Rational scaled = t(i, j) * Rational(d);
            n_mat(i, j) = scaled.get_num();  // d clears every denominator
        }
    if (det_integer(n_mat) == 0)
        throw std::invalid_argument("reduced_form: singular matrix");

    SmithNormalForm snf = smith_normal_form(n_mat);
    IntMatrix p_mat(n, n), q_mat(n, n);
    for (long i = 0; i < n; ++i) {
        Integer g = gcd(snf.S(i, i), d);
        p_mat(i, i) = snf.S(i, i) / g;
        q_mat(i, i) = d / g;
    }
    // t = U (S/d) V, so B = V^{-1} Q makes t B = U P exactly.
    IntMatrix v_inv = to_integer(inverse(to_rational(snf.V)));

    ReducedForm rf;
    rf.U = snf.U;
    rf.V = v_inv;
    rf.P = p_mat;
    rf.Q = q_mat;
    rf.A = snf.U * p_mat;
    rf.B = v_inv * q_mat;
    return rf;
}

std::vector<IntVector> coset_reps(const IntMatrix& b) {
    if (!b.is_square()) throw std::invalid_argument("coset_reps: B must be square");
    const long n = b.rows;
    SmithNormalForm snf = smith_normal_form(b);
    Integer count(1);
    for (long i = 0; i < n; ++i) count *= snf.S(i, i);
    if (count == 0) throw std::invalid_argument("coset_reps: B is singular");
    if (count > kMaxCosetCount)
        throw std::length_error("coset_reps: |det B| too large to enumerate");

    std::vector<long> radix(n);
    for (long i = 0; i < n; ++i) radix[i] = snf.S(i, i).get_si();

    // B = W S X with W, X unimodular: W y for y in the box prod [0, S_ii)
    // runs over Z^n / B Z^n exactly once.
    std::vector<IntVector> reps;
    reps.reserve(count.get_ui());
    std::vector<long> y(n, 0);
    for (;;) {
        IntVector r(n, Integer(0));
        for (long i = 0; i < n; ++i) {
            if (y[i] == 0) continue;
            for (long row = 0; row < n; ++row) r[row] += snf.U(row, i) * y[i];
        }
        reps.push_back(std::move(r));
        long pos = 0;
        while (pos < n && ++y[pos] == radix[pos]) y[pos++] = 0;
        if (pos == n) break;
    }
    return reps;
}

long signature(const RatSymMatrix& t) {
    const long n = t.n();
    RatMatrix m = t.mat();
    if (det_rational(m) == 0)
        throw std::invalid_argument("signature: singular matrix");

    auto congruence_swap = [&](long i, long k) {
        if (i == k) return;
        for (long c = 0; c < n; ++c) std::swap(m(i, c), m(k, c));
        for (long r = 0; r < n; ++r) std::swap(m(r, i), m(r, k));
    };
    auto congruence_add = [&](long i, long j) {  // row i += row j, col i += col j
        for (long c = 0; c < n; ++c) m(i, c) += m(j, c);
        for (long r = 0; r < n; ++r) m(r, i) += m(r, j);
    };

    long pos = 0, neg = 0;
    for (long k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            long di = -1;
            for (long i = k + 1; i < n && di < 0; ++i)
                if (m(i, i) != 0) di = i;
            if (di >= 0) {
                congruence_swap(di, k);
            } else {
                // all trailing diagonal entries vanish; a nonsingular input
                // still has an off-diagonal entry to fold onto the diagonal
                long fi = -1, fj = -1;
                for (long i = k; i < n && fi < 0; ++i)
                    for (long j = i + 1; j < n; ++j)
                        if (m(i, j) != 0) {
                            fi = i;
                            fj = j;
                            break;
                        }
                congruence_add(fi, fj);  // m(fi, fi) becomes 2 m(fi, fj)
                congruence_swap(fi, k);
            }
        }
        (m(k, k) > 0 ? pos : neg) += 1;
        for (long i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rational f = m(i, k) / m(k, k);
            for (long c = k; c < n; ++c) m(i, c) -= f * m(k, c);
            for (long r = k; r < n; ++r) m(r, i) -= f * m(r, k);
        }
    }
    return pos - neg;
}

bool evenness_check(const IntMatrix& a_mat, const IntMatrix& b_mat,
                    const RatVector& s) {
    if (!a_mat.is_square() || !b_mat.is_square() || a_mat.rows != b_mat.rows ||
        static_cast<long>(s.size()) != a_mat.rows)
        throw std::invalid_argument("evenness_check: dimension mismatch");
    for (const Rational& si : s)
        if (si.get_den() != 1 && si.get_den() != 2)
            throw std::invalid_argument(
                "evenness_check: shift entries must be half-integers");

    IntMatrix m = transpose(b_mat) * a_mat;
    for (long i = 0; i < a_mat.rows; ++i) {
        Rational diag(m(i, i));
        for (long j = 0; j < a_mat.rows; ++j) diag += 2 * b_mat(j, i) * s[j];
        if (diag.get_den() != 1) return false;
        if (diag.get_num() % 2 != 0) return false;
    }
    return true;
}

}  // namespace qrec
