#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qrec/rational.hpp"

namespace qrec {

// Dense row-major matrix.  T is any value-semantic scalar with +, *, +=
// and a zero-valued default constructor (Integer, Rational, or the MPFR
// scalars from prec_complex.hpp).
template <typename T>
struct Matrix {
    long rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(long r, long c) : rows(r), cols(c) {
        if (r <= 0 || c <= 0)
            throw std::invalid_argument("Matrix: dimensions must be positive");
        a.assign(static_cast<size_t>(r) * static_cast<size_t>(c), T{});
    }

    T& operator()(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(long i, long j) const {
        return a[static_cast<size_t>(i) * cols + j];
    }

    bool is_square() const { return rows == cols; }

    static Matrix identity(long n) {
        Matrix m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix<T> z(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            if constexpr (requires { x(i, k) == 0; }) {
                if (x(i, k) == 0) continue;
            }
            for (long j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& x, const std::vector<T>& v) {
    if (x.cols != static_cast<long>(v.size()))
        throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<T> z(x.rows, T{});
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) z[i] += x(i, j) * v[j];
    return z;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& x) {
    Matrix<T> z(x.cols, x.rows);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
    return z;
}

template <typename T>
bool operator==(const Matrix<T>& x, const Matrix<T>& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

// Symmetric rational matrix; symmetry is validated once at construction.
class RatSymMatrix {
  public:
    explicit RatSymMatrix(RatMatrix m) : m_(std::move(m)) {
        if (!m_.is_square()) throw std::invalid_argument("RatSymMatrix: not square");
        for (long i = 0; i < m_.rows; ++i)
            for (long j = i + 1; j < m_.cols; ++j)
                if (m_(i, j) != m_(j, i))
                    throw std::invalid_argument("RatSymMatrix: not symmetric");
    }

    long n() const { return m_.rows; }
    const Rational& operator()(long i, long j) const { return m_(i, j); }
    const RatMatrix& mat() const { return m_; }

  private:
    RatMatrix m_;
};

Integer det_integer(const IntMatrix& m);
Rational det_rational(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);  // throws on singular input
RatMatrix to_rational(const IntMatrix& m);
IntMatrix to_integer(const RatMatrix& m);  // throws unless every entry is integral

// U * S * V == input, U and V unimodular, S diagonal with
// S(0,0) | S(1,1) | ... and every S(i,i) >= 0.
struct SmithNormalForm {
    IntMatrix U, S, V;
};
SmithNormalForm smith_normal_form(const IntMatrix& n_mat);

// Witness for t = A B^{-1} with A = U P, B = V Q, U, V unimodular,
// P, Q diagonal, Q(i,i) > 0, gcd(P(i,i), Q(i,i)) = 1.  Not unique; consumers
// must rely only on these predicates.
struct ReducedForm {
    IntMatrix U, V, P, Q, A, B;
};
ReducedForm reduced_form(const RatSymMatrix& t);

// A complete residue system for Z^n / B Z^n, of size |det B|.
std::vector<IntVector> coset_reps(const IntMatrix& b);

// #positive - #negative eigenvalues, via exact congruence diagonalization.
long signature(const RatSymMatrix& t);

// True iff transpose(B) A + 2 diag(transpose(B) s) is integral with even
// diagonal.  Entries of s must lie in (1/2) Z.
bool evenness_check(const IntMatrix& a_mat, const IntMatrix& b_mat,
                    const RatVector& s);

}  // namespace qrec
