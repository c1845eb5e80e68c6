#include "qrec/theta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qrec {
namespace {

mpfr_prec_t prec_of(const PrecComplex& w) { return w.prec(); }

mpfr_prec_t prec_of(const CplxVector& v) {
    mpfr_prec_t p = kDefaultPrec;
    for (const auto& w : v) p = std::max(p, w.prec());
    return p;
}

mpfr_prec_t prec_of(const CplxMatrix& m) {
    mpfr_prec_t p = kDefaultPrec;
    for (const auto& w : m.a) p = std::max(p, w.prec());
    return p;
}

// 2^{-prec/2}; the uniform slack used by every numeric validity check.
Real margin_of(mpfr_prec_t p) {
    return Real::of(std::ldexp(1.0, -static_cast<int>(p / 2)), p);
}

// Upper bound for sum_{l >= 0} exp(-pi v (t0 + l s)^2 / 2 + 2 pi y (t0 + l s))
// by the geometric series with the l = 0 ratio; empty when that ratio is
// not < 1 (radius too small).
std::optional<Real> progression_tail(const Real& v, const Real& y, const Real& t0,
                                     long step, mpfr_prec_t pr) {
    Real pi = Real::pi(pr);
    Real two = Real::of(2L, pr);
    Real s = Real::of(step, pr);
    Real q = exp(two * pi * y * s - pi * v * s * (two * t0 + s) / two);
    if (!(q < 1.0)) return std::nullopt;
    Real g0 = exp(two * pi * y * t0 - pi * v * t0 * t0 / two);
    return g0 / (Real::of(1L, pr) - q);
}

// Attempts the factorization m - shift I = L tL; empty unless every pivot
// stays positive.
std::optional<RealMatrix> chol_lower(const RealMatrix& m, const Real& shift) {
    long n = m.rows;
    RealMatrix l(n, n);
    for (long k = 0; k < n; ++k) {
        Real piv = m(k, k) - shift;
        for (long j = 0; j < k; ++j) piv -= l(k, j) * l(k, j);
        if (!(piv > 0.0)) return std::nullopt;
        l(k, k) = sqrt(piv);
        for (long i = k + 1; i < n; ++i) {
            Real x = m(i, k);
            for (long j = 0; j < k; ++j) x -= l(i, j) * l(k, j);
            l(i, k) = x / l(k, k);
        }
    }
    return l;
}

RealMatrix upper_tri_inverse(const RealMatrix& a) {
    long n = a.rows;
    RealMatrix x(n, n);
    for (long j = n - 1; j >= 0; --j) {
        x(j, j) = Real::of(1L, a(j, j).prec()) / a(j, j);
        for (long i = j - 1; i >= 0; --i) {
            Real s(a(i, i).prec());
            for (long k = i + 1; k <= j; ++k) s += a(i, k) * x(k, j);
            x(i, j) = -s / a(i, i);
        }
    }
    return x;
}

// Validates symmetry within margin and returns the exactly symmetrized copy.
CplxMatrix symmetrized(CplxMatrix m, mpfr_prec_t pr, const char* who) {
    if (!m.is_square()) throw std::invalid_argument(std::string(who) + ": not square");
    Real mrg = margin_of(pr);
    Real scale = Real::of(1L, pr);
    for (const auto& w : m.a) scale = max(scale, abs(w));
    Real half = Real::of(0.5, pr);
    for (long i = 0; i < m.rows; ++i)
        for (long j = i + 1; j < m.cols; ++j) {
            if (abs(m(i, j) - m(j, i)) > mrg * scale)
                throw std::invalid_argument(std::string(who) + ": matrix not symmetric");
            PrecComplex avg = half * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }
    return m;
}

RealMatrix real_part(const CplxMatrix& m) {
    RealMatrix r(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) r(i, j) = m(i, j).re;
    return r;
}

RealMatrix imag_part(const CplxMatrix& m) {
    RealMatrix r(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) r(i, j) = m(i, j).im;
    return r;
}

Rational rat_dot(const RatVector& a, const RatVector& b) {
    Rational s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational rat_qform(const RatMatrix& m, const RatVector& x) {
    Rational s;
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) s += x[i] * m(i, j) * x[j];
    return s;
}

}  // namespace

PrecComplex cexp_i_pi(const PrecComplex& w) {
    Real pi = Real::pi(w.prec());
    return exp(PrecComplex(-(pi * w.im), pi * w.re));
}

std::vector<Real> sym_eigenvalues(const RealMatrix& m0) {
    if (!m0.is_square() || m0.rows == 0)
        throw std::invalid_argument("sym_eigenvalues: not square");
    long n = m0.rows;
    mpfr_prec_t pr = kDefaultPrec;
    for (const auto& w : m0.a) pr = std::max(pr, w.prec());
    RealMatrix m = m0;
    Real half = Real::of(0.5, pr);
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            Real avg = half * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }

    std::vector<Real> diag;
    if (n == 1) {
        diag.push_back(m(0, 0));
        return diag;
    }

    Real one = Real::of(1L, pr), two = Real::of(2L, pr);
    Real fro(pr);
    for (const auto& w : m.a) fro += w * w;
    fro = sqrt(fro);
    Real eps = max(fro, one) * Real::of(std::ldexp(1.0, -static_cast<int>(pr - 8)), pr);
    Real tiny = max(fro, one) * Real::of(std::ldexp(1.0, -static_cast<int>(pr + 16)), pr);

    for (int sweep = 0; sweep < 100; ++sweep) {
        Real off(pr);
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
        if (!(sqrt(off) > eps)) break;
        for (long p = 0; p < n; ++p)
            for (long q = p + 1; q < n; ++q) {
                if (!(abs(m(p, q)) > tiny)) continue;
                Real th = (m(q, q) - m(p, p)) / (two * m(p, q));
                Real t = one / (abs(th) + sqrt(one + th * th));
                if (th.sign() < 0) t = -t;
                Real c = one / sqrt(one + t * t);
                Real s = t * c;
                for (long k = 0; k < n; ++k) {
                    Real mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (long k = 0; k < n; ++k) {
                    Real mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
    }
    for (long i = 0; i < n; ++i) diag.push_back(m(i, i));
    return diag;
}

CplxMatrix complex_inverse(const CplxMatrix& m) {
    if (!m.is_square() || m.rows == 0)
        throw std::invalid_argument("complex_inverse: not square");
    long n = m.rows;
    mpfr_prec_t pr = prec_of(m);
    CplxMatrix w(n, 2 * n);
    Real scale = Real::of(1L, pr);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            w(i, j) = m(i, j);
            scale = max(scale, abs(m(i, j)));
        }
        w(i, n + i) = PrecComplex::one(pr);
    }
    Real floor_abs = scale * Real::of(std::ldexp(1.0, -static_cast<int>(pr - 8)), pr);
    for (long k = 0; k < n; ++k) {
        long piv = k;
        for (long i = k + 1; i < n; ++i)
            if (abs(w(i, k)) > abs(w(piv, k))) piv = i;
        if (!(abs(w(piv, k)) > floor_abs))
            throw std::invalid_argument("complex_inverse: singular matrix");
        if (piv != k)
            for (long j = 0; j < 2 * n; ++j) std::swap(w(k, j), w(piv, j));
        PrecComplex inv = PrecComplex::one(pr) / w(k, k);
        for (long j = 0; j < 2 * n; ++j) w(k, j) = inv * w(k, j);
        for (long i = 0; i < n; ++i) {
            if (i == k || w(i, k).is_zero()) continue;
            PrecComplex f = w(i, k);
            for (long j = 0; j < 2 * n; ++j) w(i, j) -= f * w(k, j);
        }
    }
    CplxMatrix r(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) r(i, j) = w(i, n + j);
    return r;
}

PrecComplex complex_det(const CplxMatrix& m) {
    if (!m.is_square() || m.rows == 0)
        throw std::invalid_argument("complex_det: not square");
    long n = m.rows;
    mpfr_prec_t pr = prec_of(m);
    CplxMatrix w = m;
    PrecComplex det = PrecComplex::one(pr);
    for (long k = 0; k < n; ++k) {
        long piv = k;
        for (long i = k + 1; i < n; ++i)
            if (abs(w(i, k)) > abs(w(piv, k))) piv = i;
        if (w(piv, k).is_zero()) return PrecComplex::zero(pr);
        if (piv != k) {
            for (long j = 0; j < n; ++j) std::swap(w(k, j), w(piv, j));
            det = -det;
        }
        det = det * w(k, k);
        PrecComplex inv = PrecComplex::one(pr) / w(k, k);
        for (long i = k + 1; i < n; ++i) {
            if (w(i, k).is_zero()) continue;
            PrecComplex f = inv * w(i, k);
            for (long j = k; j < n; ++j) w(i, j) -= f * w(k, j);
        }
    }
    return det;
}

SiegelPoint make_siegel_point(CplxVector z, CplxMatrix tau) {
    mpfr_prec_t pr = std::max(prec_of(z), prec_of(tau));
    tau = symmetrized(std::move(tau), pr, "make_siegel_point");
    long n = tau.rows;
    if (static_cast<long>(z.size()) != n)
        throw std::invalid_argument("make_siegel_point: z has the wrong length");

    RealMatrix v = imag_part(tau);
    Real mrg = margin_of(pr);
    Real half = Real::of(0.5, pr);
    Real hi = v(0, 0);
    for (long i = 1; i < n; ++i)
        if (v(i, i) < hi) hi = v(i, i);  // lambda_min never exceeds a diagonal entry
    if (!(hi > 0.0) || !chol_lower(v, mrg).has_value())
        throw std::invalid_argument("make_siegel_point: Im(tau) not positive definite");
    Real lo = mrg;
    for (int it = 0; it < 120; ++it) {
        Real mid = half * (lo + hi);
        if (chol_lower(v, mid).has_value())
            lo = mid;
        else
            hi = mid;
    }
    return SiegelPoint{n, std::move(z), std::move(tau), lo};
}

ThetaValue jacobi_theta(const PrecComplex& z, const PrecComplex& tau, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("jacobi_theta: tol must be positive");
    if (!(tau.im > 0.0)) throw std::invalid_argument("jacobi_theta: Im(tau) must be positive");
    mpfr_prec_t pr = std::max(prec_of(z), prec_of(tau));
    Real v = tau.im;
    Real y = abs(z.im);
    Real two = Real::of(2L, pr);

    long radius = 4;
    Real tail(pr);
    for (;;) {
        auto t1 = progression_tail(v, y, Real::of(radius + 1, pr), 1, pr);
        if (t1 && two * *t1 < tol) {
            tail = two * *t1;
            break;
        }
        radius *= 2;
        if (radius > (1L << 24))
            throw std::runtime_error("jacobi_theta: truncation radius exceeds budget");
    }

    PrecComplex acc(pr);
    for (long k = -radius; k <= radius; ++k) {
        PrecComplex w = Real::of(k * k, pr) * tau + Real::of(2 * k, pr) * z;
        acc += cexp_i_pi(w);
    }
    return ThetaValue{acc, radius, tail};
}

Real jacobi_transform_residual(const PrecComplex& z, const PrecComplex& tau,
                               double tol) {
    if (!(tol > 0))
        throw std::invalid_argument("jacobi_transform_residual: tol must be positive");
    if (!(tau.im > 0.0))
        throw std::invalid_argument("jacobi_transform_residual: Im(tau) must be positive");
    mpfr_prec_t pr = std::max(prec_of(z), prec_of(tau));
    double tin = tol / 16;
    PrecComplex minus_inv = -(PrecComplex::one(pr) / tau);
    PrecComplex lhs = jacobi_theta(z / tau, minus_inv, tin).value;
    PrecComplex root = sqrt(PrecComplex(tau.im, -tau.re));  // -i tau, right half-plane
    PrecComplex rhs = root * cexp_i_pi(z * z / tau) * jacobi_theta(z, tau, tin).value;
    return abs(lhs - rhs);
}

ThetaKmValue theta_km(long k, long m, const PrecComplex& z, const PrecComplex& tau,
                      double tol) {
    if (m <= 0) throw std::invalid_argument("theta_km: m must be positive");
    if (!(tol > 0)) throw std::invalid_argument("theta_km: tol must be positive");
    if (!(tau.im > 0.0)) throw std::invalid_argument("theta_km: Im(tau) must be positive");
    mpfr_prec_t pr = std::max(prec_of(z), prec_of(tau));
    long k0 = ((k % m) + m) % m;
    Real v = tau.im;
    Real y = abs(z.im);
    Real two = Real::of(2L, pr);
    double tin = tol / 16;

    long radius = 4;
    Real tail(pr);
    for (;;) {
        // Smallest |index| outside the window is m (radius + 1) - k0 on both sides.
        Real t0 = Real::of(m * (radius + 1) - k0, pr);
        auto t1 = progression_tail(v, y, t0, m, pr);
        if (t1 && two * *t1 < tin) {
            tail = two * *t1;
            break;
        }
        radius *= 2;
        if (radius > (1L << 24))
            throw std::runtime_error("theta_km: truncation radius exceeds budget");
    }

    PrecComplex direct(pr);
    for (long j = -radius; j <= radius; ++j) {
        long t = k0 + m * j;
        PrecComplex w = Real::of(t * t, pr) * tau + Real::of(2 * t, pr) * z;
        direct += cexp_i_pi(w);
    }

    PrecComplex m2tau = Real::of(m, pr) * (Real::of(m, pr) * tau);
    PrecComplex inner_z = PrecComplex::of(make_rational(k0, m), pr) + z / (Real::of(m, pr) * tau);
    PrecComplex inner = jacobi_theta(inner_z, -(PrecComplex::one(pr) / m2tau), tin).value;
    PrecComplex root = sqrt(PrecComplex(tau.im, -tau.re));
    PrecComplex rhs = (PrecComplex::one(pr) / (Real::of(m, pr) * root)) *
                      cexp_i_pi(-(z * z) / tau) * inner;
    return ThetaKmValue{direct, abs(direct - rhs)};
}

Real theta_average_residual(long a, long b, long c, const PrecComplex& z,
                            const PrecComplex& tau, double tol) {
    if (a == 0 || b == 0)
        throw std::invalid_argument("theta_average_residual: a and b must be nonzero");
    if (std::gcd(std::labs(a), std::labs(b)) != 1)
        throw std::invalid_argument("theta_average_residual: a and b must be coprime");
    if (((a * b + c) % 2 + 2) % 2 != 0)
        throw std::invalid_argument("theta_average_residual: a b + c must be even");
    if (!(tol > 0))
        throw std::invalid_argument("theta_average_residual: tol must be positive");
    if (!(tau.im > 0.0))
        throw std::invalid_argument("theta_average_residual: Im(tau) must be positive");
    mpfr_prec_t pr = std::max(prec_of(z), prec_of(tau));
    double tin = tol / (16.0 * static_cast<double>(std::labs(a) + std::labs(b)));
    Integer ia(a), ib(b), ic(c);

    PrecComplex lhs_sum(pr);
    for (long x = 0; x < std::labs(b); ++x) {
        Rational ph = make_rational(ia * x * x + ic * x, Integer(2) * ib);
        PrecComplex zx = PrecComplex::of(make_rational(x, b), pr) + z;
        lhs_sum += unit_root(ph, pr) * jacobi_theta(zx, tau, tin).value;
    }
    PrecComplex lhs = (Real::of(1L, pr) / Real::of(std::labs(b), pr)) * lhs_sum;

    PrecComplex tau1 = tau - PrecComplex::of(make_rational(Integer(1), ia * ib), pr);
    Rational cshift = make_rational(ic, Integer(2) * ia * ib);
    PrecComplex rhs_sum(pr);
    for (long yv = 0; yv < std::labs(a); ++yv) {
        Rational ph = make_rational(-ib * yv * yv + ic * yv, Integer(2) * ia);
        PrecComplex zy = PrecComplex::of(make_rational(yv, a) - cshift, pr) + z;
        rhs_sum += unit_root(ph, pr) * jacobi_theta(zy, tau1, tin).value;
    }
    PrecComplex root_it = sqrt(Real::of(make_rational(std::labs(a), std::labs(b)), pr)) *
                          exp_i_pi(make_rational(a * b > 0 ? 1 : -1, 4), pr);
    PrecComplex front = unit_root(make_rational(-ic * ic, Integer(8) * ia * ib), pr);
    PrecComplex rhs = (Real::of(1L, pr) / Real::of(std::labs(a), pr)) *
                      (root_it * front * rhs_sum);
    return abs(lhs - rhs);
}

ThetaValue riemann_theta(const SiegelPoint& p, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("riemann_theta: tol must be positive");
    long n = p.n;
    mpfr_prec_t pr = std::max(prec_of(p.z), prec_of(p.tau));
    Real lam = p.im_lambda_lb;
    Real y(pr);
    for (const auto& w : p.z) y = max(y, abs(w.im));
    Real one = Real::of(1L, pr), two = Real::of(2L, pr);
    Real pi = Real::pi(pr);

    long radius = 4;
    Real tail(pr);
    for (;;) {
        // One-variable comparison series g(t) = exp(-pi lam t^2 + 2 pi y t);
        // the box tail is S^n - S_R^n <= n S^{n-1} (S - S_R).
        auto t1 = progression_tail(two * lam, y, Real::of(radius + 1, pr), 1, pr);
        if (t1) {
            Real tail1 = two * *t1;
            Real s_r = one;
            for (long t = 1; t <= radius; ++t) {
                Real tr = Real::of(t, pr);
                s_r += two * exp(two * pi * y * tr - pi * lam * tr * tr);
            }
            Real s_up = s_r + tail1;
            Real box = Real::of(n, pr) * tail1;
            for (long i = 0; i + 1 < n; ++i) box = box * s_up;
            if (box < tol) {
                tail = box;
                break;
            }
        }
        radius *= 2;
        double terms = std::pow(2.0 * static_cast<double>(radius) + 1.0,
                                static_cast<double>(n));
        if (terms > 3.5e7)
            throw std::runtime_error("riemann_theta: truncation budget exceeded");
    }

    PrecComplex acc(pr);
    std::vector<long> x(static_cast<size_t>(n), -radius);
    for (;;) {
        PrecComplex w(pr);
        for (long i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            w += Real::of(x[i] * x[i], pr) * p.tau(i, i);
            for (long j = i + 1; j < n; ++j) {
                if (x[j] == 0) continue;
                w += Real::of(2 * x[i] * x[j], pr) * p.tau(i, j);
            }
            w += Real::of(2 * x[i], pr) * p.z[i];
        }
        acc += cexp_i_pi(w);
        long i = 0;
        while (i < n && x[i] == radius) {
            x[i] = -radius;
            ++i;
        }
        if (i == n) break;
        ++x[i];
    }
    return ThetaValue{acc, radius, tail};
}

PrecComplex det_branch(const CplxMatrix& tau, DetBranchMode mode) {
    mpfr_prec_t pr = prec_of(tau);
    CplxMatrix t = symmetrized(tau, pr, "det_branch");
    long n = t.rows;
    Real mrg = margin_of(pr);
    Real one = Real::of(1L, pr);

    if (mode == DetBranchMode::real_limit) {
        Real scale = one;
        for (const auto& w : t.a) scale = max(scale, abs(w));
        for (const auto& w : t.a)
            if (abs(w.im) > mrg * scale)
                throw std::invalid_argument("det_branch: real_limit needs a real matrix");
        std::vector<Real> eig = sym_eigenvalues(real_part(t));
        Real espan = one;
        for (const auto& d : eig) espan = max(espan, abs(d));
        Real absdet = one;
        long sigmav = 0;
        for (const auto& d : eig) {
            if (!(abs(d) > mrg * espan))
                throw std::invalid_argument("det_branch: singular matrix");
            absdet = absdet * abs(d);
            sigmav += d.sign() > 0 ? 1 : -1;
        }
        return sqrt(absdet) * exp_i_pi(make_rational(-sigmav, 4), pr);
    }

    RealMatrix v = imag_part(t);
    if (!chol_lower(v, mrg).has_value())
        throw std::invalid_argument("det_branch: Im(tau) not positive definite");
    RealMatrix l = *chol_lower(v, Real(pr));
    RealMatrix aup = transpose(l);  // v = t(aup) aup
    Real adet = one;
    for (long i = 0; i < n; ++i) adet = adet * l(i, i);
    RealMatrix ainv = upper_tri_inverse(aup);
    RealMatrix uprime = transpose(ainv) * real_part(t) * ainv;
    std::vector<Real> eig = sym_eigenvalues(uprime);
    PrecComplex out(adet, Real(pr));
    for (const auto& d : eig) out = out * sqrt(PrecComplex(one, -d));
    return out;
}

Real riemann_transform_residual(const SiegelPoint& p, double tol) {
    if (!(tol > 0))
        throw std::invalid_argument("riemann_transform_residual: tol must be positive");
    mpfr_prec_t pr = std::max(prec_of(p.z), prec_of(p.tau));
    double tin = tol / 16;
    CplxMatrix tinv = complex_inverse(p.tau);
    CplxVector z1 = tinv * p.z;
    CplxMatrix mtinv(p.n, p.n);
    for (long i = 0; i < p.n; ++i)
        for (long j = 0; j < p.n; ++j) mtinv(i, j) = -tinv(i, j);
    PrecComplex lhs = riemann_theta(make_siegel_point(z1, mtinv), tin).value;
    PrecComplex q(pr);
    for (long i = 0; i < p.n; ++i) q += p.z[i] * z1[i];  // tz tau^{-1} z
    PrecComplex rhs = det_branch(p.tau, DetBranchMode::siegel) * cexp_i_pi(q) *
                      riemann_theta(p, tin).value;
    return abs(lhs - rhs);
}

Real thmB_finite_tau_residual(const RatSymMatrix& t, const RatVector& c,
                              const CplxVector& z, const CplxMatrix& tau,
                              double tol) {
    long n = t.n();
    if (static_cast<long>(c.size()) != n || static_cast<long>(z.size()) != n)
        throw std::invalid_argument("thmB_finite_tau_residual: size mismatch");
    if (!(tol > 0))
        throw std::invalid_argument("thmB_finite_tau_residual: tol must be positive");
    ReducedForm rf = reduced_form(t);
    IntMatrix nmat = transpose(rf.B) * rf.A;
    if (nmat != transpose(nmat))
        throw std::logic_error("thmB_finite_tau_residual: inner form not symmetric");
    for (long i = 0; i < n; ++i) {
        Rational twice = c[i] * 2;
        if (twice.get_den() != 1)
            throw std::invalid_argument(
                "thmB_finite_tau_residual: shift entries must be half-integral");
        Integer d = nmat(i, i) + twice.get_num();
        if (d % 2 != 0)
            throw std::invalid_argument(
                "thmB_finite_tau_residual: inner form plus shift is not even");
    }

    mpfr_prec_t pr = std::max(prec_of(z), prec_of(tau));
    RatMatrix nrat = to_rational(nmat);
    RatMatrix n_inv = inverse(nrat);
    RatVector n_inv_c = n_inv * c;
    Rational gamma = rat_dot(c, n_inv_c);
    long sig = signature(RatSymMatrix(nrat));
    Rational adet = det_rational(t.mat());
    if (adet < 0) adet = -adet;
    PrecComplex pref = (Real::of(1L, pr) / sqrt(Real::of(adet, pr))) *
                       (exp_i_pi(make_rational(sig, 4), pr) * exp_i_pi(-gamma, pr));

    auto reps_b = coset_reps(rf.B);
    auto reps_a = coset_reps(rf.A);
    double tin = tol / (16.0 * static_cast<double>(reps_b.size() + reps_a.size()));
    RatMatrix b_inv = inverse(to_rational(rf.B));
    RatMatrix a_inv = inverse(to_rational(rf.A));

    auto to_rat_vec = [](const IntVector& r) {
        RatVector v;
        v.reserve(r.size());
        for (const auto& e : r) v.emplace_back(e);
        return v;
    };

    PrecComplex lhs(pr);
    for (const auto& r : reps_b) {
        RatVector x = b_inv * to_rat_vec(r);
        Rational ph = rat_qform(nrat, x) / 2 + rat_dot(x, c);
        CplxVector zx = z;
        for (long i = 0; i < n; ++i) zx[i] += PrecComplex::of(x[i], pr);
        lhs += unit_root(ph, pr) * riemann_theta(make_siegel_point(zx, tau), tin).value;
    }

    CplxMatrix tau1 = tau;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) tau1(i, j) -= PrecComplex::of(n_inv(i, j), pr);
    PrecComplex rhs_sum(pr);
    for (const auto& r : reps_a) {
        RatVector x1 = a_inv * to_rat_vec(r);
        Rational ph = rat_dot(x1, c) - rat_qform(nrat, x1) / 2;
        CplxVector zx = z;
        for (long i = 0; i < n; ++i) zx[i] += PrecComplex::of(x1[i] - n_inv_c[i], pr);
        rhs_sum += unit_root(ph, pr) * riemann_theta(make_siegel_point(zx, tau1), tin).value;
    }
    return abs(lhs - pref * rhs_sum);
}

}  // namespace qrec
