#include "qrec/cyclic_fourier.hpp"

#include <numeric>
#include <stdexcept>

namespace qrec {

namespace {

long mod_norm(long v, long n) {
    long r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

ExactCyclicFn dft(const ExactCyclicFn& f) {
    const long n = f.modulus;
    long order = n;
    for (const auto& v : f.values) order = std::lcm(order, v.order());

    std::vector<CyclotomicInt> prom;
    prom.reserve(n);
    for (const auto& v : f.values) prom.push_back(v.promoted(order));
    const long stride = order / n;  // e_n(t) = zeta_order^{t*stride}

    std::vector<CyclotomicInt> out;
    out.reserve(n);
    for (long x = 0; x < n; ++x) {
        // Accumulate sum_y f(y) zeta^{-xy*stride} as raw coefficients mod
        // x^order - 1; one canonical reduction per output point.
        std::vector<Integer> acc(order, Integer(0));
        for (long y = 0; y < n; ++y) {
            const long shift = mod_norm(-x * y, n) * stride;
            const auto& c = prom[y].coeffs();
            for (long j = 0; j < order; ++j) {
                if (c[j] == 0) continue;
                long idx = j + shift;
                if (idx >= order) idx -= order;
                acc[idx] += c[j];
            }
        }
        out.push_back(CyclotomicInt::from_coeffs(order, std::move(acc)));
    }
    return ExactCyclicFn(n, std::move(out));
}

FloatCyclicFn dft(const FloatCyclicFn& f) {
    const long n = f.modulus;
    mpfr_prec_t prec = kMinPrec;
    for (const auto& v : f.values) prec = std::max(prec, v.prec());

    std::vector<PrecComplex> out;
    out.reserve(n);
    for (long x = 0; x < n; ++x) {
        PrecComplex acc = PrecComplex::zero(prec);
        for (long y = 0; y < n; ++y)
            acc += f.values[y] * unit_root(make_rational(mod_norm(-x * y, n), n), prec);
        out.push_back(acc);
    }
    return FloatCyclicFn(n, std::move(out));
}

namespace {

void check_subgroup_pair(long n, long a, long b) {
    if (a < 1 || b < 1 || a * b != n)
        throw std::invalid_argument("subgroup pair must satisfy a*b = modulus");
}

}  // namespace

Real poisson_residual(const FloatCyclicFn& f, long a, long b) {
    const long n = f.modulus;
    check_subgroup_pair(n, a, b);
    const FloatCyclicFn g = dft(f);
    mpfr_prec_t prec = kMinPrec;
    for (const auto& v : f.values) prec = std::max(prec, v.prec());

    PrecComplex lhs = PrecComplex::zero(prec);
    for (long k = 0; k < a; ++k) lhs += f.values[k * b];
    PrecComplex rhs = PrecComplex::zero(prec);
    for (long k = 0; k < b; ++k) rhs += g.values[k * a];

    const Real sa = sqrt(Real::of(a, prec));
    const Real snb = sqrt(Real::of(n, prec) * Real::of(b, prec));
    PrecComplex diff = lhs / PrecComplex{sa, Real::of(0L, prec)} -
                       rhs / PrecComplex{snb, Real::of(0L, prec)};
    return abs(diff);
}

bool poisson_exact_check(const ExactCyclicFn& f, long a, long b) {
    const long n = f.modulus;
    check_subgroup_pair(n, a, b);
    const ExactCyclicFn g = dft(f);

    CyclotomicInt lhs = CyclotomicInt::zero(1);
    for (long k = 0; k < a; ++k) lhs += f.values[k * b];
    lhs = Integer(b) * lhs;
    CyclotomicInt rhs = CyclotomicInt::zero(1);
    for (long k = 0; k < b; ++k) rhs += g.values[k * a];
    return lhs == rhs;
}

namespace {

void check_quadratic_phase_args(long a, long b, long c) {
    if (c == 0) throw std::invalid_argument("quadratic phase needs c != 0");
    if (((a * c + b) & 1L) != 0)
        throw std::invalid_argument(
            "quadratic phase needs ac + b even to be well-defined mod c");
}

}  // namespace

ExactCyclicFn quadratic_phase_exact(long a, long b, long c) {
    check_quadratic_phase_args(a, b, c);
    const long n = c < 0 ? -c : c;
    std::vector<CyclotomicInt> vals;
    vals.reserve(n);
    for (long x = 0; x < n; ++x)
        vals.push_back(root_of_unity(make_rational(a * x * x + b * x, 2 * c)));
    return ExactCyclicFn(n, std::move(vals));
}

FloatCyclicFn quadratic_phase_float(long a, long b, long c, mpfr_prec_t prec) {
    check_quadratic_phase_args(a, b, c);
    const long n = c < 0 ? -c : c;
    std::vector<PrecComplex> vals;
    vals.reserve(n);
    for (long x = 0; x < n; ++x)
        vals.push_back(unit_root(make_rational(a * x * x + b * x, 2 * c), prec));
    return FloatCyclicFn(n, std::move(vals));
}

WhfResult whf_check(long m, long n, mpfr_prec_t prec) {
    if (n < 1) throw std::invalid_argument("whf_check needs n >= 1");
    if (((m - n) & 1L) != 0)
        throw std::invalid_argument(
            "whf_check needs m = n (mod 2); otherwise f_{1,m,n} does not "
            "descend to Z/nZ and the closed form has no meaning");

    const FloatCyclicFn g = dft(quadratic_phase_float(1, m, n, prec));

    // C(m,n) from the normalized quadratic sum matching the parity of m.
    const long bb = (m & 1L) ? 1 : 0;
    PrecComplex s = PrecComplex::zero(prec);
    for (long x = 0; x < n; ++x)
        s += unit_root(make_rational(x * x + bb * x, 2 * n), prec);
    const Real sqrt_n = sqrt(Real::of(n, prec));
    PrecComplex c_value = s / PrecComplex{sqrt_n, Real::of(0L, prec)};
    if (bb == 1) c_value = c_value * unit_root(make_rational(1, 8 * n), prec);

    const PrecComplex scale =
        PrecComplex{sqrt_n, Real::of(0L, prec)} * c_value *
        unit_root(make_rational(-m * m, 8 * n), prec);

    Real worst = Real::of(0L, prec);
    for (long x = 0; x < n; ++x) {
        const PrecComplex rhs =
            scale * unit_root(make_rational(-x * x + m * x, 2 * n), prec);
        worst = max(worst, abs(g.values[x] - rhs));
    }
    return WhfResult{c_value, worst};
}

}  // namespace qrec
