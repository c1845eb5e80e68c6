#include "qrec/finite_zeta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "qrec/arith.hpp"
#include "qrec/gauss_sums.hpp"

namespace qrec {

namespace {

void check_even_modulus(long n) {
    if (n < 2 || (n & 1L))
        throw std::invalid_argument("zeta: modulus must be even and positive");
}

// p^{e} for complex e = s*k + r with rational r, as exp(e log p).
PrecComplex prime_power(long p, const PrecComplex& s, long k, const Rational& r,
                        mpfr_prec_t prec) {
    const Real logp = log_integer(Integer(p), prec);
    PrecComplex expo = Real::of(k, prec) * s;
    expo += PrecComplex{Real::of(r, prec), Real::of(0L, prec)};
    return exp(PrecComplex{expo.re * logp, expo.im * logp});
}

}  // namespace

PrecComplex zeta_direct(long n, const PrecComplex& s) {
    check_even_modulus(n);
    const mpfr_prec_t prec = s.prec();
    PrecComplex acc = PrecComplex::zero(prec);
    for (const long d : divisors(n)) {
        const long dp = n / d;
        const PrecComplex uval =
            u_value(make_rational(dp, d), UMode::closed, prec);
        const Real root = sqrt(Real::of(gcd(Integer(d), Integer(dp)), prec));
        acc += uval * pow_integer(Integer(d), s) /
               PrecComplex{root, Real::of(0L, prec)};
    }
    return acc;
}

PrecComplex zeta_completed(long n, const PrecComplex& s) {
    const mpfr_prec_t prec = s.prec();
    const Real mhalf = Real::of(make_rational(-1, 2), prec);
    return pow_integer(Integer(n), mhalf * s) * zeta_direct(n, s);
}

PrecComplex euler_factor(long n, long p, const PrecComplex& s, EulerMode mode) {
    check_even_modulus(n);
    if (!is_prime(p) || n % p != 0)
        throw std::invalid_argument("euler_factor: needs prime p dividing n");
    const mpfr_prec_t prec = s.prec();

    long alpha = 0, m = n;
    while (m % p == 0) {
        m /= p;
        ++alpha;
    }

    if (mode == EulerMode::direct) {
        PrecComplex acc = PrecComplex::zero(prec);
        Integer p2k = 1;  // p^{2k}
        for (long k = 0; k <= alpha; ++k) {
            const long mu = std::min(k, alpha - k);
            const PrecComplex uval =
                u_value(make_rational(Integer(n), p2k), UMode::closed, prec);
            acc += uval * prime_power(p, s, k, make_rational(-mu, 2), prec);
            p2k *= p * p;
        }
        return acc;
    }

    const long beta = alpha / 2;
    const long L = beta + 1;
    // G_K(y) = sum_{k=0}^K p^{ky}, y = s - 1/2.
    auto geom = [&](long K) {
        PrecComplex acc = PrecComplex::zero(prec);
        for (long k = 0; k <= K; ++k)
            acc += prime_power(p, s, k, make_rational(-k, 2), prec);
        return acc;
    };
    const PrecComplex P = prime_power(p, s, L, make_rational(-L, 2), prec);

    if (p != 2) {
        if (alpha % 2 == 0) return geom(alpha);
        const long eps_sign = jacobi_symbol(m, p);
        const PrecComplex unit =
            PrecComplex::one(prec) +
            Real::of(eps_sign, prec) * (unit_root(make_rational(1 - p, 8), prec) * P);
        return geom(beta) * unit;
    }
    if (alpha % 2 == 1) {
        const long eps_sign = jacobi_symbol(2, m);
        const PrecComplex unit =
            PrecComplex::one(prec) +
            Real::of(eps_sign, prec) * (unit_root(make_rational(m, 8), prec) * P);
        const PrecComplex head = mode == EulerMode::display
                                     ? PrecComplex::one(prec) + P
                                     : geom(beta);
        return head * unit;
    }
    const PrecComplex unit =
        PrecComplex::one(prec) + unit_root(make_rational(m, 8), prec) * P;
    return geom(beta - 1) * unit;
}

Real functional_equation_residual(long n, const PrecComplex& s) {
    const mpfr_prec_t prec = s.prec();
    const PrecComplex lhs = zeta_completed(n, PrecComplex::one(prec) - s);
    const PrecComplex rhs =
        unit_root(make_rational(1, 8), prec) * conj(zeta_completed(n, conj(s)));
    return abs(lhs - rhs);
}

Real euler_product_residual(long n, const PrecComplex& s) {
    check_even_modulus(n);
    const mpfr_prec_t prec = s.prec();
    PrecComplex prod = PrecComplex::one(prec);
    for (const auto& [p, alpha] : factorize(n))
        prod = prod * euler_factor(n, p, s, EulerMode::direct);
    return abs(zeta_direct(n, s) - prod);
}

namespace {

struct ZeroKey {
    long p;
    Rational coeff;
    bool operator<(const ZeroKey& o) const {
        if (p != o.p) return p < o.p;
        return coeff < o.coeff;
    }
};

// Adds every integer k with lo <= val(k) <= hi to the zero map, where
// val(k) = (offset8/8 + k) * scale and t = 2 pi val / ln p.
void add_progression(std::map<ZeroKey, long>& zeros, long p, long offset8,
                     const Rational& scale, long skip_modulus, const Real& lo_k,
                     const Real& hi_k) {
    // conservative integer bounds around [lo_k, hi_k]
    const double lo = lo_k.to_double(), hi = hi_k.to_double();
    const long k_lo = static_cast<long>(std::floor(lo)) - 2;
    const long k_hi = static_cast<long>(std::ceil(hi)) + 2;
    for (long k = k_lo; k <= k_hi; ++k) {
        if (skip_modulus > 0 && k % skip_modulus == 0) continue;
        Rational c = (make_rational(offset8, 8) + k) * scale * 2;
        ZeroKey key{c == 0 ? 0 : p, c};
        auto [it, fresh] = zeros.emplace(key, 1);
        if (!fresh) ++it->second;
    }
}

}  // namespace

std::vector<ZeroOnLine> zeros_in_window(long n, double t_min, double t_max,
                                        mpfr_prec_t prec) {
    check_even_modulus(n);
    if (t_min > t_max)
        throw std::invalid_argument("zeros_in_window: empty window");

    const Real pi = Real::pi(prec);
    std::map<ZeroKey, long> zeros;

    for (const auto& [p, alpha] : factorize(n)) {
        long m = n;
        for (long i = 0; i < alpha; ++i) m /= p;
        const long beta = alpha / 2;
        const long L = beta + 1;
        const Real logp = log_integer(Integer(p), prec);
        // k-range helper: t = 2 pi (off/8 + k) / (len ln p) in [t_min, t_max]
        auto k_bound = [&](long len, const Real& t) {
            return t * Real::of(len, prec) * logp / (Real::of(2L, prec) * pi);
        };

        // geometric head G_K: zeros t = 2 pi k / ((K+1) ln p), (K+1) really
        // not dividing k
        long K = alpha;        // p odd, alpha even
        if (alpha % 2 == 1)
            K = beta;          // both parities of p
        else if (p == 2)
            K = beta - 1;
        if (K >= 1) {
            add_progression(zeros, p, 0, make_rational(1, K + 1), K + 1,
                            k_bound(K + 1, Real::of(t_min, prec)),
                            k_bound(K + 1, Real::of(t_max, prec)));
        }

        // unit factor (1 + eta w^j p^{Ly}): zeros solve p^{iLt} = -1/eps,
        // i.e. t = 2 pi (m0/8 + k)/(L ln p) with m0 = (4-j or -j) mod 8
        bool has_unit = alpha % 2 == 1 || p == 2;
        if (has_unit) {
            long j, eta;
            if (p != 2) {
                j = ((1 - p) % 8 + 8) % 8;
                eta = jacobi_symbol(m, p);
            } else {
                j = m % 8;
                eta = alpha % 2 == 1 ? jacobi_symbol(2, m) : 1;
            }
            const long m0 = ((eta == 1 ? 4 - j : -j) % 8 + 8) % 8;
            const Real off = Real::of(make_rational(m0, 8), prec);
            add_progression(zeros, p, m0, make_rational(1, L), 0,
                            k_bound(L, Real::of(t_min, prec)) - off,
                            k_bound(L, Real::of(t_max, prec)) - off);
        }
    }

    std::vector<ZeroOnLine> out;
    for (const auto& [key, mult] : zeros) {
        Real t = key.p == 0 ? Real::of(0L, prec)
                            : pi * Real::of(key.coeff, prec) /
                                  log_integer(Integer(key.p), prec);
        if (t < t_min || t > t_max) continue;
        out.push_back(ZeroOnLine{key.p, key.coeff, mult, t});
    }
    std::sort(out.begin(), out.end(),
              [](const ZeroOnLine& a, const ZeroOnLine& b) { return a.t < b.t; });
    return out;
}

}  // namespace qrec
