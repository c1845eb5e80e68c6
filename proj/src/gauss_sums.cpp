#include "qrec/gauss_sums.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qrec {

void validate_gauss_spec(const GaussSumSpec& s) {
    if (s.c == 0) throw std::invalid_argument("gauss sum: c must be nonzero");
    if (((s.a * s.c + s.b) & 1L) != 0)
        throw std::invalid_argument(
            "gauss sum: ac + b must be even for the phase to descend to Z/cZ");
}

namespace {

Rational phase_exponent(long a, long b, long c, long x) {
    // (a x^2 + b x) / 2c, in big-integer arithmetic to dodge overflow.
    Integer num = Integer(a) * x * x + Integer(b) * x;
    return make_rational(num, Integer(2) * c);
}

}  // namespace

PrecComplex gauss_S(const GaussSumSpec& s, mpfr_prec_t prec) {
    validate_gauss_spec(s);
    const long n = std::labs(s.c);
    PrecComplex acc = PrecComplex::zero(prec);
    for (long x = 0; x < n; ++x) acc += unit_root(phase_exponent(s.a, s.b, s.c, x), prec);
    const Real norm = sqrt(Real::of(n, prec));
    return acc / PrecComplex{norm, Real::of(0L, prec)};
}

ExactNormalized gauss_S_exact(const GaussSumSpec& s) {
    validate_gauss_spec(s);
    const long n = std::labs(s.c);
    CycloSum acc(2 * n);
    for (long x = 0; x < n; ++x) acc.add_unit_root(phase_exponent(s.a, s.b, s.c, x));
    return ExactNormalized{acc.value(), sqrt_as_cyclotomic(n)};
}

CyclotomicInt quad_gauss_brute(long a, long n) {
    if (n < 1) throw std::invalid_argument("quad_gauss: n must be positive");
    CycloSum acc(n);
    for (long x = 0; x < n; ++x)
        acc.add_unit_root(make_rational(Integer(a) * x * x, Integer(n)));
    return acc.value();
}

CyclotomicInt quad_gauss_closed(long a, long n) {
    if (n < 1) throw std::invalid_argument("quad_gauss: n must be positive");
    if (gcd(Integer(a), Integer(n)) != 1)
        throw std::invalid_argument("quad_gauss_closed: needs gcd(a,n) = 1");
    if (n == 1) return CyclotomicInt::one();
    const long ar = ((a % n) + n) % n;  // least positive residue; odd when 4|n
    switch (n % 4) {
        case 1:
            return Integer(jacobi_symbol(Integer(ar), Integer(n))) *
                   sqrt_as_cyclotomic(n);
        case 2:
            return CyclotomicInt::zero(1);
        case 3:
            return Integer(jacobi_symbol(Integer(ar), Integer(n))) *
                   (CyclotomicInt::zeta_power(4, 1) * sqrt_as_cyclotomic(n));
        default: {
            CyclotomicInt unit =
                CyclotomicInt::one() + CyclotomicInt::zeta_power(4, ar);
            return Integer(jacobi_symbol(Integer(n), Integer(ar))) *
                   (unit * sqrt_as_cyclotomic(n));
        }
    }
}

PrecComplex quad_gauss_float(long a, long n, mpfr_prec_t prec) {
    if (n < 1) throw std::invalid_argument("quad_gauss: n must be positive");
    PrecComplex acc = PrecComplex::zero(prec);
    for (long x = 0; x < n; ++x)
        acc += unit_root(make_rational(Integer(a) * x * x, Integer(n)), prec);
    return acc;
}

namespace {

Rational reciprocity_phase(long a, long b, long c) {
    // sgn(ac)/8 - b^2/(8ac)
    const int sgn = (a > 0) == (c > 0) ? 1 : -1;
    return make_rational(sgn, 8) - make_rational(Integer(b) * b, Integer(8) * a * c);
}

}  // namespace

Real reciprocity_residual(long a, long b, long c, mpfr_prec_t prec) {
    if (a == 0 || c == 0)
        throw std::invalid_argument("reciprocity: needs ac != 0");
    const PrecComplex lhs = gauss_S({a, b, c}, prec);
    const PrecComplex rhs =
        unit_root(reciprocity_phase(a, b, c), prec) * gauss_S({-c, b, a}, prec);
    return abs(lhs - rhs);
}

bool reciprocity_exact_holds(long a, long b, long c) {
    if (a == 0 || c == 0)
        throw std::invalid_argument("reciprocity: needs ac != 0");
    const ExactNormalized lhs = gauss_S_exact({a, b, c});
    const ExactNormalized rhs = gauss_S_exact({-c, b, a});
    // Clear both normalizers: sqrt|a| num_L == phase sqrt|c| num_R.
    const CyclotomicInt left = rhs.normalizer * lhs.numerator;
    const CyclotomicInt right =
        root_of_unity(reciprocity_phase(a, b, c)) * (lhs.normalizer * rhs.numerator);
    return left == right;
}

PrecComplex finite_theta_T(const Rational& s, const Rational& t, mpfr_prec_t prec) {
    if (t == 0) return PrecComplex::zero(prec);
    const Integer delta = t.get_den();
    if (!delta.fits_slong_p())
        throw std::invalid_argument("finite_theta_T: denominator too large");
    const long two_delta = 2 * delta.get_si();
    PrecComplex acc = PrecComplex::zero(prec);
    for (long x = 0; x < two_delta; ++x) {
        Rational expo = t * x * x / 2 + s * x;
        acc += unit_root(expo, prec);
    }
    return Real::of(make_rational(1, 2), prec) * acc;
}

Real theta_T_transform_residual(const Rational& s, const Rational& t,
                                mpfr_prec_t prec) {
    if (t == 0)
        throw std::invalid_argument("theta_T_transform: t must be nonzero");
    // The summand of T(s,t) is periodic mod 2 delta_t only when
    // 2 s delta_t is an integer; outside that domain the law fails
    // (at (s,t) = (1/3, 1/2) both sides have equal modulus but
    // unequal phase).  The condition is preserved by (s,t) ->
    // (s/t, -1/t), so the two sides stand or fall together.
    Rational period_test = s * 2 * Rational(t.get_den());
    if (period_test.get_den() != 1)
        throw std::invalid_argument(
            "theta_T_transform: needs 2 s delta_t integral");
    const PrecComplex lhs = finite_theta_T(s / t, Rational(-1) / t, prec);
    // sqrt(-it), principal branch.
    const PrecComplex root =
        sqrt(PrecComplex{Real::of(0L, prec), Real::of(Rational(-t), prec)});
    const PrecComplex phase = unit_root(s * s / (t * 2), prec);  // e^{pi i s^2/t}
    const PrecComplex rhs = root * phase * finite_theta_T(s, t, prec);
    return abs(lhs - rhs);
}

CyclotomicInt u_raw(long p, long q) {
    if (q < 1) throw std::invalid_argument("u_raw: q must be positive");
    CycloSum acc(2 * q);
    for (long x = 0; x < 2 * q; ++x)
        acc.add_unit_root(make_rational(Integer(p) * x * x, Integer(2) * q));
    return acc.value();
}

PrecComplex u_value(const Rational& r, UMode mode, mpfr_prec_t prec) {
    const Integer pz = r.get_num(), qz = r.get_den();
    if (!pz.fits_slong_p() || !qz.fits_slong_p())
        throw std::invalid_argument("u_value: argument too large");
    const long p = pz.get_si(), q = qz.get_si();

    if (mode == UMode::brute) {
        PrecComplex acc = PrecComplex::zero(prec);
        for (long x = 0; x < 2 * q; ++x)
            acc += unit_root(make_rational(Integer(p) * x * x, Integer(2) * q), prec);
        return Real::of(make_rational(1, 2 * q), prec) * acc;
    }

    if (p == 0) throw std::invalid_argument("u_value closed form: needs r != 0");
    if ((p & 1L) && (q & 1L)) return PrecComplex::zero(prec);  // u = 0 for odd p/q

    long symbol;
    Rational w_power;
    if (p & 1L) {
        symbol = jacobi_symbol(Integer(q), Integer(std::labs(p)));
        w_power = make_rational(p, 8);  // w^p
    } else {
        symbol = jacobi_symbol(Integer(p), Integer(q));
        w_power = make_rational(1 - q, 8);  // w^{1-q}
    }
    const PrecComplex unit = unit_root(w_power, prec);
    const Real scale = Real::of(symbol, prec) / sqrt(Real::of(q, prec));
    return scale * unit;
}

CyclotomicInt u_epsilon(long m, long p, long r) {
    if (m < 1 || r < 1 || !is_prime(p))
        throw std::invalid_argument("u_epsilon: needs prime p, m >= 1, r >= 1");
    if (m % p == 0) throw std::invalid_argument("u_epsilon: needs p not dividing m");
    if ((m * p) % 2 != 0) throw std::invalid_argument("u_epsilon: needs mp even");

    if (p == 2) {
        CyclotomicInt w_m = CyclotomicInt::zeta_power(8, m);
        if (r % 2 == 0) return w_m;
        return Integer(jacobi_symbol(Integer(2), Integer(m))) * w_m;
    }
    if (r % 2 == 0) return CyclotomicInt::one();
    // p odd, r odd: w^{1-p^r} (m|p); p^r = p (mod 8) since p^2 = 1 (mod 8).
    return Integer(jacobi_symbol(Integer(m), Integer(p))) *
           CyclotomicInt::zeta_power(8, 1 - (p % 8));
}

bool u_epsilon_exact_holds(long m, long p, long r) {
    Integer qz = 1;
    for (long i = 0; i < r; ++i) qz *= p;
    if (!qz.fits_slong_p() || qz > 1000000)
        throw std::invalid_argument("u_epsilon_exact: p^r too large");
    const long q = qz.get_si();
    const CyclotomicInt rhs =
        Integer(2) * (u_epsilon(m, p, r) * sqrt_as_cyclotomic(q));
    return u_raw(m, q) == rhs;
}

}  // namespace qrec
