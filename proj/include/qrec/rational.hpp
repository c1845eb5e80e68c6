// Exact rational scalars used throughout the library.
//
// Rational is GMP's mpq_class: always canonical (gcd(num, den) = 1,
// den > 0, zero stored as 0/1), which is exactly the invariant the
// higher layers rely on when they reduce exponents mod 1 or read off
// denominators of quadratic-form values.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qrec {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "p/q" or "-p/q"; rejects q = 0 and malformed text.
inline Rational rational_from_string(const std::string& s) {
    mpq_class r;
    if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("rational_from_string: cannot parse '" + s + "'");
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw std::invalid_argument("rational_from_string: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// The mpq_class(num, den) constructor does not canonicalize; always build
// rationals from raw pairs through here.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den) {
    return make_rational(Integer(num), Integer(den));
}

inline Integer floor_to_integer(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// x - floor(x), in [0, 1).
inline Rational frac_mod1(const Rational& x) {
    Rational r = x - Rational(floor_to_integer(x));
    r.canonicalize();
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline long lcm_long(long a, long b) {
    Integer l = lcm(Integer(a), Integer(b));
    if (!l.fits_slong_p()) throw std::overflow_error("lcm_long: overflow");
    return l.get_si();
}

inline int sgn(const Integer& a) { return mpz_sgn(a.get_mpz_t()); }

// Largest e with 2^e | a (a != 0), and the odd cofactor.
inline long two_adic_valuation(const Integer& a, Integer* odd_part = nullptr) {
    if (sgn(a) == 0) throw std::invalid_argument("two_adic_valuation: zero input");
    unsigned long e = mpz_scan1(a.get_mpz_t(), 0);
    if (odd_part) {
        mpz_tdiv_q_2exp(odd_part->get_mpz_t(), a.get_mpz_t(), e);
    }
    return static_cast<long>(e);
}

}  // namespace qrec
