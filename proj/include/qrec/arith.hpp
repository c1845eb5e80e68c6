// Small elementary number-theory helpers shared across modules:
// factorization by trial division (desk-scale inputs), Euler phi,
// divisor lists, and quadratic residue symbols.
#pragma once

#include <utility>
#include <vector>

#include "qrec/rational.hpp"

namespace qrec {

// Prime factorization of n > 0 as (p, exponent) pairs, p ascending.
inline std::vector<std::pair<long, long>> factorize(long n) {
    if (n <= 0) throw std::invalid_argument("factorize: argument must be positive");
    std::vector<std::pair<long, long>> f;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            long e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline long radical(long n) {
    long r = 1;
    for (auto& [p, e] : factorize(n)) r *= p;
    return r;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> d{1};
    for (auto& [p, e] : factorize(n)) {
        size_t sz = d.size();
        long q = 1;
        for (long i = 0; i < e; ++i) {
            q *= p;
            for (size_t j = 0; j < sz; ++j) d.push_back(d[j] * q);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

// Jacobi symbol (a|n) for odd positive n.  (1|1) = 1 by convention.
inline int jacobi_symbol(const Integer& a, const Integer& n) {
    if (sgn(n) <= 0 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("jacobi_symbol: modulus must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

inline int jacobi_symbol(long a, long n) { return jacobi_symbol(Integer(a), Integer(n)); }

// Kronecker symbol, the extension of (a|n) to arbitrary n (used by the
// closed-form quadratic Gauss sum evaluation at moduli divisible by 4).
inline int kronecker_symbol(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker_symbol(long a, long n) {
    return kronecker_symbol(Integer(a), Integer(n));
}

}  // namespace qrec
