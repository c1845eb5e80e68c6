// Finite Fourier analysis on Z/nZ: the transform F f(x) = sum_y f(y)
// e_n(-xy), its inversion, Poisson summation over a subgroup pair, and
// the transform of quadratic-phase functions.
//
// Functions carry either exact cyclotomic values or arbitrary-precision
// complex values; the exact backend turns the Poisson identity into an
// equality of cyclotomic integers with no square roots at all.
#pragma once

#include <vector>

#include "qrec/cyclotomic.hpp"
#include "qrec/prec_complex.hpp"

namespace qrec {

template <class T>
struct CyclicFn {
    long modulus = 1;
    std::vector<T> values;

    CyclicFn() = default;
    CyclicFn(long n, std::vector<T> v) : modulus(n), values(std::move(v)) {
        if (n < 1 || static_cast<long>(values.size()) != n)
            throw std::invalid_argument("CyclicFn: value count must equal modulus");
    }
};

using ExactCyclicFn = CyclicFn<CyclotomicInt>;
using FloatCyclicFn = CyclicFn<PrecComplex>;

// Naive O(n^2) transform; exactness beats speed at this scale.
ExactCyclicFn dft(const ExactCyclicFn& f);
FloatCyclicFn dft(const FloatCyclicFn& f);

// Poisson summation residual over the subgroup pair H_a, H_b with
// a*b = n, H_a generated by n/a.  The identity compares the H_a average
// of f against the H_b average of the unitary-normalized transform:
//   (1/sqrt(a)) sum_{H_a} f  =  (1/sqrt(n*b)) sum_{H_b} F f.
Real poisson_residual(const FloatCyclicFn& f, long a, long b);

// Exact form of the same identity, cleared of normalizers:
//   b * sum_{H_a} f == sum_{H_b} F f   in Z[zeta].
bool poisson_exact_check(const ExactCyclicFn& f, long a, long b);

// f_{a,b,c}(x) = e((a x^2 + b x) / 2c) for x = 0..|c|-1.  Requires
// ac + b even (otherwise the function is not well-defined on Z/cZ).
ExactCyclicFn quadratic_phase_exact(long a, long b, long c);
FloatCyclicFn quadratic_phase_float(long a, long b, long c,
                                    mpfr_prec_t prec = kDefaultPrec);

struct WhfResult {
    PrecComplex c_value;  // C(m,n): S_{1,0,n} for even m, S_{1,1,n} e(1/8n) for odd m
    Real residual;
};

// Checks the closed form of the transform of f_{1,m,n}:
//   F f_{1,m,n}(x) = sqrt(n) C(m,n) e(-m^2/8n) f_{-1,m,n}(x).
// Requires m = n (mod 2); that parity is exactly when f_{1,m,n} lives
// on Z/nZ and when the shift-invariance used by the closed form holds.
WhfResult whf_check(long m, long n, mpfr_prec_t prec = kDefaultPrec);

}  // namespace qrec
