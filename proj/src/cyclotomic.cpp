#include "qrec/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace qrec {

namespace {

// Dense polynomial over Z with the data the reduction loop needs:
// degree (monic) and the nonzero coefficients below the leading term.
struct CycloPoly {
    long degree = 0;
    std::vector<Integer> coeffs;                     // length degree + 1, monic
    std::vector<std::pair<long, Integer>> lower_nz;  // nonzeros with index < degree
};

// Exact division of a by monic b; the remainder must vanish.
std::vector<Integer> exact_div_monic(std::vector<Integer> a, const std::vector<Integer>& b) {
    long db = static_cast<long>(b.size()) - 1;
    long da = static_cast<long>(a.size()) - 1;
    if (da < db) throw std::logic_error("exact_div_monic: degree underflow");
    std::vector<Integer> q(da - db + 1, Integer(0));
    for (long i = da; i >= db; --i) {
        Integer c = a[i];
        if (sgn(c) == 0) continue;
        q[i - db] = c;
        for (long j = 0; j <= db; ++j)
            mpz_submul(a[i - db + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    }
    for (auto& r : a)
        if (sgn(r) != 0) throw std::logic_error("exact_div_monic: nonzero remainder");
    return q;
}

// Phi_r for squarefree r: (x^r - 1) / prod_{d | r, d < r} Phi_d.
std::vector<Integer> cyclotomic_squarefree(long r,
                                           std::map<long, std::vector<Integer>>& memo) {
    auto it = memo.find(r);
    if (it != memo.end()) return it->second;
    std::vector<Integer> result;
    if (r == 1) {
        result = {Integer(-1), Integer(1)};  // x - 1
    } else {
        std::vector<Integer> num(r + 1, Integer(0));
        num[0] = -1;
        num[r] = 1;
        for (long d : divisors(r))
            if (d < r) num = exact_div_monic(std::move(num), cyclotomic_squarefree(d, memo));
        result = std::move(num);
    }
    memo[r] = result;
    return result;
}

const CycloPoly& cyclotomic_poly(long m) {
    static std::mutex mu;
    static std::map<long, CycloPoly> cache;
    static std::map<long, std::vector<Integer>> sf_memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    long r = radical(m);
    std::vector<Integer> base = cyclotomic_squarefree(r, sf_memo);
    CycloPoly p;
    long stride = m / r;
    p.degree = (static_cast<long>(base.size()) - 1) * stride;  // = phi(m)
    p.coeffs.assign(p.degree + 1, Integer(0));
    for (size_t i = 0; i < base.size(); ++i) p.coeffs[i * stride] = base[i];
    for (long i = 0; i < p.degree; ++i)
        if (sgn(p.coeffs[i]) != 0) p.lower_nz.emplace_back(i, p.coeffs[i]);
    return cache.emplace(m, std::move(p)).first->second;
}

// In-place reduction of v (length m, exponents mod x^m - 1 already
// folded) to the canonical representative modulo Phi_m.
void reduce_mod_phi(long m, std::vector<Integer>& v) {
    const CycloPoly& phi = cyclotomic_poly(m);
    long D = phi.degree;
    for (long i = m - 1; i >= D; --i) {
        if (sgn(v[i]) == 0) continue;
        Integer c;
        mpz_swap(c.get_mpz_t(), v[i].get_mpz_t());  // v[i] becomes 0
        long base = i - D;
        for (auto& [j, coef] : phi.lower_nz)
            mpz_submul(v[base + j].get_mpz_t(), c.get_mpz_t(), coef.get_mpz_t());
    }
}

}  // namespace

CyclotomicInt CyclotomicInt::zero(long m) {
    if (m < 1) throw std::invalid_argument("CyclotomicInt: order must be positive");
    CyclotomicInt z;
    z.order_ = m;
    z.coeffs_.assign(m, Integer(0));
    return z;
}

CyclotomicInt CyclotomicInt::one() { return integer(Integer(1)); }

CyclotomicInt CyclotomicInt::integer(const Integer& k) {
    CyclotomicInt z;
    z.order_ = 1;
    z.coeffs_.assign(1, k);
    return z;
}

CyclotomicInt CyclotomicInt::zeta_power(long m, long k) {
    std::vector<Integer> raw(m, Integer(0));
    long idx = ((k % m) + m) % m;
    raw[idx] = 1;
    return from_coeffs(m, std::move(raw));
}

CyclotomicInt CyclotomicInt::from_coeffs(long m, std::vector<Integer> raw) {
    if (m < 1) throw std::invalid_argument("CyclotomicInt: order must be positive");
    if (static_cast<long>(raw.size()) != m) {
        std::vector<Integer> folded(m, Integer(0));
        for (size_t i = 0; i < raw.size(); ++i) {
            if (sgn(raw[i]) == 0) continue;
            folded[i % m] += raw[i];
        }
        raw = std::move(folded);
    }
    reduce_mod_phi(m, raw);
    CyclotomicInt z;
    z.order_ = m;
    z.coeffs_ = std::move(raw);
    return z;
}

bool CyclotomicInt::is_zero() const {
    for (auto& c : coeffs_)
        if (sgn(c) != 0) return false;
    return true;
}

bool CyclotomicInt::is_integer(Integer* out) const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0) return false;
    if (out) *out = coeffs_[0];
    return true;
}

CyclotomicInt CyclotomicInt::promoted(long M) const {
    if (M == order_) return *this;
    if (M < order_ || M % order_ != 0)
        throw std::invalid_argument("CyclotomicInt::promoted: target order not a multiple");
    long stride = M / order_;
    std::vector<Integer> raw(M, Integer(0));
    for (long k = 0; k < order_; ++k)
        if (sgn(coeffs_[k]) != 0) raw[k * stride] = coeffs_[k];
    return from_coeffs(M, std::move(raw));
}

CyclotomicInt CyclotomicInt::conj() const {
    std::vector<Integer> raw(order_, Integer(0));
    for (long k = 0; k < order_; ++k)
        if (sgn(coeffs_[k]) != 0) raw[(order_ - k) % order_] += coeffs_[k];
    return from_coeffs(order_, std::move(raw));
}

CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
    long M = lcm_long(a.order_, b.order_);
    long sa = M / a.order_, sb = M / b.order_;
    std::vector<Integer> raw(M, Integer(0));
    for (long k = 0; k < a.order_; ++k)
        if (sgn(a.coeffs_[k]) != 0) raw[k * sa] += a.coeffs_[k];
    for (long k = 0; k < b.order_; ++k)
        if (sgn(b.coeffs_[k]) != 0) raw[k * sb] += b.coeffs_[k];
    return CyclotomicInt::from_coeffs(M, std::move(raw));
}

CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) { return a + (-b); }

CyclotomicInt operator-(const CyclotomicInt& a) {
    CyclotomicInt z = a;
    for (auto& c : z.coeffs_) mpz_neg(c.get_mpz_t(), c.get_mpz_t());
    return z;
}

CyclotomicInt operator*(const Integer& k, const CyclotomicInt& a) {
    CyclotomicInt z = a;
    for (auto& c : z.coeffs_) c *= k;
    return z;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    long M = lcm_long(a.order_, b.order_);
    long sa = M / a.order_, sb = M / b.order_;
    std::vector<std::pair<long, const Integer*>> na, nb;
    for (long k = 0; k < a.order_; ++k)
        if (sgn(a.coeffs_[k]) != 0) na.emplace_back(k * sa, &a.coeffs_[k]);
    for (long k = 0; k < b.order_; ++k)
        if (sgn(b.coeffs_[k]) != 0) nb.emplace_back(k * sb, &b.coeffs_[k]);
    std::vector<Integer> raw(M, Integer(0));
    for (auto& [i, ci] : na)
        for (auto& [j, cj] : nb) {
            long idx = i + j;
            if (idx >= M) idx -= M;
            mpz_addmul(raw[idx].get_mpz_t(), ci->get_mpz_t(), cj->get_mpz_t());
        }
    return CyclotomicInt::from_coeffs(M, std::move(raw));
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    long M = lcm_long(a.order_, b.order_);
    return a.promoted(M).coeffs_ == b.promoted(M).coeffs_;
}

void CycloSum::add_unit_root(const Rational& x, const Integer& weight) {
    if (sgn(weight) == 0) return;
    Rational f = frac_mod1(x);
    Integer den = f.get_den();
    if (!den.fits_slong_p() || order_ % den.get_si() != 0)
        throw std::invalid_argument("CycloSum: exponent denominator does not divide order");
    long stride = order_ / den.get_si();
    long idx = (f.get_num().get_si() % den.get_si()) * stride % order_;
    raw_[idx] += weight;
}

CyclotomicInt root_of_unity(const Rational& x) {
    Rational f = frac_mod1(x);
    Integer den = f.get_den();
    if (!den.fits_slong_p())
        throw std::invalid_argument("root_of_unity: denominator too large");
    long m = den.get_si();
    return CyclotomicInt::zeta_power(m, f.get_num().get_si());
}

CyclotomicInt epsilon_a(const Integer& a) {
    if (mpz_even_p(a.get_mpz_t()))
        throw std::invalid_argument("epsilon_a: argument must be odd");
    Integer r = a % 4;
    if (sgn(r) < 0) r += 4;
    return r == 1 ? CyclotomicInt::one() : CyclotomicInt::zeta_power(4, 1);
}

CyclotomicInt sqrt_as_cyclotomic(long m) {
    static std::mutex mu;
    static std::map<long, CyclotomicInt> cache;
    if (m < 1) throw std::invalid_argument("sqrt_as_cyclotomic: argument must be positive");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    Integer odd;
    long e = two_adic_valuation(Integer(m), &odd);
    long u = odd.get_si();

    // 2^(e/2) and a leftover sqrt(2) = zeta_8 + zeta_8^(-1) if e is odd.
    Integer pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(e / 2));
    CyclotomicInt result = CyclotomicInt::integer(pow2);
    if (e % 2 == 1) {
        CyclotomicInt sqrt2 =
            CyclotomicInt::zeta_power(8, 1) + CyclotomicInt::zeta_power(8, 7);
        result = result * sqrt2;
    }
    if (u > 1) {
        // sqrt(u) = epsilon_u^(-1) sum_{x mod u} zeta_u^(x^2).
        CycloSum g(u);
        for (long x = 0; x < u; ++x)
            g.add_unit_root(Rational(static_cast<long>((static_cast<long long>(x) * x) % u), u));
        CyclotomicInt inv_eps = (u % 4 == 1) ? CyclotomicInt::one()
                                             : -CyclotomicInt::zeta_power(4, 1);
        result = result * inv_eps * g.value();
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(m, std::move(result)).first->second;
}

PrecComplex cyclo_embed(const CyclotomicInt& v, mpfr_prec_t prec) {
    PrecComplex acc = PrecComplex::zero(prec);
    long m = v.order();
    for (long k = 0; k < m; ++k) {
        const Integer& c = v.coeffs()[k];
        if (sgn(c) == 0) continue;
        PrecComplex term = unit_root(Rational(Integer(k), Integer(m)), prec);
        acc += PrecComplex(Real::of(c, prec) * term.re, Real::of(c, prec) * term.im);
    }
    return acc;
}

}  // namespace qrec
