#include "qrec/selftest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "qrec/finite_zeta.hpp"
#include "qrec/gauss_sums.hpp"
#include "qrec/lattice.hpp"
#include "qrec/multidim_gauss.hpp"
#include "qrec/rational.hpp"
#include "qrec/theta.hpp"

namespace qrec {

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
        .count();
}

// Per-worker accumulator; folding workers in index order keeps the merged
// result independent of scheduling.
struct Local {
    Real worst;
    long bad = 0;
    std::string note;
};

void fold(Local& into, const Local& from) {
    into.worst = max(into.worst, from.worst);
    into.bad += from.bad;
    if (into.note.empty()) into.note = from.note;
}

template <typename Fn>
Local run_indexed(long total, int threads, const Fn& fn) {
    if (threads < 2 || total < 2) {
        Local l;
        for (long i = 0; i < total; ++i) fn(i, l);
        return l;
    }
    const long t = std::min<long>(threads, total);
    std::vector<Local> locals(static_cast<size_t>(t));
    std::vector<std::thread> pool;
    for (long k = 0; k < t; ++k)
        pool.emplace_back([&, k] {
            for (long i = k; i < total; i += t) fn(i, locals[static_cast<size_t>(k)]);
        });
    for (auto& th : pool) th.join();
    Local out;
    for (const auto& l : locals) fold(out, l);
    return out;
}

void record(Local& l, const Real& residual, double tol, const std::string& what) {
    l.worst = max(l.worst, residual);
    if (!(residual < tol)) {
        ++l.bad;
        if (l.note.empty()) l.note = what + ": residual " + residual.to_string();
    }
}

void record_exact(Local& l, bool ok, const std::string& what) {
    if (!ok) {
        ++l.bad;
        if (l.note.empty()) l.note = what;
    }
}

CheckResult finish(std::string name, std::string statement, const Local& l,
                   long cases, Clock::time_point start) {
    CheckResult r;
    r.name = std::move(name);
    r.statement = std::move(statement);
    r.pass = l.bad == 0;
    r.max_residual = l.worst;
    r.cases = cases;
    r.elapsed_ms = ms_since(start);
    r.note = l.note;
    return r;
}

std::string case_tag(const std::string& head, std::initializer_list<long> xs) {
    std::string s = head + "(";
    bool first = true;
    for (long x : xs) {
        if (!first) s += ",";
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

// ---- scalar reciprocity ----------------------------------------------------

CheckResult check_recip_1d(int threads) {
    const auto start = Clock::now();
    std::vector<std::array<long, 3>> float_cases, exact_cases;
    for (long a = -30; a <= 30; ++a)
        for (long c = -30; c <= 30; ++c) {
            if (a == 0 || c == 0) continue;
            for (long b = -30; b <= 30; ++b) {
                if (((a * c + b) % 2 + 2) % 2 != 0) continue;
                float_cases.push_back({a, b, c});
                if (std::abs(a) <= 10 && std::abs(c) <= 10)
                    exact_cases.push_back({a, b, c});
            }
        }

    Local fl = run_indexed(
        static_cast<long>(float_cases.size()), threads, [&](long i, Local& l) {
            const auto& [a, b, c] = float_cases[static_cast<size_t>(i)];
            record(l, reciprocity_residual(a, b, c), 1e-25, case_tag("S", {a, b, c}));
        });
    Local ex = run_indexed(
        static_cast<long>(exact_cases.size()), threads, [&](long i, Local& l) {
            const auto& [a, b, c] = exact_cases[static_cast<size_t>(i)];
            record_exact(l, reciprocity_exact_holds(a, b, c),
                         case_tag("exact S", {a, b, c}) + " fails in Z[zeta]");
        });
    fold(fl, ex);
    return finish("recip-1d",
                  "S_{a,b,c} = e(sgn(ac)/8) e(-b^2/8ac) S_{-c,b,a}: float sweep "
                  "|a|,|b|,|c| <= 30, exact sweep |a|,|c| <= 10",
                  fl, static_cast<long>(float_cases.size() + exact_cases.size()),
                  start);
}

// ---- sign formula ----------------------------------------------------------

CheckResult check_sign_formula(int threads) {
    const auto start = Clock::now();
    std::vector<std::pair<long, long>> cases;
    for (long n = 1; n <= 200; ++n)
        for (long a = 1; a <= n; ++a)
            if (std::gcd(a, n) == 1) cases.emplace_back(a, n);

    Local l = run_indexed(
        static_cast<long>(cases.size()), threads, [&](long i, Local& loc) {
            const auto& [a, n] = cases[static_cast<size_t>(i)];
            record_exact(loc, quad_gauss_closed(a, n) == quad_gauss_brute(a, n),
                         case_tag("g", {a, n}) + ": closed form != brute force");
        });
    return finish("sign-formula",
                  "closed form of g(a,n) equals brute force in Z[zeta] for all "
                  "coprime pairs, n <= 200",
                  l, static_cast<long>(cases.size()), start);
}

// ---- functional equation ---------------------------------------------------

std::vector<std::pair<long, PrecComplex>> zeta_sweep_samples() {
    std::mt19937 rng(20260825);
    std::uniform_real_distribution<double> re(-1.0, 2.0), im(-20.0, 20.0);
    std::vector<std::pair<long, PrecComplex>> samples;
    for (long n = 2; n <= 500; n += 2)
        for (int k = 0; k < 20; ++k)
            samples.emplace_back(n, PrecComplex::of(re(rng), im(rng)));
    return samples;
}

PrecComplex two_to_the(const PrecComplex& e) {
    return exp(log(Real::of(2L)) * e);
}

CheckResult check_zeta_fe(int threads) {
    const auto start = Clock::now();
    const auto samples = zeta_sweep_samples();
    Local l = run_indexed(
        static_cast<long>(samples.size()), threads, [&](long i, Local& loc) {
            const auto& [n, s] = samples[static_cast<size_t>(i)];
            record(loc, functional_equation_residual(n, s), 1e-25,
                   case_tag("L", {n}));
            if (n == 2) {
                // Closed form of the n = 2 polynomial: 1 + w 2^{s - 1/2}.
                PrecComplex want =
                    PrecComplex::one() +
                    exp_i_pi(make_rational(1, 4)) *
                        two_to_the(s - PrecComplex::of(make_rational(1, 2)));
                record(loc, abs(zeta_direct(2, s) - want), 1e-25, "Z_2 closed form");
            }
        });
    return finish("zeta-fe",
                  "L_n(1-s) = w conj(L_n(conj s)) for even n <= 500, 20 random s "
                  "each; n = 2 against 1 + w 2^{s-1/2}",
                  l, static_cast<long>(samples.size()), start);
}

// ---- Euler product ---------------------------------------------------------

CheckResult check_euler_product(int threads) {
    const auto start = Clock::now();
    const auto samples = zeta_sweep_samples();

    // Every prime power p^alpha <= 512, embedded in the even modulus p^alpha
    // (p = 2) or 2 p^alpha (p odd).
    std::vector<std::pair<long, long>> prime_powers;  // (p, n)
    for (long p = 2; p <= 512; ++p) {
        bool prime = p > 1;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        for (long pp = p; pp <= 512; pp *= p) {
            prime_powers.emplace_back(p, p == 2 ? pp : 2 * pp);
            if (pp > 512 / p) break;
        }
    }
    std::mt19937 rng(20260826);
    std::uniform_real_distribution<double> re(-1.0, 2.0), im(-10.0, 10.0);
    std::vector<std::tuple<long, long, PrecComplex>> factor_cases;
    for (const auto& [p, n] : prime_powers)
        for (int k = 0; k < 5; ++k)
            factor_cases.emplace_back(p, n, PrecComplex::of(re(rng), im(rng)));

    Local prod = run_indexed(
        static_cast<long>(samples.size()), threads, [&](long i, Local& loc) {
            const auto& [n, s] = samples[static_cast<size_t>(i)];
            record(loc, euler_product_residual(n, s), 1e-25, case_tag("Z", {n}));
        });
    Local fac = run_indexed(
        static_cast<long>(factor_cases.size()), threads, [&](long i, Local& loc) {
            const auto& [p, n, s] = factor_cases[static_cast<size_t>(i)];
            record(loc,
                   abs(euler_factor(n, p, s, EulerMode::direct) -
                       euler_factor(n, p, s, EulerMode::closed)),
                   1e-25, case_tag("Z_{n,p}", {n, p}));
            if (n == 2) {
                PrecComplex want =
                    PrecComplex::one() +
                    exp_i_pi(make_rational(1, 4)) *
                        two_to_the(s - PrecComplex::of(make_rational(1, 2)));
                record(loc, abs(euler_factor(2, 2, s, EulerMode::closed) - want),
                       1e-25, "Z_{2,2} closed form");
            }
        });
    fold(prod, fac);
    return finish("euler-product",
                  "Z_n = prod_{p|n} Z_{n,p} on the functional-equation sweep; "
                  "closed local factors match direct sums for p^alpha <= 512",
                  prod, static_cast<long>(samples.size() + factor_cases.size()),
                  start);
}

// ---- zeros on the critical line --------------------------------------------

CheckResult check_zeta_zeros(int) {
    const auto start = Clock::now();
    Local l;
    long cases = 0;
    const Real half = Real::of(make_rational(1, 2));
    for (long n = 2; n <= 100; n += 2) {
        for (const auto& z : zeros_in_window(n, 0.0, 30.0)) {
            PrecComplex s(half, z.t);
            record(l, abs(zeta_direct(n, s)), 1e-20,
                   case_tag("zero of Z", {n}) + " at t = " + z.t.to_string());
            record_exact(l, z.multiplicity >= 1,
                         case_tag("zero of Z", {n}) + ": multiplicity < 1");
            ++cases;
        }
        // Off the line, the same window stays bounded away from zero.
        for (double re : {0.2, 0.8}) {
            Real lo = Real::of(1L);
            for (long k = 0; k <= 300; ++k) {
                PrecComplex s = PrecComplex::of(re, 0.1 * static_cast<double>(k));
                Real v = abs(zeta_direct(n, s));
                if (v < lo) lo = v;
                ++cases;
            }
            record_exact(l, lo > 1e-6,
                         case_tag("off-line grid", {n}) + " dips to " +
                             lo.to_string());
        }
    }
    return finish("zeta-zeros",
                  "every enumerated zero of Z_n (even n <= 100, t in [0,30]) "
                  "sits on Re(s) = 1/2 with |Z_n| < 1e-20; grid at Re(s) in "
                  "{0.2, 0.8} stays above 1e-6",
                  l, cases, start);
}

// ---- lattice machinery -----------------------------------------------------

IntMatrix random_int_matrix(std::mt19937& rng, long n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m(i, j) = Integer(d(rng));
    return m;
}

std::optional<RatSymMatrix> random_sym(std::mt19937& rng, long n) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    for (int attempt = 0; attempt < 60; ++attempt) {
        const long d = den(rng);
        RatMatrix m(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = i; j < n; ++j) {
                m(i, j) = make_rational(num(rng), d);
                m(j, i) = m(i, j);
            }
        if (det_rational(m) == 0) continue;
        return RatSymMatrix(m);
    }
    return std::nullopt;
}

bool snf_predicates_hold(const IntMatrix& n_mat, std::string* why) {
    SmithNormalForm f = smith_normal_form(n_mat);
    if (!(f.U * f.S * f.V == n_mat)) return *why = "U S V != N", false;
    if (abs(det_integer(f.U)) != 1 || abs(det_integer(f.V)) != 1)
        return *why = "U or V not unimodular", false;
    for (long i = 0; i < f.S.rows; ++i)
        for (long j = 0; j < f.S.cols; ++j) {
            if (i != j && f.S(i, j) != 0) return *why = "S not diagonal", false;
            if (i == j && f.S(i, j) < 0) return *why = "S has negative entry", false;
        }
    for (long i = 0; i + 1 < f.S.rows; ++i) {
        const Integer& a = f.S(i, i);
        const Integer& b = f.S(i + 1, i + 1);
        if (a == 0 ? b != 0 : b % a != 0)
            return *why = "divisibility chain broken", false;
    }
    return true;
}

bool reduced_form_predicates_hold(const RatSymMatrix& t, std::string* why) {
    ReducedForm rf = reduced_form(t);
    if (abs(det_integer(rf.U)) != 1 || abs(det_integer(rf.V)) != 1)
        return *why = "U or V not unimodular", false;
    for (long i = 0; i < rf.P.rows; ++i)
        for (long j = 0; j < rf.P.cols; ++j)
            if (i != j && (rf.P(i, j) != 0 || rf.Q(i, j) != 0))
                return *why = "P or Q not diagonal", false;
    for (long i = 0; i < rf.Q.rows; ++i) {
        if (rf.Q(i, i) <= 0) return *why = "Q diagonal not positive", false;
        if (gcd(rf.P(i, i), rf.Q(i, i)) != 1)
            return *why = "gcd(P_ii, Q_ii) != 1", false;
    }
    if (!(rf.U * rf.P == rf.A) || !(rf.V * rf.Q == rf.B))
        return *why = "A != UP or B != VQ", false;
    if (!(t.mat() * to_rational(rf.B) == to_rational(rf.A)))
        return *why = "t B != A", false;
    return true;
}

bool coset_predicates_hold(const IntMatrix& b, std::string* why) {
    const auto reps = coset_reps(b);
    Integer want = abs(det_integer(b));
    if (Integer(static_cast<long>(reps.size())) != want)
        return *why = "rep count != |det B|", false;
    RatMatrix binv = inverse(to_rational(b));
    std::set<std::string> keys;
    for (const auto& r : reps) {
        RatVector y(static_cast<size_t>(b.rows), Rational(0));
        for (long i = 0; i < b.rows; ++i)
            for (long j = 0; j < b.cols; ++j) y[i] += binv(i, j) * r[j];
        std::string key;
        for (auto& e : y) {
            Rational f = frac_mod1(e);
            key += f.get_num().get_str() + "/" + f.get_den().get_str() + ";";
        }
        keys.insert(key);
    }
    if (Integer(static_cast<long>(keys.size())) != want)
        return *why = "representatives collide mod B", false;
    return true;
}

CheckResult check_lattice(int) {
    const auto start = Clock::now();
    Local l;
    long cases = 0;
    std::mt19937 rng(20260827);
    std::string why;

    for (int i = 0; i < 200; ++i) {
        long n = 1 + i % 4;
        record_exact(l, snf_predicates_hold(random_int_matrix(rng, n, -9, 9), &why),
                     "smith form #" + std::to_string(i) + ": " + why);
        ++cases;
    }
    for (int i = 0; i < 200; ++i) {
        auto t = random_sym(rng, 1 + i % 4);
        if (!t) continue;
        record_exact(l, reduced_form_predicates_hold(*t, &why),
                     "reduced form #" + std::to_string(i) + ": " + why);
        ++cases;
    }
    for (int i = 0; i < 200;) {
        long n = 1 + i % 4;
        IntMatrix b = random_int_matrix(rng, n, -3, 3);
        if (det_integer(b) == 0) continue;
        record_exact(l, coset_predicates_hold(b, &why),
                     "cosets #" + std::to_string(i) + ": " + why);
        ++cases;
        ++i;
    }
    for (int i = 0; i < 200; ++i) {
        auto t = random_sym(rng, 1 + i % 4);
        if (!t) continue;
        long exact = signature(*t);
        RealMatrix re(t->n(), t->n());
        for (long r = 0; r < t->n(); ++r)
            for (long c = 0; c < t->n(); ++c) re(r, c) = Real::of((*t)(r, c));
        long pos = 0, neg = 0;
        bool separated = true;
        for (const auto& ev : sym_eigenvalues(re)) {
            if (abs(ev) < 1e-8)
                separated = false;
            else if (ev > Real(ev.prec()))
                ++pos;
            else
                ++neg;
        }
        if (!separated) continue;  // guard: only well-separated spectra counted
        record_exact(l, exact == pos - neg,
                     "signature #" + std::to_string(i) +
                         ": exact != float eigenvalue count");
        ++cases;
    }
    return finish("lattice",
                  "Smith form, reduced form, coset, and signature invariants on "
                  "200 random instances each, n <= 4",
                  l, cases, start);
}

// ---- n-dimensional reciprocity ----------------------------------------------

std::optional<QuadSumProblem> random_problem(std::mt19937& rng, long n) {
    const Rational half = make_rational(1, 2);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    for (int attempt = 0; attempt < 60; ++attempt) {
        const long d = den(rng);
        RatMatrix m(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = i; j < n; ++j) {
                m(i, j) = make_rational(num(rng), d);
                m(j, i) = m(i, j);
            }
        if (det_rational(m) == 0) continue;
        RatSymMatrix t(m);
        ReducedForm rf = reduced_form(t);
        long combos = 1;
        for (long i = 0; i < n; ++i) combos *= 3;
        for (long c = 0; c < combos; ++c) {
            RatVector s(static_cast<size_t>(n));
            long rest = c;
            for (long i = 0; i < n; ++i) {
                const long v = rest % 3;
                rest /= 3;
                s[static_cast<size_t>(i)] =
                    v == 0 ? Rational(0) : (v == 1 ? half : -half);
            }
            if (evenness_check(rf.A, rf.B, s)) return make_quad_problem(t, s);
        }
    }
    return std::nullopt;
}

CheckResult check_recip_nd(int threads) {
    const auto start = Clock::now();
    std::mt19937 rng(20260828);
    std::vector<QuadSumProblem> problems;
    while (problems.size() < 100) {
        long n = 1 + static_cast<long>(problems.size()) % 3;
        if (auto p = random_problem(rng, n)) problems.push_back(std::move(*p));
    }

    Local l = run_indexed(
        static_cast<long>(problems.size()), threads, [&](long i, Local& loc) {
            const QuadSumProblem& p = problems[static_cast<size_t>(i)];
            record(loc, reciprocity_nd_residual(p), 1e-22,
                   "problem #" + std::to_string(i) + " (n = " +
                       std::to_string(p.t.n()) + ")");
            if (p.t.n() == 1) {
                // The coset sum is sqrt(q) S_{p, 2 sigma q, q} for t = [p/q],
                // s = (sigma).
                long pp = p.t(0, 0).get_num().get_si();
                long q = p.t(0, 0).get_den().get_si();
                long b = Rational(2 * p.s[0] * q).get_num().get_si();
                PrecComplex got =
                    (Real::of(1L) / sqrt(Real::of(q))) * quad_sum_modB(p, SumSide::B);
                record(loc, abs(got - gauss_S({pp, b, q})), 1e-25,
                       case_tag("scalar agreement S", {pp, b, q}));
            }
        });
    return finish("recip-nd",
                  "n-dimensional reciprocity on 100 random problems, n <= 3; "
                  "n = 1 coset sums match the scalar Gauss sums",
                  l, static_cast<long>(problems.size()), start);
}

// ---- theta layer -----------------------------------------------------------

double rand_in(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CplxMatrix random_tau(std::mt19937& rng, long n) {
    std::vector<std::vector<double>> w(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n)));
    for (auto& row : w)
        for (auto& e : row) e = rand_in(rng, -0.7, 0.7);
    const double d = rand_in(rng, 0.6, 1.5);
    CplxMatrix t(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            double im = i == j ? d : 0.0;
            for (long k = 0; k < n; ++k)
                im += w[static_cast<size_t>(k)][static_cast<size_t>(i)] *
                      w[static_cast<size_t>(k)][static_cast<size_t>(j)];
            t(i, j) = PrecComplex::of(rand_in(rng, -1.0, 1.0), im);
            t(j, i) = t(i, j);
        }
    return t;
}

RatVector dual_twist_for(const IntMatrix& n_mat) {
    RatVector c(static_cast<size_t>(n_mat.rows), Rational(0));
    for (long i = 0; i < n_mat.rows; ++i)
        if (n_mat(i, i) % 2 != 0) c[static_cast<size_t>(i)] = make_rational(1, 2);
    return c;
}

// Maximum deviation between the theta-weighted coset sums at tau = i t I and
// the bare coset sums they converge to, plus the identity between the latter.
Real largetau_deviation(const RatSymMatrix& t, const RatVector& c, double tscale) {
    const long n = t.n();
    ReducedForm rf = reduced_form(t);
    IntMatrix n_mat = transpose(rf.B) * rf.A;
    RatMatrix n_rat = to_rational(n_mat);
    RatMatrix n_inv = inverse(n_rat);
    CplxMatrix tau(n, n);
    for (long i = 0; i < n; ++i) tau(i, i) = PrecComplex::of(0.0, tscale);

    auto side_sums = [&](const IntMatrix& mod, int sign, const CplxMatrix& tau_side,
                         const RatVector& shift) {
        RatMatrix minv = inverse(to_rational(mod));
        PrecComplex bare = PrecComplex::zero(), weighted = PrecComplex::zero();
        for (const auto& r : coset_reps(mod)) {
            RatVector y(static_cast<size_t>(n), Rational(0));
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) y[static_cast<size_t>(i)] += minv(i, j) * r[j];
            Rational q(0), dot(0);
            for (long i = 0; i < n; ++i) {
                for (long j = 0; j < n; ++j)
                    q += y[static_cast<size_t>(i)] * n_rat(i, j) * y[static_cast<size_t>(j)];
                dot += y[static_cast<size_t>(i)] * c[static_cast<size_t>(i)];
            }
            PrecComplex w = unit_root(Rational(Rational(sign) * q / 2 + dot));
            bare += w;
            CplxVector z;
            for (long i = 0; i < n; ++i)
                z.push_back(PrecComplex::of(Rational(y[static_cast<size_t>(i)] +
                                                     shift[static_cast<size_t>(i)])));
            weighted += w * riemann_theta(make_siegel_point(z, tau_side), 1e-12).value;
        }
        return std::pair<PrecComplex, PrecComplex>(bare, weighted);
    };

    RatVector no_shift(static_cast<size_t>(n), Rational(0));
    auto [bare_b, theta_b] = side_sums(rf.B, +1, tau, no_shift);

    RatVector a_shift(static_cast<size_t>(n), Rational(0));
    RatVector ninv_c(static_cast<size_t>(n), Rational(0));
    Rational gamma(0);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j)
            ninv_c[static_cast<size_t>(i)] += n_inv(i, j) * c[static_cast<size_t>(j)];
        a_shift[static_cast<size_t>(i)] = -ninv_c[static_cast<size_t>(i)];
    }
    for (long i = 0; i < n; ++i)
        gamma += c[static_cast<size_t>(i)] * ninv_c[static_cast<size_t>(i)];
    CplxMatrix tau_a = tau;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            tau_a(i, j) = tau_a(i, j) - PrecComplex::of(n_inv(i, j));
    auto [bare_a, theta_a] = side_sums(rf.A, -1, tau_a, a_shift);

    // The bare sums satisfy the reciprocity identity on their own.
    Real da = sqrt(abs(Real::of(Rational(det_integer(rf.A)))));
    Real db = sqrt(abs(Real::of(Rational(det_integer(rf.B)))));
    PrecComplex pref = exp_i_pi(make_rational(signature(RatSymMatrix(n_rat)), 4)) *
                       unit_root(-gamma / 2);
    Real identity = abs((Real::of(1L) / db) * bare_b -
                        (Real::of(1L) / da) * (pref * bare_a));

    return max(max(abs(theta_b - bare_b), abs(theta_a - bare_a)), identity);
}

CheckResult check_theta(int threads) {
    const auto start = Clock::now();
    std::mt19937 rng(20260829);

    std::vector<std::pair<PrecComplex, PrecComplex>> jac_pts;
    for (int i = 0; i < 50; ++i)
        jac_pts.emplace_back(
            PrecComplex::of(rand_in(rng, -1, 1), rand_in(rng, -0.5, 0.5)),
            PrecComplex::of(rand_in(rng, -1.5, 1.5), rand_in(rng, 0.5, 2.5)));

    std::vector<SiegelPoint> siegel_pts;
    for (int i = 0; i < 50; ++i) {
        long n = 1 + i % 3;
        CplxMatrix tau = random_tau(rng, n);
        CplxVector z;
        for (long k = 0; k < n; ++k)
            z.push_back(PrecComplex::of(rand_in(rng, -1, 1), rand_in(rng, -0.5, 0.5)));
        siegel_pts.push_back(make_siegel_point(z, tau));
    }

    Local jac = run_indexed(50, threads, [&](long i, Local& l) {
        const auto& [z, tau] = jac_pts[static_cast<size_t>(i)];
        record(l, jacobi_transform_residual(z, tau, 1e-19), 1e-18,
               "jacobi point #" + std::to_string(i));
    });
    Local rie = run_indexed(50, threads, [&](long i, Local& l) {
        record(l, riemann_transform_residual(siegel_pts[static_cast<size_t>(i)], 1e-19),
               1e-18, "riemann point #" + std::to_string(i));
    });
    fold(jac, rie);
    long cases = 100;

    // Ten pinned finite-tau coset identities; the dual twist flips the parity
    // of any odd diagonal entry of the inner form.
    struct Pinned {
        RatSymMatrix t;
        CplxVector z;
        CplxMatrix tau;
    };
    auto one = [](Rational v) {
        RatMatrix m(1, 1);
        m(0, 0) = std::move(v);
        return RatSymMatrix(m);
    };
    auto two = [](Rational d0, Rational off, Rational d1) {
        RatMatrix m(2, 2);
        m(0, 0) = std::move(d0);
        m(1, 1) = std::move(d1);
        m(0, 1) = off;
        m(1, 0) = off;
        return RatSymMatrix(m);
    };
    auto ctau1 = [](double re, double im) {
        CplxMatrix t(1, 1);
        t(0, 0) = PrecComplex::of(re, im);
        return t;
    };
    auto ctau2 = [](double r00, double i00, double r01, double r11, double i11) {
        CplxMatrix t(2, 2);
        t(0, 0) = PrecComplex::of(r00, i00);
        t(1, 1) = PrecComplex::of(r11, i11);
        t(0, 1) = PrecComplex::of(r01, 0.0);
        t(1, 0) = t(0, 1);
        return t;
    };
    const PrecComplex z0 = PrecComplex::of(0.1, 0.05);
    std::vector<Pinned> pinned;
    pinned.push_back({one(make_rational(1, 2)), {PrecComplex::zero()}, ctau1(0, 2)});
    pinned.push_back({one(make_rational(1, 2)), {z0}, ctau1(0.2, 1.5)});
    pinned.push_back({one(Rational(1)), {PrecComplex::zero()}, ctau1(0, 1)});
    pinned.push_back({one(Rational(1)), {z0}, ctau1(0.2, 1.5)});
    pinned.push_back({one(make_rational(3, 2)), {PrecComplex::of(0.0, 0.05)},
                      ctau1(0.4, 1.2)});
    pinned.push_back({one(make_rational(-1, 2)), {PrecComplex::of(0.2, 0.0)},
                      ctau1(0.3, 0.9)});
    pinned.push_back({two(make_rational(1, 2), Rational(0), make_rational(1, 2)),
                      {PrecComplex::zero(), PrecComplex::zero()},
                      ctau2(0, 3, 0, 0, 3)});
    pinned.push_back({two(Rational(0), make_rational(1, 2), Rational(0)),
                      {z0, PrecComplex::of(-0.2, 0.0)},
                      ctau2(0.1, 1.2, 0.05, -0.2, 0.9)});
    pinned.push_back({two(make_rational(1, 2), Rational(0), make_rational(3, 2)),
                      {PrecComplex::zero(), PrecComplex::of(0.1, 0.0)},
                      ctau2(0.2, 1.1, 0.0, 0.3, 1.4)});
    pinned.push_back({two(Rational(1), make_rational(1, 2), Rational(1)),
                      {PrecComplex::of(0.05, 0.02), PrecComplex::zero()},
                      ctau2(0.0, 1.3, 0.1, 0.1, 1.0)});

    Local fin;
    for (size_t i = 0; i < pinned.size(); ++i) {
        const auto& p = pinned[i];
        ReducedForm rf = reduced_form(p.t);
        RatVector c = dual_twist_for(transpose(rf.B) * rf.A);
        record(fin, thmB_finite_tau_residual(p.t, c, p.z, p.tau, 1e-16), 1e-14,
               "finite-tau problem #" + std::to_string(i));
        ++cases;
    }

    // Large-tau degeneration at t = 10^4.
    {
        RatSymMatrix t1 = one(make_rational(1, 2));
        record(fin, largetau_deviation(t1, {Rational(0)}, 1e4), 1e-6,
               "large-tau degeneration, n = 1");
        RatSymMatrix t2 = two(make_rational(1, 2), Rational(0), make_rational(1, 2));
        record(fin, largetau_deviation(t2, {Rational(0), Rational(0)}, 1e4), 1e-6,
               "large-tau degeneration, n = 2");
        ReducedForm rf1 = reduced_form(t1);
        RatVector c1 = dual_twist_for(transpose(rf1.B) * rf1.A);
        record(fin,
               thmB_finite_tau_residual(t1, c1, {PrecComplex::zero()},
                                        ctau1(0, 1e4), 1e-8),
               1e-6, "finite-tau identity at large tau");
        cases += 3;
    }
    fold(jac, fin);
    return finish("theta",
                  "theta transformation laws (50 random points each), ten pinned "
                  "finite-tau coset identities, large-tau degeneration at 10^4",
                  jac, cases, start);
}

// ---- diagonal factorization -------------------------------------------------

CheckResult check_diag_factorization(int threads) {
    const auto start = Clock::now();
    std::mt19937 rng(20260830);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4), coin(0, 1);

    struct DiagProblem {
        QuadSumProblem p;
        std::vector<GaussSumSpec> factors;
    };
    std::vector<DiagProblem> problems;
    while (problems.size() < 50) {
        long n = 1 + static_cast<long>(problems.size()) % 3;
        RatMatrix m(n, n);
        RatVector s(static_cast<size_t>(n), Rational(0));
        std::vector<GaussSumSpec> specs;
        bool ok = true;
        for (long i = 0; i < n; ++i) {
            long p = num(rng), q = den(rng);
            if (p == 0) {
                ok = false;
                break;
            }
            Rational r = make_rational(p, q);
            m(i, i) = r;
            long pr = r.get_num().get_si(), qr = r.get_den().get_si();
            long sigma2;  // 2 s_i
            if ((pr * qr) % 2 != 0)
                sigma2 = coin(rng) == 0 ? 1 : -1;
            else if (qr % 2 == 0 && coin(rng) == 0)
                sigma2 = coin(rng) == 0 ? 1 : -1;
            else
                sigma2 = 0;
            s[static_cast<size_t>(i)] = make_rational(sigma2, 2);
            specs.push_back({pr, sigma2 * qr, qr});
        }
        if (!ok) continue;
        problems.push_back({make_quad_problem(RatSymMatrix(m), s), std::move(specs)});
    }

    Local l = run_indexed(
        static_cast<long>(problems.size()), threads, [&](long i, Local& loc) {
            const auto& [p, factors] = problems[static_cast<size_t>(i)];
            Real db = sqrt(abs(Real::of(Rational(det_integer(p.rf.B)))));
            PrecComplex got = quad_sum_modB(p, SumSide::B) / PrecComplex(db, Real());
            PrecComplex want = PrecComplex::one();
            for (const auto& f : factors) want = want * gauss_S(f);
            record(loc, abs(got - want), 1e-25,
                   "diagonal problem #" + std::to_string(i));
        });
    return finish("diag-factorization",
                  "diagonal form: the normalized coset sum equals the product of "
                  "its scalar Gauss sums, 50 random problems, n <= 3",
                  l, static_cast<long>(problems.size()), start);
}

}  // namespace

std::vector<std::string> selftest_names() {
    return {"recip-1d",   "sign-formula", "zeta-fe",
            "euler-product", "zeta-zeros",   "lattice",
            "recip-nd",   "theta",        "diag-factorization"};
}

CheckResult run_selftest_entry(const std::string& name, int threads) {
    if (threads < 1) threads = 1;
    if (name == "recip-1d") return check_recip_1d(threads);
    if (name == "sign-formula") return check_sign_formula(threads);
    if (name == "zeta-fe") return check_zeta_fe(threads);
    if (name == "euler-product") return check_euler_product(threads);
    if (name == "zeta-zeros") return check_zeta_zeros(threads);
    if (name == "lattice") return check_lattice(threads);
    if (name == "recip-nd") return check_recip_nd(threads);
    if (name == "theta") return check_theta(threads);
    if (name == "diag-factorization") return check_diag_factorization(threads);
    throw std::invalid_argument("unknown selftest entry '" + name + "'");
}

std::vector<CheckResult> run_selftest(int threads) {
    std::vector<CheckResult> out;
    for (const auto& name : selftest_names())
        out.push_back(run_selftest_entry(name, threads));
    return out;
}

}  // namespace qrec
