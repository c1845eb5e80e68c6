// Command-line entry point.  Every subcommand prints a single JSON report
// (or CSV lines under --csv) with all numeric values as decimal strings, and
// exits 0 on success, 1 when a checked residual exceeds --tol, 2 on input
// errors.  Reruns with the same flags are byte-identical; --timing adds
// elapsed milliseconds and is therefore off by default.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrec/finite_zeta.hpp"
#include "qrec/gauss_sums.hpp"
#include "qrec/lattice.hpp"
#include "qrec/matrix_io.hpp"
#include "qrec/multidim_gauss.hpp"
#include "qrec/selftest.hpp"
#include "qrec/theta.hpp"

using namespace qrec;

namespace {

struct Common {
    long prec_bits = 128;
    double tol = 1e-25;
    std::string backend = "float";
    bool csv = false;
    bool timing = false;
    int threads = 1;
    std::string file;  // optional JSON object supplying matrix/vector inputs
};

// Positional decimal rendering (for CSV numeric columns).
std::string positional(const Real& x) {
    char* s = nullptr;
    int digits = static_cast<int>(static_cast<double>(x.prec()) * 0.30103) + 2;
    mpfr_asprintf(&s, "%.*Rg", digits, x.raw());
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Json cyclo_to_json(const CyclotomicInt& v) {
    Json coeffs = Json::array();
    for (const auto& c : v.coeffs())
        coeffs.push_back(c.fits_slong_p() ? Json(c.get_si()) : Json(c.get_str()));
    return Json{{"order", v.order()}, {"coeffs", coeffs}};
}

void csv_walk(const Json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            csv_walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                     os);
    } else if (j.is_array()) {
        long i = 0;
        for (const auto& e : j)
            csv_walk(e, prefix + "[" + std::to_string(i++) + "]", os);
    } else if (j.is_string()) {
        os << prefix << "," << j.get<std::string>() << "\n";
    } else {
        os << prefix << "," << j.dump() << "\n";
    }
}

// Report emission; `lines` overrides the generic CSV flattening when a
// command has a natural line-per-row form (zeros, selftest entries).
void emit(const Json& report, const Common& cm,
          const std::vector<std::string>* lines = nullptr) {
    if (cm.csv) {
        if (lines) {
            for (const auto& l : *lines) std::cout << l << "\n";
        } else {
            csv_walk(report, "", std::cout);
        }
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(what + ": not valid JSON (" + e.what() + ")");
    }
}

// Inline JSON wins; otherwise fall back to the --file object's `key` member.
Json require_input(const Common& cm, const std::string& inline_text,
                   const std::string& key) {
    if (!inline_text.empty()) return parse_json_text(inline_text, "--" + key);
    if (!cm.file.empty()) {
        std::ifstream in(cm.file);
        if (!in) throw std::invalid_argument("cannot open --file " + cm.file);
        std::stringstream buf;
        buf << in.rdbuf();
        Json root = parse_json_text(buf.str(), cm.file);
        if (root.contains(key)) return root.at(key);
    }
    throw std::invalid_argument("missing input --" + key);
}

Json base_report(const std::string& command, const Common& cm) {
    Json j;
    j["command"] = command;
    j["backend"] = cm.backend;
    j["prec_bits"] = cm.prec_bits;
    j["residual"] = nullptr;
    return j;
}

int verdict(Json& report, const Common& cm, const Real& residual) {
    report["residual"] = residual.to_string();
    bool ok = residual < cm.tol;
    report["pass"] = ok;
    return ok ? 0 : 1;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void stamp(Json& report, const Common& cm, const Timer& t) {
    if (cm.timing) report["elapsed_ms"] = t.ms();
}

// ---- subcommand runners ------------------------------------------------------

int run_gauss_sum(const Common& cm, long a, long b, long c) {
    Timer t;
    Json rep = base_report("gauss-sum", cm);
    rep["inputs"] = Json{{"a", a}, {"b", b}, {"c", c}};
    GaussSumSpec spec{a, b, c};
    if (cm.backend == "exact") {
        ExactNormalized en = gauss_S_exact(spec);
        rep["numerator"] = cyclo_to_json(en.numerator);
        rep["normalizer"] = cyclo_to_json(en.normalizer);
        rep["value"] =
            complex_to_json(cyclo_embed(en.numerator, cm.prec_bits) /
                            cyclo_embed(en.normalizer, cm.prec_bits));
        // If the normalized sum is exactly an eighth root of unity e(k/8),
        // report k; the root comes out of the reciprocity prefactors.
        rep["eighth_root"] = nullptr;
        for (long k = 0; k < 8; ++k) {
            CyclotomicInt want = CyclotomicInt::zeta_power(8, k) * en.normalizer;
            if ((en.numerator - want).is_zero()) {
                rep["eighth_root"] = k;
                break;
            }
        }
    } else {
        rep["value"] = complex_to_json(gauss_S(spec, cm.prec_bits));
    }
    stamp(rep, cm, t);
    emit(rep, cm);
    return 0;
}

int run_u_value(const Common& cm, const std::string& r_text, const std::string& mode) {
    Timer t;
    Json rep = base_report("u-value", cm);
    Rational r = rational_from_string(r_text);
    rep["inputs"] = Json{{"r", rational_to_json(r)}, {"mode", mode}};
    int rc = 0;
    if (mode == "both") {
        PrecComplex closed = u_value(r, UMode::closed, cm.prec_bits);
        PrecComplex brute = u_value(r, UMode::brute, cm.prec_bits);
        rep["value"] = complex_to_json(closed);
        rc = verdict(rep, cm, abs(closed - brute));
    } else {
        UMode m = mode == "closed" ? UMode::closed : UMode::brute;
        rep["value"] = complex_to_json(u_value(r, m, cm.prec_bits));
    }
    stamp(rep, cm, t);
    emit(rep, cm);
    return rc;
}

int run_recip_check(const Common& cm, long a, long b, long c) {
    Timer t;
    Json rep = base_report("recip-check", cm);
    rep["inputs"] = Json{{"a", a}, {"b", b}, {"c", c}};
    int rc;
    if (cm.backend == "exact") {
        validate_gauss_spec({a, b, c});
        bool ok = reciprocity_exact_holds(a, b, c);
        rep["pass"] = ok;
        rc = ok ? 0 : 1;
    } else {
        rc = verdict(rep, cm, reciprocity_residual(a, b, c, cm.prec_bits));
    }
    stamp(rep, cm, t);
    emit(rep, cm);
    return rc;
}

int run_zeta(const Common& cm, long n, const std::string& re_text,
             const std::string& im_text, const std::vector<double>& zeros_window) {
    Timer t;
    Json rep = base_report("zeta", cm);
    if (!zeros_window.empty()) {
        rep["inputs"] = Json{
            {"n", n}, {"t_min", zeros_window[0]}, {"t_max", zeros_window[1]}};
        auto zs = zeros_in_window(n, zeros_window[0], zeros_window[1], cm.prec_bits);
        Json arr = Json::array();
        std::vector<std::string> lines;
        Real worst;
        const Real half = Real::of(make_rational(1, 2), cm.prec_bits);
        for (const auto& z : zs) {
            arr.push_back(Json{{"t", z.t.to_string()},
                               {"p", z.p},
                               {"coeff", rational_to_json(z.coeff)},
                               {"multiplicity", z.multiplicity}});
            lines.push_back(positional(z.t));
            worst = max(worst, abs(zeta_direct(n, PrecComplex(half, z.t))));
        }
        rep["zeros"] = arr;
        int rc = verdict(rep, cm, worst);  // |Z_n| at each returned zero
        stamp(rep, cm, t);
        emit(rep, cm, &lines);
        return rc;
    }
    PrecComplex s(Real::parse(re_text, cm.prec_bits),
                  Real::parse(im_text, cm.prec_bits));
    rep["inputs"] = Json{{"n", n}, {"s", complex_to_json(s)}};
    rep["value"] = complex_to_json(zeta_direct(n, s));
    rep["completed"] = complex_to_json(zeta_completed(n, s));
    int rc = verdict(rep, cm, functional_equation_residual(n, s));
    stamp(rep, cm, t);
    emit(rep, cm);
    return rc;
}

int run_reduced_form(const Common& cm, const std::string& t_text) {
    Timer t;
    Json rep = base_report("reduced-form", cm);
    RatSymMatrix tm = parse_rat_sym_matrix(require_input(cm, t_text, "t"));
    rep["inputs"] = Json{{"t", rat_matrix_to_json(tm.mat())}};
    ReducedForm rf = reduced_form(tm);
    rep["A"] = int_matrix_to_json(rf.A);
    rep["B"] = int_matrix_to_json(rf.B);
    rep["U"] = int_matrix_to_json(rf.U);
    rep["V"] = int_matrix_to_json(rf.V);
    rep["P"] = int_matrix_to_json(rf.P);
    rep["Q"] = int_matrix_to_json(rf.Q);
    rep["inner_form"] = int_matrix_to_json(transpose(rf.B) * rf.A);
    rep["signature"] = signature(tm);
    rep["det_t"] = rational_to_json(det_rational(tm.mat()));
    stamp(rep, cm, t);
    emit(rep, cm);
    return 0;
}

int run_nd_recip(const Common& cm, const std::string& t_text,
                 const std::string& s_text) {
    Timer t;
    Json rep = base_report("nd-recip", cm);
    RatSymMatrix tm = parse_rat_sym_matrix(require_input(cm, t_text, "t"));
    RatVector sv = parse_rat_vector(require_input(cm, s_text, "s"));
    rep["inputs"] =
        Json{{"t", rat_matrix_to_json(tm.mat())}, {"s", rat_vector_to_json(sv)}};
    QuadSumProblem p = make_quad_problem(tm, sv);
    rep["sum_mod_B"] = complex_to_json(quad_sum_modB(p, SumSide::B, cm.prec_bits));
    rep["sum_mod_A"] = complex_to_json(quad_sum_modB(p, SumSide::A, cm.prec_bits));
    int rc;
    if (cm.backend == "exact") {
        bool ok = reciprocity_nd_exact_holds(p);
        rep["pass"] = ok;
        rc = ok ? 0 : 1;
    } else {
        rc = verdict(rep, cm, reciprocity_nd_residual(p, cm.prec_bits));
    }
    stamp(rep, cm, t);
    emit(rep, cm);
    return rc;
}

int run_theta(const Common& cm, const std::string& z_text,
              const std::string& tau_text) {
    Timer t;
    Json rep = base_report("theta", cm);
    CplxVector z = parse_cplx_vector(require_input(cm, z_text, "z"), cm.prec_bits);
    CplxMatrix tau =
        parse_cplx_matrix(require_input(cm, tau_text, "tau"), cm.prec_bits);
    Json zj = Json::array();
    for (const auto& e : z) zj.push_back(complex_to_json(e));
    rep["inputs"] = Json{{"z", zj}, {"tau", Json::array()}};
    for (long i = 0; i < tau.rows; ++i) {
        Json row = Json::array();
        for (long j = 0; j < tau.cols; ++j) row.push_back(complex_to_json(tau(i, j)));
        rep["inputs"]["tau"].push_back(row);
    }
    ThetaValue v = riemann_theta(make_siegel_point(std::move(z), std::move(tau)),
                                 cm.tol);
    rep["value"] = complex_to_json(v.value);
    rep["tail_bound"] = v.tail_bound.to_string();
    rep["truncation_radius"] = v.truncation_radius;
    stamp(rep, cm, t);
    emit(rep, cm);
    return 0;
}

int run_theta_check(const Common& cm, const std::string& which, long a, long b,
                    long c, long k, long m, const std::string& z_text,
                    const std::string& tau_text, const std::string& t_text,
                    const std::string& shift_text) {
    Timer t;
    Json rep = base_report("theta-check", cm);
    rep["identity"] = which;
    Real residual;
    if (which == "jfe" || which == "tkm" || which == "average") {
        PrecComplex z =
            parse_complex_json(require_input(cm, z_text, "z"), cm.prec_bits);
        PrecComplex tau =
            parse_complex_json(require_input(cm, tau_text, "tau"), cm.prec_bits);
        rep["inputs"] = Json{{"z", complex_to_json(z)}, {"tau", complex_to_json(tau)}};
        if (which == "jfe") {
            residual = jacobi_transform_residual(z, tau, cm.tol);
        } else if (which == "tkm") {
            rep["inputs"]["k"] = k;
            rep["inputs"]["m"] = m;
            ThetaKmValue v = theta_km(k, m, z, tau, cm.tol);
            rep["value"] = complex_to_json(v.value);
            residual = v.lemma_residual;
        } else {
            rep["inputs"]["a"] = a;
            rep["inputs"]["b"] = b;
            rep["inputs"]["c"] = c;
            residual = theta_average_residual(a, b, c, z, tau, cm.tol);
        }
    } else if (which == "rfe") {
        CplxVector z = parse_cplx_vector(require_input(cm, z_text, "z"), cm.prec_bits);
        CplxMatrix tau =
            parse_cplx_matrix(require_input(cm, tau_text, "tau"), cm.prec_bits);
        residual = riemann_transform_residual(
            make_siegel_point(std::move(z), std::move(tau)), cm.tol);
    } else if (which == "thmb") {
        RatSymMatrix tm = parse_rat_sym_matrix(require_input(cm, t_text, "t"));
        RatVector cv = parse_rat_vector(require_input(cm, shift_text, "shift"));
        CplxVector z = parse_cplx_vector(require_input(cm, z_text, "z"), cm.prec_bits);
        CplxMatrix tau =
            parse_cplx_matrix(require_input(cm, tau_text, "tau"), cm.prec_bits);
        rep["inputs"] = Json{{"t", rat_matrix_to_json(tm.mat())},
                             {"shift", rat_vector_to_json(cv)}};
        residual = thmB_finite_tau_residual(tm, cv, z, tau, cm.tol);
    } else {
        throw std::invalid_argument("unknown identity '" + which +
                                    "' (expected jfe|tkm|average|rfe|thmb)");
    }
    int rc = verdict(rep, cm, residual);
    stamp(rep, cm, t);
    emit(rep, cm);
    return rc;
}

int run_selftest_cmd(const Common& cm, std::vector<std::string> entries) {
    Timer t;
    Json rep = base_report("selftest", cm);
    if (entries.empty()) entries = selftest_names();
    Json arr = Json::array();
    std::vector<std::string> lines;
    int failed = 0;
    for (const auto& name : entries) {
        CheckResult r = run_selftest_entry(name, cm.threads);
        if (!r.pass) ++failed;
        Json e{{"name", r.name},
               {"statement", r.statement},
               {"pass", r.pass},
               {"cases", r.cases},
               {"max_residual", r.max_residual.to_string()}};
        if (!r.note.empty()) e["note"] = r.note;
        if (cm.timing) e["elapsed_ms"] = r.elapsed_ms;
        arr.push_back(std::move(e));
        std::string line = r.name + "," + (r.pass ? "pass" : "fail") + "," +
                           std::to_string(r.cases) + "," +
                           r.max_residual.to_string();
        if (cm.timing) line += "," + std::to_string(r.elapsed_ms);
        lines.push_back(std::move(line));
    }
    rep["results"] = std::move(arr);
    rep["pass"] = failed == 0;
    stamp(rep, cm, t);
    emit(rep, cm, &lines);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact and certified-precision tools for quadratic exponential sums,\n"
        "finite zeta polynomials, and theta transformation identities."};
    app.require_subcommand(1);
    app.fallthrough();
    app.failure_message(CLI::FailureMessage::help);

    Common cm;
    app.add_option("--prec-bits", cm.prec_bits, "working precision in bits")
        ->capture_default_str();
    app.add_option("--tol", cm.tol, "pass/fail threshold for residual checks")
        ->capture_default_str();
    app.add_option("--backend", cm.backend, "exact | float")
        ->check(CLI::IsMember({"exact", "float"}))
        ->capture_default_str();
    auto* json_flag = app.add_flag("--json", "JSON report (default)");
    app.add_flag("--csv", cm.csv, "CSV lines instead of JSON")->excludes(json_flag);
    app.add_flag("--timing", cm.timing, "include elapsed_ms (breaks rerun identity)");
    app.add_option("--threads", cm.threads,
                   "parallel sweep workers (selftest only; deterministic result)");
    app.add_option("--file", cm.file, "JSON file supplying matrix/vector inputs");

    long a = 0, b = 0, c = 0, n = 2, k = 0, m = 1;
    std::string r_text, mode = "both", re_text = "0.5", im_text = "0";
    std::string t_text, s_text, z_text, tau_text, shift_text, identity;
    std::vector<double> zeros_window;
    std::vector<std::string> entries;

    auto* sc_gauss = app.add_subcommand("gauss-sum", "normalized sum S_{a,b,c}");
    sc_gauss->add_option("--a", a)->required();
    sc_gauss->add_option("--b", b)->required();
    sc_gauss->add_option("--c", c)->required();

    auto* sc_u = app.add_subcommand("u-value", "u(r) for rational r");
    sc_u->add_option("--r", r_text, "rational, e.g. 3/5")->required();
    sc_u->add_option("--mode", mode, "closed | brute | both")
        ->check(CLI::IsMember({"closed", "brute", "both"}))
        ->capture_default_str();

    auto* sc_recip = app.add_subcommand("recip-check",
                                        "reciprocity of S_{a,b,c} and S_{-c,b,a}");
    sc_recip->add_option("--a", a)->required();
    sc_recip->add_option("--b", b)->required();
    sc_recip->add_option("--c", c)->required();

    auto* sc_zeta = app.add_subcommand(
        "zeta", "finite zeta polynomial: evaluate, or enumerate zeros");
    sc_zeta->add_option("--n", n, "even modulus")->required();
    sc_zeta->add_option("--re", re_text, "Re(s), decimal string")
        ->capture_default_str();
    sc_zeta->add_option("--im", im_text, "Im(s), decimal string")
        ->capture_default_str();
    sc_zeta->add_option("--zeros", zeros_window, "window t_min t_max")
        ->expected(2);

    auto* sc_rf = app.add_subcommand("reduced-form",
                                     "witness t = A B^{-1} with its invariants");
    sc_rf->add_option("--t", t_text, "symmetric rational matrix, JSON");

    auto* sc_nd = app.add_subcommand("nd-recip",
                                     "n-dimensional reciprocity for (t, s)");
    sc_nd->add_option("--t", t_text, "symmetric rational matrix, JSON");
    sc_nd->add_option("--s", s_text, "half-integer shift vector, JSON");

    auto* sc_theta = app.add_subcommand("theta",
                                        "Riemann theta value with certified tail");
    sc_theta->add_option("--z", z_text, "complex vector, JSON");
    sc_theta->add_option("--tau", tau_text, "complex symmetric matrix, JSON");

    auto* sc_tc = app.add_subcommand("theta-check", "named identity residual");
    sc_tc->add_option("identity", identity, "jfe | tkm | average | rfe | thmb")
        ->required();
    sc_tc->add_option("--a", a);
    sc_tc->add_option("--b", b);
    sc_tc->add_option("--c", c);
    sc_tc->add_option("--k", k);
    sc_tc->add_option("--m", m);
    sc_tc->add_option("--z", z_text, "complex scalar or vector, JSON");
    sc_tc->add_option("--tau", tau_text, "complex scalar or matrix, JSON");
    sc_tc->add_option("--t", t_text, "symmetric rational matrix, JSON");
    sc_tc->add_option("--shift", shift_text, "rational twist vector, JSON");

    auto* sc_self = app.add_subcommand("selftest", "full verification suite");
    sc_self->add_option("--entry", entries, "run only the named entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sc_gauss->parsed()) return run_gauss_sum(cm, a, b, c);
        if (sc_u->parsed()) return run_u_value(cm, r_text, mode);
        if (sc_recip->parsed()) return run_recip_check(cm, a, b, c);
        if (sc_zeta->parsed()) return run_zeta(cm, n, re_text, im_text, zeros_window);
        if (sc_rf->parsed()) return run_reduced_form(cm, t_text);
        if (sc_nd->parsed()) return run_nd_recip(cm, t_text, s_text);
        if (sc_theta->parsed()) return run_theta(cm, z_text, tau_text);
        if (sc_tc->parsed())
            return run_theta_check(cm, identity, a, b, c, k, m, z_text, tau_text,
                                   t_text, shift_text);
        if (sc_self->parsed()) return run_selftest_cmd(cm, entries);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
