// Full verification suite: each entry re-checks one of the library's central
// identities over a pinned sweep with fixed seeds and tolerances, so a run is
// reproducible bit-for-bit (single-threaded) and the pass/fail verdicts are
// stable across machines.
#pragma once

#include <string>
#include <vector>

#include "qrec/prec_complex.hpp"

namespace qrec {

struct CheckResult {
    std::string name;
    std::string statement;  // one line: the identity and the sweep
    bool pass = true;
    Real max_residual;      // worst float residual seen; 0 for exact-only checks
    long cases = 0;
    long elapsed_ms = 0;
    std::string note;       // first failing case, empty when pass
};

// Entry names, in suite order.
std::vector<std::string> selftest_names();

// Runs one entry; threads > 1 splits the sweep across workers with a
// deterministic max-reduction (same verdicts and residuals, any schedule).
// Throws std::invalid_argument on an unknown name.
CheckResult run_selftest_entry(const std::string& name, int threads = 1);

std::vector<CheckResult> run_selftest(int threads = 1);

}  // namespace qrec
