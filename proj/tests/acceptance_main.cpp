// Acceptance gate: runs every entry of the verification suite and prints one
// PASS/FAIL line per criterion.  Exit status is the number of failed entries.
// Tolerances and sweep sizes are pinned inside the suite itself.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "qrec/selftest.hpp"

int main(int argc, char** argv) {
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads > 8) threads = 8;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--threads") == 0) threads = std::atoi(argv[i + 1]);

    int failed = 0;
    for (const auto& name : qrec::selftest_names()) {
        qrec::CheckResult r = qrec::run_selftest_entry(name, threads);
        if (!r.pass) ++failed;
        std::printf("%s  %-20s cases=%-7ld worst=%-14s %6ld ms  %s\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.cases,
                    r.max_residual.to_string().c_str(), r.elapsed_ms,
                    r.pass ? r.statement.c_str() : r.note.c_str());
        std::fflush(stdout);
    }
    return failed;
}
