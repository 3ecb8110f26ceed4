#include <cstdio>

#include "qlab/acceptance.hpp"

// Runs the full verification suite and prints one line per criterion.  The
// exit status is nonzero when any criterion fails, so the failures are
// visible in CI rather than papered over.
int main() {
    qlab::AcceptanceReport rep = qlab::run_acceptance(false);
    for (const qlab::CriterionResult& r : rep.results) {
        std::printf("criterion %2d %-4s %-40s %6.2fs%s%s\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, r.detail.empty() ? "" : "  -- ",
                    r.detail.c_str());
        std::fflush(stdout);
    }
    return rep.all_pass() ? 0 : 1;
}
