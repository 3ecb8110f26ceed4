#pragma once

#include <string>
#include <vector>

namespace qlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;
    bool all_pass() const {
        for (const CriterionResult& r : results)
            if (!r.pass) return false;
        return true;
    }
};

// Runs the end-to-end verification suite; quick mode skips the two slow
// enumeration-heavy checks (ids 4 and 5).
AcceptanceReport run_acceptance(bool quick);

}  // namespace qlab
