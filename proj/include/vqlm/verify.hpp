#pragma once

// Verification battery: module invariants plus the acceptance checks, each
// reduced to a named measurement against a pinned tolerance.  The CLI and the
// acceptance runner both drive this.

#include <map>
#include <string>
#include <vector>

namespace vqlm {

struct CheckResult {
    std::string name;
    // Acceptance criterion this check belongs to (1..9); 0 for module
    // invariants outside the numbered list.
    int criterion = 0;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    int grid_n = 128;
    // Extra profile the generic invariants also run on.
    std::string profile_text = "tanh_step:m0=1,a=0.5,lambda=2";
    std::map<std::string, double> tolerance_overrides;
};

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

} // namespace vqlm
