#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ptloc::checks {

/// one verification item: a named invariant evaluated at runtime with a value,
/// a bound and a verdict.  Used by `ptloc verify` and by the acceptance suite.
struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;      // measured figure (residual, error, ...)
    double bound = 0.0;      // tolerance it was compared against
    std::string detail;
};

struct CheckOptions {
    int threads = 1;
    bool quick = false;       // coarser grids; used by the CLI smoke path
};

/// run the built-in invariant battery: chart consistency, deficiency norms,
/// spectrum spacing, eigen-residuals, kernel laws, completeness, covariance
std::vector<CheckResult> run_verification(const CheckOptions& opt = {});

/// pass/fail line formatting shared by the CLI and the acceptance binary
std::string format_check_line(const CheckResult& r);

}  // namespace ptloc::checks
