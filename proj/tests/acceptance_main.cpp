// Acceptance gate: runs the full verification battery and reports it grouped
// into the ten headline claims the library is contracted to reproduce.
// Exit code 0 only if every underlying check passes.

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "ptloc/checks.hpp"

namespace {

struct Criterion {
    const char* title;
    std::vector<std::string> members;  // check names that must all pass
    const char* evidence;              // canonical check quoted on the PASS line
};

const std::vector<Criterion> criteria() {
    return {
        {"time operator has deficiency indices (2,4) with normalizable solutions",
         {"operators.deficiency_norms"},
         "operators.deficiency_norms"},
        {"extension spectra: spacing 2/m, odd-integer ladder at phi = pi, continuous seam",
         {"operators.spectrum_spacing", "operators.spectrum_phi_pi", "operators.spectrum_seam",
          "operators.spectrum_branch_join"},
         "operators.spectrum_branch_join"},
        {"generalized eigenfunctions satisfy both acting rules to stencil accuracy",
         {"operators.eigen_residual_q0", "operators.eigen_residual_q3"},
         "operators.eigen_residual_q0"},
        {"position kernel between longitudinal elements is the sinc law",
         {"povm.sinc_kernel"},
         "povm.sinc_kernel"},
        {"smeared time kernel: direct pairing matches the analytic half-line form",
         {"povm.time_kernel"},
         "povm.time_kernel"},
        {"localization densities are positive, complete and never exceed unit mass",
         {"povm.completeness_time", "povm.completeness_monotone", "povm.completeness_position",
          "povm.completeness_band_edge", "povm.positivity", "povm.mass_window"},
         "povm.completeness_position"},
        {"inadmissible profiles are excluded and admissible tails beat every exponential",
         {"analysis.admissible_gaussian", "analysis.exclusion_box",
          "analysis.exclusion_extension", "analysis.exclusion_random",
          "analysis.truncation_flip", "povm.tail_law", "analysis.exp_tail_violation",
          "analysis.exp_tail_control"},
         "povm.tail_law"},
        {"localization mean drifts affinely in proper time at <P3>/m",
         {"povm.drift", "analysis.sweep_affine"},
         "povm.drift"},
        {"boost covariance: first moments mix as cosh/sinh with 4th-order stencils",
         {"analysis.covariance_identity", "analysis.covariance_order",
          "kinematics.boost_unitarity", "kinematics.boost_momentum"},
         "analysis.covariance_identity"},
        {"momentum charts agree: measure weights, norms and calibration defects",
         {"kinematics.chart_roundtrip", "kinematics.energy_identity",
          "kinematics.jacobian_fd", "kinematics.grid_calibration",
          "kinematics.norm_chart_agreement"},
         "kinematics.norm_chart_agreement"},
    };
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    ptloc::checks::CheckOptions opt;
    opt.threads = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) {
            opt.quick = true;
        } else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) {
            opt.threads = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--quick] [--threads N]\n", argv[0]);
            return 2;
        }
    }

    const auto results = ptloc::checks::run_verification(opt);
    std::map<std::string, const ptloc::checks::CheckResult*> by_name;
    for (const auto& r : results) by_name[r.name] = &r;

    int criteria_failed = 0;
    int idx = 0;
    std::vector<std::string> covered;
    for (const auto& c : criteria()) {
        ++idx;
        bool ok = true;
        std::vector<const ptloc::checks::CheckResult*> failing;
        for (const auto& name : c.members) {
            covered.push_back(name);
            const auto it = by_name.find(name);
            if (it == by_name.end()) {
                std::fprintf(stderr, "acceptance: battery is missing check %s\n", name.c_str());
                return 2;
            }
            if (!it->second->passed) {
                ok = false;
                failing.push_back(it->second);
            }
        }
        if (ok) {
            const auto* ev = by_name.at(c.evidence);
            std::printf("PASS  %2d. %s  [%s = %s, bound %s]\n", idx, c.title,
                        c.evidence, num(ev->value).c_str(), num(ev->bound).c_str());
        } else {
            ++criteria_failed;
            std::printf("FAIL  %2d. %s\n", idx, c.title);
            for (const auto* f : failing)
                std::printf("          %s = %s (bound %s) %s\n", f->name.c_str(),
                            num(f->value).c_str(), num(f->bound).c_str(), f->detail.c_str());
        }
    }

    // everything the battery checks beyond the headline claims still gates
    int extra = 0, extra_failed = 0;
    for (const auto& r : results) {
        if (std::find(covered.begin(), covered.end(), r.name) != covered.end()) continue;
        ++extra;
        if (!r.passed) {
            ++extra_failed;
            std::printf("FAIL  supporting check %s = %s (bound %s) %s\n", r.name.c_str(),
                        num(r.value).c_str(), num(r.bound).c_str(), r.detail.c_str());
        }
    }
    std::printf("supporting checks: %d/%d passed\n", extra - extra_failed, extra);
    std::printf("acceptance: %d/10 criteria passed%s\n", 10 - criteria_failed,
                opt.quick ? " (quick grids)" : "");
    return (criteria_failed == 0 && extra_failed == 0) ? 0 : 1;
}
