#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ptloc/povm.hpp"
#include "ptloc/types.hpp"

namespace ptloc::io {

/// run configuration; every CLI subcommand reads one of these, with flags
/// layered on top.  Parsed from a single JSON document.
struct RunConfig {
    double mass = 1.0;
    double tau = 0.0;
    std::string sign = "plus";       // "plus" | "minus" | "both"
    std::string axis = "t";          // "t" | "z"
    double range_lo = -40.0;
    double range_hi = 40.0;
    double step = 0.1;
    int l_max = 8;
    double lambda_max = 8.0;
    int m_z_max = 4;
    // packet parameters
    std::string packet = "gaussian";    // gaussian | cosnu | box | extension
    std::vector<double> center{0.0, 0.0, 2.0};
    double sigma = 0.6;
    std::vector<double> shift{0.0, 0.0, 0.0};
    // extension / spectrum parameters
    double phi = 0.0;
    int n_lo = -3, n_hi = 3;
    // smearing windows for overlap
    double window_width = 0.5;
    double window_sep = 1.0;
    // evolve / covariance
    std::vector<double> taus;
    double chi = 0.3;
    // numerics
    int grid_n1 = 64, grid_n2 = 48, grid_n3 = 16;
    double grid_bound = 9.0;
    int threads = 1;
    std::string format = "csv";      // csv | json
    std::optional<std::string> output;  // path; stdout if absent

    static RunConfig from_json_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text);
    void validate() const;  // throws ConfigError
};

/// deterministic %.17g formatting (shortest round-trip not required; stable
/// across runs and platforms with the same libc is)
std::string format_double(double v);

struct Column {
    std::string name;
    const std::vector<double>* data;
};

/// CSV with '#'-prefixed header lines carrying axis name, units and run
/// metadata, then one row per sample
void emit_csv(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta,
              const std::vector<Column>& cols);

/// JSON mirror of the same payload: {"meta": {...}, "columns": {name: [...]}}
void emit_json(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta,
               const std::vector<Column>& cols);

void emit_density_csv(std::ostream& os, const povm::DensityProfile& d,
                      const std::vector<std::pair<std::string, std::string>>& extra_meta = {});
void emit_density_json(std::ostream& os, const povm::DensityProfile& d,
                       const std::vector<std::pair<std::string, std::string>>& extra_meta = {});

/// exit codes shared by the CLI: 0 success, 1 check failure, 2 bad config,
/// 3 numerical non-convergence
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config = 2, exit_numeric = 3 };

}  // namespace ptloc::io
