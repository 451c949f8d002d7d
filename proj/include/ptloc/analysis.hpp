#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptloc/povm.hpp"
#include "ptloc/states.hpp"

namespace ptloc::analysis {

/// localizability diagnosis for a state or a position amplitude.
/// Checks, matching the domain conditions of the localization construction:
///   band_limit     - Fourier content confined to |k| <= 1/2 (structural for
///                    states; residual fraction for sampled amplitudes)
///   endpoint_zero  - |F(+-1/2)| < 1e-6 * max|F|
///   boundary_decay - fitted local power of (sec nu)^{3/2} |phi(nu)| strictly
///                    negative with margin >= 0.1
///   square_integrable - finite norm with small boundary-window contribution
///   smooth         - finite-difference derivative of F converges under
///                    refinement
struct AdmissibilityReport {
    bool band_limit = false;
    bool endpoint_zero = false;
    bool boundary_decay = false;
    bool square_integrable = false;
    bool smooth = false;
    bool admissible = false;
    double band_residual = 0.0;
    double endpoint_ratio = 0.0;   // |F(1/2)| / max|F|
    double decay_exponent = 0.0;   // fitted power of h(nu) vs sec(nu)
    std::vector<std::string> notes;
};

AdmissibilityReport admissibility_check(const states::PhysState& s,
                                        const kinematics::QuadratureGrid& hyp_grid);
AdmissibilityReport admissibility_check(const states::PositionAmplitude& pa, Mass mass);

/// decide between an exponential envelope C e^{-A|z|} and a power envelope
/// C |z|^{-1} on the outer-25% local-maxima envelope of |p0| samples.
/// NotExponentiallyBounded when the fitted log-slope beats -A and the power
/// model has the smaller residual.
enum class TailVerdict { exponentially_bounded, not_exponentially_bounded, indeterminate };
struct TailTestResult {
    TailVerdict verdict = TailVerdict::indeterminate;
    double fitted_rate = 0.0;      // d log|p0| / d|z| over the tail window
    double sse_exponential = 0.0;
    double sse_power = 0.0;
    int points_used = 0;
};
TailTestResult exponential_tail_test(const std::vector<double>& z,
                                     const std::vector<double>& amplitude, double A);

/// log-log slope of the local-maxima envelope of sqrt(density) over
/// [fit_lo, fit_hi]; the tail-law figure reported by sweeps
double density_tail_exponent(const povm::DensityProfile& d, double fit_lo, double fit_hi);

/// localization summary per proper time value
struct SweepRow {
    double tau;
    double mean;
    double variance;
    double total_mass;
    double tail_exponent;
};
struct SweepResult {
    std::vector<SweepRow> rows;
    double drift_slope = 0.0;       // affine fit of mean vs tau
    double drift_intercept = 0.0;
    double momentum_mean = 0.0;     // <Pi3>/m reference
};
SweepResult propertime_sweep(const states::PhysState& s, const std::vector<double>& taus,
                             const povm::AxisSpec& axis, double lambda_max, int m_z_max,
                             const kinematics::QuadratureGrid& hyp_grid,
                             double tail_fit_lo = 8.0, double tail_fit_hi = 28.0);

/// first moments of the time and 3-position rules on a boosted state versus
/// the boost-mixed moments of the original state:
///   <Q3>_boosted = cosh(chi) <Q3> + sinh(chi) <Q0>
struct CovarianceReport {
    double chi;
    double lhs;            // <Q3> on the boosted state
    double rhs;            // cosh <Q3> + sinh <Q0>
    double rel_discrepancy;
    double convergence_order;  // from stencil h vs h/2 discrepancies
};
CovarianceReport covariance_check(const states::PhysState& s, double chi, double tau,
                                  const kinematics::QuadratureGrid& sph_grid,
                                  const kinematics::QuadratureGrid& hyp_grid,
                                  const operators::StencilSpec& st = {});

}  // namespace ptloc::analysis
