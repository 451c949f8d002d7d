#pragma once

#include <string>
#include <vector>

#include "ptloc/kinematics.hpp"
#include "ptloc/operators.hpp"
#include "ptloc/physstate.hpp"

namespace ptloc::povm {

/// sampled density along one axis (t or z) with quadrature weights, the
/// truncations that produced it, and accumulated warnings
struct DensityProfile {
    char axis = 'z';               // 't' or 'z'
    double tau = 0.0;
    std::vector<double> x;         // axis samples
    std::vector<double> p;         // density values (clipped to >= 0)
    std::vector<double> w;         // axis quadrature weights (trapezoid)
    double total_mass = 0.0;
    // truncation metadata
    int l_max = 0;                 // time densities
    double lambda_max = 0.0;       // position densities
    int m_z_max = 0;
    double axis_min = 0.0, axis_max = 0.0;
    double clipped_mass = 0.0;     // |negative mass| removed by clipping
    std::vector<std::string> warnings;

    double mean() const;
    double variance() const;
};

/// uniform axis request
struct AxisSpec {
    double lo = -40.0, hi = 40.0;
    int n = 801;
};

/// quadrature controls for the radial (time) channel: the substituted
/// log coordinate u = ln(r/(E+m)) runs over (u_min, 0)
struct TimeQuad {
    double u_min = -16.0;
    int panels = 0;      // 0 = auto from the largest |t| requested
    int nodes = 12;
    int n_theta = 0;     // 0 = auto from l_max
    int n_phi = 0;
};

/// quadrature controls for the transverse (position) channel
struct PositionQuad {
    int n_lambda = 48;
    int threads = 1;
};

/// time-of-arrival density  p(t) = sum_xi sum_{l <= l_max, |m_z| <= l} |<psi^{t,l,m_z}|phi>|^2.
/// Spherically symmetric states keep only l = 0; axially symmetric ones only m_z = 0.
DensityProfile time_density(const states::PhysState& s, double tau, const AxisSpec& axis,
                            int l_max, const TimeQuad& q = {});

/// localization density
///   p(z) = sum_xi (m/2) sum_{|m_z| <= m_z_max} int_0^{L_max} 2 L dL |<psi^{z,L,m_z}|phi>|^2
/// evaluated on the supplied hyperbolic grid
DensityProfile position_density(const states::PhysState& s, double tau, const AxisSpec& axis,
                                double lambda_max, int m_z_max,
                                const kinematics::QuadratureGrid& hyp_grid,
                                const PositionQuad& q = {});

/// integral of the density over [a, b] intersected with the sampled axis,
/// clipped to [0, 1]
double interval_probability(const DensityProfile& d, double a, double b);

/// longitudinal pairing of two position elements at equal (Lambda, m_z);
/// equals sinc(m pi (z1 - z2)/2), independent of tau and Lambda
cplx position_overlap(Mass mass, double tau, double z1, double z2, Sign sign);

/// normalized Gaussian time window
struct GaussianWindow {
    double center = 0.0;
    double width = 1.0;  // must be > 0
};

/// doubly smeared time kernel int int conj(w_a(t)) w_b(t') K(t - t') dt dt'
/// computed two independent ways:
///   direct  - t-quadrature smearing of the eigenfunctions, then radial pairing
///   analytic - half-line Fourier formula (1/2pi)[pi delta - xi i P.V. 1/dt]
///              via the cross-correlation PV integral
struct TimeOverlapResult {
    cplx direct;
    cplx analytic;
};
TimeOverlapResult time_overlap_smeared(Mass mass, double tau, const GaussianWindow& wa,
                                       const GaussianWindow& wb, Sign sign);

/// |1 - total_mass| for the requested density at the given truncations
struct CompletenessSpec {
    char axis = 'z';
    AxisSpec range;
    int l_max = 8;
    double lambda_max = 8.0;
    int m_z_max = 4;
};
double completeness_residual(const states::PhysState& s, double tau, const CompletenessSpec& cs,
                             const kinematics::QuadratureGrid& hyp_grid);

}  // namespace ptloc::povm
