#pragma once

#include <vector>

#include "ptloc/kinematics.hpp"
#include "ptloc/physstate.hpp"
#include "ptloc/povm_element.hpp"

namespace ptloc::operators {

/// finite-difference control: 4th-order central stencils of step h in the
/// operator's natural coordinate (log r for the time component, nu for the
/// 3-component), Richardson-extrapolated when requested; one-sided at the
/// nu boundary
struct StencilSpec {
    double h = 1e-3;
    bool richardson = true;
};

/// result of applying an acting rule: the transformed amplitude field plus a
/// stencil residual estimate (norm of the h vs h/2 difference over the grid,
/// relative)
struct OperatorApplication {
    states::PhysState result;
    double residual_estimate = 0.0;
};

/// time-component acting rule  sigma3 (E/m) [ (i/m)(r d/dr + 3/2) + tau ]
OperatorApplication apply_q0(const states::PhysState& s, double tau,
                             const kinematics::QuadratureGrid& grid,
                             const StencilSpec& st = {});

/// 3-component acting rule in the hyperbolic chart
///   [ (i/m)(d/dnu + (3/2) tan nu) + tan(nu) tau ] sigma3
OperatorApplication apply_q3(const states::PhysState& s, double tau,
                             const kinematics::QuadratureGrid& grid,
                             const StencilSpec& st = {});

/// four-momentum component mu in {0,1,2,3}: multiplication by
/// sigma3 (E, p1, p2, p3); exact, residual 0
OperatorApplication apply_momentum(const states::PhysState& s, int mu);

enum class Op { q0, q3 };

/// square-integrable solution of (acting rule) psi = (+-i/m) psi, one per listed
/// label; profile over the 1D coordinate of the relevant chart with the marginal
/// measure (dmu(r) = m r^2/E dr, or dmu(nu) = sec^3(nu) dnu)
struct DeficiencySolution {
    Op op;
    Sign slot;          // energy-sign component the solution lives in
    cplx eigenvalue;    // +i/m or -i/m
    std::function<cplx(double)> profile;
    double analytic_norm = 1.0;
    double numeric_norm = 0.0;  // marginal-measure quadrature, filled at construction
};

/// deficiency spaces: q0 has indices (1,1) (2 solutions), q3 has (2,2)
/// (4 solutions, labels (eigenvalue sign) x (energy sign))
std::vector<DeficiencySolution> deficiency_solutions(Op op, double tau, Mass mass);

/// one self-adjoint extension family member per phase phi in (-pi, pi]
struct ExtensionSpectrum {
    double phi;
    Mass mass;
    double z0;  // principal eigenvalue, branch arctan in [-pi/2, pi/2], phi=0 -> 0
    /// z_n = z0 + 2 n / m; spacing is exactly 2/m by construction
    double eigenvalue(int n) const { return z0 + 2.0 * n / mass.m; }
};

ExtensionSpectrum extension_spectrum(double phi, Mass mass);

/// time eigenfunction  sqrt(m/2pi) Y_l^{m_z} r^{-3/2} (r/m)^{i m tau} (r/(E+m))^{-+ i m t}
povm::PovmElementSpec q0_eigenfunction(Mass mass, Sign sign, double tau, double t,
                                       int l, int m_z);

/// position eigenfunction
///   sqrt(sinh pi L)/2 * |Gamma(1/2+|m_z|+iL)| / (m pi)^{3/2}
///   * e^{i m tau ln sec nu} e^{-i m xi z nu} e^{i m_z phi} (sec nu)^{-3/2}
///   * P^{-|m_z|}_{-1/2+iL}(cosh omega)
povm::PovmElementSpec q3_eigenfunction(Mass mass, Sign sign, double tau, double z,
                                       double lambda_deg, int m_z);

/// relative L2 residual |A psi - q psi| / |psi| over the interior of the grid
/// (outermost radial/nu fraction `trim` dropped on each side, reported back)
struct EigenResidual {
    double residual;
    double trim;
};
EigenResidual eigen_residual(Op op, const states::PhysState& s, cplx eigenvalue,
                             double tau, const kinematics::QuadratureGrid& grid,
                             const StencilSpec& st = {}, double trim = 0.08);

}  // namespace ptloc::operators
