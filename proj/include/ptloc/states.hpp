#pragma once

#include <vector>

#include "ptloc/kinematics.hpp"
#include "ptloc/physstate.hpp"

namespace ptloc::states {

/// isotropic Gaussian packet exp(-|p - center|^2 / (4 sigma^2)) on one energy
/// sign; normalized against the supplied grid. Symmetry hint is inferred from
/// the center (origin -> spherical, on the 3-axis -> axial).
/// An optional plane-wave phase exp(-i p . shift) displaces the packet in
/// position space.
PhysState gaussian_packet(Mass mass, Sign sign, const std::array<double, 3>& center,
                          double sigma, const kinematics::QuadratureGrid& grid,
                          const std::array<double, 3>& shift = {0.0, 0.0, 0.0});

/// band-edge reference packets for the localizability battery:
///   cosnu_packet - cos(nu) (sec nu)^{-3/2} exp(-(omega/width)^2), vanishes
///                  linearly at the band edge (localizable)
///   boundary_flat_packet - same without the cos factor; its boundary profile
///                  is constant in nu, so it fails the edge conditions
PhysState cosnu_packet(Mass mass, Sign sign, double width,
                       const kinematics::QuadratureGrid& grid);
PhysState boundary_flat_packet(Mass mass, Sign sign, double width,
                               const kinematics::QuadratureGrid& grid);

/// longitudinal profile Omega(z) sampled on a uniform z grid plus a transverse
/// profile alpha(Lambda) sampled on a uniform Lambda grid
struct PositionAmplitude {
    std::vector<double> z;
    std::vector<cplx> omega;
    std::vector<double> lambda;
    std::vector<cplx> alpha;
};

/// top-hat longitudinal profile of full width `width` centered at z = 0 with a
/// Gaussian transverse spectrum alpha(L) = exp(-(L/lambda_scale)^2); the
/// standard compact-support (band-limit violating) example
PositionAmplitude box_amplitude(double width, double lambda_scale, int nz, int nl);

/// build the state  |psi> = int 2 L dL alpha(L) int dz Omega(z) |psi^{z,L,0}_{tau;xi}>.
/// Momentum-space form: the z integral becomes the transform
/// Omhat(nu) = int dz Omega(z) exp(-i m z nu), the Lambda integral a conical
/// superposition in omega; the result is axially symmetric (m_z = 0).
/// Normalized against the grid.
PhysState state_from_position_amplitude(Mass mass, Sign sign, double tau,
                                        const PositionAmplitude& pa,
                                        const kinematics::QuadratureGrid& grid);

/// scale so that norm(state, grid) = 1; throws EvaluationError on a null state
PhysState normalize(const PhysState& s, const kinematics::QuadratureGrid& grid);

/// text serialization of grid samples of a state (chart id, grid spec, per-node
/// re/im pairs per sign component); loaders validate normalization
void save_state(const PhysState& s, const kinematics::QuadratureGrid& grid,
                const std::string& path);
PhysState load_state(const std::string& path, double norm_tol = 1e-6);

}  // namespace ptloc::states
