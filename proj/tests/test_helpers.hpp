#pragma once

#include "ptloc/kinematics.hpp"
#include "ptloc/states.hpp"

namespace testutil {

using namespace ptloc;

// shared quadrature grids, built once per binary run
inline const kinematics::QuadratureGrid& hyp_grid() {
    static auto g = kinematics::QuadratureGrid::build(
        {Chart::hyperbolic, 64, 48, 12, 9.0}, Mass{1.0});
    return g;
}

inline const kinematics::QuadratureGrid& sph_grid() {
    static auto g = kinematics::QuadratureGrid::build(
        {Chart::spherical, 96, 40, 12, 14.0}, Mass{1.0});
    return g;
}

inline const kinematics::QuadratureGrid& cart_grid() {
    static auto g = kinematics::QuadratureGrid::build(
        {Chart::cartesian, 48, 48, 48, 6.0}, Mass{1.0});
    return g;
}

inline const states::PhysState& axial_packet() {
    static auto s = states::gaussian_packet(Mass{1.0}, Sign::plus, {0, 0, 0.8}, 0.5, hyp_grid());
    return s;
}

inline const states::PhysState& rest_packet() {
    static auto s = states::gaussian_packet(Mass{1.0}, Sign::plus, {0, 0, 0}, 0.6, sph_grid());
    return s;
}

}  // namespace testutil
