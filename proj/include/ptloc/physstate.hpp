#pragma once

#include <functional>
#include <memory>

#include "ptloc/types.hpp"

namespace ptloc::states {

/// symmetry hints used by the density routines to skip empty channels
enum class Symmetry { none, axial, spherical };

/// amplitude evaluator over momentum space; receives points in any chart and
/// converts internally to whatever chart it naturally lives in
using Amplitude = std::function<cplx(const MomentumPoint&)>;

/// element of the physical Hilbert space L2(dmu) (+) L2(dmu): one amplitude
/// field per energy sign. Fields are pure evaluators; grids enter only through
/// inner products and densities. Immutable by convention: transformations
/// return new states.
struct PhysState {
    Mass mass;
    std::array<Amplitude, 2> comp;  // indexed by sign_index(); empty function = zero
    Symmetry symmetry = Symmetry::none;
    bool normalized = false;

    bool has(Sign s) const { return static_cast<bool>(comp[sign_index(s)]); }
    cplx eval(Sign s, const MomentumPoint& p) const {
        const auto& f = comp[sign_index(s)];
        return f ? f(p) : cplx(0.0, 0.0);
    }
};

/// single-sign helper
PhysState make_state(Mass mass, Sign s, Amplitude amp, Symmetry sym = Symmetry::none);

}  // namespace ptloc::states
