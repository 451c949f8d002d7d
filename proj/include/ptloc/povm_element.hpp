#pragma once

#include "ptloc/physstate.hpp"
#include "ptloc/types.hpp"

namespace ptloc::povm {

/// generalized eigenfunction backing one POVM element; not square integrable,
/// delta-normalized in its continuous labels
struct PovmElementSpec {
    enum class Kind { time, position };
    Kind kind;
    Mass mass;
    Sign sign;
    double tau;
    // time elements: value = t, angular = (l, m_z); position: value = z,
    // lambda_deg = Lambda, angular = (unused, m_z)
    double value = 0.0;
    double lambda_deg = 0.0;
    int l = 0;
    int m_z = 0;
    states::Amplitude amplitude;  // full momentum-space evaluator

    states::PhysState as_state() const {
        states::PhysState s{mass, {}, states::Symmetry::none, false};
        s.comp[sign_index(sign)] = amplitude;
        if (m_z == 0) s.symmetry = states::Symmetry::axial;
        return s;
    }
};

}  // namespace ptloc::povm
