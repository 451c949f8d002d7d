import cmath
import math

import pytest

import ptloc


def test_extension_spectrum_ladder():
    # the phi = pi extension carries the odd-integer ladder exactly
    assert ptloc.z0(math.pi) == pytest.approx(1.0, abs=1e-15)
    vals = ptloc.extension_eigenvalues(math.pi, n_lo=-2, n_hi=2)
    assert vals == pytest.approx([-3.0, -1.0, 1.0, 3.0, 5.0], abs=1e-14)

    # spacing is 2/m for any phase
    vals = ptloc.extension_eigenvalues(0.7, mass=2.0, n_lo=0, n_hi=3)
    diffs = [b - a for a, b in zip(vals, vals[1:])]
    assert diffs == pytest.approx([1.0, 1.0, 1.0], abs=1e-14)


def test_position_overlap_sinc_law():
    # first node of the kernel sits at dz = 2/m
    assert abs(ptloc.position_overlap(2.0)) <= 1e-12
    got = ptloc.position_overlap(1.3)
    want = ptloc.sinc(0.5 * math.pi * 1.3)
    assert cmath.isclose(got, complex(want, 0.0), abs_tol=1e-10)


def test_special_functions_frozen_anchors():
    assert ptloc.conical_p(0, 0.5, math.cosh(1.0)) == pytest.approx(
        0.88353789884822377, rel=1e-10
    )
    assert ptloc.gamma_abs_half(0, 0.5) == pytest.approx(1.1189460805830403, rel=1e-12)


def test_time_overlap_routes_agree():
    r = ptloc.time_overlap(0.0, 0.7, 1.1, 0.5, tau=0.4)
    assert abs(r["direct"] - r["analytic"]) <= 1e-8


def test_time_density_mass():
    d = ptloc.time_density(
        center=(0.0, 0.0, 0.0),
        sigma=0.6,
        l_max=0,
        grid_n1=48,
        grid_n2=24,
        grid_n3=8,
        n=401,
        lo=-30.0,
        hi=30.0,
    )
    assert d["total_mass"] == pytest.approx(1.0, abs=1e-3)
    assert len(d["t"]) == 401
    assert min(d["p"]) >= 0.0


def test_admissibility_verdicts():
    rep = ptloc.admissibility(center=(0.0, 0.0, 0.8), sigma=0.5)
    assert rep["admissible"]
    flat = ptloc.admissibility(packet="extension")
    assert not flat["admissible"]
    assert not flat["endpoint_zero"]


def test_config_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        ptloc.z0(0.0, mass=-1.0)
    with pytest.raises(ValueError):
        ptloc.position_overlap(1.0, sign="sideways")
