import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from landauqm.params import (
    NATURAL,
    PhysicalParams,
    cyclotron_frequency,
    hall_resistivity,
    landau_level,
    magnetic_length,
)

ELECTRON_1T = PhysicalParams(m=9.109e-28, q=4.803e-10, B=1e4, c=2.998e10, hbar=1.0546e-27)

positive = st.floats(0.1, 10.0)
nonzero = st.one_of(st.floats(-10.0, -0.1), st.floats(0.1, 10.0))
params_st = st.builds(PhysicalParams, m=positive, q=nonzero, B=nonzero, c=positive, hbar=positive)


def test_defaults_are_natural_units():
    assert NATURAL == PhysicalParams(1, 1, 1, 1, 1)
    assert cyclotron_frequency(NATURAL) == 1.0
    assert magnetic_length(NATURAL) == 1.0


@pytest.mark.parametrize("kwargs", [{"m": 0}, {"c": -1}, {"hbar": 0}, {"B": 0}, {"q": 0}, {"m": math.nan}])
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ValueError):
        PhysicalParams(**kwargs)


def test_cyclotron_frequency_examples():
    assert cyclotron_frequency(PhysicalParams(m=2, q=1, B=4, c=1)) == 2.0
    assert cyclotron_frequency(ELECTRON_1T) == pytest.approx(1.759e11, rel=1e-3)
    assert cyclotron_frequency(PhysicalParams(q=-1)) == -1.0


def test_magnetic_length_examples():
    assert magnetic_length(PhysicalParams(q=4)) == 0.5
    assert magnetic_length(ELECTRON_1T) == pytest.approx(2.566e-6, rel=1e-3)


def test_landau_levels():
    assert landau_level(0, NATURAL) == 0.5
    assert landau_level(2, NATURAL) == 2.5
    assert landau_level(1, PhysicalParams(hbar=2, q=3)) == 9.0
    with pytest.raises(ValueError):
        landau_level(-1, NATURAL)


def test_hall_resistivity_examples():
    assert hall_resistivity(NATURAL, 2 * math.pi, 1.0) == pytest.approx(2 * math.pi, rel=1e-15)
    assert hall_resistivity(NATURAL, 0.0, 3.0) == 0.0
    assert hall_resistivity(NATURAL, 2.0, 3.0) == 6.0


def test_json_profile(tmp_path):
    path = tmp_path / "p.json"
    path.write_text('{"m": 2, "B": 3}')
    p = PhysicalParams.from_json(path)
    assert (p.m, p.q, p.B, p.c, p.hbar) == (2.0, 1.0, 3.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        PhysicalParams.from_dict({"mass": 1})


@given(params_st, st.integers(0, 50))
def test_uniform_level_spacing(p, n):
    gap = landau_level(n + 1, p) - landau_level(n, p)
    assert gap == pytest.approx(p.hbar * abs(cyclotron_frequency(p)), rel=1e-14)


@given(params_st)
def test_magnetic_length_identity(p):
    lb = magnetic_length(p)
    assert lb * lb * p.m * abs(cyclotron_frequency(p)) == pytest.approx(p.hbar, rel=1e-14)


@given(params_st, st.floats(-5, 5), st.floats(-5, 5), st.floats(0.1, 4))
def test_hall_resistivity_linear(p, l1, l2, k):
    assert hall_resistivity(p, k * l1, l2) == pytest.approx(k * hall_resistivity(p, l1, l2), rel=1e-12, abs=1e-300)
    assert hall_resistivity(p, l1, k * l2) == pytest.approx(k * hall_resistivity(p, l1, l2), rel=1e-12, abs=1e-300)
