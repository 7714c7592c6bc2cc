import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landauqm import grid
from landauqm.eigen import FAMILIES, LANDAU_FIRST, SYMMETRIC_FIRST, eigenfunction, phase_relation
from landauqm.gauge import (
    Branch,
    DisplacementOp,
    Gauge,
    apply_displacement,
    displacement,
    gauge_transform_L_to_S,
    hamiltonian,
    invariant_pair,
)
from landauqm.params import PhysicalParams, landau_level
from landauqm.symbolic import (
    GaussianPolynomial,
    PolyDiffOperator,
    QuadraticExponent,
    gp_is_multiple,
    gp_residual,
    op_apply,
    op_commutator,
)

P = PolyDiffOperator
GENERAL = PhysicalParams(m=1.7, q=-0.6, B=2.3, c=1.1, hbar=0.9)


def test_landau_hamiltonian_natural_units(nat):
    # -1/2 dx^2 - 1/2 dy^2 - i y dx + 1/2 y^2
    expected = P({(0, 0, 2, 0): -0.5, (0, 0, 0, 2): -0.5, (0, 1, 1, 0): -1j, (0, 2, 0, 0): 0.5})
    assert hamiltonian(Gauge.LANDAU, nat).allclose(expected, 1e-15)


def test_symmetric_hamiltonian_natural_units(nat):
    # -1/2 lap - (i/2)(y dx - x dy) + 1/8 (x^2 + y^2)
    expected = P({
        (0, 0, 2, 0): -0.5, (0, 0, 0, 2): -0.5,
        (0, 1, 1, 0): -0.5j, (1, 0, 0, 1): 0.5j,
        (2, 0, 0, 0): 0.125, (0, 2, 0, 0): 0.125,
    })
    assert hamiltonian(Gauge.SYMMETRIC, nat).allclose(expected, 1e-15)


@pytest.mark.parametrize("gauge", list(Gauge))
def test_zero_field_limit_is_free_particle(gauge):
    p = PhysicalParams(m=2.0, hbar=3.0)
    free = P({(0, 0, 2, 0): -9.0 / 4, (0, 0, 0, 2): -9.0 / 4})
    assert hamiltonian(gauge, p, omega_c=0.0).allclose(free, 1e-15)


@pytest.mark.parametrize("params", [PhysicalParams(), GENERAL], ids=["natural", "general"])
@pytest.mark.parametrize("gauge", list(Gauge))
def test_constants_of_motion(gauge, params):
    h = hamiltonian(gauge, params)
    first, second = invariant_pair(gauge, params)
    assert op_commutator(first, h).is_zero(1e-12)
    assert op_commutator(second, h).is_zero(1e-12)
    assert op_commutator(h, h).is_zero(0.0)
    mw = params.m * params.omega_c
    assert op_commutator(first, second).allclose(P.identity(-1j * params.hbar * mw), 1e-12)


def test_identity_displacement(nat):
    d = displacement(Gauge.LANDAU, Branch.FIRST, 0.0, nat)
    assert d.shift == (0.0, 0.0)
    psi = eigenfunction(LANDAU_FIRST, 1, 0.5, nat)
    assert gp_is_multiple(apply_displacement(d, psi), psi) == pytest.approx(1.0)


def test_pure_shift_recenters(nat):
    d = DisplacementOp((1.0, 0.0), QuadraticExponent())
    out = d(GaussianPolynomial.constant(1.0, QuadraticExponent(a_xx=-0.5)))
    assert out.exponent == QuadraticExponent(a_xx=-0.5, b_x=1.0, g=-0.5)


def test_displacement_rejects_real_phase():
    with pytest.raises(ValueError):
        DisplacementOp((0, 0), QuadraticExponent(b_x=1.0))


def test_displacement_rejects_zero_field():
    underflow = PhysicalParams(B=1e-300, c=1e300)  # omega_c underflows to 0.0
    assert underflow.omega_c == 0.0
    with pytest.raises(ValueError):
        displacement(Gauge.LANDAU, Branch.FIRST, 1.0, underflow)


def test_landau_first_displacement_moves_label(nat):
    moved = apply_displacement(displacement(Gauge.LANDAU, Branch.FIRST, 1.0, nat), eigenfunction(LANDAU_FIRST, 0, 0.0, nat))
    assert gp_is_multiple(moved, eigenfunction(LANDAU_FIRST, 0, 1.0, nat)) == pytest.approx(1.0, abs=1e-12)


def test_symmetric_second_displacement_on_symmetric_first(nat):
    base = eigenfunction(SYMMETRIC_FIRST, 0, 0.0, nat)
    moved = apply_displacement(displacement(Gauge.SYMMETRIC, Branch.SECOND, 1.0, nat), base)
    assert gp_is_multiple(moved, eigenfunction(SYMMETRIC_FIRST, 0, -1.0, nat)) == pytest.approx(1.0, abs=1e-12)
    assert gp_is_multiple(moved, eigenfunction(SYMMETRIC_FIRST, 0, 1.0, nat)) is None


def test_landau_second_phase_on_landau_first(nat):
    c = phase_relation(LANDAU_FIRST, 0, 1.0, math.pi, nat)
    assert c == pytest.approx(-1.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(list(Gauge)), st.sampled_from(list(Branch)), st.floats(-3, 3), st.floats(-3, 3))
def test_displacement_composition(gauge, which, a, b):
    psi = GaussianPolynomial({(1, 0): 1.0, (0, 2): 0.5}, QuadraticExponent(a_xx=-0.5, a_yy=-0.5))
    d = lambda lam: displacement(gauge, which, lam, GENERAL)
    twice = apply_displacement(d(b), apply_displacement(d(a), psi))
    once = apply_displacement(d(a + b), psi)
    c = gp_is_multiple(twice, once, 1e-9)
    assert c is not None and abs(abs(c) - 1) <= 1e-9


def test_displacement_is_unitary_on_grid(nat):
    psi = GaussianPolynomial({(0, 0): 1.0, (1, 1): 0.4}, QuadraticExponent(a_xx=-0.5, a_yy=-0.5))
    g = grid.Grid2D.square(12.0, 256)
    base = grid.sample(psi, g).norm()
    for gauge in Gauge:
        for which in Branch:
            moved = grid.sample(apply_displacement(displacement(gauge, which, 1.5, nat), psi), g).norm()
            assert abs(moved - base) <= 1e-6


@pytest.mark.parametrize("gauge", list(Gauge))
def test_hamiltonian_hermitian_on_grid(nat, gauge):
    h = hamiltonian(gauge, nat)
    phi = GaussianPolynomial({(0, 0): 1.0, (1, 0): 0.3j}, QuadraticExponent(a_xx=-0.6, a_yy=-0.4, b_x=0.2))
    psi = GaussianPolynomial({(0, 1): 1.0, (2, 0): -0.2}, QuadraticExponent(a_xx=-0.5, a_yy=-0.7, b_y=0.5j))
    g = grid.Grid2D.square(10.0, 301)
    f_phi, f_psi = grid.sample(phi, g), grid.sample(psi, g)
    lhs = grid.l2_inner(f_phi, grid.sample(op_apply(h, psi), g))
    rhs = grid.l2_inner(grid.sample(op_apply(h, phi), g), f_psi)
    assert abs(lhs - rhs) <= 1e-8


def test_gauge_transform_properties(nat):
    psi = eigenfunction(LANDAU_FIRST, 0, 0.0, nat)
    s = gauge_transform_L_to_S(psi, nat)
    assert gp_residual(hamiltonian(Gauge.SYMMETRIC, nat), 0.5, s) <= 1e-10
    twice = gauge_transform_L_to_S(s, nat)
    assert twice.exponent.a_xy == pytest.approx(1j)
    assert gauge_transform_L_to_S(psi, nat, omega_c=0.0).exponent == psi.exponent


@pytest.mark.parametrize("params", [PhysicalParams(), GENERAL], ids=["natural", "general"])
def test_gauge_covariance(params):
    h_s = hamiltonian(Gauge.SYMMETRIC, params)
    for fam in FAMILIES[:2]:
        for n in range(4):
            psi = gauge_transform_L_to_S(eigenfunction(fam, n, 0.8, params), params)
            assert gp_residual(h_s, landau_level(n, params), psi) <= 1e-10
