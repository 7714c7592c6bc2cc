import math

import numpy as np
import numpy.polynomial.hermite as npherm
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landauqm import grid
from landauqm.eigen import (
    FAMILIES,
    LADDER_CAP,
    LANDAU_FIRST,
    LANDAU_SECOND,
    SYMMETRIC_FIRST,
    SYMMETRIC_SECOND,
    FamilyId,
    Superposition,
    defining_invariant,
    displaced_label,
    eigenfunction,
    flux_phase,
    hermite_coeffs,
    invariant_eigenvalue,
    is_flux_quantized,
    ladder_state,
    partner_displacement,
    phase_relation,
    resum_displaced,
    time_evolve,
)
from landauqm.gauge import Gauge, apply_displacement, hamiltonian
from landauqm.params import PhysicalParams, landau_level
from landauqm.symbolic import gp_is_multiple, gp_residual, op_apply

GENERAL = PhysicalParams(m=1.7, q=-0.6, B=2.3, c=1.1, hbar=0.9)


def test_hermite_small_cases():
    assert hermite_coeffs(0) == [1.0]
    assert hermite_coeffs(2) == [-2.0, 0.0, 4.0]
    assert hermite_coeffs(3) == [0.0, -12.0, 0.0, 8.0]


@pytest.mark.parametrize("n", range(31))
def test_hermite_matches_numpy(n):
    ours = np.array(hermite_coeffs(n))
    ref = npherm.herm2poly([0] * n + [1])
    assert np.array_equal(ours, ref) or np.allclose(ours, ref, rtol=1e-15, atol=0)


def test_hermite_cap():
    with pytest.raises(ValueError):
        hermite_coeffs(201)
    with pytest.raises(ValueError):
        hermite_coeffs(-1)
    assert len(hermite_coeffs(5, cap=5)) == 6


@pytest.mark.parametrize("n", range(12))
def test_hermite_parity(n):
    coeffs = hermite_coeffs(n)
    assert all(c == 0 for k, c in enumerate(coeffs) if (k + n) % 2)


def test_ground_state_closed_form(nat):
    psi = eigenfunction(LANDAU_FIRST, 0, 0.0, nat)
    assert psi.poly == {(0, 0): pytest.approx(math.pi**-0.25)}
    assert psi.exponent.a_yy == -0.5
    assert psi.evaluate(0.0, 0.0) == pytest.approx(0.7511255444649425)


@pytest.mark.parametrize("family", FAMILIES, ids=str)
@pytest.mark.parametrize("params", [PhysicalParams(), GENERAL], ids=["natural", "general"])
def test_pointwise_against_numpy_hermite(family, params):
    # independent evaluation of the closed forms with numpy Hermite series
    n, lam = 3, 0.7
    mw, hb = params.m * params.omega_c, params.hbar
    s = math.sqrt(abs(mw) / hb)
    norm = (abs(mw) / (math.pi * hb)) ** 0.25 / math.sqrt(2**n * math.factorial(n))
    f = lambda z: norm * np.exp(-z * z / 2) * npherm.hermval(z, [0] * n + [1])
    x, y = np.array([0.3, -0.8, 1.1]), np.array([-0.4, 0.2, 0.9])
    if family == LANDAU_FIRST:
        ref = np.exp(-1j * lam * x / hb) * f(s * (y - lam / mw))
    elif family == LANDAU_SECOND:
        ref = np.exp(1j * (lam - mw * x) * y / hb) * f(s * (lam / mw - x))
    elif family == SYMMETRIC_FIRST:
        ref = np.exp(1j * (lam + mw * y / 2) * x / hb) * f(s * (lam / mw + y))
    else:
        ref = np.exp(1j * (lam - mw * x / 2) * y / hb) * f(s * (lam / mw - x))
    got = eigenfunction(family, n, lam, params).evaluate(x, y)
    np.testing.assert_allclose(got, ref, rtol=1e-12)


@pytest.mark.parametrize("family", FAMILIES, ids=str)
@pytest.mark.parametrize("params", [PhysicalParams(), GENERAL], ids=["natural", "general"])
def test_eigen_residuals(family, params):
    h = hamiltonian(family.gauge, params)
    for n in (0, 1, 4):
        for lam in (-1.1, 0.0, 2.5):
            assert gp_residual(h, landau_level(n, params), eigenfunction(family, n, lam, params)) <= 1e-10


def test_first_excited_level(nat):
    psi = eigenfunction(LANDAU_FIRST, 1, 0.0, nat)
    assert gp_residual(hamiltonian(Gauge.LANDAU, nat), 1.5, psi) <= 1e-12


def test_symmetric_first_invariant_eigenvalue(nat):
    psi = eigenfunction(SYMMETRIC_FIRST, 0, 2.0, nat)
    out = op_apply(defining_invariant(SYMMETRIC_FIRST, nat), psi)
    assert gp_is_multiple(out, psi) == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_invariant_eigenvalues(family):
    lam = 1.37
    psi = eigenfunction(family, 2, lam, GENERAL)
    c = gp_is_multiple(op_apply(defining_invariant(family, GENERAL), psi), psi)
    assert abs(c - invariant_eigenvalue(family, lam)) <= 1e-12


def test_eigenfunction_rejects_zero_field():
    with pytest.raises(ValueError):
        eigenfunction(LANDAU_FIRST, 0, 0.0, PhysicalParams(B=1e-300, c=1e300))


def test_family_parse_roundtrip():
    for fam in FAMILIES:
        assert FamilyId.parse(str(fam)) == fam


# --- ladders ---------------------------------------------------------------------


def test_ladder_examples(nat):
    assert gp_is_multiple(ladder_state(LANDAU_FIRST, 0, 0, 0.0, nat), eigenfunction(LANDAU_FIRST, 0, 0.0, nat)) == 1
    one = ladder_state(LANDAU_FIRST, 0, 1, 0.0, nat)
    assert gp_residual(hamiltonian(Gauge.LANDAU, nat), 0.5, one) <= 1e-10
    two = ladder_state(LANDAU_FIRST, 0, 2, 0.0, nat)
    assert two.degree()[0] <= 2


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_ladder_degeneracy(family):
    h = hamiltonian(family.gauge, GENERAL)
    for j in range(6):
        state = ladder_state(family, 1, j, 0.4, GENERAL)
        assert gp_residual(h, landau_level(1, GENERAL), state) <= 1e-10


def test_ladder_cap(nat):
    with pytest.raises(ValueError):
        ladder_state(LANDAU_FIRST, 0, LADDER_CAP + 1, 0.0, nat)


# --- resummation ---------------------------------------------------------------------


def test_resum_trivial_cases(nat):
    base = eigenfunction(LANDAU_SECOND, 2, 0.0, nat)
    assert gp_is_multiple(resum_displaced(LANDAU_SECOND, 2, 1.0, 0, nat), base) == pytest.approx(1.0)
    assert gp_is_multiple(resum_displaced(LANDAU_SECOND, 2, 0.0, 7, nat), base) == pytest.approx(1.0)


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_resum_converges_to_displacement(family):
    params = PhysicalParams(m=2.0, hbar=1.5)  # m*omega_c != 1 exercises the 1/(m w)^j factor
    lam = 0.8
    g = grid.Grid2D.square(6.0, 128)
    target = grid.sample(apply_displacement(partner_displacement(family, lam, params),
                                            eigenfunction(family, 1, 0.0, params)), g)
    approx = grid.sample(resum_displaced(family, 1, lam, 30, params), g)
    assert (approx - target).norm() <= 1e-8
    labelled = grid.sample(eigenfunction(family, 1, displaced_label(family, lam), params), g)
    assert (labelled - target).norm() <= 1e-10


# --- flux ---------------------------------------------------------------------------


def test_flux_phase_examples(nat):
    assert flux_phase(math.sqrt(2 * math.pi), math.sqrt(2 * math.pi), nat) == pytest.approx(1.0, abs=1e-14)
    assert flux_phase(0.0, 3.0, nat) == 1.0
    assert flux_phase(1.0, math.pi, nat) == pytest.approx(-1.0, abs=1e-15)


def test_flux_phase_matches_symbolic_displacement(nat):
    c = phase_relation(LANDAU_FIRST, 0, 1.0, math.pi, nat)
    assert c == pytest.approx(flux_phase(1.0, math.pi, nat), abs=1e-12)


def test_is_flux_quantized_examples(nat):
    root = math.sqrt(2 * math.pi)
    assert is_flux_quantized(root, root, nat, 1e-9) == 1
    assert is_flux_quantized(0.0, 5.0, nat, 1e-9) == 0
    assert is_flux_quantized(1.0, 1.0, nat, 1e-3) is None
    with pytest.raises(ValueError):
        is_flux_quantized(1.0, 1.0, nat, 0.5)


@settings(max_examples=50, deadline=None)
@given(st.integers(-20, 20), st.floats(0.2, 5.0))
def test_quantized_products_recovered(k, lam1):
    p = GENERAL
    lam2 = 2 * math.pi * k * p.m * p.omega_c * p.hbar / lam1
    assert is_flux_quantized(lam1, lam2, p, 1e-9) == k
    assert abs(flux_phase(lam1, lam2, p) - 1) <= 1e-9


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_phase_modulus_is_one(family):
    c = phase_relation(family, 2, 0.9, -1.7, GENERAL)
    assert c is not None and abs(abs(c) - 1) <= 1e-12


# --- superpositions ---------------------------------------------------------------------


def test_superposition_rejects_non_eigenstate(nat):
    wrong = eigenfunction(SYMMETRIC_SECOND, 0, 0.0, nat)
    with pytest.raises(ValueError):
        Superposition([(1.0, 0, wrong)], Gauge.LANDAU, nat)


def test_time_evolve_phases(nat):
    s = Superposition([(0.3 + 0.1j, 0, eigenfunction(LANDAU_FIRST, 0, 0.0, nat))], Gauge.LANDAU, nat)
    assert time_evolve(s, 0.0, nat).terms[0].amplitude == s.terms[0].amplitude
    assert time_evolve(s, 4 * math.pi, nat).terms[0].amplitude == pytest.approx(0.3 + 0.1j, abs=1e-14)


def test_time_evolve_preserves_box_probability(nat):
    states = [(0.6, 0, eigenfunction(LANDAU_FIRST, 0, 0.5, nat)), (0.8j, 3, eigenfunction(LANDAU_FIRST, 3, 0.5, nat))]
    s = Superposition(states, Gauge.LANDAU, nat)
    g = grid.Grid2D.square(10.0, 257)
    X, Y = g.mesh()
    w = g.weights()
    norms = []
    for t in (0.0, 0.7, 2.3, 11.0):
        values = time_evolve(s, t, nat).evaluate(X, Y)
        norms.append(float(np.sum(w * np.abs(values) ** 2)))
    assert max(norms) - min(norms) <= 1e-8
