"""Closed-form Landau eigenfunctions, degeneracy ladders and flux phases.

Four families, one per (gauge, branch), each labelled by the eigenvalue ``lam``
of a linear constant of motion:

    Landau first      p_x psi = -lam psi
    Landau second     (p_y + m w x) psi = lam psi
    Symmetric first   (p_x - m w y/2) psi = lam psi
    Symmetric second  (p_y + m w x/2) psi = lam psi

Every member is a displaced, normalized oscillator function times a phase
and lies at a Landau level hbar |w| (n + 1/2).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .gauge import (
    Branch,
    DisplacementOp,
    Gauge,
    apply_displacement,
    displacement,
    displacement_generator,
    hamiltonian,
    invariant_pair,
)
from .params import PhysicalParams, cyclotron_frequency, landau_level
from .symbolic import GaussianPolynomial, QuadraticExponent, gp_is_multiple, gp_residual, op_apply

HERMITE_CAP = 200
LADDER_CAP = 64
EIGEN_TOL = 1e-10


@dataclass(frozen=True)
class FamilyId:
    gauge: Gauge
    branch: Branch

    def __str__(self):
        return f"{self.gauge.value}-{self.branch.value}"

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        gauge, _, branch = text.partition("-")
        return cls(Gauge(gauge), Branch(branch))


LANDAU_FIRST = FamilyId(Gauge.LANDAU, Branch.FIRST)
LANDAU_SECOND = FamilyId(Gauge.LANDAU, Branch.SECOND)
SYMMETRIC_FIRST = FamilyId(Gauge.SYMMETRIC, Branch.FIRST)
SYMMETRIC_SECOND = FamilyId(Gauge.SYMMETRIC, Branch.SECOND)
FAMILIES = (LANDAU_FIRST, LANDAU_SECOND, SYMMETRIC_FIRST, SYMMETRIC_SECOND)


def hermite_coeffs(n: int, cap: int = HERMITE_CAP) -> list[float]:
    """Coefficients of the physicists' Hermite polynomial H_n, lowest power first."""
    if n < 0:
        raise ValueError(f"Hermite degree must be non-negative, got {n}")
    if n > cap:
        raise ValueError(f"Hermite degree {n} exceeds cap {cap}")
    prev, cur = [], [1]
    for k in range(n):
        # H_{k+1} = 2 z H_k - 2 k H_{k-1}, carried in exact integers
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, nxt
    return [float(c) for c in cur]


def _oscillator_factor(n: int, params: PhysicalParams, axis: str, center: float, sign: int):
    """Normalized f_n(sign * s * (v - center)) as a Gaussian polynomial, v = x or y.

    s = sqrt(m |w| / hbar); the Gaussian constant goes into the exponent.
    """
    mw = params.m * abs(cyclotron_frequency(params))
    s = math.sqrt(mw / params.hbar)
    norm = (mw / (math.pi * params.hbar)) ** 0.25 / math.sqrt(2.0**n * math.factorial(n))
    # H_n(sign*s*(v - c)) = sum_k h_k (sign*s)^k sum_i C(k,i) v^i (-c)^(k-i)
    poly1d: dict[int, float] = {}
    for k, h in enumerate(hermite_coeffs(n)):
        if h == 0:
            continue
        hk = h * (sign * s) ** k
        for i in range(k + 1):
            poly1d[i] = poly1d.get(i, 0.0) + hk * math.comb(k, i) * (-center) ** (k - i)
    a = -0.5 * s * s
    if axis == "y":
        poly = {(0, i): norm * c for i, c in poly1d.items()}
        exponent = QuadraticExponent(a_yy=a, b_y=-2 * a * center, g=a * center * center)
    else:
        poly = {(i, 0): norm * c for i, c in poly1d.items()}
        exponent = QuadraticExponent(a_xx=a, b_x=-2 * a * center, g=a * center * center)
    return poly, exponent


def eigenfunction(family: FamilyId, n: int, lam: float, params: PhysicalParams) -> GaussianPolynomial:
    """Closed-form eigenfunction of the family's gauge Hamiltonian at level n."""
    omega = cyclotron_frequency(params)
    if omega == 0:
        raise ValueError("eigenfunctions need a nonzero cyclotron frequency")
    mw, hbar = params.m * omega, params.hbar
    center = lam / mw
    if family == LANDAU_FIRST:
        poly, gauss = _oscillator_factor(n, params, "y", center, +1)
        phase = QuadraticExponent(b_x=-1j * lam / hbar)
    elif family == LANDAU_SECOND:
        poly, gauss = _oscillator_factor(n, params, "x", center, -1)
        phase = QuadraticExponent(a_xy=-1j * mw / hbar, b_y=1j * lam / hbar)
    elif family == SYMMETRIC_FIRST:
        poly, gauss = _oscillator_factor(n, params, "y", -center, +1)
        phase = QuadraticExponent(a_xy=0.5j * mw / hbar, b_x=1j * lam / hbar)
    elif family == SYMMETRIC_SECOND:
        poly, gauss = _oscillator_factor(n, params, "x", center, -1)
        phase = QuadraticExponent(a_xy=-0.5j * mw / hbar, b_y=1j * lam / hbar)
    else:
        raise ValueError(f"unknown family {family!r}")
    return GaussianPolynomial(poly, gauss + phase)


def invariant_eigenvalue(family: FamilyId, lam: float) -> float:
    """Eigenvalue of the family's defining invariant: -lam for Landau first, else +lam."""
    return -lam if family == LANDAU_FIRST else lam


def defining_invariant(family: FamilyId, params: PhysicalParams):
    first, second = invariant_pair(family.gauge, params)
    return first if family.branch is Branch.FIRST else second


def partner_branch(family: FamilyId) -> Branch:
    """Branch of the displacement that moves this family along its label.

    Landau families are moved by the displacement of the same branch; the
    symmetric families by the other one.
    """
    if family.gauge is Gauge.LANDAU:
        return family.branch
    return Branch.SECOND if family.branch is Branch.FIRST else Branch.FIRST


def partner_displacement(family: FamilyId, lam: float, params: PhysicalParams) -> DisplacementOp:
    return displacement(family.gauge, partner_branch(family), lam, params)


def displaced_label(family: FamilyId, lam: float) -> float:
    """Label reached by applying partner_displacement(family, lam) to the lam=0 state.

    Equal to lam except for the symmetric first family, where the shift in y
    runs against the label and the result sits at -lam.
    """
    return -lam if family == SYMMETRIC_FIRST else lam


def invariant_branch(family: FamilyId) -> Branch:
    """Branch of the displacement generated by the family's own defining invariant."""
    return Branch.SECOND if partner_branch(family) is Branch.FIRST else Branch.FIRST


def phase_relation(family: FamilyId, n: int, lam_state: float, lam_op: float, params: PhysicalParams):
    """Scalar picked up by a displaced family state under the other displacement.

    The state is partner_displacement(family, lam_state) applied to the lam=0
    eigenfunction; it is then hit with the displacement generated by the
    family's defining invariant at parameter lam_op. Returns the factor c with
    image = c * state, or None if the image is not a multiple.
    """
    state = apply_displacement(partner_displacement(family, lam_state, params), eigenfunction(family, n, 0.0, params))
    image = apply_displacement(displacement(family.gauge, invariant_branch(family), lam_op, params), state)
    return gp_is_multiple(image, state, 1e-12)


def ladder_operator(family: FamilyId, params: PhysicalParams):
    """The conserved operator whose powers build the degeneracy ladder."""
    return displacement_generator(family.gauge, partner_branch(family), params)


def _ladder(family: FamilyId, n: int, j_max: int, lam: float, params: PhysicalParams):
    if j_max < 0:
        raise ValueError("ladder index must be non-negative")
    if j_max > LADDER_CAP:
        raise ValueError(f"ladder index {j_max} exceeds cap {LADDER_CAP}")
    op = ladder_operator(family, params)
    state = eigenfunction(family, n, lam, params)
    states = [state]
    for _ in range(j_max):
        state = op_apply(op, state)
        states.append(state)
    return states


def ladder_state(family: FamilyId, n: int, j: int, lam: float, params: PhysicalParams) -> GaussianPolynomial:
    """j-fold application of the ladder operator to eigenfunction(family, n, lam)."""
    return _ladder(family, n, j, lam, params)[-1]


def resum_displaced(
    family: FamilyId, n: int, lam: float, j_max: int, params: PhysicalParams
) -> GaussianPolynomial:
    """Partial sum over j <= j_max of (lam/(i hbar m w))^j / j! * ladder_state(j, lam=0).

    This is the Taylor truncation of exp(-i lam G/(hbar m w)) applied to the
    lam=0 state, so it converges to partner_displacement(family, lam) of it.
    """
    mw = params.m * cyclotron_frequency(params)
    ratio = lam / (1j * params.hbar * mw)
    total = None
    coeff = 1.0 + 0j
    for j, state in enumerate(_ladder(family, n, j_max, 0.0, params)):
        if j:
            coeff *= ratio / j
        term = coeff * state
        total = term if total is None else total + term
    return total


def flux_phase(lam1: float, lam2: float, params: PhysicalParams) -> complex:
    """exp(i lam1 lam2 / (m w hbar))."""
    omega = cyclotron_frequency(params)
    if omega == 0:
        raise ValueError("flux phase needs a nonzero cyclotron frequency")
    return cmath.exp(1j * lam1 * lam2 / (params.m * omega * params.hbar))


def is_flux_quantized(lam1: float, lam2: float, params: PhysicalParams, tol: float = 1e-9):
    """Integer k with lam1 lam2 / (m w hbar) = 2 pi k within ``tol``, else None."""
    omega = cyclotron_frequency(params)
    if omega == 0:
        raise ValueError("flux condition needs a nonzero cyclotron frequency")
    if not 0 < tol < 0.5:
        raise ValueError(f"tol must lie in (0, 0.5), got {tol}")
    ratio = lam1 * lam2 / (2 * math.pi * params.m * omega * params.hbar)
    k = round(ratio)
    return int(k) if abs(ratio - k) <= tol else None


@dataclass(frozen=True)
class Term:
    amplitude: complex
    level: int
    state: GaussianPolynomial


class Superposition:
    """Stationary states of one gauge Hamiltonian with complex amplitudes.

    Every member is checked to be an eigenfunction at its level on construction.
    """

    def __init__(self, terms, gauge: Gauge, params: PhysicalParams, tol: float = EIGEN_TOL):
        self.gauge = gauge
        self.params = params
        h = hamiltonian(gauge, params)
        checked = []
        for amp, n, state in terms:
            r = gp_residual(h, landau_level(n, params), state)
            if r > tol:
                raise ValueError(f"state at level {n} has eigen-residual {r:.3e} > {tol:.1e}")
            checked.append(Term(complex(amp), int(n), state))
        self.terms = tuple(checked)
        self._tol = tol

    def with_amplitudes(self, amplitudes) -> "Superposition":
        new = object.__new__(Superposition)
        new.gauge, new.params, new._tol = self.gauge, self.params, self._tol
        new.terms = tuple(Term(complex(a), t.level, t.state) for a, t in zip(amplitudes, self.terms))
        return new

    def evaluate(self, x, y):
        return sum(t.amplitude * t.state.evaluate(x, y) for t in self.terms)

    def __len__(self):
        return len(self.terms)


def time_evolve(s: Superposition, t: float, params: PhysicalParams) -> Superposition:
    """Multiply each amplitude by exp(-i E_n t / hbar)."""
    return s.with_amplitudes(
        t_.amplitude * cmath.exp(-1j * landau_level(t_.level, params) * t / params.hbar) for t_ in s.terms
    )
