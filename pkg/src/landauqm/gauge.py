"""Hamiltonians, constants of motion and magnetic displacements for two gauges.

Landau gauge A = B(-y, 0, 0); symmetric gauge A = (B/2)(-y, x, 0).
Momenta are p = -i hbar d/dx_k. Operators use the signed cyclotron frequency.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .params import PhysicalParams, cyclotron_frequency
from .symbolic import (
    GaussianPolynomial,
    PolyDiffOperator,
    QuadraticExponent,
    gp_mul_exp,
    gp_translate,
)


class Gauge(enum.Enum):
    LANDAU = "landau"
    SYMMETRIC = "symmetric"


class Branch(enum.Enum):
    FIRST = "first"
    SECOND = "second"


def _omega(params: PhysicalParams, omega_c: float | None) -> float:
    return cyclotron_frequency(params) if omega_c is None else float(omega_c)


def momentum_x(hbar: float) -> PolyDiffOperator:
    return PolyDiffOperator({(0, 0, 1, 0): -1j * hbar})


def momentum_y(hbar: float) -> PolyDiffOperator:
    return PolyDiffOperator({(0, 0, 0, 1): -1j * hbar})


def kinetic_momenta(gauge: Gauge, params: PhysicalParams, omega_c: float | None = None):
    """(p_x - qA_x/c, p_y - qA_y/c) as operators."""
    mw = params.m * _omega(params, omega_c)
    px, py = momentum_x(params.hbar), momentum_y(params.hbar)
    x, y = PolyDiffOperator.x(), PolyDiffOperator.y()
    if gauge is Gauge.LANDAU:
        return px + mw * y, py
    return px + (mw / 2) * y, py - (mw / 2) * x


def hamiltonian(gauge: Gauge, params: PhysicalParams, *, omega_c: float | None = None) -> PolyDiffOperator:
    """Normal-ordered (Pi_x^2 + Pi_y^2)/2m for the given gauge.

    ``omega_c`` overrides the frequency derived from ``params``; passing 0
    gives the free-particle limit, which cannot be expressed through
    PhysicalParams since B = 0 is not a valid field.
    """
    pi_x, pi_y = kinetic_momenta(gauge, params, omega_c)
    return (1 / (2 * params.m)) * (pi_x @ pi_x + pi_y @ pi_y)


def invariant_pair(gauge: Gauge, params: PhysicalParams, *, omega_c: float | None = None):
    """The two linear constants of motion of the gauge.

    Landau: (p_x, p_y + m w x). Symmetric: (p_x - m w y/2, p_y + m w x/2).
    """
    mw = params.m * _omega(params, omega_c)
    px, py = momentum_x(params.hbar), momentum_y(params.hbar)
    x, y = PolyDiffOperator.x(), PolyDiffOperator.y()
    if gauge is Gauge.LANDAU:
        return px, py + mw * x
    return px - (mw / 2) * y, py + (mw / 2) * x


@dataclass(frozen=True)
class DisplacementOp:
    """psi(x, y) -> exp(phase(x, y)) * psi(x - dx, y - dy).

    ``shift`` is (dx, dy) in the convention of ``gp_translate``. The phase is
    purely imaginary and linear, so the map is unitary.
    """

    shift: tuple[float, float]
    phase: QuadraticExponent

    def __post_init__(self):
        object.__setattr__(self, "shift", (float(self.shift[0]), float(self.shift[1])))
        if not self.phase.is_linear_imaginary():
            raise ValueError("displacement phase must be linear and purely imaginary")

    def __call__(self, psi: GaussianPolynomial) -> GaussianPolynomial:
        return apply_displacement(self, psi)


def displacement(gauge: Gauge, which: Branch, lam: float, params: PhysicalParams) -> DisplacementOp:
    """Closed form of exp(-i lam G / (hbar m w)) for the generator G.

    Landau first:     G = p_y + m w x
    Landau second:    G = p_x
    Symmetric first:  G = p_x - m w y/2
    Symmetric second: G = p_y + m w x/2

    Translation and multiplication parts of each G commute, so the exponential
    splits exactly into a shift by lam/(m w) and a linear phase.
    """
    omega = cyclotron_frequency(params)
    if omega == 0:
        raise ValueError("displacements need a nonzero cyclotron frequency")
    length = lam / (params.m * omega)
    k = lam / params.hbar
    if gauge is Gauge.LANDAU:
        if which is Branch.FIRST:
            return DisplacementOp((0.0, length), QuadraticExponent(b_x=-1j * k))
        return DisplacementOp((length, 0.0), QuadraticExponent())
    if which is Branch.FIRST:
        return DisplacementOp((length, 0.0), QuadraticExponent(b_y=0.5j * k))
    return DisplacementOp((0.0, length), QuadraticExponent(b_x=-0.5j * k))


def displacement_generator(gauge: Gauge, which: Branch, params: PhysicalParams) -> PolyDiffOperator:
    """Generator G whose exponential ``displacement`` returns."""
    px = momentum_x(params.hbar)
    if gauge is Gauge.LANDAU and which is Branch.SECOND:
        return px
    first, second = invariant_pair(gauge, params)
    if gauge is Gauge.LANDAU:
        return second
    return first if which is Branch.FIRST else second


def apply_displacement(d: DisplacementOp, psi: GaussianPolynomial) -> GaussianPolynomial:
    return gp_mul_exp(gp_translate(psi, *d.shift), d.phase)


def gauge_transform_L_to_S(
    psi: GaussianPolynomial, params: PhysicalParams, *, omega_c: float | None = None
) -> GaussianPolynomial:
    """Multiply by exp(i m w x y / 2 hbar), i.e. chi = B x y / 2."""
    mw = params.m * _omega(params, omega_c)
    return gp_mul_exp(psi, QuadraticExponent(a_xy=0.5j * mw / params.hbar))
