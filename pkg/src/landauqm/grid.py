"""Finite-difference oracle on a uniform rectangular grid.

This module shares no code with the symbolic derivative machinery: fields are
sampled pointwise and operators act through second-order central stencils,
so agreement between the two is a real check rather than a tautology.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .params import PhysicalParams, cyclotron_frequency, magnetic_length
from .symbolic import GaussianPolynomial, PolyDiffOperator

# exp() overflows double precision just above this
_MAX_EXPONENT = 700.0
RESIDUAL_FLOOR = 1e-12


@dataclass(frozen=True)
class Grid2D:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not self.x_max > self.x_min or not self.y_max > self.y_min:
            raise ValueError("grid box must have positive extent")
        if self.nx < 8 or self.ny < 8:
            raise ValueError("grid needs at least 8 nodes per axis")

    @classmethod
    def square(cls, half_width: float, n: int) -> "Grid2D":
        return cls(-half_width, half_width, -half_width, half_width, n, n)

    @property
    def hx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def hy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def y(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def mesh(self):
        return np.meshgrid(self.x, self.y, indexing="ij")

    def weights(self) -> np.ndarray:
        """Trapezoidal quadrature weights, shape (nx, ny)."""
        wx = np.full(self.nx, self.hx)
        wx[[0, -1]] *= 0.5
        wy = np.full(self.ny, self.hy)
        wy[[0, -1]] *= 0.5
        return np.outer(wx, wy)


def default_grid(lam: float, params: PhysicalParams, n: int = 256) -> Grid2D:
    """Square box of half-width 8 * max(l_B, l_B + |lam|/(m w))."""
    lb = magnetic_length(params)
    offset = abs(lam) / (params.m * abs(cyclotron_frequency(params)))
    return Grid2D.square(8 * max(lb, lb + offset), n)


@dataclass
class GridField:
    """Complex samples on a grid, indexed [ix, iy] (x is the row index).

    ``valid`` marks nodes where the values are meaningful; stencil output
    invalidates the outer ring.
    """

    grid: Grid2D
    values: np.ndarray
    valid: np.ndarray = field(default=None)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.nx, self.grid.ny):
            raise ValueError(f"values shape {self.values.shape} does not match grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("grid field contains non-finite values")
        if self.valid is None:
            self.valid = np.ones(self.values.shape, dtype=bool)

    def norm(self) -> float:
        return math.sqrt(l2_inner(self, self).real)

    def __sub__(self, other: "GridField") -> "GridField":
        _check_same_grid(self, other)
        return GridField(self.grid, self.values - other.values, self.valid & other.valid)


def _check_same_grid(f: GridField, g: GridField):
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")


def sample(psi: GaussianPolynomial, grid: Grid2D) -> GridField:
    """Evaluate P(x, y) exp(Q(x, y)) at every node."""
    x, y = grid.x, grid.y
    X, Y = grid.mesh()
    q = psi.exponent.evaluate(X, Y)
    if np.max(q.real) > _MAX_EXPONENT:
        raise OverflowError("exponent exceeds the double-precision range on this grid")
    # tensor-product evaluation: P = Vx @ C @ Vy^T
    dx, dy = psi.degree()
    coeffs = np.zeros((dx + 1, dy + 1), dtype=complex)
    for (a, b), c in psi.poly.items():
        coeffs[a, b] = c
    vx = x[:, None] ** np.arange(dx + 1)
    vy = y[:, None] ** np.arange(dy + 1)
    values = (vx @ coeffs @ vy.T) * np.exp(q)
    return GridField(grid, values)


def fd_apply(op: PolyDiffOperator, f: GridField, backend: str | None = None) -> GridField:
    """Apply op with central differences; the outer node ring becomes invalid."""
    px, py = op.max_derivative_order()
    if px > 2 or py > 2:
        raise ValueError("finite-difference oracle supports derivative order <= 2 per axis")
    grid = f.grid
    X, Y = grid.mesh()
    derivs = {}
    out = np.zeros_like(f.values)
    for (a, b, p, q), c in sorted(op.terms.items()):
        if (p, q) not in derivs:
            d = kernels.fd_axis(f.values, 0, p, grid.hx, backend)
            derivs[(p, q)] = kernels.fd_axis(d, 1, q, grid.hy, backend)
        out += c * X**a * Y**b * derivs[(p, q)]
    valid = f.valid.copy()
    if px or py:
        valid[[0, -1], :] = False
        valid[:, [0, -1]] = False
    out[~valid] = 0
    return GridField(grid, out, valid)


def l2_inner(f: GridField, g: GridField) -> complex:
    """Trapezoidal <f, g> = sum w conj(f) g over nodes valid in both."""
    _check_same_grid(f, g)
    w = f.grid.weights() * (f.valid & g.valid)
    return complex(np.sum(w * np.conj(f.values) * g.values))


def residual_norm(op: PolyDiffOperator, e: complex, psi: GaussianPolynomial, grid: Grid2D) -> float:
    """||op psi - e psi|| / ||psi|| on the valid interior of the grid."""
    f = sample(psi, grid)
    hf = fd_apply(op, f)
    mask = hf.valid
    w = grid.weights() * mask
    denom = math.sqrt(np.sum(w * np.abs(f.values) ** 2))
    if denom == 0:
        raise ValueError("sampled field has zero norm on the grid interior")
    r = hf.values - e * f.values
    return math.sqrt(np.sum(w * np.abs(r) ** 2)) / denom


@dataclass(frozen=True)
class ConvergenceReport:
    order: float
    spacings: tuple
    residuals: tuple
    floor_limited: bool


def convergence_report(op, e, psi, grids) -> ConvergenceReport:
    """Least-squares slope of log(residual) against log(h) over nested grids."""
    if len(grids) < 3:
        raise ValueError("convergence study needs at least three grids")
    hs = [math.sqrt(g.hx * g.hy) for g in grids]
    rs = [residual_norm(op, e, psi, g) for g in grids]
    if max(rs) < RESIDUAL_FLOOR:
        return ConvergenceReport(float("nan"), tuple(hs), tuple(rs), True)
    slope = np.polyfit(np.log(hs), np.log(rs), 1)[0]
    return ConvergenceReport(float(slope), tuple(hs), tuple(rs), False)


def convergence_order(op, e, psi, grids) -> float:
    """Observed stencil order; NaN when every residual sits at the rounding floor."""
    return convergence_report(op, e, psi, grids).order


def write_csv(f: GridField, path) -> None:
    """Row-major "x,y,re,im" export with 17 significant digits."""
    X, Y = f.grid.mesh()
    with open(path, "w", newline="") as fh:
        fh.write("x,y,re,im\n")
        for xv, yv, z in zip(X.ravel(), Y.ravel(), f.values.ravel()):
            fh.write(f"{xv:.17g},{yv:.17g},{z.real:.17g},{z.imag:.17g}\n")


def read_csv(path) -> GridField:
    with open(Path(path), newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["x", "y", "re", "im"]:
            raise ValueError(f"unexpected CSV header {header}")
        rows = np.array([[float(v) for v in row] for row in reader])
    xs = np.unique(rows[:, 0])
    ys = np.unique(rows[:, 1])
    grid = Grid2D(xs[0], xs[-1], ys[0], ys[-1], len(xs), len(ys))
    values = (rows[:, 2] + 1j * rows[:, 3]).reshape(len(xs), len(ys))
    return GridField(grid, values)
