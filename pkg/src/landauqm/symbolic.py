"""Exact calculus on P(x, y) * exp(Q(x, y)) with polynomial P and quadratic Q.

Functions of this class are closed under d/dx, d/dy, multiplication by x and y,
translation and multiplication by another quadratic exponential, so every
eigenfunction and every operator image needed downstream stays inside it.

Differential operators are finite sums c * x^a y^b d_x^p d_y^q kept in normal
order (multiplications left of derivatives) and merged by exponent tuple.
Equality of operators is equality of their normal forms.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, fields

import numpy as np

Poly = dict  # {(xpow, ypow): complex}


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _prune(poly: Poly) -> Poly:
    return {k: v for k, v in poly.items() if v != 0}


def _poly_add(p: Poly, q: Poly, scale: complex = 1.0) -> Poly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0j) + scale * v
    return out


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, 0j) + c1 * c2
    return out


def _poly_norm(p: Poly) -> float:
    return math.sqrt(sum(abs(v) ** 2 for v in p.values()))


def _fmt_complex(z: complex) -> str:
    # + 0.0 folds negative zero so golden files are stable
    return f"({z.real + 0.0!r}{z.imag + 0.0:+}j)"


@dataclass(frozen=True)
class QuadraticExponent:
    """Q(x, y) = a_xx x^2 + a_yy y^2 + a_xy x y + b_x x + b_y y + g."""

    a_xx: complex = 0j
    a_yy: complex = 0j
    a_xy: complex = 0j
    b_x: complex = 0j
    b_y: complex = 0j
    g: complex = 0j

    def __post_init__(self):
        for f in fields(self):
            value = complex(getattr(self, f.name))
            if not _finite(value):
                raise ValueError(f"non-finite exponent coefficient {f.name}={value}")
            object.__setattr__(self, f.name, value)

    def coefficients(self) -> tuple:
        return (self.a_xx, self.a_yy, self.a_xy, self.b_x, self.b_y, self.g)

    def __add__(self, other: "QuadraticExponent") -> "QuadraticExponent":
        return QuadraticExponent(*(a + b for a, b in zip(self.coefficients(), other.coefficients())))

    def shifted(self, dx: float, dy: float) -> "QuadraticExponent":
        """Exponent of Q(x - dx, y - dy), constants absorbed into g."""
        a_xx, a_yy, a_xy, b_x, b_y, g = self.coefficients()
        return QuadraticExponent(
            a_xx,
            a_yy,
            a_xy,
            b_x - 2 * a_xx * dx - a_xy * dy,
            b_y - 2 * a_yy * dy - a_xy * dx,
            g + a_xx * dx * dx + a_yy * dy * dy + a_xy * dx * dy - b_x * dx - b_y * dy,
        )

    def grad(self) -> tuple[Poly, Poly]:
        dq_dx = _prune({(1, 0): 2 * self.a_xx, (0, 1): self.a_xy, (0, 0): self.b_x})
        dq_dy = _prune({(0, 1): 2 * self.a_yy, (1, 0): self.a_xy, (0, 0): self.b_y})
        return dq_dx, dq_dy

    def evaluate(self, x, y):
        return (
            self.a_xx * x * x
            + self.a_yy * y * y
            + self.a_xy * x * y
            + self.b_x * x
            + self.b_y * y
            + self.g
        )

    def is_linear_imaginary(self) -> bool:
        return (
            self.a_xx == 0
            and self.a_yy == 0
            and self.a_xy == 0
            and self.b_x.real == 0
            and self.b_y.real == 0
            and self.g.real == 0
        )


class GaussianPolynomial:
    """P(x, y) * exp(Q(x, y)), P stored as a sparse table without zero entries.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("poly", "exponent")

    def __init__(self, poly: Poly | None = None, exponent: QuadraticExponent | None = None):
        table = {}
        for (a, b), v in (poly or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative monomial degree {(a, b)}")
            v = complex(v)
            if not _finite(v):
                raise ValueError(f"non-finite coefficient at {(a, b)}")
            if v != 0:
                table[(int(a), int(b))] = v
        self.poly = table
        self.exponent = exponent if exponent is not None else QuadraticExponent()

    @classmethod
    def constant(cls, c: complex = 1.0, exponent: QuadraticExponent | None = None):
        return cls({(0, 0): c}, exponent)

    @classmethod
    def monomial(cls, a: int, b: int, c: complex = 1.0, exponent: QuadraticExponent | None = None):
        return cls({(a, b): c}, exponent)

    def is_zero(self) -> bool:
        return not self.poly

    def coeff_norm(self) -> float:
        return _poly_norm(self.poly)

    def degree(self) -> tuple[int, int]:
        """Maximum x-degree and y-degree of the polynomial part."""
        if not self.poly:
            return (0, 0)
        return (max(a for a, _ in self.poly), max(b for _, b in self.poly))

    def with_poly(self, poly: Poly) -> "GaussianPolynomial":
        return GaussianPolynomial(poly, self.exponent)

    def _check_same_exponent(self, other: "GaussianPolynomial"):
        if self.exponent != other.exponent:
            raise ValueError("sum of Gaussian polynomials with different exponents leaves the class")

    def __add__(self, other: "GaussianPolynomial") -> "GaussianPolynomial":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        self._check_same_exponent(other)
        return self.with_poly(_poly_add(self.poly, other.poly))

    def __sub__(self, other: "GaussianPolynomial") -> "GaussianPolynomial":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "GaussianPolynomial":
        scalar = complex(scalar)
        return self.with_poly({k: scalar * v for k, v in self.poly.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return -1.0 * self

    def dx(self) -> "GaussianPolynomial":
        dq_dx, _ = self.exponent.grad()
        out = {(a - 1, b): a * c for (a, b), c in self.poly.items() if a > 0}
        return self.with_poly(_poly_add(out, _poly_mul(self.poly, dq_dx)))

    def dy(self) -> "GaussianPolynomial":
        _, dq_dy = self.exponent.grad()
        out = {(a, b - 1): b * c for (a, b), c in self.poly.items() if b > 0}
        return self.with_poly(_poly_add(out, _poly_mul(self.poly, dq_dy)))

    def mul_monomial(self, a: int, b: int) -> "GaussianPolynomial":
        if a == 0 and b == 0:
            return self
        return self.with_poly({(i + a, j + b): c for (i, j), c in self.poly.items()})

    def evaluate(self, x, y):
        """Pointwise value P(x, y) exp(Q(x, y)); x and y broadcast."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        p = np.zeros(np.broadcast(x, y).shape, dtype=complex)
        for (a, b), c in sorted(self.poly.items()):
            p = p + c * x**a * y**b
        return p * np.exp(self.exponent.evaluate(x, y))

    def __repr__(self):
        return f"GaussianPolynomial(terms={len(self.poly)}, exponent={self.exponent})"


class PolyDiffOperator:
    """Normal-ordered sum of c * x^a y^b d_x^p d_y^q.

    ``terms`` maps (a, b, p, q) to the complex coefficient; zero coefficients
    are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        if not isinstance(terms, dict):
            merged = {}
            for c, a, b, p, q in terms:
                merged[(a, b, p, q)] = merged.get((a, b, p, q), 0j) + c
            terms = merged
        table = {}
        for key, v in terms.items():
            if len(key) != 4 or min(key) < 0:
                raise ValueError(f"invalid operator term {key}")
            v = complex(v)
            if not _finite(v):
                raise ValueError(f"non-finite operator coefficient at {key}")
            if v != 0:
                table[tuple(int(k) for k in key)] = v
        self.terms = table

    @classmethod
    def identity(cls, c: complex = 1.0):
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def x(cls):
        return cls({(1, 0, 0, 0): 1.0})

    @classmethod
    def y(cls):
        return cls({(0, 1, 0, 0): 1.0})

    @classmethod
    def dx(cls):
        return cls({(0, 0, 1, 0): 1.0})

    @classmethod
    def dy(cls):
        return cls({(0, 0, 0, 1): 1.0})

    def __add__(self, other: "PolyDiffOperator") -> "PolyDiffOperator":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0j) + v
        return PolyDiffOperator(out)

    def __sub__(self, other: "PolyDiffOperator") -> "PolyDiffOperator":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "PolyDiffOperator":
        scalar = complex(scalar)
        return PolyDiffOperator({k: scalar * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return -1.0 * self

    def __matmul__(self, other: "PolyDiffOperator") -> "PolyDiffOperator":
        return op_compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, PolyDiffOperator):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_abs_coeff() <= tol

    def max_abs_coeff(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def max_derivative_order(self) -> tuple[int, int]:
        return (
            max((k[2] for k in self.terms), default=0),
            max((k[3] for k in self.terms), default=0),
        )

    def allclose(self, other: "PolyDiffOperator", tol: float = 1e-12) -> bool:
        return (self - other).is_zero(tol)

    def __repr__(self):
        return f"PolyDiffOperator({format_operator(self)!r})"


def _leibniz(p: int, a: int):
    """Yield (coeff, k) for d^p x^a = sum_k C(p,k) a!/(a-k)! x^(a-k) d^(p-k)."""
    for k in range(min(p, a) + 1):
        yield math.comb(p, k) * math.perm(a, k), k


def op_compose(a: PolyDiffOperator, b: PolyDiffOperator) -> PolyDiffOperator:
    """Normal form of the product a * b (b acts first)."""
    out: dict = {}
    for (a1, b1, p1, q1), c1 in a.terms.items():
        for (a2, b2, p2, q2), c2 in b.terms.items():
            for cx, k in _leibniz(p1, a2):
                for cy, l in _leibniz(q1, b2):
                    key = (a1 + a2 - k, b1 + b2 - l, p1 - k + p2, q1 - l + q2)
                    out[key] = out.get(key, 0j) + c1 * c2 * cx * cy
    return PolyDiffOperator(out)


def op_commutator(a: PolyDiffOperator, b: PolyDiffOperator) -> PolyDiffOperator:
    return op_compose(a, b) - op_compose(b, a)


def op_apply(op: PolyDiffOperator, psi: GaussianPolynomial) -> GaussianPolynomial:
    derivs = {(0, 0): psi}

    def deriv(p, q):
        if (p, q) not in derivs:
            derivs[(p, q)] = deriv(p - 1, q).dx() if p > 0 else deriv(p, q - 1).dy()
        return derivs[(p, q)]

    out: Poly = {}
    for (a, b, p, q), c in sorted(op.terms.items()):
        term = deriv(p, q)
        for (i, j), v in term.poly.items():
            key = (i + a, j + b)
            out[key] = out.get(key, 0j) + c * v
    return GaussianPolynomial(out, psi.exponent)


def gp_translate(psi: GaussianPolynomial, dx: float, dy: float) -> GaussianPolynomial:
    """Exact representation of psi(x - dx, y - dy)."""
    if dx == 0 and dy == 0:
        return psi
    out: Poly = {}
    for (a, b), c in psi.poly.items():
        xs = [(i, math.comb(a, i) * (-dx) ** (a - i)) for i in range(a + 1)] if dx else [(a, 1.0)]
        ys = [(k, math.comb(b, k) * (-dy) ** (b - k)) for k in range(b + 1)] if dy else [(b, 1.0)]
        for i, cx in xs:
            for k, cy in ys:
                out[(i, k)] = out.get((i, k), 0j) + c * cx * cy
    return GaussianPolynomial(out, psi.exponent.shifted(dx, dy))


def gp_mul_exp(psi: GaussianPolynomial, q: QuadraticExponent) -> GaussianPolynomial:
    return GaussianPolynomial(psi.poly, psi.exponent + q)


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def gp_is_multiple(psi1: GaussianPolynomial, psi2: GaussianPolynomial, tol: float = 1e-12):
    """Return c with psi1 = c * psi2 within ``tol``, or None.

    The non-constant exponent coefficients must agree; a difference in the
    constant g is a scalar factor and is folded into c.
    """
    if psi2.is_zero():
        raise ValueError("reference function is identically zero")
    if tol <= 0:
        raise ValueError("tol must be positive")
    e1, e2 = psi1.exponent.coefficients(), psi2.exponent.coefficients()
    if not all(_close(u, v, tol) for u, v in zip(e1[:5], e2[:5])):
        return None
    p1, p2 = psi1.poly, psi2.poly
    ratio = sum(p2[k].conjugate() * p1.get(k, 0j) for k in p2) / sum(abs(v) ** 2 for v in p2.values())
    misfit = _poly_add(p1, p2, -ratio)
    if _poly_norm(misfit) > tol * _poly_norm(p1):
        return None
    return ratio * cmath.exp(e1[5] - e2[5])


def gp_allclose(psi1: GaussianPolynomial, psi2: GaussianPolynomial, tol: float = 1e-10) -> bool:
    c = gp_is_multiple(psi1, psi2, tol)
    return c is not None and abs(c - 1) <= tol


def gp_residual(op: PolyDiffOperator, e: complex, psi: GaussianPolynomial) -> float:
    """Relative coefficient-norm residual ||(op - e) psi|| / ||psi||."""
    if psi.is_zero():
        raise ValueError("residual of the zero function is meaningless")
    image = op_apply(op, psi)
    diff = _poly_add(image.poly, psi.poly, -complex(e))
    return _poly_norm(diff) / psi.coeff_norm()


def format_operator(op: PolyDiffOperator) -> str:
    if not op.terms:
        return "0"
    return "\n".join(
        f"{_fmt_complex(c)} x^{a} y^{b} dx^{p} dy^{q}" for (a, b, p, q), c in sorted(op.terms.items())
    )


def format_gp(psi: GaussianPolynomial) -> str:
    names = ("a_xx", "a_yy", "a_xy", "b_x", "b_y", "g")
    lines = [f"exp {n} {_fmt_complex(v)}" for n, v in zip(names, psi.exponent.coefficients())]
    lines += [f"poly x^{a} y^{b} {_fmt_complex(c)}" for (a, b), c in sorted(psi.poly.items())]
    return "\n".join(lines)
