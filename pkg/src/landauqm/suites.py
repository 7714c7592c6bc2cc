"""Named verification suites shared by the command line front end.

Each suite takes validated options and tolerances and returns a list of
``Check`` records plus optional file writers; nothing here touches the disk
until a writer is called.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from . import classical, eigen, grid
from .gauge import (
    Gauge,
    apply_displacement,
    displacement,
    gauge_transform_L_to_S,
    hamiltonian,
    invariant_pair,
    momentum_x,
    momentum_y,
)
from .params import PhysicalParams, cyclotron_frequency, landau_level
from .symbolic import (
    GaussianPolynomial,
    PolyDiffOperator,
    QuadraticExponent,
    gp_is_multiple,
    gp_mul_exp,
    gp_residual,
    gp_translate,
    op_apply,
    op_commutator,
)


@dataclass(frozen=True)
class Check:
    name: str
    value: object
    bound: object
    passed: bool
    informational: bool = False

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "value": _jsonable(self.value),
            "bound": _jsonable(self.bound),
            "pass": bool(self.passed),
        }
        if self.informational:
            out["informational"] = True
        return out


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real + 0.0, v.imag + 0.0]
    if isinstance(v, float):
        return v + 0.0 if math.isfinite(v) else repr(v)
    return v


def upper(name: str, value: float, bound: float) -> Check:
    return Check(name, float(value), float(bound), bool(value <= bound))


DEFAULT_TOLERANCES = {
    "eigen_residual": 1e-10,
    "invariant_factor": 1e-12,
    "commutator": 1e-12,
    "displacement": 1e-10,
    "resum_l2": 1e-6,
    "phase": 1e-12,
    "flux_quantum": 1e-9,
    "invariant_drift": 1e-8,
    "radius": 1e-6,
    "gauge_agreement": 1e-8,
}

DEFAULT_LAMS = [-3.2, 0.0, 1.0, 7.5]

SUITE_OPTIONS = {
    "eigencheck": {"n_max": 10, "lams": DEFAULT_LAMS, "families": [str(f) for f in eigen.FAMILIES]},
    "commutators": {},
    "ladder": {"n_max": 3, "j_max": 5, "lams": [0.0, 1.0], "families": [str(f) for f in eigen.FAMILIES]},
    "resum": {"family": "landau-first", "n": 0, "lam": 1.0, "j_max": 40, "half_width": 10.0, "nodes": 256},
    "phase": {"lam1": math.sqrt(2 * math.pi), "lam2": math.sqrt(2 * math.pi), "n": 0},
    "flux": {"k_min": -3, "k_max": 3, "lam1": 1.0},
    "classical": {"x0": 0.0, "y0": 0.0, "vx": 1.0, "vy": 0.0, "periods": 10, "steps_per_period": 1000},
    "gauge-compare": {"n_max": 5, "lams": DEFAULT_LAMS},
    "grid-export": {"family": "landau-first", "n": 0, "lam": 0.0, "half_width": None, "nodes": 256,
                    "filename": "field.csv"},
    "classical-export": {"gauge": "landau", "x0": 0.0, "y0": 0.0, "vx": 1.0, "vy": 0.0, "periods": 1,
                         "steps_per_period": 1000, "filename": "trajectory.csv"},
}

EXPORT_SUITES = ("grid-export", "classical-export")


def eigencheck(params: PhysicalParams, opts: dict, tol: dict):
    checks = []
    for name in opts["families"]:
        fam = eigen.FamilyId.parse(name)
        h = hamiltonian(fam.gauge, params)
        inv = eigen.defining_invariant(fam, params)
        for lam in opts["lams"]:
            for n in range(opts["n_max"] + 1):
                psi = eigen.eigenfunction(fam, n, lam, params)
                r = gp_residual(h, landau_level(n, params), psi)
                checks.append(upper(f"eigen/{fam}/n={n}/lam={lam}", r, tol["eigen_residual"]))
            psi = eigen.eigenfunction(fam, 0, lam, params)
            c = gp_is_multiple(op_apply(inv, psi), psi, tol["invariant_factor"])
            expected = eigen.invariant_eigenvalue(fam, lam)
            err = math.inf if c is None else abs(c - expected)
            checks.append(upper(f"invariant/{fam}/lam={lam}", err, tol["invariant_factor"]))
    return checks, []


def commutators(params: PhysicalParams, opts: dict, tol: dict):
    hbar, mw = params.hbar, params.m * cyclotron_frequency(params)
    checks = []
    for gauge in Gauge:
        h = hamiltonian(gauge, params)
        first, second = invariant_pair(gauge, params)
        for label, op in (("first", first), ("second", second), ("H", h)):
            comm = op_commutator(op, h)
            checks.append(upper(f"[{label},H]/{gauge.value}", comm.max_abs_coeff(), tol["commutator"]))
        central = op_commutator(first, second) - PolyDiffOperator.identity(-1j * hbar * mw)
        checks.append(upper(f"[pi1,pi2]+i*hbar*m*w/{gauge.value}", central.max_abs_coeff(), tol["commutator"]))
    xp = op_commutator(PolyDiffOperator.x(), momentum_x(hbar)) - PolyDiffOperator.identity(1j * hbar)
    checks.append(upper("[x,px]-i*hbar", xp.max_abs_coeff(), tol["commutator"]))
    yp = op_commutator(PolyDiffOperator.y(), momentum_y(hbar)) - PolyDiffOperator.identity(1j * hbar)
    checks.append(upper("[y,py]-i*hbar", yp.max_abs_coeff(), tol["commutator"]))
    return checks, []


def ladder(params: PhysicalParams, opts: dict, tol: dict):
    checks = []
    for name in opts["families"]:
        fam = eigen.FamilyId.parse(name)
        h = hamiltonian(fam.gauge, params)
        for lam in opts["lams"]:
            for n in range(opts["n_max"] + 1):
                states = eigen._ladder(fam, n, opts["j_max"], lam, params)
                for j, state in enumerate(states):
                    r = gp_residual(h, landau_level(n, params), state)
                    checks.append(upper(f"ladder/{fam}/n={n}/j={j}/lam={lam}", r, tol["eigen_residual"]))
    return checks, []


def displacement_checks(params: PhysicalParams, n: int, lam: float, tol: float) -> list[Check]:
    """Displacement identities for all families, plus the sign-variant checks."""
    checks = []
    for fam in eigen.FAMILIES:
        moved = apply_displacement(eigen.partner_displacement(fam, lam, params), eigen.eigenfunction(fam, n, 0.0, params))
        target = eigen.eigenfunction(fam, n, eigen.displaced_label(fam, lam), params)
        c = gp_is_multiple(moved, target, tol)
        err = math.inf if c is None else abs(c - 1)
        checks.append(upper(f"displacement/{fam}/n={n}/lam={lam}", err, tol))
    checks.extend(variant_checks(params, n, lam, tol))
    return checks


def _holds(a: GaussianPolynomial, b: GaussianPolynomial, tol: float) -> bool:
    c = gp_is_multiple(a, b, tol)
    return c is not None and abs(c - 1) <= tol


def variant_checks(params: PhysicalParams, n: int, lam: float, tol: float = 1e-10) -> list[Check]:
    """Plausible sign and generator variants of the displacement identities.

    Informational only; ``passed`` says whether each variant holds, and for
    lam != 0 none of them should.
    """
    mw = params.m * cyclotron_frequency(params)
    out = []
    # phase exp(-i lam x/hbar) with the oscillator centred at y = -lam/(m w)
    variant = gp_mul_exp(eigen.eigenfunction(eigen.LANDAU_FIRST, n, -lam, params),
                         QuadraticExponent(b_x=-2j * lam / params.hbar))
    moved = apply_displacement(displacement(Gauge.LANDAU, eigen.Branch.FIRST, lam, params),
                               eigen.eigenfunction(eigen.LANDAU_FIRST, n, 0.0, params))
    out.append(Check("variant/landau-first-center-sign", lam, "variant", _holds(moved, variant, tol), True))
    r = gp_residual(hamiltonian(Gauge.LANDAU, params), landau_level(n, params), variant)
    out.append(Check("variant/landau-first-center-sign-eigen-residual", r, tol, r <= tol, True))
    # second displacement generated by p_y alone: a pure shift in y
    base = eigen.eigenfunction(eigen.LANDAU_SECOND, n, 0.0, params)
    moved = gp_translate(base, 0.0, lam / mw)
    target = eigen.eigenfunction(eigen.LANDAU_SECOND, n, lam, params)
    out.append(Check("variant/landau-second-generator-py", lam, "variant", _holds(moved, target, tol), True))
    # symmetric-first image read as label +lam; the exact image sits at -lam
    base = eigen.eigenfunction(eigen.SYMMETRIC_FIRST, n, 0.0, params)
    moved = apply_displacement(displacement(Gauge.SYMMETRIC, eigen.Branch.SECOND, lam, params), base)
    target = eigen.eigenfunction(eigen.SYMMETRIC_FIRST, n, lam, params)
    out.append(Check("variant/symmetric-first-label", lam, "variant", _holds(moved, target, tol), True))
    return out


def resum(params: PhysicalParams, opts: dict, tol: dict):
    fam = eigen.FamilyId.parse(opts["family"])
    n, lam = opts["n"], opts["lam"]
    g = grid.Grid2D.square(opts["half_width"], opts["nodes"])
    target = grid.sample(apply_displacement(eigen.partner_displacement(fam, lam, params),
                                            eigen.eigenfunction(fam, n, 0.0, params)), g)
    errors = []
    for j_max in range(opts["j_max"] + 1):
        approx = grid.sample(eigen.resum_displaced(fam, n, lam, j_max, params), g)
        errors.append((approx - target).norm())
    checks = [upper(f"resum/{fam}/n={n}/lam={lam}/j_max={opts['j_max']}", errors[-1], tol["resum_l2"])]
    tail = errors[10:]
    monotone = all(b < a for a, b in zip(tail, tail[1:]))
    checks.append(Check("resum/monotone-beyond-10", monotone, True, monotone))
    checks.extend(displacement_checks(params, n, lam, tol["displacement"]))
    return checks, []


# (family, state parameter, operator parameter, sign of the expected phase)
PHASE_RELATIONS = (
    (eigen.LANDAU_FIRST, "lam1", "lam2", +1),
    (eigen.LANDAU_SECOND, "lam2", "lam1", -1),
    (eigen.SYMMETRIC_FIRST, "lam2", "lam1", +1),
    (eigen.SYMMETRIC_SECOND, "lam1", "lam2", -1),
)


def phase(params: PhysicalParams, opts: dict, tol: dict):
    expected = eigen.flux_phase(opts["lam1"], opts["lam2"], params)
    checks = [Check("flux_phase", expected, "unit modulus", abs(abs(expected) - 1) <= tol["phase"])]
    for fam, state_key, op_key, sign in PHASE_RELATIONS:
        c = eigen.phase_relation(fam, opts["n"], opts[state_key], opts[op_key], params)
        want = expected if sign > 0 else expected.conjugate()
        err = math.inf if c is None else abs(c - want)
        checks.append(Check(f"phase/{fam}", c, want, err <= tol["phase"]))
    k = eigen.is_flux_quantized(opts["lam1"], opts["lam2"], params, tol["flux_quantum"])
    checks.append(Check("quantized_k", k, "integer", k is not None))
    return checks, []


def flux(params: PhysicalParams, opts: dict, tol: dict):
    mwh = params.m * cyclotron_frequency(params) * params.hbar
    lam1 = opts["lam1"]
    checks = []
    for k in range(opts["k_min"], opts["k_max"] + 1):
        lam2 = 2 * math.pi * k * mwh / lam1
        got = eigen.is_flux_quantized(lam1, lam2, params, tol["flux_quantum"])
        checks.append(Check(f"flux/k={k}", got, k, got == k))
        mid = 2 * math.pi * (k + 0.5) * mwh / lam1
        got = eigen.is_flux_quantized(lam1, mid, params, tol["flux_quantum"])
        checks.append(Check(f"flux/k={k}+1/2", got, None, got is None))
    return checks, []


def _classical_run(params, opts, gauge):
    period = classical.cyclotron_period(params)
    steps = opts["periods"] * opts["steps_per_period"]
    s0 = classical.state_from_velocity(gauge, opts["x0"], opts["y0"], opts["vx"], opts["vy"], params)
    return classical.rk4_integrate(gauge, s0, period / opts["steps_per_period"], steps, params)


def _drift_checks(traj, params, tol, prefix):
    inv = classical.invariants_along(traj, params)
    checks = []
    for idx, label in enumerate(("c1", "c2", "H")):
        start = inv[0, idx]
        drift = float(abs(inv[:, idx] - start).max())
        if start == 0:
            checks.append(upper(f"{prefix}/{label}/abs-drift", drift, 1e-10))
        else:
            checks.append(upper(f"{prefix}/{label}/rel-drift", drift / abs(start), tol["invariant_drift"]))
    return checks


def classical_suite(params: PhysicalParams, opts: dict, tol: dict):
    checks = []
    trajs = {}
    speed = math.hypot(opts["vx"], opts["vy"])
    for gauge in Gauge:
        traj = _classical_run(params, opts, gauge)
        trajs[gauge] = traj
        checks.extend(_drift_checks(traj, params, tol, f"classical/{gauge.value}"))
        r = classical.orbit_radius_estimate(traj)
        expected = speed / abs(cyclotron_frequency(params))
        checks.append(upper(f"classical/{gauge.value}/radius-error", abs(r - expected), tol["radius"] * max(1, expected)))
    gap = float(abs(trajs[Gauge.LANDAU].positions - trajs[Gauge.SYMMETRIC].positions).max())
    checks.append(upper("classical/gauge-agreement", gap, tol["gauge_agreement"]))
    return checks, []


def gauge_compare(params: PhysicalParams, opts: dict, tol: dict):
    h_s = hamiltonian(Gauge.SYMMETRIC, params)
    checks = []
    partner = {eigen.LANDAU_FIRST: (eigen.SYMMETRIC_FIRST, -1), eigen.LANDAU_SECOND: (eigen.SYMMETRIC_SECOND, +1)}
    for fam in (eigen.LANDAU_FIRST, eigen.LANDAU_SECOND):
        for lam in opts["lams"]:
            for n in range(opts["n_max"] + 1):
                psi_s = gauge_transform_L_to_S(eigen.eigenfunction(fam, n, lam, params), params)
                r = gp_residual(h_s, landau_level(n, params), psi_s)
                checks.append(upper(f"covariance/{fam}/n={n}/lam={lam}", r, tol["eigen_residual"]))
            # which symmetric family member the transformed state is, if any
            target_fam, sign = partner[fam]
            psi_s = gauge_transform_L_to_S(eigen.eigenfunction(fam, 0, lam, params), params)
            member = _holds(psi_s, eigen.eigenfunction(target_fam, 0, sign * lam, params), tol["eigen_residual"])
            checks.append(Check(f"membership/{fam}->{target_fam}/lam={lam}", sign * lam, "label", member, True))
    return checks, []


def grid_export(params: PhysicalParams, opts: dict, tol: dict):
    fam = eigen.FamilyId.parse(opts["family"])
    psi = eigen.eigenfunction(fam, opts["n"], opts["lam"], params)
    if opts["half_width"] is None:
        g = grid.default_grid(opts["lam"], params, opts["nodes"])
    else:
        g = grid.Grid2D.square(opts["half_width"], opts["nodes"])
    field = grid.sample(psi, g)
    checks = []

    def write(out_dir: Path):
        path = out_dir / opts["filename"]
        grid.write_csv(field, path)
        back = grid.read_csv(path)
        exact = bool((back.values == field.values).all()) and back.grid == g
        checks.append(Check("grid-export/roundtrip-exact", exact, True, exact))

    return checks, [write]


def classical_export(params: PhysicalParams, opts: dict, tol: dict):
    gauge = Gauge(opts["gauge"])
    traj = _classical_run(params, opts, gauge)
    checks = _drift_checks(traj, params, tol, f"classical-export/{gauge.value}")

    def write(out_dir: Path):
        classical.write_trajectory_csv(traj, params, out_dir / opts["filename"])

    return checks, [write]


SUITES = {
    "eigencheck": eigencheck,
    "commutators": commutators,
    "ladder": ladder,
    "resum": resum,
    "phase": phase,
    "flux": flux,
    "classical": classical_suite,
    "gauge-compare": gauge_compare,
    "grid-export": grid_export,
    "classical-export": classical_export,
}
