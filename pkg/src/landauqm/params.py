"""Physical parameters and derived scales (CGS units).

The default profile is natural units, m = q = c = hbar = B = 1, so that the
cyclotron frequency and the magnetic length are both 1.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

PARAM_KEYS = ("m", "q", "B", "c", "hbar")


@dataclass(frozen=True)
class PhysicalParams:
    m: float = 1.0
    q: float = 1.0
    B: float = 1.0
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for key in PARAM_KEYS:
            value = float(getattr(self, key))
            if not math.isfinite(value):
                raise ValueError(f"parameter {key} must be finite, got {value}")
            object.__setattr__(self, key, value)
        if self.m <= 0 or self.c <= 0 or self.hbar <= 0:
            raise ValueError("m, c and hbar must be positive")
        if self.B == 0 or self.q == 0:
            raise ValueError("B and q must be nonzero")

    @classmethod
    def from_dict(cls, data: dict) -> "PhysicalParams":
        unknown = set(data) - set(PARAM_KEYS)
        if unknown:
            raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})

    @classmethod
    def from_json(cls, path) -> "PhysicalParams":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def omega_c(self) -> float:
        return cyclotron_frequency(self)


NATURAL = PhysicalParams()


def cyclotron_frequency(params: PhysicalParams) -> float:
    """Signed cyclotron frequency qB/(mc)."""
    return params.q * params.B / (params.m * params.c)


def magnetic_length(params: PhysicalParams) -> float:
    return math.sqrt(params.hbar / (params.m * abs(cyclotron_frequency(params))))


def landau_level(n: int, params: PhysicalParams) -> float:
    """Energy hbar*|omega_c|*(n + 1/2) of the n-th Landau level."""
    if n < 0:
        raise ValueError(f"Landau level index must be non-negative, got {n}")
    return params.hbar * abs(cyclotron_frequency(params)) * (n + 0.5)


def hall_resistivity(params: PhysicalParams, l1: float, l2: float) -> float:
    """Hall resistivity (hbar/q^2) * (m omega_c l1 l2 / hbar).

    At a quantized area, m omega_c l1 l2 / hbar = 2 pi k, this is 2 pi k hbar/q^2.
    """
    flux_number = params.m * cyclotron_frequency(params) * l1 * l2 / params.hbar
    return params.hbar / params.q**2 * flux_number
