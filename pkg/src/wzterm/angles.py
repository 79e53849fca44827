"""Angles carried modulo 2*pi, with nearest-multiple-of-pi diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

TWO_PI = 2.0 * math.pi

DEFAULT_ANGLE_TOL = 1e-9


def canonical_mod_2pi(x: float) -> float:
    """Reduce into [0, 2*pi)."""
    y = math.fmod(x, TWO_PI)
    if y < 0.0:
        y += TWO_PI
    if y >= TWO_PI:  # fmod rounding can land exactly on 2*pi
        y -= TWO_PI
    return y


def circle_distance(x: float, y: float) -> float:
    """Distance between two angles on R/2*pi*Z."""
    d = canonical_mod_2pi(x - y)
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class AngleClass:
    """A raw angle together with its canonical representative mod 2*pi.

    ``pi_multiple`` is set when the canonical value sits within ``tol`` of an
    integer multiple of pi (the residual is recorded either way).
    """

    raw: float
    canonical: float
    pi_multiple: Optional[int]
    pi_residual: float

    @classmethod
    def from_raw(cls, raw: float, tol: float = DEFAULT_ANGLE_TOL) -> "AngleClass":
        canonical = canonical_mod_2pi(raw)
        n = round(canonical / math.pi)
        residual = min(
            circle_distance(canonical, k * math.pi) for k in (n - 1, n, n + 1)
        )
        best = min((n - 1, n, n + 1), key=lambda k: circle_distance(canonical, k * math.pi))
        best %= 2
        return cls(
            raw=raw,
            canonical=canonical,
            pi_multiple=best if residual < tol else None,
            pi_residual=residual,
        )

    @classmethod
    def from_pi_multiple(cls, n: int, raw: Optional[float] = None) -> "AngleClass":
        """Exact angle n*pi; parity reduced without floating-point mod."""
        parity = n % 2
        return cls(
            raw=n * math.pi if raw is None else raw,
            canonical=parity * math.pi,
            pi_multiple=parity,
            pi_residual=0.0,
        )

    def to_json_dict(self) -> dict:
        return {
            "raw": self.raw,
            "canonical": self.canonical,
            "pi_multiple": self.pi_multiple,
            "pi_residual": self.pi_residual,
        }
