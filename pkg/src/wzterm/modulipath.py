"""Line-bundle holonomy along sampled paths of flat connections on the 2-torus.

A path is given by Cartan-subalgebra coordinates a1(t), a2(t) in the simple
coroot basis.  For closed loops ending at lattice points the holonomy is
exp(48*pi^2*c*i * int B(a1, a2') dt), computed with trapezoid quadrature and
centered finite differences.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .rootsys import GroupData

LATTICE_TOL = 1e-9


class PathError(ValueError):
    pass


def coroot_gram(g: GroupData) -> np.ndarray:
    """Killing Gram matrix of the simple coroots as floats.

    Entry (i,j) is (S_ij/2) * B(coroot_beta, coroot_beta) with the highest
    coroot's square norm equal to -4/|beta|^2 = -4*h_dual.
    """
    return np.array(
        [[float(q) for q in row] for row in g.coroot_killing_gram()], dtype=float
    )


def killing_pairing(g: GroupData, x: Sequence[float], y: Sequence[float]) -> float:
    """B(x, y) for Cartan elements in simple-coroot coordinates."""
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    if xv.shape != (g.rank,) or yv.shape != (g.rank,):
        raise PathError(
            f"expected coordinate vectors of length {g.rank}, "
            f"got shapes {xv.shape} and {yv.shape}"
        )
    return float(xv @ coroot_gram(g) @ yv)


@dataclass
class CartanPath:
    """Sampled path t -> (a1(t), a2(t)) in the Cartan subalgebra."""

    group: GroupData
    t: np.ndarray          # shape (n,), increasing, t[0] = 0
    a1: np.ndarray         # shape (n, rank)
    a2: np.ndarray         # shape (n, rank)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.a1 = np.atleast_2d(np.asarray(self.a1, dtype=float))
        self.a2 = np.atleast_2d(np.asarray(self.a2, dtype=float))
        n = self.t.shape[0]
        rank = self.group.rank
        if self.a1.shape != (n, rank) or self.a2.shape != (n, rank):
            raise PathError(
                f"sample shapes {self.a1.shape}, {self.a2.shape} do not match "
                f"({n}, {rank})"
            )
        if n < 2:
            raise PathError("need at least 2 samples")
        if abs(self.t[0]) > 0:
            raise PathError("t samples must start at 0")
        if np.any(np.diff(self.t) <= 0):
            raise PathError("t samples must be strictly increasing")

    @classmethod
    def straight_to_lattice(
        cls, g: GroupData, m: Sequence[int], n: Sequence[int], samples: int = 10_000
    ) -> "CartanPath":
        """Straight line from the origin to the lattice point (m, n)."""
        t = np.linspace(0.0, 1.0, samples)
        mv = np.asarray(m, dtype=float)
        nv = np.asarray(n, dtype=float)
        return cls(group=g, t=t, a1=np.outer(t, mv), a2=np.outer(t, nv))

    @classmethod
    def from_json_dict(cls, d: dict, group: GroupData) -> "CartanPath":
        return cls(
            group=group,
            t=np.asarray(d["t"], dtype=float),
            a1=np.asarray(d["a1"], dtype=float),
            a2=np.asarray(d["a2"], dtype=float),
        )

    @classmethod
    def from_json(cls, text: str, group: GroupData) -> "CartanPath":
        return cls.from_json_dict(json.loads(text), group)

    def is_closed_loop(self, tol: float = LATTICE_TOL) -> bool:
        """Start at the origin, end on the coroot lattice."""
        if np.max(np.abs(self.a1[0])) > tol or np.max(np.abs(self.a2[0])) > tol:
            return False
        end_ok = lambda v: np.max(np.abs(v - np.round(v))) <= tol
        return end_ok(self.a1[-1]) and end_ok(self.a2[-1])


def _derivative(values: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Centered differences, one-sided (second order) at the endpoints."""
    return np.gradient(values, t, axis=0, edge_order=2)


def cs_connection_form(p: CartanPath) -> np.ndarray:
    """Per-sample values of 6c*(B(a1, a2') - B(a2, a1'))."""
    if p.t.shape[0] < 2:
        raise PathError("need at least 2 samples")
    gram = coroot_gram(p.group)
    a1p = _derivative(p.a1, p.t)
    a2p = _derivative(p.a2, p.t)
    six_c = 6.0 * float(p.group.c_times_pi) / np.pi
    return six_c * (
        np.einsum("ni,ij,nj->n", p.a1, gram, a2p)
        - np.einsum("ni,ij,nj->n", p.a2, gram, a1p)
    )


def holonomy_exponent(p: CartanPath) -> float:
    """The real number x with holonomy exp(i*x): 48*pi^2*c * int B(a1,a2') dt."""
    if p.t.shape[0] < 3:
        raise PathError("need at least 3 samples for a closed-loop holonomy")
    if not p.is_closed_loop():
        raise PathError(
            "path is not a closed loop (must start at 0 and end at lattice points)"
        )
    gram = coroot_gram(p.group)
    a2p = _derivative(p.a2, p.t)
    integrand = np.einsum("ni,ij,nj->n", p.a1, gram, a2p)
    integral = float(np.trapezoid(integrand, p.t))
    # 48*pi^2*c = 48*pi*c_times_pi = -pi/h_dual
    return 48.0 * np.pi * float(p.group.c_times_pi) * integral


def path_holonomy(p: CartanPath) -> complex:
    """Unit-modulus holonomy of the Chern-Simons line bundle around the loop."""
    return cmath.exp(1j * holonomy_exponent(p))
