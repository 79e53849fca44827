"""Closed-form Wess-Zumino evaluations.

Covers maps into a maximal torus, canonically embedded symmetric spaces,
degree maps through an equatorial 2-sphere, and harmonic maps of the
2-sphere, where the invariant is a closed function of the energy alone.
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple

from .angles import AngleClass, canonical_mod_2pi
from .rootsys import GroupData


class ClosedFormError(ValueError):
    pass


def _check_lattice_vector(g: GroupData, v: Sequence[int], name: str) -> None:
    if len(v) != g.rank:
        raise ClosedFormError(
            f"{name} has length {len(v)}, expected rank {g.rank} of {g.group_type}"
        )


def wz_torus_hom(g: GroupData, m: Sequence[int], n: Sequence[int]) -> AngleClass:
    """Invariant of the torus homomorphism determined by lattice points m, n.

    Equals pi * sum_ij S_ij m_i n_j; the parity reduction is exact, so the
    result is exactly 0 or pi.
    """
    _check_lattice_vector(g, m, "m")
    _check_lattice_vector(g, n, "n")
    total = 0
    for i in range(g.rank):
        for j in range(g.rank):
            total += g.s_matrix[i][j] * int(m[i]) * int(n[j])
    return AngleClass.from_pi_multiple(total)


def wz_symmetric_space(n: int) -> AngleClass:
    """Invariant for a map into a canonically embedded symmetric space.

    ``n`` is the coefficient of the generator of the second homology of the
    symmetric space, supplied by the caller.
    """
    return AngleClass.from_pi_multiple(int(n))


def wz_degree(deg: int) -> AngleClass:
    """Invariant of a composition through an equatorial 2-sphere of degree ``deg``."""
    return AngleClass.from_pi_multiple(int(deg))


def wz_sphere_harmonic(g: GroupData, energy: float) -> Tuple[AngleClass, float]:
    """Invariant of a harmonic 2-sphere map with the given energy.

    Returns the angle |beta|^2 E / 16 mod 2*pi together with the distance of
    |beta|^2 E / (16*pi) from the nearest integer, which vanishes for energies
    actually realized by harmonic maps.
    """
    if energy < 0:
        raise ClosedFormError(f"energy must be nonnegative, got {energy}")
    bns = float(g.beta_norm_sq)
    raw = bns * energy / 16.0
    quanta = raw / math.pi
    residual = abs(quanta - round(quanta))
    return AngleClass.from_raw(raw), residual


def wz_sphere_theta(g: GroupData, energy: float, theta: float) -> AngleClass:
    """Invariant along the deformation circle of a harmonic 2-sphere map.

    3*c*(theta - sin theta)*E with c = c_times_pi / pi.
    """
    if energy < 0:
        raise ClosedFormError(f"energy must be nonnegative, got {energy}")
    c_pi = float(g.c_times_pi)  # c * pi, exact rational part
    raw = 3.0 * c_pi * (theta - math.sin(theta)) * energy / math.pi
    return AngleClass.from_raw(raw)


def energy_quantum(g: GroupData) -> float:
    """Minimal positive harmonic 2-sphere energy: 16*pi/|beta|^2 = 16*pi*h_dual."""
    return 16.0 * math.pi * g.dual_coxeter


__all__ = [
    "ClosedFormError",
    "wz_torus_hom",
    "wz_symmetric_space",
    "wz_degree",
    "wz_sphere_harmonic",
    "wz_sphere_theta",
    "energy_quantum",
    "canonical_mod_2pi",
]
