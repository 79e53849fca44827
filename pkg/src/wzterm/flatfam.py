"""Discrete verification layer for SU(2) torus maps.

A map is a periodic grid of unit quaternions on R^2/2piZ^2.  From it we pull
back the logarithmic derivative, build the circle of connections, check
flatness and integrate the energy, giving finite-difference evidence for the
spectral-side closed forms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

UNIT_TOL = 1e-12

# su(2) Killing form B(X, Y) = 4*tr(XY); pins B(diag(i,-i), diag(i,-i)) = -8.
KILLING_SCALE = 4.0


class GridError(ValueError):
    pass


def quaternions_to_su2(q: np.ndarray) -> np.ndarray:
    """(...,4) quaternions (a,b,c,d) -> (...,2,2) SU(2) matrices [[a+bi, c+di], [-c+di, a-bi]]."""
    a, b, c, d = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(q.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = a + 1j * b
    out[..., 0, 1] = c + 1j * d
    out[..., 1, 0] = -c + 1j * d
    out[..., 1, 1] = a - 1j * b
    return out


@dataclass
class DiscreteTorusMap:
    """Periodic nx-by-ny grid of unit quaternions; spacing (2*pi/nx, 2*pi/ny)."""

    nx: int
    ny: int
    q: np.ndarray  # shape (nx, ny, 4)

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=float)
        if self.nx < 8 or self.ny < 8:
            raise GridError("grid must be at least 8x8")
        if self.q.shape != (self.nx, self.ny, 4):
            raise GridError(f"quaternion grid shape {self.q.shape} != ({self.nx}, {self.ny}, 4)")
        norms = np.linalg.norm(self.q, axis=-1)
        err = float(np.max(np.abs(norms - 1.0)))
        if err > UNIT_TOL:
            raise GridError(f"quaternions not unit length (max error {err:.3e})")

    @property
    def spacing(self) -> Tuple[float, float]:
        return 2.0 * np.pi / self.nx, 2.0 * np.pi / self.ny

    def matrices(self) -> np.ndarray:
        return quaternions_to_su2(self.q)

    @classmethod
    def clifford(cls, nx: int, ny: int) -> "DiscreteTorusMap":
        """The flat minimal torus (x, y) -> (e^{ix}, e^{iy})/sqrt(2) sampled on the grid."""
        x = 2.0 * np.pi * np.arange(nx) / nx
        y = 2.0 * np.pi * np.arange(ny) / ny
        X, Y = np.meshgrid(x, y, indexing="ij")
        inv_sqrt2 = 1.0 / np.sqrt(2.0)
        q = np.stack(
            [
                np.cos(X) * inv_sqrt2,
                np.sin(X) * inv_sqrt2,
                np.cos(Y) * inv_sqrt2,
                np.sin(Y) * inv_sqrt2,
            ],
            axis=-1,
        )
        return cls(nx=nx, ny=ny, q=q)

    @classmethod
    def from_json_dict(cls, d: dict) -> "DiscreteTorusMap":
        nx, ny = int(d["nx"]), int(d["ny"])
        q = np.asarray(d["q"], dtype=float).reshape(nx, ny, 4)
        return cls(nx=nx, ny=ny, q=q)

    @classmethod
    def from_json(cls, text: str) -> "DiscreteTorusMap":
        return cls.from_json_dict(json.loads(text))


@dataclass
class ConnectionSample:
    """Per-site Lie-algebra components (A_x, A_y) as 2x2 anti-Hermitian traceless matrices."""

    ax: np.ndarray  # (nx, ny, 2, 2)
    ay: np.ndarray
    spacing: Tuple[float, float]
    projection_residual: float = field(default=0.0)


def _roll(g: np.ndarray, shift: int, axis: int) -> np.ndarray:
    return np.roll(g, -shift, axis=axis)


def _diff4(g: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Fourth-order periodic central difference."""
    return (
        8.0 * (_roll(g, 1, axis) - _roll(g, -1, axis))
        - (_roll(g, 2, axis) - _roll(g, -2, axis))
    ) / (12.0 * h)


def _diff2(g: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Second-order periodic central difference."""
    return (_roll(g, 1, axis) - _roll(g, -1, axis)) / (2.0 * h)


def _project_su2(m: np.ndarray) -> Tuple[np.ndarray, float]:
    """Project onto traceless anti-Hermitian matrices; return max deviation."""
    anti = 0.5 * (m - np.conj(np.swapaxes(m, -1, -2)))
    tr = np.trace(anti, axis1=-2, axis2=-1)[..., None, None]
    eye = np.eye(2)
    proj = anti - 0.5 * tr * eye
    resid = float(np.max(np.abs(m - proj)))
    return proj, resid


def pullback_mc(m: DiscreteTorusMap, rough_tol: float = 0.05) -> ConnectionSample:
    """Logarithmic derivative g^{-1} dg by fourth-order differences.

    The raw finite-difference quotient is projected to su(2); a large
    projection residual means the map is too rough for the grid.
    """
    hx, hy = m.spacing
    g = m.matrices()
    ginv = np.conj(np.swapaxes(g, -1, -2))  # unitary inverse
    ax_raw = ginv @ _diff4(g, hx, axis=0)
    ay_raw = ginv @ _diff4(g, hy, axis=1)
    ax, rx = _project_su2(ax_raw)
    ay, ry = _project_su2(ay_raw)
    resid = max(rx, ry)
    scale = max(1.0, float(np.max(np.abs(ax))), float(np.max(np.abs(ay))))
    if resid > rough_tol * scale:
        raise GridError(
            f"projection residual {resid:.3e} too large; refine the grid"
        )
    return ConnectionSample(ax=ax, ay=ay, spacing=m.spacing, projection_residual=resid)


def family_at(a: ConnectionSample, theta: float) -> ConnectionSample:
    """The circle of connections through the trivial one and the pullback.

    A(theta) = (1 - e^{i theta})/2 * a^{1,0} + (1 - e^{-i theta})/2 * a^{0,1}
    in the standard conformal structure, with a^{1,0} = (a_x - i a_y)/2.
    """
    a10_x = 0.5 * (a.ax - 1j * a.ay)   # coefficient of dz
    a01_x = 0.5 * (a.ax + 1j * a.ay)   # coefficient of dzbar
    f = 0.5 * (1.0 - np.exp(1j * theta))
    fbar = 0.5 * (1.0 - np.exp(-1j * theta))
    ax = f * a10_x + fbar * a01_x
    ay = 1j * (f * a10_x - fbar * a01_x)
    return ConnectionSample(ax=ax, ay=ay, spacing=a.spacing,
                            projection_residual=a.projection_residual)


def curvature_residual(a: ConnectionSample) -> float:
    """Max Frobenius norm over sites of dA + [A, A]/2 by central differences."""
    hx, hy = a.spacing
    f = _diff2(a.ay, hx, axis=0) - _diff2(a.ax, hy, axis=1) + a.ax @ a.ay - a.ay @ a.ax
    return float(np.max(np.sqrt(np.sum(np.abs(f) ** 2, axis=(-2, -1)))))


def _killing(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """B(X, Y) = 4*tr(XY) per site."""
    return KILLING_SCALE * np.real(np.einsum("...ij,...ji->...", x, y))


def energy_numeric(m: DiscreteTorusMap) -> float:
    """E = -1/2 * sum B(a_x, a_x) + B(a_y, a_y) over the grid measure."""
    a = pullback_mc(m)
    hx, hy = m.spacing
    density = _killing(a.ax, a.ax) + _killing(a.ay, a.ay)
    return -0.5 * float(np.sum(density)) * hx * hy


def killing_norm_check() -> float:
    """B(diag(i,-i), diag(i,-i)); must equal -8 in this normalization."""
    x = np.diag([1j, -1j])
    return float(_killing(x, x))
