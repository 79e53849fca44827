"""Genus-0 spectral-curve engine for maps of the 2-torus into SU(2).

The curve eta^2 = P(zeta) carries eigenvalue logarithms of the form
log mu = eta*(u + v/zeta) + w with w in i*pi*Z.  Restricted to the unit
circle these give the path of flat connections whose line-bundle holonomy,
together with the closed-form energy, determines the invariant.

Two curve families are supported: the conformal Clifford curve eta^2 = zeta
and the nonconformal family eta^2 = -conj(a)*zeta^2 + (1+|a|^2)*zeta - a.
The two families come with opposite orientations of the connection loop;
the sign is detected from the data (see :func:`orientation_sign`) and the
Clifford curve anchors the convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .angles import AngleClass, circle_distance
from .rootsys import GroupData

BRANCH_FLOOR = 1e-6
QUAD_TOL = 1e-10
ENDPOINT_TOL = 1e-9
PURITY_TOL = 1e-10
N_START = 1024
N_MAX = 1 << 20


class SpectralError(ValueError):
    pass


class BranchSafetyError(SpectralError):
    """A branch point of the curve sits too close to the unit circle."""


class ConventionError(SpectralError):
    """A sign convention check failed (non-real or negative energy)."""


class ConvergenceError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


@dataclass(frozen=True)
class CliffordCurve:
    """The conformal curve eta^2 = zeta."""

    kind: str = "clifford"

    def p(self, z):
        return z

    def dp(self, z):
        return np.ones_like(z)

    @property
    def conformal(self) -> bool:
        return True


@dataclass(frozen=True)
class NonconformalCurve:
    """eta^2 = -conj(alpha)*zeta^2 + (1+|alpha|^2)*zeta - alpha, alpha off the unit circle."""

    alpha: complex
    kind: str = "nonconformal"

    def __post_init__(self):
        a = complex(self.alpha)
        if a == 0:
            raise SpectralError("alpha must be nonzero")
        if abs(abs(a) - 1.0) < 1e-12:
            raise SpectralError("alpha on the unit circle puts a branch point on it")

    def p(self, z):
        a = complex(self.alpha)
        return -np.conj(a) * z * z + (1.0 + abs(a) ** 2) * z - a

    def dp(self, z):
        a = complex(self.alpha)
        return -2.0 * np.conj(a) * z + (1.0 + abs(a) ** 2)

    @property
    def conformal(self) -> bool:
        return False

    @property
    def rs(self) -> Tuple[float, float]:
        """r = |1 + alpha|, s = |1 - alpha| via the defining square roots."""
        a = complex(self.alpha)
        r2 = (1.0 + abs(a) ** 2) + 2.0 * a.real
        s2 = (1.0 + abs(a) ** 2) - 2.0 * a.real
        if r2 <= 0 or s2 <= 0:
            raise SpectralError("r, s are not real positive; alpha = -1 or 1?")
        return math.sqrt(r2), math.sqrt(s2)


SpectralCurveP0 = Union[CliffordCurve, NonconformalCurve]


@dataclass(frozen=True)
class LogMuData:
    """Coefficients of log mu = eta*(u + v/zeta) + w, with w = i*pi*k."""

    u: complex
    v: complex
    w_over_ipi: int = 0

    @property
    def w(self) -> complex:
        return 1j * math.pi * self.w_over_ipi

    def value(self, eta, zeta):
        return eta * (self.u + self.v / zeta) + self.w

    def dtheta(self, eta, deta, zeta, dzeta):
        """d/dtheta of the value along a lift theta -> (zeta, eta)."""
        return deta * (self.u + self.v / zeta) + eta * (-self.v / zeta**2) * dzeta


def default_mu_data(curve: SpectralCurveP0) -> Tuple[LogMuData, LogMuData]:
    """The eigenvalue data attached to each curve family."""
    if isinstance(curve, CliffordCurve):
        # log mu1 = (pi/2)(1+i)(eta + i/eta) + i*pi, and i/eta = i*eta/zeta.
        c1 = (math.pi / 2.0) * (1.0 + 1j)
        c2 = (math.pi / 2.0) * (1.0 - 1j)
        d1 = LogMuData(u=c1, v=c1 * 1j, w_over_ipi=1)
        d2 = LogMuData(u=c2, v=c2 * (-1j), w_over_ipi=-1)
        return d1, d2
    r, s = curve.rs
    d1 = LogMuData(u=math.pi / r, v=-math.pi / r)
    d2 = LogMuData(u=1j * math.pi / s, v=1j * math.pi / s)
    return d1, d2


@dataclass
class LiftedCirclePath:
    """Branch-continuous samples of eta and log mu over the unit circle."""

    theta: np.ndarray
    zeta: np.ndarray
    eta: np.ndarray
    logmu1: np.ndarray
    logmu2: np.ndarray
    dlogmu2: np.ndarray
    span: str  # "half" or "full"

    @property
    def integrand(self) -> np.ndarray:
        return self.logmu1 * self.dlogmu2


def _branch_safety(curve: SpectralCurveP0, probes: int = 4096) -> float:
    th = np.linspace(0.0, 2.0 * np.pi, probes, endpoint=False)
    return float(np.min(np.abs(curve.p(np.exp(1j * th)))))


def _quantization_residual(value: complex) -> float:
    """Distance from a complex number to the lattice 2*pi*i*Z."""
    k = round(value.imag / (2.0 * math.pi))
    return abs(value - 2j * math.pi * k)


def lift_circle(
    curve: SpectralCurveP0,
    d1: Optional[LogMuData] = None,
    d2: Optional[LogMuData] = None,
    n: int = N_START,
    span: str = "half",
    branch_floor: float = BRANCH_FLOOR,
) -> LiftedCirclePath:
    """Lift theta in [0, pi] (or [0, 2*pi]) to the curve.

    eta starts at the principal square root of P(1) and is continued by
    nearest-value sign selection; derivatives of log mu are analytic via
    eta' = P'(zeta)*i*zeta/(2*eta).
    """
    if span not in ("half", "full"):
        raise SpectralError(f"span must be 'half' or 'full', got {span!r}")
    if n < 64:
        raise SpectralError("need at least 64 intervals")
    if n % 2:
        raise SpectralError("interval count must be even for Simpson quadrature")
    if d1 is None or d2 is None:
        dd1, dd2 = default_mu_data(curve)
        d1 = d1 or dd1
        d2 = d2 or dd2

    floor = _branch_safety(curve)
    if floor <= branch_floor:
        raise BranchSafetyError(
            f"min |P| on the unit circle is {floor:.3e} <= {branch_floor:.1e}; "
            "branch point too close to the circle"
        )

    top = math.pi if span == "half" else 2.0 * math.pi
    theta = np.linspace(0.0, top, n + 1)
    zeta = np.exp(1j * theta)
    dzeta = 1j * zeta

    if isinstance(curve, CliffordCurve):
        eta = np.exp(0.5j * theta)
    else:
        eta = np.sqrt(curve.p(zeta))
        # continue the branch: flip wherever the jump exceeds the sum
        flips = np.cumsum(np.abs(np.diff(eta)) > np.abs(eta[1:] + eta[:-1]))
        eta[1:] *= np.where(flips % 2 == 1, -1.0, 1.0)
        # anchor at the principal square root of P(1)
        if abs(eta[0] - np.sqrt(curve.p(np.array([1.0 + 0j]))[0])) > 1e-12:
            eta = -eta

    resid = np.max(np.abs(eta * eta - curve.p(zeta)))
    if resid > 1e-9 * max(1.0, float(np.max(np.abs(eta)) ** 2)):
        raise SpectralError(f"eta^2 - P residual {resid:.3e} too large")
    if np.any(np.abs(np.diff(eta)) >= np.abs(eta[1:] + eta[:-1])):
        raise SpectralError("branch continuity violated after sign selection")

    deta = curve.dp(zeta) * dzeta / (2.0 * eta)
    logmu1 = d1.value(eta, zeta)
    logmu2 = d2.value(eta, zeta)
    dlogmu2 = d2.dtheta(eta, deta, zeta, dzeta)

    purity = max(float(np.max(np.abs(logmu1.real))), float(np.max(np.abs(logmu2.real))))
    if purity > PURITY_TOL * max(1.0, float(np.max(np.abs(logmu1)))):
        raise SpectralError(
            f"log mu not purely imaginary on the circle (max Re = {purity:.3e})"
        )

    ends = [0, -1] if span == "half" else [0, n // 2, -1]
    for k in ends:
        for lm in (logmu1[k], logmu2[k]):
            q = _quantization_residual(complex(lm))
            if q > ENDPOINT_TOL:
                raise SpectralError(
                    f"log mu at theta={theta[k]:.3f} is {q:.3e} away from 2*pi*i*Z"
                )

    return LiftedCirclePath(
        theta=theta, zeta=zeta, eta=eta, logmu1=logmu1, logmu2=logmu2,
        dlogmu2=dlogmu2, span=span,
    )


def _simpson(values: np.ndarray, h: float) -> complex:
    n = values.shape[0] - 1
    assert n % 2 == 0
    return (h / 3.0) * (
        values[0]
        + values[-1]
        + 4.0 * np.sum(values[1:-1:2])
        + 2.0 * np.sum(values[2:-1:2])
    )


def holonomy_integral(path: LiftedCirclePath) -> float:
    """int log mu1 (log mu2)' dtheta over the lifted span, by composite Simpson.

    The integrand is a product of purely imaginary factors, so the result is
    real; the imaginary part is checked to be negligible.
    """
    if path.span != "half":
        raise SpectralError("holonomy integral is defined on the half span")
    return _integral_of(path)


def _integral_of(path: LiftedCirclePath) -> float:
    h = float(path.theta[1] - path.theta[0])
    val = _simpson(path.integrand, h)
    if abs(val.imag) > 1e-8 * max(1.0, abs(val.real)):
        raise ConventionError(f"integral has imaginary part {val.imag:.3e}")
    return float(val.real)


def _adaptive_integral(
    curve: SpectralCurveP0,
    d1: Optional[LogMuData],
    d2: Optional[LogMuData],
    span: str,
    n: int = N_START,
    tol: float = QUAD_TOL,
) -> float:
    prev = _integral_of(lift_circle(curve, d1, d2, n=n, span=span))
    while n < N_MAX:
        n *= 2
        cur = _integral_of(lift_circle(curve, d1, d2, n=n, span=span))
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise ConvergenceError(
        f"Simpson quadrature did not converge to {tol:.1e} by n={N_MAX}"
    )


def holonomy_integral_adaptive(
    curve: SpectralCurveP0,
    d1: Optional[LogMuData] = None,
    d2: Optional[LogMuData] = None,
    n: int = N_START,
    tol: float = QUAD_TOL,
) -> float:
    """Half-span integral with sample doubling until successive values agree."""
    return _adaptive_integral(curve, d1, d2, "half", n=n, tol=tol)


def energy_closed_form(curve: SpectralCurveP0) -> float:
    """Closed-form energy of the harmonic map attached to the curve."""
    if isinstance(curve, CliffordCurve):
        return 16.0 * math.pi**2
    r, s = curve.rs
    a = complex(curve.alpha)
    return 32.0 * math.pi**2 * (1.0 + abs(a) ** 2) / (r * s)


def energy_wronskian(
    a1: complex, b1: complex, a2: complex, b2: complex, conformal: bool,
    tol: float = 1e-9,
) -> float:
    """Energy from the principal-part/constant coefficients of the two differentials.

    The prefactor signs (-16i conformal, +32i nonconformal) are the unique
    choices reproducing the positive closed-form energies of both families.
    """
    base = a2 * b1 - a1 * b2
    val = (-16j if conformal else 32j) * base
    scale = max(1.0, abs(val))
    if abs(val.imag) > tol * scale:
        raise ConventionError(
            f"Wronskian energy is not real (Im = {val.imag:.3e}); "
            "coefficient convention mismatch"
        )
    if val.real < -tol * scale:
        raise ConventionError(f"Wronskian energy is negative ({val.real:.3e})")
    return float(val.real)


def orientation_sign(
    curve: SpectralCurveP0,
    d1: Optional[LogMuData] = None,
    d2: Optional[LogMuData] = None,
    n: int = N_START,
) -> int:
    """Orientation of the connection loop carried by the mu-data.

    +1 when E/16 = -(1/pi) * (full-circle integral) mod 2*pi, -1 for the
    reversed orientation.  The Clifford data give +1, the nonconformal
    family's give -1; the detected sign enters the invariant formula and the
    energy-mod cross-check.
    """
    full = _adaptive_integral(curve, d1, d2, "full", n=n)
    e16 = energy_closed_form(curve) / 16.0
    d_plus = circle_distance(e16, -full / math.pi)
    d_minus = circle_distance(e16, full / math.pi)
    sign = 1 if d_plus <= d_minus else -1
    if min(d_plus, d_minus) > 1e-6:
        raise ConventionError(
            "full-circle integral matches neither orientation of the "
            f"energy-mod identity (residuals {d_plus:.3e}, {d_minus:.3e})"
        )
    return sign


def gamma_spectral(
    curve: SpectralCurveP0,
    d1: Optional[LogMuData] = None,
    d2: Optional[LogMuData] = None,
    n: int = N_START,
    tol: float = QUAD_TOL,
) -> AngleClass:
    """The invariant from quadrature: -(1/pi)*integral - sign*E/32 mod 2*pi."""
    half = _adaptive_integral(curve, d1, d2, "half", n=n, tol=tol)
    sign = orientation_sign(curve, d1, d2, n=n)
    energy = energy_closed_form(curve)
    raw = -half / math.pi - sign * energy / 32.0
    return AngleClass.from_raw(raw)


def energy_mod_check(
    curve: SpectralCurveP0,
    d1: Optional[LogMuData] = None,
    d2: Optional[LogMuData] = None,
    n: int = N_START,
) -> float:
    """Distance mod 2*pi between E/16 and the orientation-corrected full integral."""
    full = _adaptive_integral(curve, d1, d2, "full", n=n)
    sign = orientation_sign(curve, d1, d2, n=n)
    e16 = energy_closed_form(curve) / 16.0
    return circle_distance(e16, -sign * full / math.pi)


def holonomy_relation(
    energy: float, gamma: AngleClass, g: GroupData, orientation: int = 1
) -> complex:
    """Unit-modulus holonomy exp(i*(3*pi*c*E - Gamma)).

    ``orientation`` flips the energy term for mu-data carrying the reversed
    loop orientation.
    """
    three_pi_c_e = 3.0 * float(g.c_times_pi) * energy
    return cmath.exp(1j * (orientation * three_pi_c_e - gamma.canonical))


def wzw_functional(energy: float, gamma: AngleClass) -> dict:
    """Both printed conventions of the SU(2) functional I(g), labeled.

    "energy_minus" is -E/(16*pi) - i*Gamma; "energy_plus" is -6*c*E - i*Gamma
    with c = -1/(96*pi), i.e. +E/(16*pi) - i*Gamma.  The two source formulas
    disagree in the sign of the energy term, so both are reported together
    with their discrepancy.
    """
    re_term = energy / (16.0 * math.pi)
    minus = complex(-re_term, -gamma.canonical)
    plus = complex(re_term, -gamma.canonical)
    return {
        "energy_minus": minus,
        "energy_plus": plus,
        "discrepancy": abs(minus - plus),
    }


def nonconformal_gamma_closed_form(alpha: complex) -> float:
    """4*pi*Im(alpha)/(r*s); the analytic value of the invariant for the family."""
    curve = NonconformalCurve(alpha)
    r, s = curve.rs
    return 4.0 * math.pi * complex(alpha).imag / (r * s)


def curve_from_json_dict(d: dict) -> SpectralCurveP0:
    kind = d.get("kind")
    if kind == "clifford":
        return CliffordCurve()
    if kind == "nonconformal":
        re, im = d["alpha"]
        return NonconformalCurve(complex(re, im))
    raise SpectralError(f"unknown curve kind {kind!r}")


def mu_data_from_json_dict(d: dict) -> LogMuData:
    return LogMuData(
        u=complex(d["u"][0], d["u"][1]),
        v=complex(d["v"][0], d["v"][1]),
        w_over_ipi=int(d.get("w_over_ipi", 0)),
    )


def dump_lift_csv(path: LiftedCirclePath, fileobj) -> None:
    """theta, eta, Im log mu, integrand samples as CSV for plotting."""
    fileobj.write("theta,re_eta,im_eta,im_logmu1,im_logmu2,integrand\n")
    for k in range(path.theta.shape[0]):
        fileobj.write(
            f"{path.theta[k]:.12g},{path.eta[k].real:.12g},{path.eta[k].imag:.12g},"
            f"{path.logmu1[k].imag:.12g},{path.logmu2[k].imag:.12g},"
            f"{path.integrand[k].real:.12g}\n"
        )
