"""Command-line front end.

Every subcommand produces a uniform result envelope (JSON or text) holding
the computed values, residual diagnostics and run metadata.  Exit codes:
0 success, 2 bad input, 3 quadrature non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .angles import AngleClass
from .closedforms import (
    ClosedFormError,
    energy_quantum,
    wz_degree,
    wz_sphere_harmonic,
    wz_sphere_theta,
    wz_symmetric_space,
    wz_torus_hom,
)
from .flatfam import DiscreteTorusMap, GridError, curvature_residual, energy_numeric, family_at, pullback_mc
from .modulipath import CartanPath, PathError, cs_connection_form, holonomy_exponent, path_holonomy
from .oracle import RNG_ALGORITHM, OracleError, S3Sampler, gamma_from_fraction, volume_fraction
from .rootsys import GroupType, RootSystemError, build_group
from .spectral import (
    CliffordCurve,
    ConvergenceError,
    NonconformalCurve,
    SpectralError,
    curve_from_json_dict,
    dump_lift_csv,
    energy_closed_form,
    energy_mod_check,
    gamma_spectral,
    holonomy_integral_adaptive,
    lift_circle,
    mu_data_from_json_dict,
    orientation_sign,
)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_NO_CONVERGENCE = 3


@dataclass
class ResultEnvelope:
    command: str
    inputs: dict
    values: dict
    diagnostics: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(asdict(self), indent=2, default=_jsonable)
        lines = [f"command: {self.command}"]
        for section in ("inputs", "values", "diagnostics", "metadata"):
            d = getattr(self, section)
            if d:
                lines.append(f"{section}:")
                for k, v in d.items():
                    lines.append(f"  {k} = {_textable(v)}")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, AngleClass):
        return v.to_json_dict()
    if isinstance(v, np.ndarray):
        return v.tolist()
    raise TypeError(f"not JSON-serializable: {type(v)}")


def _textable(v) -> str:
    if isinstance(v, AngleClass):
        return (
            f"raw={v.raw!r} canonical={v.canonical!r} "
            f"pi_multiple={v.pi_multiple} pi_residual={v.pi_residual:.3e}"
        )
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _angle_values(name: str, a: AngleClass) -> dict:
    return {f"{name}_raw": a.raw, f"{name}_canonical": a.canonical,
            f"{name}_pi_multiple": a.pi_multiple, f"{name}_pi_residual": a.pi_residual}


def _int_list(text: str):
    return [int(x) for x in text.split(",")]


def _metadata(args) -> dict:
    return {
        "version": __version__,
        "quad_tol": args.quad_tol,
        "angle_tol": args.angle_tol,
        "branch_floor": args.branch_floor,
        "threads": args.threads,
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--quad-tol", type=float, default=1e-10)
    common.add_argument("--angle-tol", type=float, default=1e-9)
    common.add_argument("--branch-floor", type=float, default=1e-6)
    common.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("WZTERM_THREADS", "0")) or None,
        help="cap worker threads (defaults to WZTERM_THREADS or all)",
    )

    p = argparse.ArgumentParser(prog="wzterm", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="subcommand", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add_parser("group-info", help="root-system constants for a simple type")
    s.add_argument("--group", required=True)

    s = add_parser("wz-torus-hom", help="invariant of a torus homomorphism")
    s.add_argument("--group", required=True)
    s.add_argument("--m", required=True, help="comma-separated lattice coordinates")
    s.add_argument("--n", required=True)

    s = add_parser("wz-symmetric", help="invariant for a symmetric-space map")
    s.add_argument("--n", type=int, required=True, help="homology class coefficient")

    s = add_parser("wz-degree", help="invariant of a degree map through an equatorial sphere")
    s.add_argument("--deg", type=int, required=True)

    s = add_parser("wz-sphere", help="invariant of a harmonic 2-sphere map")
    s.add_argument("--group", required=True)
    s.add_argument("--energy", type=float, required=True)
    s.add_argument("--theta", type=float, default=None,
                   help="evaluate along the deformation circle instead of at theta=pi")

    s = add_parser("moduli-holonomy", help="line-bundle holonomy of a Cartan path")
    s.add_argument("--group", required=True)
    s.add_argument("--input", required=True, help="path JSON {t, a1, a2}")
    s.add_argument("--dump-samples", default=None)

    s = add_parser("spectral", help="invariant and energy from a genus-0 spectral curve")
    s.add_argument("--alpha", default=None, help="re,im for the nonconformal family")
    s.add_argument("--input", default=None, help="curve JSON (overrides --alpha)")
    s.add_argument("--samples", type=int, default=1024)
    s.add_argument("--dump-samples", default=None)

    add_parser("clifford", help="full Clifford-torus computation")

    s = add_parser("flat-check", help="curvature residual of the connection family")
    s.add_argument("--input", default=None, help="map JSON or 'clifford'")
    s.add_argument("--clifford-grid", type=int, default=None)
    s.add_argument("--theta", type=float, default=math.pi / 2)
    s.add_argument("--dump-samples", default=None)

    s = add_parser("energy-numeric", help="grid energy of a discrete map")
    s.add_argument("--input", default=None)
    s.add_argument("--clifford-grid", type=int, default=None)

    s = add_parser("volume", help="Monte Carlo volume fraction on the 3-sphere")
    s.add_argument("--surface", choices=("equator", "clifford"), required=True)
    s.add_argument("--samples", type=int, default=10_000_000)
    s.add_argument("--seed", type=int, default=20_2008)

    return p


def _load_map(args) -> DiscreteTorusMap:
    if args.clifford_grid:
        return DiscreteTorusMap.clifford(args.clifford_grid, args.clifford_grid)
    if not args.input:
        raise GridError("provide --input FILE or --clifford-grid N")
    if args.input == "clifford":
        return DiscreteTorusMap.clifford(128, 128)
    with open(args.input) as fh:
        return DiscreteTorusMap.from_json(fh.read())


def _spectral_curve(args):
    if args.input:
        with open(args.input) as fh:
            d = json.load(fh)
        curve = curve_from_json_dict(d)
        d1 = mu_data_from_json_dict(d["mu1"]) if "mu1" in d else None
        d2 = mu_data_from_json_dict(d["mu2"]) if "mu2" in d else None
        return curve, d1, d2
    if args.alpha is None:
        raise SpectralError("provide --alpha re,im or --input FILE")
    re, im = (float(x) for x in args.alpha.split(","))
    return NonconformalCurve(complex(re, im)), None, None


def _run_spectral(curve, d1, d2, args, samples: int,
                  dump_samples: Optional[str]) -> ResultEnvelope:
    integral = holonomy_integral_adaptive(curve, d1, d2, n=samples, tol=args.quad_tol)
    sign = orientation_sign(curve, d1, d2, n=samples)
    energy = energy_closed_form(curve)
    gamma = gamma_spectral(curve, d1, d2, n=samples, tol=args.quad_tol)
    residual = energy_mod_check(curve, d1, d2, n=samples)
    if dump_samples:
        with open(dump_samples, "w") as fh:
            dump_lift_csv(lift_circle(curve, d1, d2, n=samples), fh)
    inputs = {"kind": curve.kind, "samples": samples}
    if isinstance(curve, NonconformalCurve):
        inputs["alpha"] = complex(curve.alpha)
    return ResultEnvelope(
        command="spectral" if not isinstance(curve, CliffordCurve) else "clifford",
        inputs=inputs,
        values={"E": energy, "holonomy_integral": integral, **_angle_values("gamma", gamma)},
        diagnostics={
            "orientation_sign": sign,
            "energy_mod_residual": residual,
            "quad_tol": args.quad_tol,
        },
        metadata=_metadata(args),
    )


def run(argv) -> ResultEnvelope:
    args = build_parser().parse_args(argv)
    if args.threads:
        os.environ.setdefault("OMP_NUM_THREADS", str(args.threads))
    cmd = args.subcommand

    if cmd == "group-info":
        g = build_group(GroupType.parse(args.group))
        return ResultEnvelope(
            command=cmd,
            inputs={"group": str(g.group_type)},
            values=g.to_json_dict() | {"energy_quantum": energy_quantum(g)},
            metadata=_metadata(args),
        )

    if cmd == "wz-torus-hom":
        g = build_group(GroupType.parse(args.group))
        gamma = wz_torus_hom(g, _int_list(args.m), _int_list(args.n))
        return ResultEnvelope(
            command=cmd,
            inputs={"group": str(g.group_type), "m": _int_list(args.m), "n": _int_list(args.n)},
            values=_angle_values("gamma", gamma),
            metadata=_metadata(args),
        )

    if cmd == "wz-symmetric":
        gamma = wz_symmetric_space(args.n)
        return ResultEnvelope(cmd, {"n": args.n}, _angle_values("gamma", gamma),
                              metadata=_metadata(args))

    if cmd == "wz-degree":
        gamma = wz_degree(args.deg)
        return ResultEnvelope(cmd, {"deg": args.deg}, _angle_values("gamma", gamma),
                              metadata=_metadata(args))

    if cmd == "wz-sphere":
        g = build_group(GroupType.parse(args.group))
        inputs = {"group": str(g.group_type), "energy": args.energy, "theta": args.theta}
        if args.theta is None:
            gamma, resid = wz_sphere_harmonic(g, args.energy)
            values = _angle_values("gamma", gamma) | {"integrality_residual": resid}
        else:
            gamma = wz_sphere_theta(g, args.energy, args.theta)
            values = _angle_values("gamma", gamma)
        values["energy_quantum"] = energy_quantum(g)
        return ResultEnvelope(cmd, inputs, values, metadata=_metadata(args))

    if cmd == "moduli-holonomy":
        g = build_group(GroupType.parse(args.group))
        with open(args.input) as fh:
            path = CartanPath.from_json(fh.read(), g)
        hol = path_holonomy(path)
        if args.dump_samples:
            form = cs_connection_form(path)
            with open(args.dump_samples, "w") as fh:
                fh.write("t,connection_form\n")
                for t, v in zip(path.t, form):
                    fh.write(f"{t:.12g},{v:.12g}\n")
        return ResultEnvelope(
            command=cmd,
            inputs={"group": str(g.group_type), "input": args.input,
                    "samples": int(path.t.shape[0])},
            values={"holonomy": hol, "exponent": holonomy_exponent(path)},
            metadata=_metadata(args),
        )

    if cmd == "spectral":
        curve, d1, d2 = _spectral_curve(args)
        return _run_spectral(curve, d1, d2, args, args.samples, args.dump_samples)

    if cmd == "clifford":
        return _run_spectral(CliffordCurve(), None, None, args, 1024, None)

    if cmd == "flat-check":
        m = _load_map(args)
        alpha = pullback_mc(m)
        fam = family_at(alpha, args.theta)
        resid = curvature_residual(fam)
        if args.dump_samples:
            with open(args.dump_samples, "w") as fh:
                fh.write("ix,iy,curvature_norm\n")
                hx, hy = fam.spacing
                f = np.sqrt(np.sum(np.abs(
                    fam.ax @ fam.ay - fam.ay @ fam.ax) ** 2, axis=(-2, -1)))
                for ix in range(f.shape[0]):
                    for iy in range(f.shape[1]):
                        fh.write(f"{ix},{iy},{f[ix, iy]:.12g}\n")
        return ResultEnvelope(
            command=cmd,
            inputs={"nx": m.nx, "ny": m.ny, "theta": args.theta},
            values={"curvature_residual": resid},
            diagnostics={"projection_residual": alpha.projection_residual},
            metadata=_metadata(args),
        )

    if cmd == "energy-numeric":
        m = _load_map(args)
        e = energy_numeric(m)
        return ResultEnvelope(
            command=cmd,
            inputs={"nx": m.nx, "ny": m.ny},
            values={"E": e, "E_over_16pi2": e / (16.0 * math.pi**2)},
            metadata=_metadata(args),
        )

    if cmd == "volume":
        sampler = S3Sampler(seed=args.seed, n=args.samples)
        frac, stderr = volume_fraction(args.surface, sampler)
        gamma = gamma_from_fraction(frac)
        return ResultEnvelope(
            command=cmd,
            inputs={"surface": args.surface, "samples": args.samples, "seed": args.seed},
            values={"fraction": frac, "stderr": stderr, **_angle_values("gamma", gamma)},
            diagnostics={"gamma_stderr": 2.0 * math.pi * stderr, "rng": RNG_ALGORITHM},
            metadata=_metadata(args),
        )

    raise SystemExit(EXIT_BAD_INPUT)  # pragma: no cover


def main(argv: Optional[list] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        fmt = "json"
        # parse twice is wasteful; cheap enough and keeps run() returning data
        args = build_parser().parse_args(argv)
        fmt = args.format
        env = run(argv)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (RootSystemError, ClosedFormError, PathError, SpectralError,
            GridError, OracleError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    print(env.render(fmt))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
