"""Command-line front end: analyze media, construct normal forms, sample
Fresnel surfaces and drive the verification suites.

Exit codes: 0 success, 1 input error or failed verification, 2
classification refusal (ambiguous eigenvalue clustering).  The
environment variable BIRELAB_TOL overrides the default tolerance used
for the skewon, precondition and symmetry checks.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import factor, medium, metaclasses, quartic, segre
from .basis import J6
from .errors import (
    BirelabError,
    IllConditioned,
    InvalidParams,
    NotRotationallySymmetric,
    NotSkewonFree,
    SingularMedium,
    UnknownSuite,
)
from .medium import MediumTensor

REPORT_SCHEMA = "birelab-report/1"

#: Default tolerance for the CLI-level checks; see env_tol().
DEFAULT_TOL = 1e-9


def env_tol(default: float = DEFAULT_TOL) -> float:
    """Tolerance override from BIRELAB_TOL, else the given default."""
    raw = os.environ.get("BIRELAB_TOL")
    if raw is None:
        return default
    try:
        value = float(raw)
    except ValueError as err:
        raise InvalidParams(f"BIRELAB_TOL must be a float, got {raw!r}") from err
    if not value > 0.0:
        raise InvalidParams(f"BIRELAB_TOL must be positive, got {value}")
    return value


def medium_from_json(payload: dict) -> MediumTensor:
    """Parse the medium JSON format (6x6 matrix or raw components)."""
    if not isinstance(payload, dict):
        raise InvalidParams("medium JSON must be an object")
    if "matrix" in payload:
        basis = payload.get("basis", "O-standard")
        if basis != "O-standard":
            raise InvalidParams(f"unknown basis {basis!r}; only 'O-standard' is supported")
        mat = np.asarray(payload["matrix"], dtype=float)
        if mat.shape != (6, 6):
            raise InvalidParams(f"'matrix' must be 6x6, got {mat.shape}")
        return MediumTensor(mat)
    if "components" in payload:
        raw = np.asarray(payload["components"], dtype=float)
        if raw.shape != (4, 4, 4, 4):
            raise InvalidParams(f"'components' must be 4x4x4x4, got {raw.shape}")
        return medium.from_components(raw)
    raise InvalidParams("medium JSON needs a 'matrix' or 'components' field")


def medium_to_json(kappa: MediumTensor) -> dict:
    return {"basis": "O-standard", "matrix": kappa.mat.tolist()}


def _params_from_json(class_id: str, payload: dict) -> metaclasses.MetaclassParams:
    if not isinstance(payload, dict):
        raise InvalidParams("params JSON must be an object")
    if "class" in payload and payload["class"] != class_id:
        raise InvalidParams(
            f"params JSON names class {payload['class']!r} but --class is {class_id!r}")
    return metaclasses.MetaclassParams(
        alpha=tuple(payload.get("alpha", ())),
        beta=tuple(payload.get("beta", ())),
    )


def _load_medium(args) -> tuple[MediumTensor, str | None, object]:
    """Medium from --input or --class/--params; returns (kappa, class_id, params)."""
    if args.input is not None:
        with open(args.input) as fh:
            return medium_from_json(json.load(fh)), None, None
    if args.klass is not None:
        if args.params is None:
            raise InvalidParams("--class requires --params")
        params = _params_from_json(args.klass, json.loads(args.params))
        return metaclasses.construct_metaclass(args.klass, params), args.klass, params
    raise InvalidParams("provide --input FILE or --class ID with --params JSON")


def build_report(kappa: MediumTensor, class_id=None, params=None, seed: int = 0) -> dict:
    """Full analysis pipeline for one medium tensor."""
    tol = env_tol()
    skewon_free = medium.is_skewon_free(kappa, tol=tol)
    report = {
        "schema": REPORT_SCHEMA,
        "skewon_free": skewon_free,
        "axion": kappa.axion,
        "residuals": {},
    }
    paired = J6 @ kappa.mat
    report["residuals"]["skewon_asymmetry"] = float(np.linalg.norm(paired - paired.T))

    st = segre.segre_type(kappa.mat)
    report["segre_label"] = st.label
    if not skewon_free:
        report["metaclass"] = "not classified (has skewon part)"
    else:
        try:
            report["metaclass"] = segre.metaclass_of(kappa)
        except SingularMedium:
            report["metaclass"] = "not classified (singular)"

    f = quartic.tamm_rubilar(kappa)
    report.update(quartic.quartic_to_json(f))
    result = factor.factor_quartic(f, seed=seed)
    report["birefringence"] = result.to_json()
    if np.isfinite(result.residual):
        report["residuals"]["factorization"] = result.residual

    if class_id in ("I", "IV", "VI", "VII") and params is not None:
        try:
            di = metaclasses.d_invariants(class_id, params)
        except InvalidParams:
            pass
        else:
            report["d_invariants"] = {"D0": di.d0, "D1": di.d1, "D2": di.d2,
                                      "D3": di.d3, "C": di.scale}
    return report


def _json_default(obj):
    if isinstance(obj, (np.bool_, np.integer, np.floating)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=_json_default)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_analyze(args) -> int:
    kappa, class_id, params = _load_medium(args)
    report = build_report(kappa, class_id=class_id, params=params, seed=args.seed)
    _emit(report, args.out)
    return 0


def cmd_construct(args) -> int:
    if args.klass is None or args.params is None:
        raise InvalidParams("construct needs --class and --params")
    params = _params_from_json(args.klass, json.loads(args.params))
    kappa = metaclasses.construct_metaclass(args.klass, params)
    _emit(medium_to_json(kappa), args.out)
    return 0


def rotationally_symmetric(f: quartic.QuarticForm, tol: float) -> bool:
    """Invariance of the quartic under rotations in the (xi1, xi2) plane."""
    scale = max(f.norm(), 1e-300)
    for theta in (0.7, 1.9):
        c, s = np.cos(theta), np.sin(theta)
        T = np.eye(4)
        T[1, 1], T[1, 2], T[2, 1], T[2, 2] = c, -s, s, c
        g = quartic.transform_density(f, T)
        if np.abs(g.vec - f.vec).max() > tol * scale:
            return False
    return True


def _parse_bounds(text: str) -> tuple[float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2 or not parts[0] < parts[1]:
        raise InvalidParams(f"--bounds must be 'lo,hi' with lo < hi, got {text!r}")
    return parts[0], parts[1]


def surface_grid(f: quartic.QuarticForm, bounds: tuple[float, float],
                 resolution: int) -> np.ndarray:
    """Rows (x, y, z, value) of the xi1=0 slice on a regular lattice.

    The lattice coordinates map to covectors as (x, 0, y, z); for a
    quartic that is rotation-invariant in the (xi1, xi2) plane, the zero
    level set of this slice is the projected Fresnel surface.
    """
    if resolution < 2:
        raise InvalidParams(f"--resolution must be at least 2, got {resolution}")
    axis = np.linspace(bounds[0], bounds[1], resolution)
    X, Y, Z = np.meshgrid(axis, axis, axis, indexing="ij")
    pts = np.stack([X.ravel(), np.zeros(X.size), Y.ravel(), Z.ravel()], axis=1)
    mono = np.ones((pts.shape[0], 35))
    for n, mi in enumerate(quartic.MULTI_INDICES):
        for i in mi:
            mono[:, n] *= pts[:, i]
    values = mono @ (quartic.MULTINOMIAL * f.vec)
    return np.column_stack([X.ravel(), Y.ravel(), Z.ravel(), values])


def cmd_surface(args) -> int:
    kappa, _, _ = _load_medium(args)
    f = quartic.tamm_rubilar(kappa)
    if args.projection != "xi1=0":
        raise InvalidParams(f"unknown projection {args.projection!r}; supported: 'xi1=0'")
    if not rotationally_symmetric(f, tol=env_tol(1e-10)):
        raise NotRotationallySymmetric(
            "the xi1=0 projection needs rotational symmetry in the (xi1, xi2) plane")
    rows = surface_grid(f, _parse_bounds(args.bounds), args.resolution)
    out = args.out or "surface.csv"
    header = f"x,y,z,f  projection=xi1=0 axes=(xi0, xi2, xi3) bounds={args.bounds} resolution={args.resolution}"
    np.savetxt(out, rows, delimiter=",", header=header, fmt="%.17g")
    return 0


def cmd_verify(args) -> int:
    from . import verify
    summary = verify.run_suite(args.suite, seed=args.seed, count=args.count)
    _emit(summary, args.out)
    return 0 if summary["failed"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birelab",
        description="Analyze skewon-free electromagnetic media: Fresnel quartics, "
                    "Segre/metaclass labels and double-light-cone factorization.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_medium_source(p):
        p.add_argument("--input", help="medium JSON file")
        p.add_argument("--class", dest="klass", choices=metaclasses.CLASS_IDS,
                       help="metaclass normal-form id")
        p.add_argument("--params", help="normal-form parameter JSON")

    p = sub.add_parser("analyze", help="full analysis report for a medium")
    add_medium_source(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="serialize a normal-form medium")
    p.add_argument("--class", dest="klass", choices=metaclasses.CLASS_IDS, required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("surface", help="sample the projected Fresnel surface to CSV")
    add_medium_source(p)
    p.add_argument("--projection", default="xi1=0")
    p.add_argument("--resolution", type=int, default=96)
    p.add_argument("--bounds", default="-3,3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except IllConditioned as err:
        print(f"refused: {err}", file=sys.stderr)
        return 2
    except (BirelabError, OSError, json.JSONDecodeError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
