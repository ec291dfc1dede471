"""Command-line front end.

Exit codes: 0 when every applicable check passes, 1 on a failing check,
2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .catalog import BUILTINS, Setup, builtin, warped_setup
from .contact import AlmostContactStructure
from .errors import ConfigError, GeometryError
from .expr import parse
from .geometry import ChartManifold, VectorField
from .submersion import SmoothMap
from .suite import RunConfig, describe, describe_text, run_all

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


# ---------------------------------------------------------------------------
# user configurations


def _expr(value, coords, path):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        c = float(value)
        return lambda v: c
    if not isinstance(value, str):
        raise ConfigError(f"{path}: expected an expression string or number")
    try:
        return parse(value, coords)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _vector(values, coords, path):
    if not isinstance(values, list):
        raise ConfigError(f"{path}: expected a list")
    fns = [_expr(v, coords, f"{path}[{i}]") for i, v in enumerate(values)]
    return lambda p: np.array([f(p) for f in fns], dtype=object)


def _matrix(rows, coords, path, n):
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ConfigError(f"{path}: expected a {n}x{n} list of lists")
    fns = [[_expr(v, coords, f"{path}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)]
    return lambda p: np.array([[f(p) for f in r] for r in fns], dtype=object)


def _chart(d, path) -> ChartManifold:
    if not isinstance(d, dict):
        raise ConfigError(f"{path}: expected an object")
    for key in ("coords", "lower", "upper", "metric"):
        if key not in d:
            raise ConfigError(f"{path}.{key}: missing")
    coords = tuple(d["coords"])
    n = len(coords)
    if len(d["lower"]) != n or len(d["upper"]) != n:
        raise ConfigError(f"{path}: bounds must have {n} entries")
    metric = _matrix(d["metric"], coords, f"{path}.metric", n)
    try:
        return ChartManifold(n, tuple(map(float, d["lower"])), tuple(map(float, d["upper"])), metric,
                             label=d.get("label", ""), coords=coords)
    except (GeometryError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


def setup_from_dict(d: dict) -> Setup:
    """Build a :class:`Setup` from a JSON configuration object."""
    if not isinstance(d, dict):
        raise ConfigError("config: expected an object")
    M = _chart(d.get("manifold"), "manifold")
    S = None
    if "structure" in d:
        s = d["structure"]
        for key in ("phi", "xi", "eta"):
            if key not in s:
                raise ConfigError(f"structure.{key}: missing")
        xi = _vector(s["xi"], M.coords, "structure.xi")
        try:
            S = AlmostContactStructure(M, _matrix(s["phi"], M.coords, "structure.phi", M.dim),
                                       VectorField(xi, label="xi"),
                                       _vector(s["eta"], M.coords, "structure.eta"), label="user")
        except GeometryError as exc:
            raise ConfigError(f"structure: {exc}") from None
    F = None
    if "map" in d:
        m = d["map"]
        N = _chart(m.get("target"), "map.target")
        comps = m.get("components")
        if not isinstance(comps, list) or len(comps) != N.dim:
            raise ConfigError(f"map.components: expected {N.dim} expressions")
        F = SmoothMap(M, N, _vector(comps, M.coords, "map.components"), label=m.get("label", "map"))
    if S is None and F is None:
        raise ConfigError("config: needs a structure, a map, or both")
    profile = d.get("profile", "riemannian")
    if profile not in ("riemannian", "conformal"):
        raise ConfigError(f"profile: unknown value {profile!r}")
    return Setup(d.get("name", "user"), F, S, profile if F is not None else "structure")


def resolve_source(source: str) -> Setup:
    path = Path(source)
    if source.endswith(".json"):
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"{source}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
        return setup_from_dict(data)
    return builtin(source)


# ---------------------------------------------------------------------------
# commands


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _render(report, fmt: str) -> str:
    return report.to_json() if fmt == "json" else report.to_text()


def _config(args, setup: Setup) -> RunConfig:
    return RunConfig(setup.name, args.samples, args.seed, args.tol, args.tol2,
                     getattr(args, "require_riemannian", False), setup)


def cmd_describe(args) -> int:
    setup = resolve_source(args.source)
    cfg = _config(args, setup)
    info = describe(setup, cfg.tolerances())
    if args.format == "json":
        _emit(json.dumps({"setup": setup.name, **info}, indent=2, default=str) + "\n", args.out)
    else:
        _emit(describe_text(setup, info) + "\n", args.out)
    return EXIT_PASS


def cmd_verify(args) -> int:
    setup = resolve_source(args.source)
    report = run_all(_config(args, setup))
    _emit(_render(report, args.format), args.out)
    return EXIT_PASS if report.summary == "pass" else EXIT_FAIL


def cmd_warp(args) -> int:
    try:
        setup = warped_setup(args.warp, args.submersion, args.fiber_dim, tuple(args.t_range))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    cfg = _config(args, setup)
    report = run_all(cfg)
    info = describe(setup, cfg.tolerances())
    report.profile["class"] = info["class"]
    _emit(_render(report, args.format), args.out)
    return EXIT_PASS if report.summary == "pass" else EXIT_FAIL


def cmd_suite(args) -> int:
    reports = [run_all(_config(args, builtin(name))) for name in BUILTINS]
    ok = all(r.summary == "pass" for r in reports)
    if args.format == "json":
        doc = {"summary": "pass" if ok else "fail", "reports": [r.to_dict() for r in reports]}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = "\n".join(r.to_text() for r in reports) + f"suite: {'pass' if ok else 'fail'}\n"
    _emit(text, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="sampling seed (default 42)")
    p.add_argument("--samples", type=int, default=None, help="number of sample points (default 200)")
    p.add_argument("--tol", type=float, default=None, help="first-derivative tolerance (default 1e-5)")
    p.add_argument("--tol2", type=float, default=None, help="second-derivative tolerance (default 1e-4)")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", default=None, help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kenmotsu",
                                     description="Verify submersions from Kenmotsu manifolds numerically.")
    sub = parser.add_subparsers(dest="command", required=True)
    source_help = f"built-in ({', '.join(BUILTINS)}, warped(<expr>)) or a JSON config file"

    p = sub.add_parser("describe", help="dimensions, position of xi, mu and map class")
    p.add_argument("source", help=source_help)
    _common(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("verify", help="run every applicable check")
    p.add_argument("source", help=source_help)
    p.add_argument("--require-riemannian", action="store_true",
                   help="count the Riemannian-submersion check even for conformal maps")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("warp", help="compose a submersion with the second projection of I x_f R^k")
    p.add_argument("--warp", required=True, help="warping function of t, e.g. 'exp(t)'")
    p.add_argument("--submersion", default="planar", help="planar, identity or coords:<k>")
    p.add_argument("--fiber-dim", type=int, default=4)
    p.add_argument("--t-range", type=float, nargs=2, default=(-1.0, 1.0), metavar=("LO", "HI"))
    p.add_argument("--require-riemannian", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_warp)

    p = sub.add_parser("suite", help="verify every built-in")
    p.add_argument("--require-riemannian", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.samples is not None and args.samples < 1:
            raise ConfigError("--samples must be positive")
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GeometryError as exc:
        kind = type(exc).__name__
        print(f"error ({kind}): {exc}", file=sys.stderr)
        return EXIT_CONFIG if kind == "PreconditionError" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
