"""Command-line front end.

    mwalgebra --config cantor.toml validate
    mwalgebra --config cantor.toml algebra nf "p(v)" --depth 1
    mwalgebra --config cantor.toml algebra eq "s(e1)^**s(e1)" "p(v)"
    mwalgebra --config cantor.toml verify covariance --seed 7
    mwalgebra --config cantor.toml fractal dimension
    mwalgebra --config cantor.toml fractal render --out cantor.ppm

Every run prints one JSON report on stdout.  Exit status: 0 when all requested
checks pass, 1 when a check fails, 2 on usage or config errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path as FsPath

import numpy as np

from . import ifs, render, suites
from .algebra import equals, normal_form
from .config import ConfigError, load_config
from .errors import CompositionError, ExpressionSyntaxError, GraphError, ResourceError
from .expr import parse
from .graph import validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "seed": 0,
    "samples": None,
    "tol": None,
    "depth": None,
    "cap": ifs.DEFAULT_POINT_CAP,
    "width": 512,
    "height": 512,
    "format": None,
    "out": None,
}


class UsageError(Exception):
    pass


def _common(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", default=d, help="TOML experiment file")
    parser.add_argument("--seed", type=int, default=d, help="seed for randomized suites")
    parser.add_argument("--tol", type=float, default=d, help="tolerance / resolution")
    parser.add_argument("--depth", type=int, default=d, help="depth or expansion level")
    parser.add_argument("--out", default=d, help="output path for point clouds and images")
    parser.add_argument("--format", choices=["ppm", "svg"], default=d)
    parser.add_argument("--samples", type=int, default=d, help="number of random samples")
    parser.add_argument("--cap", type=int, default=d, help="point cap for attractors")
    parser.add_argument("--width", type=int, default=d)
    parser.add_argument("--height", type=int, default=d)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwalgebra", description=__doc__.split("\n\n")[0])
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check graph and geometry hypotheses")
    _common(p, suppress=True)

    p = sub.add_parser("algebra", help="normal forms and identities in the graph algebra")
    _common(p, suppress=True)
    p.add_argument("action", choices=["nf", "eq", "suite"])
    p.add_argument("expressions", nargs="*")

    p = sub.add_parser("verify", help="run a verification battery")
    _common(p, suppress=True)
    p.add_argument("which", choices=["intertwine", "toeplitz", "covariance", "equivariance", "surjectivity"])

    p = sub.add_parser("fractal", help="attractors, rendering, dimension, coding map")
    _common(p, suppress=True)
    p.add_argument("action", choices=["attractor", "render", "dimension", "code"])
    p.add_argument("path", nargs="*", help="path literal for 'code', e.g. e2 e2 e2; a trailing ... repeats it")
    return parser


def _opt(args, cfg, name, fallback=None):
    v = getattr(args, name, None)
    if v is None:
        v = cfg.options.get(name) if cfg is not None else None
    if v is None:
        v = DEFAULTS.get(name)
    return fallback if v is None else v


def _check(name, passed, **extra):
    return dict(name=name, passed=bool(passed), **extra)


def _tally_checks(tally):
    return [_check(k, p == t, passed_count=p, total=t) for k, (p, t) in sorted(tally.items())]


def _need_geometry(cfg):
    if cfg.system is None:
        raise UsageError("this command needs a [geometry] section")
    rep = ifs.validate_system(cfg.system)
    if not rep.ok:
        raise UsageError("geometry invalid: " + "; ".join(rep.violations))
    return cfg.system


def _need_valid_graph(cfg):
    rep = validate(cfg.graph)
    if not rep.ok:
        raise UsageError("graph invalid: " + "; ".join(rep.violations))
    return cfg.graph


# commands ---------------------------------------------------------------------


def cmd_validate(args, cfg):
    checks = []
    rep = validate(cfg.graph)
    checks.append(_check("graph", rep.ok, violations=rep.violations))
    if cfg.system is not None:
        grep = ifs.validate_system(cfg.system)
        geo_only = [v for v in grep.violations if v not in rep.violations]
        checks.append(_check("geometry", not geo_only, violations=geo_only))
    return checks, {}


def cmd_algebra(args, cfg):
    g = _need_valid_graph(cfg)
    exprs = args.expressions
    if args.action == "nf":
        if len(exprs) != 1:
            raise UsageError("nf takes exactly one expression")
        nf = normal_form(parse(g, exprs[0]), _opt(args, cfg, "depth", 0))
        return [], {"normal_form": str(nf), "levels": {str(d): n for d, n in nf.levels().items()}}
    if args.action == "eq":
        if len(exprs) != 2:
            raise UsageError("eq takes exactly two expressions")
        same = equals(parse(g, exprs[0]), parse(g, exprs[1]))
        return [_check("equal", same)], {"equal": same}
    if exprs:
        raise UsageError("suite takes no expressions")
    rng = random.Random(_opt(args, cfg, "seed"))
    tally = suites.algebra_suite(g, rng, _opt(args, cfg, "samples", 500))
    return _tally_checks(tally), {}


def cmd_verify(args, cfg):
    which = args.which
    seed = _opt(args, cfg, "seed")
    if which in ("intertwine", "toeplitz", "covariance"):
        g = _need_valid_graph(cfg)
        rng = random.Random(seed)
        n = _opt(args, cfg, "samples", 200)
        battery = {
            "intertwine": suites.intertwine_suite,
            "toeplitz": suites.toeplitz_suite,
            "covariance": suites.covariance_suite,
        }[which]
        tally = battery(g, rng, n)
        if which == "toeplitz":
            tally.update(suites.generator_coverage(g))
        return _tally_checks(tally), {}
    system = _need_geometry(cfg)
    if which == "equivariance":
        depth = _opt(args, cfg, "depth", 30)
        tol = _opt(args, cfg, "tol", 1e-12)
        rep = ifs.check_equivariance(system, _opt(args, cfg, "samples", 1000), depth, tol, seed)
        return [_check("equivariance", rep.passed, max_discrepancy=rep.max_discrepancy,
                       max_bound=rep.max_bound, pairs=rep.checked)], {}
    eps = _opt(args, cfg, "tol", 0.01)
    rep = ifs.check_surjectivity(system, eps, _opt(args, cfg, "cap"))
    return [_check(f"surjectivity[{v}]", ok, max_gap=rep.max_gap[v], threshold=2 * eps)
            for v, ok in sorted(rep.vertices.items())], {"eps": eps}


def _format_for(args, cfg, out):
    fmt = _opt(args, cfg, "format")
    if fmt is None:
        fmt = "svg" if str(out).lower().endswith(".svg") else "ppm"
    return fmt


def cmd_fractal(args, cfg):
    system = _need_geometry(cfg)
    action = args.action
    if action == "dimension":
        if not system.graph.is_strongly_connected():
            raise UsageError("dimension needs a strongly connected graph")
        tol = _opt(args, cfg, "tol", 1e-12)
        return [], {"dimension": ifs.dimension(system, tol), "tol": tol}
    if action == "code":
        words = " ".join(args.path).split()
        periodic = bool(words) and words[-1] in ("...", "…")
        if periodic:
            words = words[:-1]
        if not words:
            raise UsageError("code needs a path literal")
        depth = _opt(args, cfg, "depth", 20)
        if periodic:
            # a trailing "..." repeats the word up to the requested depth
            words = (words * (depth // len(words) + 1))[:max(depth, len(words))]
        alpha = system.graph.path(*words)
        depth = max(depth, alpha.length)
        point, radius = ifs.code(system, alpha, depth)
        return [], {"path": str(alpha), "depth": depth, "point": [float(x) for x in point], "radius": radius}

    lo, hi = render._world_bounds(system)
    width, height = _opt(args, cfg, "width"), _opt(args, cfg, "height")
    default_eps = float(np.max(hi - lo)) / max(width, height) if action == "render" else 1e-3
    eps = _opt(args, cfg, "tol", default_eps)
    approx = ifs.attractor(system, eps, _opt(args, cfg, "cap"))
    extra = {
        "eps": eps,
        "depth": approx.depth,
        "radius": approx.radius,
        "points": {v: int(len(p)) for v, p in sorted(approx.points.items())},
    }
    out = _opt(args, cfg, "out")
    if action == "attractor":
        if out:
            FsPath(out).write_text(render.point_cloud_text(approx.points))
            extra["out"] = str(out)
        return [], extra
    if not out:
        raise UsageError("render needs --out")
    fmt = _format_for(args, cfg, out)
    if fmt == "ppm":
        FsPath(out).write_bytes(render.to_ppm(render.raster(system, approx.points, width, height)))
    else:
        FsPath(out).write_text(render.to_svg(system, approx.points, width, height))
    extra.update(out=str(out), format=fmt, width=width, height=height)
    return [], extra


COMMANDS = {"validate": cmd_validate, "algebra": cmd_algebra, "verify": cmd_verify, "fractal": cmd_fractal}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    t0 = time.perf_counter()
    report = {"command": " ".join(x for x in [args.command, getattr(args, "action", None) or getattr(args, "which", None)] if x)}
    try:
        if not args.config:
            raise UsageError("--config is required")
        cfg = load_config(args.config)
        report["seed"] = _opt(args, cfg, "seed")
        report["inputs"] = {
            "config": str(args.config),
            "argv": list(argv) if argv is not None else sys.argv[1:],
        }
        checks, extra = COMMANDS[args.command](args, cfg)
    except (UsageError, ConfigError, ExpressionSyntaxError, GraphError, CompositionError, ResourceError) as exc:
        report.update(error=str(exc), error_type=type(exc).__name__, passed=False)
        report["wall_clock_seconds"] = round(time.perf_counter() - t0, 6)
        print(json.dumps(report, indent=2, sort_keys=True), file=stdout)
        return EXIT_USAGE
    report.update(extra)
    report["checks"] = checks
    report["passed"] = all(c["passed"] for c in checks)
    report["wall_clock_seconds"] = round(time.perf_counter() - t0, 6)
    print(json.dumps(report, indent=2, sort_keys=True), file=stdout)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
