"""Command-line interface.

Exit codes: 0 when every self-check passed, 2 when a run finished but a
tolerance or exact check failed, 1 for usage and configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import formulas
from .experiments.config import ConfigError, Mode, build_config, load_config_file
from .experiments.report import ReportError, emit_report
from .experiments.runners import run_experiment
from .stirling import run_identity_suite

log = logging.getLogger("sylvester_lab")

EXIT_OK, EXIT_ERROR, EXIT_CHECK_FAILED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")


def _add_run_flags(p: argparse.ArgumentParser, mode: Mode) -> None:
    p.add_argument("--config", metavar="FILE", help="flat key = value config; flags override it")
    p.add_argument("--d", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    if mode in (Mode.WALK, Mode.BRIDGE, Mode.VERTICES):
        p.add_argument("--law", choices=("gaussian", "cube", "sphere", "cauchy"))
        p.add_argument("--scale", type=float, help="cube half-width, sphere radius or Cauchy scale")
    if mode is Mode.VERTICES:
        p.add_argument("--n", type=int)
    if mode is Mode.ORACLE:
        p.add_argument("--coord-bound", dest="coord_bound", type=int)
    if mode is Mode.BASELINE:
        p.add_argument(
            "--target", dest="baseline_target",
            choices=("gaussian_d2", "gaussian_d3", "disk", "triangle", "ball"),
        )
    _add_output(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sylvester-lab", description="Sylvester's problem for random walks and bridges")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        Mode.WALK: "Monte Carlo convex-position frequency of random walks",
        Mode.BRIDGE: "Monte Carlo convex-position frequency of centered bridges",
        Mode.ORACLE: "exact enumeration over all orderings of zero-sum integer sets",
        Mode.VERTICES: "mean hull vertex count of random walks",
        Mode.BASELINE: "classical i.i.d.-points formulations",
    }
    for mode, text in helps.items():
        _add_run_flags(sub.add_parser(mode.value, help=text), mode)
    theory = sub.add_parser("theory", help="print closed-form values")
    theory.add_argument("--d", type=int, required=True)
    theory.add_argument("--n", type=int, help="walk length for the vertex expectation (default d+1)")
    theory.add_argument("--format", choices=("json", "text"), default="text")
    theory.add_argument("--out", metavar="PATH")
    ident = sub.add_parser("identities", help="run the exact Stirling-number identity suite")
    ident.add_argument("--n-max", type=int, default=200)
    ident.add_argument("--generating-n-max", type=int, default=60)
    return parser


_NOT_CONFIG = {"command", "verbose", "config", "format", "out"}


def _run(args) -> int:
    mode = Mode(args.command)
    values = load_config_file(args.config) if args.config else {}
    for key, value in vars(args).items():
        if key not in _NOT_CONFIG and value is not None:
            values[key] = value
    cfg = build_config(mode, values)
    log.info("running %s", cfg.to_dict())
    report = run_experiment(cfg)
    emit_report(report, args.format, args.out)
    return EXIT_OK if report.check_passed else EXIT_CHECK_FAILED


def _theory(args) -> int:
    d = args.d
    n = args.n if args.n is not None else d + 1
    values = {
        "convex_position_probability": formulas.convex_position_probability(d),
        "expected_vertices_walk": formulas.expected_vertices_walk(n, d),
        "bridge_vertex_probability": formulas.bridge_vertex_probability(d),
        "kingman_ball_probability": formulas.kingman_ball_probability(d),
    }
    asym = formulas.gaussian_nonconvex_asymptotic(d)
    if args.format == "json":
        payload = {
            "schema": 1, "d": d, "n": n,
            "values": {
                k: {"exact": None if v.exact is None else str(v.exact), "approx": v.approx,
                    "description": v.description}
                for k, v in values.items()
            },
            "gaussian_nonconvex_asymptotic": asym,
            "classical_constants": {k: v.approx for k, v in formulas.classical_constants().items()},
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"d={d} n={n}"]
        for k, v in values.items():
            exact = f"{v.exact} " if v.exact is not None else ""
            lines.append(f"  {k:30s} {exact}({v.approx:.12g})")
        lines.append(f"  {'gaussian_nonconvex_asymptotic':30s} ({asym:.12g})")
        for k, v in formulas.classical_constants().items():
            lines.append(f"  {k:30s} ({v.approx:.12g})")
        text = "\n".join(lines) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise ReportError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _identities(args) -> int:
    failures = run_identity_suite(args.n_max, args.generating_n_max)
    for name, cases in failures.items():
        status = "PASS" if not cases else f"FAIL {cases[:10]}"
        print(f"{name:12s} {status}")
    return EXIT_OK if not any(failures.values()) else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "theory":
            if args.d < 1 or (args.n is not None and args.n < 1):
                raise ConfigError("d and n must be >= 1")
            return _theory(args)
        if args.command == "identities":
            if args.n_max < 2 or args.generating_n_max < 2:
                raise ConfigError("identity ranges must reach n >= 2")
            return _identities(args)
        return _run(args)
    except ConfigError as exc:
        print(f"sylvester-lab: config error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ReportError as exc:
        print(f"sylvester-lab: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
