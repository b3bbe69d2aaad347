"""Command-line entry point: ``steercoh {sweep,surface,nonmarkov,verify}``.

Exit codes: 0 success, 1 invalid input, 2 verification failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import config as cfg
from . import scenarios, verify

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", help="flat JSON scenario file")
    p.add_argument("--output", "--output-path", dest="output_path", metavar="PATH",
                   help="output file ('-' for stdout)")
    p.add_argument("--format", choices=cfg.FORMATS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha-sq", type=float)
    p.add_argument("--family", choices=cfg.FAMILIES)
    p.add_argument("--gamma-over-lambda", type=float)
    p.add_argument("--n-a", type=int)
    p.add_argument("--n-b", type=int)
    p.add_argument("--t-lambda-max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--measures", help="comma-separated subset of " + ",".join(cfg.MEASURES))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _ArgumentParser(prog="steercoh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    sub.add_parser("sweep", parents=[common], help="quantities versus lambda*t")

    s = sub.add_parser("surface", parents=[common], help="MSC versus |p_A| and |p_B|")
    s.add_argument("--grid", type=int, default=21, help="points per axis (>= 11)")

    s = sub.add_parser("nonmarkov", parents=[common], help="regime and non-Markovianity per N")
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.add_argument("--gamma", type=float, help="defaults to gamma_over_lambda * lambda")
    s.add_argument("--n-list", default="1,2,3,4,5", help="comma-separated N values")

    s = sub.add_parser("verify", parents=[common], help="run all cross-checks")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--inject-failure", metavar="CHECK", help=argparse.SUPPRESS)
    return parser


def resolve_config(args) -> cfg.ScenarioConfig:
    """Config file values overridden by any explicitly given flags."""
    base = cfg.load(args.config) if args.config else cfg.ScenarioConfig()
    overrides = {}
    for name in cfg.FIELD_NAMES:
        value = getattr(args, name, None)
        if value is None:
            continue
        if name == "measures":
            value = tuple(m.strip() for m in value.split(",") if m.strip())
        overrides[name] = value
    return base.replace(**overrides) if overrides else base


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _sidecar(path: str, fmt: str) -> str:
    stem = os.path.splitext(path)[0]
    return f"{stem}.nonmarkov.{fmt}"


def _run(args) -> int:
    config = resolve_config(args)
    fmt = config.format

    if args.command == "sweep":
        rows = scenarios.sweep(config)
        _write(scenarios.render_rows(rows, scenarios.SWEEP_COLUMNS, fmt), config.output_path)
        if "nonmarkov" in config.measures:
            ns = sorted({config.n_a, config.n_b})
            table = scenarios.nonmarkov_table(1.0, config.gamma_over_lambda, ns)
            text = scenarios.render_rows(table, scenarios.NONMARKOV_COLUMNS, fmt)
            if config.output_path == "-":
                sys.stderr.write(text)
            else:
                _write(text, _sidecar(config.output_path, fmt))
        return EXIT_OK

    if args.command == "surface":
        rows = scenarios.surface(config, args.grid)
        _write(scenarios.render_rows(rows, scenarios.SURFACE_COLUMNS, fmt), config.output_path)
        return EXIT_OK

    if args.command == "nonmarkov":
        gamma = args.gamma if args.gamma is not None else config.gamma_over_lambda * args.lam
        try:
            n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
        except ValueError as exc:
            raise cfg.ConfigError(f"n_list={args.n_list!r}: must be comma-separated integers") from exc
        table = scenarios.nonmarkov_table(args.lam, gamma, n_list)
        _write(scenarios.render_rows(table, scenarios.NONMARKOV_COLUMNS, fmt), config.output_path)
        return EXIT_OK

    if args.command == "verify":
        if args.samples < 1:
            raise cfg.ConfigError(f"samples={args.samples}: must be >= 1")
        results = verify.run_checks(args.seed, args.samples, args.inject_failure)
        _write(verify.report(results, args.seed, args.samples), config.output_path)
        return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY

    raise AssertionError(args.command)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help and usage errors
        return int(exc.code or 0)
    try:
        return _run(args)
    except (cfg.ConfigError, ValueError) as exc:
        print(f"steercoh: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"steercoh: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
