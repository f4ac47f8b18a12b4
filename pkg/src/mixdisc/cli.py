"""Command-line interface.

Usage:
    mixdisc helstrom RHO1.json RHO2.json [--prior P]
    mixdisc table {overlap,counting,photon,distinguishable} [--n-min A] [--n-max B] [--format csv|json]
    mixdisc simulate SCENARIO.json [--workers K]
    mixdisc reproduce-all [--format table|csv|json] [--output-dir DIR] [--no-figures]
    mixdisc fixtures DIR

Exit codes: 0 success, 1 a reproduction row failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import report, tables
from .discrimination import helstrom_error
from .linalg import BasisMismatch, DensityOperator, InvalidDensityOperator
from .mc import InvalidScenario, Scenario, estimate_error, result_record

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DATA_FILES = ("eq2-N4.json", "rho1_two_photon.json", "rho2_two_photon.json", "pure_0.json", "pure_1.json")


class InputError(Exception):
    pass


def _data_path(name: str) -> Path:
    return Path(str(resources.files("mixdisc") / "data" / name))


def _load_json(path: str):
    p = Path(path)
    if not p.exists():
        bundled = _data_path(p.name)
        if p.parent == Path(".") and bundled.exists():
            p = bundled
        else:
            raise InputError(f"{path}: no such file")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from None


def _load_density(path: str) -> DensityOperator:
    try:
        return DensityOperator.from_dict(_load_json(path))
    except (InvalidDensityOperator, BasisMismatch, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_helstrom(args) -> int:
    rho1, rho2 = _load_density(args.rho1), _load_density(args.rho2)
    try:
        result = helstrom_error(rho1, rho2, args.prior)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(result.to_json(indent=2))
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        rows = tables.build_table(args.quantity, args.n_min, args.n_max)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = tables.to_csv(rows) if args.format == "csv" else tables.to_json(rows, indent=2) + "\n"
    sys.stdout.write(out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        scenario = Scenario.from_dict(_load_json(args.scenario))
    except InvalidScenario as exc:
        raise InputError(f"{args.scenario}: {exc}") from None
    est = estimate_error(scenario, workers=args.workers)
    print(json.dumps(result_record(scenario, est), indent=2))
    return EXIT_OK


def _report_csv(rows) -> str:
    return tables.to_csv([r.to_dict() for r in rows])


def cmd_reproduce_all(args) -> int:
    rows = report.reproduce_all()
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in rows], indent=2))
    elif args.format == "csv":
        sys.stdout.write(_report_csv(rows))
    else:
        print(report.format_table(rows))
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.csv").write_text(_report_csv(rows))
        (out / "report.json").write_text(json.dumps([r.to_dict() for r in rows], indent=2) + "\n")
        for quantity, n_max in (("counting", 50), ("overlap", 30), ("photon", 30), ("distinguishable", 30)):
            (out / f"table_{quantity}.csv").write_text(tables.to_csv(tables.build_table(quantity, 1, n_max)))
        if not args.no_figures:
            from . import plots

            for path in plots.render_all(out):
                print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def cmd_fixtures(args) -> int:
    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    for name in DATA_FILES:
        (out / name).write_text(_data_path(name).read_text())
        print(out / name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixdisc",
        description="Minimum-error discrimination of exact-count and probabilistic ensemble preparations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("helstrom", help="Helstrom error probability of two density operators")
    p.add_argument("rho1")
    p.add_argument("rho2")
    p.add_argument("--prior", type=float, default=0.5, help="prior probability of rho1 (default 1/2)")
    p.set_defaults(func=cmd_helstrom)

    p = sub.add_parser("table", help="per-N table of a closed-form quantity")
    p.add_argument("quantity", choices=tables.QUANTITIES)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the counting-test error")
    p.add_argument("scenario", help="scenario JSON file, or the name of a bundled one (e.g. eq2-N4.json)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reproduce-all", help="check every reproduced value; exit 1 on any failure")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--output-dir", help="also write report.csv/json, per-quantity tables and figures here")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering in --output-dir")
    p.set_defaults(func=cmd_reproduce_all)

    p = sub.add_parser("fixtures", help="copy the bundled JSON fixtures into a directory")
    p.add_argument("directory")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
