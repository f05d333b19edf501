"""``cogsec-sim`` command-line front end.

Exit status: 0 success, 1 usage or configuration error, 2 verification
failure. ``COGSEC_THREADS`` sets the worker count (0 = all cores); it never
changes the numbers written.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import analytic
from .config import ConfigError, SystemConfig
from .io import load_config, parse_mer_grid, rows_to_csv, rows_to_json
from .model import Scheme
from .montecarlo import (DEFAULT_INTERCEPT_TRIALS, DEFAULT_SECRECY_TRIALS, Metric,
                         SweepError, run_sweep)
from .presets import ALL_SCHEMES, get_preset
from .verify import default_suite, run_verify

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
COMMANDS = ("sweep-secrecy", "sweep-intercept", "diversity", "verify", "preset")
DEFAULT_DIVERSITY_GRID = "30:50:5"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cogsec-sim",
                description="Secrecy rate / intercept probability of multiuser "
                            "scheduling in underlay cognitive radio.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", type=Path, help="YAML scenario file")
    p.add_argument("--preset", help="figure preset: fig2 .. fig6")
    p.add_argument("--out", type=Path, help="output file (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--trials", type=int, help="Monte Carlo trials per point")
    p.add_argument("--seed", type=int, default=0, help="unsigned 64-bit master seed")
    p.add_argument("--mer-db", help="MER grid in dB as start:stop:step (stop inclusive)")
    p.add_argument("--schemes", help="comma list of proposed,traditional,an")
    p.add_argument("--dry-run", action="store_true", help="print the resolved grid only")
    return p


# ---------------------------------------------------------------------------


def _variants(args: argparse.Namespace) -> tuple[list[SystemConfig], Optional[Any]]:
    if args.config and args.preset:
        raise UsageError("give --config or --preset, not both")
    if args.preset:
        preset = get_preset(args.preset)
        return list(preset.variants), preset
    if args.config:
        return [load_config(args.config)], None
    raise UsageError("one of --config or --preset is required")


def _mer_grid(args: argparse.Namespace, preset, default: Optional[str] = None) -> Optional[list[float]]:
    if args.mer_db:
        return parse_mer_grid(args.mer_db)
    if default:
        return parse_mer_grid(default)
    if preset is not None:
        return list(preset.mer_grid_db)
    return None  # keep each config's own MER


def _schemes(args: argparse.Namespace, preset) -> list[Scheme]:
    if args.schemes:
        names = [s for s in args.schemes.split(",") if s.strip()]
        if not names:
            raise UsageError("--schemes must name at least one scheme")
        try:
            return list(dict.fromkeys(Scheme.parse(s) for s in names))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return list(preset.schemes) if preset is not None else list(ALL_SCHEMES)


def _grid_points(configs: Sequence[SystemConfig],
                 mer_db: Optional[list[float]]) -> list[dict[str, Any]]:
    points = []
    for cfg in configs:
        base = cfg.to_dict()
        del base["lambda_me"]
        for db in (mer_db if mer_db is not None else [cfg.mer_db]):
            points.append({**base, "mer_db": db})
    return points


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _print_grid(grid: Sequence[dict[str, Any]], schemes: Sequence[Scheme], trials: int) -> None:
    print(f"schemes: {','.join(s.value for s in schemes)}  trials: {trials}")
    for k, pt in enumerate(grid):
        print(f"point {k}: m_users={pt['m_users']} n_eves={pt['n_eves']} "
              f"mer_db={pt['mer_db']:g}")


# ---------------------------------------------------------------------------


def cmd_sweep(args: argparse.Namespace, metrics: Optional[Sequence[Metric]] = None) -> int:
    configs, preset = _variants(args)
    if metrics is None:
        metrics = [Metric.SECRECY_RATE, Metric.INTERCEPT]
    schemes = _schemes(args, preset)
    grid = _grid_points(configs, _mer_grid(args, preset))
    if args.trials is not None:
        trials = args.trials
    elif Metric.INTERCEPT in metrics and (preset is None or preset.metric is Metric.INTERCEPT):
        trials = DEFAULT_INTERCEPT_TRIALS
    else:
        trials = DEFAULT_SECRECY_TRIALS
    if trials < 1:
        raise UsageError("--trials must be ≥ 1")
    if args.dry_run:
        _print_grid(grid, schemes, trials)
        return EXIT_OK
    rows = run_sweep(configs[0], schemes, grid, trials, args.seed, metrics)
    _emit(rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows), args.out)
    return EXIT_OK


def cmd_diversity(args: argparse.Namespace) -> int:
    configs, preset = _variants(args)
    grid = _mer_grid(args, preset, default=DEFAULT_DIVERSITY_GRID)
    if len(grid) < 3:
        raise UsageError(f"need ≥ 3 points for a diversity fit, got {len(grid)}")
    if args.dry_run:
        for cfg in configs:
            print(f"m_users={cfg.m_users} n_eves={cfg.n_eves} mer_db={grid}")
        return EXIT_OK
    records = []
    for cfg in configs:
        curve = analytic.proposed_curve(cfg, grid)
        fit = analytic.diversity_fit(curve)
        records.append({
            "m_users": cfg.m_users, "n_eves": cfg.n_eves,
            "slope": fit.slope, "intercept": fit.intercept,
            "diversity_order": fit.diversity_order, "residual": fit.residual,
            "mer_grid_db": list(fit.mer_grid_db),
            "intercept_probability": [p for _, p in curve],
        })
    if args.format == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        buf = io.StringIO()
        cols = ("m_users", "n_eves", "slope", "intercept", "diversity_order", "residual",
                "mer_grid_db")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for rec in records:
            writer.writerow([" ".join(f"{v:g}" for v in rec[c]) if c == "mer_grid_db"
                             else rec[c] for c in cols])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.config or args.preset:
        configs, preset = _variants(args)
        mer = parse_mer_grid(args.mer_db) if args.mer_db else None
        suite = []
        for cfg in configs:
            for db in (mer if mer is not None else [cfg.mer_db]):
                c = cfg.replace(mer_db=db)
                suite.append((f"M={c.m_users},N={c.n_eves},mer={db:g}dB", c))
    else:
        suite = default_suite()
    trials = args.trials if args.trials is not None else DEFAULT_INTERCEPT_TRIALS
    if trials < 1:
        raise UsageError("--trials must be ≥ 1")
    if args.dry_run:
        for label, _ in suite:
            print(label)
        return EXIT_OK
    report = run_verify(suite, trials, args.seed)
    records = report.as_records()
    if args.format == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        text = buf.getvalue()
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        print(f"[{mark}] {c.name} ({c.label}): analytic={c.analytic:.6g} "
              f"mc={c.mc:.6g} z={c.z:.3g}", file=sys.stderr)
    if not report.passed:
        print(f"{len(report.failures)} check(s) failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sweep-secrecy":
            return cmd_sweep(args, [Metric.SECRECY_RATE])
        if args.command == "sweep-intercept":
            return cmd_sweep(args, [Metric.INTERCEPT])
        if args.command == "preset":
            if not args.preset:
                raise UsageError("the preset command needs --preset")
            return cmd_sweep(args)
        if args.command == "diversity":
            return cmd_diversity(args)
        return cmd_verify(args)
    except (UsageError, ConfigError, SweepError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"cogsec-sim: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
