"""Run every figure preset and write one CSV per figure.

    python3 scripts/reproduce_figures.py --out results --trials 1000000

Also prints the orderings the figures are known for, so a run can be
eyeballed without plotting.
"""
from __future__ import annotations

import argparse
import time
from collections import defaultdict
from pathlib import Path

from cogsec.io import write_rows
from cogsec.montecarlo import Metric, run_sweep
from cogsec.presets import PRESETS


def sweep_preset(name: str, trials: int, seed: int):
    preset = PRESETS[name]
    grid = []
    for cfg in preset.variants:
        base = cfg.to_dict()
        del base["lambda_me"]
        grid += [{**base, "mer_db": db} for db in preset.mer_grid_db]
    return run_sweep(preset.variants[0], preset.schemes, grid, trials, seed, [preset.metric])


def summarize(rows) -> str:
    table = defaultdict(dict)
    for r in rows:
        table[(r.m_users, r.n_eves, r.lambda_me_db)][r.scheme.value] = (
            r.value if r.status == "ok" else float("nan"))
    lines = []
    for (m, n, db), vals in table.items():
        cells = "  ".join(f"{k}={v:.4g}" for k, v in vals.items())
        lines.append(f"  M={m} N={n} {db:6.1f} dB  {cells}")
    return "\n".join(lines)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--trials", type=int, default=None,
                    help="defaults: 2e5 for secrecy-rate figures, 1e6 for intercept figures")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", nargs="*", default=sorted(PRESETS))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.only:
        preset = PRESETS[name]
        trials = args.trials or (1_000_000 if preset.metric is Metric.INTERCEPT else 200_000)
        t0 = time.perf_counter()
        rows = sweep_preset(name, trials, args.seed)
        path = args.out / f"{name}.csv"
        write_rows(rows, path, "csv")
        print(f"{name}: {preset.description}  ({len(rows)} rows, "
              f"{time.perf_counter() - t0:.1f}s) -> {path}")
        print(summarize(rows))


if __name__ == "__main__":
    main()
