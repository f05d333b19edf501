"""Diversity order of the closed-form intercept probability for a grid of M, N.

    python3 scripts/diversity_table.py --mer-db 30:50:5

Optionally checks each row against a Monte Carlo slope at lower MER where
intercept events are still frequent enough to count.
"""
from __future__ import annotations

import argparse

from cogsec import analytic
from cogsec.config import SystemConfig
from cogsec.io import parse_mer_grid
from cogsec.model import Scheme
from cogsec.montecarlo import estimate_intercept


def mc_order(m: int, n: int, grid_db, trials: int, seed: int) -> float:
    pts = []
    for k, db in enumerate(grid_db):
        c = SystemConfig.symmetric(m, n, lambda_me=1.0).replace(mer_db=db)
        pts.append((c.lambda_me, estimate_intercept(c, Scheme.PROPOSED, trials, seed,
                                                    point=k).value))
    return analytic.diversity_fit(pts).diversity_order


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mer-db", default="30:50:5")
    ap.add_argument("--users", default="1,2,4,8")
    ap.add_argument("--eves", default="1,2,4")
    ap.add_argument("--mc", action="store_true", help="add a simulated slope over 10:20:5 dB")
    ap.add_argument("--trials", type=int, default=1_000_000)
    args = ap.parse_args()

    grid = parse_mer_grid(args.mer_db)
    users = [int(v) for v in args.users.split(",")]
    eves = [int(v) for v in args.eves.split(",")]
    print(f"{'M':>3} {'N':>3} {'d (closed form)':>16} {'residual':>10}"
          + (f" {'d (MC, 10-20 dB)':>17}" if args.mc else ""))
    for m in users:
        for n in eves:
            fit = analytic.diversity_fit(
                analytic.proposed_curve(SystemConfig.symmetric(m, n, lambda_me=1.0), grid))
            line = f"{m:>3} {n:>3} {fit.diversity_order:>16.4f} {fit.residual:>10.2e}"
            if args.mc and m <= 2:
                line += f" {mc_order(m, n, [10.0, 15.0, 20.0], args.trials, 0):>17.3f}"
            print(line)


if __name__ == "__main__":
    main()
