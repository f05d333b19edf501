"""Monte Carlo estimates of ergodic secrecy rate and intercept probability.

Trials are split into fixed-size blocks. Block ``k`` of grid point ``p``
draws from ``SeedSequence(master_seed, spawn_key=(p, k))`` and block
results are merged in block order, so the numbers do not depend on how
many worker threads ran the blocks. Every scheme at a grid point sees the
same channel draws.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence, TypeVar

import numpy as np

from .config import ConfigError, SystemConfig
from .model import Scheme, run_scheme_batch, sample_realizations

BLOCK_SIZE = 1 << 16
DEFAULT_INTERCEPT_TRIALS = 1_000_000
DEFAULT_SECRECY_TRIALS = 200_000
# fewer intercept events than this and the estimate is reported as unresolved
MIN_RESOLVED_EVENTS = 10

T = TypeVar("T")


class Metric(str, enum.Enum):
    SECRECY_RATE = "ergodic_secrecy_rate"
    INTERCEPT = "intercept_probability"

    @classmethod
    def parse(cls, name: "str | Metric") -> "Metric":
        if isinstance(name, Metric):
            return name
        key = name.strip().lower()
        aliases = {"secrecy": cls.SECRECY_RATE.value, "intercept": cls.INTERCEPT.value}
        return cls(aliases.get(key, key))


@dataclass(frozen=True)
class EstimateResult:
    metric: Metric
    scheme: Scheme
    value: float
    std_error: float
    trials: int
    master_seed: int

    @property
    def resolved(self) -> bool:
        if self.metric is not Metric.INTERCEPT:
            return True
        return round(self.value * self.trials) >= MIN_RESOLVED_EVENTS

    @property
    def status(self) -> str:
        return "ok" if self.resolved else "unresolved"


@dataclass(frozen=True)
class SweepRow:
    scheme: Scheme
    m_users: int
    n_eves: int
    lambda_me_db: float
    metric: Metric
    value: float
    std_error: float
    trials: int
    master_seed: int
    status: str = "ok"

    def as_record(self) -> dict[str, Any]:
        return {
            "scheme": self.scheme.value,
            "m_users": self.m_users,
            "n_eves": self.n_eves,
            "lambda_me_db": self.lambda_me_db,
            "metric": self.metric.value,
            "value": self.value,
            "std_error": self.std_error,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "status": self.status,
        }


@dataclass
class Tally:
    """Running count, mean and M2 of the secrecy rate plus intercept count."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0
    intercepts: int = 0

    @classmethod
    def from_samples(cls, secrecy: np.ndarray, intercept: np.ndarray) -> "Tally":
        n = secrecy.size
        mean = float(np.mean(secrecy)) if n else 0.0
        m2 = float(np.sum((secrecy - mean) ** 2)) if n else 0.0
        return cls(n, mean, m2, int(np.count_nonzero(intercept)))

    def merge(self, other: "Tally") -> "Tally":
        # Chan et al. pairwise update
        n = self.n + other.n
        if n == 0:
            return Tally()
        delta = other.mean - self.mean
        mean = self.mean + delta * other.n / n
        m2 = self.m2 + other.m2 + delta * delta * self.n * other.n / n
        return Tally(n, mean, m2, self.intercepts + other.intercepts)

    @property
    def intercept_probability(self) -> float:
        return self.intercepts / self.n

    def estimate(self, metric: Metric, scheme: Scheme, master_seed: int) -> EstimateResult:
        if metric is Metric.INTERCEPT:
            p = self.intercept_probability
            se = math.sqrt(p * (1.0 - p) / self.n)
            return EstimateResult(metric, scheme, p, se, self.n, master_seed)
        var = self.m2 / (self.n - 1) if self.n > 1 else 0.0
        return EstimateResult(metric, scheme, self.mean, math.sqrt(var / self.n),
                              self.n, master_seed)


def worker_count(workers: Optional[int] = None) -> int:
    """Explicit ``workers`` wins, then ``COGSEC_THREADS``; 0 means all cores."""
    if workers is None:
        raw = os.environ.get("COGSEC_THREADS", "0").strip() or "0"
        try:
            workers = int(raw)
        except ValueError:
            raise ConfigError(f"COGSEC_THREADS must be an integer, got {raw!r}") from None
    if workers < 0:
        raise ConfigError("worker count must be ≥ 0")
    return workers or (os.cpu_count() or 1)


def block_rng(master_seed: int, point: int, block: int) -> np.random.Generator:
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(point), int(block)))
    return np.random.Generator(np.random.PCG64(seq))


def _block_sizes(trials: int) -> list[int]:
    full, rest = divmod(trials, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def _run_blocks(run_block: Callable[[tuple[int, int]], T], trials: int,
                workers: Optional[int]) -> list[T]:
    jobs = list(enumerate(_block_sizes(trials)))
    n_workers = min(worker_count(workers), len(jobs))
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            return list(pool.map(run_block, jobs))
    return [run_block(job) for job in jobs]


def _check_request(config: SystemConfig, schemes: Sequence[Scheme], trials: int,
                   master_seed: int, allow_single_user: bool) -> None:
    if int(trials) != trials or trials < 1:
        raise ValueError("trials must be a positive integer")
    if not 0 <= int(master_seed) < 2 ** 64:
        raise ValueError("master_seed must be an unsigned 64-bit integer")
    if (Scheme.ARTIFICIAL_NOISE in schemes and config.m_users < 2
            and not allow_single_user):
        raise ValueError("artificial noise needs m_users ≥ 2 (null constraint unsatisfiable)")


def simulate(config: SystemConfig, schemes: Iterable["Scheme | str"], trials: int,
             master_seed: int, point: int = 0, workers: Optional[int] = None,
             allow_single_user: bool = False) -> dict[Scheme, Tally]:
    """Run ``trials`` realizations and tally every scheme on the same draws."""
    schemes = list(dict.fromkeys(Scheme.parse(s) for s in schemes))
    if not schemes:
        raise ValueError("at least one scheme is required")
    _check_request(config, schemes, trials, master_seed, allow_single_user)

    def run_block(args: tuple[int, int]) -> dict[Scheme, Tally]:
        k, size = args
        batch = sample_realizations(config, block_rng(master_seed, point, k), size)
        out = {}
        for s in schemes:
            res = run_scheme_batch(config, batch, s, allow_single_user)
            out[s] = Tally.from_samples(res.secrecy_rate, res.intercept)
        return out

    parts = _run_blocks(run_block, int(trials), workers)

    totals = {s: Tally() for s in schemes}
    for part in parts:  # block order, whatever the scheduling was
        for s in schemes:
            totals[s] = totals[s].merge(part[s])
    return totals


def estimate_secrecy_rate(config: SystemConfig, scheme: "Scheme | str",
                          trials: int = DEFAULT_SECRECY_TRIALS, master_seed: int = 0,
                          workers: Optional[int] = None,
                          allow_single_user: bool = False, point: int = 0) -> EstimateResult:
    scheme = Scheme.parse(scheme)
    tally = simulate(config, [scheme], trials, master_seed, point=point, workers=workers,
                     allow_single_user=allow_single_user)[scheme]
    return tally.estimate(Metric.SECRECY_RATE, scheme, master_seed)


def estimate_intercept(config: SystemConfig, scheme: "Scheme | str",
                       trials: int = DEFAULT_INTERCEPT_TRIALS, master_seed: int = 0,
                       workers: Optional[int] = None,
                       allow_single_user: bool = False, point: int = 0) -> EstimateResult:
    """Fraction of realizations in which the scheme is intercepted.

    ``allow_single_user`` lets the artificial-noise rate expressions be
    evaluated at M = 1 (used only to check the single-user bound).
    """
    scheme = Scheme.parse(scheme)
    tally = simulate(config, [scheme], trials, master_seed, point=point, workers=workers,
                     allow_single_user=allow_single_user)[scheme]
    return tally.estimate(Metric.INTERCEPT, scheme, master_seed)


class SweepError(ValueError):
    pass


def run_sweep(base_config: SystemConfig, scheme_set: Iterable["Scheme | str"],
              grid: Sequence[Mapping[str, Any]], trials: int, master_seed: int,
              metrics: Iterable["Metric | str"] = (Metric.SECRECY_RATE, Metric.INTERCEPT),
              workers: Optional[int] = None) -> list[SweepRow]:
    """Evaluate every scheme at every grid point.

    Each grid entry is a mapping of :meth:`SystemConfig.replace` overrides
    (``mer_db`` included). Rows come out grid-point-major, then scheme in
    the given order, then metric.
    """
    schemes = list(dict.fromkeys(Scheme.parse(s) for s in scheme_set))
    metric_list = list(dict.fromkeys(Metric.parse(m) for m in metrics))
    if not schemes:
        raise SweepError("scheme set must be non-empty")
    if not metric_list:
        raise SweepError("at least one metric is required")
    rows: list[SweepRow] = []
    for point, overrides in enumerate(grid):
        try:
            cfg = base_config.replace(**dict(overrides))
            tallies = simulate(cfg, schemes, trials, master_seed, point=point,
                               workers=workers)
        except (ConfigError, ValueError) as exc:
            raise SweepError(f"grid point {point} ({dict(overrides)}): {exc}") from exc
        for s in schemes:
            for metric in metric_list:
                est = tallies[s].estimate(metric, s, master_seed)
                rows.append(SweepRow(s, cfg.m_users, cfg.n_eves, cfg.mer_db, metric,
                                     est.value, est.std_error, est.trials,
                                     int(master_seed), est.status))
    return rows


@dataclass(frozen=True)
class MomentEstimate:
    mean_t: float
    se_t: float
    mean_t_sq: float
    se_t_sq: float
    trials: int


def estimate_t_moments(config: SystemConfig, user: int, trials: int, master_seed: int,
                       workers: Optional[int] = None, point: int = 0) -> MomentEstimate:
    """Sample mean of t and t^2, t = N_b max_j(|h_ie_j|^2 / N_e_j) / sigma_ib^2."""
    if not 0 <= user < config.m_users:
        raise IndexError(f"user index {user} out of range for m_users={config.m_users}")
    _check_request(config, [], trials, master_seed, False)
    scale = config.noise_cbs / config.sigma_main_sq[user]

    def run_block(args: tuple[int, int]) -> tuple[Tally, Tally]:
        k, size = args
        batch = sample_realizations(config, block_rng(master_seed, point, k), size)
        t = scale * (batch.g_eve[:, user, :] / config.noise_eve).max(axis=-1)
        none = np.zeros(0, dtype=bool)
        return Tally.from_samples(t, none), Tally.from_samples(t * t, none)

    parts = _run_blocks(run_block, int(trials), workers)
    t1, t2 = Tally(), Tally()
    for a, b in parts:
        t1, t2 = t1.merge(a), t2.merge(b)
    se = lambda t: math.sqrt(t.m2 / (t.n - 1) / t.n) if t.n > 1 else 0.0  # noqa: E731
    return MomentEstimate(t1.mean, se(t1), t2.mean, se(t2), t1.n)
