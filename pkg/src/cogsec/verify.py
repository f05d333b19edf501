"""Analytic-vs-simulation cross checks behind ``cogsec-sim verify``.

Three kinds of check are reported:

* ``match``: closed form and Monte Carlo agree, pass iff ``|z| <= threshold``.
  For probabilities the z-score uses the binomial standard error at the
  closed-form value, which stays defined when the simulation sees no events.
* ``below``: a Monte Carlo probability sits under an analytic upper bound,
  pass iff ``z < -threshold``.
* ``ratio``: two analytic values agree to a relative tolerance; ``z`` holds
  the relative deviation and ``threshold`` the tolerance.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import analytic
from .config import SystemConfig
from .model import Scheme
from .montecarlo import estimate_intercept, estimate_t_moments

Z_THRESHOLD = 3.0
MOMENT_Z_THRESHOLD = 4.0
ASYMPTOTIC_MER_DB = 60.0
ASYMPTOTIC_TOLERANCE = 0.01


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    label: str
    kind: str
    analytic: float
    mc: float
    std_error: float
    z: float
    threshold: float
    passed: bool


@dataclass
class VerifyReport:
    checks: list[VerifyCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[VerifyCheck]:
        return [c for c in self.checks if not c.passed]

    def as_records(self) -> list[dict]:
        return [asdict(c) for c in self.checks]


def _z(diff: float, se: float) -> float:
    if se > 0.0:
        return diff / se
    return 0.0 if diff == 0.0 else math.copysign(math.inf, diff)


def binomial_match(name: str, label: str, p_exact: float, p_mc: float,
                   trials: int, threshold: float = Z_THRESHOLD) -> VerifyCheck:
    se = math.sqrt(p_exact * (1.0 - p_exact) / trials)
    z = _z(p_mc - p_exact, se)
    return VerifyCheck(name, label, "match", p_exact, p_mc, se, z, threshold,
                       abs(z) <= threshold)


def sample_match(name: str, label: str, exact: float, mean: float, se: float,
                 threshold: float) -> VerifyCheck:
    z = _z(mean - exact, se)
    return VerifyCheck(name, label, "match", exact, mean, se, z, threshold, abs(z) <= threshold)


def check_config(config: SystemConfig, trials: int, master_seed: int, label: str = "",
                 workers: Optional[int] = None) -> list[VerifyCheck]:
    """Every cross check that applies to ``config``."""
    label = label or f"M={config.m_users},N={config.n_eves},mer={config.mer_db:g}dB"
    checks = []

    est = estimate_intercept(config, Scheme.PROPOSED, trials, master_seed, workers, point=0)
    checks.append(binomial_match("proposed_closed_vs_mc", label,
                                 analytic.intercept_proposed_closed(config), est.value, trials))

    if config.m_users == 1:
        est = estimate_intercept(config, Scheme.TRADITIONAL, trials, master_seed, workers,
                                 point=1)
        exact = analytic.intercept_traditional_m1(config)
        checks.append(binomial_match("traditional_m1_closed_vs_mc", label, exact,
                                     est.value, trials))

        est = estimate_intercept(config, Scheme.ARTIFICIAL_NOISE, trials, master_seed,
                                 workers, allow_single_user=True, point=2)
        bound = analytic.intercept_an_upper_bound_m1(config)
        z = _z(est.value - bound, est.std_error)
        checks.append(VerifyCheck("an_m1_below_bound", label, "below", bound, est.value,
                                  est.std_error, z, Z_THRESHOLD, z < -Z_THRESHOLD))

    far = config.replace(mer_db=ASYMPTOTIC_MER_DB)
    approx, exact = analytic.intercept_proposed_asymptotic(far), analytic.intercept_proposed_closed(far)
    dev = approx / exact - 1.0 if exact > 0.0 else math.inf
    checks.append(VerifyCheck("asymptotic_ratio_at_60dB", label, "ratio", approx, exact, 0.0,
                              dev, ASYMPTOTIC_TOLERANCE, abs(dev) <= ASYMPTOTIC_TOLERANCE))

    mom = estimate_t_moments(config, 0, trials, master_seed, workers, point=3)
    checks.append(sample_match("moment_t_mean", label, analytic.moment_t_mean(config, 0),
                               mom.mean_t, mom.se_t, MOMENT_Z_THRESHOLD))
    checks.append(sample_match("moment_t_sq_mean", label, analytic.moment_t_sq_mean(config, 0),
                               mom.mean_t_sq, mom.se_t_sq, MOMENT_Z_THRESHOLD))
    return checks


def default_suite() -> list[tuple[str, SystemConfig]]:
    return [
        ("symmetric M=3 N=1 mer=0dB", SystemConfig.symmetric(3, 1, lambda_me=1.0)),
        ("symmetric M=2 N=2 mer=10dB", SystemConfig.symmetric(2, 2, lambda_me=10.0)),
        ("symmetric M=1 N=2 mer=10dB", SystemConfig.symmetric(1, 2, lambda_me=10.0)),
    ]


def run_verify(configs: list[tuple[str, SystemConfig]], trials: int, master_seed: int,
               workers: Optional[int] = None) -> VerifyReport:
    report = VerifyReport()
    for label, cfg in configs:
        report.checks.extend(check_config(cfg, trials, master_seed, label, workers))
    return report
