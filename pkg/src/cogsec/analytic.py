"""Closed-form and asymptotic intercept probabilities, diversity fits, moments.

Every expression here is a signed sum over the non-empty subsets of the
eavesdropper set (inclusion-exclusion over ``max_j |h_ie_j|^2 / N_e_j``).
The subset sums are built as flat arrays, so N is capped at
:data:`MAX_EVES`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .config import SystemConfig, linear_to_db

MAX_EVES = 24


@dataclass(frozen=True)
class SubsetTerm:
    members: tuple[int, ...]
    sign: int

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("subset must be non-empty")
        if self.sign != (1 if len(self.members) % 2 else -1):
            raise ValueError("sign must be +1 for odd and -1 for even subset sizes")


@dataclass(frozen=True)
class DiversityFit:
    slope: float
    intercept: float
    mer_grid_db: tuple[float, ...]
    residual: float

    @property
    def diversity_order(self) -> float:
        return -self.slope


def _check_n(n_eves: int) -> None:
    if n_eves < 1:
        raise ValueError("n_eves must be ≥ 1")
    if n_eves > MAX_EVES:
        raise ValueError(f"subset expansion refused for n_eves={n_eves} > {MAX_EVES}; "
                         "use Monte Carlo instead")


def enumerate_subsets(n_eves: int) -> list[SubsetTerm]:
    """All 2^N - 1 non-empty subsets, by size then lexicographically."""
    _check_n(n_eves)
    return [SubsetTerm(c, 1 if k % 2 else -1)
            for k in range(1, n_eves + 1)
            for c in combinations(range(n_eves), k)]


def _subset_sums(weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sum of ``weights`` over every non-empty subset, with its sign.

    Index ``k - 1`` of the output corresponds to the bitmask ``k``.
    """
    _check_n(len(weights))
    sums = np.zeros(1)
    signs = np.full(1, -1, dtype=np.int8)  # empty set: (-1)^(0+1)
    for w in weights:
        sums = np.concatenate([sums, sums + w])
        signs = np.concatenate([signs, -signs])
    return sums[1:], signs[1:]


def _signed_sum(terms: np.ndarray, signs: np.ndarray) -> float:
    # positive and negative parts accumulated separately to limit cancellation
    return float(np.sum(terms[signs > 0]) - np.sum(terms[signs < 0]))


def _ratio_weights(config: SystemConfig, user: int, with_mer: bool) -> np.ndarray:
    """N_e_j theta_ib / (N_b theta_ie_j), times lambda_me when ``with_mer``."""
    if not 0 <= user < config.m_users:
        raise IndexError(f"user index {user} out of range for m_users={config.m_users}")
    w = (config.noise_eve * config.theta_main[user]
         / (config.noise_cbs * config.theta_eve[user]))
    return w * config.lambda_me if with_mer else w


def per_user_intercept_term(config: SystemConfig, user: int) -> float:
    """Pr(|h_ib|^2 / N_b < max_j |h_ie_j|^2 / N_e_j) for one user."""
    sums, signs = _subset_sums(_ratio_weights(config, user, with_mer=True))
    value = _signed_sum(1.0 / (1.0 + sums), signs)
    return min(max(value, 0.0), 1.0)


def intercept_proposed_closed(config: SystemConfig) -> float:
    """Exact intercept probability of secrecy-optimal scheduling.

    Interception needs every user's main link to lose to its best
    eavesdropper, and users fade independently, so the per-user terms
    multiply.
    """
    return float(np.prod([per_user_intercept_term(config, i)
                          for i in range(config.m_users)]))


def intercept_traditional_m1(config: SystemConfig) -> float:
    if config.m_users != 1:
        raise ValueError("closed form for rate-optimal scheduling exists only for m_users = 1")
    return per_user_intercept_term(config, 0)


def intercept_an_upper_bound_m1(config: SystemConfig) -> float:
    """Upper bound on the single-user artificial-noise intercept probability."""
    if config.m_users != 1:
        raise ValueError("artificial-noise bound is stated for m_users = 1 only")
    return intercept_traditional_m1(config)


def _asymptotic_coefficient(config: SystemConfig, user: int, power: int) -> float:
    sums, signs = _subset_sums(_ratio_weights(config, user, with_mer=False))
    return _signed_sum(sums ** (-float(power)), signs)


def intercept_proposed_asymptotic(config: SystemConfig) -> float:
    """High-MER approximation, a constant times lambda_me^-M."""
    coeff = np.prod([_asymptotic_coefficient(config, i, 1) for i in range(config.m_users)])
    return float(coeff * config.lambda_me ** (-config.m_users))


def moment_t_mean(config: SystemConfig, user: int) -> float:
    """E[t] for t = N_b X / sigma_ib^2, X = max_j |h_ie_j|^2 / N_e_j."""
    return _asymptotic_coefficient(config, user, 1) / config.lambda_me


def moment_t_sq_mean(config: SystemConfig, user: int) -> float:
    return 2.0 * _asymptotic_coefficient(config, user, 2) / config.lambda_me ** 2


def diversity_fit(prob_at_mer: Iterable[tuple[float, float]]) -> DiversityFit:
    """Least-squares line through (log10 lambda_me, log10 p).

    ``prob_at_mer`` holds linear lambda_me values and probabilities.
    """
    pts = [(float(lam), float(p)) for lam, p in prob_at_mer]
    if len(pts) < 3:
        raise ValueError(f"need ≥ 3 points for a diversity fit, got {len(pts)}")
    lam = np.array([p[0] for p in pts])
    prob = np.array([p[1] for p in pts])
    if np.any(lam <= 0.0):
        raise ValueError("lambda_me values must be > 0")
    if np.any(np.diff(lam) <= 0.0):
        raise ValueError("lambda_me values must be strictly increasing")
    if np.any(prob <= 0.0) or np.any(prob >= 1.0):
        raise ValueError("probabilities must lie strictly inside (0, 1)")
    x, y = np.log10(lam), np.log10(prob)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(y - (slope * x + intercept))))
    return DiversityFit(float(slope), float(intercept),
                        tuple(linear_to_db(v) for v in lam), residual)


def proposed_curve(config: SystemConfig, mer_grid_db: Sequence[float]) -> list[tuple[float, float]]:
    """(lambda_me, closed-form intercept probability) along a dB grid."""
    out = []
    for db in mer_grid_db:
        cfg = config.replace(mer_db=db)
        out.append((cfg.lambda_me, intercept_proposed_closed(cfg)))
    return out
