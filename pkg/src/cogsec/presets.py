"""Parameter sets of the published secrecy-rate and intercept-probability figures.

Each preset is one or more config variants (the figures that compare
several M or N values) swept over a MER grid in dB. Captions give powers
in dBm; 0 dBm is 1 mW, which is the linear unit used throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SystemConfig, db_to_linear
from .model import Scheme
from .montecarlo import Metric


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    variants: tuple[SystemConfig, ...]
    mer_grid_db: tuple[float, ...]
    schemes: tuple[Scheme, ...]
    metric: Metric


ALL_SCHEMES = (Scheme.PROPOSED, Scheme.TRADITIONAL, Scheme.ARTIFICIAL_NOISE)
SCHEDULERS = (Scheme.PROPOSED, Scheme.TRADITIONAL)


def _grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    return tuple(float(v) for v in np.arange(start, stop + step / 2, step))


def _secrecy_base(m_users: int, n_eves: int) -> SystemConfig:
    # M, N vary; I = N_b = N_e = 0 dBm, sigma_ib^2 = 0.8 with theta_ib = 1
    return SystemConfig(
        m_users=m_users, n_eves=n_eves,
        interference_cap=db_to_linear(0.0), noise_cbs=db_to_linear(0.0),
        noise_eve=db_to_linear(0.0),
        sigma_m_sq=0.8, theta_main=1.0, theta_eve=0.6, sigma_ip_sq=0.5,
    )


def _intercept_base(m_users: int, n_eves: int) -> SystemConfig:
    return SystemConfig(
        m_users=m_users, n_eves=n_eves,
        interference_cap=db_to_linear(0.0), noise_cbs=db_to_linear(0.0),
        noise_eve=db_to_linear(0.0),
        sigma_m_sq=1.0, theta_main=1.0, theta_eve=1.0, sigma_ip_sq=1.0,
    )


SECRECY_GRID = _grid(-10.0, 30.0, 5.0)
INTERCEPT_GRID = _grid(0.0, 30.0, 5.0)

PRESETS: dict[str, Preset] = {
    "fig2": Preset("fig2", "secrecy rate vs MER, M=4, N=2",
                   (_secrecy_base(4, 2),), SECRECY_GRID, ALL_SCHEMES, Metric.SECRECY_RATE),
    "fig3": Preset("fig3", "secrecy rate vs MER, M=4, N in {2, 8}",
                   (_secrecy_base(4, 2), _secrecy_base(4, 8)),
                   SECRECY_GRID, ALL_SCHEMES, Metric.SECRECY_RATE),
    "fig4": Preset("fig4", "secrecy rate vs MER, N=2, M in {2, 8}",
                   (_secrecy_base(2, 2), _secrecy_base(8, 2)),
                   SECRECY_GRID, ALL_SCHEMES, Metric.SECRECY_RATE),
    "fig5": Preset("fig5", "intercept probability vs MER, M=N=4",
                   (_intercept_base(4, 4),), INTERCEPT_GRID, ALL_SCHEMES, Metric.INTERCEPT),
    "fig6": Preset("fig6", "intercept probability vs MER, N=4, M in {4, 6, 8}",
                   (_intercept_base(4, 4), _intercept_base(6, 4), _intercept_base(8, 4)),
                   INTERCEPT_GRID, SCHEDULERS, Metric.INTERCEPT),
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
