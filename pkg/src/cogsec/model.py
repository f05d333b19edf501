"""Channel draws, per-realization rates and the three transmission schemes.

A :class:`ChannelRealization` holds either a single joint draw (fields
shaped ``(M,)`` / ``(M, N)``) or a batch of draws with a leading trial axis
(``(B, M)`` / ``(B, M, N)``). The scalar operations below take single
realizations; the ``*_batch`` kernels are what the Monte Carlo driver uses.
All rates are in bits/s/Hz.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .config import SystemConfig


class Scheme(str, enum.Enum):
    PROPOSED = "proposed"
    TRADITIONAL = "traditional"
    ARTIFICIAL_NOISE = "an"

    @classmethod
    def parse(cls, name: "str | Scheme") -> "Scheme":
        if isinstance(name, Scheme):
            return name
        key = name.strip().lower()
        aliases = {"artificial_noise": "an", "artificial-noise": "an",
                   "artificialnoise": "an"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown scheme {name!r}; expected one of "
                             f"{[s.value for s in cls]}") from None


@dataclass(frozen=True)
class ChannelRealization:
    h_main: np.ndarray
    h_primary: np.ndarray
    h_eve: np.ndarray

    @cached_property
    def g_main(self) -> np.ndarray:
        return _sq_abs(self.h_main)

    @cached_property
    def g_primary(self) -> np.ndarray:
        return _sq_abs(self.h_primary)

    @cached_property
    def g_eve(self) -> np.ndarray:
        return _sq_abs(self.h_eve)

    @property
    def batched(self) -> bool:
        return self.h_main.ndim == 2

    def __len__(self) -> int:
        if not self.batched:
            raise TypeError("single realization has no length")
        return self.h_main.shape[0]

    def __getitem__(self, k: int) -> "ChannelRealization":
        if not self.batched:
            raise TypeError("single realization is not indexable")
        return ChannelRealization(self.h_main[k], self.h_primary[k], self.h_eve[k])


@dataclass(frozen=True)
class SchemeOutcome:
    scheme: Scheme
    selected_user: Optional[int]
    rate_main: float
    rate_eve: float

    @property
    def secrecy_rate(self) -> float:
        return max(self.rate_main - self.rate_eve, 0.0)

    @property
    def intercept(self) -> bool:
        return self.rate_main < self.rate_eve


@dataclass(frozen=True)
class BatchOutcome:
    """Per-trial arrays for one scheme over a realization batch."""

    scheme: Scheme
    selected_user: Optional[np.ndarray]
    rate_main: np.ndarray
    rate_eve: np.ndarray

    @property
    def margin(self) -> np.ndarray:
        return self.rate_main - self.rate_eve

    @property
    def secrecy_rate(self) -> np.ndarray:
        return np.maximum(self.margin, 0.0)

    @property
    def intercept(self) -> np.ndarray:
        return self.rate_main < self.rate_eve


def _sq_abs(h: np.ndarray) -> np.ndarray:
    return h.real * h.real + h.imag * h.imag


# ---------------------------------------------------------------------------
# sampling


def _complex_gaussian(rng: np.random.Generator, shape: tuple[int, ...],
                      variance: np.ndarray) -> np.ndarray:
    """CN(0, variance): real and imaginary parts each N(0, variance/2)."""
    scale = np.sqrt(np.broadcast_to(variance, shape) / 2.0)
    h = scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    # |h|^2 == 0 only through underflow; redraw those entries
    zero = _sq_abs(h) == 0.0
    while zero.any():
        k = int(zero.sum())
        s = scale[zero]
        h[zero] = s * (rng.standard_normal(k) + 1j * rng.standard_normal(k))
        zero = _sq_abs(h) == 0.0
    return h


def sample_realizations(config: SystemConfig, rng: np.random.Generator,
                        size: Optional[int] = None) -> ChannelRealization:
    """Draw ``size`` independent joint channel realizations (or one if None).

    Draw order is main links, primary links, then wiretap links, so a given
    generator state always maps to the same realization.
    """
    m, n = config.m_users, config.n_eves
    lead = () if size is None else (int(size),)
    h_main = _complex_gaussian(rng, lead + (m,), config.sigma_main_sq)
    h_primary = _complex_gaussian(rng, lead + (m,), config.sigma_ip_sq)
    h_eve = _complex_gaussian(rng, lead + (m, n), config.sigma_eve_sq)
    return ChannelRealization(h_main, h_primary, h_eve)


def sample_realization(config: SystemConfig, rng: np.random.Generator) -> ChannelRealization:
    return sample_realizations(config, rng)


# ---------------------------------------------------------------------------
# per-user rates (work on single or batched realizations)


def transmit_power(config: SystemConfig, realization: ChannelRealization, user: int):
    """Interference-limited power I / |h_ip|^2 of ``user``."""
    _check_user(config, user)
    return config.interference_cap / realization.g_primary[..., user]


def rate_main(config: SystemConfig, realization: ChannelRealization, user: int):
    _check_user(config, user)
    return _main_rates(config, realization)[..., user]


def rate_eve(config: SystemConfig, realization: ChannelRealization, user: int, eve: int):
    _check_user(config, user)
    if not 0 <= eve < config.n_eves:
        raise IndexError(f"eavesdropper index {eve} out of range for n_eves={config.n_eves}")
    return _eve_rates(config, realization)[..., user, eve]


def rate_eve_max(config: SystemConfig, realization: ChannelRealization, user: int):
    _check_user(config, user)
    return _eve_rates(config, realization).max(axis=-1)[..., user]


def _check_user(config: SystemConfig, user: int) -> None:
    if not 0 <= user < config.m_users:
        raise IndexError(f"user index {user} out of range for m_users={config.m_users}")


def _main_rates(config: SystemConfig, r: ChannelRealization) -> np.ndarray:
    snr = config.interference_cap * r.g_main / (r.g_primary * config.noise_cbs)
    return np.log2(1.0 + snr)


def _eve_rates(config: SystemConfig, r: ChannelRealization) -> np.ndarray:
    snr = (config.interference_cap * r.g_eve
           / (r.g_primary[..., None] * config.noise_eve))
    return np.log2(1.0 + snr)


# ---------------------------------------------------------------------------
# schemes, batched


def _pick(values: np.ndarray, index: np.ndarray) -> np.ndarray:
    return np.take_along_axis(values, index[..., None], axis=-1)[..., 0]


def proposed_batch(config: SystemConfig, r: ChannelRealization) -> BatchOutcome:
    rb = _main_rates(config, r)
    re = _eve_rates(config, r).max(axis=-1)
    best = np.argmax(rb - re, axis=-1)  # first index wins ties
    return BatchOutcome(Scheme.PROPOSED, best, _pick(rb, best), _pick(re, best))


def traditional_batch(config: SystemConfig, r: ChannelRealization) -> BatchOutcome:
    rb = _main_rates(config, r)
    best = np.argmax(rb, axis=-1)
    re = _eve_rates(config, r).max(axis=-1)
    return BatchOutcome(Scheme.TRADITIONAL, best, _pick(rb, best), _pick(re, best))


def artificial_noise_batch(config: SystemConfig, r: ChannelRealization,
                           allow_single_user: bool = False) -> BatchOutcome:
    """Cooperative AN rates: coherent main link, AN-limited wiretap links.

    ``allow_single_user`` evaluates the same rate expressions at M = 1,
    where no null-space noise exists physically; it is only meant for
    checking the single-user intercept bound.
    """
    m = config.m_users
    if m < 2 and not allow_single_user:
        raise ValueError("artificial noise needs m_users ≥ 2 (null constraint unsatisfiable)")
    amp = np.sqrt(r.g_primary)
    s_main = _sq_abs((r.h_main / amp).sum(axis=-1))
    s_eve = _sq_abs((r.h_eve / amp[..., None]).sum(axis=-2))
    cap = config.interference_cap
    rb = np.log2(1.0 + cap / (2.0 * m * config.noise_cbs) * s_main)
    re = np.log2(1.0 + cap * s_eve / (cap * s_eve + 2.0 * m * config.noise_eve))
    return BatchOutcome(Scheme.ARTIFICIAL_NOISE, None, rb, re.max(axis=-1))


def run_scheme_batch(config: SystemConfig, r: ChannelRealization, scheme: Scheme,
                     allow_single_user: bool = False) -> BatchOutcome:
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.PROPOSED:
        return proposed_batch(config, r)
    if scheme is Scheme.TRADITIONAL:
        return traditional_batch(config, r)
    return artificial_noise_batch(config, r, allow_single_user)


# ---------------------------------------------------------------------------
# schemes, single realization


def _single(config: SystemConfig, realization: ChannelRealization, scheme: Scheme,
            allow_single_user: bool = False) -> SchemeOutcome:
    if realization.batched:
        raise ValueError("expected a single realization; use run_scheme_batch for batches")
    one = ChannelRealization(realization.h_main[None], realization.h_primary[None],
                             realization.h_eve[None])
    out = run_scheme_batch(config, one, scheme, allow_single_user)
    sel = None if out.selected_user is None else int(out.selected_user[0])
    return SchemeOutcome(out.scheme, sel, float(out.rate_main[0]), float(out.rate_eve[0]))


def schedule_proposed(config: SystemConfig, realization: ChannelRealization) -> SchemeOutcome:
    """Pick the user with the largest main-minus-best-wiretap rate."""
    return _single(config, realization, Scheme.PROPOSED)


def schedule_traditional(config: SystemConfig, realization: ChannelRealization) -> SchemeOutcome:
    """Pick the user with the largest main-link rate, ignoring eavesdroppers."""
    return _single(config, realization, Scheme.TRADITIONAL)


def artificial_noise_rates(config: SystemConfig, realization: ChannelRealization,
                           allow_single_user: bool = False) -> SchemeOutcome:
    return _single(config, realization, Scheme.ARTIFICIAL_NOISE, allow_single_user)


def construct_noise_vector(config: SystemConfig, realization: ChannelRealization,
                           rng: np.random.Generator) -> np.ndarray:
    """Random artificial-noise vector that cancels at the CBS.

    Returns ``w`` with sum_i sqrt(P_i/2) h_main[i] w_i = 0, where
    P_i = I / (M |h_ip|^2), scaled so that mean |w_i|^2 = 1.
    """
    m = config.m_users
    if m < 2:
        raise ValueError("artificial noise needs m_users ≥ 2 (null constraint unsatisfiable)")
    if realization.batched:
        raise ValueError("expected a single realization")
    power = config.interference_cap / (m * realization.g_primary)
    a = np.sqrt(power / 2.0) * realization.h_main
    # constraint is a^T w = 0, i.e. w orthogonal to conj(a)
    b = np.conj(a)
    bb = np.vdot(b, b).real
    while True:
        v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        w = v - b * (np.vdot(b, v) / bb)
        norm = np.linalg.norm(w)
        if norm > 1e-12 * np.linalg.norm(v):
            break
    w = w * np.sqrt(m) / norm
    # one refinement pass to push the residual to rounding level
    w = w - b * (np.vdot(b, w) / bb)
    return w * np.sqrt(m) / np.linalg.norm(w)
