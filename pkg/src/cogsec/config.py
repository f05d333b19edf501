"""Scenario parameters for the underlay cognitive network.

Everything in here is linear-scale. dBm values are converted at the
file/CLI boundary (see :mod:`cogsec.io`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np


class ConfigError(ValueError):
    """Raised when a configuration violates one of its invariants."""


def db_to_linear(db: float) -> float:
    return float(10.0 ** (db / 10.0))


def linear_to_db(value: float) -> float:
    return float(10.0 * np.log10(value))


FIELDS = ("m_users", "n_eves", "interference_cap", "noise_cbs", "noise_eve",
          "sigma_m_sq", "lambda_me", "theta_main", "theta_eve", "sigma_ip_sq")


def _as_vector(name: str, value: Any, length: int) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(length, float(arr))
    if arr.shape != (length,):
        raise ConfigError(f"{name} must have length {length}, got shape {arr.shape}")
    return arr


def _as_matrix(name: str, value: Any, rows: int, cols: int) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full((rows, cols), float(arr))
    if arr.shape != (rows, cols):
        raise ConfigError(f"{name} must have shape ({rows}, {cols}), got {arr.shape}")
    return arr


def _uniform(arr: np.ndarray) -> bool:
    return arr.size > 0 and bool(np.all(arr == arr.flat[0]))


@dataclass(frozen=True, eq=False)
class SystemConfig:
    """One scenario: M cognitive users, N eavesdroppers, one primary receiver.

    Vector and matrix fields accept a scalar, which is broadcast to every
    user (and eavesdropper). ``theta_eve`` is indexed ``[user, eve]``.
    """

    m_users: int
    n_eves: int
    interference_cap: float = 1.0
    noise_cbs: float = 1.0
    noise_eve: Any = 1.0
    sigma_m_sq: float = 1.0
    lambda_me: float = 1.0
    theta_main: Any = 1.0
    theta_eve: Any = 1.0
    sigma_ip_sq: Any = 1.0

    def __post_init__(self) -> None:
        m, n = self.m_users, self.n_eves
        if isinstance(m, bool) or int(m) != m or m < 1:
            raise ConfigError("m_users must be ≥ 1")
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise ConfigError("n_eves must be ≥ 1")
        m, n = int(m), int(n)
        object.__setattr__(self, "m_users", m)
        object.__setattr__(self, "n_eves", n)
        for name in ("interference_cap", "noise_cbs", "sigma_m_sq", "lambda_me"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value <= 0.0:
                raise ConfigError(f"{name} must be > 0, got {value!r}")
            object.__setattr__(self, name, value)

        arrays = {
            "noise_eve": _as_vector("noise_eve", self.noise_eve, n),
            "theta_main": _as_vector("theta_main", self.theta_main, m),
            "theta_eve": _as_matrix("theta_eve", self.theta_eve, m, n),
            "sigma_ip_sq": _as_vector("sigma_ip_sq", self.sigma_ip_sq, m),
        }
        for name, arr in arrays.items():
            if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
                raise ConfigError(f"{name} must be > 0 element-wise")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.sigma_e_sq <= 0.0:
            raise ConfigError("sigma_m_sq / lambda_me must be > 0")

    # derived channel gains -------------------------------------------------

    @property
    def sigma_e_sq(self) -> float:
        """Reference wiretap-link gain, sigma_m_sq / lambda_me."""
        return self.sigma_m_sq / self.lambda_me

    @property
    def sigma_main_sq(self) -> np.ndarray:
        """Per-user CU-to-CBS mean gains, shape (M,)."""
        return self.theta_main * self.sigma_m_sq

    @property
    def sigma_eve_sq(self) -> np.ndarray:
        """Per-link CU-to-eavesdropper mean gains, shape (M, N)."""
        return self.theta_eve * self.sigma_e_sq

    @property
    def mer_db(self) -> float:
        return linear_to_db(self.lambda_me)

    # construction helpers --------------------------------------------------

    @classmethod
    def symmetric(cls, m_users: int, n_eves: int, lambda_me: float = 1.0,
                  **kwargs: Any) -> "SystemConfig":
        """Unit thetas, unit noise and cap unless overridden."""
        return cls(m_users=m_users, n_eves=n_eves, lambda_me=lambda_me, **kwargs)

    def replace(self, **changes: Any) -> "SystemConfig":
        """Copy with ``changes`` applied.

        ``mer_db`` is accepted as an alias for ``lambda_me`` in dB. When the
        user or eavesdropper count changes, uniform vector fields are
        re-broadcast to the new size; non-uniform ones must be supplied.
        """
        if "mer_db" in changes:
            if "lambda_me" in changes:
                raise ConfigError("give either mer_db or lambda_me, not both")
            changes["lambda_me"] = db_to_linear(float(changes.pop("mer_db")))
        resized = (changes.get("m_users", self.m_users) != self.m_users
                   or changes.get("n_eves", self.n_eves) != self.n_eves)
        values: dict[str, Any] = {}
        for name in FIELDS:
            current = getattr(self, name)
            if resized and isinstance(current, np.ndarray) and name not in changes:
                if not _uniform(current):
                    raise ConfigError(
                        f"{name} is not uniform; supply it explicitly when resizing")
                current = float(current.flat[0])
            values[name] = current
        unknown = set(changes) - set(values)
        if unknown:
            raise ConfigError(f"unknown config field(s): {sorted(unknown)}")
        values.update(changes)
        return SystemConfig(**values)

    def to_dict(self) -> dict[str, Any]:
        """Plain-python view (lists for arrays), suitable for JSON/YAML."""
        out: dict[str, Any] = {}
        for name in FIELDS:
            value = getattr(self, name)
            out[name] = value.tolist() if isinstance(value, np.ndarray) else value
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SystemConfig):
            return NotImplemented
        a, b = self.to_dict(), other.to_dict()
        return a == b

    __hash__ = None  # type: ignore[assignment]

