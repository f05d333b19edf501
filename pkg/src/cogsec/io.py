"""Config files in, sweep rows out.

Config files are flat YAML mappings. Power-like fields can be given either
linearly (``interference_cap``) or in dBm (``interference_cap_dbm``), and
the MER either linearly (``lambda_me``) or in dB (``mer_db``). Vector and
matrix fields take a scalar to mean "the same for everyone".

Example::

    m_users: 4
    n_eves: 2
    interference_cap_dbm: 0
    noise_cbs_dbm: 0
    noise_eve_dbm: 0
    sigma_m_sq: 0.8
    mer_db: 10
    theta_main: 1
    theta_eve: 0.6
    sigma_ip_sq: 0.5
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
import yaml

from .config import ConfigError, SystemConfig, db_to_linear
from .montecarlo import SweepRow

COLUMNS = ("scheme", "m_users", "n_eves", "lambda_me_db", "metric", "value",
           "std_error", "trials", "master_seed", "status")

_DBM_FIELDS = {"interference_cap_dbm": "interference_cap",
               "noise_cbs_dbm": "noise_cbs",
               "noise_eve_dbm": "noise_eve"}
_PLAIN_FIELDS = {"m_users", "n_eves", "interference_cap", "noise_cbs", "noise_eve",
                 "sigma_m_sq", "lambda_me", "theta_main", "theta_eve", "sigma_ip_sq"}


def config_from_mapping(data: dict[str, Any], source: str = "<mapping>") -> SystemConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: expected a mapping of field names to values")
    values: dict[str, Any] = {}
    for key, raw in data.items():
        if key in _DBM_FIELDS:
            target = _DBM_FIELDS[key]
            if target in data:
                raise ConfigError(f"{source}: give {key} or {target}, not both")
            values[target] = np.vectorize(db_to_linear, otypes=[float])(np.asarray(raw, float))
        elif key == "mer_db":
            if "lambda_me" in data:
                raise ConfigError(f"{source}: give mer_db or lambda_me, not both")
            values["lambda_me"] = db_to_linear(float(raw))
        elif key in _PLAIN_FIELDS:
            values[key] = raw
        else:
            raise ConfigError(f"{source}: unknown field {key!r}")
    for required in ("m_users", "n_eves"):
        if required not in values:
            raise ConfigError(f"{source}: missing required field {required!r}")
    try:
        return SystemConfig(**values)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path: "str | Path") -> SystemConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ConfigError(f"{path}: parse error at {where}: {exc.problem}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: parse error: {exc}") from None
    return config_from_mapping(data, str(path))


def dump_config(config: SystemConfig) -> str:
    return yaml.safe_dump(config.to_dict(), sort_keys=False)


def parse_mer_grid(text: str) -> list[float]:
    """``start:stop:step`` in dB, stop inclusive. A bare number is one point."""
    parts = text.split(":")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"bad MER grid {text!r}; expected start:stop:step") from None
    if len(nums) == 1:
        return nums
    if len(nums) != 3:
        raise ConfigError(f"bad MER grid {text!r}; expected start:stop:step")
    start, stop, step = nums
    if step <= 0:
        raise ConfigError("MER grid step must be > 0")
    if start > stop:
        raise ConfigError("MER grid start must be ≤ stop")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def _record(row: SweepRow) -> dict[str, Any]:
    rec = row.as_record()
    if row.status != "ok":
        rec["value"] = None
    return rec


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        rec = _record(row)
        writer.writerow(["" if rec[c] is None else rec[c] for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Iterable[SweepRow]) -> str:
    return json.dumps([_record(r) for r in rows], indent=2) + "\n"


def write_rows(rows: Sequence[SweepRow], path: "str | Path", fmt: str) -> None:
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)
    Path(path).write_text(text, encoding="utf-8")
