"""Physical-layer security of multiuser scheduling in underlay cognitive radio."""
from .config import ConfigError, SystemConfig
from .model import (ChannelRealization, Scheme, SchemeOutcome, artificial_noise_rates,
                    construct_noise_vector, rate_eve, rate_eve_max, rate_main,
                    sample_realization, sample_realizations, schedule_proposed,
                    schedule_traditional, transmit_power)
from .montecarlo import (EstimateResult, Metric, SweepRow, estimate_intercept,
                         estimate_secrecy_rate, run_sweep)

__all__ = [
    "ChannelRealization", "ConfigError", "EstimateResult", "Metric", "Scheme",
    "SchemeOutcome", "SweepRow", "SystemConfig", "artificial_noise_rates",
    "construct_noise_vector", "estimate_intercept", "estimate_secrecy_rate",
    "rate_eve", "rate_eve_max", "rate_main", "run_sweep", "sample_realization",
    "sample_realizations", "schedule_proposed", "schedule_traditional", "transmit_power",
]
