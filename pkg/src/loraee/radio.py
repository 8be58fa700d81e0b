"""LoRa PHY/MAC timing and pairwise interference probabilities.

Pure functions over a small immutable config. All durations are seconds,
stored as doubles; nothing is truncated to integer microseconds.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

SF_VALUES: tuple[int, ...] = (7, 8, 9, 10, 11, 12)
TP_VALUES_DBM: tuple[int, ...] = (2, 4, 6, 8, 10, 12, 14, 16)

#: Duty-cycle ceiling for the EU 868 MHz band (fraction of time on air).
MAX_DUTY_CYCLE = 0.01


def check_sf(sf: int) -> int:
    if sf not in SF_VALUES:
        raise ValueError(f"spreading factor must be one of {SF_VALUES}, got {sf!r}")
    return sf


def check_tp(tp_dbm: int) -> int:
    if tp_dbm not in TP_VALUES_DBM:
        raise ValueError(f"tx power must be one of {TP_VALUES_DBM} dBm, got {tp_dbm!r}")
    return tp_dbm


@dataclass(frozen=True)
class PhyConfig:
    """Per-channel PHY parameters plus the per-device traffic rate.

    ``low_data_rate_sfs`` lists the SFs transmitted with the low-data-rate
    optimization enabled (DE=1); at 125 kHz the regional default is SF11/12.
    """

    bandwidth_hz: float = 125e3
    payload_bytes: int = 20
    coding_rate_index: int = 1
    preamble_symbols: int = 8
    traffic_rate_hz: float = 0.01
    low_data_rate_sfs: tuple[int, ...] = (11, 12)

    def __post_init__(self) -> None:
        if not self.bandwidth_hz > 0:
            raise ValueError("bandwidth_hz must be positive")
        if self.payload_bytes < 1:
            raise ValueError("payload_bytes must be >= 1")
        if not 1 <= self.coding_rate_index <= 4:
            raise ValueError("coding_rate_index must be in [1, 4]")
        if self.preamble_symbols < 6:
            # the last-five-preamble decode rule needs n_pr > 5
            raise ValueError("preamble_symbols must be >= 6")
        if not self.traffic_rate_hz > 0:
            raise ValueError("traffic_rate_hz must be positive")
        for sf in self.low_data_rate_sfs:
            check_sf(sf)

    def low_data_rate(self, sf: int) -> int:
        """DE flag for ``sf``: 1 when the low-data-rate mode is enabled."""
        return 1 if sf in self.low_data_rate_sfs else 0

    def warn_duty_cycle(self, sfs: tuple[int, ...] = SF_VALUES) -> list[int]:
        """Warn for every SF in ``sfs`` whose airtime breaks the 1% duty cycle.

        Returns the offending SFs. A violation is not an error: the analytic
        model has no duty-cycle clamp either, but the configuration is outside
        what the band regulation permits.
        """
        offenders = [
            sf
            for sf in sfs
            if self.traffic_rate_hz * time_on_air(sf, self) > MAX_DUTY_CYCLE
        ]
        if offenders:
            warnings.warn(
                f"traffic rate {self.traffic_rate_hz} 1/s exceeds the "
                f"{MAX_DUTY_CYCLE:.0%} duty cycle for SF {offenders}",
                stacklevel=2,
            )
        return offenders


def symbol_duration(sf: int, cfg: PhyConfig) -> float:
    """Duration of one chirp symbol, 2^sf / bandwidth, in seconds."""
    check_sf(sf)
    return float(2**sf) / cfg.bandwidth_hz


def payload_symbols(sf: int, cfg: PhyConfig) -> int:
    """Number of payload symbols for a packet of ``cfg.payload_bytes``.

    Exact integer arithmetic; includes the fixed header (28 bits) and CRC
    (16 bits) terms, and never returns less than the 8 mandatory symbols.
    """
    check_sf(sf)
    de = cfg.low_data_rate(sf)
    num = 8 * cfg.payload_bytes - 4 * sf + 28 + 16
    den = 4 * (sf - 2 * de)
    ceil = -(-num // den)  # exact ceiling division for positive den
    return 8 + max(ceil * (cfg.coding_rate_index + 4), 0)


def preamble_duration(sf: int, cfg: PhyConfig) -> float:
    """Preamble time on air: (n_pr + 4.25) symbols."""
    return (cfg.preamble_symbols + 4.25) * symbol_duration(sf, cfg)


def time_on_air(sf: int, cfg: PhyConfig) -> float:
    """Total packet airtime in seconds (preamble + payload)."""
    t_sym = symbol_duration(sf, cfg)
    return (cfg.preamble_symbols + 4.25) * t_sym + payload_symbols(sf, cfg) * t_sym


def vulnerable_window(sf_i: int, sf_j: int, cfg: PhyConfig) -> float:
    """Length of the interval in which a packet from ``j`` can corrupt ``i``.

    A packet survives when its last five preamble symbols onward are clean,
    so the window is T_j + T_i - (n_pr - 5) symbol durations of ED i.
    """
    t_i = time_on_air(sf_i, cfg)
    t_j = time_on_air(sf_j, cfg)
    return t_j + t_i - (cfg.preamble_symbols - 5) * symbol_duration(sf_i, cfg)


def interference_probability(sf_i: int, sf_j: int, cfg: PhyConfig) -> float:
    """Probability that ED j starts transmitting inside ED i's window.

    Poisson arrivals at ``cfg.traffic_rate_hz``: 1 - exp(-lambda * T'_ij).
    """
    return -math.expm1(-cfg.traffic_rate_hz * vulnerable_window(sf_i, sf_j, cfg))
