"""Channel constants and unit conversions.

Path loss between nodes i and j is ``mu * d_ij**2`` with
``mu = 10**(excess_db / 10) * (4 pi f_c / c)**2``. Air-to-air links use the
LoS factor, ground-to-ground links the NLoS factor, and air-to-ground links
use ``eta_nlos``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

SPEED_OF_LIGHT = 299_792_458.0  # m/s


class LinkKind(str, Enum):
    LOS = "los"
    NLOS = "nlos"


@dataclass(frozen=True)
class ChannelParams:
    carrier_frequency: float = 2e9  # Hz
    light_speed: float = SPEED_OF_LIGHT  # m/s
    path_loss_exponent: float = 2.0
    excess_los_db: float = 3.0
    excess_nlos_db: float = 23.0
    # None ties eta_nlos to the LoS factor (the simulation preset).
    eta_nlos: float | None = None

    def __post_init__(self):
        if not (self.carrier_frequency > 0 and math.isfinite(self.carrier_frequency)):
            raise ValueError(f"carrier_frequency must be positive, got {self.carrier_frequency}")
        if not (self.light_speed > 0 and math.isfinite(self.light_speed)):
            raise ValueError(f"light_speed must be positive, got {self.light_speed}")
        if self.path_loss_exponent != 2:
            raise ValueError("only path_loss_exponent == 2 is supported")
        for name in ("excess_los_db", "excess_nlos_db"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.eta_nlos is not None and not (self.eta_nlos > 0 and math.isfinite(self.eta_nlos)):
            raise ValueError(f"eta_nlos must be positive, got {self.eta_nlos}")

    @property
    def mu_los(self) -> float:
        return mu_factor(self, LinkKind.LOS)

    @property
    def mu_nlos(self) -> float:
        return mu_factor(self, LinkKind.NLOS)

    @property
    def eta(self) -> float:
        """Air-to-ground path-loss factor actually in use."""
        return self.mu_los if self.eta_nlos is None else self.eta_nlos


def dbm_to_linear(p_dbm: float) -> float:
    """dBm -> mW."""
    if not math.isfinite(p_dbm):
        raise ValueError(f"power must be finite, got {p_dbm}")
    return 10.0 ** (p_dbm / 10.0)


def linear_to_dbm(p_mw: float) -> float:
    if not p_mw > 0:
        raise ValueError(f"power must be positive, got {p_mw}")
    return 10.0 * math.log10(p_mw)


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def sir_to_db(sir_linear: float) -> float:
    """Linear SIR -> dB; zero maps to -inf."""
    if sir_linear < 0 or math.isnan(sir_linear):
        raise ValueError(f"SIR must be non-negative, got {sir_linear}")
    if sir_linear == 0:
        return -math.inf
    return 10.0 * math.log10(sir_linear)


def mu_factor(params: ChannelParams, kind: LinkKind | str) -> float:
    kind = LinkKind(kind)
    excess_db = params.excess_los_db if kind is LinkKind.LOS else params.excess_nlos_db
    k = 4.0 * math.pi * params.carrier_frequency / params.light_speed
    return db_to_linear(excess_db) * k ** params.path_loss_exponent
