"""Shared domain types for the cooperative-transmission rate analysis.

Conventions used everywhere in this package:
  * rates are in bits (base-2 logs),
  * SNR-like quantities are linear power ratios (dB conversion happens only
    at the CLI boundary, linear = 10^(dB/10)),
  * all types are plain immutable values with structural equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping


class Scheme(Enum):
    """Transmission scheme selector."""

    SINGLE_STAGE = "single"
    CONVENTIONAL_HIERARCHY = "conventional"
    ENHANCED_HIERARCHY = "enhanced"


class InterferenceModel(Enum):
    """How the inter-cluster interference bound P_I is summed.

    LITERAL_THEOREM1 keeps the ring-independent distance term
    (sum of 8*i*SNR*(L-1)^-alpha), RING_DISTANCE places the 8i interferers
    of ring i at normalized distance i*(L-1).  RING_DISTANCE is the default:
    the literal sum grows like 4n*SNR*(L-1)^-alpha and drives the local rate
    to zero as n grows, which contradicts the constant-coding-rate structure
    of the single-stage result.
    """

    LITERAL_THEOREM1 = "literal"
    RING_DISTANCE = "ring"


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    if x <= 0.0:
        raise ValueError(f"dB undefined for non-positive ratio {x!r}")
    return 10.0 * math.log10(x)


def dof_limit(area: float, wavelength: float) -> float:
    """Spatial degrees-of-freedom ceiling sqrt(area)/wavelength.

    Physical cap on useful spatial multiplexing from aperture and
    wavelength; e.g. a 1 km^2 campus at 30 GHz (0.01 m) supports 1e5.
    """
    if area <= 0.0:
        raise ValueError(f"area must be positive, got {area!r}")
    if wavelength <= 0.0:
        raise ValueError(f"wavelength must be positive, got {wavelength!r}")
    return math.sqrt(area) / wavelength


@dataclass(frozen=True)
class NetworkConfig:
    """Problem instance: n nodes on a unit-area grid, path loss alpha, SNR cap."""

    n: int
    alpha: float
    snr_max: float = 1e12

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError(f"n must be an int, got {type(self.n).__name__}")
        if self.n < 4:
            raise ValueError(f"n must be >= 4, got {self.n}")
        if self.alpha < 2.0:
            raise ValueError(f"alpha must be >= 2, got {self.alpha!r}")
        if not self.snr_max > 1.0:
            raise ValueError(f"snr_max must be > 1, got {self.snr_max!r}")


@dataclass(frozen=True)
class ProtocolParams:
    """Operating point chosen by the optimizer.

    cluster_sizes holds M_i for stages i = 1..t (M_t is the top stage);
    sigma_q_sq is the quantization distortion of the QMF solve that
    produced the coding rate.
    """

    snr: float
    reuse: int
    q: int
    t: int
    cluster_sizes: tuple[float, ...]
    sigma_q_sq: float

    def __post_init__(self) -> None:
        if not self.snr > 0.0:
            raise ValueError(f"snr must be positive, got {self.snr!r}")
        if self.reuse < 2:
            raise ValueError(f"reuse factor must be >= 2, got {self.reuse}")
        if self.q < 1:
            raise ValueError(f"expansion factor q must be >= 1, got {self.q}")
        if self.t < 1:
            raise ValueError(f"stage count t must be >= 1, got {self.t}")
        if len(self.cluster_sizes) != self.t:
            raise ValueError(
                f"need one cluster size per stage: t={self.t}, "
                f"got {len(self.cluster_sizes)}"
            )
        if any(m <= 0.0 for m in self.cluster_sizes):
            raise ValueError(f"cluster sizes must be positive: {self.cluster_sizes}")
        if self.sigma_q_sq < 0.0:
            raise ValueError(f"sigma_q_sq must be >= 0, got {self.sigma_q_sq!r}")


# Slack for the min-constraint invariant below.  The MIMO-phase constraint is
# verified only up to a 1e-6 relative margin (its exact form is strictly below
# the backhaul rate for every finite quantization level), so the recorded
# constraint value may sit a hair under the coding rate.
_CONSTRAINT_SLACK = 1e-6


@dataclass(frozen=True)
class RateReport:
    """Rate breakdown for one (scheme, n, alpha, t) operating point.

    sum_rate is bit-identical to coding_rate * packet_throughput, and
    coding_rate never exceeds any recorded constraint beyond the documented
    verification slack.
    """

    coding_rate: float
    packet_throughput: float
    sum_rate: float
    constraint_values: Mapping[str, float]
    params: ProtocolParams

    def __post_init__(self) -> None:
        if self.sum_rate != self.coding_rate * self.packet_throughput:
            raise ValueError(
                "sum_rate must equal coding_rate * packet_throughput exactly"
            )
        for name, value in self.constraint_values.items():
            if self.coding_rate > value + _CONSTRAINT_SLACK * max(1.0, self.coding_rate):
                raise ValueError(
                    f"coding_rate {self.coding_rate!r} exceeds constraint "
                    f"{name}={value!r}"
                )

    @classmethod
    def from_parts(
        cls,
        coding_rate: float,
        packet_throughput: float,
        constraint_values: Mapping[str, float],
        params: ProtocolParams,
    ) -> "RateReport":
        return cls(
            coding_rate=coding_rate,
            packet_throughput=packet_throughput,
            sum_rate=coding_rate * packet_throughput,
            constraint_values=dict(constraint_values),
            params=params,
        )
