"""Quantize-map-and-forward rate of the distributed MIMO channel.

The concatenation of the MIMO phase and the quantize-and-share phase behaves
like an M x M MIMO channel whose M receive antennas are reachable only over a
backhaul of rate r0 bits/symbol.  QMF achieves

    rate = min{ r0 - log2(1 + n0/sigma_q^2),  C(snr / (n0 + sigma_q^2)) }

for a quantization level sigma_q^2 >= 0, where C(x) is the large-M
per-antenna capacity of an i.i.d. unit-variance channel.  The first term
increases and the second decreases in sigma_q^2, so the optimum balances the
two; the sign change is bracketed by the closed-form bounds below and found
by bisection.

All logs are base 2, so the "log e" factor in C(x) is log2(e) = 1/ln 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_LOG2E = 1.0 / math.log(2.0)


class QmfBracketError(RuntimeError):
    """Bisection bracket failed to change sign beyond numerical noise."""

    def __init__(self, problem: "QmfProblem", h_lo: float, h_hi: float):
        self.problem = problem
        self.h_lo = h_lo
        self.h_hi = h_hi
        super().__init__(
            f"h has the same sign at both bracket ends: h(sigma_min)={h_lo!r}, "
            f"h(sigma_max)={h_hi!r} for {problem!r}"
        )


@dataclass(frozen=True)
class QmfProblem:
    """Distributed MIMO instance: backhaul r0, noise-plus-interference n0, SNR."""

    r0: float
    n0: float
    snr: float

    def __post_init__(self) -> None:
        if not self.r0 > 0.0:
            raise ValueError(f"backhaul rate r0 must be positive, got {self.r0!r}")
        if self.n0 < 1.0:
            raise ValueError(f"n0 must be >= 1 (unit noise floor), got {self.n0!r}")
        if not self.snr > 0.0:
            raise ValueError(f"snr must be positive, got {self.snr!r}")


@dataclass(frozen=True)
class QmfSolution:
    rate: float
    sigma_q_sq: float
    constraint_gap: float


def capacity_rmt(x: float) -> float:
    """Per-antenna MIMO capacity C(x), bits/antenna/symbol.

    C(x) = 2 log2((1+sqrt(1+4x))/2) - (sqrt(1+4x)-1)^2 log2(e) / (4x),
    extended continuously with C(0) = 0.  Strictly increasing and bounded
    above by the single-link capacity log2(1+x).
    """
    if x < 0.0:
        raise ValueError(f"capacity_rmt requires x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    s = math.sqrt(1.0 + 4.0 * x)
    return 2.0 * math.log2((1.0 + s) / 2.0) - (s - 1.0) ** 2 * _LOG2E / (4.0 * x)


def sigma_bounds(p: QmfProblem) -> tuple[float, float]:
    """Bracket [sigma_min, sigma_max] containing the optimal quantization level.

    sigma_min = n0/(2^r0 - 1) zeroes the backhaul constraint, so h <= 0 there;
    sigma_max = (n0+snr)/(2^r0 - 1) is the quantize-and-forward level, which
    makes the MIMO constraint the active one, so h >= 0 there.
    """
    denom = 2.0 ** p.r0 - 1.0
    return p.n0 / denom, (p.n0 + p.snr) / denom


def h_gap(sigma_sq: float, p: QmfProblem) -> float:
    """Backhaul constraint minus MIMO constraint; strictly increasing in sigma_sq."""
    if sigma_sq <= 0.0:
        raise ValueError(f"sigma_sq must be positive, got {sigma_sq!r}")
    return (
        p.r0
        - math.log2(1.0 + p.n0 / sigma_sq)
        - capacity_rmt(p.snr / (p.n0 + sigma_sq))
    )


def _rate_at(sigma_sq: float, p: QmfProblem) -> float:
    return min(
        p.r0 - math.log2(1.0 + p.n0 / sigma_sq),
        capacity_rmt(p.snr / (p.n0 + sigma_sq)),
    )


_MAX_ITER = 200


def qmf_rate(p: QmfProblem, tol: float = 1e-9) -> QmfSolution:
    """Maximize min{backhaul, MIMO} over the quantization level by bisection.

    Stops once the two constraints agree within tol * rate (and never looser
    than tol * max(1, r0)), or after 200 interval halvings, which exceeds
    float resolution on any bracket because sigma_max/sigma_min = 1 + snr/n0.
    """
    if not (0.0 < tol <= 1e-3):
        raise ValueError(f"tol must be in (0, 1e-3], got {tol!r}")
    lo, hi = sigma_bounds(p)
    h_lo, h_hi = h_gap(lo, p), h_gap(hi, p)
    noise = 1e-9 * max(1.0, p.r0)
    if h_lo > noise and h_hi > noise:
        raise QmfBracketError(p, h_lo, h_hi)
    if h_lo < -noise and h_hi < -noise:
        raise QmfBracketError(p, h_lo, h_hi)
    mid = 0.5 * (lo + hi)
    gap = abs(h_gap(mid, p))
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        h_mid = h_gap(mid, p)
        gap = abs(h_mid)
        rate_mid = _rate_at(mid, p)
        if gap <= tol * min(max(1.0, p.r0), max(rate_mid, 0.0)):
            break
        if h_mid < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * hi:
            mid = 0.5 * (lo + hi)
            gap = abs(h_gap(mid, p))
            break
    return QmfSolution(rate=_rate_at(mid, p), sigma_q_sq=mid, constraint_gap=gap)
