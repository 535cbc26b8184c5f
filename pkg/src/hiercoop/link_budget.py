"""Link budget of the local-communication phases.

Per-node transmit power is SNR * A^(alpha/2) with A the cluster area, so the
desired link is received at SNR and the strongest interferer at
INR = (L-1)^-alpha * SNR.  Treating interference as noise is near optimal
while INR <= sqrt(SNR), which pins the TDMA reuse factor
L(SNR) = ceil(SNR^(1/(2 alpha)) + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import InterferenceModel

_LN2 = math.log(2.0)


def _check_alpha(alpha: float) -> None:
    if alpha < 2.0:
        raise ValueError(f"path-loss exponent must be >= 2, got {alpha!r}")


def optimal_snr(alpha: float) -> float:
    """Transmit SNR maximizing the approximate single-stage sum rate.

    Closed form 2^(2*(3 + alpha/ln 2)); callers cap it at snr_max.
    """
    _check_alpha(alpha)
    return 2.0 ** (2.0 * (3.0 + alpha / _LN2))


def reuse_factor(snr: float, alpha: float) -> int:
    """Smallest TDMA reuse factor satisfying the TIN condition INR <= sqrt(SNR)."""
    if snr <= 0.0:
        raise ValueError(f"snr must be positive, got {snr!r}")
    _check_alpha(alpha)
    return max(2, math.ceil(snr ** (1.0 / (2.0 * alpha)) + 1.0))


def tin_feasible(snr: float, reuse: int, alpha: float) -> float:
    """Margin sqrt(SNR) - INR; non-negative iff TIN optimality holds."""
    if reuse < 2:
        raise ValueError(f"reuse must be >= 2, got {reuse}")
    return math.sqrt(snr) - (reuse - 1.0) ** (-alpha) * snr


def interference_bound(
    n: int,
    snr: float,
    reuse: int,
    alpha: float,
    model: InterferenceModel = InterferenceModel.RING_DISTANCE,
) -> float:
    """Upper bound P_I on total inter-cluster interference under reuse L.

    Ring i of the reuse lattice holds 8i interfering clusters.  The ring
    model puts them at normalized distance i*(L-1); the literal model keeps
    the distance term of the first ring for all of them.  The sum is
    truncated at ceil(sqrt(n)) rings.
    """
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    if reuse < 2:
        raise ValueError(f"reuse must be >= 2, got {reuse}")
    rings = math.isqrt(n)
    if rings * rings < n:
        rings += 1
    base = snr * (reuse - 1.0) ** (-alpha)
    if model is InterferenceModel.LITERAL_THEOREM1:
        # sum_i 8 i = 4 rings (rings + 1)
        return 8.0 * base * (rings * (rings + 1) / 2.0)
    total = 0.0
    for i in range(1, rings + 1):
        total += 8.0 * i * base * float(i) ** (-alpha)
    return total


def local_rate(snr: float, p_i: float) -> float:
    """TIN rate of the local phase, log2(1 + SNR/(1 + P_I)) bits/symbol."""
    if snr <= 0.0:
        raise ValueError(f"snr must be positive, got {snr!r}")
    if p_i < 0.0:
        raise ValueError(f"interference power must be >= 0, got {p_i!r}")
    return math.log2(1.0 + snr / (1.0 + p_i))


def reuse_factor_approx(snr: float, alpha: float) -> float:
    """Ceiling-free reuse factor SNR^(1/(2 alpha)), used only by the SNR optimizer."""
    return snr ** (1.0 / (2.0 * alpha))


def local_rate_approx(snr: float) -> float:
    """High-SNR local-rate approximation log2(sqrt(SNR)/8), optimizer-only."""
    return math.log2(math.sqrt(snr) / 8.0)


@dataclass(frozen=True)
class LinkBudget:
    """Resolved link budget of one local-communication phase."""

    snr: float
    reuse: int
    p_i: float
    local_rate: float
    tin_margin: float

    @classmethod
    def build(
        cls,
        n: int,
        alpha: float,
        snr: float | None = None,
        model: InterferenceModel = InterferenceModel.RING_DISTANCE,
    ) -> "LinkBudget":
        """Assemble the budget at the given SNR (default: optimal_snr(alpha))."""
        if snr is None:
            snr = optimal_snr(alpha)
        reuse = reuse_factor(snr, alpha)
        p_i = interference_bound(n, snr, reuse, alpha, model)
        return cls(
            snr=snr,
            reuse=reuse,
            p_i=p_i,
            local_rate=local_rate(snr, p_i),
            tin_margin=tin_feasible(snr, reuse, alpha),
        )
