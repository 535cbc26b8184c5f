"""Single-stage cooperative scheme: optimal cluster size, throughput, sum rate.

Delivering the n*M sub-packets takes (L M)^2 slots in the local distribution
phase, n slots in the MIMO phase and Q (L M)^2 slots in the quantize-share
phase, so the packet throughput is T = M n / ((Q+1)(L M)^2 + n).  Treating M
as continuous and solving dT/dM = 0 gives M = sqrt(n)/(L sqrt(1+Q)) and
T = sqrt(n)/(2 L sqrt(1+Q)); the scheme uses Q = 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .link_budget import interference_bound, local_rate, optimal_snr, reuse_factor
from .model import InterferenceModel, NetworkConfig, ProtocolParams, RateReport
from .qmf import QmfProblem, qmf_rate

# The MIMO-phase check R^(1) <= R_QMF(R^(1), 1, SNR') can only hold up to a
# margin: the backhaul constraint is strictly below R^(1) for every finite
# quantization level.  SNR' is accepted once the QMF rate is within this
# relative slack of R^(1).
MIMO_VERIFY_RTOL = 1e-6
_SNR_GRID_PER_DECADE = 16


@dataclass(frozen=True)
class SingleStagePlan:
    """Resolved single-stage operating point.

    m is the continuous optimum cluster size (the closed forms use it);
    m_int is the rounded value reported for realism.  mimo_snr_prime is the
    smallest grid SNR' at which the MIMO phase supports the local rate, or
    None when even snr_max falls short (then the report's coding rate is the
    QMF value at snr_max and mimo_verified is False).
    """

    m: float
    m_int: int
    throughput: float
    report: RateReport
    degenerate: bool
    mimo_verified: bool
    mimo_snr_prime: float | None


def optimal_cluster_size(n: int, reuse: int, q: int) -> float:
    """Continuous-relaxation optimum M = sqrt(n)/(L sqrt(1+Q))."""
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    if reuse < 1:
        raise ValueError(f"reuse must be >= 1, got {reuse}")
    if q < 0:
        raise ValueError(f"q must be >= 0, got {q}")
    m = math.sqrt(n) / (reuse * math.sqrt(1.0 + q))
    if m < 1.0:
        warnings.warn(
            f"optimal cluster size {m:.4g} < 1: cluster degenerates to a single node",
            RuntimeWarning,
            stacklevel=2,
        )
    return m


def packet_throughput(n: int, m: float, reuse: int, q: int) -> float:
    """Source-destination links per slot, T = M n / ((Q+1)(L M)^2 + n)."""
    if m < 1.0:
        raise ValueError(f"cluster size must be >= 1, got {m!r}")
    return m * n / ((q + 1.0) * (reuse * m) ** 2 + n)


def _find_mimo_snr_prime(r1: float, snr_max: float) -> tuple[float | None, "object"]:
    """Smallest log-grid SNR' <= snr_max whose QMF rate reaches R^(1).

    The QMF rate is non-decreasing in SNR', so binary search over the grid
    finds the smallest satisfying point.  Returns (snr_prime, solution) or
    (None, solution at snr_max).
    """
    decades = math.log10(snr_max)
    points = int(round(_SNR_GRID_PER_DECADE * decades)) + 1
    grid = [10.0 ** (decades * i / (points - 1)) for i in range(points)]
    target = r1 * (1.0 - MIMO_VERIFY_RTOL)

    def solve(snr_prime: float):
        return qmf_rate(QmfProblem(r0=r1, n0=1.0, snr=snr_prime), tol=1e-9)

    top = solve(grid[-1])
    if top.rate < target:
        return None, top
    lo, hi = 0, len(grid) - 1
    best = top
    while lo < hi:
        mid = (lo + hi) // 2
        sol = solve(grid[mid])
        if sol.rate >= target:
            hi = mid
            best = sol
        else:
            lo = mid + 1
    return grid[lo], best


def plan_single_stage(
    cfg: NetworkConfig,
    model: InterferenceModel = InterferenceModel.RING_DISTANCE,
) -> SingleStagePlan:
    """Assemble the full single-stage operating point for a network."""
    q = 1
    snr = min(optimal_snr(cfg.alpha), cfg.snr_max)
    reuse = reuse_factor(snr, cfg.alpha)
    p_i = interference_bound(cfg.n, snr, reuse, cfg.alpha, model)
    r1 = local_rate(snr, p_i)

    snr_prime, mimo_sol = _find_mimo_snr_prime(r1, cfg.snr_max)
    mimo_verified = snr_prime is not None
    coding_rate = r1 if mimo_verified else mimo_sol.rate

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        m = optimal_cluster_size(cfg.n, reuse, q)
    degenerate = m < 1.0
    # the closed forms use the continuous optimum; clamp only when degenerate
    throughput = packet_throughput(cfg.n, max(m, 1.0), reuse, q)

    params = ProtocolParams(
        snr=snr,
        reuse=reuse,
        q=q,
        t=1,
        cluster_sizes=(m,),
        sigma_q_sq=mimo_sol.sigma_q_sq,
    )
    report = RateReport.from_parts(
        coding_rate=coding_rate,
        packet_throughput=throughput,
        constraint_values={"local_rate": r1, "mimo_qmf_rate": mimo_sol.rate},
        params=params,
    )
    return SingleStagePlan(
        m=m,
        m_int=max(1, round(m)),
        throughput=throughput,
        report=report,
        degenerate=degenerate,
        mimo_verified=mimo_verified,
        mimo_snr_prime=snr_prime,
    )


def sum_rate_single(
    cfg: NetworkConfig,
    model: InterferenceModel = InterferenceModel.RING_DISTANCE,
) -> RateReport:
    """Single-stage sum rate report, R^(1) * sqrt(n)/(2 sqrt(2) L)."""
    return plan_single_stage(cfg, model).report
