"""Multi-stage hierarchy: coding-rate fixed point, sum rates, stage count.

Stacking the three-phase scheme t times reuses the stage-(t-1) protocol as
the local communication of stage t.  The common coding rate must survive
every stage's QMF step, which yields the non-increasing recursion

    R^(t+1) = R_QMF(Q R^(t), P_I + 1, SNR)  ->  R*(alpha, Q),

and the protocol runs every stage at the limit R*.  Two TDMA accountings are
supported: the conventional one pays (L sqrt(1+Q))^t, the enhanced one
applies TDMA once per phase and pays only L^(2t/(t+1)) (sqrt(1+Q))^t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .link_budget import interference_bound, local_rate, optimal_snr, reuse_factor
from .model import InterferenceModel, NetworkConfig, Scheme
from .qmf import QmfProblem, qmf_rate

_LN2 = math.log(2.0)
_LN3 = math.log(3.0)

# Integer stage counts examined by the exhaustive optimum search.
STAGE_SEARCH_RANGE = range(1, 9)


@dataclass(frozen=True)
class FixedPointTrace:
    """Iterates R^(1), R^(2), ... of the coding-rate recursion."""

    alpha: float
    q: int
    iterates: tuple[float, ...]
    r_star: float
    converged: bool
    iterations_used: int


@dataclass(frozen=True)
class HierarchyPlan:
    t: int
    scheme: Scheme
    cluster_sizes: tuple[float, ...]
    coding_rate: float
    throughput: float
    sum_rate: float
    degenerate: bool


def theorem3_reuse(alpha: float) -> int:
    """Reuse factor at the optimal SNR, ceil(2^((3+alpha/ln2)/alpha) + 1).

    Identical to reuse_factor(optimal_snr(alpha), alpha); the SNR-substituted
    form lets alpha sweeps avoid carrying an SNR argument.
    """
    if alpha < 2.0:
        raise ValueError(f"alpha must be >= 2, got {alpha!r}")
    return max(2, math.ceil(2.0 ** ((3.0 + alpha / _LN2) / alpha) + 1.0))


def coding_rate_fixed_point(
    alpha: float,
    q: int,
    n: int,
    model: InterferenceModel = InterferenceModel.RING_DISTANCE,
    tol: float = 1e-9,
    max_iter: int = 100,
) -> FixedPointTrace:
    """Iterate R^(t+1) = R_QMF(Q R^(t), P_I+1, SNR) from R^(1) down to R*.

    Stops when the relative change drops below tol or after max_iter QMF
    updates; a numerically non-positive iterate is clamped to 0 and treated
    as converged.  Each QMF solve runs at bisection tolerance 1e-12 so the
    recorded iterates are monotone to well below 1e-12.
    """
    if q < 1:
        raise ValueError(f"expansion factor q must be >= 1, got {q}")
    if max_iter < 2:
        raise ValueError(f"max_iter must be >= 2, got {max_iter}")
    snr = optimal_snr(alpha)
    reuse = reuse_factor(snr, alpha)
    p_i = interference_bound(n, snr, reuse, alpha, model)
    rate = local_rate(snr, p_i)
    iterates = [rate]
    converged = False
    for _ in range(max_iter):
        nxt = qmf_rate(QmfProblem(r0=q * rate, n0=p_i + 1.0, snr=snr), tol=1e-12).rate
        if nxt <= 0.0:
            iterates.append(0.0)
            converged = True
            break
        iterates.append(nxt)
        if abs(rate - nxt) <= tol * nxt:
            converged = True
            rate = nxt
            break
        rate = nxt
    return FixedPointTrace(
        alpha=alpha,
        q=q,
        iterates=tuple(iterates),
        r_star=iterates[-1],
        converged=converged,
        iterations_used=len(iterates) - 1,
    )


def lemma1_check(
    alpha: float,
    q: int,
    n: int,
    model: InterferenceModel = InterferenceModel.RING_DISTANCE,
) -> float:
    """Margin R^(1) - R_QMF(Q R^(1), 1+P_I, SNR); non-negative for any Q >= 1."""
    if q < 1:
        raise ValueError(f"expansion factor q must be >= 1, got {q}")
    snr = optimal_snr(alpha)
    reuse = reuse_factor(snr, alpha)
    p_i = interference_bound(n, snr, reuse, alpha, model)
    r1 = local_rate(snr, p_i)
    sol = qmf_rate(QmfProblem(r0=q * r1, n0=1.0 + p_i, snr=snr), tol=1e-12)
    return r1 - sol.rate


def enhanced_cluster_sizes(n: int, t: int, reuse: int, q: int) -> tuple[float, ...]:
    """Optimal M_1..M_t of the enhanced accounting.

    Top stage: M_t = (n/(L^2 (sqrt(1+Q))^(t+1)))^(t/(t+1)); each inner stage
    solves the local subproblem of the one above, M_i = (M_(i+1) /
    (sqrt(1+Q))^(i+1))^(i/(i+1)) (no L^2: inner phases run at spatial reuse 1).
    """
    rq = math.sqrt(1.0 + q)
    sizes = [0.0] * t
    sizes[t - 1] = (n / (reuse * reuse * rq ** (t + 1))) ** (t / (t + 1.0))
    for i in range(t - 1, 0, -1):
        sizes[i - 1] = (sizes[i] / rq ** (i + 1)) ** (i / (i + 1.0))
    return tuple(sizes)


def conventional_cluster_sizes(n: int, t: int, reuse: int, q: int) -> tuple[float, ...]:
    """Optimal M_1..M_t of the conventional accounting, M = nu^(i/(i+1))/(L sqrt(1+Q))^i."""
    lrq = reuse * math.sqrt(1.0 + q)
    sizes = [0.0] * t
    size_above: float = float(n)
    for i in range(t, 0, -1):
        sizes[i - 1] = size_above ** (i / (i + 1.0)) / lrq**i
        size_above = sizes[i - 1]
    return tuple(sizes)


def sum_rate_hier(
    cfg: NetworkConfig,
    t: int,
    scheme: Scheme,
    coding_rate: float,
    q: int,
) -> HierarchyPlan:
    """Hierarchical sum rate at a given coding rate.

    Enhanced: R_c n^(t/(t+1)) / ((1+t) L^(2t/(t+1)) (sqrt(1+Q))^t);
    conventional: R_c n^(t/(t+1)) / ((t+1) (L sqrt(1+Q))^t).  L is the
    SNR-substituted closed form of theorem3_reuse.
    """
    if t < 1:
        raise ValueError(f"stage count t must be >= 1, got {t}")
    if scheme not in (Scheme.CONVENTIONAL_HIERARCHY, Scheme.ENHANCED_HIERARCHY):
        raise ValueError(f"sum_rate_hier needs a hierarchy scheme, got {scheme}")
    if coding_rate < 0.0:
        raise ValueError(f"coding_rate must be >= 0, got {coding_rate!r}")
    if q < 1:
        raise ValueError(f"expansion factor q must be >= 1, got {q}")
    n, reuse = cfg.n, theorem3_reuse(cfg.alpha)
    rq = math.sqrt(1.0 + q)
    frac = t / (t + 1.0)
    if scheme is Scheme.ENHANCED_HIERARCHY:
        throughput = n**frac / ((1.0 + t) * reuse ** (2.0 * frac) * rq**t)
        sizes = enhanced_cluster_sizes(n, t, reuse, q)
    else:
        throughput = n**frac / ((t + 1.0) * (reuse * rq) ** t)
        sizes = conventional_cluster_sizes(n, t, reuse, q)
    return HierarchyPlan(
        t=t,
        scheme=scheme,
        cluster_sizes=sizes,
        coding_rate=coding_rate,
        throughput=throughput,
        sum_rate=coding_rate * throughput,
        degenerate=min(sizes) < 1.0,
    )


def local_throughput(n: float, t: int, reuse: int, q: int) -> float:
    """Stage-t local-communication throughput n^(t/(t+1))/((t+1) L^2 (sqrt(1+Q))^t).

    The t = 1 case is sqrt(n)/(2 L^2 sqrt(1+Q)); unlike the top stage, local
    communication keeps the L^2 TDMA factor on its MIMO phase.
    """
    if t < 1:
        raise ValueError(f"stage count t must be >= 1, got {t}")
    frac = t / (t + 1.0)
    return n**frac / ((t + 1.0) * reuse * reuse * math.sqrt(1.0 + q) ** t)


def stage_relaxed_objective(t: float, n: float, reuse: int) -> float:
    """Log of the integer-relaxed stage objective (n/L)^(t/(t+1))/((1+t) sqrt(3)^t).

    optimal_stages' closed form is the stationary point of this function.
    """
    return (
        t / (t + 1.0) * math.log(n / reuse)
        - math.log(1.0 + t)
        - t * 0.5 * _LN3
    )


def optimal_stages(n: int, reuse: int) -> tuple[float, int]:
    """Continuous and integer-optimal number of hierarchical stages.

    t_real = -1 + (-1 + sqrt(1 + 2 ln(n/L) ln 3)) / ln 3 solves
    (t+1)^2 ln(sqrt 3) + (t+1) - ln(n/L) = 0.  t_int exhaustively maximizes
    the enhanced sum rate over t in 1..8 at Q = 2 (the coding rate is a
    positive constant in t, so it cannot affect the argmax); ties break
    toward smaller t.
    """
    if n <= reuse:
        raise ValueError(f"need n > reuse, got n={n}, reuse={reuse}")
    t_real = -1.0 + (-1.0 + math.sqrt(1.0 + 2.0 * math.log(n / reuse) * _LN3)) / _LN3

    q = 2
    rq = math.sqrt(1.0 + q)
    best_t, best_val = 1, -math.inf
    for t in STAGE_SEARCH_RANGE:
        frac = t / (t + 1.0)
        val = n**frac / ((1.0 + t) * reuse ** (2.0 * frac) * rq**t)
        if val > best_val:
            best_t, best_val = t, val
    return t_real, best_t
