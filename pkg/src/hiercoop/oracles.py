"""Independent brute-force / Monte Carlo verifiers for the closed forms.

Nothing here reuses the analytic path it checks: interference is measured by
exhaustive summation over an explicit grid, MIMO capacity by sampling random
channel matrices, optima by dense grid scans.  All randomness comes from
numpy's counter-based Philox generator so runs are bit-reproducible from the
seed; the algorithm identifier and seed are embedded in every check name.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from .hierarchy import local_throughput
from .link_budget import interference_bound
from .model import InterferenceModel
from .qmf import QmfProblem, capacity_rmt, qmf_rate, sigma_bounds
from .single_stage import packet_throughput

RNG_ALGORITHM = "philox4x64"

_LN2 = math.log(2.0)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class ValidationReport:
    """One oracle-vs-closed-form comparison.

    passed <=> |analytic - oracle| <= tolerance * max(1, |analytic|).
    One-sided bound checks are encoded as margin checks (analytic 0, oracle
    the clipped violation) so the invariant keeps its exact meaning.
    """

    check_name: str
    analytic_value: float
    oracle_value: float
    tolerance: float
    passed: bool
    runtime_ms: float

    def __post_init__(self) -> None:
        expected = (
            abs(self.analytic_value - self.oracle_value)
            <= self.tolerance * max(1.0, abs(self.analytic_value))
        )
        if self.passed != expected:
            raise ValueError("passed flag inconsistent with tolerance comparison")


def make_report(
    check_name: str, analytic: float, oracle: float, tolerance: float, runtime_ms: float
) -> ValidationReport:
    return ValidationReport(
        check_name=check_name,
        analytic_value=analytic,
        oracle_value=oracle,
        tolerance=tolerance,
        passed=abs(analytic - oracle) <= tolerance * max(1.0, abs(analytic)),
        runtime_ms=runtime_ms,
    )


def reports_to_json(reports: list[ValidationReport], timings: bool = False) -> str:
    """Serialize reports to a JSON array with exactly the declared fields.

    Wall-clock timings are volatile, so runtime_ms is zeroed unless requested;
    with timings=False the output is byte-identical across reruns.
    """
    rows = []
    for r in reports:
        d = asdict(r)
        if not timings:
            d["runtime_ms"] = 0.0
        rows.append(d)
    return json.dumps(rows, indent=2, sort_keys=True)


@dataclass(frozen=True)
class GridScenario:
    """Explicit sqrt(n) x sqrt(n) grid on the unit square, tiled by clusters."""

    n: int
    m: int
    reuse: int
    alpha: float
    snr: float
    seed: int = 0

    def __post_init__(self) -> None:
        rn, rm = math.isqrt(self.n), math.isqrt(self.m)
        if rn * rn != self.n:
            raise ValueError(f"n must be a perfect square, got {self.n}")
        if rm * rm != self.m:
            raise ValueError(f"m must be a perfect square, got {self.m}")
        if self.m > self.n:
            raise ValueError(f"cluster size {self.m} exceeds network size {self.n}")
        if rn % rm != 0:
            raise ValueError(
                f"clusters must tile the grid exactly: sqrt(n)={rn}, sqrt(m)={rm}"
            )
        if self.reuse < 2:
            raise ValueError(f"reuse must be >= 2, got {self.reuse}")


@dataclass(frozen=True)
class ChannelDraw:
    """Phase-fading draw: unit-magnitude entries exp(j theta), theta ~ U(0, 2pi]."""

    phases: np.ndarray
    seed: int

    @classmethod
    def sample(cls, m: int, seed: int) -> "ChannelDraw":
        rng = _rng(seed)
        return cls(phases=rng.uniform(0.0, 2.0 * np.pi, size=(m, m)), seed=seed)

    def matrix(self) -> np.ndarray:
        return np.exp(1j * self.phases)


def nearest_perfect_square(n: int) -> int:
    """Round n to the nearest perfect square (ties toward the smaller root)."""
    r = math.isqrt(n)
    return r * r if (n - r * r) <= ((r + 1) ** 2 - n) else (r + 1) ** 2


def measure_grid_interference(s: GridScenario) -> float:
    """Worst-case expected inter-cluster interference on the reuse lattice.

    One transmitter per cluster is active on an L x L lattice of clusters
    congruent to the probe cluster (grid centre).  Per active cluster the
    transmitter sits at the worst of its 4 corner nodes and its centre node;
    the receiver ranges over every node of the probe cluster.  Phases are
    i.i.d. uniform so the expected aggregate power is the plain power sum
    over interferers with P = snr * (m/n)^(alpha/2).
    """
    rn, rm = math.isqrt(s.n), math.isqrt(s.m)
    clusters_per_side = rn // rm
    c0 = clusters_per_side // 2
    power = s.snr * (s.m / s.n) ** (s.alpha / 2.0)
    spacing = 1.0 / rn

    def node(cx: int, cy: int, a: int, b: int) -> tuple[float, float]:
        return ((cx * rm + a + 0.5) * spacing, (cy * rm + b + 0.5) * spacing)

    first = c0 % s.reuse
    active = [
        (cx, cy)
        for cx in range(first, clusters_per_side, s.reuse)
        for cy in range(first, clusters_per_side, s.reuse)
        if (cx, cy) != (c0, c0)
    ]
    if not active:
        return 0.0
    half = rm // 2
    candidates = [(0, 0), (0, rm - 1), (rm - 1, 0), (rm - 1, rm - 1), (half, half)]
    worst = 0.0
    for a in range(rm):
        for b in range(rm):
            rx, ry = node(c0, c0, a, b)
            total = 0.0
            for cx, cy in active:
                best = 0.0
                for ca, cb in candidates:
                    tx, ty = node(cx, cy, ca, cb)
                    d2 = (rx - tx) ** 2 + (ry - ty) ** 2
                    best = max(best, d2 ** (-s.alpha / 2.0))
                total += power * best
            worst = max(worst, total)
    return worst


def mc_mimo_capacity(
    m: int,
    x: float,
    trials: int,
    seed: int,
    entries: str = "phase",
) -> tuple[float, float]:
    """Sample mean and standard error of (1/m) log2 det(I + (x/m) H H^H).

    entries="phase" draws unit-magnitude uniform-phase entries (the network's
    fading model); entries="gaussian" draws CN(0,1) entries.  Both are zero
    mean, unit variance, so the mean converges to capacity_rmt(x) as m grows.
    """
    if m < 8:
        raise ValueError(f"need m >= 8 antennas, got {m}")
    if trials < 50:
        raise ValueError(f"need >= 50 trials, got {trials}")
    if entries not in ("phase", "gaussian"):
        raise ValueError(f"entries must be 'phase' or 'gaussian', got {entries!r}")
    if x < 0.0:
        raise ValueError(f"x must be >= 0, got {x!r}")
    if x == 0.0:
        return 0.0, 0.0
    rng = _rng(seed)
    eye = np.eye(m)
    samples = np.empty(trials)
    for k in range(trials):
        if entries == "phase":
            h = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=(m, m)))
        else:
            h = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2.0)
        _, logdet = np.linalg.slogdet(eye + (x / m) * (h @ h.conj().T))
        samples[k] = logdet / _LN2 / m
    return float(samples.mean()), float(samples.std(ddof=1) / math.sqrt(trials))


def qmf_grid_max(p: QmfProblem, grid_points: int = 10_000) -> tuple[float, float]:
    """Max over a log-spaced sigma^2 grid of min{backhaul, MIMO} constraint."""
    if grid_points < 1000:
        raise ValueError(f"need >= 1000 grid points, got {grid_points}")
    lo, hi = sigma_bounds(p)
    sig = np.logspace(math.log10(lo), math.log10(hi), grid_points)
    c1 = p.r0 - np.log2(1.0 + p.n0 / sig)
    z = p.snr / (p.n0 + sig)
    sq = np.sqrt(1.0 + 4.0 * z)
    c2 = 2.0 * np.log2((1.0 + sq) / 2.0) - (sq - 1.0) ** 2 / (4.0 * z * _LN2)
    rates = np.minimum(c1, c2)
    k = int(np.argmax(rates))
    return float(rates[k]), float(sig[k])


def single_stage_throughput_grid_max(
    n: int, reuse: int, q: int, points: int = 10_000
) -> float:
    """Grid max over M of the single-stage packet throughput (top level, no TDMA)."""
    ms = np.logspace(0.0, math.log10(n), points)
    vals = ms * n / ((q + 1.0) * (reuse * ms) ** 2 + n)
    return float(vals.max())


def local_throughput_grid_max(
    n: float, t: int, reuse: int, q: int, points: int = 10_000
) -> float:
    """Grid max over M_t of the recursive local-communication throughput.

    TL^(t)(n) = max_M n M / ((1+Q) M^2 / TL^(t-1)(M) + L^2 n), grounded at
    TL^(0) = 1/L^2 (a lone node transmitting once every L^2 slots); the
    stage below is evaluated through its closed form.
    """
    ms = np.logspace(0.0, math.log10(n), points)
    if t == 1:
        below = np.full_like(ms, 1.0 / (reuse * reuse))
    else:
        frac = (t - 1) / float(t)
        below = ms**frac / (t * reuse * reuse * math.sqrt(1.0 + q) ** (t - 1))
    vals = n * ms / ((1.0 + q) * ms**2 / below + reuse * reuse * n)
    return float(vals.max())


def verify_qmf_grid(p: QmfProblem, grid_points: int = 10_000) -> ValidationReport:
    """Grid-scan max of min{constraints} vs the bisection rate (0.1% agreement)."""
    t0 = time.perf_counter()
    sol = qmf_rate(p, tol=1e-9)
    grid_rate, _ = qmf_grid_max(p, grid_points)
    ms = (time.perf_counter() - t0) * 1e3
    name = (
        f"qmf_grid[r0={p.r0:g},n0={p.n0:g},snr={p.snr:g},points={grid_points}]"
    )
    return make_report(name, sol.rate, grid_rate, 1e-3, ms)


def verify_cluster_optimum(
    n: int, t: int, reuse: int, q: int, points: int = 10_000
) -> ValidationReport:
    """Lemma-2 local throughput closed form vs numeric grid maximization (1%)."""
    if t < 1:
        raise ValueError(f"stage count t must be >= 1, got {t}")
    t0 = time.perf_counter()
    closed = local_throughput(n, t, reuse, q)
    grid = local_throughput_grid_max(n, t, reuse, q, points)
    ms = (time.perf_counter() - t0) * 1e3
    name = f"cluster_optimum_local[t={t},n={n:g},L={reuse},q={q},points={points}]"
    return make_report(name, closed, grid, 0.01, ms)


def verify_single_stage_optimum(
    n: int, reuse: int, q: int, points: int = 10_000
) -> ValidationReport:
    """Theorem-1 cluster size: closed-form throughput vs grid maximization (1%)."""
    t0 = time.perf_counter()
    m_star = math.sqrt(n) / (reuse * math.sqrt(1.0 + q))
    closed = packet_throughput(n, m_star, reuse, q)
    grid = single_stage_throughput_grid_max(n, reuse, q, points)
    ms = (time.perf_counter() - t0) * 1e3
    name = f"cluster_optimum_single[n={n:g},L={reuse},q={q},points={points}]"
    return make_report(name, closed, grid, 0.01, ms)


def verify_grid_interference(
    s: GridScenario,
    model: InterferenceModel = InterferenceModel.RING_DISTANCE,
    adjusted_from: int | None = None,
) -> ValidationReport:
    """Measured worst-case interference must not exceed the P_I bound.

    Encoded as a margin check: oracle_value is the violation
    max(0, measured - bound), expected 0.  adjusted_from records the
    requested n when it was rounded to the nearest perfect square.
    """
    t0 = time.perf_counter()
    measured = measure_grid_interference(s)
    bound = interference_bound(s.n, s.snr, s.reuse, s.alpha, model)
    ms = (time.perf_counter() - t0) * 1e3
    violation = max(0.0, measured - bound)
    n_note = f"{s.n}" if adjusted_from in (None, s.n) else f"{s.n}(adjusted from {adjusted_from})"
    name = (
        f"grid_interference_bound[n={n_note},m={s.m},L={s.reuse},alpha={s.alpha:g},"
        f"model={model.value},measured={measured:.6g},bound={bound:.6g}]"
    )
    return make_report(name, 0.0, violation, 1e-12, ms)


def verify_mimo_capacity(
    x: float,
    m: int = 256,
    trials: int = 200,
    seed: int = 0,
    entries: str = "phase",
) -> ValidationReport:
    """Monte Carlo MIMO capacity vs capacity_rmt(x), 2% tolerance."""
    t0 = time.perf_counter()
    est, _ = mc_mimo_capacity(m, x, trials, seed, entries)
    ms = (time.perf_counter() - t0) * 1e3
    name = (
        f"mc_mimo_capacity[x={x:g},m={m},trials={trials},entries={entries},"
        f"rng={RNG_ALGORITHM},seed={seed}]"
    )
    return make_report(name, capacity_rmt(x), est, 0.02, ms)


def random_qmf_problems(count: int, seed: int) -> list[QmfProblem]:
    """Seeded random QMF instances spanning the regimes the solver must cover."""
    rng = _rng(seed)
    problems = []
    for _ in range(count):
        r0 = float(rng.uniform(0.25, 12.0))
        n0 = float(10.0 ** rng.uniform(0.0, 4.0))
        snr = float(10.0 ** rng.uniform(0.0, 6.0))
        problems.append(QmfProblem(r0=r0, n0=n0, snr=snr))
    return problems
