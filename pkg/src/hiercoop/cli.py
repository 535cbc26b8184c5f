"""Command-line front end: analyze, sweep, fixed-point, validate, figures.

Exit codes: 0 success, 1 validation failure, 2 usage/domain error.  All
output is deterministic given flags + seed; CSV uses '.' decimals, ','
separators and '\n' line endings regardless of locale.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import hierarchy, oracles, single_stage
from .link_budget import interference_bound, local_rate, optimal_snr, reuse_factor
from .model import (
    InterferenceModel,
    NetworkConfig,
    ProtocolParams,
    Scheme,
    db_to_linear,
    dof_limit,
    linear_to_db,
)
from .qmf import QmfProblem, qmf_rate

SCHEMA_VERSION = 1

# Canonical figure parameters (the paper's working point alpha=3, n=1e4).
FIG_ALPHA = 3.0
FIG_N = 10_000

_SCHEME_BY_NAME = {s.value: s for s in Scheme}
_MODEL_BY_NAME = {m.value: m for m in InterferenceModel}


class UsageError(ValueError):
    """Bad flag combination or domain violation; maps to exit code 2."""


def parse_count(text: str) -> int:
    """Node counts accept scientific notation but must be integral."""
    try:
        value = float(text)
    except ValueError as exc:
        raise UsageError(f"not a number: {text!r}") from exc
    if not value.is_integer():
        raise UsageError(f"expected an integer count, got {text!r}")
    return int(value)


def parse_snr(text: str) -> float:
    """Linear ratio, or dB with a 'dB' suffix (10^(dB/10))."""
    t = text.strip()
    if t.lower().endswith("db"):
        try:
            return db_to_linear(float(t[:-2]))
        except ValueError as exc:
            raise UsageError(f"bad dB value: {text!r}") from exc
    try:
        return float(t)
    except ValueError as exc:
        raise UsageError(f"bad SNR value: {text!r}") from exc


def _fmt(value) -> str:
    """Locale-independent cell formatting; floats keep shortest round-trip form."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    return repr(float(value))


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


@dataclass(frozen=True)
class SweepSpec:
    """Declarative sweep: one axis, a grid, and the schemes to evaluate."""

    axis: str
    start: float
    stop: float
    points: int
    scale: str
    schemes: tuple[Scheme, ...]
    fixed: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.axis not in ("n", "alpha", "t", "snr"):
            raise UsageError(f"unknown sweep axis {self.axis!r}")
        if not self.start < self.stop:
            raise UsageError(f"need from < to, got {self.start!r} >= {self.stop!r}")
        if self.points < 2:
            raise UsageError(f"need >= 2 points, got {self.points}")
        if self.scale not in ("linear", "log"):
            raise UsageError(f"scale must be linear or log, got {self.scale!r}")
        if self.axis in self.fixed:
            raise UsageError(f"axis {self.axis!r} also appears in fixed parameters")
        if not self.schemes:
            raise UsageError("at least one scheme required")

    def grid(self) -> list[float]:
        if self.scale == "log":
            if self.start <= 0.0:
                raise UsageError("log scale requires a positive range")
            lo, hi = math.log10(self.start), math.log10(self.stop)
            return [10.0 ** (lo + (hi - lo) * i / (self.points - 1)) for i in range(self.points)]
        return [
            self.start + (self.stop - self.start) * i / (self.points - 1)
            for i in range(self.points)
        ]


def _single_row_at_snr(n: int, alpha: float, snr: float, reuse: int | None,
                       model: InterferenceModel) -> tuple[float, float, float, int, float]:
    """Single-stage operating point at a forced SNR (Q=1); returns
    (coding_rate, throughput, sum_rate, L, M)."""
    L = reuse if reuse is not None else reuse_factor(snr, alpha)
    p_i = interference_bound(n, snr, L, alpha, model)
    r1 = local_rate(snr, p_i)
    m = math.sqrt(n) / (L * math.sqrt(2.0))
    thr = single_stage.packet_throughput(n, max(m, 1.0), L, 1)
    return r1, thr, r1 * thr, L, m


def _hier_best(cfg: NetworkConfig, scheme: Scheme, q: int, r_star: float,
               model: InterferenceModel, t_forced: int | None):
    """Best hierarchical operating point over t (or at a forced t).

    The t = 1 candidate is the Theorem-1 single-stage report, which admits a
    higher coding rate than the fixed point.
    """
    candidates = []
    ts = [t_forced] if t_forced is not None else list(hierarchy.STAGE_SEARCH_RANGE)
    for t in ts:
        if t == 1:
            plan = single_stage.plan_single_stage(cfg, model)
            rep = plan.report
            candidates.append(
                (rep.sum_rate, t, rep.coding_rate, rep.packet_throughput,
                 rep.params.reuse, plan.m)
            )
        else:
            plan = hierarchy.sum_rate_hier(cfg, t, scheme, r_star, q)
            candidates.append(
                (plan.sum_rate, t, plan.coding_rate, plan.throughput,
                 hierarchy.theorem3_reuse(cfg.alpha), plan.cluster_sizes[-1])
            )
    best = max(candidates, key=lambda c: (c[0], -c[1]))
    return best  # (sum_rate, t, coding_rate, throughput, L, m_top)


def sweep_rows(spec: SweepSpec) -> tuple[list[str], list[list]]:
    """Evaluate a sweep; returns (header, rows) in axis order."""
    fixed = spec.fixed
    model = fixed.get("interference", InterferenceModel.RING_DISTANCE)
    q = fixed.get("q", 2)
    snr_max = fixed.get("snr_max", 1e12)
    header = [spec.axis, "scheme", "coding_rate", "throughput", "sum_rate",
              "t", "L", "SNR", "M_t"]
    rows: list[list] = []

    hier_schemes = (Scheme.CONVENTIONAL_HIERARCHY, Scheme.ENHANCED_HIERARCHY)
    if spec.axis == "snr":
        if any(s is not Scheme.SINGLE_STAGE for s in spec.schemes):
            raise UsageError("axis=snr supports only the single scheme")
        n = parse_count(str(fixed["n"]))
        alpha = float(fixed["alpha"])
        for snr in spec.grid():
            rc, thr, sr, L, m = _single_row_at_snr(n, alpha, snr, None, model)
            rows.append([snr, Scheme.SINGLE_STAGE.value, rc, thr, sr, 1, L, snr, m])
        return header, rows

    if spec.axis == "t":
        if any(s is Scheme.SINGLE_STAGE for s in spec.schemes):
            raise UsageError("axis=t supports only hierarchy schemes")
        n = parse_count(str(fixed["n"]))
        alpha = float(fixed["alpha"])
        cfg = NetworkConfig(n=n, alpha=alpha, snr_max=snr_max)
        trace = hierarchy.coding_rate_fixed_point(alpha, q, n, model)
        snr = optimal_snr(alpha)
        for tv in spec.grid():
            t = int(round(tv))
            # stage-t rate constraint; past convergence the trace is flat
            rc = trace.iterates[min(t, len(trace.iterates)) - 1]
            for scheme in spec.schemes:
                plan = hierarchy.sum_rate_hier(cfg, t, scheme, rc, q)
                L = hierarchy.theorem3_reuse(alpha)
                rows.append([t, scheme.value, rc, plan.throughput, plan.sum_rate,
                             t, L, snr, plan.cluster_sizes[-1]])
        return header, rows

    if spec.axis == "n":
        alpha = float(fixed["alpha"])
        snr = min(optimal_snr(alpha), snr_max)
        for nv in spec.grid():
            n = max(4, int(round(nv)))
            cfg = NetworkConfig(n=n, alpha=alpha, snr_max=snr_max)
            trace = None
            for scheme in spec.schemes:
                if scheme is Scheme.SINGLE_STAGE:
                    plan = single_stage.plan_single_stage(cfg, model)
                    rep = plan.report
                    rows.append([n, scheme.value, rep.coding_rate,
                                 rep.packet_throughput, rep.sum_rate, 1,
                                 rep.params.reuse, rep.params.snr, plan.m])
                else:
                    if trace is None:
                        trace = hierarchy.coding_rate_fixed_point(alpha, q, n, model)
                    sr, t, rc, thr, L, m = _hier_best(
                        cfg, scheme, q, trace.r_star, model, fixed.get("t"))
                    rows.append([n, scheme.value, rc, thr, sr, t, L, snr, m])
        return header, rows

    # axis == "alpha"
    n = parse_count(str(fixed["n"]))
    for alpha in spec.grid():
        cfg = NetworkConfig(n=n, alpha=alpha, snr_max=snr_max)
        snr = min(optimal_snr(alpha), snr_max)
        trace = None
        for scheme in spec.schemes:
            if scheme is Scheme.SINGLE_STAGE:
                plan = single_stage.plan_single_stage(cfg, model)
                rep = plan.report
                rows.append([alpha, scheme.value, rep.coding_rate,
                             rep.packet_throughput, rep.sum_rate, 1,
                             rep.params.reuse, rep.params.snr, plan.m])
            else:
                if trace is None:
                    trace = hierarchy.coding_rate_fixed_point(alpha, q, n, model)
                sr, t, rc, thr, L, m = _hier_best(
                    cfg, scheme, q, trace.r_star, model, fixed.get("t"))
                rows.append([alpha, scheme.value, rc, thr, sr, t, L, snr, m])
    return header, rows


def _analyze_payload(args) -> dict:
    n = parse_count(args.n)
    alpha = args.alpha
    snr_max = parse_snr(args.snr_max)
    model = _MODEL_BY_NAME[args.interference]
    scheme = _SCHEME_BY_NAME[args.scheme]
    cfg = NetworkConfig(n=n, alpha=alpha, snr_max=snr_max)

    if scheme is Scheme.SINGLE_STAGE:
        if args.t not in (None, 1):
            raise UsageError("scheme single implies t = 1")
        plan = single_stage.plan_single_stage(cfg, model)
        report = plan.report
        params = report.params
        extras = {
            "m_int": plan.m_int,
            "degenerate": plan.degenerate,
            "mimo_verified": plan.mimo_verified,
            "mimo_snr_prime": plan.mimo_snr_prime,
        }
    else:
        q = args.q if args.q is not None else 2
        if snr_max < optimal_snr(alpha):
            raise UsageError(
                "snr_max is below the hierarchy operating point "
                f"({optimal_snr(alpha):.6g}); raise --snr-max"
            )
        trace = hierarchy.coding_rate_fixed_point(alpha, q, n, model)
        L = hierarchy.theorem3_reuse(alpha)
        _, t_int = hierarchy.optimal_stages(n, L)
        t = args.t if args.t is not None else t_int
        plan = hierarchy.sum_rate_hier(cfg, t, scheme, trace.r_star, q)
        snr = optimal_snr(alpha)
        sol = qmf_rate(
            QmfProblem(r0=q * trace.r_star, n0=1.0 + interference_bound(n, snr, L, alpha, model), snr=snr),
            tol=1e-12,
        )
        params = ProtocolParams(
            snr=snr, reuse=L, q=q, t=t,
            cluster_sizes=plan.cluster_sizes, sigma_q_sq=sol.sigma_q_sq,
        )
        from .model import RateReport

        report = RateReport.from_parts(
            coding_rate=plan.coding_rate,
            packet_throughput=plan.throughput,
            constraint_values={
                "local_rate": trace.iterates[0],
                "qmf_fixed_point": trace.r_star,
            },
            params=params,
        )
        extras = {
            "degenerate": plan.degenerate,
            "fixed_point_converged": trace.converged,
            "fixed_point_iterations": trace.iterations_used,
        }

    t_real = t_int = None
    if n > params.reuse:
        t_real, t_int = hierarchy.optimal_stages(n, params.reuse)

    payload = {
        "schema": SCHEMA_VERSION,
        "scheme": scheme.value,
        "interference_model": model.value,
        "network": {"n": n, "alpha": alpha, "snr_max": snr_max},
        "report": {
            "coding_rate": report.coding_rate,
            "packet_throughput": report.packet_throughput,
            "sum_rate": report.sum_rate,
            "constraint_values": dict(report.constraint_values),
        },
        "params": {
            "snr": params.snr,
            "snr_db": linear_to_db(params.snr),
            "reuse": params.reuse,
            "q": params.q,
            "t": params.t,
            "cluster_sizes": list(params.cluster_sizes),
            "sigma_q_sq": params.sigma_q_sq,
        },
        "t_real": t_real,
        "t_int": t_int,
    }
    payload.update(extras)
    if args.area is not None or args.wavelength is not None:
        if args.area is None or args.wavelength is None:
            raise UsageError("--area and --wavelength must be given together")
        payload["dof_limit"] = dof_limit(args.area, args.wavelength)
    return payload


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    payload = _analyze_payload(args)
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_sweep(args) -> int:
    schemes = tuple(_SCHEME_BY_NAME[s.strip()] for s in args.schemes.split(","))
    fixed: dict = {
        "interference": _MODEL_BY_NAME[args.interference],
        "q": args.q if args.q is not None else 2,
        "snr_max": parse_snr(args.snr_max),
    }
    if args.axis != "n":
        if args.n is None:
            raise UsageError("--n is required unless it is the sweep axis")
        fixed["n"] = parse_count(args.n)
    if args.axis != "alpha":
        if args.alpha is None:
            raise UsageError("--alpha is required unless it is the sweep axis")
        fixed["alpha"] = args.alpha
    if args.t is not None and args.axis != "t":
        fixed["t"] = args.t
    spec = SweepSpec(
        axis=args.axis,
        start=parse_snr(getattr(args, "from")) if args.axis == "snr" else float(getattr(args, "from")),
        stop=parse_snr(args.to) if args.axis == "snr" else float(args.to),
        points=args.points,
        scale=args.scale,
        schemes=schemes,
        fixed=fixed,
    )
    header, rows = sweep_rows(spec)
    write_csv(Path(args.out), header, rows)
    return 0


def cmd_fixed_point(args) -> int:
    model = _MODEL_BY_NAME[args.interference]
    q = args.q if args.q is not None else 2
    trace = hierarchy.coding_rate_fixed_point(
        args.alpha, q, parse_count(args.n), model,
        tol=args.tol, max_iter=args.max_iter,
    )
    payload = {
        "schema": SCHEMA_VERSION,
        "alpha": trace.alpha,
        "q": trace.q,
        "n": parse_count(args.n),
        "interference_model": model.value,
        "iterates": list(trace.iterates),
        "r_star": trace.r_star,
        "converged": trace.converged,
        "iterations_used": trace.iterations_used,
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _validate_checks(
    suite: str, seed: int, n_requested: int | None = None
) -> list[oracles.ValidationReport]:
    checks: list[oracles.ValidationReport] = []
    if suite in ("all", "qmf"):
        snr = optimal_snr(FIG_ALPHA)
        L = reuse_factor(snr, FIG_ALPHA)
        p_i = interference_bound(FIG_N, snr, L, FIG_ALPHA, InterferenceModel.RING_DISTANCE)
        r1 = local_rate(snr, p_i)
        checks.append(oracles.verify_qmf_grid(QmfProblem(r0=r1, n0=1.0 + p_i, snr=snr)))
        checks.append(oracles.verify_qmf_grid(QmfProblem(r0=1e-6, n0=1.0, snr=100.0)))
        for p in oracles.random_qmf_problems(20, seed):
            checks.append(oracles.verify_qmf_grid(p))
    if suite in ("all", "grid"):
        n_grid = oracles.nearest_perfect_square(n_requested) if n_requested else FIG_N
        rn = math.isqrt(n_grid)
        for m in (25, 100):
            if rn % math.isqrt(m) != 0:
                continue  # cluster size does not tile the requested grid
            for L in (7, 9):
                for alpha in (2.0, 3.0):
                    s = oracles.GridScenario(
                        n=n_grid, m=m, reuse=L, alpha=alpha,
                        snr=optimal_snr(alpha), seed=seed,
                    )
                    checks.append(oracles.verify_grid_interference(s, adjusted_from=n_requested))
    if suite in ("all", "mimo"):
        for x in (1.0, 10.0, 100.0):
            for entries in ("phase", "gaussian"):
                checks.append(oracles.verify_mimo_capacity(x, 256, 200, seed, entries))
    if suite in ("all", "cluster"):
        for n in (10_000, 1_000_000):
            checks.append(oracles.verify_single_stage_optimum(n, 7, 1))
            for t in (1, 2, 3):
                checks.append(oracles.verify_cluster_optimum(n, t, 7, 2))
    return checks


def cmd_validate(args) -> int:
    n_requested = parse_count(args.n) if args.n is not None else None
    checks = _validate_checks(args.suite, args.seed, n_requested)
    _emit(oracles.reports_to_json(checks, timings=args.timings) + "\n", args.out)
    return 0 if all(c.passed for c in checks) else 1


def figure_rows(which: str) -> tuple[list[str], list[list]]:
    """Canonical data for one of the four figures (wide format, one y per curve)."""
    model = InterferenceModel.RING_DISTANCE
    if which == "fig1":
        header = ["snr_db", "fixed_l3", "optimized"]
        rows = []
        for db in range(0, 81):
            snr = db_to_linear(float(db))
            _, _, sr_fixed, _, _ = _single_row_at_snr(FIG_N, FIG_ALPHA, snr, 3, model)
            _, _, sr_opt, _, _ = _single_row_at_snr(FIG_N, FIG_ALPHA, snr, None, model)
            rows.append([db, sr_fixed, sr_opt])
        return header, rows
    if which == "fig2":
        header = ["alpha", "single_stage", "hierarchical"]
        rows = []
        for i in range(21):
            alpha = 2.0 + 2.0 * i / 20.0
            snr = optimal_snr(alpha)
            L = reuse_factor(snr, alpha)
            p_i = interference_bound(FIG_N, snr, L, alpha, model)
            trace = hierarchy.coding_rate_fixed_point(alpha, 2, FIG_N, model)
            rows.append([alpha, local_rate(snr, p_i), trace.r_star])
        return header, rows
    if which == "fig3":
        header = ["n", "conventional", "enhanced"]
        rows = []
        for i in range(29):
            n = int(round(10.0 ** (2.0 + 7.0 * i / 28.0)))
            cfg = NetworkConfig(n=n, alpha=FIG_ALPHA)
            trace = hierarchy.coding_rate_fixed_point(FIG_ALPHA, 2, n, model)
            conv, _, _, _, _, _ = _hier_best(
                cfg, Scheme.CONVENTIONAL_HIERARCHY, 2, trace.r_star, model, None)
            enh, _, _, _, _, _ = _hier_best(
                cfg, Scheme.ENHANCED_HIERARCHY, 2, trace.r_star, model, None)
            rows.append([n, conv, enh])
        return header, rows
    if which == "fig4":
        header = ["t", "q1", "q2", "q3"]
        traces = {
            q: hierarchy.coding_rate_fixed_point(FIG_ALPHA, q, FIG_N, model)
            for q in (1, 2, 3)
        }
        rows = []
        for t in range(1, 9):
            rows.append(
                [t] + [traces[q].iterates[min(t, len(traces[q].iterates)) - 1]
                       for q in (1, 2, 3)]
            )
        return header, rows
    raise UsageError(f"unknown figure {which!r}")


def cmd_figures(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for which in ("fig1", "fig2", "fig3", "fig4"):
        header, rows = figure_rows(which)
        write_csv(out_dir / f"{which}.csv", header, rows)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=None, help="path-loss exponent (>= 2)")
    p.add_argument("--n", type=str, default=None, help="node count (scientific notation ok)")
    p.add_argument("--q", type=int, default=None, help="quantization expansion factor Q")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for oracle checks")
    p.add_argument("--interference", choices=("ring", "literal"), default="ring",
                   help="inter-cluster interference model")
    p.add_argument("--snr-max", type=str, default="1e12",
                   help="transmit SNR cap, linear or '<x>dB'")
    p.add_argument("--out", type=str, default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiercoop",
        description="Achievable sum rates of hierarchical cooperation in dense wireless networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="rate report for one operating point (JSON)")
    _add_common(p)
    p.add_argument("--scheme", choices=tuple(_SCHEME_BY_NAME), required=True)
    p.add_argument("--t", type=int, default=None, help="stage count (default: optimal)")
    p.add_argument("--area", type=float, default=None, help="deployment area in m^2")
    p.add_argument("--wavelength", type=float, default=None, help="carrier wavelength in m")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="parameter sweep to CSV")
    _add_common(p)
    p.add_argument("--axis", choices=("n", "alpha", "t", "snr"), required=True)
    p.add_argument("--from", dest="from", required=True, help="axis start")
    p.add_argument("--to", required=True, help="axis end")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--schemes", required=True,
                   help="comma-separated subset of single,conventional,enhanced")
    p.add_argument("--t", type=int, default=None, help="fixed stage count")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fixed-point", help="coding-rate recursion trace (JSON)")
    _add_common(p)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=100)
    p.set_defaults(func=cmd_fixed_point)

    p = sub.add_parser("validate", help="run oracle checks; exit 1 on any failure")
    _add_common(p)
    p.add_argument("--suite", choices=("all", "qmf", "grid", "mimo", "cluster"),
                   default="all")
    p.add_argument("--timings", action="store_true",
                   help="emit measured runtimes (output no longer byte-stable)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("figures", help="emit fig1.csv..fig4.csv")
    _add_common(p)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_figures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    required = {
        "analyze": ("alpha", "n"),
        "fixed-point": ("alpha", "n"),
    }.get(args.command, ())
    try:
        for name in required:
            if getattr(args, name) is None:
                raise UsageError(f"--{name} is required for {args.command}")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
