import math

import numpy as np
import pytest
from scipy import integrate

from hiercoop.oracles import qmf_grid_max, random_qmf_problems
from hiercoop.qmf import (
    QmfProblem,
    capacity_rmt,
    h_gap,
    qmf_rate,
    sigma_bounds,
)


def capacity_mp_quadrature(x: float) -> float:
    """Independent route: integrate log2(1+x*lam) against the square-case
    Marchenko-Pastur density sqrt((4-lam)/lam)/(2 pi) on [0, 4]."""
    val, _ = integrate.quad(
        lambda lam: math.log2(1.0 + x * lam) * math.sqrt((4.0 - lam) / lam) / (2.0 * math.pi),
        0.0,
        4.0,
        limit=200,
    )
    return val


class TestCapacityRmt:
    def test_frozen_value_at_10(self):
        # 2.7233264657…, cross-checked by MP quadrature (diff ~1e-13)
        assert capacity_rmt(10.0) == pytest.approx(2.723326465736501, abs=1e-12)

    def test_frozen_value_at_2(self):
        # sqrt(1+8) = 3 makes this evaluable by hand: 2 - log2(e)/2
        assert capacity_rmt(2.0) == pytest.approx(2.0 - 0.5 / math.log(2.0), abs=1e-12)
        assert capacity_rmt(2.0) == pytest.approx(1.2786524795555183, abs=1e-9)

    def test_zero_limit(self):
        assert capacity_rmt(0.0) == 0.0
        assert capacity_rmt(1e-12) == pytest.approx(0.0, abs=1e-11)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            capacity_rmt(-0.5)

    @pytest.mark.parametrize("x", [0.1, 1.0, 10.0, 100.0, 1e4])
    def test_matches_mp_quadrature(self, x):
        assert capacity_rmt(x) == pytest.approx(capacity_mp_quadrature(x), abs=1e-9)

    def test_strictly_increasing(self):
        xs = np.logspace(-3, 6, 80)
        cs = [capacity_rmt(float(x)) for x in xs]
        assert all(b > a for a, b in zip(cs, cs[1:]))

    def test_bounded_by_awgn_capacity(self):
        for x in np.logspace(-6, 8, 100):
            assert capacity_rmt(float(x)) <= math.log2(1.0 + float(x))


class TestQmfProblem:
    def test_zero_backhaul_signalled_distinctly(self):
        with pytest.raises(ValueError):
            QmfProblem(r0=0.0, n0=1.0, snr=10.0)

    def test_noise_floor_enforced(self):
        with pytest.raises(ValueError):
            QmfProblem(r0=1.0, n0=0.5, snr=10.0)

    def test_rejects_non_positive_snr(self):
        with pytest.raises(ValueError):
            QmfProblem(r0=1.0, n0=1.0, snr=0.0)


class TestSigmaBounds:
    def test_unit_case(self):
        assert sigma_bounds(QmfProblem(r0=1.0, n0=1.0, snr=1.0)) == (1.0, 2.0)

    def test_r0_two(self):
        lo, hi = sigma_bounds(QmfProblem(r0=2.0, n0=1.0, snr=3.0))
        assert lo == pytest.approx(1.0 / 3.0, rel=1e-15)
        assert hi == pytest.approx(4.0 / 3.0, rel=1e-15)

    def test_alpha3_operating_point(self):
        lo, hi = sigma_bounds(QmfProblem(r0=4.13, n0=1564.0, snr=25822.0))
        assert lo == pytest.approx(94.73793053840139, rel=1e-12)
        assert hi == pytest.approx(1658.882970412187, rel=1e-12)

    def test_h_signs_at_bounds(self):
        for p in random_qmf_problems(40, seed=3):
            lo, hi = sigma_bounds(p)
            assert lo < hi
            assert h_gap(lo, p) <= 1e-9 * max(1.0, p.r0)
            assert h_gap(hi, p) >= -1e-9 * max(1.0, p.r0)


class TestHGap:
    def test_strictly_increasing(self):
        p = QmfProblem(r0=4.0, n0=10.0, snr=1000.0)
        lo, hi = sigma_bounds(p)
        sig = np.logspace(math.log10(lo), math.log10(hi), 200)
        hs = [h_gap(float(s), p) for s in sig]
        assert all(b > a for a, b in zip(hs, hs[1:]))

    def test_cancellation_at_negligible_snr(self):
        # sigma = 1, r0 = 1, n0 = 1: first constraint exactly zero, C ~ 0
        p = QmfProblem(r0=1.0, n0=1.0, snr=1e-12)
        assert h_gap(1.0, p) == pytest.approx(0.0, abs=1e-9)

    def test_rejects_non_positive_sigma(self):
        with pytest.raises(ValueError):
            h_gap(0.0, QmfProblem(r0=1.0, n0=1.0, snr=1.0))


class TestQmfRate:
    def test_alpha3_point_balances_constraints(self):
        p = QmfProblem(r0=4.13, n0=1.0, snr=25822.0)
        sol = qmf_rate(p, tol=1e-9)
        assert sol.rate > 0.0
        assert sol.constraint_gap <= 1e-9 * max(1.0, p.r0)
        lo, hi = sigma_bounds(p)
        assert lo <= sol.sigma_q_sq <= hi
        grid_rate, _ = qmf_grid_max(p, 10_000)
        assert grid_rate <= sol.rate + 1e-9 * sol.rate + 1e-9
        assert sol.rate == pytest.approx(grid_rate, rel=1e-4)

    def test_large_backhaul_reaches_mimo_capacity(self):
        # r0 -> inf removes the quantization penalty
        p = QmfProblem(r0=1e3, n0=1.0, snr=25822.0)
        sol = qmf_rate(p, tol=1e-9)
        assert sol.rate == pytest.approx(capacity_rmt(25822.0), rel=1e-9)

    def test_vanishing_backhaul_gives_zero_rate(self):
        sol = qmf_rate(QmfProblem(r0=1e-9, n0=1.0, snr=100.0), tol=1e-9)
        assert 0.0 <= sol.rate <= 1e-8

    def test_tolerance_validation(self):
        p = QmfProblem(r0=1.0, n0=1.0, snr=1.0)
        with pytest.raises(ValueError):
            qmf_rate(p, tol=0.0)
        with pytest.raises(ValueError):
            qmf_rate(p, tol=2e-3)

    def test_monotone_in_r0_snr_n0(self):
        slack = 1e-9
        for p in random_qmf_problems(25, seed=11):
            base = qmf_rate(p, tol=1e-9).rate
            up_r0 = qmf_rate(QmfProblem(p.r0 * 1.2, p.n0, p.snr), tol=1e-9).rate
            up_snr = qmf_rate(QmfProblem(p.r0, p.n0, p.snr * 1.5), tol=1e-9).rate
            up_n0 = qmf_rate(QmfProblem(p.r0, p.n0 * 2.0, p.snr), tol=1e-9).rate
            assert up_r0 >= base - slack
            assert up_snr >= base - slack
            assert up_n0 <= base + slack

    def test_constraints_agree_within_tol_times_rate(self):
        for p in random_qmf_problems(25, seed=19):
            tol = 1e-6
            sol = qmf_rate(p, tol=tol)
            assert sol.constraint_gap <= tol * max(sol.rate, 1e-12) + 1e-15
