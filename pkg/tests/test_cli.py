import csv
import json
import math

import pytest

from hiercoop.cli import main, parse_count, parse_snr


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFlagParsing:
    def test_scientific_counts(self):
        assert parse_count("1e4") == 10_000
        assert parse_count("250") == 250

    def test_rejects_fractional_count(self):
        from hiercoop.cli import UsageError

        with pytest.raises(UsageError):
            parse_count("10.5")

    def test_snr_db_suffix(self):
        assert parse_snr("40dB") == pytest.approx(1e4)
        assert parse_snr("40DB") == pytest.approx(1e4)
        assert parse_snr("1e5") == 1e5


class TestAnalyze:
    def test_single_stage_sum_rate(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "--n", "1e4", "--alpha", "3", "--scheme", "single"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert doc["report"]["sum_rate"] == pytest.approx(20.857431248012904, rel=1e-9)
        assert doc["params"]["q"] == 1
        assert doc["params"]["snr_db"] == pytest.approx(44.1195, rel=1e-4)

    def test_enhanced_large_network_t_le_4(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "--n", "1e7", "--alpha", "3", "--scheme", "enhanced"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["t_int"] <= 4
        assert doc["params"]["t"] == doc["t_int"]
        assert doc["report"]["coding_rate"] == pytest.approx(
            doc["report"]["constraint_values"]["qmf_fixed_point"], rel=1e-12
        )

    def test_enhanced_small_network_prefers_one_stage(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "--n", "1e2", "--alpha", "3", "--scheme", "enhanced"
        )
        assert code == 0
        assert json.loads(out)["t_int"] == 1

    def test_dof_annotation(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "--n", "1e4", "--alpha", "3", "--scheme", "single",
            "--area", "1e6", "--wavelength", "0.01",
        )
        assert code == 0
        assert json.loads(out)["dof_limit"] == pytest.approx(1e5)

    def test_dof_flags_must_pair(self, capsys):
        code, _, err = run_cli(
            capsys, "analyze", "--n", "1e4", "--alpha", "3", "--scheme", "single",
            "--area", "1e6",
        )
        assert code == 2
        assert "wavelength" in err

    def test_missing_required_flag(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "--alpha", "3", "--scheme", "single")
        assert code == 2
        assert "--n" in err

    def test_single_with_t2_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "analyze", "--n", "1e4", "--alpha", "3",
            "--scheme", "single", "--t", "2",
        )
        assert code == 2

    def test_snr_max_in_db(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "--n", "1e4", "--alpha", "3", "--scheme", "single",
            "--snr-max", "20dB",
        )
        assert code == 0
        assert json.loads(out)["params"]["snr"] == pytest.approx(100.0)

    def test_bad_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2


class TestSweep:
    def test_n_axis_enhanced_dominates_conventional(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--axis", "n", "--from", "1e2", "--to", "1e9",
            "--points", "8", "--scale", "log",
            "--schemes", "conventional,enhanced", "--alpha", "3", "--out", str(out),
        )
        assert code == 0
        rows = list(csv.DictReader(out.open()))
        assert rows[0].keys() == {
            "n", "scheme", "coding_rate", "throughput", "sum_rate", "t", "L", "SNR", "M_t"
        }
        by_n = {}
        for r in rows:
            by_n.setdefault(r["n"], {})[r["scheme"]] = float(r["sum_rate"])
        for vals in by_n.values():
            assert vals["enhanced"] >= vals["conventional"]

    def test_alpha_axis_coding_rate_is_fixed_point(self, tmp_path, capsys):
        from hiercoop.hierarchy import coding_rate_fixed_point
        from hiercoop.model import InterferenceModel

        out = tmp_path / "alpha.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--axis", "alpha", "--from", "2", "--to", "4",
            "--points", "5", "--schemes", "enhanced", "--n", "1e6",
            "--q", "2", "--out", str(out),
        )
        assert code == 0
        rows = list(csv.DictReader(out.open()))
        for r in rows:
            if int(r["t"]) >= 2:
                want = coding_rate_fixed_point(
                    float(r["alpha"]), 2, 10**6, InterferenceModel.RING_DISTANCE
                ).r_star
                assert float(r["coding_rate"]) == pytest.approx(want, rel=1e-9)

    def test_t_axis_rows_are_iterates(self, tmp_path, capsys):
        from hiercoop.hierarchy import coding_rate_fixed_point
        from hiercoop.model import InterferenceModel

        out = tmp_path / "t.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--axis", "t", "--from", "1", "--to", "8",
            "--points", "8", "--schemes", "enhanced", "--n", "1e4",
            "--alpha", "3", "--q", "2", "--out", str(out),
        )
        assert code == 0
        rows = list(csv.DictReader(out.open()))
        trace = coding_rate_fixed_point(3.0, 2, 10**4, InterferenceModel.RING_DISTANCE)
        for r in rows:
            t = int(r["t"])
            want = trace.iterates[min(t, len(trace.iterates)) - 1]
            assert float(r["coding_rate"]) == pytest.approx(want, rel=1e-12)

    def test_snr_axis_single_only(self, tmp_path, capsys):
        out = tmp_path / "snr.csv"
        code, _, err = run_cli(
            capsys, "sweep", "--axis", "snr", "--from", "1", "--to", "1e6",
            "--points", "4", "--scale", "log", "--schemes", "enhanced",
            "--n", "1e4", "--alpha", "3", "--out", str(out),
        )
        assert code == 2
        assert "single" in err

    def test_csv_formatting_is_locale_independent(self, tmp_path, capsys):
        out = tmp_path / "fmt.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--axis", "n", "--from", "1e2", "--to", "1e4",
            "--points", "3", "--scale", "log", "--schemes", "single",
            "--alpha", "3", "--out", str(out),
        )
        assert code == 0
        raw = out.read_bytes().decode("ascii")
        assert "\r" not in raw
        assert ";" not in raw
        for line in raw.strip().split("\n"):
            assert len(line.split(",")) == 9
        # every numeric cell round-trips through float()
        for line in raw.strip().split("\n")[1:]:
            for cell in line.split(","):
                if cell not in ("single", "conventional", "enhanced"):
                    float(cell)

    def test_from_must_be_below_to(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "sweep", "--axis", "n", "--from", "1e4", "--to", "1e2",
            "--points", "3", "--schemes", "single", "--alpha", "3",
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2


class TestFixedPointCmd:
    def test_trace_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "fixed-point", "--alpha", "3", "--n", "1e4", "--q", "2"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["converged"] is True
        assert doc["r_star"] == pytest.approx(3.134961855563604, rel=1e-9)
        it = doc["iterates"]
        assert all(b <= a + 1e-12 for a, b in zip(it, it[1:]))


class TestValidate:
    def test_cluster_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--suite", "cluster", "--seed", "7")
        assert code == 0
        rows = json.loads(out)
        assert rows and all(r["passed"] for r in rows)

    def test_byte_identical_reruns(self, capsys):
        _, out1, _ = run_cli(capsys, "validate", "--suite", "qmf", "--seed", "42")
        _, out2, _ = run_cli(capsys, "validate", "--suite", "qmf", "--seed", "42")
        assert out1 == out2

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        code, _, _ = run_cli(
            capsys, "validate", "--suite", "grid", "--seed", "7", "--out", str(path)
        )
        assert code == 0
        rows = json.loads(path.read_text())
        assert len(rows) == 8
        assert all(r["runtime_ms"] == 0.0 for r in rows)

    def test_timings_flag_emits_runtimes(self, capsys):
        code, out, _ = run_cli(
            capsys, "validate", "--suite", "cluster", "--seed", "7", "--timings"
        )
        assert code == 0
        assert any(r["runtime_ms"] > 0.0 for r in json.loads(out))


@pytest.fixture(scope="module")
def fig_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("figs")
    assert main(["figures", "--out-dir", str(d)]) == 0
    return d


class TestFigures:
    def test_emits_four_files(self, fig_dir):
        assert sorted(p.name for p in fig_dir.iterdir()) == [
            "fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv"
        ]

    def test_fig3_enhanced_above_conventional(self, fig_dir):
        rows = list(csv.DictReader((fig_dir / "fig3.csv").open()))
        assert len(rows) >= 20
        for r in rows:
            assert float(r["enhanced"]) >= float(r["conventional"])

    def test_fig4_q2_monotone_and_quickly_convergent(self, fig_dir):
        rows = list(csv.DictReader((fig_dir / "fig4.csv").open()))
        q2 = [float(r["q2"]) for r in rows]
        assert all(b <= a + 1e-12 for a, b in zip(q2, q2[1:]))
        # limit within 5% of the t=4 value
        assert abs(q2[3] - q2[-1]) / q2[-1] <= 0.05

    def test_fig4_has_three_q_columns(self, fig_dir):
        rows = list(csv.DictReader((fig_dir / "fig4.csv").open()))
        assert rows[0].keys() == {"t", "q1", "q2", "q3"}
        assert [int(r["t"]) for r in rows] == list(range(1, 9))

    def test_fig2_fixed_point_below_single_stage(self, fig_dir):
        rows = list(csv.DictReader((fig_dir / "fig2.csv").open()))
        for r in rows:
            assert float(r["hierarchical"]) <= float(r["single_stage"]) + 1e-9
