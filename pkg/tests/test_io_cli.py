import json
from pathlib import Path

import numpy as np
import pytest

from vusmetrics import DataError
from vusmetrics.cli import main
from vusmetrics.io import (
    align_score,
    load_score,
    load_series,
    to_csv,
    to_json,
    write_series,
)

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestLoadSeries:
    def test_two_points(self, tmp_path):
        f = tmp_path / "s.csv"
        f.write_text("1.0,0\n2.0,1\n")
        rec = load_series(f)
        assert rec.length == 2
        assert rec.labels.tolist() == [0, 1]
        assert rec.series_id == "s"

    def test_invalid_label_names_line(self, tmp_path):
        f = tmp_path / "s.csv"
        f.write_text("1.0,2\n")
        with pytest.raises(DataError, match=":1:"):
            load_series(f)

    def test_empty_file(self, tmp_path):
        f = tmp_path / "s.csv"
        f.write_text("")
        with pytest.raises(DataError, match="empty"):
            load_series(f)

    def test_header_row_skipped(self, tmp_path):
        f = tmp_path / "s.csv"
        f.write_text("value,label\n1.0,0\n2.0,1\n")
        assert load_series(f).length == 2

    def test_non_numeric_mid_file_errors(self, tmp_path):
        f = tmp_path / "s.csv"
        f.write_text("1.0,0\nabc,1\n")
        with pytest.raises(DataError, match=":2:"):
            load_series(f)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="no such file"):
            load_series(tmp_path / "nope.csv")

    def test_round_trip(self, tmp_path):
        values = np.array([1.25, -3.5, 0.123456789])
        labels = np.array([0, 1, 0], dtype=np.int8)
        f = tmp_path / "rt.csv"
        write_series(f, values, labels)
        rec = load_series(f)
        np.testing.assert_array_equal(rec.values, values)
        np.testing.assert_array_equal(rec.labels, labels)
        # serialize again: identical bytes
        g = tmp_path / "rt2.csv"
        write_series(g, rec.values, rec.labels)
        assert f.read_text() == g.read_text()


class TestLoadScore:
    def test_floats(self, tmp_path):
        f = tmp_path / "sc.txt"
        f.write_text("0.1\n0.9\n")
        np.testing.assert_allclose(load_score(f), [0.1, 0.9])

    def test_non_numeric(self, tmp_path):
        f = tmp_path / "sc.txt"
        f.write_text("abc\n")
        with pytest.raises(DataError, match=":1:"):
            load_score(f)

    def test_padding_with_warning(self):
        score = np.array([0.1, 0.2, 0.7])
        with pytest.warns(UserWarning, match="padded"):
            out = align_score(score, 5)
        np.testing.assert_allclose(out, [0.1, 0.2, 0.7, 0.7, 0.7])

    def test_too_long_errors(self):
        with pytest.raises(DataError):
            align_score(np.arange(4.0), 2)


class TestSerialization:
    def test_sorted_keys_and_digits(self):
        text = to_json({"b": 0.1234567890123456789, "a": 1})
        assert text.index('"a"') < text.index('"b"')
        assert "0.123456789012" in text

    def test_tiny_values_snap_to_zero(self):
        assert json.loads(to_json({"x": 3e-17}))["x"] == 0.0

    def test_csv_flattening(self):
        text = to_csv({"m": {"a": 1.5}, "list": [2, 3]})
        assert "m.a,1.5" in text
        assert "list[0],2" in text


class TestEvalCommand:
    @pytest.mark.parametrize("fixture", ["perfect", "inverted", "lagged"])
    def test_matches_golden_across_impls(self, capsys, fixture):
        golden = (FIXTURES / f"golden_{fixture}.json").read_text()
        for impl in ("naive", "opt", "opt-mem"):
            rc, out, _ = run_cli(
                capsys,
                "eval",
                "--series", str(FIXTURES / "series.csv"),
                "--score", str(FIXTURES / f"score_{fixture}.txt"),
                "--impl", impl,
            )
            assert rc == 0
            payload = json.loads(out)
            del payload["timing"]
            assert to_json(payload) + "\n" == golden

    def test_point_measures_perfect(self, capsys):
        rc, out, _ = run_cli(
            capsys,
            "eval",
            "--series", str(FIXTURES / "series.csv"),
            "--score", str(FIXTURES / "score_perfect.txt"),
        )
        assert rc == 0
        measures = json.loads(out)["measures"]
        for name in ("precision", "recall", "f", "precision_at_k", "auc_roc",
                     "auc_pr", "r_precision", "r_recall", "rf"):
            assert measures[name] == pytest.approx(1.0, abs=1e-9)

    def test_measure_subset(self, capsys):
        rc, out, _ = run_cli(
            capsys,
            "eval",
            "--series", str(FIXTURES / "series.csv"),
            "--score", str(FIXTURES / "score_perfect.txt"),
            "--measures", "auc_roc,f",
        )
        assert rc == 0
        assert set(json.loads(out)["measures"]) == {"auc_roc", "f"}

    def test_csv_output(self, capsys):
        rc, out, _ = run_cli(
            capsys,
            "eval",
            "--series", str(FIXTURES / "series.csv"),
            "--score", str(FIXTURES / "score_perfect.txt"),
            "--measures", "f",
            "--out", "csv",
        )
        assert rc == 0
        assert out.startswith("name,value")
        assert "measures.f,1.0" in out

    def test_unknown_measure_usage_error(self, capsys):
        rc, _, err = run_cli(
            capsys,
            "eval",
            "--series", str(FIXTURES / "series.csv"),
            "--score", str(FIXTURES / "score_perfect.txt"),
            "--measures", "telepathy",
        )
        assert rc == 2
        assert err.startswith("vusmetrics: usage error:")

    def test_missing_file_data_error(self, capsys):
        rc, _, err = run_cli(
            capsys, "eval", "--series", "missing.csv", "--score", "missing.txt"
        )
        assert rc == 3
        assert err.startswith("vusmetrics: data error:")
        assert "\n" not in err.strip()

    def test_bad_buffer_usage_error(self, capsys):
        rc, _, err = run_cli(
            capsys,
            "eval",
            "--series", str(FIXTURES / "series.csv"),
            "--score", str(FIXTURES / "score_perfect.txt"),
            "--buffer", "soon",
        )
        assert rc == 2
        assert "usage error" in err


class TestSynthCommand:
    def test_writes_loadable_series(self, capsys, tmp_path):
        out_file = tmp_path / "synthetic.csv"
        rc, _, _ = run_cli(
            capsys,
            "synth",
            "--alpha", "3",
            "--mean-len", "5",
            "--length", "400",
            "--seed", "9",
            "--out", str(out_file),
        )
        assert rc == 0
        rec = load_series(out_file)
        assert rec.length == 400
        assert rec.labels.sum() == 15

    def test_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for f in (a, b):
            run_cli(capsys, "synth", "--alpha", "2", "--length", "300",
                    "--seed", "4", "--out", str(f))
        assert a.read_text() == b.read_text()

    def test_eval_pipeline(self, capsys, tmp_path):
        out_file = tmp_path / "synthetic.csv"
        run_cli(capsys, "synth", "--alpha", "2", "--mean-len", "6",
                "--length", "300", "--seed", "3", "--out", str(out_file))
        score_file = tmp_path / "score.txt"
        rec = load_series(out_file)
        score_file.write_text("".join(f"{float(v)!r}\n" for v in rec.values))
        rc, out, _ = run_cli(
            capsys,
            "eval",
            "--series", str(out_file),
            "--score", str(score_file),
            "--measures", "auc_roc,vus_roc",
            "--thresholds", "50",
        )
        assert rc == 0
        measures = json.loads(out)["measures"]
        assert measures["auc_roc"] > 0.8  # the synthetic score tracks labels


class TestRobustnessCommand:
    def test_emits_report(self, capsys, tmp_path):
        scores = tmp_path / "scores"
        scores.mkdir()
        rec = load_series(FIXTURES / "series.csv")
        for name, arr in [("good", rec.labels.astype(float)),
                          ("bad", 1.0 - rec.labels.astype(float))]:
            (scores / f"{name}.txt").write_text("".join(f"{float(v)!r}\n" for v in arr))
        rc, out, _ = run_cli(
            capsys,
            "robustness",
            "--series", str(FIXTURES / "series.csv"),
            "--scores", str(scores),
            "--kind", "lag",
            "--seed", "1",
            "--measures", "auc_roc,f",
            "--thresholds", "20",
        )
        assert rc == 0
        payload = json.loads(out)
        assert payload["reports"][0]["kind"] == "lag"
        assert set(payload["reports"][0]["per_method"]) == {"bad", "good"}

    def test_empty_scores_dir_is_data_error(self, capsys, tmp_path):
        empty = tmp_path / "scores"
        empty.mkdir()
        rc, _, err = run_cli(
            capsys,
            "robustness",
            "--series", str(FIXTURES / "series.csv"),
            "--scores", str(empty),
        )
        assert rc == 3
        assert "data error" in err


class TestSeparabilityCommand:
    def test_emits_z_values(self, capsys, tmp_path):
        acc = tmp_path / "acc"
        inacc = tmp_path / "inacc"
        acc.mkdir()
        inacc.mkdir()
        rec = load_series(FIXTURES / "series.csv")
        (acc / "good.txt").write_text(
            "".join(f"{float(v)!r}\n" for v in rec.labels.astype(float))
        )
        (inacc / "bad.txt").write_text(
            "".join(f"{float(v)!r}\n" for v in 1.0 - rec.labels.astype(float))
        )
        rc, out, _ = run_cli(
            capsys,
            "separability",
            "--series", str(FIXTURES / "series.csv"),
            "--accurate", str(acc),
            "--inaccurate", str(inacc),
            "--reps", "6",
            "--seed", "2",
            "--measures", "auc_roc",
            "--thresholds", "20",
        )
        assert rc == 0
        payload = json.loads(out)
        assert "good|bad" in payload["pairs"]
        assert payload["mean_z"]["auc_roc"] > 0  # accurate beats inaccurate


class TestConsistencyCommand:
    def test_rank_entropies(self, capsys, tmp_path):
        dataset = tmp_path / "data"
        scores = tmp_path / "scores"
        dataset.mkdir()
        for method in ("good", "bad"):
            (scores / method).mkdir(parents=True)
        rng = np.random.default_rng(0)
        for i in range(3):
            labels = np.zeros(80, dtype=np.int8)
            labels[20 + i : 30 + i] = 1
            values = rng.normal(0, 1, 80)
            name = f"series_{i}.csv"
            write_series(dataset / name, values, labels)
            good = labels + rng.uniform(0, 0.2, 80)
            bad = rng.uniform(0, 1, 80)
            (scores / "good" / name).write_text("".join(f"{float(v)!r}\n" for v in good))
            (scores / "bad" / name).write_text("".join(f"{float(v)!r}\n" for v in bad))
        rc, out, _ = run_cli(
            capsys,
            "consistency",
            "--dataset", str(dataset),
            "--scores", str(scores),
            "--measures", "auc_roc",
            "--thresholds", "20",
        )
        assert rc == 0
        payload = json.loads(out)
        # the good method always ranks first -> zero entropy
        assert payload["rank_entropy"]["auc_roc"]["good"] == 0.0

    def test_missing_score_file_is_data_error(self, capsys, tmp_path):
        dataset = tmp_path / "data"
        scores = tmp_path / "scores"
        dataset.mkdir()
        (scores / "m").mkdir(parents=True)
        write_series(dataset / "x.csv", np.arange(5.0), np.array([0, 0, 1, 0, 0]))
        rc, _, err = run_cli(
            capsys, "consistency", "--dataset", str(dataset), "--scores", str(scores)
        )
        assert rc == 3
        assert "missing score" in err


class TestBenchCommand:
    def test_small_sweep(self, capsys):
        rc, out, _ = run_cli(
            capsys,
            "bench",
            "--param", "N",
            "--min", "5",
            "--max", "25",
            "--steps", "3",
            "--impls", "opt_mem",
            "--reps", "1",
        )
        assert rc == 0
        payload = json.loads(out)
        assert payload["param"] == "N"
        assert len(payload["medians"]["opt_mem"]) == 3
        assert "slope" in payload["fits"]["opt_mem"]

    def test_unknown_impl_usage_error(self, capsys):
        rc, _, err = run_cli(
            capsys, "bench", "--param", "N", "--min", "5", "--max", "10",
            "--steps", "2", "--impls", "warp",
        )
        assert rc == 2
        assert "usage error" in err
