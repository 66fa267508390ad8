import json
import math

import numpy as np
import pytest

from hypcircle.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCount:
    def test_basic(self, capsys):
        code, out, _ = run(capsys, "count", "--s", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["count"] == 10

    def test_oracle(self, capsys):
        code, out, _ = run(capsys, "count", "--s", "2", "--oracle")
        payload = json.loads(out)
        assert code == 0 and payload["agree"]

    def test_validation_exit_code(self, capsys):
        code, _, err = run(capsys, "count", "--s", "-1")
        assert code == 2 and "error" in err

    def test_radius_ceiling_exit_code(self, capsys):
        code, _, err = run(capsys, "count", "--s", "200")
        assert code == 2


class TestErrorTerm:
    def test_csv_format(self, capsys, tmp_path):
        out_path = tmp_path / "e.csv"
        code, _, _ = run(capsys, "error-term", "--smax", "4", "--step", "0.0078125",
                         "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "s,value"
        assert len(lines) == int(4 / 0.0078125) + 2
        s0, v0 = lines[1].split(",")
        assert float(s0) == 0.0
        assert float(v0) == pytest.approx(-1.0)

    def test_exact_method(self, capsys, tmp_path):
        grid_path = tmp_path / "grid.csv"
        exact_path = tmp_path / "exact.csv"
        for method, path in (("grid", grid_path), ("exact", exact_path)):
            code, _, _ = run(capsys, "error-term", "--smax", "4", "--step", "0.03125",
                             "--alpha", "0.5", "--method", method, "--out", str(path))
            assert code == 0
        g = [float(ln.split(",")[1]) for ln in grid_path.read_text().splitlines()[1:]]
        e = [float(ln.split(",")[1]) for ln in exact_path.read_text().splitlines()[1:]]
        assert max(abs(a - b) for a, b in zip(g, e)) < 0.5

    def test_alpha_and_cache(self, capsys, tmp_path):
        out_path = tmp_path / "ea.csv"
        cache = tmp_path / "cache.bin"
        code, _, _ = run(capsys, "error-term", "--smax", "4", "--alpha", "0.5",
                         "--out", str(out_path), "--cache", str(cache))
        assert code == 0 and cache.exists()
        out2 = tmp_path / "ea2.csv"
        code2, _, _ = run(capsys, "error-term", "--smax", "4", "--alpha", "0.5",
                          "--out", str(out2), "--cache-in", str(cache),
                          "--cache", str(cache))
        assert code2 == 0
        assert out_path.read_text() == out2.read_text()


class TestMoments:
    def test_from_csv(self, capsys, tmp_path):
        path = tmp_path / "series.csv"
        grid = np.linspace(0.0, 10.0, 2001)
        with open(path, "w") as fh:
            fh.write("s,value\n")
            for s in grid:
                fh.write(f"{s:.17g},{2.0:.17g}\n")
        code, out, _ = run(capsys, "moments", "--in", str(path), "--T", "4",
                           "--window", "T2T")
        payload = json.loads(out)
        assert code == 0
        assert payload["first"] == pytest.approx(2.0, rel=1e-12)
        assert payload["second"] == pytest.approx(4.0, rel=1e-12)

    def test_bad_csv(self, capsys, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("wrong,header\n1,2\n")
        code, _, err = run(capsys, "moments", "--in", str(path), "--T", "1")
        assert code == 2


class TestJsonCommands:
    def test_shc(self, capsys):
        code, out, _ = run(capsys, "shc", "--s", "3", "--t", "4", "--alpha", "0.5")
        payload = json.loads(out)
        assert code == 0
        assert payload["direct"] == pytest.approx(payload["closed_form"], rel=1e-8)
        assert set(payload) == {"direct", "closed_form", "frac", "asymptotic"}

    def test_variance(self, capsys):
        code, out, _ = run(capsys, "variance", "--alpha", "0.5", "--T", "6",
                           "--tmax", "40")
        payload = json.loads(out)
        assert code == 0
        assert set(payload) == {"empirical", "spectral_value", "spectral_tail", "ratio"}
        assert payload["spectral_value"] > 0

    def test_scan_pointwise(self, capsys):
        code, out, _ = run(capsys, "scan-pointwise", "--alpha", "0.75", "--smax", "9")
        payload = json.loads(out)
        assert code == 0 and payload["envelope_constant"] > 0

    def test_distribution_synthetic(self, capsys, tmp_path):
        out_path = tmp_path / "hist.csv"
        code, out, _ = run(capsys, "distribution", "--mode", "synthetic",
                           "--alpha", "0.25", "--L", "2000", "--bins", "24",
                           "--out", str(out_path))
        payload = json.loads(out)
        assert code == 0
        assert out_path.read_text().startswith("s,value\n")
        assert payload["count"] > 0

    def test_hybrid(self, capsys):
        code, out, _ = run(capsys, "hybrid", "--schedule", "inv-sqrt",
                           "--Ts", "6,9,12")
        payload = json.loads(out)
        assert code == 0
        assert len(payload["variance"]) == 3
        assert payload["condition"][1] == pytest.approx(
            3.0 * math.exp(-6.0), rel=1e-12)

    def test_hybrid_bad_schedule(self, capsys):
        code, _, err = run(capsys, "hybrid", "--schedule", "inv-T", "--Ts", "6,9,12")
        assert code == 2


def test_determinism(capsys, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run(capsys, "error-term", "--smax", "3", "--alpha", "0.25",
                         "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
