import json
import math
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from perfectchain.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuild:
    def test_json_n3(self, capsys):
        code, out, _ = run(capsys, ["build", "--n", "3"])
        assert code == 0
        data = json.loads(out)
        assert data["diag_exact"] == [2, 6, 2]
        assert data["offdiag_sq_exact"] == [6, 6]

    def test_n1_zero_matrix(self, capsys):
        code, out, _ = run(capsys, ["build", "--n", "1"])
        assert code == 0
        data = json.loads(out)
        assert data["diag"] == [0.0] and data["offdiag"] == []

    def test_n0_usage_error(self, capsys):
        code, _, err = run(capsys, ["build", "--n", "0"])
        assert code == 2
        assert "error" in err

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, ["build", "--n", "2", "--format", "csv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "i,diag,offdiag"
        assert lines[1] == "1,1.0,1.0"
        assert lines[2] == "2,1.0,"

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, ["build", "--n", "17"])
        _, out2, _ = run(capsys, ["build", "--n", "17"])
        assert out1 == out2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "m.json"
        code, out, _ = run(capsys, ["build", "--n", "5", "--out", str(target)])
        assert code == 0 and out == ""
        data = json.loads(target.read_text(encoding="utf-8"))
        assert data["n"] == 5


class TestVerify:
    def test_n10_all_pass(self, capsys):
        code, out, _ = run(capsys, ["verify", "--n", "10"])
        assert code == 0
        assert "FAIL" not in out
        for name in ("spectrum", "solver_agreement", "persymmetry",
                     "factorization", "trace_identity", "inverse_roundtrip",
                     "chain_roundtrip_exact", "mirror_transfer", "periodicity"):
            assert name in out

    def test_n100_spectrum_residual(self, capsys):
        code, out, _ = run(capsys, ["verify", "--n", "100"])
        assert code == 0
        line = next(l for l in out.splitlines() if " spectrum " in l)
        residual = float(line.split("residual=")[1].split()[0])
        assert residual <= 1e-10 * 2 * 99**2

    def test_corrupted_matrix_file(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["build", "--n", "4"])
        data = json.loads(out)
        data["diag"][0] = 99.0
        data["diag_exact"] = None
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        code, out, _ = run(capsys, ["verify", "--n", "4", "--matrix", str(bad)])
        assert code == 1
        assert "FAIL spectrum" in out

    def test_valid_matrix_file(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["build", "--n", "6"])
        good = tmp_path / "good.json"
        good.write_text(out)
        code, out, _ = run(capsys, ["verify", "--n", "6", "--matrix", str(good)])
        assert code == 0

    def test_malformed_matrix_file_is_usage_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"nope": 1}')
        code, _, err = run(capsys, ["verify", "--n", "3", "--matrix", str(bad)])
        assert code == 2
        assert "matrix JSON" in err
        bad.write_text("{{{")
        code, _, _ = run(capsys, ["verify", "--n", "3", "--matrix", str(bad)])
        assert code == 2


class TestInvert:
    def test_square_spectrum_file(self, capsys, tmp_path):
        f = tmp_path / "spec.txt"
        f.write_text("0\n2\n8\n")
        code, out, _ = run(capsys, ["invert", str(f)])
        assert code == 0
        data = json.loads(out)
        assert data["diag"] == pytest.approx([2.0, 6.0, 2.0], abs=1e-9)
        assert data["offdiag"] == pytest.approx([math.sqrt(6)] * 2, abs=1e-9)

    def test_duplicate_eigenvalues_rejected(self, capsys, tmp_path):
        f = tmp_path / "dup.txt"
        f.write_text("1\n1\n2\n")
        code, _, err = run(capsys, ["invert", str(f)])
        assert code == 2
        assert "duplicate" in err

    def test_exact_mode(self, capsys, tmp_path):
        n = 20
        f = tmp_path / "spec.txt"
        f.write_text("\n".join(str(2 * k * k) for k in range(n)) + "\n")
        code, out, _ = run(capsys, ["invert", str(f), "--mode", "exact"])
        assert code == 0
        data = json.loads(out)
        assert data["diag_exact"] == [n - 1 + 4 * i * (n - 1 - i) for i in range(n)]
        assert data["offdiag_sq_exact"] == [
            i * (2 * i - 1) * (n - i) * (2 * n - 2 * i - 1) for i in range(1, n)
        ]

    def test_exact_mode_rational_entries(self, capsys, tmp_path):
        f = tmp_path / "spec.txt"
        f.write_text("0\n1/3\n2\n")
        code, out, _ = run(capsys, ["invert", str(f), "--mode", "exact"])
        assert code == 0
        data = json.loads(out)
        # trace is preserved exactly: 0 + 1/3 + 2
        assert sum(data["diag"]) == pytest.approx(7 / 3, abs=1e-14)

    def test_weights_file(self, capsys, tmp_path):
        f = tmp_path / "spec.txt"
        f.write_text("0\n2\n")
        w = tmp_path / "w.txt"
        w.write_text("0.5\n0.5\n")
        code, out, _ = run(capsys, ["invert", str(f), "--weights", str(w)])
        assert code == 0
        data = json.loads(out)
        assert data["diag"] == pytest.approx([1.0, 1.0], abs=1e-12)

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, ["invert", str(tmp_path / "nope.txt")])
        assert code == 2


class TestMagic:
    def test_matches_golden_table(self, capsys, golden_dir):
        code, out, _ = run(capsys, ["magic", "--n-range", "3..10"])
        assert code == 0
        golden = (golden_dir / "magic_table.txt").read_text(encoding="utf-8")
        assert out == golden

    def test_single_n(self, capsys):
        code, out, _ = run(capsys, ["magic", "--n-range", "2"])
        assert code == 0
        assert out.splitlines()[1] == "2 2/1 1,1 1"

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, ["magic", "--n-range", "5", "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert data[0]["masses"] == ["35", "20", "18", "20", "35"]
        assert data[0]["omega_squared"] == "1/10"

    def test_gcd_one_out_of_table_range(self, capsys):
        code, out, _ = run(capsys, ["magic", "--n-range", "12"])
        assert code == 0
        masses = [int(x) for x in out.splitlines()[1].split()[2].split(",")]
        assert math.gcd(*masses) == 1

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, ["magic", "--n-range", "3..10"])
        _, out2, _ = run(capsys, ["magic", "--n-range", "3..10"])
        assert out1 == out2


class TestSimulate:
    def test_default_snapshots_and_mirror(self, capsys):
        code, out, _ = run(capsys, ["simulate", "--n", "51"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,i,q,qdot,u"
        assert len(lines) == 1 + 11 * 51
        rows = [l.split(",") for l in lines[1:]]
        final_t = rows[-1][0]
        final = {int(r[1]): float(r[2]) for r in rows if r[0] == final_t}
        assert abs(final[51] - 1.0) < 1e-8
        assert all(abs(final[i]) < 1e-8 for i in range(1, 51))

    def test_t_end_zero_single_snapshot(self, capsys):
        code, out, _ = run(capsys, ["simulate", "--n", "5", "--t-end", "0"])
        assert code == 0
        assert len(out.strip().splitlines()) == 1 + 5

    def test_verlet_integrator(self, capsys):
        code, out, _ = run(capsys, [
            "simulate", "--n", "9", "--integrator", "verlet", "--dt", "1e-2",
        ])
        assert code == 0
        assert out.startswith("t,i,q,qdot,u")

    def test_svg_output(self, capsys, tmp_path):
        svg_path = tmp_path / "snap.svg"
        code, _, _ = run(capsys, [
            "simulate", "--n", "11", "--format", "svg", "--out", str(svg_path),
        ])
        assert code == 0
        root = ET.fromstring(svg_path.read_text())
        assert root.tag.endswith("svg")
        assert (tmp_path / "snap.csv").exists()

    def test_svg_requires_out(self, capsys):
        code, _, err = run(capsys, ["simulate", "--n", "5", "--format", "svg"])
        assert code == 2

    def test_deterministic(self, capsys):
        args = ["simulate", "--n", "21"]
        _, out1, _ = run(capsys, args)
        _, out2, _ = run(capsys, args)
        assert out1 == out2


class TestProfile:
    def test_parabola_column(self, capsys):
        code, out, _ = run(capsys, ["profile", "--n", "10"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "series,i,x,value,parabola"
        a_rows = [l.split(",") for l in lines[1:] if l.startswith("a_tilde")]
        assert len(a_rows) == 10
        for row in a_rows:
            x, parabola = float(row[2]), float(row[4])
            assert parabola == pytest.approx(2 * math.pi**2 * x * (1 - x), abs=1e-12)

    def test_row_counts(self, capsys):
        n = 7
        code, out, _ = run(capsys, ["profile", "--n", str(n)])
        lines = out.strip().splitlines()[1:]
        series = [l.split(",")[0] for l in lines]
        assert series.count("a_tilde") == n
        assert series.count("b_tilde") == n - 1
        assert series.count("mass") == n
        assert series.count("spring") == n - 1

    def test_spring_abscissa_offset(self, capsys):
        code, out, _ = run(capsys, ["profile", "--n", "5"])
        lines = [l.split(",") for l in out.strip().splitlines()[1:]]
        b1 = next(r for r in lines if r[0] == "b_tilde" and r[1] == "1")
        assert float(b1[2]) == pytest.approx(0.5 / 4)

    def test_svg(self, capsys, tmp_path):
        svg_path = tmp_path / "prof.svg"
        code, _, _ = run(capsys, ["profile", "--n", "30", "--format", "svg",
                                  "--out", str(svg_path)])
        assert code == 0
        ET.fromstring(svg_path.read_text())
        assert (tmp_path / "prof.csv").exists()

    def test_deterministic(self, capsys):
        args = ["profile", "--n", "30"]
        _, out1, _ = run(capsys, args)
        _, out2, _ = run(capsys, args)
        assert out1 == out2


class TestEntryPoint:
    def test_module_invocation(self):
        import subprocess
        import sys

        res = subprocess.run(
            [sys.executable, "-m", "perfectchain", "magic", "--n-range", "3"],
            capture_output=True, text=True,
        )
        assert res.returncode == 0
        assert res.stdout.splitlines()[1] == "3 1/3 3,2,3 1,1"
