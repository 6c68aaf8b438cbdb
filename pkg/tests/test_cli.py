import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from barytile import cli
from barytile.tiling import TilingReport


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


class TestCommands:
    def test_h_matrix(self, capsys):
        code, out = run(["h-matrix", "--n", "3"], capsys)
        assert code == 0
        assert json.loads(out)["matrix"] == [
            [1, 11, 11, 1, 0],
            [0, 8, 14, 2, 0],
            [0, 4, 16, 4, 0],
            [0, 2, 14, 8, 0],
            [0, 1, 11, 11, 1],
        ]

    def test_expect_exact(self, capsys):
        argv = "expect --quantity b0V --n 2 --k 1 --d 0 --nu 1/2 --exact --complex boundary-simplex:2".split()
        code, out = run(argv, capsys)
        rec = json.loads(out)
        assert code == 0
        assert rec["mean"] == "3/2" and rec["mode"] == "exact" and rec["std_error"] is None
        assert set(rec) >= {"schema", "quantity", "n", "k", "p", "d", "nu", "mode", "mean", "std_error", "samples", "seed"}

    def test_pack(self, capsys):
        code, out = run(["pack", "--n", "3", "--p", "0", "--validate"], capsys)
        assert code == 0
        assert json.loads(out)["counts"] == [1, 1, 2, 4]

    def test_bounds(self, capsys):
        code, out = run(["bounds", "--n", "2", "--p", "1", "--nu", "1/2"], capsys)
        rep = json.loads(out)
        assert code == 0
        assert rep["q_term"] == "1/4"
        assert rep["mnp_rhs"]["value"] == "1/48"
        assert Fraction(rep["e_upper"]["value"]) < Fraction(1, 4)
        assert [r["value"] for r in rep["lambda_lower"]] == ["0/1", "1/144", "13/864"]
        assert rep["eigen_h"] == ["0/1", "1/2", "1/2", "0/1"]

    def test_subdivide_and_betti(self, capsys):
        code, out = run(["subdivide", "--n", "2", "--d", "2", "--format", "csv"], capsys)
        assert code == 0
        assert list(csv.reader(io.StringIO(out)))[1:] == [["0", "25"], ["1", "60"], ["2", "36"]]
        code, out = run(["betti", "--complex", "boundary-simplex:3", "--d", "1"], capsys)
        assert json.loads(out)["betti"] == [1, 0, 1]

    def test_tile(self, capsys):
        code, out = run(["tile", "--n", "2", "--s", "0", "--d", "2", "--validate"], capsys)
        rep = json.loads(out)
        assert code == 0 and rep["h_vector"] == [1, 22, 13, 0] and rep["validation"] == "ok"
        code, out = run(["tile", "--n", "3", "--sphere", "--d", "0", "--skeleton", "1", "--validate"], capsys)
        assert code == 0 and json.loads(out)["validation"] == "ok"

    def test_euler_check(self, capsys):
        code, out = run(["euler-check", "--complex", "boundary-simplex:3"], capsys)
        assert code == 0
        assert {r["residual"] for r in json.loads(out)["residuals"]} == {"0/1"}

    def test_percolate(self, capsys):
        code, out = run(["percolate", "--samples", "500", "--seed", "1"], capsys)
        rec = json.loads(out)
        assert code == 0 and 0 <= rec["mean_float"] <= 1 and rec["quantity"] == "percolation"


class TestContract:
    def test_manifest_default_location(self, capsys, in_tmp):
        run(["h-matrix", "--n", "2"], capsys)
        man = json.loads((in_tmp / "h-matrix.manifest.json").read_text())
        assert man["config"]["n"] == 2 and man["exit_code"] == 0
        assert "version" in man and "timestamp" not in json.dumps(man)

    def test_manifest_beside_out(self, capsys, in_tmp):
        out = in_tmp / "res.json"
        run(["pack", "--n", "2", "--out", str(out)], capsys)
        assert json.loads(out.read_text())["counts"] == [1, 1, 2]
        assert (in_tmp / "res.json.manifest.json").exists()

    def test_byte_identical_reruns(self, capsys, in_tmp):
        argv = ["expect", "--quantity", "b0V", "--d", "1", "--samples", "3000", "--seed", "4"]
        run(argv + ["--out", "a.json"], capsys)
        run(argv + ["--out", "b.json", "--threads", "3"], capsys)
        assert (in_tmp / "a.json").read_bytes() == (in_tmp / "b.json").read_bytes()

    def test_std_error_scaling(self, capsys):
        recs = []
        for n in ("4000", "8000"):
            _, out = run(["expect", "--quantity", "b0V", "--d", "1", "--samples", n, "--seed", "2"], capsys)
            recs.append(json.loads(out))
        assert 1.2 <= recs[0]["std_error"] / recs[1]["std_error"] <= 1.7

    def test_usage_errors(self, capsys):
        assert cli.main(["pack", "--n", "3", "--bogus"]) == 1
        assert cli.main(["frobnicate"]) == 1
        assert cli.main(["expect", "--quantity", "zz"]) == 1
        assert cli.main(["bounds", "--n", "2", "--p", "2"]) == 1

    def test_budget_error(self, capsys):
        assert cli.main(["expect", "--quantity", "bV", "--d", "2", "--exact"]) == 1
        assert cli.main(["subdivide", "--n", "3", "--d", "3", "--budget", "100"]) == 1

    def test_malformed_json(self, capsys, in_tmp):
        (in_tmp / "bad.json").write_text("{oops")
        assert cli.main(["betti", "--complex", "from-file:bad.json"]) == 1
        man = json.loads((in_tmp / "betti.manifest.json").read_text())
        assert man["exit_code"] == 1

    def test_validation_failure(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "validate_tiling", lambda T: TilingReport(uncovered=[(0,)]))
        assert cli.main(["tile", "--n", "2", "--validate"]) == 2

    def test_console_entry(self):
        res = subprocess.run([sys.executable, "-m", "barytile.cli", "h-matrix", "--n", "1", "--format", "csv"],
                             capture_output=True, text=True)
        assert res.returncode == 0
        assert res.stdout.splitlines() == ["1,1,0", "0,2,0", "0,1,1"]
