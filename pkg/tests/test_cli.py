import csv
import io
import json
import subprocess
import sys

import pytest

from triqent.cli import SWEEP_HEADER, UsageError, main, parse_grid


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestParseGrid:
    def test_range_inclusive(self):
        assert parse_grid("0:1:0.25", 0, 1, "q") == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_range_float_step(self):
        assert parse_grid("0:3:0.05", 0, 50, "kt")[-1] == 3.0

    def test_list(self):
        assert parse_grid("0.2, 0.4", 0, 1, "q") == [0.2, 0.4]

    @pytest.mark.parametrize("text", ["1.5", "abc", "0:1", "1:0:0.1", "0:1:-0.1", ""])
    def test_rejects(self, text):
        with pytest.raises(UsageError):
            parse_grid(text, 0, 1, "q")


class TestSweep:
    def test_header_and_start_value(self, capsys):
        code, out, _ = run_cli(capsys, "ghz", "--q", "1", "--kt", "0:1:0.5")
        assert code == 0
        assert out.splitlines()[0] == ",".join(SWEEP_HEADER)
        rows = csv_rows(out)
        start = [r for r in rows if r["kappa_t"] == "0" and r["quantity"] == "witness_W"]
        assert float(start[0]["value"]) == pytest.approx(0.5, abs=1e-12)

    def test_quantity_subset(self, capsys):
        _, out, _ = run_cli(capsys, "w", "--kt", "0", "--quantities", "N,C12")
        assert [r["quantity"] for r in csv_rows(out)] == ["N", "C12"]

    def test_bad_quantity(self, capsys):
        code, _, err = run_cli(capsys, "w", "--quantities", "witness_G")
        assert code == 2
        assert "witness_G" in err

    def test_json(self, capsys):
        _, out, _ = run_cli(capsys, "gb", "--q", "0.9", "--kt", "0", "--format", "json")
        data = json.loads(out)
        assert {d["quantity"] for d in data} >= {"witness_G", "N3", "C12"}

    def test_repeatable_bytes(self, capsys):
        _, first, _ = run_cli(capsys, "gb", "--q", "0.5,1", "--kt", "0:2:0.5")
        _, second, _ = run_cli(capsys, "gb", "--q", "1,0.5", "--kt", "0:2:0.5")
        assert first == second

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "out.csv"
        code, out, _ = run_cli(capsys, "w", "--kt", "0", "-o", str(path))
        assert code == 0 and out == ""
        assert path.read_text().startswith("family,")

    @pytest.mark.parametrize("argv", [["ghz", "--q", "2"], ["ghz", "--kt", "-1"], ["nope"]])
    def test_usage_errors(self, capsys, argv):
        assert run_cli(capsys, *argv)[0] == 2


class TestQec:
    def test_records(self, capsys):
        _, out, _ = run_cli(capsys, "qec", "--alpha", "0.5", "--p", "0.3")
        rows = csv_rows(out)
        assert len(rows) == 8
        assert {r["mode"] for r in rows} == {"all"}

    def test_single_mode(self, capsys):
        _, out, _ = run_cli(capsys, "qec", "--alpha", "0.3", "--p", "0.5", "--mode", "single",
                            "--error-qubit", "2")
        fid = [float(r["value"]) for r in csv_rows(out) if r["record"].startswith("fidelity")]
        assert fid == pytest.approx([1, 1], abs=1e-10)


class TestThresholds:
    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "thresholds", "--family", "GB")
        assert code == 0
        data = json.loads(out)
        assert data["q_thresholds"]["N3"] == pytest.approx(9 / 41, abs=1e-9)
        assert data["theta_deg"] == pytest.approx(28.0725, abs=1e-3)

    def test_never_and_null(self, capsys):
        _, out, _ = run_cli(capsys, "thresholds", "--family", "ghz", "--q", "1")
        data = json.loads(out)
        assert data["q_thresholds"]["C12"] is None
        esd = {e["quantity"]: e["kappa_t_star"] for e in data["esd"]}
        assert esd["N"] == "never"

    def test_csv(self, capsys):
        _, out, _ = run_cli(capsys, "thresholds", "--family", "w", "--format", "csv")
        assert out.startswith("family,quantity,q_threshold")


class TestVerifyTables:
    def test_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify-tables")
        assert code == 0
        rows = csv_rows(out)
        assert all(r["passed"] == "yes" for r in rows)
        assert {"table", "reconstructed"} <= {r["status"] for r in rows}


class TestEnvironment:
    def test_bad_tolerance(self, capsys, monkeypatch):
        monkeypatch.setenv("TRIQENT_TOL", "banana")
        assert run_cli(capsys, "w", "--kt", "0")[0] == 2

    def test_good_tolerance(self, capsys, monkeypatch):
        monkeypatch.setenv("TRIQENT_TOL", "1e-11")
        assert run_cli(capsys, "w", "--kt", "0")[0] == 0

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "triqent", "w", "--kt", "0"], capture_output=True, text=True
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("family,")
