"""CLI behaviour: formats, determinism, round-trips, exit codes."""
import csv
import io
import json

from kratzerqes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFlatCommands:
    def test_roots_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "roots", "--N", "2", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 6
        assert json.loads(json.dumps(doc)) == doc

    def test_roots_text_deterministic(self, capsys):
        _, first, _ = run(capsys, "roots", "--N", "3")
        _, second, _ = run(capsys, "roots", "--N", "3")
        assert first == second

    def test_coeffs_csv(self, capsys):
        code, out, _ = run(capsys, "coeffs", "--N", "4", "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][:2] == ["n", "s0"]
        assert rows[3] == ["2", "-2", "1", "2", "3", "2", "1"]

    def test_pascal_row(self, capsys):
        code, out, _ = run(capsys, "pascal", "--K", "6", "--format", "json")
        doc = json.loads(out)
        assert doc["rows"][6] == [1, 6, 21, 50, 90, 126, 141, 126, 90, 50, 21, 6, 1]

    def test_leftvecs(self, capsys):
        code, out, _ = run(capsys, "leftvecs", "--N", "2", "--n", "1",
                           "--format", "json")
        doc = json.loads(out)
        vecs = {tuple(p["vector"]) for p in doc["pairs"]}
        assert vecs == {(1, 1, 1, 1), (3, -1, 1, -3)}


class TestTables:
    def test_table_ids(self, capsys):
        for which in ("1", "2", "3", "4"):
            code, out, _ = run(capsys, "tables", "--which", which, "--N", "2",
                               "--format", "json")
            assert code == 0 and json.loads(out)

    def test_csv_restricted(self, capsys):
        code, _, err = run(capsys, "tables", "--which", "1", "--N", "2",
                           "--format", "csv")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "UsageError"


class TestSpectrum:
    def test_strong_core_document(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--N", "4", "--n", "2",
                           "--order", "0", "--A", "1", "--B", "0", "--C", "1",
                           "--G", "4032", "--ell", "0", "--format", "json",
                           "--no-oracle")
        assert code == 0
        doc = json.loads(out)
        assert (doc["E"]["num"], doc["E"]["den"]) == ("-65", "4")
        assert (doc["F"]["num"], doc["F"]["den"]) == ("0", "1")
        assert (doc["D"]["num"], doc["D"]["den"]) == ("-138", "1")
        assert doc["coefficients"] == [1, 2, 3, 2, 1]

    def test_formal_mode_with_oracle(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--N", "1", "--order", "3",
                           "--lambda", "1/1000", "--b", "1", "--g", "2",
                           "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["checks_passed"] is True
        assert float(doc["oracle"]["series_vs_newton"]["cubic_s"]) < 1e-10

    def test_mode_conflict(self, capsys):
        code, _, err = run(capsys, "spectrum", "--N", "1", "--A", "1",
                           "--B", "0", "--C", "0", "--G", "2", "--ell", "0",
                           "--lambda", "1/2", "--b", "0", "--g", "0")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "UsageError"


class TestVerifyCommand:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--N", "1", "--order", "2",
                           "--lambda", "1/100", "--b", "1", "--g", "1",
                           "--format", "json")
        assert code == 0
        assert json.loads(out)["checks_passed"] is True


class TestErrors:
    def test_domain_error_object(self, capsys):
        code, _, err = run(capsys, "roots", "--N", "-3")
        assert code == 2
        obj = json.loads(err)
        assert set(obj["error"]) == {"type", "message"}

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "roots.json"
        code, out, _ = run(capsys, "roots", "--N", "1", "--format", "json",
                           "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["count"] == 3
