"""Report serialization and the command-line interface."""
import json
import subprocess
import sys

import pytest

from rootsplit.pipeline import classify_all, classify_pair
from rootsplit.report import emit

CLI = [sys.executable, "-m", "rootsplit.cli"]


def run(*args, **kw):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, **kw
    )


class TestEmit:
    def test_json_pair(self):
        data, code = emit(classify_pair("A2", "wolf"), "json")
        assert code == 0
        doc = json.loads(data)
        assert doc["schema_version"] == 1
        assert doc["verdict"] == "wolf_space"
        # Rationals serialize exactly, as strings.
        beta = doc["certificates"][0]["beta"]
        assert all(isinstance(x, str) for x in beta)

    def test_json_batch(self):
        data, code = emit(classify_all(2), "json")
        doc = json.loads(data)
        assert code == 0
        assert len(doc["pairs"]) > 0
        assert "elapsed_seconds" not in json.dumps(doc["pairs"])

    def test_csv_row_count(self):
        rep = classify_all(2)
        data, _ = emit(rep, "csv")
        rows = [r for r in data.decode().splitlines() if r.strip()]
        assert len(rows) == len(rep.pairs)

    def test_table_contains_labels(self):
        rep = classify_all(2)
        data, _ = emit(rep, "table")
        text = data.decode()
        assert "G2" in text and "wolf_space" in text

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit(classify_all(2), "xml")

    def test_bytes_deterministic(self):
        a, _ = emit(classify_all(2), "json")
        b, _ = emit(classify_all(2), "json")
        assert a == b


class TestCli:
    def test_build(self):
        r = run("build", "B2")
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert len(doc["roots"]) == 8

    def test_validate_ok(self):
        r = run("validate", "B3")
        assert r.returncode == 0

    def test_validate_bad_roots(self):
        # An invalid candidate is still a successful validation run:
        # exit 0, violations in the body.
        r = run("validate", "--roots", '[["1"],["-1"],["2"],["-2"]]')
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["valid"] is False
        assert doc["violations"]

    def test_subsystems(self):
        r = run("subsystems", "G2")
        assert r.returncode == 0
        assert len(json.loads(r.stdout)["subsystems"]) == 6

    def test_weights(self):
        r = run("weights", "B3", "A2#0")
        doc = json.loads(r.stdout)
        assert r.returncode == 0
        assert len(doc["weights"]) == 12

    def test_split(self):
        r = run("split", "B3", "A2#0")
        assert r.returncode == 0
        assert len(json.loads(r.stdout)["certificates"]) == 1

    def test_wolf(self):
        r = run("wolf", "B3")
        assert r.returncode == 0
        assert json.loads(r.stdout)["certificate"]["n"] == 3

    def test_classify_pair(self):
        r = run("classify", "G2", "torus", "--format", "json")
        assert r.returncode == 0
        assert json.loads(r.stdout)["verdict"] == "no_splitting"

    def test_classify_batch_csv(self):
        r = run("classify", "--max-rank", "2", "--format", "csv")
        assert r.returncode == 0
        doc = run("classify", "--max-rank", "2", "--format", "json")
        pairs = json.loads(doc.stdout)["pairs"]
        rows = [x for x in r.stdout.splitlines() if x.strip()]
        assert len(rows) == len(pairs)

    def test_stdout_byte_identical_across_runs(self):
        a = run("classify", "--max-rank", "2", "--format", "json")
        b = run("classify", "--max-rank", "2", "--format", "json")
        assert a.stdout == b.stdout

    def test_timing_goes_to_stderr(self):
        r = run("classify", "--max-rank", "2", "--format", "json")
        assert "elapsed" in r.stderr
        json.loads(r.stdout)  # stdout stays pure JSON

    def test_cache_dir(self, tmp_path):
        a = run("classify", "--max-rank", "2", "--cache-dir", str(tmp_path))
        b = run("classify", "--max-rank", "2", "--cache-dir", str(tmp_path))
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout
        assert any(tmp_path.iterdir())

    def test_output_file(self, tmp_path):
        out = tmp_path / "report.json"
        r = run("classify", "A2", "wolf", "--output", str(out))
        assert r.returncode == 0
        assert json.loads(out.read_text())["verdict"] == "wolf_space"

    def test_bad_label_exits_one(self):
        assert run("build", "Z9").returncode == 1

    def test_bad_subcommand_exits_one(self):
        assert run("frobnicate").returncode == 1

    def test_bad_h_spec_exits_one(self):
        assert run("classify", "B3", "A2#9").returncode == 1
