import json
import subprocess
import sys

from enrq.cli import main

EXPECTED_TABLE_D1 = """\
| i\\j | -1 | 0 | 1 |
| --- | --- | --- | --- |
| -2 | 1 |  | 1 |
| -1 |  | 8 |  |
| 0 | 1 | 22 | 1 |
| 1 |  | 8 |  |
| 2 | 1 |  | 1 |
"""


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestExpand:
    def test_pt_fiber_q1_coefficient(self, capsys):
        code, out, _ = run(["expand", "pt-fiber", "--q-order", "8"], capsys)
        assert code == 0
        blob = json.loads(out)
        assert blob["vars"] == ["q", "t", "s"]
        terms = {tuple(t["exp"]): t["coef"] for t in blob["terms"]}
        assert terms[(24, 0, 0)] == "8"

    def test_asympt_contains_276(self, capsys):
        code, out, _ = run(["expand", "asympt-gf", "--q-order", "7"], capsys)
        assert code == 0 and '"276"' in out

    def test_unknown_id_exit_2(self, capsys):
        code, _, err = run(["expand", "bogus-id"], capsys)
        assert code == 2 and "unknown series id" in err

    def test_every_series_id_expands(self, capsys):
        from enrq.cli import SERIES_IDS

        for name in SERIES_IDS:
            code, out, _ = run(["expand", name, "--q-order", "4"], capsys)
            assert code == 0
            json.loads(out)

    def test_deterministic_output(self, capsys):
        a = run(["expand", "keyeq-rhs1", "--q-order", "5"], capsys)[1]
        b = run(["expand", "keyeq-rhs1", "--q-order", "5"], capsys)[1]
        assert a == b

    def test_cache_dir(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("SERIES_CACHE_DIR", str(tmp_path / "cache"))
        a = run(["expand", "ky-logZ", "--q-order", "4"], capsys)[1]
        cached = list((tmp_path / "cache").glob("ky-logZ-*.json"))
        assert len(cached) == 1
        stamp = cached[0].read_text()
        b = run(["expand", "ky-logZ", "--q-order", "4"], capsys)[1]
        assert a == b == stamp


class TestTables:
    def test_degree_one_markdown(self, capsys):
        code, out, _ = run(["tables", "--d", "1:1", "--q-order", "4"], capsys)
        assert code == 0
        assert out.startswith(EXPECTED_TABLE_D1)

    def test_unknown_row_degree_two(self, capsys):
        code, out, _ = run(["tables", "--d", "2:2", "--q-order", "4", "--format", "csv"], capsys)
        assert code == 0
        unknown = [l for l in out.splitlines() if l.endswith(",?")]
        assert unknown and all(l.startswith("0,") for l in unknown)

    def test_insufficient_order_exit_3(self, capsys):
        code, _, err = run(["tables", "--d", "9", "--q-order", "5"], capsys)
        assert code == 3 and "q-order" in err

    def test_output_directory(self, tmp_path, capsys):
        code, _, _ = run(["tables", "--d", "0:1", "--q-order", "4", "--out", str(tmp_path)], capsys)
        assert code == 0
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == [
            "table_d0.md",
            "table_d1.md",
            "table_fiber_even.md",
            "table_fiber_odd.md",
        ]
        assert (tmp_path / "table_d1.md").read_text() == EXPECTED_TABLE_D1

    def test_json_format_has_symbol_cells(self, tmp_path, capsys):
        code, _, _ = run(
            ["tables", "--d", "2:2", "--q-order", "4", "--format", "json", "--out", str(tmp_path)],
            capsys,
        )
        assert code == 0
        blob = json.loads((tmp_path / "table_d2.json").read_text())
        unknown = [e for e in blob["entries"] if isinstance(e["value"], dict)]
        assert unknown and all(e["i"] == 0 for e in unknown)

    def test_betti_file_override(self, tmp_path, capsys):
        records = [
            {"d": 0, "betti": [1, 2, 1], "complete": True},
            {"d": None, "betti": [1, 0, 11], "complete": False},
            {"d": 1, "betti": [1, 0, 10, 23, 10, 0, 1], "complete": True},
        ]
        path = tmp_path / "betti.json"
        path.write_text(json.dumps(records))
        code, out, _ = run(
            ["tables", "--d", "1:1", "--q-order", "4", "--betti-file", str(path)], capsys
        )
        assert code == 0
        assert "| 0 | 1 | 23 | 1 |" in out  # center follows the middle Betti number


class TestCheck:
    def test_single_check_passes(self, capsys):
        code, out, err = run(["check", "--checks", "toda-vs-prop"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["passed"] and report["checks"][0]["name"] == "toda-vs-prop"
        assert "pass  toda-vs-prop" in err

    def test_unknown_check_exit_2(self, capsys):
        code, _, err = run(["check", "--checks", "nope"], capsys)
        assert code == 2 and "unknown checks" in err

    def test_negative_control_fails(self, capsys):
        code, out, _ = run(
            ["check", "--checks", "chain-three-forms", "--eta-no-prefactor", "--q-order", "4"],
            capsys,
        )
        assert code == 1
        report = json.loads(out)
        assert not report["passed"]
        assert "mismatch" in report["checks"][0]["detail"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "enrq.cli", "expand", "betti-infty", "--q-order", "6"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["vars"] == ["x"]
