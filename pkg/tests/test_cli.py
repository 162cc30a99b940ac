import json
import subprocess
import sys

import pytest

from permruns.cli import main, render_path
from permruns.paths import LabeledPath


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestTable:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "table", "runs", "--n", "4", "--format", "csv")
        assert code == 0
        assert out == "n,k,count\n4,1,2\n4,2,12\n4,3,10\n"

    def test_json_integers_are_strings(self, capsys):
        code, out, _ = run(capsys, "table", "runs", "--n", "4", "--format", "json")
        rec = json.loads(out)
        assert code == 0
        assert rec["command"] == "table"
        assert rec["parameters"] == {"statistic": "runs", "n": 4}
        assert rec["payload"]["counts"] == [{"k": "1", "count": "2"}, {"k": "2", "count": "12"},
                                            {"k": "3", "count": "10"}]
        assert rec["payload"]["total"] == "24"

    def test_text(self, capsys):
        code, out, _ = run(capsys, "table", "descents", "--n", "4", "--format", "text")
        assert code == 0
        assert out.splitlines()[0] == "# descents n=4 total=24"
        assert [line.split() for line in out.splitlines()[1:]] == [["0", "1"], ["1", "11"],
                                                                   ["2", "11"], ["3", "1"]]

    def test_t_needs_j(self, capsys):
        assert run(capsys, "table", "t", "--n", "6")[0] == 2
        code, out, _ = run(capsys, "table", "t", "--n", "6", "--j", "2", "--format", "csv")
        assert code == 0 and out.splitlines()[1:] == ["6,1,2", "6,2,56", "6,3,122"]

    def test_odd_t(self, capsys):
        code, out, _ = run(capsys, "table", "odd-t", "--n", "5", "--format", "csv")
        assert out.splitlines()[1:] == ["5,0,2", "5,1,26", "5,2,32"]

    def test_guard_exit(self, capsys):
        code, _, err = run(capsys, "table", "runs", "--n", "11")
        assert code == 3
        assert "max" in err

    def test_bad_input_exit(self, capsys):
        assert run(capsys, "table", "half-ascending", "--n", "5")[0] == 2

    def test_env_default_format(self, capsys, monkeypatch):
        monkeypatch.setenv("PERMRUNS_FORMAT", "csv")
        assert run(capsys, "table", "runs", "--n", "3")[1].startswith("n,k,count")


class TestVerify:
    @pytest.mark.parametrize("target", ["divisibility", "lemma-difficult", "trivi", "bijection",
                                        "dp-oracle", "log-concavity"])
    def test_passing_targets(self, capsys, target):
        code, out, _ = run(capsys, "verify", target, "--n", "6")
        assert code == 0
        assert out.startswith(f"PASS  {target}")

    def test_invariance_fails_with_counterexample(self, capsys):
        code, out, _ = run(capsys, "verify", "invariance", "--n", "6", "--format", "json")
        rec = json.loads(out)
        assert code == 1
        assert rec["payload"]["passed"] is False
        assert "counterexample" in rec["payload"]["results"][0]

    def test_phi_audit_json(self, capsys):
        code, out, _ = run(capsys, "verify", "phi-audit", "--n", "6", "--k", "3",
                           "--restriction", "V", "--format", "json", "--no-timing")
        rec = json.loads(out)
        assert code == 0
        assert rec["parameters"] == {"target": "phi-audit", "n": 6, "k": 3, "restriction": "V"}
        audit = rec["payload"]["results"][0]["details"]["audits"][0]
        assert audit["passed"] is True and "elapsed" not in audit

    def test_no_timing_is_byte_identical(self, capsys):
        argv = ("verify", "phi-audit", "--n", "5", "--format", "json", "--no-timing")
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_all_stops_at_first_failure(self, capsys):
        code, out, _ = run(capsys, "verify", "all", "--n", "6", "--format", "csv")
        rows = out.splitlines()[1:]
        assert code == 1
        assert [r.split(",")[0] for r in rows][-1] == "invariance"
        assert rows[-1].split(",")[2] == "fail"

    def test_too_small(self, capsys):
        assert run(capsys, "verify", "divisibility", "--n", "3")[0] == 2

    def test_unknown_target(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["verify", "nonsense", "--n", "4"])
        assert info.value.code == 2


class TestDraw:
    def test_perm(self, capsys):
        code, out, _ = run(capsys, "draw", "--perm", "243165")
        assert code == 0
        assert out.splitlines()[0] == "243165 -> [H1, H1, V2, V1, H1, V5]"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "draw", "--path", "H1 V1", "--format", "json")
        rec = json.loads(out)
        assert rec["payload"]["valid"] is True
        assert rec["payload"]["edges"] == [{"dir": "H", "label": "1"}, {"dir": "V", "label": "1"}]

    def test_invalid_path_is_reported(self, capsys):
        code, out, _ = run(capsys, "draw", "--path", "H1 H2")
        assert code == 0 and "# invalid" in out

    def test_render(self):
        assert render_path(LabeledPath.parse("H1 V1")) == "     +\n     |1\n+-1--+"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "permruns", "table", "runs", "--n", "3",
                           "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "n,k,count\n3,1,2\n3,2,4\n"
