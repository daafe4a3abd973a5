import json
import subprocess
import sys

import pytest

from invhilb.checks import REGISTRY, SUITES, checks_for, run_suite
from invhilb.cli import main


def _strip_times(report):
    return [{k: v for k, v in c.items() if k != "wall_time"} for c in report["checks"]]


def test_every_check_has_anchor_and_known_suite():
    for c in REGISTRY.values():
        assert c.anchor
        assert (c.anchor == "plumbing") == (c.suite == "plumbing")
        assert c.suite in SUITES + ("plumbing",)
    assert all(checks_for(s) for s in SUITES)


def test_tangent_suite_defaults(capsys):
    assert main(["--suite", "tangent"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["schema"] == 1
    dim = next(c for c in report["checks"] if c["id"] == "tangent.dimension")
    assert dim["status"] == "pass" and dim["witness"]["tangent_dim"] == 6


def test_report_deterministic_and_sorted():
    a = run_suite("moment", seed=7, samples=5)
    b = run_suite("moment", seed=7, samples=5)
    assert _strip_times(a) == _strip_times(b)
    ids = [c["id"] for c in a["checks"]]
    assert ids == sorted(ids)


def test_seed_changes_samples():
    a = run_suite("wedge", seed=1, samples=5)
    b = run_suite("wedge", seed=2, samples=5)
    assert all(c["status"] == "pass" for c in a["checks"] + b["checks"])


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["--suite", "hilbert-function", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["summary"] == {"total": 2, "passed": 2, "failed": 0}


def test_failing_suite_exit_code(capsys):
    assert main(["--suite", "fibres", "--samples", "5"]) == 1


def test_usage_errors(tmp_path, capsys):
    assert main(["--suite", "bogus"]) == 2
    assert "usage" in capsys.readouterr().err
    assert main(["--explain", "no.such.check"]) == 2
    assert main(["--suite", "tangent", "--out", str(tmp_path / "missing" / "r.json")]) == 2
    assert main(["--truncation", "40"]) == 2


def test_explain(capsys):
    assert main(["--explain", "eta1.kernel.A0"]) == 0
    text = capsys.readouterr().out
    assert "<p3, p4, p5, p6>" in text
    assert main(["--explain", "plumbing.rref"]) == 0
    assert "anchor: plumbing" in capsys.readouterr().out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "invhilb", "--list"], capture_output=True, text=True)
    assert r.returncode == 0 and "wedge.gram" in r.stdout


def test_all_suite_seed_42_passes(tmp_path):
    """End-to-end run; every check should pass."""
    out = tmp_path / "all.json"
    code = main(["--suite", "all", "--seed", "42", "--out", str(out)])
    report = json.loads(out.read_text())
    failed = [c["id"] for c in report["checks"] if c["status"] == "fail"]
    assert code == 0, f"failing checks: {failed}"
