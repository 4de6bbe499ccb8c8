import json
import subprocess
import sys
from pathlib import Path

import pytest

from gsp4cert.checks import SUITES, VerifyConfig
from gsp4cert.cli import main, run, strip_timing

ROOT = Path(__file__).resolve().parents[1]
FIELDS = {"id", "anchor", "status", "witness", "wall_time_s"}


def _verify(tmp_path, *extra):
    out = tmp_path / "r.json"
    code = main(["verify", "--quiet", "--out", str(out), *extra])
    return code, json.loads(out.read_text())


def test_lie_suite_passes(tmp_path):
    code, rep = _verify(tmp_path, "--suite", "lie-structure")
    assert code == 0 and rep["ok"]
    assert rep["schema"] == "1"
    assert list(rep["suites"]) == ["lie-structure"]


def test_records_have_required_fields(tmp_path):
    code, rep = _verify(tmp_path, "--suite", "lie-structure", "--suite", "wedge-decomp")
    for rs in rep["suites"].values():
        for r in rs:
            assert FIELDS <= set(r)
            assert set(r["witness"]) == {"left", "right", "difference"}
            assert r["status"] in ("pass", "fail", "info")
            assert r["anchor"]
    assert "timing" in rep and "total_wall_time_s" in rep["timing"]


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "no-such-suite"])
    assert exc.value.code == 2


def test_bad_config_is_usage_error(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"suites": ["lie-structure"], "bogus": 1}))
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--config", str(cfg)])
    assert exc.value.code == 2
    cfg.write_text(json.dumps({"suites": ["nope"]}))
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--config", str(cfg)])
    assert exc.value.code == 2
    cfg.write_text("{not json")
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--config", str(cfg)])
    assert exc.value.code == 2


def test_failure_exit_code_is_distinct(tmp_path):
    code, rep = _verify(tmp_path, "--suite", "frame-change")
    assert code == 1 and not rep["ok"]
    assert rep["summary"]["fail"] > 0


def test_unwritable_report(tmp_path):
    assert main(["verify", "--quiet", "--suite", "lie-structure", "--out", str(tmp_path / "missing" / "r.json")]) == 3


def test_report_deterministic():
    cfg = VerifyConfig(suites=["lie-structure", "eta-basis"])
    assert strip_timing(run(cfg)) == strip_timing(run(cfg))


def test_config_roundtrip():
    cfg = VerifyConfig.from_dict(json.loads((ROOT / "configs" / "full.json").read_text()))
    assert list(cfg.suites) == list(SUITES)


def test_dump_stable(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["dump", "--out", str(a)]) == 0
    assert main(["dump", "--out", str(b)]) == 0
    for name in ("structure.json", "uea.json"):
        ta, tb = (a / name).read_bytes(), (b / name).read_bytes()
        assert ta == tb
        assert json.loads(ta)["schema"] == "1"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gsp4cert", "verify", "--quiet", "--suite", "lie-structure"],
                       capture_output=True, text=True, cwd=ROOT)
    assert r.returncode == 0
    assert json.loads(r.stdout)["ok"]
