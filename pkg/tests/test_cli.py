import io
import json

import pytest

from cangrow import cli
from cangrow.criteria import ScanRecord, ScanReport

from conftest import ring_file


def run(argv):
    buf = io.StringIO()
    code = cli.run_command(argv, stdout=buf)
    return code, buf.getvalue()


def run_json(argv):
    code, text = run(argv + ["--format", "json"])
    return code, json.loads(text)


def strip(out):
    return {k: v for k, v in out.items() if k != "timing"}


REQUIRED = {"tool_version", "command", "ring", "module", "betti", "growth", "criteria",
            "findings", "timing"}


@pytest.mark.parametrize("command", ["resolve", "canonical", "growth", "gdev", "gorenstein",
                                     "tor", "ext", "criteria"])
def test_json_schema(command):
    code, out = run_json([command, "--ring", str(ring_file("quad3")), "--steps", "4"])
    assert code == cli.EXIT_OK
    assert REQUIRED <= set(out)
    assert out["command"] == command


def test_resolve_quad3():
    code, out = run_json(["resolve", "--ring", str(ring_file("quad3")), "--steps", "6", "--verify"])
    assert out["betti"] == [2, 3, 6, 12, 24, 48, 96]
    assert all(out["verification"].values())
    assert out["growth"]["classification"] == "exponential-like"


def test_table_output_mentions_betti():
    code, text = run(["resolve", "--ring", str(ring_file("x3y3")), "--module", "cyclic(x)"])
    assert code == 0 and "betti" in text.lower()


def test_tensor_command():
    code, out = run_json(["tensor", "--ring", str(ring_file("A")), "--ring2", str(ring_file("B3")),
                          "--steps", "5"])
    assert out["tensor"]["series"]["canonical"]["match"]
    assert out["tensor"]["series"]["k"]["match"]


def test_exit_codes(tmp_path):
    assert run(["resolve", "--ring", str(ring_file("XYZ"))])[0] == cli.EXIT_INPUT
    bad = tmp_path / "bad.ring"
    bad.write_text("ring { field: F32003; vars: x; ideal: x^2 + }")
    assert run(["resolve", "--ring", str(bad)])[0] == cli.EXIT_INPUT
    assert run(["resolve", "--ring", str(tmp_path / "missing.ring")])[0] == cli.EXIT_INPUT
    assert run(["resolve"])[0] == cli.EXIT_INPUT
    assert run(["bogus"])[0] == cli.EXIT_INPUT
    code = run(["resolve", "--ring", str(ring_file("B3")), "--module", "k", "--steps", "6",
                "--budget", "10"])[0]
    assert code == cli.EXIT_BUDGET


def test_scan_finding_exits_3(monkeypatch):
    rec = ScanRecord(0, 0, "ring { field: F32003; vars: x; ideal: x^2 }", 2, False, 2, 2, True)
    monkeypatch.setattr(cli, "b1_vs_b0_scan", lambda cfg: ScanReport({"samples": 1}, [rec]))
    code, out = run_json(["scan", "--samples", "1"])
    assert code == cli.EXIT_FINDING
    assert out["findings"][0]["ring"] == rec.ring


def test_scan_is_deterministic():
    a = run_json(["scan", "--samples", "25", "--seed", "4"])
    b = run_json(["scan", "--samples", "25", "--seed", "4"])
    assert a[0] == b[0] == cli.EXIT_OK
    assert json.dumps(strip(a[1]), sort_keys=True) == json.dumps(strip(b[1]), sort_keys=True)


def test_cache_miss_then_hit(tmp_path):
    argv = ["resolve", "--ring", str(ring_file("quad3")), "--steps", "5", "--cache", str(tmp_path)]
    code, cold = run_json(argv)
    files = list(tmp_path.glob("*.res"))
    assert len(files) == 1
    code, warm = run_json(argv)
    assert strip(cold) == strip(warm)
    # a longer request extends the cached entry
    code, longer = run_json(argv[:3] + ["--steps", "7"] + argv[5:])
    assert longer["betti"][:6] == cold["betti"]


def test_corrupt_cache_is_recomputed(tmp_path, capsys):
    argv = ["resolve", "--ring", str(ring_file("quad3")), "--steps", "4", "--cache", str(tmp_path)]
    code, good = run_json(argv)
    f = next(tmp_path.glob("*.res"))
    text = f.read_text().splitlines()
    # send the first relation to a unit multiple of a generator: d^2 is no longer zero
    i = next(k for k, ln in enumerate(text) if ln.startswith("d 1 0 "))
    text[i] = "d 1 0 0:1"
    f.write_text("\n".join(text) + "\n")
    code, again = run_json(argv)
    assert code == 0
    assert again["betti"] == good["betti"]
    assert any("cache" in w for w in again.get("warnings", []))
    f.write_text("garbage")
    assert run_json(argv)[1]["betti"] == good["betti"]


def test_record_and_replay(tmp_path):
    record = tmp_path / "run.json"
    code, _ = run(["growth", "--ring", str(ring_file("B3")), "--module", "k", "--steps", "6",
                   "--record", str(record), "--format", "json"])
    assert code == 0
    code, out = run_json(["replay", str(record)])
    assert code == 0 and out["identical"]
    rec = json.loads(record.read_text())
    rec["result"]["betti"][3] += 1
    record.write_text(json.dumps(rec))
    code, out = run_json(["replay", str(record)])
    assert code == cli.EXIT_INPUT and not out["identical"]
