import json
import os

from qwb import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_presheaf_dump_format(capsys, samples):
    code, out, _ = run(capsys, "presheaf", os.path.join(samples, "chain3.txt"))
    assert code == 0
    assert out.splitlines() == ["psi0: 0 0 0", "psi1: 1 0 0", "psi2: 1 1 0", "psi3: 1 1 1"]


def test_ccd_and_obstruction(capsys, samples):
    code, out, _ = run(capsys, "ccd", os.path.join(samples, "chain3.txt"), "--format", "machine")
    assert code == 0 and json.loads(out)["ccd"] is True
    code, out, _ = run(capsys, "ccd", os.path.join(samples, "n5.txt"))
    assert code == 1 and out.startswith("not ccd")


def test_dualize_prints_both_tables(capsys, samples):
    code, out, _ = run(capsys, "dualize", os.path.join(samples, "chain3.txt"), "--format", "machine")
    data = json.loads(out)
    assert code == 0 and data["SL"]["objects"] == ["m", "t"] and len(data["DX"]["objects"]) == 4


def test_phi_split_frames_ultra(capsys, samples):
    assert run(capsys, "phi", "inhabited", os.path.join(samples, "chain3.txt"), "--check", "distributive")[0] == 0
    assert run(capsys, "split", os.path.join(samples, "split.txt"))[0] == 0
    assert run(capsys, "frames", "--roundtrip", os.path.join(samples, "frames.txt"))[0] == 0
    assert run(capsys, "ultra", "--verify", "2")[0] == 0


def test_check_and_errors(capsys, samples):
    assert run(capsys, "check", os.path.join(samples, "metric.txt"))[0] == 0
    code, _, err = run(capsys, "check", os.path.join(samples, "bad_vcat.txt"))
    assert code == 2 and "transitivity" in err
    assert run(capsys, "check", os.path.join(samples, "missing.txt"))[0] == 2


def test_corrupted_quantale_fails_suite(capsys, samples):
    code, out, _ = run(capsys, "suite", "quantale", "--file", os.path.join(samples, "bad_quantale.txt"))
    assert code == 1
    assert "FAIL unit" in out and "unit law" in out


def test_suite_output_is_deterministic(capsys):
    a = run(capsys, "suite", "karoubi", "--no-timing", "--format", "machine")
    b = run(capsys, "suite", "karoubi", "--no-timing", "--format", "machine")
    assert a == b and a[0] == 0


def test_enumerate_and_cap_warning(capsys):
    code, out, err = run(capsys, "enumerate", "--max", "2", "--format", "machine")
    assert code == 0 and json.loads(out)["counts"] == {"0": 1, "1": 1, "2": 4}
    _, _, err = run(capsys, "enumerate", "--quantale", "chain1", "--max", "4", "--cap", "10")
    assert "warning" in err
