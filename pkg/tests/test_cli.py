import json

import numpy as np
import pytest

from gorenstein_stark.cli import main
from gorenstein_stark.ring import RingSpec
from gorenstein_stark.serialize import system_to_json
from gorenstein_stark.stark import random_instance, stark_from_top


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gen", "--seed", "7", "--out", str(a)]) == 0
    assert main(["gen", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["gen", "--seed", "8", "--out", str(b)]) == 0
    assert a.read_bytes() != b.read_bytes()


def test_gen_ring_header_and_empty_prime_set(capsys):
    code, out, _ = run(["gen", "--ring", "p=2,a=2,e=2"], capsys)
    assert code == 0
    assert json.loads(out)["ring"] == {"p": 2, "a": 2, "exponents": [2]}
    code, out, _ = run(["gen", "--primes", "0", "--rank", "2"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["primes"] == [] and obj["rank_r"] == 2


def test_gen_prime_labels(capsys):
    code, out, _ = run(["gen", "--primes", "a,b,c", "--rank", "0"], capsys)
    assert code == 0 and json.loads(out)["primes"] == ["a", "b", "c"]


@pytest.mark.parametrize("args", [
    ["gen", "--ring", "p=6,a=1"],
    ["gen", "--ring", "garbage"],
    ["gen", "--rank", "-1"],
    ["gen", "--density", "2"],
    ["gen", "--primes", "a,a"],
    ["verify", "--instance", "/nonexistent.json"],
    ["tower", "--depth", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 2


def test_version(capsys):
    assert main(["--version"]) == 0


def test_verify_unit_instance(tmp_path, capsys):
    path = tmp_path / "unit.json"
    path.write_text(json.dumps({"ring": {"p": 2, "a": 2, "exponents": []}, "rank_r": 0,
                                "primes": ["q"], "loc": [[[1]]]}))
    code, out, _ = run(["verify", "--instance", str(path)], capsys)
    report = json.loads(out)
    assert code == 0
    assert all(c["verdict"] == "pass" for c in report["trials"][0]["checks"])
    assert report["summary"]["failed_trials"] == 0


def test_verify_is_deterministic(capsys):
    args = ["verify", "--seed", "3", "--ring", "p=3,a=2", "--rank", "1", "--primes", "3", "--trials", "2"]
    first = run(args, capsys)
    second = run(args, capsys)
    assert first[0] == 0 and first == second


def test_corrupted_class_fails_with_replayable_witness(tmp_path, capsys):
    sys = stark_from_top(random_instance(4, RingSpec(2, 2, ()), 1, 2, 0.0))
    obj = system_to_json(sys)
    obj["classes"]["q1"] = (2 * np.array(obj["classes"]["q1"]) % 4).tolist()
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    witness = tmp_path / "witness.json"
    code, out, _ = run(["verify", "--instance", str(bad), "--witness", str(witness)], capsys)
    assert code == 1
    report = json.loads(out)
    failed = {c["name"] for c in report["trials"][0]["checks"] if c["verdict"] == "fail"}
    assert "transition" in failed
    w = json.loads(witness.read_text())
    assert any(c["name"] == "transition" for c in w["failed_checks"])
    code, _, _ = run(["verify", "--instance", str(witness)], capsys)
    assert code == 1


def test_control_failure_witness_names_subset_and_ideals(tmp_path, capsys):
    # a non-zero multiple by p of every class keeps transitions but breaks control
    spec = RingSpec(3, 2, ())
    sys = stark_from_top(random_instance(1, spec, 0, 1, 0.0))
    obj = system_to_json(sys.scaled(spec.const(3)))
    path = tmp_path / "scaled.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(["verify", "--instance", str(path)], capsys)
    assert code == 1
    checks = json.loads(out)["trials"][0]["checks"]
    control = [c for c in checks if c["name"].startswith("control") and c["verdict"] == "fail"]
    assert control
    witness = control[0]["witness"]
    assert {"i", "subset", "ideal_I", "fitting"} <= set(witness)


def test_max_i_beyond_n_reports_unit_ideals(capsys):
    code, out, _ = run(["verify", "--primes", "1", "--rank", "1", "--max-i", "3"], capsys)
    ideals = json.loads(out)["trials"][0]["ideals"]
    assert code == 0
    assert len(ideals["I"]) == 4
    assert ideals["I"][2] == ideals["I"][3] == ideals["fitting"][3]
    assert ideals["I"][3]["length"] == 2


def test_fitting_command(capsys):
    code, out, _ = run(["fitting", "--seed", "2", "--primes", "2"], capsys)
    row = json.loads(out)["results"][0]
    assert code == 0 and row["I"] == row["fitting"]


def test_tower_loc_p_profile(tmp_path, capsys):
    path = tmp_path / "tower.json"
    path.write_text(json.dumps({
        "levels": [{"p": 2, "a": a, "exponents": []} for a in (1, 2, 3)],
        "master_instance": {"ring": {"p": 2, "a": 3, "exponents": []}, "rank_r": 0, "primes": ["q"],
                            "loc": [[[2]]]},
        "unit": [1],
    }))
    code, out, _ = run(["tower", "--instance", str(path)], capsys)
    report = json.loads(out)
    assert code == 0
    lengths = [x["length"] for x in report["profiles"][0]["ideals"]]
    assert lengths == [0, 1, 2]
    assert all(c["classes_match"] and c["ideals_match"] for c in report["certificates"])


def test_tower_unit_master_and_depth_one(tmp_path, capsys):
    path = tmp_path / "unit.json"
    path.write_text(json.dumps({"ring": {"p": 3, "a": 3, "exponents": []}, "rank_r": 0,
                                "primes": ["q"], "loc": [[[1]]]}))
    code, out, _ = run(["tower", "--instance", str(path)], capsys)
    report = json.loads(out)
    assert code == 0
    assert all(x["length"] == lv["a"] for x, lv in zip(report["profiles"][0]["ideals"], report["tower"]["levels"]))
    code, out, _ = run(["tower", "--instance", str(path), "--depth", "1"], capsys)
    report = json.loads(out)
    assert code == 0 and "verify" in report


def test_tower_rejects_bad_nesting(tmp_path, capsys):
    path = tmp_path / "tower.json"
    path.write_text(json.dumps({
        "levels": [{"p": 3, "a": 1, "exponents": []}, {"p": 2, "a": 3, "exponents": []}],
        "master_instance": {"ring": {"p": 2, "a": 3, "exponents": []}, "rank_r": 0, "primes": ["q"],
                            "loc": [[[2]]]},
    }))
    code, _, err = run(["tower", "--instance", str(path)], capsys)
    assert code == 2 and "tower" in err


def test_suite(capsys):
    code, out, _ = run(["suite", "--trials", "1"], capsys)
    assert code == 0 and json.loads(out)["summary"]["trials"] == 6
