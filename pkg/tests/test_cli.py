import json

import pytest

from rackalg import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def payload(out):
    doc = json.loads(out)
    assert doc["schema"] == "rackalg-report/1"
    return doc


def test_rack_props(capsys):
    code, out, err = run(capsys, "rack", "props", "--rack", "o24")
    assert code == 0
    doc = payload(out)
    assert doc["ok"]
    assert doc["command"] == "rack props"
    assert doc["report"]["n"] == 6
    assert doc["report"]["labels"][0] == "(34)"
    assert doc["report"]["quandle"] is True
    assert doc["report"]["faithful"] is True
    assert doc["report"]["indecomposable"] is True


def test_stdout_is_pure_json_and_timing_on_stderr(capsys):
    code, out, err = run(capsys, "braid", "check", "--rack", "o44",
                         "--cocycle", "const:-1")
    assert code == 0
    json.loads(out)
    assert "[time]" not in out
    assert "[time]" in err


def test_determinism_byte_identical(capsys):
    args = (
        "lift", "pointed", "--rack", "o24", "--cocycle", "chi",
        "--seed", "5",
    )
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_json_out_matches_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "nichols", "hilbert", "--rack", "o23",
        "--cocycle", "const:-1", "--json-out", str(target),
    )
    assert code == 0
    assert target.read_text() == out
    doc = payload(out)
    assert doc["report"]["series"][:5] == [1, 3, 4, 3, 1]


def test_nichols_dim_small_and_large(capsys):
    code, out, _ = run(capsys, "nichols", "dim", "--rack", "o23",
                       "--cocycle", "const:-1")
    assert code == 0
    assert payload(out)["report"]["dim"] == 12

    code, out, _ = run(capsys, "nichols", "dim", "--rack", "o24",
                       "--cocycle", "chi")
    assert code == 0
    doc = payload(out)
    assert doc["report"]["dim"] == 576
    assert doc["report"]["status"] == "complete"


def test_nichols_j2(capsys):
    code, out, _ = run(capsys, "nichols", "j2", "--rack", "o44",
                       "--cocycle", "const:-1", "--flavor", "W")
    assert code == 0
    doc = payload(out)
    assert doc["ok"]
    assert doc["report"]["kernel_dim"] == 17
    assert doc["report"]["relation_count"] == 17
    assert doc["report"]["span_match"] is True


def test_unknown_rack_is_invalid_usage(capsys):
    code, out, _ = run(capsys, "rack", "props", "--rack", "nope")
    assert code == 2
    doc = payload(out)
    assert not doc["ok"]


def test_bad_rack_file_fails_validation(capsys, tmp_path):
    from rackalg.rack import dihedral_rack

    doc = dihedral_rack(4).to_json()
    doc["table"][0] = list(doc["table"][1])  # rows collide, not bijective
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "rack", "check", "--file", str(bad))
    assert code == 1
    assert not payload(out)["ok"]


def test_malformed_rack_file_is_invalid_usage(capsys, tmp_path):
    bad = tmp_path / "malformed.json"
    bad.write_text(json.dumps({"labels": ["a", "b"]}))
    code, out, _ = run(capsys, "rack", "check", "--file", str(bad))
    assert code == 2
    assert not payload(out)["ok"]


def test_missing_file_is_invalid_usage(capsys, tmp_path):
    code, out, _ = run(
        capsys, "rack", "check", "--file", str(tmp_path / "absent.json")
    )
    assert code == 2


def test_budget_exit(capsys):
    code, out, _ = run(capsys, "nichols", "dim", "--rack", "o24",
                       "--cocycle", "chi", "--max-deg", "1")
    assert code == 3
    assert not payload(out)["ok"]


def test_deform_verify(capsys):
    code, out, _ = run(capsys, "deform", "verify", "--family", "Echi",
                       "--n", "3", "--samples", "2", "--seed", "7")
    assert code == 0
    doc = payload(out)
    assert doc["ok"]
    dims = [r["dim"] for r in doc["report"]["runs"]]
    assert dims == [12, 12, 12]


def test_deform_audit(capsys):
    code, out, _ = run(capsys, "deform", "audit")
    assert code == 0
    doc = payload(out)
    assert doc["report"]["all_member"] is True
    assert len(doc["report"]["elements"]) == 13


def test_deform_params(capsys):
    code, out, _ = run(capsys, "deform", "params", "--rack", "o24",
                       "--cocycle", "chi")
    assert code == 0
    doc = payload(out)
    assert doc["report"]["pointed"]["free_dim"] == 2
    assert doc["report"]["copointed"]["free_dim"] == 6
    assert doc["report"]["hom_vanishing"]["all"] is True


def test_lift_pointed(capsys):
    code, out, _ = run(capsys, "lift", "pointed", "--rack", "o24",
                       "--cocycle", "chi", "--seed", "5")
    assert code == 0
    doc = payload(out)
    assert doc["report"]["count"] == 17
    assert set(doc["report"]["free_values"]) == {"1,4", "3,3"}


def test_lift_copointed(capsys):
    code, out, _ = run(capsys, "lift", "copointed", "--rack", "o44",
                       "--cocycle", "const:-1", "--seed", "5")
    assert code == 0
    doc = payload(out)
    assert doc["report"]["family"] == "FourCycles"
    assert doc["report"]["quadratic_count"] == 14
    assert len(doc["report"]["deformed"]) == 6


def test_realize_check_and_theta(capsys):
    for rack, spec in [("o24", "chi"), ("o44", "const:-1")]:
        code, out, _ = run(capsys, "realize", "check", "--rack", rack,
                           "--cocycle", spec)
        assert code == 0
        assert payload(out)["ok"]
        code, out, _ = run(capsys, "realize", "theta", "--rack", rack,
                           "--cocycle", spec)
        assert code == 0
        doc = payload(out)
        assert doc["ok"]
        assert doc["report"]["distinct"] is True


def test_realize_dual(capsys):
    code, out, _ = run(capsys, "realize", "dual", "--rack", "o23",
                       "--cocycle", "chi")
    assert code == 0
    doc = payload(out)
    assert doc["ok"]
    assert doc["report"]["braiding"]["V"]["ok"] is True
    assert doc["report"]["braiding"]["W"]["ok"] is True


def test_gb_run_round_trip(capsys, tmp_path):
    from rackalg.catalog import builtin_cocycle, builtin_rack
    from rackalg.freealg import ideal_to_json
    from rackalg.quadrel import quadratic_ideal

    rack, _ = builtin_rack("o23")
    q = builtin_cocycle("o23", "const:-1")
    polys = quadratic_ideal(rack, q, "V")
    src = tmp_path / "ideal.json"
    src.write_text(json.dumps(ideal_to_json(list("abc"), polys)))
    code, out, _ = run(capsys, "gb", "run", "--file", str(src))
    assert code == 0
    doc = payload(out)
    assert doc["report"]["quotient_dim"] == 12
    assert doc["report"]["status"] == "complete"
    assert doc["report"]["obstructions_reduce"] is True


def test_options_echoed_in_envelope(capsys):
    code, out, _ = run(capsys, "nichols", "j2", "--rack", "o23",
                       "--cocycle", "chi", "--flavor", "W", "--seed", "9")
    assert code == 0
    doc = payload(out)
    assert doc["options"]["rack"] == "o23"
    assert doc["options"]["flavor"] == "W"
    assert doc["options"]["seed"] == 9
