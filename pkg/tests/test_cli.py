import io
import json
import subprocess
import sys

import pytest

from mcgsym.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, parse_config, run


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), env=env or {}, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_default_passes():
    code, out, _ = call("verify")
    assert code == EXIT_OK
    assert "FAIL" not in out and "g=5" in out


def test_verify_left_handed_control_fails_with_column():
    code, out, _ = call("verify", "--genus", "3", "--inject-left-handed", "x1")
    assert code == EXIT_FAIL
    assert "FAIL g=3 X1 X2 X3 = A1 A2 A3 A4: column" in out


def test_verify_drop_j3_fails_beta_witness():
    code, out, _ = call("verify", "--genus", "3", "--drop", "J3")
    assert code == EXIT_FAIL
    assert "T_beta" in out and "missing letter J3" in out


def test_involution_suite_at_genus_two_is_invalid():
    code, _, err = call("verify", "--genus", "2", "--suite", "involutions")
    assert code == EXIT_INPUT
    assert "g >= 3" in err


def test_genus_two_torsion_part_runs():
    code, out, _ = call("verify", "--genus", "2")
    assert code == EXIT_OK and "torsion part only" in out


def test_bad_inputs_exit_2():
    assert call("orders", "--primes", "2,4")[0] == EXIT_INPUT
    assert call("orders", "--genus", "1")[0] == EXIT_INPUT
    assert call("orders", "--order-cap", "many")[0] == EXIT_INPUT
    assert call("generate", "--sets", "nonsense", "--cells", "3:2")[0] == EXIT_INPUT
    assert call("coxeter", "--genus", "2")[0] == EXIT_INPUT
    with pytest.raises(SystemExit) as e:
        call("frobnicate")
    assert e.value.code == EXIT_INPUT


def test_orders_json():
    code, out, _ = call("orders", "--genus", "3,4", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    rows = {(r["g"], r["element"]): r for r in data["orders"]}
    assert rows[(3, "Q")]["order"] == 8
    assert rows[(4, "S")]["order"] == 18
    assert rows[(3, "rho1")]["order"] == 2
    assert rows[(4, "R_g")]["order"] == 4


def test_generate_controls_and_resource_code():
    code, out, _ = call("generate", "--sets", "rho1_only,Q_only", "--cells", "3:3")
    assert code == EXIT_OK and out.count("proper subgroup") == 2
    code, out, _ = call("generate", "--sets", "wajnryb_pair", "--cells", "6:7")
    assert code == EXIT_RESOURCE and "RESOURCE" in out


def test_generate_failure_when_expected_set_is_proper(monkeypatch):
    from mcgsym import certify

    monkeypatch.setitem(certify.SETS, "wajnryb_pair", certify.SETS["Q_only"])
    code, out, _ = call("generate", "--sets", "wajnryb_pair", "--cells", "3:2")
    assert code == EXIT_FAIL


def test_environment_overrides_and_flag_precedence():
    _, cfg = parse_config(["orders"], env={"MCGSYM_GENUS": "3,4", "MCGSYM_ORDER_CAP": "50", "MCGSYM_SEED": "9"})
    assert cfg.genus == (3, 4) and cfg.order_cap == 50 and cfg.seed == 9
    _, cfg = parse_config(["orders", "--genus", "5"], env={"MCGSYM_GENUS": "3,4"})
    assert cfg.genus == (5,)
    _, cfg = parse_config(["generate"], env={})
    assert cfg.battery() == ((3, 2), (3, 3), (3, 5), (4, 2), (4, 3), (5, 2))


def test_coxeter_command():
    code, out, _ = call("coxeter", "--genus", "3", "--json")
    assert code == EXIT_OK
    d = json.loads(out)["coxeter"]["3"]
    assert d["names"][:2] == ["rho1", "rho2"] and d["orders"][0][1] == 3
    assert len(d["orders"]) == 6


def test_export_is_bit_stable_and_round_trips(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call("export", "--genus", "3,4", "--out", str(a))[0] == EXIT_OK
    assert call("export", "--genus", "3,4", "--out", str(b))[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    bundle = json.loads(a.read_text())
    assert bundle["genera"]["3"]["coxeter"]["orders"][0][1] == 3
    direct = json.loads(call("verify", "--genus", "3,4", "--json")[1])["identities"]
    code, out, _ = call("verify", "--bundle", str(a), "--json")
    assert code == EXIT_OK
    assert json.loads(out)["identities"] == direct


def test_tampered_bundle_matrix_is_rejected(tmp_path):
    path = tmp_path / "b.json"
    call("export", "--genus", "3", "--out", str(path))
    bundle = json.loads(path.read_text())
    bundle["genera"]["3"]["tables"]["symmetries"]["J1"]["matrix"][0][0] += 2
    path.write_text(json.dumps(bundle))
    code, _, err = call("verify", "--bundle", str(path))
    assert code == EXIT_INPUT and "not symplectic" in err


def test_missing_bundle_is_input_error(tmp_path):
    assert call("verify", "--bundle", str(tmp_path / "nope.json"))[0] == EXIT_INPUT


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mcgsym", "orders", "--genus", "3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "order(Q) = 8" in res.stdout
