import json
import os

import pytest

from cohomkit.cli import EXIT_MATH, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# lie


def test_lie_cohomology_poincare4(capsys):
    code, rep = run_json(capsys, "lie", "cohomology", "--algebra", "poincare4",
                         "--degree", "2")
    assert code == EXIT_OK
    assert rep["result"]["dim_H"] == 0


def test_lie_perfect_poincare2(capsys):
    code, rep = run_json(capsys, "lie", "perfect", "--algebra", "poincare2")
    assert code == EXIT_OK
    assert rep["result"]["perfect"] is False


def test_lie_validate_corrupted_exits_one(capsys, tmp_path):
    bad = {"dim": 3, "labels": ["h", "e", "f"],
           "brackets": [{"i": 0, "j": 1, "coeffs": {"e": "3"}},
                        {"i": 0, "j": 2, "coeffs": {"f": "-2"}},
                        {"i": 1, "j": 2, "coeffs": {"h": "1"}}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, rep = run_json(capsys, "lie", "validate", "--algebra", str(path))
    assert code == EXIT_MATH
    assert rep["result"]["valid"] is False
    assert len(rep["result"]["violating_indices"]) == 3


def test_lie_generate_and_ideal(capsys, tmp_path):
    gens = tmp_path / "gens.json"
    gens.write_text(json.dumps({"generators": [
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 0, 0]]}))
    code, rep = run_json(capsys, "lie", "generate", "--algebra", "poincare4",
                         "--generators", str(gens))
    assert code == EXIT_OK
    assert rep["result"]["closure_dim"] == 6

    elem = tmp_path / "elem.json"
    elem.write_text(json.dumps({"element": [0, 0, 0, 0, 0, 0, "1", 0, 0, 0]}))
    code, rep = run_json(capsys, "lie", "ideal", "--algebra", "poincare4",
                         "--element", str(elem))
    assert code == EXIT_OK
    assert rep["result"]["ideal_dim"] == 4
    assert rep["result"]["contains_translations"] is True


# ---------------------------------------------------------------------------
# group


def test_group_h_z2(capsys):
    code, rep = run_json(capsys, "group", "h", "--group", "z2", "--coeff", "z2",
                         "--degree", "2")
    assert code == EXIT_OK
    assert rep["result"]["invariant_factors"] == [2]


def test_group_h_z3_trivial(capsys):
    code, rep = run_json(capsys, "group", "h", "--group", "z3", "--coeff", "z2",
                         "--degree", "2")
    assert code == EXIT_OK
    assert rep["result"]["trivial"] is True


def _nontrivial_cocycle_file(tmp_path):
    values = [{"args": [p, q], "value": [1 if p == 1 and q == 1 else 0]}
              for p in range(2) for q in range(2)]
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"degree": 2, "group_order": 2,
                                "coefficient_orders": [2], "values": values}))
    return path


def test_group_extension_build_nontrivial(capsys, tmp_path):
    path = _nontrivial_cocycle_file(tmp_path)
    code, rep = run_json(capsys, "group", "extension", "build", "--group", "z2",
                         "--coeff", "z2", "--cocycle", str(path))
    assert code == EXIT_OK
    assert rep["result"]["carrier_order"] == 4
    assert rep["result"]["is_split"] is False
    assert str(path) in rep["inputs"]


def test_group_extension_build_rejects_noncocycle(capsys, tmp_path):
    values = [{"args": [p, q], "value": [1 if (p, q) == (0, 1) else 0]}
              for p in range(2) for q in range(2)]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"degree": 2, "group_order": 2,
                                "coefficient_orders": [2], "values": values}))
    code, rep = run_json(capsys, "group", "extension", "build", "--group", "z2",
                         "--coeff", "z2", "--cocycle", str(path))
    assert code == EXIT_MATH
    assert len(rep["result"]["violating_triple"]) == 3


def test_group_extension_split_and_equiv(capsys, tmp_path):
    w = _nontrivial_cocycle_file(tmp_path)
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps({"degree": 2, "group_order": 2,
                                "coefficient_orders": [2],
                                "values": [{"args": [p, q], "value": [0]}
                                           for p in range(2) for q in range(2)]}))
    code, rep = run_json(capsys, "group", "extension", "split", "--group", "z2",
                         "--coeff", "z2", "--cocycle", str(zero))
    assert code == EXIT_OK and rep["result"]["is_split"] is True
    code, rep = run_json(capsys, "group", "extension", "split", "--group", "z2",
                         "--coeff", "z2", "--cocycle", str(w))
    assert code == EXIT_MATH and rep["result"]["is_split"] is False
    code, rep = run_json(capsys, "group", "extension", "equiv", "--group", "z2",
                         "--coeff", "z2", "--cocycle1", str(w), "--cocycle2", str(zero))
    assert code == EXIT_MATH and rep["result"]["equivalent"] is False


def test_group_correspondence(capsys):
    code, rep = run_json(capsys, "group", "correspondence", "--cover", "z4",
                         "--base", "z2", "--coeff", "z2")
    assert code == EXIT_OK
    assert rep["result"]["h1_S_order"] == 2
    assert rep["result"]["h2_P_order"] == 2
    assert rep["result"]["orders_match"] is True
    assert rep["result"]["applicable"] is True


# ---------------------------------------------------------------------------
# modular


def test_modular_tracial(capsys):
    code, rep = run_json(capsys, "modular", "analyze", "--example", "tracial",
                         "--seed", "7")
    assert code == EXIT_OK
    assert rep["result"]["delta_spectrum"] == [1.0, 1.0, 1.0, 1.0]


def test_modular_p_two_thirds(capsys):
    code, rep = run_json(capsys, "modular", "analyze", "--example", "p:2/3",
                         "--seed", "7")
    assert code == EXIT_OK
    assert rep["result"]["delta_spectrum"] == [0.5, 1.0, 1.0, 2.0]
    assert rep["result"]["flow_defect"] < 1e-10
    assert rep["result"]["kms_defect"] < 1e-10


def test_modular_product_state_refused(capsys):
    code, rep = run_json(capsys, "modular", "analyze", "--example", "product",
                         "--seed", "7")
    assert code == EXIT_MATH
    assert rep["result"]["separating"] is False
    assert "annihilating_element" in rep["result"]


def test_modular_seed_required(capsys):
    with pytest.raises(SystemExit) as err:
        main(["modular", "analyze", "--example", "tracial"])
    assert err.value.code == EXIT_USAGE


def test_modular_from_files(capsys, tmp_path):
    x = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
    z = [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]

    def kron4(m):
        out = [[[0, 0]] * 4 for _ in range(4)]
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    out[2 * i + k][2 * j + k] = m[i][j]
        return out

    alg = tmp_path / "alg.json"
    alg.write_text(json.dumps({"generators": [kron4(x), kron4(z)]}))
    state = tmp_path / "state.json"
    p = 2 / 3
    state.write_text(json.dumps(
        {"vector": [[p ** 0.5, 0], [0, 0], [0, 0], [(1 - p) ** 0.5, 0]]}))
    code, rep = run_json(capsys, "modular", "analyze", "--algebra", str(alg),
                         "--state", str(state), "--seed", "3")
    assert code == EXIT_OK
    assert rep["result"]["delta_spectrum"] == [0.5, 1.0, 1.0, 2.0]


# ---------------------------------------------------------------------------
# spacetime


def test_spacetime_boost_zero(capsys):
    code, rep = run_json(capsys, "spacetime", "boost", "--t", "0")
    assert code == EXIT_OK
    assert rep["result"]["is_identity"] is True


def test_spacetime_boost_generation(capsys):
    code, rep = run_json(capsys, "spacetime", "boost-generation")
    assert code == EXIT_OK
    assert rep["result"] == {"algebra_dim": 10, "closure_dim": 10,
                             "success": True, "wedge_count": 6, "wedges": "six"}


def test_spacetime_boost_generation_coordinate_only(capsys):
    code, rep = run_json(capsys, "spacetime", "boost-generation",
                         "--wedges", "coordinate-only")
    assert code == EXIT_MATH
    assert rep["result"]["closure_dim"] == 6
    assert rep["result"]["success"] is False


def test_spacetime_complement(capsys):
    code, rep = run_json(capsys, "spacetime", "complement")
    assert code == EXIT_OK
    assert rep["result"]["involution"] is True
    assert rep["result"]["boost_identity_defect"] < 1e-10


# ---------------------------------------------------------------------------
# report contract


def test_reports_byte_identical_across_runs(capsys):
    argv = ["modular", "analyze", "--example", "p:2/3", "--seed", "11"]
    _, out1 = run(capsys, *argv)
    _, out2 = run(capsys, *argv)
    assert out1 == out2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["group", "h", "--group", "z2", "--degree", "2"])  # --coeff missing
    assert err.value.code == EXIT_USAGE


def test_text_format(capsys):
    code, out = run(capsys, "group", "h", "--group", "z2", "--coeff", "z2",
                    "--degree", "1", "--format", "text")
    assert code == EXIT_OK
    assert "invariant_factors" in out and "{" not in out.split("\n")[0]


def test_golden_report_group_h(capsys, monkeypatch):
    # pins the report schema byte-for-byte
    monkeypatch.delenv("TOOLKIT_THREADS", raising=False)
    code, out = run(capsys, "group", "h", "--group", "z2", "--coeff", "z2",
                    "--degree", "2")
    golden = (
        '{"command": "group h --group z2 --coeff z2 --degree 2", "inputs": {}, '
        '"result": {"coefficients": [2], "degree": 2, "group": "z2", '
        '"invariant_factors": [2], "order": 2, "trivial": false}, '
        '"threads": 1, "version": "0.1.0"}'
    )
    assert out.strip() == golden


def test_golden_report_boost_generation(capsys, monkeypatch):
    monkeypatch.delenv("TOOLKIT_THREADS", raising=False)
    code, out = run(capsys, "spacetime", "boost-generation")
    golden = (
        '{"command": "spacetime boost-generation", "inputs": {}, '
        '"result": {"algebra_dim": 10, "closure_dim": 10, "success": true, '
        '"wedge_count": 6, "wedges": "six"}, "threads": 1, "version": "0.1.0"}'
    )
    assert out.strip() == golden


def test_group_extension_build_writes_reloadable_table(capsys, tmp_path):
    from cohomkit.ext import CentralExtensionTable

    w = _nontrivial_cocycle_file(tmp_path)
    out = tmp_path / "ext.json"
    code, rep = run_json(capsys, "group", "extension", "build", "--group", "z2",
                         "--coeff", "z2", "--cocycle", str(w), "--out", str(out))
    assert code == EXIT_OK
    reloaded = CentralExtensionTable.from_json(out.read_text())
    reloaded.validate()
    assert reloaded.to_json() == out.read_text()
