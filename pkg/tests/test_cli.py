import json
import random
import subprocess
import sys

import pytest
from helpers import quad_tower, random_element, random_group, tower_for

from pvext import case1 as C1
from pvext import case2 as C2
from pvext import case3 as C3
from pvext.cli import main
from pvext.serialize import dumps, element_to_json, group_to_json, make_tower
from pvext.fields import BaseField


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(dumps(obj), encoding="utf-8")
    return str(p)


def test_invariant_of_w_over_f7(tmp_path, capsys):
    T = quad_tower("F7")
    path = write(tmp_path, "w.json", element_to_json(C1.make_w1(T)))
    code, out = run(capsys, "invariant", path)
    res = json.loads(out)
    assert code == 0
    assert res["F"] == [0, 1, 0] and res["delta"] == 1 and res["semistable"] is True
    assert res["label"] == "trivial"


def test_invariant_rationals_and_case2(tmp_path, capsys):
    T = tower_for(2, "Q")
    path = write(tmp_path, "wa.json", element_to_json(C2.make_w_alpha2(T, (0, 1))))
    code, out = run(capsys, "invariant", path)
    res = json.loads(out)
    assert code == 0 and res["delta"] == -64 and res["label"] == "quadratic(-1)"


def test_rep_trivial_case3_is_w(capsys):
    code, out = run(capsys, "rep", "--case", "3", "--fiber", "trivial", "--beta", "1,1,1")
    T = make_tower(BaseField(0), [1, 0, 1])
    assert code == 0
    assert json.loads(out) == element_to_json(C3.make_w3(T))


def test_rep_with_fraction_beta(capsys):
    code, out = run(capsys, "rep", "--case", "2", "--fiber", "trivial", "--beta", "1/2,3")
    assert code == 0
    assert json.loads(out)["x111"] == "1/2"


def test_rep_over_finite_field(capsys):
    code, out = run(capsys, "rep", "--case", "3", "--fiber", "cyclic_cubic", "--f", "1,0,0,2",
                    "--base", "7", "--tower", "1,0,1")
    assert code == 0
    assert json.loads(out)["tower"] == {"base": 7, "poly": [1, 0, 1]}


@pytest.mark.parametrize("case", [1, 2, 3])
def test_act_round_trip_is_byte_identical(tmp_path, capsys, case):
    rng = random.Random(case)
    T = tower_for(case, "F7")
    x, g = random_element(case, T, rng), random_group(case, T, rng)
    xp = write(tmp_path, "x.json", element_to_json(x))
    gp = write(tmp_path, "g.json", group_to_json(g))
    yp = str(tmp_path / "y.json")
    assert main(["act", "--element", xp, "--group", gp, "-o", yp]) == 0
    code, out = run(capsys, "act", "--element", yp, "--group", gp, "--inverse")
    assert code == 0
    assert out == (tmp_path / "x.json").read_text(encoding="utf-8")


def _stabilizers():
    rng = random.Random(5)
    TQ, T7 = quad_tower("Q"), quad_tower("F7")
    C2T = tower_for(2, "F7")
    yield C1.stab1_elem("w", TQ, (TQ.gen + 2, 3)), C1.make_w1(TQ)
    K = C1.composite1(TQ, (0, 2))
    yield C1.stab1_elem("w_alpha", TQ, K.random_unit(rng), f=(0, 2)), C1.make_w_alpha1(TQ, (0, 2))
    yield C2.stab2_elem("w_alpha", C2T, C2.sample_stab2_param(C2T, (0, 1), rng), f=(0, 1)), C2.make_w_alpha2(C2T, (0, 1))
    yield C3.stab3_elem("w", T7, C3.sample_stab3_w(T7, rng)), C3.make_w3(T7)


def test_stab_check_accepts_stabilizers(tmp_path, capsys):
    for i, (g, x) in enumerate(_stabilizers()):
        xp = write(tmp_path, f"x{i}.json", element_to_json(x))
        gp = write(tmp_path, f"g{i}.json", group_to_json(g))
        code, out = run(capsys, "stab-check", "--element", xp, "--group", gp)
        assert code == 0 and json.loads(out) == {"fixes": True}


def test_stab_check_rejects_non_stabilizer(tmp_path, capsys):
    T = quad_tower("Q")
    g = C1.GrpElt1(T, [[1, 1], [0, 1]], [[1, 0], [0, 1]])
    xp = write(tmp_path, "x.json", element_to_json(C1.make_w1(T)))
    gp = write(tmp_path, "g.json", group_to_json(g))
    assert run(capsys, "stab-check", "--element", xp, "--group", gp) == (0, dumps({"fixes": False}))


def test_census_case2_q3(capsys):
    code, out = run(capsys, "census", "--case", "2", "--q", "3")
    res = json.loads(out)
    assert code == 0 and res["matches"] and res["orbit_count"] == 2


def test_outputs_are_deterministic(capsys):
    a = run(capsys, "census", "--case", "1", "--q", "2", "--seed", "4")
    b = run(capsys, "census", "--case", "1", "--q", "2", "--seed", "4")
    assert a == b


def test_errors_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, out = run(capsys, "invariant", str(bad))
    assert code == 1 and json.loads(out)["error"] == "ValidationError"
    code, out = run(capsys, "invariant", str(tmp_path / "missing.json"))
    assert code == 1
    wrong = write(tmp_path, "wrong.json", {"case": 4})
    assert run(capsys, "invariant", wrong)[0] == 1
    code, out = run(capsys, "census", "--case", "3", "--q", "3")
    assert code == 1 and json.loads(out)["error"] == "BudgetExceeded"
    code, out = run(capsys, "rep", "--case", "3", "--fiber", "quadratic", "--f", "1,0,1")
    assert code == 1 and json.loads(out)["error"] == "FiberDataMismatch"


def test_mismatched_cases_rejected(tmp_path, capsys):
    T = quad_tower("Q")
    xp = write(tmp_path, "x.json", element_to_json(C1.make_w1(T)))
    gp = write(tmp_path, "g.json", group_to_json(C3.identity3(T)))
    assert run(capsys, "act", "--element", xp, "--group", gp)[0] == 1


def test_console_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "pvext.cli", "rep", "--case", "1", "--fiber", "trivial"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["case"] == 1
