import json
import subprocess
import sys

import pytest

from coronab.cli import (EXIT_EXHAUSTED, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, InputError, parse_instance,
                         run)

WORKED = {
    "blaschke": [{"zero": [0, 0], "mult": 2}],
    "functions": [{"num": [[0, 0], [0, 0], [1, 0]]}, {"num": [[1, 0], [0, 0], [0, 0], [-1, 0]]}],
    "mode": "solve",
}


def write(tmp_path, doc, name="inst.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def invoke(argv, capsys):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def poly_of(encoded):
    return [complex(*c) for c in encoded]


def test_solve_worked_example(tmp_path, capsys):
    code, rep, _ = invoke(["solve", write(tmp_path, WORKED)], capsys)
    assert code == EXIT_OK and rep["exit_code"] == 0 and rep["status"] == "ok"
    g1, g2 = rep["g"]
    assert poly_of(g1["den"]) == [1]
    assert poly_of(g1["num"]) == pytest.approx([0, 0, 0, 0, 1], abs=1e-12)
    assert poly_of(g2["num"]) == pytest.approx([1, 0, 0, 1], abs=1e-12)
    assert rep["residual"] <= 1e-12
    assert max(m["defect"] for m in rep["membership_defects"]) <= 1e-12


def test_solve_ideal(tmp_path, capsys):
    doc = {"blaschke": [{"zero": [0, 0], "mult": 2}],
           "functions": [{"num": [[1, 0], [0, 0], [-0.5, 0]]}, {"num": [[0, 0], [0, 0], [1, 0]]}]}
    code, rep, _ = invoke(["solve-ideal", write(tmp_path, doc)], capsys)
    assert code == EXIT_OK and rep["solver_path"] == "ideal"
    assert rep["extras"]["bound_holds"] is True


def test_check_common_zero_is_negative(tmp_path, capsys):
    doc = {"blaschke": [{"zero": [0, 0], "mult": 2}],
           "functions": [{"num": [[0, 0], [0, 0], [1, 0]]}, {"num": [[0, 0], [0, 0], [0, 0], [1, 0]]}]}
    code, rep, _ = invoke(["check", write(tmp_path, doc)], capsys)
    assert code == EXIT_NEGATIVE and rep["status"] == "no-corona"
    assert rep["delta_measured"] <= 1e-3


def test_check_non_member(tmp_path, capsys):
    doc = {"blaschke": [{"zero": [0, 0], "mult": 2}], "functions": [{"num": [[0, 0], [1, 0]]}]}
    code, rep, _ = invoke(["check", write(tmp_path, doc)], capsys)
    assert code == EXIT_NEGATIVE and rep["status"] == "non-member"


def test_solve_without_solution(tmp_path, capsys):
    doc = {"blaschke": [{"zero": [0.5, 0], "mult": 1}],
           "functions": [{"num": [[0, 0], [0, 0], [1, 0]]}, {"num": [[0, 0], [0, 0], [0, 0], [1, 0]]}]}
    code, rep, _ = invoke(["solve", write(tmp_path, doc)], capsys)
    assert code == EXIT_NEGATIVE and rep["status"] in ("no-solution", "non-member")


def test_norms(tmp_path, capsys):
    doc = {"blaschke": [{"zero": [0, 0], "mult": 1}],
           "functions": [{"num": [[1, 0]], "den": [[1, 0], [-0.5, 0]]}]}
    code, rep, _ = invoke(["norms", write(tmp_path, doc)], capsys)
    assert code == EXIT_OK and rep["sup_norms"][0] == pytest.approx(2, abs=1e-9)


def test_reduce(tmp_path, capsys):
    doc = {"blaschke": [{"zero": [0, 0], "mult": 2}],
           "functions": [{"num": [[1, 0], [0, 0], [-0.5, 0]]}, {"num": [[0, 0], [0, 0], [1, 0]]}]}
    code, rep, _ = invoke(["reduce", write(tmp_path, doc)], capsys)
    assert code == EXIT_OK and rep["inverse_margin"] == pytest.approx(0.5, abs=1e-6)


def test_reduce_exhausted(tmp_path, capsys):
    # f + c g = (1 + c) f keeps the zeros of f at +-0.1i for every constant
    doc = {"blaschke": [{"zero": [0, 0], "mult": 2}],
           "functions": [{"num": [[0.01, 0], [0, 0], [1, 0]]}, {"num": [[0.01, 0], [0, 0], [1, 0]]}]}
    code, rep, _ = invoke(["reduce", "--max-degree", "0", write(tmp_path, doc)], capsys)
    assert code == EXIT_EXHAUSTED and rep["status"] == "search-exhausted"


def test_reduce_needs_two_functions(tmp_path, capsys):
    code, rep, err = invoke(["reduce", write(tmp_path, {**WORKED, "functions": WORKED["functions"][:1]})],
                            capsys)
    assert code == EXIT_INPUT and rep is None and "functions" in err


@pytest.mark.parametrize("text, where", [
    ('{"blaschke": [}', "line 1"),
    ('{\n"blaschke": [{"zero": [0, 0]}],\n"functions": [{"num": [[1, 0]]},]\n}', "line 3"),
    ('{"functions": [{"num": [[1, 0]]}]}', "blaschke"),
    ('{"blaschke": [{"zero": [0, 0], "mult": 1.5}], "functions": [{"num": [[1, 0]]}]}', "blaschke[0].mult"),
    ('{"blaschke": [{"zero": [2, 0]}], "functions": [{"num": [[1, 0]]}]}', "blaschke"),
    ('{"blaschke": [{"zero": [0, 0]}], "functions": [{"num": [[1, 0], "x"]}]}', "functions[0].num"),
    ('{"blaschke": [{"zero": [0, 0]}], "functions": [{"num": [[1, 0]], "den": [[0.5, 0], [1, 0]]}]}',
     "functions[0].den"),
    ('{"blaschke": [{"zero": [0, 0]}], "functions": [{"num": [[1, 0]]}], "mode": "fly"}', "mode"),
])
def test_parse_errors_name_location(text, where):
    with pytest.raises(InputError) as exc:
        parse_instance(text)
    assert where in str(exc.value)


def test_input_error_exit_code(tmp_path, capsys):
    code, _, err = invoke(["solve", write(tmp_path, "{not json")], capsys)
    assert code == EXIT_INPUT and "line 1" in err
    code, _, _ = invoke(["solve", tmp_path / "missing.json"], capsys)
    assert code == EXIT_INPUT


def test_numbers_round_trip_through_the_grammar(tmp_path, capsys):
    code, rep, _ = invoke(["solve", write(tmp_path, WORKED)], capsys)
    text = json.dumps(rep)
    assert json.loads(text) == rep
    # floats printed by json use the shortest repr, which round-trips exactly
    for x in (rep["residual"], *rep["g_norms"], rep["delta_measured"]):
        assert float(repr(x)) == x and float(f"{x:.17g}") == x


def test_out_flag_and_determinism(tmp_path, capsys):
    path = write(tmp_path, WORKED)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["solve", str(path), "--out", str(a)]) == EXIT_OK
    assert run(["solve", str(path), "--out", str(b)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert a.read_bytes() == b.read_bytes()


def test_probe_rows_and_determinism(capsys):
    argv = ["probe-conjecture", "--n-max", "2", "--instances", "3", "--seed", "5"]
    code, rep, _ = invoke(argv, capsys)
    assert code == EXIT_OK and len(rep["records"]) == 6
    assert [r["n"] for r in rep["records"]] == [1, 1, 1, 2, 2, 2]
    assert all(r["elapsed"] is None for r in rep["records"])
    assert rep["records"][4]["seed"] == [5, 2, 1]
    _, again, _ = invoke(argv, capsys)
    assert again == rep


def test_probe_rows_do_not_depend_on_range():
    # row (n, i) is seeded by [seed, n, i] alone
    from coronab.cli import probe_one
    from coronab.verify import DEFAULT_GRID
    a = probe_one(2, 1, 5, "constrained", 0.05, 0.5, DEFAULT_GRID)
    b = probe_one(2, 1, 5, "constrained", 0.05, 0.5, DEFAULT_GRID)
    assert a == b


def test_module_entry_point(tmp_path):
    path = write(tmp_path, WORKED)
    out = subprocess.run([sys.executable, "-m", "coronab", "solve", str(path)],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["status"] == "ok"
