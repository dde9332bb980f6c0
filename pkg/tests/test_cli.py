import json

import pytest

from nlcheck.cli import main

PQ_SPEC = """\
family = pq
sigma = 1,2,3
p = 1
q = 1
r = 2
cs = 1, -1
w = z0
A = z0^3+z1^3+z2^3+z3^3
"""


def run(capsys, *argv):
    code = main([argv[0], "--json", *argv[1:]])
    out = capsys.readouterr().out
    return code, json.loads(out)


def _without_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def test_hilbert_fermat(capsys):
    code, rep = run(capsys, "hilbert")
    assert code == 0
    assert rep["results"]["hilbert"][:12] == [1, 4, 10, 19, 28, 34, 34, 28, 19, 10, 4, 1]
    assert all(c["pass"] for c in rep["checks"])


def test_singular_surface_exit_code(capsys):
    code, rep = run(capsys, "hilbert", "--f", "z0^4")
    assert code == 2
    assert rep["results"]["error"]["type"] == "NotTransversal"


def test_parse_error_exit_code(capsys):
    code, _ = run(capsys, "duality", "--f", "z0^4+*z1")
    assert code == 2


def test_annihilator_examples(capsys):
    code, rep = run(capsys, "annihilator", "--g", "z0*z1*z2")
    assert code == 0
    code, rep = run(capsys, "annihilator")
    assert code == 2 and rep["results"]["error"]["type"] == "Degenerate"


def test_family_pq_from_file(capsys, tmp_path):
    path = tmp_path / "member.spec"
    path.write_text(PQ_SPEC)
    code, rep = run(capsys, "family", "--spec", f"@{path}")
    assert code == 0
    assert rep["results"]["codim"] == 10
    assert rep["results"]["mult_kernel_dim"] == 2
    assert rep["results"]["root_of_unity_condition"] is True


def test_residues_xi(capsys):
    code, rep = run(capsys, "residues", "--spec", PQ_SPEC, "--g", "xi", "--pair", "12")
    assert code == 0
    assert all(c["pass"] for c in rep["checks"])


def test_cycles_delta(capsys):
    code, rep = run(capsys, "cycles", "--f", "z0^4+z1^4+z2^4+z3^4+z0*z1*z2*z3", "--symbol", "delta")
    assert code == 0
    assert rep["results"]["boundary"] == {"0:delta": True}


def test_thresholds_range(capsys):
    code, rep = run(capsys, "thresholds", "--range", "3..6")
    assert code == 0
    assert rep["results"]["thresholds"]["4"]["t1"] is True
    assert rep["results"]["thresholds"]["3"]["t1"] is False


def test_reports_are_deterministic(capsys):
    _, a = run(capsys, "duality", "--seed", "7")
    _, b = run(capsys, "duality", "--seed", "7")
    assert _without_timing(a) == _without_timing(b)


def test_out_file_written(capsys, tmp_path):
    target = tmp_path / "report.json"
    code = main(["classify", "--w", "z0", "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    assert json.loads(target.read_text())["results"]["member"] is False


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
