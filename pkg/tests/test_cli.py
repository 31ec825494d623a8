import json

import pytest

from copulatope import serialize
from copulatope.cli import main
from copulatope.copula_ops import pi_restriction, w_restriction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_vertices_count_line(tmp_path, capsys):
    out_file = tmp_path / "u33.ext"
    code, out, _ = run(capsys, "vertices", "udc:3x3:density", "-o", str(out_file))
    assert code == 0
    assert out.strip().splitlines()[-1] == "7"
    v = serialize.read_vrep_cdd(out_file.read_text())
    assert len(v) == 7


def test_minimal_facet_count(capsys):
    code, out, _ = run(capsys, "minimal", "dq:3x4:density:defining")
    assert code == 0
    assert out.strip() == "16 facets"


def test_tau_det(capsys):
    code, out, _ = run(capsys, "tau-det", "3", "4")
    assert code == 0 and out.strip() == "-4"


def test_family_file_roundtrip(tmp_path, capsys):
    ine = tmp_path / "udc33.ine"
    code, _, _ = run(capsys, "family", "udc:3x3:grid:defining", "-o", str(ine))
    assert code == 0
    code, out, _ = run(capsys, "vertices", str(ine))
    assert code == 0
    assert out.strip().splitlines()[-1] == "7"


def test_member_exit_codes(capsys):
    pi = ",".join(str(x) for x in pi_restriction(3, 3).to_vector())
    code, out, _ = run(capsys, "member", "udc:3x3:grid:defining", "--point", pi)
    assert code == 0 and "member" in out
    from copulatope.copula_ops import min_restriction

    mn = ",".join(str(x) for x in min_restriction(3, 3).to_vector())
    code, _, err = run(capsys, "member", "udc:3x3:grid:defining", "--point", mn)
    assert code == 1 and "violates" in err


def test_is_vertex_exit_codes(capsys):
    w = ",".join(str(x) for x in w_restriction(3, 3).to_vector())
    code, _, _ = run(capsys, "is-vertex", "udc:3x3:grid:defining", "--point", w)
    assert code == 0
    pi = ",".join(str(x) for x in pi_restriction(3, 3).to_vector())
    # the independence grid is a vertex of the ultramodular family but an
    # interior point of the plain copula family
    code, _, _ = run(capsys, "is-vertex", "dc:3x3:grid:defining", "--point", pi)
    assert code == 1


def test_extend_and_rho(tmp_path, capsys):
    grid = tmp_path / "w.json"
    grid.write_text(serialize.dumps(w_restriction(2, 2)))
    code, out, _ = run(capsys, "extend", str(grid), "--u", "1/2", "--v", "1/2")
    assert code == 0 and out.strip() == "0"
    code, out, _ = run(capsys, "rho", str(grid))
    assert code == 0 and out.strip() == "-3/4"


def test_maxent_json(capsys):
    code, out, _ = run(capsys, "maxent", "birkhoff:3x3", "--rho-target", "0")
    assert code == 0
    payload = json.loads(out)
    assert abs(float(payload["density"][0][0]) - 1 / 9) < 1e-8
    assert float(payload["kkt_residual"]) <= 1e-8


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--family", "udc", "--pmax", "3")
    assert code == 0
    assert out.splitlines()[3] == "3,udc,7,3,4"


def test_table1_deterministic(capsys):
    code1, out1, _ = run(capsys, "table1", "--cells", "3x3")
    code2, out2, _ = run(capsys, "table1", "--cells", "3x3")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "ok" in out1


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "vertices", "nonsense:family:spec")
    assert code == 2 and "error" in err


def test_argparse_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
