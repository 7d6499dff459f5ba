import json

import numpy as np
import pytest

from sqnormal.blocks import BlockS1, CanonicalForm, assemble, forms_close
from sqnormal.cli import format_complex, format_defect, format_real, main
from sqnormal.fileio import (
    MatrixFormatError,
    matrix_to_json,
    parse_matrix_json,
    read_form,
    read_matrix,
    write_form,
    write_matrix,
)


@pytest.fixture
def mat(tmp_path):
    counter = iter(range(10**6))

    def make(M):
        path = tmp_path / f"m{next(counter)}.json"
        write_matrix(path, np.asarray(M))
        return str(path)

    return make


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


# --- file formats ------------------------------------------------------------


def test_matrix_round_trip(tmp_path):
    M = np.array([[1 + 2j, 0], [-1j, 3.5]])
    write_matrix(tmp_path / "a.json", M)
    np.testing.assert_array_equal(read_matrix(tmp_path / "a.json"), M)
    R = np.array([[1.0, -2.0], [0.25, 3.0]])
    write_matrix(tmp_path / "b.json", R)
    out = read_matrix(tmp_path / "b.json")
    assert out.dtype == np.float64
    np.testing.assert_array_equal(out, R)


def test_nested_rows():
    M = parse_matrix_json({"rows": 2, "cols": 2, "complex": True, "data": [[[1, 0], [0, 1]], [[0, 0], 2]]})
    np.testing.assert_array_equal(M, [[1, 1j], [0, 2]])


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"rows": 2, "cols": 2},
        {"rows": 2, "cols": 2, "data": [1, 2, 3]},
        {"rows": 0, "cols": 0, "data": []},
        {"rows": 1, "cols": 1, "data": ["x"]},
        {"rows": 1, "cols": 1, "complex": True, "data": [[1, 2, 3]]},
        {"rows": 1, "cols": 1, "data": [True]},
    ],
)
def test_malformed_json(obj):
    with pytest.raises(MatrixFormatError):
        parse_matrix_json(obj)


def test_whitespace_format(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("# comment\n0 1\n0 0\n")
    np.testing.assert_array_equal(read_matrix(p), [[0, 1], [0, 0]])
    p.write_text("0 1\n0\n")
    with pytest.raises(MatrixFormatError):
        read_matrix(p)


def test_form_file(tmp_path):
    F = CanonicalForm((BlockS1(1j, 2),))
    write_form(tmp_path / "f.json", F)
    assert read_form(tmp_path / "f.json") == F


def test_matrix_to_json_shape():
    assert matrix_to_json(np.zeros((2, 3)))["cols"] == 3


# --- formatting ----------------------------------------------------------------


def test_formatting():
    assert format_defect(0) == "0"
    assert format_defect(2**0.5) == "1.414e0"
    assert format_defect(9.9996) == "1.000e1"
    assert format_defect(2.5e-13) == "2.500e-13"
    assert format_real(1.0) == "1"
    assert format_real(-0.0) == "0"
    assert format_complex(1 + 0j) == "1+0i"
    assert format_complex(0.5 - 2j) == "0.5-2i"


# --- check ---------------------------------------------------------------------


def test_check_examples(capsys, mat):
    code, out, _ = run(capsys, "check", mat(np.eye(2, k=1)))
    assert (code, out) == (0, "squared-normal: yes, defect 0")
    code, out, _ = run(capsys, "check", mat(np.eye(3, k=1)))
    assert (code, out) == (2, "squared-normal: no, defect 1.414e0")


def test_truncated_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"rows": 2, "cols": 2, "data": [1, 0')
    assert run(capsys, "check", p)[0] == 3
    assert run(capsys, "check", tmp_path / "missing.json")[0] == 3


def test_non_square(capsys, mat):
    assert run(capsys, "check", mat(np.ones((2, 3))))[0] == 3


def test_canon_tol_env(capsys, mat, monkeypatch):
    # a huge tolerance accepts J3
    path = mat(np.eye(3, k=1))
    monkeypatch.setenv("CANON_TOL", "10")
    assert run(capsys, "check", path)[0] == 0
    monkeypatch.setenv("CANON_TOL", "1e-10")
    assert run(capsys, "check", path)[0] == 2
    assert run(capsys, "check", path, "--tol", "10")[0] == 0


# --- canon ---------------------------------------------------------------------


def test_canon_examples(capsys, mat):
    path = mat([[1.0, 1.0], [0.0, -1.0]])
    assert run(capsys, "canon", path, "--form", "a")[:2] == (0, "S1 mu=1+0i r=1")
    assert run(capsys, "canon", path, "--form", "b")[:2] == (0, "S2 nu=0.381966+0i tau=1.618034")
    assert run(capsys, "canon", mat([[0.0, -2.0], [2.0, 0.0]]), "--form", "real")[:2] == (0, "RealRotation a=0 b=2")


def test_canon_errors(capsys, mat):
    assert run(capsys, "canon", mat(np.eye(3, k=1)))[0] == 2
    assert run(capsys, "canon", mat([[1j]]), "--form", "real")[0] == 2
    assert run(capsys, "canon", mat(np.eye(2)), "--form", "c")[0] == 3
    assert run(capsys, "canon", mat(np.eye(2)), "--cluster-tol", "-1")[0] == 3


def test_canon_ambiguity_exit(capsys, mat):
    # eigenvalues of A^2 at 1 and 1 + 4e-8, between one and three merge thresholds
    A = np.diag([1.0, np.sqrt(1 + 4e-8)])
    assert run(capsys, "canon", mat(A))[0] == 4


def test_canon_witness_and_json(capsys, mat, tmp_path):
    A = np.array([[1.0, 1.0], [0.0, -1.0]])
    w = tmp_path / "w.json"
    code, out, _ = run(capsys, "canon", mat(A), "--json", "--witness", w)
    assert code == 0
    F = CanonicalForm.from_dict(json.loads(out))
    U = read_matrix(w)
    assert np.linalg.norm(U.conj().T @ A @ U - assemble(F)) < 1e-12


# --- similar -------------------------------------------------------------------


def test_similar_examples(capsys, mat, tmp_path):
    E12, E21 = np.eye(2, k=1), np.eye(2, k=-1)
    w = tmp_path / "w.json"
    code, out, _ = run(capsys, "similar", mat(E12), mat(E21), "--witness", w)
    assert code == 0 and out.startswith("similar: yes, witness residual")
    U = read_matrix(w)
    np.testing.assert_allclose(U.conj().T @ E12 @ U, E21, atol=1e-12)
    code, out, _ = run(capsys, "similar", mat([[0, 2], [0, 0]]), mat([[0, 1], [0, 0]]))
    assert (code, out) == (1, "similar: no")


def test_similar_orthogonal(capsys, mat):
    assert run(capsys, "similar", "--orthogonal", mat(np.diag([1.0, -1.0])), mat([[0.0, 1.0], [1.0, 0.0]]))[0] == 0
    assert run(capsys, "similar", "--orthogonal", mat([[1j]]), mat([[1j]]))[0] == 2


def test_similar_preconditions(capsys, mat):
    assert run(capsys, "similar", mat(np.eye(2)), mat(np.eye(3)))[0] == 2
    assert run(capsys, "similar", mat(np.eye(3)), mat(np.eye(3, k=1)))[0] == 2


# --- gen -----------------------------------------------------------------------


def test_gen_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "gen", a, "--n", 4, "--seed", 7)[0] == 0
    assert run(capsys, "gen", b, "--n", 4, "--seed", 7)[0] == 0
    assert a.read_text() == b.read_text()
    assert (tmp_path / "a.json.form.json").read_text() == (tmp_path / "b.json.form.json").read_text()


def test_gen_sidecar_matches_canon(capsys, tmp_path):
    out = tmp_path / "g.json"
    side = tmp_path / "side.json"
    assert run(capsys, "gen", out, "--n", 6, "--seed", 3, "--form-out", side)[0] == 0
    code, text, _ = run(capsys, "canon", out, "--json")
    assert code == 0
    assert forms_close(CanonicalForm.from_dict(json.loads(text)), read_form(side), 1e-7, 1e-7)


def test_gen_real(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert run(capsys, "gen", out, "--n", 5, "--seed", 1, "--real")[0] == 0
    assert read_matrix(out).dtype == np.float64
    assert read_form(str(out) + ".form.json").flavor == "real"


def test_gen_errors(capsys, tmp_path):
    assert run(capsys, "gen", tmp_path / "x.json", "--n", 0)[0] == 3
    assert run(capsys, "gen", tmp_path / "x.json", "--n", 2, "--params", "{bad")[0] == 3
    assert run(capsys, "gen", tmp_path / "x.json", "--n", 2, "--params", '{"nope": 1}')[0] == 3
    assert run(capsys, "gen", tmp_path / "no" / "such" / "dir.json", "--n", 2)[0] == 3


def test_gen_params(capsys, tmp_path):
    out = tmp_path / "p.json"
    assert run(capsys, "gen", out, "--n", 4, "--params", '{"coupling": 1.0, "zero_prob": 0.0}')[0] == 0
    assert all(b.kind == "S1" for b in read_form(str(out) + ".form.json").blocks)


def test_missing_command(capsys):
    assert run(capsys)[0] == 3
