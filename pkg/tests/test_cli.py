from __future__ import annotations

import json

import pytest

from jcoker.cli import THREADS_ENV, main
from jcoker.formats import load_tensor, save_tensor
from jcoker.free_lie import commutator
from jcoker.tensor import SparseTensor, tensor_product


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kernel_chain_pass(capsys):
    code, out, err = run(capsys, "verify-kernel-chain", "--n", "4", "--k", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["ranks"]["kspan_rank"] == 70
    assert {"n", "k", "family_counts", "theta_checks", "ranks"} <= set(rep)
    assert err.startswith("PASS")


def test_kernel_chain_out_of_range_warns(capsys):
    code, out, err = run(capsys, "verify-kernel-chain", "--n", "3", "--k", "2")
    assert code == 0 and "stable range" in err


def test_kernel_chain_usage(capsys):
    code, _, err = run(capsys, "verify-kernel-chain", "--n", "4", "--k", "1")
    assert code == 2 and "k" in err


def test_cobracket_deterministic(capsys, tmp_path):
    args = ["verify-cobracket-identity", "--g", "2", "--k", "2", "--samples", "20", "--seed", "3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["equal"] == 21


def test_cobracket_requires_seed(capsys):
    code, _, _ = run(capsys, "verify-cobracket-identity", "--g", "2", "--k", "2")
    assert code == 2


def test_hook_refuses_small_genus(capsys):
    code, out, err = run(capsys, "verify-hook", "--g", "8")
    assert code == 2 and "g ≥ 9" in err and out == ""


@pytest.mark.parametrize("argv,expected", [
    (["--partition", "1^5", "--n", "5", "--k", "5"], 1),
    (["--partition", "1^4", "--n", "4", "--k", "4"], 0),
    (["--partition", "1^5", "--n", "5", "--p", "2", "--q", "3"], 0),
])
def test_multiplicity(capsys, argv, expected):
    code, out, _ = run(capsys, "multiplicity", *argv)
    assert code == 0 and json.loads(out)["multiplicity"] == expected


def test_multiplicity_usage(capsys):
    assert run(capsys, "multiplicity", "--partition", "1^3", "--n", "3")[0] == 2
    assert run(capsys, "multiplicity", "--partition", "x", "--n", "3", "--k", "3")[0] == 2
    assert run(capsys, "multiplicity", "--partition", "1^3", "--n", "2", "--k", "3")[0] == 2


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--n", "4", "--k", "2")
    rep = json.loads(out)
    assert code == 0
    assert (rep["lie_dim"], rep["cyclic_dim"], rep["theta1_rank"], rep["kernel_dim"], rep["kspan_rank"]) == (20, 10, 10, 70, 70)
    assert run(capsys, "dims", "--n", "2", "--k", "2")[0] == 0
    assert run(capsys, "dims", "--n", "1", "--k", "1")[0] == 0


def test_explore_k9(capsys):
    code, out, _ = run(capsys, "explore-k9", "--g", "10", "--ell", "2")
    assert code == 0 and json.loads(out)["theta"]["2"]["terms"] == 0
    assert run(capsys, "explore-k9", "--g", "9")[0] == 2


def test_theta_on_file(capsys, tmp_path):
    t = tensor_product(SparseTensor.monomial(3, (1,)), commutator(3, 1, 2, 3))
    path = tmp_path / "t.jsonl"
    save_tensor(t, path)
    dest = tmp_path / "theta.jsonl"
    code, out, _ = run(capsys, "theta", "--input", str(path), "--ell", "2", "--tensor-out", str(dest))
    rep = json.loads(out)
    assert code == 0 and rep["phi_terms"] == 2 and rep["theta_terms"] == 2
    assert load_tensor(dest).pair_terms() == {((2,), (3,)): -1, ((3,), (2,)): -1}
    assert run(capsys, "theta", "--input", str(path), "--ell", "2", "--g", "2")[0] == 2
    assert run(capsys, "theta", "--input", str(tmp_path / "missing"), "--ell", "1")[0] == 2


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "zero")
    assert run(capsys, "dims", "--n", "2", "--k", "2")[0] == 2
    monkeypatch.setenv(THREADS_ENV, "1")
    assert run(capsys, "dims", "--n", "2", "--k", "2")[0] == 0
    assert run(capsys, "dims", "--n", "2", "--k", "2", "--threads", "0")[0] == 2


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2
