from __future__ import annotations

import itertools

import numpy as np
import pytest

from jcoker.contract import (
    delta_alg_framed,
    delta_alg_full,
    delta_alg_reduced,
    morita_trace,
    phi,
    theta_ell,
    theta_sum_per_bidegree,
    trace_c,
    verify_cobracket_identity,
)
from jcoker.cyclic import BiCyclicTensor, pi_k
from jcoker.free_lie import commutator
from jcoker.genset import GeneratorSpec, build_generator, enumerate_generators
from jcoker.tensor import DualBasisContext, SparseTensor, SymplecticContext, cyclic_symmetrizer, random_tensor, tensor_product


def dual_star(n, i, tail):
    return tensor_product(SparseTensor.monomial(n, (i,)), commutator(n, *tail))


def test_phi_examples():
    ctx = DualBasisContext(3)
    assert phi(ctx, dual_star(3, 1, (1, 2)), 1).terms() == {(2,): 1}
    assert phi(ctx, dual_star(3, 1, (1, 2, 3)), 2).terms() == {(2, 3): -1, (3, 2): -1}
    sym = SymplecticContext(1)
    assert phi(sym, SparseTensor.monomial(2, (1, 2, 1)), 1).terms() == {(1,): 1}


@pytest.mark.parametrize("k", range(1, 7))
def test_phi_subset_sum_formula(k):
    n = 4 if k <= 4 else 3
    ctx = DualBasisContext(n)
    i = 1
    others = range(2, n + 1)
    tails = list(itertools.product(others, repeat=k))[:40]
    for tail in tails:
        t = dual_star(n, i, (i,) + tail)
        for ell in range(1, k + 2):
            expected = {}
            for S in itertools.combinations(range(k), ell - 1):
                back = tuple(tail[p] for p in reversed(S))
                rest = tuple(tail[p] for p in range(k) if p not in S)
                word = back + rest
                expected[word] = expected.get(word, 0) + (-1) ** (ell - 1)
            want = SparseTensor.from_terms(n, k, expected)
            assert phi(ctx, t, ell) == want


def test_theta_on_k1_and_k2():
    ctx = DualBasisContext(5)
    k1 = build_generator(GeneratorSpec("K1", 5, 2, 1, (2, 3, 4)))
    assert trace_c(ctx, k1).is_zero()
    k2 = build_generator(GeneratorSpec("K2", 5, 3, 1, (2, 3, 4)))
    for ell in (2, 3):
        assert phi(ctx, k2, ell).is_zero()
    last = phi(ctx, k2, 4)
    assert last == -commutator(5, 2, 3, 4) or last == commutator(5, 2, 3, 4)
    assert not last.is_zero()
    assert theta_ell(ctx, k2, 4).is_zero()


def _to_symplectic(t: SparseTensor, g: int) -> SparseTensor:
    """Replace the slot-1 dual index i by the a ∈ H with ⟨a, e_j⟩ = δ_ij."""
    n = 2 * g
    words = t.words.copy()
    first = words[:, 0].astype(np.int64)
    words[:, 0] = n + 1 - first
    sign = np.where(first <= g, -1, 1)
    return SparseTensor(n, t.degree, words, t.coeffs * sign)


@pytest.mark.parametrize("g,k", [(2, 2), (3, 2), (3, 3)])
def test_trace_of_generators_vanishes_symplectically(g, k):
    ctx = SymplecticContext(g)
    dual = DualBasisContext(2 * g)
    specs = list(enumerate_generators(2 * g, k))[::7]
    for spec in specs:
        x = build_generator(spec)
        y = _to_symplectic(x, g)
        assert phi(ctx, y, 1) == phi(dual, x, 1)
        assert trace_c(ctx, y).is_zero()


def test_trace_of_zero():
    ctx = SymplecticContext(2)
    assert trace_c(ctx, SparseTensor.zero(4, 4)).is_zero()
    assert morita_trace(ctx, SparseTensor.zero(4, 4)).is_zero()


def test_morita_nonzero_implies_trace_nonzero():
    ctx = SymplecticContext(2)
    rng = np.random.default_rng(4)
    seen = 0
    for _ in range(100):
        t = random_tensor(rng, 4, 5, 4)
        if not morita_trace(ctx, t).is_zero():
            seen += 1
            assert not trace_c(ctx, t).is_zero()
        if trace_c(ctx, t).is_zero():
            assert morita_trace(ctx, t).is_zero()
    assert seen


def test_delta_examples():
    ctx = SymplecticContext(2)
    out = delta_alg_full(ctx, SparseTensor.monomial(4, (1, 2, 1, 2)))
    assert all(v.is_zero() for v in out.values())
    rng = np.random.default_rng(0)
    iso = SparseTensor(4, 6, rng.integers(1, 3, size=(10, 6)), np.arange(1, 11))
    assert all(v.is_zero() for v in delta_alg_full(ctx, iso).values())
    red = delta_alg_reduced(ctx, SparseTensor.zero(4, 5))
    assert all(v.is_zero() for v in red.values())


def test_delta_bidegrees():
    ctx = SymplecticContext(2)
    t = random_tensor(np.random.default_rng(2), 4, 6, 10)
    full = delta_alg_full(ctx, t)
    assert sorted(full) == [(1, 3), (2, 2), (3, 1)]
    assert all(p >= 1 and q >= 1 and isinstance(v, BiCyclicTensor) for (p, q), v in full.items())


@pytest.mark.parametrize("g,k", [(1, 2), (2, 2), (2, 3), (2, 4), (3, 4), (2, 5), (2, 6)])
def test_delta_forms_agree(g, k):
    ctx = SymplecticContext(g)
    rng = np.random.default_rng(100 + g * 10 + k)
    for _ in range(25):
        t = random_tensor(rng, 2 * g, k + 2, 6)
        full = delta_alg_full(ctx, t)
        red = delta_alg_reduced(ctx, t)
        assert set(full) == set(red)
        for bd in full:
            assert full[bd] == red[bd]


@pytest.mark.parametrize("g,k", [(2, 2), (2, 3), (1, 4)])
def test_framed_delta_is_full_theta_sum(g, k):
    ctx = SymplecticContext(g)
    rng = np.random.default_rng(7)
    for _ in range(10):
        t = random_tensor(rng, 2 * g, k + 2, 5)
        framed = delta_alg_framed(ctx, t)
        sums = theta_sum_per_bidegree(ctx, cyclic_symmetrizer(t), range(1, k + 2))
        assert set(framed) == set(sums)
        for bd in framed:
            assert framed[bd] == sums[bd]
        # the boundary slots carry c_k of the rotated tensor
        c = trace_c(ctx, cyclic_symmetrizer(t))
        assert framed[(0, k)].pair_terms() == {((), w): v for w, v in c.items()}


def test_reduced_on_zeta_invariant_scales():
    ctx = SymplecticContext(2)
    t = cyclic_symmetrizer(random_tensor(np.random.default_rng(3), 4, 6, 5))
    red = delta_alg_reduced(ctx, t)
    sums = theta_sum_per_bidegree(ctx, t, range(2, 5))
    for bd in red:
        assert red[bd] == 6 * sums[bd]


def test_verify_cobracket_identity_report():
    rep = verify_cobracket_identity(2, 3, samples=30, seed=4)
    assert rep["passed"] and rep["equal"] == 31
    assert verify_cobracket_identity(2, 3, samples=30, seed=4) == rep
