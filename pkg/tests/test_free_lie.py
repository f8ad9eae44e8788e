from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jcoker.cyclic import pi_k
from jcoker.free_lie import (
    SimpleCommutator,
    apply_left_bracketing,
    bracket_map,
    commutator,
    commutator_pattern,
    dynkin_map,
    expand_commutator,
    expand_simple_subset_formula,
    is_h_element,
    is_lie_element,
    is_zeta_invariant,
    left_bracketing_element,
    lie_dimension,
    subset_bookkeeping,
)
from jcoker.linalg import SparseIntegerMatrix, matrix_rank
from jcoker.tensor import (
    SparseTensor,
    SymplecticContext,
    cyclic_symmetrizer,
    random_tensor,
    right_multiply_group_algebra,
    tensor_product,
)


def test_commutator_examples():
    assert commutator(3, 1, 2).terms() == {(1, 2): 1, (2, 1): -1}
    assert commutator(3, 1, 2, 3).terms() == {(1, 2, 3): 1, (2, 1, 3): -1, (3, 1, 2): -1, (3, 2, 1): 1}
    assert commutator(3, 1, 1).is_zero()


def test_subset_formula_examples():
    assert expand_simple_subset_formula(1, (2, 3), 3) == commutator(3, 1, 2, 3)
    assert expand_simple_subset_formula(1, (), 3).terms() == {(1,): 1}


def test_subset_bookkeeping_example():
    fwd, back, rest, rest_back = subset_bookkeeping((1, 2, 3, 4, 5, 6), (2, 4, 5))
    assert back == (5, 4, 2)
    assert rest == (1, 3, 6)
    assert fwd == (2, 4, 5) and rest_back == (6, 3, 1)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(0, 7) if n ** (k + 1) <= 4 ** 5])
def test_subset_formula_matches_recursion(n, k):
    for idx in itertools.product(range(1, n + 1), repeat=k + 1):
        assert expand_simple_subset_formula(idx[0], idx[1:], n) == commutator(n, *idx)


def test_commutator_pattern_matches_recursion():
    for idx in [(1, 2, 3, 4), (2, 2, 1, 3, 1), (1,)]:
        pos, sign = commutator_pattern(len(idx))
        terms = [(tuple(idx[p] for p in row), int(s)) for row, s in zip(pos.tolist(), sign.tolist())]
        assert SparseTensor.from_terms(4, len(idx), terms) == commutator(4, *idx)


def test_dynkin_examples():
    e12 = SparseTensor.monomial(2, (1, 2))
    assert dynkin_map(e12).terms() == {(1, 2): 1, (2, 1): -1}
    assert dynkin_map(commutator(2, 1, 2)) == 2 * commutator(2, 1, 2)
    assert dynkin_map(SparseTensor.monomial(2, (1, 1))).is_zero()


def test_group_algebra_element_agrees_with_factorwise():
    rng = __import__("numpy").random.default_rng(1)
    for start in (1, 2):
        t = random_tensor(rng, 3, 5, 8)
        assert right_multiply_group_algebra(t, left_bracketing_element(5, start)) == apply_left_bracketing(t, start)


@given(st.integers(1, 7).flatmap(lambda k: st.tuples(*[st.integers(1, 3)] * k)))
def test_dynkin_eigenvalue(indices):
    c = commutator(3, *indices)
    assert dynkin_map(c) == len(indices) * c


def test_is_lie_element_examples():
    assert is_lie_element(commutator(3, 1, 2, 3))
    assert not is_lie_element(SparseTensor.monomial(2, (1, 2)))
    assert is_lie_element(SparseTensor.monomial(2, (1,)))


@pytest.mark.parametrize("n,k,expected", [(2, 3, 2), (2, 1, 2), (4, 3, 20), (3, 4, 18), (2, 5, 6)])
def test_lie_dimension_values(n, k, expected):
    assert lie_dimension(n, k) == expected


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(1, 6) if n ** k <= 1024])
def test_lie_dimension_is_commutator_span_rank(n, k):
    cols = []
    index = {}
    for idx in itertools.product(range(1, n + 1), repeat=k):
        cols.append({index.setdefault(w, len(index)): int(c) for w, c in commutator(n, *idx).items()})
    assert matrix_rank(SparseIntegerMatrix(len(index), cols)) == lie_dimension(n, k)


def test_commutator_antisymmetry():
    for a, b in itertools.product(range(1, 4), repeat=2):
        assert commutator(3, a, b) == -commutator(3, b, a)


def test_bracket_map_examples():
    ctx = SymplecticContext(1)
    e1 = SparseTensor.monomial(2, (1,))
    e2 = SparseTensor.monomial(2, (2,))
    assert bracket_map(ctx, tensor_product(e1, e2)).terms() == {(1, 2): 1, (2, 1): -1}
    x = tensor_product(e1, commutator(2, 1, 2))
    # [e_1, [e_1, e_2]] = -[[e_1, e_2], e_1] in left-normed notation
    assert bracket_map(ctx, x) == -commutator(2, 1, 2, 1)
    assert not bracket_map(ctx, x).is_zero()


def test_bracket_map_rejects_non_lie_tail():
    ctx = SymplecticContext(1)
    with pytest.raises(ValueError):
        bracket_map(ctx, SparseTensor.monomial(2, (1, 1, 2)))


def test_h_element_examples():
    ctx = SymplecticContext(2)
    assert is_h_element(ctx, SparseTensor.zero(4, 3))
    from jcoker.spreps import omega

    non_lie = tensor_product(omega(ctx), SparseTensor.monomial(4, (1, 2)))
    assert not is_h_element(ctx, non_lie)


@pytest.mark.parametrize("g,k", [(1, 2), (2, 2), (2, 3), (2, 4)])
def test_certified_h_elements_are_zeta_invariant(g, k):
    ctx = SymplecticContext(g)
    rng = __import__("numpy").random.default_rng(g * 10 + k)
    found = 0
    for _ in range(10):
        x = cyclic_symmetrizer(apply_left_bracketing(random_tensor(rng, 2 * g, k + 2, 4), start=2))
        if is_h_element(ctx, x):
            found += 1
            assert is_zeta_invariant(x)
    assert found


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(2, 7) if n ** k <= 4 ** 5])
def test_cyclic_projection_kills_commutators(n, k):
    for idx in itertools.product(range(1, n + 1), repeat=k):
        assert pi_k(commutator(n, *idx)).is_zero()


def test_simple_commutator_json():
    c = SimpleCommutator(4, (1, 3, 2))
    assert c.to_json() == {"commutator": [1, 3, 2]}
    assert c.expand() == expand_commutator(c)
