from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from jcoker.tensor import SparseTensor

coefficients = st.one_of(
    st.integers(-5, 5),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    st.integers(-(2**70), 2**70),
)


def tensors(rank: int, degree: int, max_terms: int = 6):
    word = st.tuples(*[st.integers(1, rank)] * degree)
    return st.lists(st.tuples(word, coefficients), max_size=max_terms).map(
        lambda terms: SparseTensor.from_terms(rank, degree, terms)
    )


def permutations(m: int):
    return st.permutations(list(range(1, m + 1))).map(tuple)


__all__ = ["coefficients", "tensors", "permutations", "Fraction"]
