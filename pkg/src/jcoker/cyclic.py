"""Cyclic quotients C_n(k), their tensor squares and the symmetric quotient.

Every class is the orbit of a word under rotation; the stored representative
is the lexicographically least rotation.  C_n(0) = Z is the empty word.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np
from sympy import divisors, totient

from jcoker import _kernels as K
from jcoker.tensor import SparseTensor, TensorShapeError


def canonical_rotation(word: Sequence[int]) -> tuple[int, ...]:
    """Least rotation by Booth's algorithm, O(k)."""
    s = list(word)
    k = len(s)
    if k == 0:
        return ()
    doubled = s + s
    fail = [-1] * (2 * k)
    best = 0
    for j in range(1, 2 * k):
        c = doubled[j]
        i = fail[j - best - 1]
        while i != -1 and c != doubled[best + i + 1]:
            if c < doubled[best + i + 1]:
                best = j - i - 1
            i = fail[i]
        if c != doubled[best + i + 1]:
            if c < doubled[best]:
                best = j
            fail[j - best] = -1
        else:
            fail[j - best] = i + 1
    return tuple(doubled[best:best + k])


def canonical_rotation_naive(word: Sequence[int]) -> tuple[int, ...]:
    w = tuple(word)
    return min((w[r:] + w[:r] for r in range(len(w))), default=())


class CyclicTensor(SparseTensor):
    """Element of C_n(k): keys are canonical necklace representatives."""

    __slots__ = ()

    def _canonical_words(self, words, rank):
        return K.least_rotation_rows(words, rank)


class SymmetricTensor(SparseTensor):
    """Element of S^k H realised on sorted words (multisets)."""

    __slots__ = ()

    def _canonical_words(self, words, rank):
        return np.sort(words, axis=1) if words.shape[1] > 1 else words


class BiCyclicTensor(SparseTensor):
    """Element of C_n(p) ⊗ C_n(q), stored as concatenated (left, right) words."""

    __slots__ = ("bidegree",)

    def __init__(self, rank: int, bidegree: tuple[int, int], words=None, coeffs=None):
        p, q = bidegree
        if p < 0 or q < 0:
            raise TensorShapeError(f"bad bidegree {bidegree}")
        object.__setattr__(self, "bidegree", (int(p), int(q)))
        super().__init__(rank, p + q, words, coeffs)

    def _canonical_words(self, words, rank):
        p = self.bidegree[0]
        left = K.least_rotation_rows(np.ascontiguousarray(words[:, :p]), rank)
        right = K.least_rotation_rows(np.ascontiguousarray(words[:, p:]), rank)
        return np.concatenate([left, right], axis=1)

    def _like(self, words, coeffs):
        return BiCyclicTensor(self.rank, self.bidegree, words, coeffs)

    def _signature(self):
        return (BiCyclicTensor, self.rank, self.bidegree)

    @classmethod
    def from_pairs(cls, rank: int, bidegree: tuple[int, int], terms) -> "BiCyclicTensor":
        items = list(terms.items()) if isinstance(terms, dict) else list(terms)
        p, q = bidegree
        if not items:
            return cls(rank, bidegree)
        words = np.array([tuple(l) + tuple(r) for (l, r), _ in items], dtype=np.int64).reshape(len(items), p + q)
        return cls(rank, bidegree, words, K.coeff_array([c for _, c in items]))

    @classmethod
    def zero(cls, rank: int, bidegree: tuple[int, int]) -> "BiCyclicTensor":
        return cls(rank, bidegree)

    def pair_items(self):
        p = self.bidegree[0]
        for w, c in self.items():
            yield (w[:p], w[p:]), c

    def pair_terms(self) -> dict:
        return dict(self.pair_items())

    def swap(self) -> "BiCyclicTensor":
        p, q = self.bidegree
        return BiCyclicTensor(self.rank, (q, p), np.concatenate([self.words[:, p:], self.words[:, :p]], axis=1), self.coeffs)

    def __repr__(self):
        head = ", ".join(f"{c}*{l}|{r}" for (l, r), c in list(self.pair_items())[:4])
        return f"BiCyclicTensor(rank={self.rank}, bidegree={self.bidegree}, [{head}{', ...' if len(self) > 4 else ''}])"


def pi_k(t: SparseTensor) -> CyclicTensor:
    """Natural projection H^{⊗k} -> C_n(k)."""
    return CyclicTensor(t.rank, t.degree, t.words, t.coeffs)


def varpi_ell(t: SparseTensor, ell: int) -> BiCyclicTensor:
    """Split after position ℓ-1 and project both halves:
    a_1..a_k ↦ π(a_1..a_{ℓ-1}) ⊗ π(a_ℓ..a_k), bidegree (ℓ-1, k-ℓ+1)."""
    k = t.degree
    if not 1 <= ell <= k + 1:
        raise TensorShapeError(f"ℓ={ell} outside 1..{k + 1}")
    return BiCyclicTensor(t.rank, (ell - 1, k - ell + 1), t.words, t.coeffs)


def symmetric_project(t: SparseTensor) -> SymmetricTensor:
    return SymmetricTensor(t.rank, t.degree, t.words, t.coeffs)


def cyclic_dimension(n: int, k: int) -> int:
    """Necklace count (1/k) Σ_{d|k} φ(d) n^{k/d} = dim C_n(k)."""
    if n < 1 or k < 0:
        raise ValueError("need n ≥ 1, k ≥ 0")
    if k == 0:
        return 1
    return sum(int(totient(d)) * n ** (k // d) for d in divisors(k)) // k


def words_with_content(content: Sequence[int]) -> np.ndarray:
    """All words whose letter i occurs content[i-1] times, lexicographic."""
    letters = [i + 1 for i, m in enumerate(content) for _ in range(m)]
    if not letters:
        return K.empty_words(0).reshape(1, 0)
    perms = sorted(set(itertools.permutations(letters)))
    return np.array(perms, dtype=K.LETTER_DTYPE)


def cyclic_weight_basis(n: int, k: int, content: Sequence[int]) -> list[CyclicTensor]:
    """Necklace basis of the weight space of C_n(k) with the given letter content."""
    if sum(content) != k or len(content) > n:
        raise ValueError("content incompatible with (n, k)")
    words = words_with_content(content)
    reps = np.unique(K.least_rotation_rows(words, n), axis=0)
    return [CyclicTensor(n, k, row[None, :], np.ones(1, dtype=np.int64)) for row in reps]


def bicyclic_weight_basis(n: int, p: int, q: int, content: Sequence[int]) -> list[BiCyclicTensor]:
    """Basis of the weight space of C_n(p) ⊗ C_n(q) with total letter content."""
    if sum(content) != p + q or len(content) > n:
        raise ValueError("content incompatible with (n, p, q)")
    words = words_with_content(content)
    probe = BiCyclicTensor(n, (p, q), words, np.ones(words.shape[0], dtype=np.int64))
    return [BiCyclicTensor(n, (p, q), row[None, :], np.ones(1, dtype=np.int64)) for row in probe.words]
