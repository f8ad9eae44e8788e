"""Free Lie algebra L_n inside the tensor algebra.

Lie membership is decided with the Dynkin–Specht–Wever criterion: t of degree m
is a Lie element iff its left-normed bracketing equals m·t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sympy import divisors, mobius

from jcoker import _kernels as K
from jcoker.tensor import (
    SparseTensor,
    TensorShapeError,
    compose,
    cyclic_symmetrizer,
    identity_perm,
    right_multiply_group_algebra,
    transposition,
    zeta_perm,
)


@dataclass(frozen=True)
class SimpleCommutator:
    """Left-normed bracket [e_{i_1}, …, e_{i_k}] = [⋯[[e_{i_1}, e_{i_2}], e_{i_3}], …, e_{i_k}]."""

    rank: int
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if not self.indices:
            raise TensorShapeError("a simple commutator needs at least one letter")
        if min(self.indices) < 1 or max(self.indices) > self.rank:
            raise TensorShapeError(f"index outside 1..{self.rank}")

    def expand(self) -> SparseTensor:
        return expand_commutator(self)

    def to_json(self) -> dict:
        return {"commutator": list(self.indices)}


def commutator(rank: int, *indices: int) -> SparseTensor:
    return expand_commutator(SimpleCommutator(rank, indices))


def expand_commutator(c: SimpleCommutator) -> SparseTensor:
    """Recursive expansion using [u, e] = u⊗e - e⊗u."""
    words = np.array([[c.indices[0]]], dtype=K.LETTER_DTYPE)
    coeffs = np.ones(1, dtype=np.int64)
    for letter in c.indices[1:]:
        col = np.full((words.shape[0], 1), letter, dtype=K.LETTER_DTYPE)
        words = np.concatenate([np.hstack([words, col]), np.hstack([col, words])])
        coeffs = np.concatenate([coeffs, -coeffs])
    return SparseTensor(c.rank, len(c.indices), words, coeffs)


def expand_simple_subset_formula(y: int, tail: Sequence[int], rank: int) -> SparseTensor:
    """[y, e_{i_1}, …, e_{i_k}] = Σ_S (-1)^{|S|} e_{←S} ⊗ y ⊗ e_{→S^c}.

    S runs over the subsequences (ordered subsets) of the tail; e_{←S} lists S
    in reverse and e_{→S^c} lists the complement in its original order.
    """
    tail = tuple(tail)
    k = len(tail)
    words, coeffs = [], []
    for mask in itertools.product((False, True), repeat=k):
        chosen = [tail[p] for p in range(k) if mask[p]]
        rest = [tail[p] for p in range(k) if not mask[p]]
        words.append(chosen[::-1] + [y] + rest)
        coeffs.append(-1 if len(chosen) % 2 else 1)
    return SparseTensor(rank, k + 1, np.array(words, dtype=np.int64), np.array(coeffs, dtype=np.int64))


def subset_bookkeeping(sequence: Sequence[int], subset_positions: Sequence[int]):
    """(e_{→S}, e_{←S}, e_{→S^c}, e_{←S^c}) for a subsequence chosen by 1-based positions."""
    chosen = [sequence[p - 1] for p in subset_positions]
    rest = [x for p, x in enumerate(sequence, start=1) if p not in set(subset_positions)]
    return tuple(chosen), tuple(chosen[::-1]), tuple(rest), tuple(rest[::-1])


def left_bracketing_element(m: int, start: int = 1) -> list[tuple[tuple[int, ...], int]]:
    """Group-algebra expansion of (1 - s_a)(1 - s_{a+1}s_a)⋯(1 - s_{m-1}⋯s_a), a = start.

    Acting on the right, it bracket-expands positions start..m left-normed.
    """
    element: dict[tuple[int, ...], int] = {identity_perm(m): 1}
    for top in range(start, m):
        cyc = identity_perm(m)
        for s in range(top, start - 1, -1):
            cyc = compose(cyc, transposition(s, m))
        nxt: dict[tuple[int, ...], int] = {}
        for sigma, c in element.items():
            nxt[sigma] = nxt.get(sigma, 0) + c
            prod = compose(sigma, cyc)
            nxt[prod] = nxt.get(prod, 0) - c
        element = {s: c for s, c in nxt.items() if c}
    return sorted(element.items())


def apply_left_bracketing(t: SparseTensor, start: int = 1) -> SparseTensor:
    """t·(1 - c_a)(1 - c_{a+1})⋯ applied factor by factor (keeps intermediates small)."""
    m = t.degree
    out = t
    for top in range(start, m):
        cyc = identity_perm(m)
        for s in range(top, start - 1, -1):
            cyc = compose(cyc, transposition(s, m))
        out = right_multiply_group_algebra(out, [(identity_perm(m), 1), (cyc, -1)])
    return out


def dynkin_map(t: SparseTensor) -> SparseTensor:
    """Left-normed bracketing of each word, extended linearly."""
    if t.degree < 1:
        raise TensorShapeError("Dynkin map needs degree ≥ 1")
    return apply_left_bracketing(t, start=1)


def is_lie_element(t: SparseTensor) -> bool:
    if t.degree < 1:
        raise TensorShapeError("Lie elements have degree ≥ 1")
    return dynkin_map(t) == t.degree * t


def is_tail_lie(t: SparseTensor) -> bool:
    """True iff t lies in H ⊗ L_n(m-1), i.e. positions 2..m are Lie for every first letter."""
    if t.degree < 2:
        raise TensorShapeError("need degree ≥ 2 for a tail")
    return apply_left_bracketing(t, start=2) == (t.degree - 1) * t


def lie_dimension(n: int, k: int) -> int:
    """Witt's formula (1/k) Σ_{d|k} μ(d) n^{k/d}."""
    if n < 1 or k < 1:
        raise ValueError("need n ≥ 1, k ≥ 1")
    return sum(int(mobius(d)) * n ** (k // d) for d in divisors(k)) // k


def bracket_map(ctx, t: SparseTensor, check: bool = True) -> SparseTensor:
    """X⊗u ↦ [X, u] = X⊗u - u⊗X for t ∈ H ⊗ L(k+1), first slot the H factor.

    The result is t - t·ζ inside H^{⊗(k+2)}.
    """
    if ctx is not None and ctx.rank != t.rank:
        raise TensorShapeError("context rank differs from tensor rank")
    if check and not is_tail_lie(t):
        raise ValueError("tail (positions 2..) is not a Lie element")
    return t - t.permute(zeta_perm(t.degree))


def is_h_element(ctx, t: SparseTensor) -> bool:
    """Membership in h_{g,1}(k): Lie tail and vanishing left bracketing."""
    if t.is_zero():
        return True
    if not is_tail_lie(t):
        return False
    return bracket_map(ctx, t, check=False).is_zero()


def is_zeta_invariant(t: SparseTensor) -> bool:
    return t.permute(zeta_perm(t.degree)) == t


__all__ = [
    "SimpleCommutator",
    "commutator",
    "expand_commutator",
    "expand_simple_subset_formula",
    "dynkin_map",
    "is_lie_element",
    "is_tail_lie",
    "lie_dimension",
    "bracket_map",
    "is_h_element",
    "is_zeta_invariant",
    "cyclic_symmetrizer",
    "commutator_pattern",
    "subset_bookkeeping",
    "left_bracketing_element",
    "apply_left_bracketing",
]


def commutator_pattern(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Positions and signs with [x_1, …, x_m] = Σ_r sign_r · x_{pos_r[0]} ⊗ ⋯ ⊗ x_{pos_r[m-1]}.

    Positions are 0-based; the pattern does not depend on the letters, so a batch
    of index tuples ``T`` expands as ``T[:, pos]``.
    """
    pos = np.zeros((1, 1), dtype=np.int64)
    sign = np.ones(1, dtype=np.int64)
    for j in range(1, m):
        col = np.full((pos.shape[0], 1), j, dtype=np.int64)
        pos = np.concatenate([np.hstack([pos, col]), np.hstack([col, pos])])
        sign = np.concatenate([sign, -sign])
    return pos, sign
