"""Exact sparse tensors over the word basis of H^{⊗k}, permutation actions and
the pairing contexts used by every contraction.

Two duality conventions coexist in this package and both are housed here:

* ``DualBasisContext(n)``: a letter in the first slot is read as the dual-basis
  functional e_i^* with e_i^*(e_j) = δ_ij (free-group setting).
* ``SymplecticContext(g)``: a letter in the first slot is an element a of H acting
  as ⟨a, •⟩ (Poincaré duality).  ``dual_index`` instead returns the *element*
  e_i^* ∈ H characterised by ⟨e_i, e_j^*⟩ = δ_ij.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from jcoker import _kernels as K

Scalar = int | Fraction
Word = tuple[int, ...]


class TensorShapeError(ValueError):
    """Raised on rank, degree or index mismatches."""


class SparseTensor:
    """Finite map ``word -> exact rational`` of fixed rank ``n`` and degree ``k``.

    Instances are immutable.  Terms are kept sorted lexicographically by word
    with zero coefficients removed, so equality is array equality.
    """

    __slots__ = ("rank", "degree", "words", "coeffs")

    def __init__(self, rank: int, degree: int, words=None, coeffs=None):
        if rank < 1 or degree < 0:
            raise TensorShapeError(f"bad rank/degree {rank}/{degree}")
        if words is None:
            words, coeffs = K.empty_words(degree), K.empty_coeffs()
        words = np.asarray(words)
        if words.ndim != 2 or words.shape[1] != degree:
            words = words.reshape(-1, degree) if words.size or degree == 0 else K.empty_words(degree)
        coeffs = coeffs if isinstance(coeffs, np.ndarray) else K.coeff_array(coeffs)
        if coeffs.shape[0] != words.shape[0]:
            raise TensorShapeError("words and coefficients differ in length")
        if words.size and (words.min() < 1 or words.max() > rank):
            raise TensorShapeError(f"letter outside 1..{rank}")
        words = self._canonical_words(words.astype(K.LETTER_DTYPE, copy=False), rank)
        w, c, _ = K.group_sum(words, coeffs, rank)
        w.flags.writeable = False
        c.flags.writeable = False
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "words", w)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- hooks for quotient types -------------------------------------------
    def _canonical_words(self, words: np.ndarray, rank: int) -> np.ndarray:
        return words

    def _like(self, words, coeffs) -> "SparseTensor":
        return type(self)(self.rank, self.degree, words, coeffs)

    def _signature(self) -> tuple:
        return (type(self), self.rank, self.degree)

    def _check_compatible(self, other: "SparseTensor") -> None:
        if not isinstance(other, SparseTensor) or self._signature() != other._signature():
            raise TensorShapeError(
                f"incompatible tensors {self._signature()[1:]} vs "
                f"{getattr(other, '_signature', lambda: ('?',))()[1:]}"
            )

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_terms(cls, rank: int, degree: int, terms: Mapping | Iterable, **kw) -> "SparseTensor":
        items = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
        if not items:
            return cls(rank, degree, **kw)
        words = np.array([tuple(w) for w, _ in items], dtype=np.int64).reshape(len(items), degree)
        return cls(rank, degree, words, K.coeff_array([c for _, c in items]), **kw)

    @classmethod
    def monomial(cls, rank: int, word: Sequence[int], coeff: Scalar = 1) -> "SparseTensor":
        return cls.from_terms(rank, len(word), [(tuple(word), coeff)])

    @classmethod
    def zero(cls, rank: int, degree: int) -> "SparseTensor":
        return cls(rank, degree)

    # -- inspection ---------------------------------------------------------
    def __len__(self) -> int:
        return int(self.words.shape[0])

    def __bool__(self) -> bool:
        return len(self) > 0

    def is_zero(self) -> bool:
        return len(self) == 0

    def items(self) -> Iterator[tuple[Word, Scalar]]:
        for w, c in zip(self.words.tolist(), self.coeffs.tolist()):
            yield tuple(w), K.to_scalar(c)

    def terms(self) -> dict[Word, Scalar]:
        return dict(self.items())

    def coefficient(self, word: Sequence[int]) -> Scalar:
        probe = self._canonical_words(np.array([word], dtype=K.LETTER_DTYPE).reshape(1, -1), self.rank)
        hit = np.flatnonzero(np.all(self.words == probe, axis=1)) if len(self) else []
        return K.to_scalar(self.coeffs[hit[0]]) if len(hit) else 0

    def max_abs_coefficient(self) -> Scalar:
        return max((abs(c) for _, c in self.items()), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor) or self._signature() != other._signature():
            return NotImplemented
        if len(self) != len(other):
            return False
        if not np.array_equal(self.words, other.words):
            return False
        if self.coeffs.dtype != object and other.coeffs.dtype != object:
            return bool(np.array_equal(self.coeffs, other.coeffs))
        return all(K.to_scalar(a) == K.to_scalar(b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self) -> str:
        head = ", ".join(f"{c}*{w}" for w, c in list(self.items())[:4])
        more = ", ..." if len(self) > 4 else ""
        return f"{type(self).__name__}(rank={self.rank}, degree={self.degree}, [{head}{more}])"

    # -- linear structure ---------------------------------------------------
    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        self._check_compatible(other)
        return self._like(np.concatenate([self.words, other.words]), K.concat([self.coeffs, other.coeffs]))

    def __neg__(self) -> "SparseTensor":
        return self._like(self.words, K.scale(self.coeffs, -1))

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + (-other)

    def __mul__(self, c) -> "SparseTensor":
        if isinstance(c, SparseTensor):
            return NotImplemented
        return self._like(self.words, K.scale(self.coeffs, c))

    __rmul__ = __mul__

    def map_letters(self, images: Mapping[int, Sequence[tuple[int, Scalar]]]) -> "SparseTensor":
        """Apply the endomorphism ``e_a -> Σ c e_b`` of H as a derivation.

        Works for every word-table type because the derivation acts letterwise.
        """
        out_w, out_c = [], []
        for pos in range(self.degree):
            col = self.words[:, pos]
            for src, targets in images.items():
                rows = np.flatnonzero(col == src)
                if rows.size == 0:
                    continue
                for dst, c in targets:
                    w = self.words[rows].copy()
                    w[:, pos] = dst
                    out_w.append(w)
                    out_c.append(K.scale(self.coeffs[rows], c))
        if not out_w:
            return self._like(K.empty_words(self.degree), K.empty_coeffs())
        return self._like(np.concatenate(out_w), K.concat(out_c))

    # -- tensor-specific actions -------------------------------------------
    def permute(self, sigma: Sequence[int]) -> "SparseTensor":
        return apply_permutation_right(self, sigma)


def add(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    return a + b


def sum_tensors(parts: Sequence[SparseTensor], like: SparseTensor | None = None) -> SparseTensor:
    """Sum many tensors of one shape with a single merge pass."""
    if not parts:
        if like is None:
            raise ValueError("empty sum needs a template")
        return like._like(K.empty_words(like.degree), K.empty_coeffs())
    head = parts[0]
    for p in parts[1:]:
        head._check_compatible(p)
    return head._like(np.concatenate([p.words for p in parts]), K.concat([p.coeffs for p in parts]))


def tensor_product(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    if a.rank != b.rank:
        raise TensorShapeError(f"rank mismatch {a.rank} vs {b.rank}")
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        return SparseTensor(a.rank, a.degree + b.degree)
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    words = np.concatenate([a.words[ia], b.words[ib]], axis=1)
    return SparseTensor(a.rank, a.degree + b.degree, words, K.multiply(a.coeffs[ia], b.coeffs[ib]))


def tensor_power_product(*factors: SparseTensor) -> SparseTensor:
    out = factors[0]
    for f in factors[1:]:
        out = tensor_product(out, f)
    return out


# -- permutations (1-based image tuples: sigma[j-1] = σ(j)) ------------------

def identity_perm(m: int) -> tuple[int, ...]:
    return tuple(range(1, m + 1))


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """The product στ = σ∘τ, so that t·(στ) = (t·σ)·τ."""
    return tuple(sigma[t - 1] for t in tau)


def transposition(i: int, m: int) -> tuple[int, ...]:
    """s_i: swaps positions i and i+1."""
    if not 1 <= i < m:
        raise TensorShapeError(f"s_{i} undefined in S_{m}")
    p = list(range(1, m + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def zeta_perm(m: int) -> tuple[int, ...]:
    """ζ with a_1⊗a_2⊗…⊗a_m · ζ = a_2⊗…⊗a_m⊗a_1."""
    return tuple(list(range(2, m + 1)) + [1]) if m else ()


def _check_perm(sigma: Sequence[int], m: int) -> np.ndarray:
    if len(sigma) != m or sorted(sigma) != list(range(1, m + 1)):
        raise TensorShapeError(f"{tuple(sigma)} is not a permutation of 1..{m}")
    return np.asarray(sigma, dtype=np.int64) - 1


def apply_permutation_right(t: SparseTensor, sigma: Sequence[int]) -> SparseTensor:
    """Right action: output position j holds the letter at position σ(j)."""
    cols = _check_perm(sigma, t.degree)
    return SparseTensor(t.rank, t.degree, t.words[:, cols], t.coeffs)


def right_multiply_group_algebra(t: SparseTensor, element: Sequence[tuple[Sequence[int], Scalar]]) -> SparseTensor:
    """t · Σ c_σ σ for a group-algebra element given as (σ, c_σ) pairs."""
    words, coeffs = [], []
    for sigma, c in element:
        cols = _check_perm(sigma, t.degree)
        words.append(t.words[:, cols])
        coeffs.append(K.scale(t.coeffs, c))
    if not words:
        return SparseTensor(t.rank, t.degree)
    return SparseTensor(t.rank, t.degree, np.concatenate(words), K.concat(coeffs))


def cyclic_symmetrizer(t: SparseTensor) -> SparseTensor:
    """ζ_m t = Σ_{i=0}^{m-1} t·ζ^i; a degree-0 tensor is returned unchanged."""
    m = t.degree
    if m == 0:
        return t
    words = np.concatenate([np.roll(t.words, -i, axis=1) for i in range(m)])
    return SparseTensor(t.rank, m, words, K.concat([t.coeffs] * m))


# -- pairing contexts ---------------------------------------------------------

@dataclass(frozen=True)
class DualBasisContext:
    """Slot 1 holds a dual-basis index: e_i^*(e_j) = δ_ij."""

    rank: int
    table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.rank < 1:
            raise TensorShapeError("rank must be positive")
        tab = np.zeros((self.rank + 1, self.rank + 1), dtype=np.int64)
        idx = np.arange(1, self.rank + 1)
        tab[idx, idx] = 1
        tab.flags.writeable = False
        object.__setattr__(self, "table", tab)

    def evaluate(self, i: int, j: int) -> int:
        return int(self.table[i, j])


@dataclass(frozen=True)
class SymplecticContext:
    """Symplectic basis e_1..e_{2g} with i' = 2g - i + 1.

    ⟨e_i, e_j⟩ = 0 = ⟨e_{i'}, e_{j'}⟩ and ⟨e_i, e_{j'}⟩ = δ_ij = -⟨e_{j'}, e_i⟩ for i, j ≤ g.
    """

    genus: int
    table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.genus < 1:
            raise TensorShapeError("genus must be at least 1")
        n = 2 * self.genus
        tab = np.zeros((n + 1, n + 1), dtype=np.int64)
        for i in range(1, self.genus + 1):
            tab[i, n - i + 1] = 1
            tab[n - i + 1, i] = -1
        tab.flags.writeable = False
        object.__setattr__(self, "table", tab)

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise TensorShapeError(f"index {i} outside 1..{self.rank}")

    def prime(self, i: int) -> int:
        self._check(i)
        return self.rank - i + 1

    def pairing(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        return int(self.table[i, j])

    # slot-1 letters act through ⟨a, •⟩
    evaluate = pairing

    def dual_index(self, i: int) -> tuple[int, int]:
        """e_i^* = e_{i'} for i ≤ g and -e_{i'} for i > g, as (index, sign)."""
        return self.prime(i), (1 if i <= self.genus else -1)


def pairing(ctx: SymplecticContext, i: int, j: int) -> int:
    return ctx.pairing(i, j)


def dual_index(ctx: SymplecticContext, i: int) -> tuple[int, int]:
    return ctx.dual_index(i)


def random_tensor(rng: np.random.Generator, rank: int, degree: int, terms: int, max_coeff: int = 3) -> SparseTensor:
    words = rng.integers(1, rank + 1, size=(terms, degree))
    coeffs = rng.integers(-max_coeff, max_coeff + 1, size=terms)
    return SparseTensor(rank, degree, words, coeffs.astype(np.int64))
