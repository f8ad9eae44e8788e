"""Exact sparse linear algebra over Q.

Columns are eliminated one at a time against an echelon basis.  Reductions are
fraction-free (integer cross-multiplication followed by removal of the common
content), so entries stay integral and small; every reduction also tracks the
column combination that produced it, which yields a kernel basis for free.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import nextprime

Column = dict[int, int]


@dataclass
class SparseIntegerMatrix:
    """Column-sparse integer matrix; ``columns[c]`` maps row index -> nonzero entry."""

    nrows: int
    columns: list[Column] = field(default_factory=list)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @classmethod
    def from_columns(cls, columns: Iterable[dict], nrows: int | None = None) -> "SparseIntegerMatrix":
        cols = [integral_column(c) for c in columns]
        if nrows is None:
            nrows = 1 + max((r for c in cols for r in c), default=-1)
        if any(r >= nrows or r < 0 for c in cols for r in c):
            raise ValueError("row index out of range")
        return cls(nrows, cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseIntegerMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{r: int(rows[r][c]) for r in range(nrows) if rows[r][c]} for c in range(ncols)]
        return cls(nrows, cols)

    def transpose(self) -> "SparseIntegerMatrix":
        rows: list[Column] = [dict() for _ in range(self.nrows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                rows[r][c] = v
        return SparseIntegerMatrix(self.ncols, rows)

    def matvec(self, x: dict[int, int | Fraction]) -> dict[int, int | Fraction]:
        out: dict[int, int | Fraction] = {}
        for c, xc in x.items():
            for r, v in self.columns[c].items():
                out[r] = out.get(r, 0) + v * xc
        return {r: v for r, v in out.items() if v}


def integral_column(col: dict) -> Column:
    """Scale a rational column to a primitive integer column (rank-preserving)."""
    col = {int(r): v for r, v in col.items() if v}
    dens = [v.denominator for v in col.values() if isinstance(v, Fraction)]
    if dens:
        m = lcm(*dens)
        col = {r: int(v * m) for r, v in col.items()}
    return {r: int(v) for r, v in col.items()}


@dataclass
class EliminationResult:
    rank: int
    ncols: int
    kernel: list[dict[int, int]] | None
    pivots: list[tuple[int, int]]  # (column, pivot row) in discovery order

    @property
    def nullity(self) -> int:
        return self.ncols - self.rank


def _primitive(vec: Column, combo: Column | None) -> None:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return
    if combo is not None:
        for v in combo.values():
            g = gcd(g, v)
            if g == 1:
                return
    if g > 1:
        for r in vec:
            vec[r] //= g
        if combo is not None:
            for r in combo:
                combo[r] //= g


def _choose_pivot(vec: Column) -> int:
    # smallest magnitude keeps multipliers small; ties broken by row for determinism
    return min(vec, key=lambda r: (abs(vec[r]), r))


def rank_and_kernel(M: SparseIntegerMatrix, want_kernel: bool = False) -> EliminationResult:
    """Exact rank over Q; with ``want_kernel`` also a kernel basis, verified M·v = 0."""
    basis: list[tuple[int, tuple[Column, Column]]] = []
    kernel: list[Column] = []
    pivots: list[tuple[int, int]] = []
    for c, col in enumerate(M.columns):
        vec = dict(col)
        combo: Column | None = {c: 1} if want_kernel else None
        for prow, (bvec, bcombo) in basis:
            x = vec.get(prow)
            if not x:
                continue
            a = bvec[prow]
            ga = gcd(a, x)
            fa, fx = a // ga, x // ga
            for r in vec:
                vec[r] *= fa
            for r, v in bvec.items():
                nv = vec.get(r, 0) - fx * v
                if nv:
                    vec[r] = nv
                else:
                    vec.pop(r, None)
            if combo is not None:
                for r in combo:
                    combo[r] *= fa
                for r, v in bcombo.items():
                    nv = combo.get(r, 0) - fx * v
                    if nv:
                        combo[r] = nv
                    else:
                        combo.pop(r, None)
            _primitive(vec, combo)
        if not vec:
            if combo is not None:
                kernel.append(combo)
            continue
        prow = _choose_pivot(vec)
        basis.append((prow, (vec, combo if combo is not None else {})))
        pivots.append((c, prow))
    if want_kernel:
        for v in kernel:
            if M.matvec(v):
                raise ArithmeticError("kernel vector failed verification")
    return EliminationResult(len(basis), M.ncols, kernel if want_kernel else None, pivots)


def matrix_rank(M: SparseIntegerMatrix) -> int:
    return rank_and_kernel(M).rank


def modular_rank(M: SparseIntegerMatrix, p: int) -> int:
    """Rank over GF(p); never exceeds the rational rank."""
    basis: list[tuple[int, Column]] = []
    for col in M.columns:
        vec = {r: v % p for r, v in col.items() if v % p}
        for prow, bvec in basis:
            x = vec.get(prow)
            if not x:
                continue
            for r, v in bvec.items():
                nv = (vec.get(r, 0) - x * v) % p
                if nv:
                    vec[r] = nv
                else:
                    vec.pop(r, None)
        if vec:
            prow = min(vec)
            inv = pow(vec[prow], -1, p)
            basis.append((prow, {r: v * inv % p for r, v in vec.items()}))
    return len(basis)


def random_primes(count: int = 2, bits: int = 62, seed: int = 0) -> list[int]:
    """Distinct primes of the given bit length, reproducible from the seed."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        p = int(nextprime(rng.randrange(2 ** (bits - 1), 2 ** bits - 2 ** (bits - 8))))
        if p not in out:
            out.append(p)
    return out


def rank_with_crosscheck(M: SparseIntegerMatrix, primes: Sequence[int] | None = None) -> dict:
    primes = random_primes() if primes is None else list(primes)
    exact = matrix_rank(M)
    mods = [modular_rank(M, p) for p in primes]
    return {"exact": exact, "modular": mods, "agree": all(m == exact for m in mods)}


def solve_membership(M: SparseIntegerMatrix, v: dict) -> bool:
    """Is v in the column span of M?"""
    if any(r >= M.nrows for r in v):
        raise ValueError("vector longer than the matrix has rows")
    aug = SparseIntegerMatrix(M.nrows, M.columns + [integral_column(v)])
    return matrix_rank(aug) == matrix_rank(M)


def solve(M: SparseIntegerMatrix, v: dict) -> dict[int, Fraction] | None:
    """One exact solution x of M x = v, or None when v is outside the span."""
    target = {int(r): Fraction(x) for r, x in v.items() if x}
    if not target:
        return {}
    den = lcm(*(x.denominator for x in target.values()))
    col = {r: int(x * den) for r, x in target.items()}
    aug = SparseIntegerMatrix(M.nrows, M.columns + [col])
    res = rank_and_kernel(aug, want_kernel=True)
    last = M.ncols
    for kv in res.kernel:
        if kv.get(last):
            return {c: Fraction(-x, kv[last] * den) for c, x in kv.items() if c != last and x}
    return None


def block_rank(blocks: Iterable[SparseIntegerMatrix], crosscheck: bool = False, primes=None) -> dict:
    """Total rank of a block-diagonal matrix given its blocks."""
    primes = random_primes() if (crosscheck and primes is None) else primes
    exact = 0
    mods = [0] * len(primes or [])
    for B in blocks:
        exact += matrix_rank(B)
        if crosscheck:
            for i, p in enumerate(primes):
                mods[i] += modular_rank(B, p)
    out = {"exact": exact}
    if crosscheck:
        out["modular"] = mods
        out["agree"] = all(m == exact for m in mods)
    return out
