"""Vectorized helpers shared by every tensor type.

Words are stored as ``(N, k)`` uint8 arrays of letters in ``1..n``.  Coefficients
live in an int64 array while every intermediate result provably fits, and are
promoted to an object array of Python ints / Fractions otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

# |c| < 2**62 keeps a pairwise sum or a product of two guarded values in int64.
_SAFE = 1 << 62
_INT_SAFE = 1 << 31

LETTER_DTYPE = np.uint8


def letter_bits(n: int) -> int:
    return max(1, int(n).bit_length())


def can_pack(n: int, k: int) -> bool:
    return k * letter_bits(n) <= 63


def pack(words: np.ndarray, n: int) -> np.ndarray:
    """Big-endian fixed-width packing; numeric order equals lexicographic order."""
    b = letter_bits(n)
    keys = np.zeros(words.shape[0], dtype=np.int64)
    for j in range(words.shape[1]):
        keys <<= b
        keys |= words[:, j].astype(np.int64)
    return keys


def empty_words(k: int) -> np.ndarray:
    return np.zeros((0, k), dtype=LETTER_DTYPE)


def empty_coeffs() -> np.ndarray:
    return np.zeros(0, dtype=np.int64)


def to_scalar(value) -> int | Fraction:
    """Normalize a coefficient to ``int`` or a reduced ``Fraction``."""
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, Rational):
        return to_scalar(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return to_scalar(Fraction(value))
    raise TypeError(f"inexact or unsupported coefficient {value!r}")


def coeff_array(values) -> np.ndarray:
    """Build a coefficient array, choosing int64 when safe."""
    if isinstance(values, np.ndarray) and values.dtype.kind in "iu":
        arr = values.astype(np.int64, copy=False)
        if arr.size and (np.abs(arr).max() >= _SAFE):
            return np.array([int(v) for v in values], dtype=object)
        return arr
    scalars = [to_scalar(v) for v in values]
    return _shrink(np.array(scalars, dtype=object) if scalars else empty_coeffs())


def _shrink(arr: np.ndarray) -> np.ndarray:
    if arr.dtype != object:
        return arr
    out = np.empty(arr.shape[0], dtype=object)
    all_small_int = True
    for idx, v in enumerate(arr):
        v = to_scalar(v)
        out[idx] = v
        if all_small_int and (not isinstance(v, int) or abs(v) >= _SAFE):
            all_small_int = False
    if all_small_int:
        return out.astype(np.int64)
    return out


def _bound(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return _SAFE
    return int(np.abs(arr).max())


def to_object(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return np.array([int(v) for v in arr], dtype=object)


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise exact product with promotion on overflow risk."""
    if a.dtype != object and b.dtype != object:
        if _bound(a) < _INT_SAFE and _bound(b) < _INT_SAFE:
            return a * b
        if _bound(a) * _bound(b) < _SAFE:
            return a * b
    return _shrink(to_object(a) * to_object(b))


def scale(a: np.ndarray, c) -> np.ndarray:
    c = to_scalar(c)
    if isinstance(c, int) and a.dtype != object and abs(c) * _bound(a) < _SAFE:
        return a * c
    return _shrink(to_object(a) * c)


def concat(parts: list[np.ndarray]) -> np.ndarray:
    parts = [p for p in parts if p.size]
    if not parts:
        return empty_coeffs()
    if any(p.dtype == object for p in parts):
        return np.concatenate([to_object(p) for p in parts])
    return np.concatenate(parts)


def _sum_guard(coeffs: np.ndarray) -> np.ndarray:
    if coeffs.dtype != object and _bound(coeffs) * coeffs.shape[0] >= _SAFE:
        return to_object(coeffs)
    return coeffs


def group_sum(words: np.ndarray, coeffs: np.ndarray, n: int, tags: np.ndarray | None = None):
    """Merge equal rows (and equal tags), summing coefficients and dropping zeros.

    Returns ``(words, coeffs, tags)`` sorted by tag, then lexicographically by word.
    """
    if words.shape[0] == 0:
        out_tags = None if tags is None else np.zeros(0, dtype=np.int64)
        return empty_words(words.shape[1]), empty_coeffs(), out_tags
    k = words.shape[1]
    if can_pack(n, k):
        keys = pack(words, n)
        order = np.argsort(keys, kind="stable") if tags is None else np.lexsort((keys, tags))
        sk = keys[order]
        change = sk[1:] != sk[:-1]
    else:
        cols = tuple(words[:, j] for j in range(k - 1, -1, -1))
        if tags is not None:
            cols = cols + (tags,)
        order = np.lexsort(cols) if cols else np.arange(words.shape[0])
        sw = words[order]
        change = np.any(sw[1:] != sw[:-1], axis=1)
    if tags is not None:
        st = tags[order]
        change = change | (st[1:] != st[:-1])
    starts = np.flatnonzero(np.concatenate(([True], change)))
    summed = np.add.reduceat(_sum_guard(coeffs)[order], starts)
    keep = np.asarray(summed != 0, dtype=bool)
    sel = order[starts[keep]]
    out_words = words[sel]
    out_coeffs = _shrink(summed[keep]) if summed.dtype == object else summed[keep]
    out_tags = None if tags is None else tags[sel]
    return out_words, out_coeffs, out_tags


def least_rotation_rows(words: np.ndarray, n: int) -> np.ndarray:
    """Lexicographically least rotation of every row (naive k-rotation scan)."""
    count, k = words.shape
    if k <= 1 or count == 0:
        return words
    best = words
    if can_pack(n, k):
        best_key = pack(words, n)
        for r in range(1, k):
            rot = np.roll(words, -r, axis=1)
            key = pack(rot, n)
            better = key < best_key
            if better.any():
                best = np.where(better[:, None], rot, best)
                best_key = np.where(better, key, best_key)
        return best
    for r in range(1, k):
        rot = np.roll(words, -r, axis=1)
        diff = rot != best
        has = diff.any(axis=1)
        first = diff.argmax(axis=1)
        rows = np.arange(count)
        better = has & (rot[rows, first] < best[rows, first])
        if better.any():
            best = np.where(better[:, None], rot, best)
    return best
