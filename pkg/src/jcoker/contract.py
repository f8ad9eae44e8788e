"""Contractions Φ_{1,ℓ+1}, the traces Θ_ℓ and c_k, the Morita trace and the
degree-k cobracket δ_k^alg in its direct and rotated forms.

``ctx`` is either a ``DualBasisContext`` (slot 1 is a dual-basis index) or a
``SymplecticContext`` (slot 1 is an element of H acting by ⟨a, •⟩).  Both are
read through ``ctx.table[first_letter, contracted_letter]``.
"""

from __future__ import annotations

import numpy as np

from jcoker import _kernels as K
from jcoker.cyclic import BiCyclicTensor, CyclicTensor, SymmetricTensor, symmetric_project, varpi_ell
from jcoker.tensor import SparseTensor, TensorShapeError, cyclic_symmetrizer


def _check_ctx(ctx, t: SparseTensor) -> None:
    if ctx.rank != t.rank:
        raise TensorShapeError(f"context rank {ctx.rank} != tensor rank {t.rank}")


def contract_positions(ctx, t: SparseTensor, a: int, b: int) -> SparseTensor:
    """Evaluate the letter at position a against the letter at position b (1-based)
    and delete both positions."""
    _check_ctx(ctx, t)
    m = t.degree
    if not (1 <= a <= m and 1 <= b <= m and a != b):
        raise TensorShapeError(f"cannot contract positions {a},{b} in degree {m}")
    vals = ctx.table[t.words[:, a - 1], t.words[:, b - 1]]
    hit = np.flatnonzero(vals)
    keep = [p for p in range(m) if p not in (a - 1, b - 1)]
    words = t.words[hit][:, keep]
    coeffs = K.multiply(t.coeffs[hit], vals[hit])
    return SparseTensor(t.rank, m - 2, words, coeffs)


def phi(ctx, t: SparseTensor, ell: int) -> SparseTensor:
    """Φ_{1,ℓ+1}(f ⊗ a_1 ⊗ ⋯ ⊗ a_{k+1}) = f(a_ℓ) a_1 ⊗ ⋯ â_ℓ ⋯ ⊗ a_{k+1}."""
    k = t.degree - 2
    if k < 0 or not 1 <= ell <= k + 1:
        raise TensorShapeError(f"ℓ={ell} outside 1..{k + 1}")
    return contract_positions(ctx, t, 1, ell + 1)


def theta_ell(ctx, t: SparseTensor, ell: int) -> BiCyclicTensor:
    """Θ_ℓ = ϖ_ℓ ∘ Φ_{1,ℓ+1}, landing in C(ℓ-1) ⊗ C(k-ℓ+1)."""
    return varpi_ell(phi(ctx, t, ell), ell)


def trace_c(ctx, t: SparseTensor) -> CyclicTensor:
    """c_k = Θ_1 with the trivial C(0) factor dropped."""
    contracted = phi(ctx, t, 1)
    return CyclicTensor(t.rank, contracted.degree, contracted.words, contracted.coeffs)


def morita_trace(ctx, t: SparseTensor) -> SymmetricTensor:
    return symmetric_project(trace_c(ctx, t))


def _collect(rank: int, bidegrees, pieces) -> dict[tuple[int, int], BiCyclicTensor]:
    out = {}
    for bd in bidegrees:
        words = [w for key, w, _ in pieces if key == bd]
        coeffs = [c for key, _, c in pieces if key == bd]
        if words:
            out[bd] = BiCyclicTensor(rank, bd, np.concatenate(words), K.concat(coeffs))
        else:
            out[bd] = BiCyclicTensor(rank, bd)
    return out


def _delta_terms(ctx, t: SparseTensor, gaps: range):
    _check_ctx(ctx, t)
    m = t.degree
    k = m - 2
    pieces = []
    for i in range(m):
        for j in range(i + 1, m):
            if (j - i) not in gaps:
                continue
            vals = ctx.table[t.words[:, i], t.words[:, j]]
            hit = np.flatnonzero(vals)
            if hit.size == 0:
                continue
            w = t.words[hit]
            c = K.multiply(t.coeffs[hit], vals[hit])
            inner = w[:, i + 1:j]
            outer = np.concatenate([w[:, j + 1:], w[:, :i]], axis=1)
            p = j - i - 1
            pieces.append(((p, k - p), np.concatenate([inner, outer], axis=1), c))
            pieces.append(((k - p, p), np.concatenate([outer, inner], axis=1), K.scale(c, -1)))
    return pieces


def delta_alg_full(ctx, t: SparseTensor) -> dict[tuple[int, int], BiCyclicTensor]:
    """Direct evaluation of the double sum over 1 ≤ i < j ≤ k+2 with 1 < j-i < k+1:

        ⟨a_i, a_j⟩ { π(a_{i+1}..a_{j-1}) ⊗ π(a_{j+1}..a_{k+2} a_1..a_{i-1}) - (swap) }.

    Returns one ``BiCyclicTensor`` per bidegree (p, q), p, q ≥ 1, p + q = k.
    """
    k = t.degree - 2
    if k < 2:
        raise TensorShapeError("δ^alg needs k ≥ 2")
    bidegrees = [(p, k - p) for p in range(1, k)]
    return _collect(t.rank, bidegrees, _delta_terms(ctx, t, range(2, k + 1)))


def delta_alg_framed(ctx, t: SparseTensor) -> dict[tuple[int, int], BiCyclicTensor]:
    """Same double sum with j - i = 1 and k + 1 allowed, so p or q may be 0."""
    k = t.degree - 2
    if k < 0:
        raise TensorShapeError("need degree ≥ 2")
    bidegrees = [(p, k - p) for p in range(0, k + 1)]
    return _collect(t.rank, bidegrees, _delta_terms(ctx, t, range(1, k + 2)))


def delta_alg_reduced(ctx, t: SparseTensor, ells: range | None = None) -> dict[tuple[int, int], BiCyclicTensor]:
    """(Θ_2 + ⋯ + Θ_k) applied to ζ_{k+2} t, collected per bidegree."""
    k = t.degree - 2
    if k < 2 and ells is None:
        raise TensorShapeError("δ^alg needs k ≥ 2")
    ells = range(2, k + 1) if ells is None else ells
    sym = cyclic_symmetrizer(t)
    out = {}
    for ell in ells:
        piece = theta_ell(ctx, sym, ell)
        out[piece.bidegree] = piece
    return out


def theta_sum_per_bidegree(ctx, t: SparseTensor, ells) -> dict[tuple[int, int], BiCyclicTensor]:
    return {(ell - 1, t.degree - 1 - ell): theta_ell(ctx, t, ell) for ell in ells}


def _same_family(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    for key in keys:
        x, y = a.get(key), b.get(key)
        if x is None or y is None:
            if not (x or y).is_zero():
                return False
        elif x != y:
            return False
    return True


def verify_cobracket_identity(g: int, k: int, samples: int = 200, seed: int = 0,
                              terms: int = 6, h_samples: int = 20) -> dict:
    """Randomized exact comparison of delta_alg_full and delta_alg_reduced.

    Also checks, on certified h-elements (ζ-symmetrized images of the bracketing
    idempotent), that δ equals (k+2)·(Θ_2 + ⋯ + Θ_k).
    """
    from jcoker.free_lie import apply_left_bracketing, is_h_element
    from jcoker.tensor import SymplecticContext, random_tensor

    if g < 1 or k < 2:
        raise ValueError("need g ≥ 1 and k ≥ 2")
    ctx = SymplecticContext(g)
    rng = np.random.default_rng(seed)
    failures = []
    zero = SparseTensor(ctx.rank, k + 2)
    equal = int(_same_family(delta_alg_full(ctx, zero), delta_alg_reduced(ctx, zero)))
    for s in range(samples):
        t = random_tensor(rng, ctx.rank, k + 2, terms)
        if _same_family(delta_alg_full(ctx, t), delta_alg_reduced(ctx, t)):
            equal += 1
        elif len(failures) < 3:
            failures.append({"sample": s, "kind": "operator identity", "tensor": {str(list(w)): str(c) for w, c in t.items()}})
    h_ok = h_checked = h_nonzero = 0
    for s in range(h_samples):
        x = cyclic_symmetrizer(apply_left_bracketing(random_tensor(rng, ctx.rank, k + 2, max(1, terms // 2)), start=2))
        if not is_h_element(ctx, x):
            continue
        h_checked += 1
        full = delta_alg_full(ctx, x)
        h_nonzero += any(not piece.is_zero() for piece in full.values())
        scaled = {bd: (k + 2) * th for bd, th in theta_sum_per_bidegree(ctx, x, range(2, k + 1)).items()}
        if _same_family(full, scaled):
            h_ok += 1
        elif len(failures) < 6:
            failures.append({"sample": s, "kind": "h-element scaling", "tensor": {str(list(w)): str(c) for w, c in x.items()}})
    return {
        "g": g,
        "k": k,
        "seed": seed,
        "samples": samples,
        "tensors_compared": samples + 1,
        "equal": equal,
        "h_elements": h_checked,
        "h_elements_with_nonzero_delta": h_nonzero,
        "h_scaling_equal": h_ok,
        "failures": failures,
        "passed": equal == samples + 1 and h_ok == h_checked and h_checked > 0,
    }
