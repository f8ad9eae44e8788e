"""The K_1–K_4 generator families of Im τ'_k ⊂ H* ⊗ L_n(k+1) and the rank and
kernel-chain checks built on them.

Generators are tensors of degree k+2 whose first letter is a dual-basis index.
Large families are evaluated as one batch: every generator is a signed list of
(dual index, commutator tuple) parts, expanded with a shared bracket pattern.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from jcoker import _kernels as K
from jcoker.cyclic import cyclic_dimension
from jcoker.free_lie import commutator_pattern, lie_dimension
from jcoker.linalg import SparseIntegerMatrix, block_rank, random_primes
from jcoker.tensor import DualBasisContext, SparseTensor

log = logging.getLogger(__name__)

FAMILIES = ("K1", "K2", "K3", "K4")


class GeneratorSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    """Index data of one generator.

    K1: e_i^* ⊗ [e_{i_1}, …, e_{i_{k+1}}],   i ∉ tail
    K2: e_i^* ⊗ [e_{i_1}, …, e_{i_k}, e_i],   i ∉ tail
    K3: e_i^* ⊗ [e_i, e_{i_1}, …, e_{i_k}] - e_j^* ⊗ [e_j, e_{i_k}, e_{i_1}, …, e_{i_{k-1}}],  i, j ∉ tail
    K4: e_i^* ⊗ [e_{i_1}, …, e_{i_{k+1}}] - Σ_{i_s = i} e_m^* ⊗ [… e_m in slot s …],  i ∈ tail, m ∉ tail
    """

    family: str
    n: int
    k: int
    i: int
    tail: tuple[int, ...]
    j: int | None = None
    m: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple(int(x) for x in self.tail))
        f, n, k, tail = self.family, self.n, self.k, self.tail
        if f not in FAMILIES:
            raise GeneratorSpecError(f"unknown family {f}")
        want = k if f in ("K2", "K3") else k + 1
        if len(tail) != want:
            raise GeneratorSpecError(f"{f} needs a tail of length {want}")
        used = [self.i, *tail] + [x for x in (self.j, self.m) if x is not None]
        if any(not 1 <= x <= n for x in used):
            raise GeneratorSpecError(f"index outside 1..{n}")
        if f in ("K1", "K2") and self.i in tail:
            raise GeneratorSpecError(f"{f}: i must avoid the tail")
        if f == "K3" and (self.j is None or self.i in tail or self.j in tail):
            raise GeneratorSpecError("K3: i and j must avoid the tail")
        if f == "K4" and (self.m is None or self.i not in tail or self.m in tail):
            raise GeneratorSpecError("K4: need i in the tail and m outside it")

    def parts(self) -> list[tuple[int, tuple[int, ...], int]]:
        """Signed (dual index, commutator tuple) summands."""
        f, i, tail = self.family, self.i, self.tail
        if f == "K1":
            return [(i, tail, 1)]
        if f == "K2":
            return [(i, tail + (i,), 1)]
        if f == "K3":
            return [(i, (i,) + tail, 1), (self.j, (self.j, tail[-1]) + tail[:-1], -1)]
        out = [(i, tail, 1)]
        for s, x in enumerate(tail):
            if x == i:
                out.append((self.m, tail[:s] + (self.m,) + tail[s + 1:], -1))
        return out

    def weight(self) -> tuple[int, ...]:
        """Torus weight: content of the commutator minus the dual letter."""
        dual, tup, _ = self.parts()[0]
        w = [0] * self.n
        for x in tup:
            w[x - 1] += 1
        w[dual - 1] -= 1
        return tuple(w)

    def to_json(self) -> dict:
        out = {"family": self.family, "i": self.i, "tail": list(self.tail)}
        if self.j is not None:
            out["j"] = self.j
        if self.m is not None:
            out["m"] = self.m
        return out


def warn_stable_range(n: int, k: int) -> bool:
    """Log (never raise) when n < k+2; returns whether (n, k) is in the stable range."""
    if k + 2 > n:
        log.warning("n=%d < k+2=%d: outside the stable range, results are reported but not claimed", n, k + 2)
        return False
    return True


def enumerate_generators(n: int, k: int, families: Sequence[str] = FAMILIES) -> Iterator[GeneratorSpec]:
    """Every spec satisfying the family constraints, family by family, lexicographic."""
    letters = range(1, n + 1)
    for f in families:
        if f == "K1":
            for i in letters:
                others = [x for x in letters if x != i]
                for tail in itertools.product(others, repeat=k + 1):
                    yield GeneratorSpec("K1", n, k, i, tail)
        elif f == "K2":
            for i in letters:
                others = [x for x in letters if x != i]
                for tail in itertools.product(others, repeat=k):
                    yield GeneratorSpec("K2", n, k, i, tail)
        elif f == "K3":
            for i in letters:
                for j in letters:
                    others = [x for x in letters if x not in (i, j)]
                    for tail in itertools.product(others, repeat=k):
                        yield GeneratorSpec("K3", n, k, i, tail, j=j)
        elif f == "K4":
            for m in letters:
                others = [x for x in letters if x != m]
                for tail in itertools.product(others, repeat=k + 1):
                    for i in sorted(set(tail)):
                        yield GeneratorSpec("K4", n, k, i, tail, m=m)
        else:
            raise GeneratorSpecError(f"unknown family {f}")


def expected_family_counts(n: int, k: int) -> dict[str, int]:
    """Closed-form sizes of the enumerated families."""
    return {
        "K1": n * (n - 1) ** (k + 1),
        "K2": n * (n - 1) ** k,
        "K3": n * (n - 1) ** k + n * (n - 1) * max(n - 2, 0) ** k,
        "K4": n * (n - 1) * ((n - 1) ** (k + 1) - max(n - 2, 0) ** (k + 1)),
    }


# -- batched evaluation ------------------------------------------------------------

@dataclass
class GeneratorBatch:
    """Many tensors of H* ⊗ H^{⊗(k+1)} at once, grouped by generator id."""

    n: int
    degree: int
    gids: np.ndarray
    words: np.ndarray
    coeffs: np.ndarray
    count: int

    def tensor(self, gid: int) -> SparseTensor:
        sel = self.gids == gid
        return SparseTensor(self.n, self.degree, self.words[sel], self.coeffs[sel])


def expand_parts(n: int, parts: Sequence[tuple[int, int, tuple[int, ...], int]], count: int) -> GeneratorBatch:
    """Expand (gid, dual index, commutator tuple, sign) rows into merged tensors."""
    m = len(parts[0][2])
    gid = np.array([p[0] for p in parts], dtype=np.int64)
    dual = np.array([p[1] for p in parts], dtype=np.int64)
    tup = np.array([p[2] for p in parts], dtype=np.int64).reshape(len(parts), m)
    sign = np.array([p[3] for p in parts], dtype=np.int64)
    pos, psign = commutator_pattern(m)
    R = pos.shape[0]
    tails = tup[:, pos]  # (B, R, m)
    words = np.concatenate([np.repeat(dual, R)[:, None], tails.reshape(-1, m)], axis=1).astype(K.LETTER_DTYPE)
    coeffs = (sign[:, None] * psign[None, :]).reshape(-1)
    gids = np.repeat(gid, R)
    w, c, g = K.group_sum(words, coeffs, n, tags=gids)
    return GeneratorBatch(n, m + 1, g, w, c, count)


def batch_from_specs(specs: Sequence[GeneratorSpec]) -> GeneratorBatch:
    if not specs:
        raise ValueError("no generators")
    spec0 = specs[0]
    rows = [(g, d, t, s) for g, spec in enumerate(specs) for d, t, s in spec.parts()]
    return expand_parts(spec0.n, rows, len(specs))


def build_generator(spec: GeneratorSpec) -> SparseTensor:
    return batch_from_specs([spec]).tensor(0)


def batch_theta(batch: GeneratorBatch, ell: int, table: np.ndarray | None = None):
    """Θ_ℓ of every generator in the batch (dual-basis context by default).

    Returns (gids, words, coeffs) of the surviving bicyclic terms together with
    the gids whose intermediate Φ_{1,ℓ+1} is nonzero.
    """
    table = DualBasisContext(batch.n).table if table is None else table
    w = batch.words
    vals = table[w[:, 0], w[:, ell]]
    hit = np.flatnonzero(vals)
    keep = [p for p in range(batch.degree) if p not in (0, ell)]
    cw = w[hit][:, keep]
    cc = K.multiply(batch.coeffs[hit], vals[hit])
    cg = batch.gids[hit]
    pw, _, pg = K.group_sum(cw, cc, batch.n, tags=cg)
    phi_nonzero = np.unique(pg)
    left = K.least_rotation_rows(np.ascontiguousarray(cw[:, : ell - 1]), batch.n)
    right = K.least_rotation_rows(np.ascontiguousarray(cw[:, ell - 1:]), batch.n)
    tw, tc, tg = K.group_sum(np.concatenate([left, right], axis=1), cc, batch.n, tags=cg)
    return tg, tw, tc, phi_nonzero


@dataclass
class KernelChainReport:
    n: int
    k: int
    family_counts: dict[str, int]
    theta_checks: dict[str, dict[str, dict[str, int]]] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "family_counts": self.family_counts,
            "theta_checks": self.theta_checks,
            "failures": self.failures,
            "notes": self.notes,
            "passed": self.passed,
        }


def verify_kernel_chain(n: int, k: int, families: Sequence[str] = FAMILIES, max_failures: int = 10) -> KernelChainReport:
    """Check Θ_ℓ(X) = 0 for every generator X and every 1 ≤ ℓ ≤ k+1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    warn_stable_range(n, k)
    counts = {}
    report = KernelChainReport(n, k, counts)
    for fam in families:
        specs = list(enumerate_generators(n, k, [fam]))
        counts[fam] = len(specs)
        fam_checks: dict[str, dict[str, int]] = {}
        report.theta_checks[fam] = fam_checks
        if not specs:
            continue
        batch = batch_from_specs(specs)
        for ell in range(1, k + 2):
            tg, _, _, phi_nz = batch_theta(batch, ell)
            bad = np.unique(tg)
            fam_checks[str(ell)] = {
                "checked": len(specs),
                "failed": int(bad.size),
                "phi_nonzero": int(phi_nz.size),
            }
            for gid in bad[: max(0, max_failures - len(report.failures))]:
                report.failures.append({"ell": ell, "spec": specs[int(gid)].to_json()})
        log.info("%s: %d generators checked for ℓ=1..%d", fam, len(specs), k + 1)
    k2 = report.theta_checks.get("K2", {}).get(str(k + 1))
    if k2:
        report.notes.append(
            f"K2 at ℓ=k+1: {k2['phi_nonzero']} generators have nonzero Φ_(1,k+2) "
            f"(±[e_i1,…,e_ik]) yet Θ_(k+1) vanishes on all of them"
        )
    return report


# -- rank computations -------------------------------------------------------------

def _blocks_from_batch(batch: GeneratorBatch, row_words: np.ndarray, row_coeffs, row_gids, block_keys: np.ndarray):
    """Split columns (gids) into weight blocks and build one sparse matrix per block."""
    if row_words.shape[0] == 0:
        return []
    row_keys = np.unique(row_words, axis=0, return_inverse=True)[1].reshape(-1)
    _, block_of_gid = np.unique(block_keys, axis=0, return_inverse=True)
    block_of_gid = block_of_gid.reshape(-1)
    nblocks = int(block_of_gid.max()) + 1 if block_of_gid.size else 0
    cols: list[list[dict]] = [[] for _ in range(nblocks)]
    col_of_gid = {}
    for gid in range(batch.count):
        b = int(block_of_gid[gid])
        col_of_gid[gid] = (b, len(cols[b]))
        cols[b].append({})
    coeff_list = row_coeffs.tolist()
    for r, c, g in zip(row_keys.tolist(), coeff_list, row_gids.tolist()):
        b, idx = col_of_gid[g]
        cols[b][idx][r] = int(c)
    mats = []
    for b in range(nblocks):
        rows = sorted({r for col in cols[b] for r in col})
        local = {r: i for i, r in enumerate(rows)}
        mats.append(SparseIntegerMatrix(len(rows), [{local[r]: v for r, v in col.items()} for col in cols[b]]))
    return mats


def _weights_of_parts(n: int, duals: np.ndarray, tuples: np.ndarray) -> np.ndarray:
    w = np.zeros((duals.shape[0], n), dtype=np.int64)
    for col in range(tuples.shape[1]):
        np.add.at(w, (np.arange(w.shape[0]), tuples[:, col] - 1), 1)
    np.add.at(w, (np.arange(w.shape[0]), duals - 1), -1)
    return w


def theta1_rank(n: int, k: int, crosscheck: bool = True, primes=None) -> dict:
    """Rank of π_k∘Φ_12 on H* ⊗ L_n(k+1), using all e_i^* ⊗ [simple commutator] columns."""
    tuples = np.array(list(itertools.product(range(1, n + 1), repeat=k + 1)), dtype=np.int64)
    duals = np.repeat(np.arange(1, n + 1), tuples.shape[0])
    tuples = np.tile(tuples, (n, 1))
    count = tuples.shape[0]
    rows = [(g, int(d), tuple(t), 1) for g, (d, t) in enumerate(zip(duals.tolist(), tuples.tolist()))]
    batch = expand_parts(n, rows, count)
    tg, tw, tc, _ = batch_theta(batch, 1)
    blocks = _blocks_from_batch(batch, tw, tc, tg, _weights_of_parts(n, duals, tuples))
    return block_rank(blocks, crosscheck=crosscheck, primes=primes)


def kspan_rank(n: int, k: int, crosscheck: bool = True, primes=None) -> dict:
    specs = list(enumerate_generators(n, k))
    if not specs:
        return block_rank([], crosscheck=crosscheck, primes=primes)
    batch = batch_from_specs(specs)
    weights = np.array([s.weight() for s in specs], dtype=np.int64)
    blocks = _blocks_from_batch(batch, batch.words, batch.coeffs, batch.gids, weights)
    return block_rank(blocks, crosscheck=crosscheck, primes=primes)


def kernel_members(n: int, k: int) -> dict:
    """Confirm every generator lies in Ker(π_k∘Φ_12)."""
    report = verify_kernel_chain(n, k)
    bad = sum(report.theta_checks[f].get("1", {}).get("failed", 0) for f in FAMILIES)
    return {"generators": sum(report.family_counts.values()), "outside_kernel": bad}


def structure_numbers(n: int, k: int, crosscheck: bool = True, seed: int = 0, warn: bool = True) -> dict:
    """The numeric skeleton: dims, Θ_1 rank, kernel dimension and K-span rank."""
    stable = warn_stable_range(n, k) if warn else n >= k + 2
    primes = random_primes(seed=seed) if crosscheck else None
    lie = lie_dimension(n, k + 1)
    cyc = cyclic_dimension(n, k)
    th = theta1_rank(n, k, crosscheck, primes)
    ks = kspan_rank(n, k, crosscheck, primes)
    out = {
        "n": n,
        "k": k,
        "lie_dim": lie,
        "ambient_dim": n * lie,
        "cyclic_dim": cyc,
        "theta1_rank": th["exact"],
        "kernel_dim": n * lie - th["exact"],
        "kspan_rank": ks["exact"],
        "stable_range": stable,
    }
    if crosscheck:
        out["modular"] = {"theta1_rank": th["modular"], "kspan_rank": ks["modular"], "primes": primes}
        out["modular_agree"] = bool(th["agree"] and ks["agree"])
    return out
