"""Command-line driver: every verification campaign as a subcommand emitting a
JSON report on stdout (or --out) and a one-line summary on stderr.

Exit codes: 0 pass, 1 assertion failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

THREADS_ENV = "JCOKER_THREADS"

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("jcoker")


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    params: dict = field(default_factory=dict)
    threads: int = 1
    out: Path | None = None


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}")
        if value < 1:
            raise UsageError(f"{THREADS_ENV} must be positive")
        return value
    return os.cpu_count() or 1


# -- commands ------------------------------------------------------------------

def cmd_verify_kernel_chain(cfg: JobConfig) -> tuple[dict, bool, str]:
    from jcoker.free_lie import lie_dimension
    from jcoker.genset import expected_family_counts, structure_numbers, verify_kernel_chain

    n, k = cfg.params["n"], cfg.params["k"]
    if k < 2:
        raise UsageError("--k must be at least 2")
    if n < 1:
        raise UsageError("--n must be positive")
    report = verify_kernel_chain(n, k)
    out = report.to_json()
    out["expected_family_counts"] = expected_family_counts(n, k)
    mode = cfg.params.get("ranks", "auto")
    want_ranks = mode == "on" or (mode == "auto" and n * lie_dimension(n, k + 1) <= 2000)
    ok = report.passed
    if want_ranks:
        nums = structure_numbers(n, k, crosscheck=True, seed=cfg.params.get("seed", 0), warn=False)
        out["ranks"] = nums
        if n >= k + 2:
            ok = ok and nums["theta1_rank"] == nums["cyclic_dim"] and nums["kspan_rank"] == nums["kernel_dim"]
        ok = ok and nums["modular_agree"]
    else:
        out["ranks"] = {}
    total = sum(report.family_counts.values())
    return out, ok, f"kernel chain n={n} k={k}: {total} generators, {len(report.failures)} failures"


def cmd_verify_cobracket_identity(cfg: JobConfig) -> tuple[dict, bool, str]:
    from jcoker.contract import verify_cobracket_identity

    p = cfg.params
    if p["g"] < 1 or p["k"] < 2:
        raise UsageError("need --g ≥ 1 and --k ≥ 2")
    if p["samples"] < 0:
        raise UsageError("--samples must be non-negative")
    rep = verify_cobracket_identity(p["g"], p["k"], samples=p["samples"], seed=p["seed"], terms=p["terms"])
    return rep, rep["passed"], f"cobracket g={p['g']} k={p['k']}: {rep['equal']}/{rep['tensors_compared']} equal"


def cmd_verify_hook(cfg: JobConfig) -> tuple[dict, bool, str]:
    from jcoker.spreps import HOOK_MIN_GENUS, verify_hook

    g = cfg.params["g"]
    if g < HOOK_MIN_GENUS:
        raise UsageError(f"refused: the (3,1^5) component is only claimed for g ≥ {HOOK_MIN_GENUS} (got g={g})")
    rep = verify_hook(g, threads=cfg.threads)
    bad = [name for name, ok in rep["checks"].items() if not ok]
    return rep, rep["passed"], f"hook g={g}: {len(rep['checks']) - len(bad)}/{len(rep['checks'])} checks" + (
        f", failed: {', '.join(bad)}" if bad else "")


def cmd_multiplicity(cfg: JobConfig) -> tuple[dict, bool, str]:
    from jcoker.spreps import Partition, multiplicity_in_bicyclic, multiplicity_in_cyclic

    p = cfg.params
    try:
        lam = Partition.parse(p["partition"])
    except ValueError as exc:
        raise UsageError(str(exc))
    n = p["n"]
    if lam.length > n:
        raise UsageError(f"partition {lam} has more than n={n} parts")
    if p.get("k") is not None:
        if p.get("p") is not None or p.get("q") is not None:
            raise UsageError("give either --k or both --p and --q")
        mult = multiplicity_in_cyclic(lam, n, p["k"])
        space = f"C_{n}({p['k']})"
    elif p.get("p") is not None and p.get("q") is not None:
        if p["p"] < 1 or p["q"] < 1:
            raise UsageError("--p and --q must be positive")
        mult = multiplicity_in_bicyclic(lam, n, p["p"], p["q"])
        space = f"C_{n}({p['p']}) ⊗ C_{n}({p['q']})"
    else:
        raise UsageError("give either --k or both --p and --q")
    rep = {"partition": str(lam), "n": n, "space": space, "multiplicity": mult}
    return rep, True, f"({lam}) in {space}: {mult}"


def cmd_dims(cfg: JobConfig) -> tuple[dict, bool, str]:
    from jcoker.genset import structure_numbers

    n, k = cfg.params["n"], cfg.params["k"]
    if n < 1 or k < 1:
        raise UsageError("--n and --k must be positive")
    rep = structure_numbers(n, k, crosscheck=True, seed=cfg.params.get("seed", 0))
    ok = rep["modular_agree"]
    return rep, ok, (f"dims n={n} k={k}: lie={rep['lie_dim']} cyc={rep['cyclic_dim']} "
                     f"rank={rep['theta1_rank']} ker={rep['kernel_dim']} span={rep['kspan_rank']}")


def cmd_explore_k9(cfg: JobConfig) -> tuple[dict, bool, str]:
    from jcoker.spreps import K9_MIN_GENUS, explore_k9

    g = cfg.params["g"]
    if g < K9_MIN_GENUS:
        raise UsageError(f"refused: the degree-11 exploration needs g ≥ {K9_MIN_GENUS} (got g={g})")
    ells = cfg.params.get("ell") or None
    try:
        rep = explore_k9(g, ells=ells)
    except ValueError as exc:
        raise UsageError(str(exc))
    nonzero = [ell for ell, v in rep["theta"].items() if v["terms"]]
    return rep, True, f"explore k=9 g={g}: nonzero Θ at ℓ ∈ {{{', '.join(nonzero)}}}"


def cmd_theta(cfg: JobConfig) -> tuple[dict, bool, str]:
    """Θ_ℓ (and Φ_{1,ℓ+1}) of a tensor read from a JSON-lines file."""
    from jcoker.contract import phi, theta_ell
    from jcoker.formats import FormatError, dumps_tensor, load_tensor, save_tensor
    from jcoker.tensor import DualBasisContext, SymplecticContext

    p = cfg.params
    try:
        t = load_tensor(p["input"])
    except (OSError, FormatError, ValueError) as exc:
        raise UsageError(f"cannot read {p['input']}: {exc}")
    if p.get("g") is not None:
        if 2 * p["g"] != t.rank:
            raise UsageError(f"tensor rank {t.rank} does not match 2g = {2 * p['g']}")
        ctx = SymplecticContext(p["g"])
    else:
        ctx = DualBasisContext(t.rank)
    ell = p["ell"]
    if not 1 <= ell <= t.degree - 1:
        raise UsageError(f"--ell must lie in 1..{t.degree - 1}")
    th = theta_ell(ctx, t, ell)
    if p.get("tensor_out"):
        save_tensor(th, p["tensor_out"])
    rep = {
        "rank": t.rank,
        "degree": t.degree,
        "ell": ell,
        "phi_terms": len(phi(ctx, t, ell)),
        "theta_terms": len(th),
        "theta": dumps_tensor(th).splitlines(),
    }
    return rep, True, f"Θ_{ell}: {len(th)} terms"


COMMANDS = {
    "verify-kernel-chain": cmd_verify_kernel_chain,
    "verify-cobracket-identity": cmd_verify_cobracket_identity,
    "verify-hook": cmd_verify_hook,
    "multiplicity": cmd_multiplicity,
    "dims": cmd_dims,
    "explore-k9": cmd_explore_k9,
    "theta": cmd_theta,
}


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: ${THREADS_ENV} or available CPUs)")
    common.add_argument("--out", type=Path, default=None, help="write the JSON report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="jcoker", description="Exact verification of trace and cobracket obstructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-kernel-chain", parents=[common], help="Θ_ℓ on every K1–K4 generator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ranks", choices=("auto", "on", "off"), default="auto",
                   help="also compute Θ_1 and K-span ranks (auto: small cases only)")
    p.add_argument("--seed", type=int, default=0, help="seed for the modular cross-check primes")

    p = sub.add_parser("verify-cobracket-identity", parents=[common], help="δ^alg direct vs rotated form")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--terms", type=int, default=6, help="terms per random tensor")

    p = sub.add_parser("verify-hook", parents=[common], help="the (3,1^5) maximal vector computation")
    p.add_argument("--g", type=int, default=9)

    p = sub.add_parser("multiplicity", parents=[common], help="highest-weight multiplicity in C_n(k) or C_n(p)⊗C_n(q)")
    p.add_argument("--partition", required=True, help='e.g. "1^5" or "3,1^5"')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)

    p = sub.add_parser("dims", parents=[common], help="dimensions and ranks for (n, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("explore-k9", parents=[common], help="degree-11 candidate vector (reports only)")
    p.add_argument("--g", type=int, default=10)
    p.add_argument("--ell", type=int, action="append", help="restrict to these ℓ (repeatable)")

    p = sub.add_parser("theta", parents=[common], help="Θ_ℓ of a tensor file")
    p.add_argument("--input", required=True, help="tensor in the JSON-lines format")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--g", type=int, default=None, help="symplectic pairing of genus g (default: dual basis)")
    p.add_argument("--tensor-out", type=Path, default=None, help="also write Θ_ℓ as a bicyclic JSON-lines file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "threads", "out", "verbose")}
    try:
        threads = args.threads if args.threads is not None else default_threads()
        if threads < 1:
            raise UsageError("--threads must be positive")
        cfg = JobConfig(args.command, params, threads, args.out)
        t0 = time.perf_counter()
        report, ok, summary = COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"jcoker: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if cfg.out:
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)
    status = "PASS" if ok else "FAIL"
    print(f"{status} {summary} ({time.perf_counter() - t0:.2f}s)", file=sys.stderr)
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
