"""JSON-lines serialization shared by the library and the CLI.

Tensor files: a header {"rank": n, "degree": k} followed by one
{"coeff": "p/q", "word": [...]} line per term, in lexicographic word order.
Bicyclic files use {"coeff": ..., "left": [...], "right": [...]} term lines.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable

from jcoker import _kernels as K
from jcoker.cyclic import BiCyclicTensor
from jcoker.free_lie import SimpleCommutator
from jcoker.tensor import SparseTensor


class FormatError(ValueError):
    pass


def _coeff_str(c) -> str:
    return str(Fraction(c))


def tensor_lines(t: SparseTensor) -> Iterable[str]:
    if isinstance(t, BiCyclicTensor):
        yield json.dumps({"rank": t.rank, "bidegree": list(t.bidegree)})
        for (left, right), c in t.pair_items():
            yield json.dumps({"coeff": _coeff_str(c), "left": list(left), "right": list(right)})
        return
    yield json.dumps({"rank": t.rank, "degree": t.degree})
    for w, c in t.items():
        yield json.dumps({"coeff": _coeff_str(c), "word": list(w)})


def dump_tensor(t: SparseTensor, fp: IO[str]) -> None:
    for line in tensor_lines(t):
        fp.write(line + "\n")


def dumps_tensor(t: SparseTensor) -> str:
    return "".join(line + "\n" for line in tensor_lines(t))


def loads_tensor(text: str) -> SparseTensor:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty tensor file")
    try:
        header = json.loads(lines[0])
        body = [json.loads(ln) for ln in lines[1:]]
    except json.JSONDecodeError as exc:
        raise FormatError(str(exc)) from exc
    if "rank" not in header:
        raise FormatError("header must carry the rank")
    rank = int(header["rank"])
    try:
        if "bidegree" in header:
            p, q = (int(x) for x in header["bidegree"])
            terms = [((tuple(d["left"]), tuple(d["right"])), K.to_scalar(d["coeff"])) for d in body]
            return BiCyclicTensor.from_pairs(rank, (p, q), terms)
        degree = int(header["degree"])
        terms = [(tuple(d["word"]), K.to_scalar(d["coeff"])) for d in body]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed term line: {exc}") from exc
    if any(len(w) != degree for w, _ in terms):
        raise FormatError("word length differs from the header degree")
    return SparseTensor.from_terms(rank, degree, terms)


def load_tensor(path: str | Path) -> SparseTensor:
    return loads_tensor(Path(path).read_text())


def save_tensor(t: SparseTensor, path: str | Path) -> None:
    Path(path).write_text(dumps_tensor(t))


def commutator_to_json(c: SimpleCommutator) -> str:
    return json.dumps(c.to_json())


def commutator_from_json(text: str, rank: int) -> SimpleCommutator:
    data = json.loads(text)
    if "commutator" not in data:
        raise FormatError("expected a 'commutator' key")
    return SimpleCommutator(rank, tuple(data["commutator"]))
