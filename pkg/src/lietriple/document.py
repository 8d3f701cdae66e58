"""JSON interchange for triple systems and constructed algebras.

Layout::

    {"meta": {...},
     "tensor": [[m, j, k, l, "p/q"], ...],
     "grading": [1, ..., -1, ...],
     "bracket": [[m, i, j, "p/q"], ...]}

Indices are zero-based.  Rationals are strings ``"p/q"`` (``"p"`` when the
denominator is 1).  Only nonzero entries are listed, in lexicographic index
order, so equal objects serialize to identical bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import octonion
from .canon import GradedAlgebra, lmul
from .exactcore import format_rational, freeze, parse_rational, zeros
from .triplesys import LEVI_CIVITA_ORIENTATION, Kind, TripleSystem

FORMAT_VERSION = 1


@dataclass
class Document:
    meta: dict
    system: TripleSystem
    algebra: GradedAlgebra | None = None


def conventions() -> dict:
    return {
        "index_base": 0,
        "levi_civita_orientation": LEVI_CIVITA_ORIENTATION,
        "octonion_fano_triples": [list(t) for t in octonion.FANO_TRIPLES],
    }


def sparse_records(a: np.ndarray) -> list[list]:
    return [[*map(int, idx), format_rational(v)] for idx, v in np.ndenumerate(a) if v != 0]


def dense_from_records(records, shape) -> np.ndarray:
    out = zeros(shape)
    for rec in records:
        *idx, val = rec
        out[tuple(idx)] = parse_rational(val)
    return freeze(out)


def _dumps_records(records) -> str:
    if not records:
        return "[]"
    body = ",\n".join("  " + json.dumps(r, separators=(",", ":")) for r in records)
    return "[\n" + body + "\n ]"


def _dumps_meta(meta: dict) -> str:
    # one compact line per top-level key
    lines = [
        f"  {json.dumps(k)}: {json.dumps(meta[k], sort_keys=True, ensure_ascii=False, separators=(',', ':'))}"
        for k in sorted(meta)
    ]
    return "{\n" + ",\n".join(lines) + "\n }"


def dumps(doc: Document) -> str:
    """Serialize with a fixed layout: one record per line, sorted meta keys."""
    ts = doc.system
    meta = dict(doc.meta)
    meta["format_version"] = FORMAT_VERSION
    meta["system"] = {
        "dim": ts.dim,
        "epsilon": ts.epsilon,
        "kind": ts.kind.value,
        "gram": None if ts.form is None else [[format_rational(v) for v in row] for row in ts.form],
    }
    meta["conventions"] = conventions()
    if doc.algebra is not None:
        g = doc.algebra
        meta["algebra"] = {
            "dim_even": g.dim_even,
            "dim_odd": g.dim_odd,
            "is_super": g.is_super,
            "even_basis": [[op.x_index, op.y_index] for op in g.even_basis],
        }
    parts = [
        ' "meta": ' + _dumps_meta(meta),
        ' "tensor": ' + _dumps_records(sparse_records(ts.c)),
    ]
    if doc.algebra is not None:
        parts.append(' "grading": ' + json.dumps(list(g.grading), separators=(",", ":")))
        parts.append(' "bracket": ' + _dumps_records(sparse_records(g.f)))
    return "{\n" + ",\n".join(parts) + "\n}\n"


def loads(text: str) -> Document:
    raw = json.loads(text)
    meta = raw["meta"]
    sysmeta = meta["system"]
    n = sysmeta["dim"]
    gram = sysmeta.get("gram")
    form = None if gram is None else freeze([[parse_rational(v) for v in row] for row in gram])
    ts = TripleSystem(
        n, dense_from_records(raw["tensor"], (n,) * 4), form, sysmeta["epsilon"], Kind(sysmeta["kind"])
    )
    algebra = None
    if "bracket" in raw:
        am = meta["algebra"]
        dim = am["dim_even"] + am["dim_odd"]
        algebra = GradedAlgebra(
            am["dim_even"],
            am["dim_odd"],
            tuple(lmul(ts, j, k) for j, k in am["even_basis"]),
            dense_from_records(raw["bracket"], (dim,) * 3),
            tuple(raw["grading"]),
            am["is_super"],
        )
    meta = {k: v for k, v in meta.items() if k not in ("system", "conventions", "format_version", "algebra")}
    return Document(meta, ts, algebra)


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
