"""Exact rational scalars and small dense linear algebra.

Vectors, matrices and rank-3 structure tensors are numpy arrays of
``dtype=object`` holding :class:`fractions.Fraction` entries.  Heavy
contractions go through :func:`lift`, which rescales a family of rational
arrays to a common denominator so the arithmetic runs on integers.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

Rational = Fraction

# int64 headroom used when deciding whether lifted integer products are safe
_INT64_SAFE = 2**62


class NotInSpan(ArithmeticError):
    """Target matrix is not a linear combination of the basis."""


def Q(value) -> Fraction:
    """Coerce ``value`` (int, Fraction, numpy int, or ``"p/q"``) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, np.integer):
        return Fraction(int(value))
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def vec(coords) -> np.ndarray:
    return _frozen(np.array([Q(c) for c in coords], dtype=object))


def mat(rows) -> np.ndarray:
    rows = [[Q(c) for c in row] for row in rows]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, c in enumerate(row):
            out[i, j] = c
    return _frozen(out)


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return _frozen(out)


def unit(n: int, i: int) -> np.ndarray:
    out = zeros(n)
    out[i] = Fraction(1)
    return _frozen(out)


def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    out = zeros((n, n))
    out[i, j] = Fraction(1)
    return _frozen(out)


def freeze(a) -> np.ndarray:
    """Copy ``a`` into a read-only object array of Fractions."""
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = Q(v)
    return _frozen(out)


def is_zero(a) -> bool:
    return all(v == 0 for v in np.asarray(a, dtype=object).flat)


def lift(*arrays):
    """Rescale rational arrays to integers sharing one denominator.

    Returns ``(denominator, int_arrays)``; each ``int_arrays[i] / denominator``
    equals ``arrays[i]`` exactly.  The integer arrays hold Python ints; see
    :func:`as_machine_ints` for the int64 fast path.
    """
    denom = 1
    for a in arrays:
        for v in np.asarray(a, dtype=object).flat:
            denom = lcm(denom, Q(v).denominator)
    lifted = []
    for a in arrays:
        a = np.asarray(a, dtype=object)
        ints = np.empty(a.shape, dtype=object)
        for idx, v in np.ndenumerate(a):
            v = Q(v)
            ints[idx] = v.numerator * (denom // v.denominator)
        lifted.append(ints)
    return denom, lifted


def as_machine_ints(arrays, bound_factor: int):
    """Convert lifted object-int arrays to int64 if products stay in range.

    ``bound_factor`` is the number of pairwise products accumulated into a
    single output entry by the caller's contraction.
    """
    biggest = max((abs(int(v)) for a in arrays for v in a.flat), default=0)
    if biggest * biggest * max(bound_factor, 1) < _INT64_SAFE:
        return [a.astype(np.int64) for a in arrays]
    return arrays


def to_rational(ints, denom: int) -> np.ndarray:
    """Inverse of :func:`lift` for a single array."""
    ints = np.asarray(ints)
    out = np.empty(ints.shape, dtype=object)
    for idx, v in np.ndenumerate(ints):
        out[idx] = Fraction(int(v), denom)
    return out


def _row_reduce(rows: list[list[Fraction]]):
    """Reduced row echelon form in place; returns pivot columns."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [v / p for v in rows[r]]
        pr = rows[r]
        nz = [k for k in range(c, ncols) if pr[k] != 0]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                ri = rows[i]
                for k in nz:
                    ri[k] -= f * pr[k]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    rows = [[Q(v) for v in row] for row in m]
    # fewer rows than columns keeps elimination cheap
    if len(rows) > len(rows[0]):
        rows = [list(col) for col in zip(*rows)]
    return len(_row_reduce(rows))


def gauss_select(candidates) -> list[int]:
    """Indices of the first linearly independent candidates, in input order."""
    chosen: list[int] = []
    reduced: list[tuple[int, list[Fraction]]] = []  # (pivot col, normalized row)
    for idx, cand in enumerate(candidates):
        v = [Q(x) for x in np.asarray(cand, dtype=object).flat]
        for col, row in reduced:
            f = v[col]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        col = next((k for k, a in enumerate(v) if a != 0), None)
        if col is None:
            continue
        p = v[col]
        row = [a / p for a in v]
        # keep earlier rows reduced at the new pivot
        reduced = [
            (c, [a - r[col] * b for a, b in zip(r, row)]) if r[col] != 0 else (c, r)
            for c, r in reduced
        ]
        reduced.append((col, row))
        chosen.append(idx)
    return chosen


class SpanSolver:
    """Express targets in a fixed linearly independent basis of arrays.

    Built once per basis; each :meth:`solve` is a sparse back-substitution.
    """

    def __init__(self, basis):
        basis = [np.asarray(b, dtype=object) for b in basis]
        self.size = len(basis)
        self.shape = basis[0].shape if basis else None
        width = basis[0].size if basis else 0
        # augmented rows [basis vector | unit vector] track the change of basis
        rows = [
            [Q(x) for x in b.flat] + [Fraction(int(i == k)) for i in range(self.size)]
            for k, b in enumerate(basis)
        ]
        pivots = _row_reduce(rows) if rows else []
        if any(p >= width for p in pivots) or len(pivots) != self.size:
            raise ValueError("basis is linearly dependent")
        self._pivots = pivots
        self._rows = [
            ({k: v for k, v in enumerate(row[:width]) if v != 0}, row[width:]) for row in rows
        ]

    def solve(self, target) -> list[Fraction]:
        t = np.asarray(target, dtype=object)
        if self.shape is not None and t.shape != self.shape:
            raise ValueError(f"shape mismatch {t.shape} vs {self.shape}")
        flat = {k: Q(v) for k, v in enumerate(t.flat) if v != 0}
        coeffs = [Fraction(0)] * self.size
        for piv, (row, transform) in zip(self._pivots, self._rows):
            f = flat.get(piv, 0)
            if f == 0:
                continue
            for k, v in row.items():
                nv = flat.get(k, 0) - f * v
                if nv:
                    flat[k] = nv
                else:
                    flat.pop(k, None)
            for i, tv in enumerate(transform):
                if tv:
                    coeffs[i] += f * tv
        if flat:
            raise NotInSpan("target lies outside the span of the basis")
        return coeffs


def solve_in_span(basis, target) -> list[Fraction]:
    """Coefficients ``c`` with ``sum(c[i] * basis[i]) == target``.

    Raises :class:`NotInSpan` if no such combination exists.  A dependent
    basis is reduced to its independent prefix first; dropped members get
    coefficient zero.
    """
    basis = list(basis)
    if not basis:
        if not is_zero(target):
            raise NotInSpan("nonzero target with empty basis")
        return []
    keep = gauss_select(basis)
    sub = SpanSolver([basis[i] for i in keep]).solve(target)
    coeffs = [Fraction(0)] * len(basis)
    for i, c in zip(keep, sub):
        coeffs[i] = c
    return coeffs


def combine(coeffs, basis) -> np.ndarray:
    out = zeros(np.asarray(basis[0]).shape)
    for c, b in zip(coeffs, basis):
        if c:
            out = out + Q(c) * np.asarray(b, dtype=object)
    return out
