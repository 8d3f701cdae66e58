"""Octonions over the rationals.

Basis order is ``e0 = e`` (the unit) followed by the imaginary units
``e1 .. e7``.  The product of imaginary units follows the oriented lines of
the Fano plane in :data:`FANO_TRIPLES`: for each listed ``(a, b, c)``,
``e_a e_b = e_c`` and cyclically, with the opposite orientation negated.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exactcore import Q, freeze, zeros

FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))

DIM = 8


def _structure_table(triples=FANO_TRIPLES) -> np.ndarray:
    """Integer table ``T`` with ``e_a e_b = sum_c T[a, b, c] e_c``."""
    t = np.zeros((DIM, DIM, DIM), dtype=np.int64)
    for a in range(DIM):
        t[0, a, a] = 1
        t[a, 0, a] = 1
    for a in range(1, DIM):
        t[a, a, 0] = -1
    seen = set()
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if (x, y) in seen:
                raise ValueError(f"pair {(x, y)} appears in two Fano triples")
            seen.add((x, y))
            t[x, y, z] = 1
            t[y, x, z] = -1
    if len(seen) != 21:
        raise ValueError("Fano triples must cover every pair of imaginary units once")
    return t


TABLE = _structure_table()


class Octonion:
    """Immutable octonion ``sum_a coords[a] e_a`` with rational coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(Q(c) for c in coords)
        if len(coords) != DIM:
            raise ValueError("an octonion has 8 coordinates")
        self.coords = coords

    @classmethod
    def basis(cls, a: int) -> "Octonion":
        return cls([int(i == a) for i in range(DIM)])

    @classmethod
    def zero(cls) -> "Octonion":
        return cls([0] * DIM)

    def __add__(self, other):
        return Octonion([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return Octonion([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Octonion([-a for a in self.coords])

    def __rmul__(self, scalar):
        s = Q(scalar)
        return Octonion([s * a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return omul(self, other)
        return self.__rmul__(other)

    def __eq__(self, other):
        return isinstance(other, Octonion) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        terms = [f"{c}*e{a}" for a, c in enumerate(self.coords) if c]
        return "Octonion(" + (" + ".join(terms) or "0") + ")"

    def array(self) -> np.ndarray:
        return freeze(list(self.coords))


E = Octonion.basis(0)


def omul(x: Octonion, y: Octonion) -> Octonion:
    out = [Fraction(0)] * DIM
    for a, xa in enumerate(x.coords):
        if not xa:
            continue
        for b, yb in enumerate(y.coords):
            if not yb:
                continue
            row = TABLE[a, b]
            c = int(np.flatnonzero(row)[0])
            out[c] += int(row[c]) * xa * yb
    return Octonion(out)


def oform(x: Octonion, y: Octonion) -> Fraction:
    """Symmetric form with orthonormal basis, unit included."""
    return sum((a * b for a, b in zip(x.coords, y.coords)), Fraction(0))


def oconj(x: Octonion) -> Octonion:
    return 2 * oform(E, x) * E - x


def associator(x: Octonion, y: Octonion, z: Octonion) -> Octonion:
    return omul(omul(x, y), z) - omul(x, omul(y, z))


def imaginary_part(x: Octonion) -> Octonion:
    return x - oform(E, x) * E


def product_tensor() -> np.ndarray:
    """Rational array ``P[c, a, b]``: coefficient of ``e_c`` in ``e_a e_b``."""
    p = zeros((DIM, DIM, DIM))
    for a in range(DIM):
        for b in range(DIM):
            for c in range(DIM):
                p[c, a, b] = Fraction(int(TABLE[a, b, c]))
    return freeze(p)
