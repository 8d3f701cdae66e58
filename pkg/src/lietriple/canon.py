"""Canonical construction of a Lie (super)algebra from a triple system.

The even part is the span of the left multiplications ``L(x, y) = [x, y, .]``
and the odd part is ``V`` itself.  Brackets:

* even-even: matrix commutator, re-expressed in the chosen operator basis;
* even-odd: ``[L, z] = L z`` and ``[z, L] = -L z``;
* odd-odd: ``[x, y] = L(x, y)``.

The basis of the whole algebra is ordered even-then-odd.  ``f[m, i, j]`` is
the coefficient of basis element ``m`` in ``[b_i, b_j]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ClosureViolation, UnverifiedInput
from .exactcore import (
    NotInSpan,
    Q,
    SpanSolver,
    as_machine_ints,
    freeze,
    gauss_select,
    lift,
    to_rational,
    zeros,
)
from .triplesys import AxiomReport, Failure, TripleSystem, _collect, check_lie_triple


@dataclass(frozen=True)
class LeftMultiplication:
    x_index: int
    y_index: int
    mat: np.ndarray


@dataclass(frozen=True)
class GradedAlgebra:
    dim_even: int
    dim_odd: int
    even_basis: tuple[LeftMultiplication, ...]
    f: np.ndarray
    grading: tuple[int, ...]
    is_super: bool

    @property
    def dim(self) -> int:
        return self.dim_even + self.dim_odd

    def with_entry(self, index, delta) -> "GradedAlgebra":
        f = np.array(self.f, dtype=object)
        f[tuple(index)] = f[tuple(index)] + Q(delta)
        return GradedAlgebra(
            self.dim_even, self.dim_odd, self.even_basis, freeze(f), self.grading, self.is_super
        )

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum("mij,i,j->m", self.f, np.asarray(x, dtype=object), np.asarray(y, dtype=object))


def lmul(ts: TripleSystem, j: int, k: int) -> LeftMultiplication:
    # column l is tri(e_j, e_k, e_l)
    return LeftMultiplication(j, k, freeze(ts.c[:, j, k, :]))


def operator_span(ts: TripleSystem) -> list[LeftMultiplication]:
    """Greedy independent subset of ``L(e_j, e_k)`` in lexicographic order.

    Pairs run over ``j < k`` when ``epsilon = -1`` (the diagonal vanishes)
    and ``j <= k`` when ``epsilon = +1``.
    """
    n = ts.dim
    start = 1 if ts.epsilon == -1 else 0
    cands = [lmul(ts, j, k) for j in range(n) for k in range(j + start, n)]
    return [cands[i] for i in gauss_select([c.mat for c in cands])]


def canonical(ts: TripleSystem, super: bool, force: bool = False, jobs: int = 1) -> GradedAlgebra:
    """Build ``L(V, V) + V`` with its brackets.

    ``super=False`` expects a Lie triple system, ``super=True`` an anti-Lie
    one.  Unless ``force`` is set the matching axiom suite is run first and
    :class:`UnverifiedInput` raised on failure.
    """
    eps = 1 if super else -1
    if not force:
        report = check_lie_triple(ts, eps, jobs=jobs)
        if not report.passed:
            raise UnverifiedInput(
                f"input fails the {'anti-Lie' if super else 'Lie'} triple system axioms", report
            )
    n = ts.dim
    even = operator_span(ts)
    de = len(even)
    dim = de + n
    f = zeros((dim, dim, dim))
    solver = SpanSolver([op.mat for op in even]) if even else None

    def express(target, what):
        if solver is None:
            if any(v != 0 for v in np.asarray(target).flat):
                raise ClosureViolation(f"{what} is nonzero but the operator span is empty")
            return []
        try:
            return solver.solve(target)
        except NotInSpan as exc:
            raise ClosureViolation(f"{what} leaves the operator span") from exc

    denom, lifted = lift(*[op.mat for op in even]) if even else (1, [])
    mats = as_machine_ints(lifted, n) if lifted else []
    for a in range(de):
        for b in range(a + 1, de):
            comm = mats[a] @ mats[b] - mats[b] @ mats[a]
            coeffs = express(to_rational(comm, denom * denom), f"[L{a}, L{b}]")
            for m, c in enumerate(coeffs):
                f[m, a, b] = c
                f[m, b, a] = -c
        op = even[a].mat
        for l in range(n):
            for m in range(n):
                f[de + m, a, de + l] = op[m, l]
                f[de + m, de + l, a] = -op[m, l]
    for j in range(n):
        for k in range(n):
            coeffs = express(ts.c[:, j, k, :], f"L(e{j}, e{k})")
            for m, c in enumerate(coeffs):
                f[m, de + j, de + k] = c
    grading = (1,) * de + (-1,) * n
    return GradedAlgebra(de, n, tuple(even), freeze(f), grading, super)


def _parity_signs(g: GradedAlgebra) -> np.ndarray:
    """``s[a, b] = (-1)^{|a||b|}``; all ones for an ordinary Lie algebra."""
    odd = np.array([p == -1 for p in g.grading]) if g.is_super else np.zeros(g.dim, dtype=bool)
    return np.where(np.outer(odd, odd), -1, 1)


def _double_brackets(g: GradedAlgebra):
    """Integer array ``T[x, y, z, m]`` of ``[[b_x, b_y], b_z]`` and its denominator."""
    denom, (fi,) = lift(g.f)
    (fi,) = as_machine_ints([fi], 3 * max(g.dim, 1))
    return np.einsum("nxy,mnz->xyzm", fi, fi), denom * denom


def _jacobi(g: GradedAlgebra, axiom: str) -> AxiomReport:
    if g.dim == 0:
        return AxiomReport([], 0)
    t, denom = _double_brackets(g)
    s = _parity_signs(g)
    # cyclic copies: c1[x,y,z] = T[y,z,x], c2[x,y,z] = T[z,x,y]
    c1 = np.transpose(t, (2, 0, 1, 3))
    c2 = np.transpose(t, (1, 2, 0, 3))
    sxz = s[:, None, :, None]
    syx = s.T[:, :, None, None]
    szy = s.T[None, :, :, None]
    resid = sxz * t + syx * c1 + szy * c2
    failures = _collect(axiom, resid, denom)
    return AxiomReport(sorted(failures, key=lambda f: f.index), g.dim**3)


def check_jacobi(g: GradedAlgebra) -> AxiomReport:
    """``[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0`` on all basis triples."""
    if g.is_super:
        raise ValueError("use check_super_jacobi for a superalgebra")
    return _jacobi(g, "jacobi")


def check_super_jacobi(g: GradedAlgebra) -> AxiomReport:
    """Graded cyclic identity with signs ``(-1)^{XZ}``, ``(-1)^{YX}``, ``(-1)^{ZY}``."""
    if not g.is_super:
        raise ValueError("use check_jacobi for an ordinary Lie algebra")
    return _jacobi(g, "super-jacobi")


def check_graded_antisymmetry(g: GradedAlgebra) -> AxiomReport:
    """``[X,Y] = -(-1)^{XY} [Y,X]`` (plain antisymmetry when not super)."""
    s = _parity_signs(g)
    denom, (fi,) = lift(g.f)
    f = np.moveaxis(fi, 0, -1)  # [x, y, m]
    resid = f + s[:, :, None] * np.swapaxes(f, 0, 1)
    return AxiomReport(_collect("graded-antisymmetry", resid, denom), g.dim**2)


def check_grading(g: GradedAlgebra) -> AxiomReport:
    """Brackets respect parity: even-even and odd-odd land even, mixed lands odd."""
    par = np.array([0 if p == 1 else 1 for p in g.grading])
    failures = []
    for i in range(g.dim):
        for j in range(g.dim):
            target = (par[i] + par[j]) % 2
            col = g.f[:, i, j]
            stray = [m for m in range(g.dim) if col[m] != 0 and par[m] != target]
            if stray:
                resid = freeze([col[m] if m in stray else 0 for m in range(g.dim)])
                failures.append(Failure("grading", (i, j), resid))
    return AxiomReport(failures, g.dim**2)

