"""Triple systems stored as structure-constant tensors.

A triple system of dimension ``N`` is a tensor ``C`` with
``[e_j, e_k, e_l] = sum_m C[m, j, k, l] e_m`` (output index first), an
optional Gram matrix for the bilinear form, and the sign ``epsilon``.

All axiom checkers enumerate every basis tuple.  Multilinearity makes that
sufficient for arbitrary vectors.
"""
from __future__ import annotations

import enum
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from . import octonion as oc
from .errors import (
    BadForm,
    ClosureViolation,
    DegenerateAlpha,
    DimensionMismatch,
    MissingForm,
    PoleAtMinusOne,
    WrongKind,
)
from .exactcore import Q, as_machine_ints, freeze, identity, lift, rank, to_rational, zeros

# Levi-Civita orientation: eps_{1234} = +1 (zero-based: (0, 1, 2, 3))
LEVI_CIVITA_ORIENTATION = 1


class Kind(str, enum.Enum):
    LIE_TRIPLE = "LieTriple"
    ANTI_LIE_TRIPLE = "AntiLieTriple"
    BFKTS = "BFKTS"
    DOUBLED = "Doubled"


@dataclass(frozen=True)
class TripleSystem:
    dim: int
    c: np.ndarray
    form: np.ndarray | None
    epsilon: int
    kind: Kind

    def __post_init__(self):
        if self.c.shape != (self.dim,) * 4:
            raise DimensionMismatch(f"tensor shape {self.c.shape} does not match dim {self.dim}")
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if self.form is not None and self.form.shape != (self.dim, self.dim):
            raise DimensionMismatch("Gram matrix shape does not match dim")

    def with_entry(self, index, delta) -> "TripleSystem":
        """Copy with one tensor entry shifted by ``delta`` (negative controls)."""
        c = np.array(self.c, dtype=object)
        c[tuple(index)] = c[tuple(index)] + Q(delta)
        return TripleSystem(self.dim, freeze(c), self.form, self.epsilon, self.kind)


@dataclass(frozen=True)
class Failure:
    axiom: str
    index: tuple[int, ...]
    residual: np.ndarray

    def __repr__(self):
        res = ", ".join(str(v) for v in self.residual)
        return f"Failure({self.axiom}, {self.index}, [{res}])"


@dataclass
class AxiomReport:
    failures: list[Failure] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        return AxiomReport(self.failures + other.failures, self.checked + other.checked)

    def summary(self, limit: int = 10) -> str:
        head = f"{'passed' if self.passed else 'FAILED'}: {self.checked} identities, {len(self.failures)} failures"
        lines = [head] + [f"  {f!r}" for f in self.failures[:limit]]
        return "\n".join(lines)


@dataclass(frozen=True)
class Example1Spec:
    sigma: Fraction
    orientation: int = LEVI_CIVITA_ORIENTATION


def tri(ts: TripleSystem, x, y, z) -> np.ndarray:
    vs = [np.asarray(v, dtype=object) for v in (x, y, z)]
    if any(v.shape != (ts.dim,) for v in vs):
        raise DimensionMismatch(f"vectors must have length {ts.dim}")
    return np.einsum("mjkl,j,k,l->m", ts.c, *vs)


def _collect(axiom: str, resid: np.ndarray, denom: int) -> list[Failure]:
    """Failures for every index tuple (all but the last axis) with nonzero residual."""
    bad = np.argwhere(np.any(resid != 0, axis=-1))
    return [
        Failure(axiom, tuple(int(i) for i in idx), freeze(to_rational(resid[tuple(idx)], denom)))
        for idx in bad
    ]


def _derivation_chunk(ci, us, middle, sign):
    """Residual of the derivation identity for the given first indices.

    ``middle(ci, u)`` returns the operator tensor acting on the middle slot,
    indexed ``[n, v, y]``; ``sign`` multiplies that term.
    Output axes: ``u, v, x, y, z, m``.
    """
    out = []
    for u in us:
        cu = ci[:, u]  # [m, v, n]
        lhs = np.einsum("mvn,nxyz->vxyzm", cu, ci)
        r1 = np.einsum("nvx,mnyz->vxyzm", cu, ci)
        r2 = np.einsum("nvy,mxnz->vxyzm", middle(ci, u), ci)
        r3 = np.einsum("nvz,mxyn->vxyzm", cu, ci)
        out.append(lhs - r1 - sign * r2 - r3)
    return out


def _derivation_failures(axiom, ci, denom, middle, sign, jobs):
    n = ci.shape[0]
    chunks = [list(range(n))[i::max(jobs, 1)] for i in range(max(jobs, 1))]
    chunks = [c for c in chunks if c]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda us: (us, _derivation_chunk(ci, us, middle, sign)), chunks))
    else:
        parts = [(us, _derivation_chunk(ci, us, middle, sign)) for us in chunks]
    failures = []
    for us, blocks in parts:
        for u, block in zip(us, blocks):
            failures += [
                Failure(axiom, (u,) + f.index, f.residual) for f in _collect(axiom, block, denom * denom)
            ]
    return failures


def _sorted_report(failures, checked) -> AxiomReport:
    return AxiomReport(sorted(failures, key=lambda f: (f.axiom, f.index)), checked)


def check_lie_triple(ts: TripleSystem, eps: int, jobs: int = 1) -> AxiomReport:
    """Lie (``eps = -1``) or anti-Lie (``eps = +1``) triple system axioms.

    * ``lts-symmetry``: ``[x,y,z] = eps [y,x,z]``
    * ``lts-cyclic``: ``[x,y,z] + [y,z,x] + [z,x,y] = 0``
    * ``lts-derivation``: ``L(u,v)`` acts as a derivation of the product
    """
    n = ts.dim
    denom, (ci,) = lift(ts.c)
    ci = as_machine_ints([ci], 4 * n)[0]
    # tensor axes are (m, x, y, z); move m last for reporting
    c = np.moveaxis(ci, 0, -1)
    sym = c - eps * np.swapaxes(c, 0, 1)
    cyc = c + np.transpose(c, (2, 0, 1, 3)) + np.transpose(c, (1, 2, 0, 3))
    # transpose(c, (2,0,1,3))[x,y,z] = c[y,z,x]; transpose(c, (1,2,0,3))[x,y,z] = c[z,x,y]
    failures = _collect("lts-symmetry", sym, denom) + _collect("lts-cyclic", cyc, denom)
    failures += _derivation_failures(
        "lts-derivation", ci, denom, lambda t, u: t[:, u], 1, jobs
    )
    return _sorted_report(failures, 2 * n**3 + n**5)


def check_bfkts(ts: TripleSystem, eps: int, jobs: int = 1) -> AxiomReport:
    """Balanced Freudenthal-Kantor axioms with sign ``eps``.

    * ``bfkts-i``: ``xyz - eps zyx = 2<x|z> y``
    * ``bfkts-ii``: ``xyz - eps yxz = 2<x|y> z``
    * ``bfkts-iii``: ``uv(xyz) = (uvx)yz + eps x(vuy)z + xy(uvz)``
    """
    if ts.form is None:
        raise MissingForm("balanced Freudenthal-Kantor axioms need a bilinear form")
    n = ts.dim
    denom, (ci, gi) = lift(ts.c, ts.form)
    ci, gi = as_machine_ints([ci, gi], 4 * n)
    c = np.moveaxis(ci, 0, -1)  # [x, y, z, m]
    delta = np.eye(n, dtype=c.dtype)
    # 2<x|z> y  ->  [x, y, z, m] = 2 G[x, z] delta[y, m]
    form_xz = 2 * np.einsum("xz,ym->xyzm", gi, delta)
    form_xy = 2 * np.einsum("xy,zm->xyzm", gi, delta)
    r1 = c - eps * np.transpose(c, (2, 1, 0, 3)) - form_xz
    r2 = c - eps * np.swapaxes(c, 0, 1) - form_xy
    failures = _collect("bfkts-i", r1, denom) + _collect("bfkts-ii", r2, denom)
    # middle term uses v u y: operator tensor t[n, v, u, y] sliced at u
    failures += _derivation_failures(
        "bfkts-iii", ci, denom, lambda t, u: t[:, :, u], eps, jobs
    )
    return _sorted_report(failures, 2 * n**3 + n**5)


def _check_gram(n: int, gram, eps: int) -> np.ndarray:
    g = freeze(gram)
    if g.shape != (n, n):
        raise BadForm(f"Gram matrix must be {n}x{n}")
    if not np.array_equal(g.T, -eps * g):
        kind = "antisymmetric" if eps == 1 else "symmetric"
        raise BadForm(f"form must be {kind} for epsilon={eps}")
    return g


def symplectic_gram(n: int) -> np.ndarray:
    """Block form ``[[0, I], [-I, 0]]``."""
    if n % 2:
        raise BadForm("symplectic form needs even dimension")
    h = n // 2
    g = zeros((n, n))
    for i in range(h):
        g[i, h + i] = Fraction(1)
        g[h + i, i] = Fraction(-1)
    return freeze(g)


def build_form_triple(n: int, gram, eps: int) -> TripleSystem:
    """``[x,y,z] = <x|z> y + eps <y|z> x``."""
    g = _check_gram(n, gram, eps)
    if eps == 1 and (n % 2 or rank(g) != n):
        raise BadForm("anti-Lie branch needs a nondegenerate symplectic form")
    d = identity(n)
    c = np.einsum("jl,mk->mjkl", g, d) + eps * np.einsum("kl,mj->mjkl", g, d)
    kind = Kind.LIE_TRIPLE if eps == -1 else Kind.ANTI_LIE_TRIPLE
    return TripleSystem(n, freeze(c), g, eps, kind)


def build_bfkts_basic(n: int, gram, eps: int) -> TripleSystem:
    """``xyz = <x|z> y - eps <x|y> z + eps <y|z> x``."""
    g = _check_gram(n, gram, eps)
    d = identity(n)
    c = (
        np.einsum("jl,mk->mjkl", g, d)
        - eps * np.einsum("jk,ml->mjkl", g, d)
        + eps * np.einsum("kl,mj->mjkl", g, d)
    )
    return TripleSystem(n, freeze(c), g, eps, Kind.BFKTS)


def levi_civita(n: int = 4, orientation: int = LEVI_CIVITA_ORIENTATION) -> np.ndarray:
    eps = np.zeros((n,) * n, dtype=np.int64)
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        eps[perm] = orientation * (-1) ** inversions
    return eps


def build_example1(spec: Example1Spec | Fraction | int | str) -> TripleSystem:
    """Four-dimensional family with a Levi-Civita term weighted by sigma.

    ``e_j e_k e_l = sigma sum_m eps_{jklm} e_m - d_{kl} e_j + d_{jl} e_k + d_{jk} e_l``
    """
    if not isinstance(spec, Example1Spec):
        spec = Example1Spec(Q(spec))
    sigma = Q(spec.sigma)
    n = 4
    d = identity(n)
    lc = levi_civita(n, spec.orientation)
    c = (
        sigma * np.transpose(lc, (3, 0, 1, 2)).astype(object)
        - np.einsum("kl,mj->mjkl", d, d)
        + np.einsum("jl,mk->mjkl", d, d)
        + np.einsum("jk,ml->mjkl", d, d)
    )
    return TripleSystem(n, freeze(c), identity(n), -1, Kind.BFKTS)


def alpha_from_sigma(sigma) -> Fraction:
    sigma = Q(sigma)
    if sigma == -1:
        raise PoleAtMinusOne("alpha = (1 - sigma)/(1 + sigma) has a pole at sigma = -1")
    alpha = (1 - sigma) / (1 + sigma)
    if alpha in (0, -1):
        warnings.warn(f"alpha = {alpha} is outside the simple D(2,1;alpha) family", DegenerateAlpha)
    return alpha


def _octonion_tensor(n, basis, product) -> np.ndarray:
    c = zeros((n,) * 4)
    for j, x in enumerate(basis):
        for k, y in enumerate(basis):
            for l, z in enumerate(basis):
                w = product(x, y, z)
                for m, coeff in enumerate(w):
                    c[m, j, k, l] = coeff
    return freeze(c)


def build_example2(xy_weight=Fraction(2, 3)) -> TripleSystem:
    """Full octonions: ``xyz = 1/3 (x ybar) z - 4/3 <y|z> x + 4/3 <x|z> y + w <x|y> z``.

    The balanced axioms force ``w = +2/3`` (take ``x = y = z = e``); other
    weights are accepted so the failing variants can be exercised.
    """
    third = Fraction(1, 3)
    w_xy = Q(xy_weight)
    basis = [oc.Octonion.basis(a) for a in range(oc.DIM)]

    def product(x, y, z):
        w = (
            third * oc.omul(oc.omul(x, oc.oconj(y)), z)
            - 4 * third * oc.oform(y, z) * x
            + 4 * third * oc.oform(x, z) * y
            + w_xy * oc.oform(x, y) * z
        )
        return w.coords

    return TripleSystem(oc.DIM, _octonion_tensor(oc.DIM, basis, product), identity(oc.DIM), -1, Kind.BFKTS)


def build_example3() -> TripleSystem:
    """Imaginary octonions: ``xyz = -1/4 [x,y,z]_assoc - <y|z> x + <x|z> y + <x|y> z``.

    Coordinates are over ``e1 .. e7``; a product with an ``e0`` component
    raises :class:`ClosureViolation`.
    """
    basis = [oc.Octonion.basis(a) for a in range(1, oc.DIM)]

    def product(x, y, z):
        w = (
            Fraction(-1, 4) * oc.associator(x, y, z)
            - oc.oform(y, z) * x
            + oc.oform(x, z) * y
            + oc.oform(x, y) * z
        )
        if w.coords[0] != 0:
            raise ClosureViolation(f"product {x} {y} {z} has a unit component")
        return w.coords[1:]

    n = oc.DIM - 1
    return TripleSystem(n, _octonion_tensor(n, basis, product), identity(n), -1, Kind.BFKTS)


def double(ts: TripleSystem) -> TripleSystem:
    """Triple product on ``V + V`` (top block indices ``0..N-1``, bottom ``N..2N-1``).

    With ``x = (x1, x2)`` etc. the product is
    ``w1 = x1 y2 z1 - eps y1 x2 z1 + 2 eps <x1|y1> z2`` and
    ``w2 = eps y2 x1 z2 - x2 y1 z2 - 2 eps <x2|y2> z1``.
    The result satisfies the triple system axioms with the sign flipped to
    ``-eps``: anti-Lie for ``eps = -1``.
    """
    if ts.kind is not Kind.BFKTS:
        raise WrongKind(f"doubling needs a BFKTS input, got {ts.kind.value}")
    if ts.form is None:
        raise MissingForm("doubling needs the bilinear form")
    n, eps, c, g = ts.dim, ts.epsilon, ts.c, ts.form
    t, b = slice(0, n), slice(n, 2 * n)
    d = zeros((2 * n,) * 4)
    delta = identity(n)
    swap = np.swapaxes(c, 1, 2)  # swap[m, j, k, l] = c[m, k, j, l]
    form_term = 2 * eps * np.einsum("jk,ml->mjkl", g, delta)
    d[t, t, b, t] += c
    d[t, b, t, t] += -eps * swap
    d[t, t, t, b] += form_term
    d[b, t, b, b] += eps * swap
    d[b, b, t, b] += -c
    d[b, b, b, t] += -form_term
    return TripleSystem(2 * n, freeze(d), None, -eps, Kind.DOUBLED)
