"""Diagnostics for constructed algebras: adjoint action, supertrace form,
derived algebra and center, and a dimension-signature name lookup."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .canon import GradedAlgebra, _parity_signs
from .exactcore import as_machine_ints, freeze, lift, rank, to_rational
from .triplesys import AxiomReport, _collect

FULL = "full"
ZERO = "zero"


@dataclass(frozen=True)
class AlgebraProfile:
    dim_even: int
    dim_odd: int
    killing_rank: int
    derived_dim: int
    center_dim: int
    candidate_names: tuple[str, ...] = field(default=())
    is_super: bool = True

    @property
    def dim(self) -> int:
        return self.dim_even + self.dim_odd

    @property
    def consistent_with_simple(self) -> bool:
        # evidence only: perfect and centerless (nondegeneracy is not required,
        # some simple superalgebras have a vanishing Killing form)
        return self.dim > 0 and self.derived_dim == self.dim and self.center_dim == 0


def adjoint(g: GradedAlgebra, i: int) -> np.ndarray:
    """Matrix of ``ad(b_i) = [b_i, .]`` in the graded basis."""
    return freeze(g.f[:, i, :])


def supertrace_form(g: GradedAlgebra) -> np.ndarray:
    """``B[i, j] = str(ad b_i ad b_j)``; the odd diagonal block enters with a minus sign."""
    if g.dim == 0:
        return freeze(np.empty((0, 0), dtype=object))
    denom, (fi,) = lift(g.f)
    (fi,) = as_machine_ints([fi], g.dim * g.dim)
    signs = np.array(g.grading if g.is_super else (1,) * g.dim, dtype=fi.dtype)
    b = np.einsum("m,min,njm->ij", signs, fi, fi)
    return freeze(to_rational(b, denom * denom))


def invariance_check(g: GradedAlgebra, form=None) -> AxiomReport:
    """``B([X,Y], Z) = B(X, [Y,Z])`` over all basis triples."""
    if g.dim == 0:
        return AxiomReport([], 0)
    b = supertrace_form(g) if form is None else form
    denom, (fi, bi) = lift(g.f, b)
    fi, bi = as_machine_ints([fi, bi], 2 * g.dim)
    lhs = np.einsum("mxy,mz->xyz", fi, bi)
    rhs = np.einsum("xm,myz->xyz", bi, fi)
    resid = (lhs - rhs)[..., None]
    return AxiomReport(_collect("invariance", resid, denom * denom), g.dim**3)


def derived_dim(g: GradedAlgebra) -> int:
    """Dimension of ``[g, g]``."""
    if g.dim == 0:
        return 0
    return rank(np.asarray(g.f).reshape(g.dim, g.dim * g.dim))


def center_dim(g: GradedAlgebra) -> int:
    if g.dim == 0:
        return 0
    # column i lists every [b_i, b_j]; the center is the kernel
    m = np.transpose(np.asarray(g.f), (0, 2, 1)).reshape(g.dim * g.dim, g.dim)
    return g.dim - rank(m)


def is_supersymmetric(g: GradedAlgebra, form) -> bool:
    """``B[i, j] = (-1)^{|i||j|} B[j, i]`` entry-wise."""
    s = _parity_signs(g)
    b = np.asarray(form, dtype=object)
    return bool(np.all(b == s * b.T))


def _signature_table(dim_even: int, dim_odd: int) -> list[tuple[str, str]]:
    """Names (with required Killing-rank class) whose dimensions match."""
    hits = []
    if dim_odd == 0:
        # so(k+1) has dimension k(k+1)/2; ordinary Lie algebras need k >= 2
        for k in range(2, dim_even + 1):
            if k * (k + 1) // 2 == dim_even:
                hits.append((f"so({k + 1})", FULL))
    if dim_odd and dim_odd % 2 == 0 and dim_odd * (dim_odd + 1) // 2 == dim_even:
        hits.append((f"osp(1,{dim_odd})", FULL))
    if (dim_even, dim_odd) == (9, 8):
        hits.append(("D(2,1;α)", ZERO))
    if (dim_even, dim_odd) == (24, 16):
        hits.append(("F(4)", FULL))
    if (dim_even, dim_odd) == (17, 14):
        hits.append(("G(3)", FULL))
    if dim_odd and dim_odd % 2 == 0:
        n = dim_odd // 2
        if n * (n - 1) // 2 + 3 == dim_even:
            # Killing form of osp(n|2) is proportional to n - 4
            hits.append((f"osp({n}|2)", ZERO if n == 4 else FULL))
    return hits


def identify(profile: AlgebraProfile) -> list[str]:
    """All table names matching the dimensions and the Killing-rank class."""
    total = profile.dim_even + profile.dim_odd
    if total == 0:
        return []
    cls = FULL if profile.killing_rank == total else ZERO if profile.killing_rank == 0 else None
    # an ordinary Lie algebra has no odd part, whatever grading it was built with
    even, odd = (profile.dim_even, profile.dim_odd) if profile.is_super else (total, 0)
    return [name for name, need in _signature_table(even, odd) if need == cls]


def profile(g: GradedAlgebra) -> AlgebraProfile:
    base = AlgebraProfile(
        dim_even=g.dim_even,
        dim_odd=g.dim_odd,
        killing_rank=rank(supertrace_form(g)),
        derived_dim=derived_dim(g),
        center_dim=center_dim(g),
        is_super=g.is_super,
    )
    return AlgebraProfile(**{**base.__dict__, "candidate_names": tuple(identify(base))})
