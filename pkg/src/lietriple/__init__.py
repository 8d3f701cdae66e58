"""Exact construction of Lie algebras and Lie superalgebras from triple systems."""
from .analysis import AlgebraProfile, identify, invariance_check, profile, supertrace_form
from .canon import (
    GradedAlgebra,
    LeftMultiplication,
    canonical,
    check_jacobi,
    check_super_jacobi,
    lmul,
    operator_span,
)
from .exactcore import NotInSpan, Rational, gauss_select, rank, solve_in_span
from .octonion import Octonion, associator, imaginary_part, oconj, oform, omul
from .triplesys import (
    AxiomReport,
    Example1Spec,
    Kind,
    TripleSystem,
    alpha_from_sigma,
    build_bfkts_basic,
    build_example1,
    build_example2,
    build_example3,
    build_form_triple,
    check_bfkts,
    check_lie_triple,
    double,
    symplectic_gram,
    tri,
)

__version__ = "0.1.0"
