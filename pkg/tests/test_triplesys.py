import random
import warnings
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from lietriple import octonion as oc
from lietriple.errors import (
    BadForm,
    ClosureViolation,
    DegenerateAlpha,
    DimensionMismatch,
    MissingForm,
    PoleAtMinusOne,
    WrongKind,
)
from lietriple.exactcore import freeze, identity, mat, unit, vec
from lietriple.triplesys import (
    Example1Spec,
    Kind,
    alpha_from_sigma,
    build_bfkts_basic,
    build_example1,
    build_example2,
    build_example3,
    build_form_triple,
    check_bfkts,
    check_lie_triple,
    double,
    levi_civita,
    symplectic_gram,
    tri,
)

rng = random.Random(20261015)


def rand_vec(n):
    return vec([Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(n)])


def form(g, x, y):
    return sum(x[i] * g[i, j] * y[j] for i in range(len(x)) for j in range(len(y)))


def e(n, i):
    return unit(n, i)


# --- products ---------------------------------------------------------------

def test_tri_form_triple_examples():
    ts = build_form_triple(3, identity(3), -1)
    assert np.array_equal(tri(ts, e(3, 0), e(3, 1), e(3, 1)), -e(3, 0))
    assert np.array_equal(tri(ts, e(3, 0), e(3, 1), e(3, 2)), vec([0, 0, 0]))


def test_tri_example1_examples():
    ts = build_example1(2)
    assert np.array_equal(tri(ts, e(4, 0), e(4, 1), e(4, 2)), 2 * e(4, 3))
    for sigma in (0, 2, Fraction(-5, 3)):
        assert np.array_equal(tri(build_example1(sigma), e(4, 0), e(4, 0), e(4, 1)), e(4, 1))


def test_tri_dimension_mismatch():
    ts = build_form_triple(3, identity(3), -1)
    with pytest.raises(DimensionMismatch):
        tri(ts, e(2, 0), e(3, 0), e(3, 0))


@pytest.mark.parametrize(
    "n,gram,eps",
    [(3, identity(3), -1), (4, symplectic_gram(4), 1), (2, mat([[0, 1], [-1, 0]]), 1), (1, mat([[1]]), -1)],
)
def test_form_triple_matches_direct_formula(n, gram, eps):
    ts = build_form_triple(n, gram, eps)
    for _ in range(10):
        x, y, z = rand_vec(n), rand_vec(n), rand_vec(n)
        expected = form(gram, x, z) * y + eps * form(gram, y, z) * x
        assert np.array_equal(tri(ts, x, y, z), expected)


@pytest.mark.parametrize("n,eps", [(4, -1), (3, -1), (2, 1), (4, 1)])
def test_bfkts_basic_matches_direct_formula(n, eps):
    gram = identity(n) if eps == -1 else symplectic_gram(n)
    ts = build_bfkts_basic(n, gram, eps)
    for _ in range(10):
        x, y, z = rand_vec(n), rand_vec(n), rand_vec(n)
        expected = form(gram, x, z) * y - eps * form(gram, x, y) * z + eps * form(gram, y, z) * x
        assert np.array_equal(tri(ts, x, y, z), expected)


def test_bfkts_basic_substitution():
    ts = build_bfkts_basic(4, identity(4), -1)
    assert np.array_equal(tri(ts, e(4, 0), e(4, 0), e(4, 1)), e(4, 1))


def test_example1_sigma_zero_is_basic():
    assert np.array_equal(build_example1(0).c, build_bfkts_basic(4, identity(4), -1).c)


def test_example1_accepts_spec():
    assert np.array_equal(build_example1(Example1Spec(Fraction(2))).c, build_example1(2).c)


def test_levi_civita_orientation():
    lc = levi_civita()
    assert lc[0, 1, 2, 3] == 1
    assert lc[1, 0, 2, 3] == -1
    assert np.count_nonzero(lc) == 24


def test_example2_unit_product():
    ts = build_example2()
    # 1/3 e - 4/3 e + 4/3 e + 2/3 e with the balanced weight
    assert np.array_equal(tri(ts, e(8, 0), e(8, 0), e(8, 0)), Fraction(1) * e(8, 0))
    printed = build_example2(Fraction(-2, 3))
    assert np.array_equal(tri(printed, e(8, 0), e(8, 0), e(8, 0)), Fraction(-1, 3) * e(8, 0))


def test_example2_entries_are_thirds():
    ts = build_example2()
    assert all((3 * v).denominator == 1 for v in ts.c.flat)


def test_example2_matches_octonion_formula():
    ts = build_example2()
    for _ in range(5):
        xs = [rand_vec(8) for _ in range(3)]
        x, y, z = (oc.Octonion(v) for v in xs)
        w = (
            Fraction(1, 3) * oc.omul(oc.omul(x, oc.oconj(y)), z)
            - Fraction(4, 3) * oc.oform(y, z) * x
            + Fraction(4, 3) * oc.oform(x, z) * y
            + Fraction(2, 3) * oc.oform(x, y) * z
        )
        assert tuple(tri(ts, *xs)) == w.coords


def test_example3_substitution():
    ts = build_example3()
    # coordinates over e1..e7: index 0 is e1
    assert np.array_equal(tri(ts, e(7, 0), e(7, 0), e(7, 1)), e(7, 1))
    assert np.array_equal(tri(ts, e(7, 0), e(7, 1), e(7, 1)), -e(7, 0))


def test_example3_closure_violation(monkeypatch):
    monkeypatch.setattr(oc, "associator", lambda x, y, z: oc.E)
    with pytest.raises(ClosureViolation):
        build_example3()


# --- forms and errors -------------------------------------------------------

@pytest.mark.parametrize(
    "ts",
    [
        build_form_triple(3, identity(3), -1),
        build_form_triple(4, symplectic_gram(4), 1),
        build_bfkts_basic(4, identity(4), -1),
        build_example1(2),
        build_example2(),
        build_example3(),
    ],
    ids=["lie", "antilie", "basic", "ex1", "ex2", "ex3"],
)
def test_gram_symmetry_type(ts):
    assert np.array_equal(ts.form.T, -ts.epsilon * ts.form)


def test_bad_forms():
    with pytest.raises(BadForm):
        build_form_triple(2, symplectic_gram(2), -1)
    with pytest.raises(BadForm):
        build_form_triple(2, identity(2), 1)
    with pytest.raises(BadForm):
        build_form_triple(2, mat([[0, 0], [0, 0]]), 1)
    with pytest.raises(BadForm):
        build_bfkts_basic(3, identity(2), -1)
    with pytest.raises(BadForm):
        symplectic_gram(3)


def test_missing_form_and_wrong_kind():
    d = double(build_example1(2))
    with pytest.raises(MissingForm):
        check_bfkts(d, -1)
    with pytest.raises(WrongKind):
        double(build_form_triple(3, identity(3), -1))


# --- alpha ------------------------------------------------------------------

def test_alpha_examples():
    assert alpha_from_sigma(0) == 1
    assert alpha_from_sigma(2) == Fraction(-1, 3)
    with pytest.raises(PoleAtMinusOne):
        alpha_from_sigma(-1)
    with pytest.warns(DegenerateAlpha):
        assert alpha_from_sigma(1) == 0


def test_alpha_reciprocal_under_sign_flip():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateAlpha)
        for p, q in product(range(-4, 5), range(1, 4)):
            s = Fraction(p, q)
            if s in (1, -1):
                continue
            assert alpha_from_sigma(s) * alpha_from_sigma(-s) == 1


# --- axiom checkers ---------------------------------------------------------

def test_lie_and_anti_lie_pass():
    assert check_lie_triple(build_form_triple(3, identity(3), -1), -1).passed
    assert check_lie_triple(build_form_triple(2, symplectic_gram(2), 1), 1).passed


def test_wrong_sign_fails():
    rep = check_lie_triple(build_form_triple(3, identity(3), -1), 1)
    assert not rep.passed
    assert {f.axiom for f in rep.failures} >= {"lts-symmetry"}


def test_report_counts():
    rep = check_lie_triple(build_form_triple(3, identity(3), -1), -1)
    assert rep.checked == 2 * 27 + 243
    assert check_bfkts(build_example1(2), -1).checked == 2 * 64 + 1024


@pytest.mark.parametrize("sigma", [0, 2, Fraction(1, 3), Fraction(-7, 2), 1])
def test_example1_is_bfkts(sigma):
    assert check_bfkts(build_example1(sigma), -1).passed


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_bfkts_basic_passes(n):
    assert check_bfkts(build_bfkts_basic(n, identity(n), -1), -1).passed


def test_octonion_examples_are_bfkts():
    assert check_bfkts(build_example2(), -1).passed
    assert check_bfkts(build_example3(), -1).passed


def test_printed_example2_weight_fails():
    rep = check_bfkts(build_example2(Fraction(-2, 3)), -1)
    assert not rep.passed
    first = rep.failures[0]
    assert first.axiom == "bfkts-i"
    assert first.index == (0, 0, 0)
    assert list(first.residual) == [Fraction(-8, 3)] + [0] * 7


@pytest.mark.parametrize("scale", [Fraction(1, 2), 2, -1, Fraction(1, 3)])
def test_printed_example2_weight_not_rescued_by_rescaling(scale):
    """Rescaling the form (inside conjugation and products) does not repair -2/3."""
    basis = [oc.Octonion.basis(a) for a in range(8)]
    c = np.empty((8,) * 4, dtype=object)
    for j, k, l in product(range(8), repeat=3):
        x, y, z = basis[j], basis[k], basis[l]
        f = lambda a, b: scale * oc.oform(a, b)  # noqa: E731
        ybar = 2 * f(oc.E, y) * oc.E - y
        w = (
            Fraction(1, 3) * oc.omul(oc.omul(x, ybar), z)
            - Fraction(4, 3) * f(y, z) * x
            + Fraction(4, 3) * f(x, z) * y
            - Fraction(2, 3) * f(x, y) * z
        )
        c[:, j, k, l] = w.coords
    from lietriple.triplesys import TripleSystem

    ts = TripleSystem(8, freeze(c), freeze(scale * identity(8)), -1, Kind.BFKTS)
    assert not check_bfkts(ts, -1).passed


def test_failure_reports_located_tuple():
    ts = build_example1(2).with_entry((1, 0, 0, 1), 1)
    rep = check_bfkts(ts, -1)
    assert not rep.passed
    ids = {f.axiom for f in rep.failures}
    assert "bfkts-i" in ids
    assert any(f.index == (0, 0, 1) for f in rep.failures if f.axiom == "bfkts-i")
    keys = [(f.axiom, f.index) for f in rep.failures]
    assert keys == sorted(keys)


@pytest.mark.parametrize(
    "ts,check",
    [
        (build_form_triple(3, identity(3), -1), lambda t: check_lie_triple(t, -1)),
        (build_example1(2), lambda t: check_bfkts(t, -1)),
    ],
    ids=["lie", "bfkts"],
)
def test_every_single_entry_perturbation_fails(ts, check):
    for idx in product(range(ts.dim), repeat=4):
        assert not check(ts.with_entry(idx, 1)).passed, idx


def test_parallel_checks_agree():
    ts = double(build_example1(2)).with_entry((0, 1, 2, 3), 1)
    a = check_lie_triple(ts, 1, jobs=1)
    b = check_lie_triple(ts, 1, jobs=3)
    assert [(f.axiom, f.index, tuple(f.residual)) for f in a.failures] == [
        (f.axiom, f.index, tuple(f.residual)) for f in b.failures
    ]


def _naive_derivation(ts, eps_mid, u, v, x, y, z):
    t = lambda a, b, c: tri(ts, a, b, c)  # noqa: E731
    if eps_mid is None:
        return t(u, v, t(x, y, z)) - t(t(u, v, x), y, z) - t(x, t(u, v, y), z) - t(x, y, t(u, v, z))
    return t(u, v, t(x, y, z)) - t(t(u, v, x), y, z) - eps_mid * t(x, t(v, u, y), z) - t(x, y, t(u, v, z))


def test_random_vector_spot_check():
    """Identities on non-basis vectors agree with the basis-tuple verdict."""
    ex1 = build_example1(Fraction(3, 2))
    lts = double(ex1)
    for _ in range(5):
        u, v, x, y, z = (rand_vec(4) for _ in range(5))
        assert not any(_naive_derivation(ex1, -1, u, v, x, y, z))
        lhs = tri(ex1, x, y, z) + tri(ex1, z, y, x)
        assert np.array_equal(lhs, 2 * form(ex1.form, x, z) * y)
        u, v, x, y, z = (rand_vec(8) for _ in range(5))
        assert not any(_naive_derivation(lts, None, u, v, x, y, z))
        assert not any(tri(lts, x, y, z) + tri(lts, y, z, x) + tri(lts, z, x, y))


# --- doubling ---------------------------------------------------------------

def _doubled_direct(ts, w1, w2, w3):
    n, eps = ts.dim, ts.epsilon
    x1, x2 = w1[:n], w1[n:]
    y1, y2 = w2[:n], w2[n:]
    z1, z2 = w3[:n], w3[n:]
    g = ts.form
    t = lambda a, b, c: tri(ts, a, b, c)  # noqa: E731
    top = t(x1, y2, z1) - eps * t(y1, x2, z1) + 2 * eps * form(g, x1, y1) * z2
    bot = eps * t(y2, x1, z2) - t(x2, y1, z2) - 2 * eps * form(g, x2, y2) * z1
    return np.concatenate([top, bot])


@pytest.mark.parametrize("ts", [build_example1(2), build_bfkts_basic(3, identity(3), -1), build_example3()], ids=["ex1", "basic3", "ex3"])
def test_double_matches_block_formula(ts):
    d = double(ts)
    assert d.dim == 2 * ts.dim and d.kind is Kind.DOUBLED and d.form is None
    for _ in range(4):
        ws = [rand_vec(2 * ts.dim) for _ in range(3)]
        assert np.array_equal(tri(d, *ws), _doubled_direct(ts, *ws))


def test_double_basis_bookkeeping():
    ts = build_example1(2)
    d = double(ts)
    # top basis j, bottom basis k, top basis l only touches the top block
    out = tri(d, e(8, 0), e(8, 4 + 1), e(8, 2))
    assert np.array_equal(out[:4], tri(ts, e(4, 0), e(4, 1), e(4, 2)))
    assert not any(out[4:])


def test_doubled_systems_are_anti_lie():
    for ts in (build_bfkts_basic(4, identity(4), -1), build_example1(2)):
        d = double(ts)
        assert d.epsilon == 1
        assert check_lie_triple(d, 1).passed
        assert not check_lie_triple(d, -1).passed
