from fractions import Fraction as F

from hypothesis import given
from hypothesis import strategies as st

import oracles
from mvalgebra.core import check_axioms, classify_element, mk_chain, mk_product
from mvalgebra.gamma import LexGammaAlgebra, g_classify
from mvalgebra.ideals import (
    classify_ideal,
    enumerate_ideals,
    infrad_of,
    is_maximal_by_extension,
    rad_of,
)
from mvalgebra.spectra import check_prop24, check_prop25and26
from mvalgebra.terms import ClosedSet1D, evaluate, parse, pl_combine, render, to_pl1, zero_set


@st.composite
def finite_algebras(draw):
    if draw(st.booleans()):
        return mk_chain(draw(st.integers(1, 8)))
    a = draw(st.integers(1, 5))
    b = draw(st.integers(1, 35 // (a + 1) - 1))
    return mk_product(mk_chain(a), mk_chain(b))


@st.composite
def algebra_and_pair(draw):
    A = draw(finite_algebras())
    x = draw(st.sampled_from(A.elements))
    y = draw(st.sampled_from(A.elements))
    return A, x, y


@given(finite_algebras())
def test_bank_algebras_satisfy_axioms(A):
    assert check_axioms(A) == []


@given(algebra_and_pair())
def test_differences_meet_to_zero(p):
    A, x, y = p
    assert A.meet[A.ominus[x][y]][A.ominus[y][x]] == A.zero


@given(algebra_and_pair())
def test_distance_identity(p):
    # d(x,y) = (x ⊖ y) ∨ (y ⊖ x) on chains and products of chains
    A, x, y = p
    assert A.dist[x][y] == A.join[A.ominus[x][y]][A.ominus[y][x]]
    assert A.coords[A.dist[x][y]] == oracles.dist(A.coords[x], A.coords[y])


@given(finite_algebras(), st.data())
def test_archimedean_index_is_stationary(A, data):
    a = data.draw(st.sampled_from(A.elements))
    c = classify_element(A, a)
    assert c.archimedean and not (c.infinitesimal and a != A.zero)
    n = c.stabilization_index
    v = A.coords[a]
    for m in range(n, n + 5):
        assert oracles.times(m + 1, v) == oracles.times(m, v) or oracles.times(m, v) == tuple(F(1) for _ in v)


@given(finite_algebras())
def test_implication_lattice(A):
    for I in enumerate_ideals(A):
        f = classify_ideal(A, I)
        assert f.hyperradical == (f.quasihyperradical and f.radical)
        if f.hyperradical:
            assert f.radical
        if f.maximal:
            assert f.hyperradical and f.quasimaximal
        if f.quasimaximal:
            assert f.quasihyperradical
        if f.prime:
            assert f.quasihyperradical
            if f.hyperradical or f.radical:
                assert f.maximal
        assert f.maximal == is_maximal_by_extension(A, I)
        assert rad_of(A, I) == infrad_of(A, I)
        assert I <= infrad_of(A, I)


@given(finite_algebras())
def test_hat_archimedean_and_cozariski(A):
    assert check_prop24(A)["violations"] == []
    assert check_prop25and26(A)["violations"] == []


@given(st.integers(1, 4), st.integers(-30, 30), st.integers(-30, 30), st.integers(0, 4), st.integers(0, 4))
def test_gamma_ops_match_oracle(k, q1, q2, p1, p2):
    A = LexGammaAlgebra(k)
    x = (min(p1, k), q1 if 0 < min(p1, k) < k else (abs(q1) if p1 == 0 else -abs(q1)))
    y = (min(p2, k), q2 if 0 < min(p2, k) < k else (abs(q2) if p2 == 0 else -abs(q2)))
    assert A.oplus(x, y) == oracles.g_add(k, x, y)
    assert A.neg(A.neg(x)) == x
    assert A.oplus(A.ominus(x, y), y) == A.oplus(A.ominus(y, x), x)
    c = g_classify(k, x)
    assert c.infinitesimal == (x[0] == 0)


# -- random one-variable terms ----------------------------------------------------------------------

ATOMS = st.sampled_from(["x", "0", "1"])


def _terms(children):
    return st.one_of(
        st.builds(lambda a: f"!{a}", children),
        st.builds(lambda a, b, op: f"({a} {op} {b})", children, children,
                  st.sampled_from(["+", ".", "-", "/\\", "\\/"])),
        st.builds(lambda a, b: f"d({a}, {b})", children, children),
    )


TERMS = st.recursive(ATOMS, _terms, max_leaves=12)
POINTS = st.fractions(min_value=0, max_value=1, max_denominator=50)


@given(TERMS, POINTS)
def test_pl_realisation_matches_evaluation(s, x):
    f = to_pl1(s)
    assert f(x) == evaluate(s, {"x": x}) == oracles.eval_term(s, x)


@given(TERMS)
def test_render_round_trip(s):
    t = parse(s)
    assert parse(render(t)) == t


@given(TERMS, TERMS)
def test_zero_sets_of_lattice_ops(s, t):
    f, g = to_pl1(s), to_pl1(t)
    assert zero_set(pl_combine("oplus", f, g)) == zero_set(f).intersection(zero_set(g))
    assert zero_set(pl_combine("meet", f, g)) == zero_set(f).union(zero_set(g))


@given(TERMS, POINTS)
def test_zero_set_membership(s, x):
    f = to_pl1(s)
    assert (x in zero_set(f)) == (f(x) == 0)


@given(st.lists(st.tuples(POINTS, POINTS), max_size=4))
def test_closed_set_canonical_form(pairs):
    S = ClosedSet1D.of([(min(a, b), max(a, b)) for a, b in pairs])
    ivs = S.intervals
    assert all(a <= b for a, b in ivs)
    assert all(b < c for (_, b), (c, _) in zip(ivs, ivs[1:]))
    assert S.union(S) == S and S.intersection(ClosedSet1D.full()) == S
