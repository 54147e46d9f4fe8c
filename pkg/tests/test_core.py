from fractions import Fraction as F

import pytest

import oracles
from mvalgebra.core import (
    FiniteMvAlgebra,
    check_axioms,
    classify_element,
    derived_ops,
    is_archimedean,
    is_infinitesimal,
    is_quasiarchimedean,
    mk_chain,
    mk_product,
    projections,
)
from mvalgebra.errors import InvalidParameterError, MalformedInputError


def test_chain3_satisfies_axioms():
    assert check_axioms(mk_chain(3)) == []


def test_product_satisfies_axioms():
    assert check_axioms(mk_product(mk_chain(1), mk_chain(2))) == []
    assert check_axioms(mk_product(mk_chain(2), mk_chain(3))) == []


def test_corrupted_negation_reports_involution_at_half():
    C = mk_chain(2)
    bad = FiniteMvAlgebra(3, C.oplus, (2, 0, 0), 0, C.labels)
    failures = check_axioms(bad)
    inv = [f for f in failures if f.axiom == "involution"]
    assert inv and inv[0].witness == (1,)
    assert bad.label(1) == "1/2"


def test_dimension_mismatch_is_malformed():
    with pytest.raises(MalformedInputError):
        FiniteMvAlgebra(2, ((0, 1),), (1, 0))
    with pytest.raises(MalformedInputError):
        FiniteMvAlgebra(2, ((0, 1), (1, 1)), (1, 0, 0))
    with pytest.raises(MalformedInputError):
        FiniteMvAlgebra(2, ((0, 1), (1, 5)), (1, 0))


def test_mk_chain_rejects_zero():
    with pytest.raises(InvalidParameterError):
        mk_chain(0)


def test_chain1_is_boolean():
    B = mk_chain(1)
    assert B.size == 2 and B.oplus == ((0, 1), (1, 1)) and B.neg == (1, 0)


@pytest.mark.parametrize("x,y", [("1/2", "3/4"), ("1/4", "1/4"), ("0/4", "4/4"), ("3/4", "3/4")])
def test_chain4_ops_match_oracle(x, y):
    A = mk_chain(4)
    a, b = A.element(x), A.element(y)
    vx, vy = (F(x),), (F(y),)
    d = derived_ops(A, a, b, n=3)
    assert A.coords[A.oplus[a][b]] == oracles.oplus(vx, vy)
    assert A.coords[d["odot"]] == oracles.odot(vx, vy)
    assert A.coords[d["ominus"]] == oracles.ominus(vx, vy)
    assert A.coords[d["join"]] == oracles.join(vx, vy)
    assert A.coords[d["meet"]] == oracles.meet(vx, vy)
    assert A.coords[d["dist"]] == oracles.dist(vx, vy)
    assert A.coords[d["times"]] == oracles.times(3, vx)


def test_frozen_chain4_values():
    A = mk_chain(4)
    h, tq, q = A.element("1/2"), A.element("3/4"), A.element("1/4")
    assert A.label(A.oplus[h][tq]) == "1"
    assert A.label(A.odot[h][tq]) == "1/4"
    assert A.label(A.dist[q][tq]) == "1/2"
    assert A.meet[A.ominus[tq][q]][A.ominus[q][tq]] == A.zero
    assert derived_ops(A, h, h)["dist"] == A.zero
    assert derived_ops(A, h, h, 0)["times"] == A.zero


def test_product_construction():
    P = mk_product(mk_chain(1), mk_chain(2))
    assert P.size == 6
    s = P.oplus[P.element("(1,0)")][P.element("(0,1/2)")]
    assert P.label(s) == "(1,1/2)"
    p1, p2 = projections(mk_chain(1), mk_chain(2), P)
    assert len(p1) == len(p2) == 6
    assert P.coords == tuple(oracles.product_values(1, 2))


def test_element_literals():
    A = mk_chain(4)
    assert A.element(2) == A.element("2") == A.element("1/2")
    with pytest.raises(MalformedInputError):
        A.element("7/9")
    with pytest.raises(MalformedInputError):
        A.element(9)


def test_infinitesimal_examples():
    A = mk_chain(4)
    assert is_infinitesimal(A, A.zero)
    assert not is_infinitesimal(A, A.element("1/4"))
    P = mk_product(mk_chain(1), mk_chain(3))
    assert not is_infinitesimal(P, P.element("(0,1/3)"))


def test_archimedean_examples():
    A = mk_chain(5)
    assert is_archimedean(A, A.zero) == (True, 0)
    assert is_archimedean(A, A.element("1/5")) == (True, 5)
    assert is_quasiarchimedean(mk_chain(6), mk_chain(6).element("1/2")).holds
    P = mk_product(mk_chain(1), mk_chain(1))
    assert is_quasiarchimedean(P, P.element("(1,0)")) == (True, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_least_archimedean_index_matches_oracle(n):
    A = mk_chain(n)
    for a in A.elements:
        v = A.coords[a]
        want = next(k for k in range(2 * n + 2)
                    if oracles.ominus(oracles.times(k + 1, v), oracles.times(k, v)) == oracles.zero_like(v))
        assert is_archimedean(A, a).witness == want


@pytest.mark.parametrize("a,b", [(1, 1), (1, 4), (2, 3), (3, 5)])
def test_quantifier_bound_agrees_with_larger_bound(a, b):
    P = mk_product(mk_chain(a), mk_chain(b))
    for x in P.elements:
        v = P.coords[x]
        big = 4 * P.size
        inf = all(oracles.odot(oracles.times(n, v), v) == oracles.zero_like(v) for n in range(big))
        arch = any(oracles.ominus(oracles.times(n + 1, v), oracles.times(n, v)) == oracles.zero_like(v)
                   for n in range(big))
        c = classify_element(P, x)
        assert c.infinitesimal == inf
        assert c.archimedean == arch


def test_finite_algebras_have_no_nonzero_infinitesimals():
    for A in [mk_chain(n) for n in range(1, 9)] + [mk_product(mk_chain(2), mk_chain(3))]:
        assert [a for a in A.elements if is_infinitesimal(A, a)] == [A.zero]
