from fractions import Fraction as F

import pytest

from mvalgebra.ideals import enumerate_ideals, full_ideal, generate, infrad_of, zero_ideal
from mvalgebra.null import (
    FiniteFunctionAlgebra,
    galois_suite_f1,
    galois_suite_finite,
    infradical_member_f1,
    j_member_f1,
    nullstellensatz_f1,
    nullstellensatz_finite,
    principal_generator,
    rad_eq_jv_f1,
    restriction_iso,
    separating_check,
    separating_check_f1,
    separating_witness_f1,
    v_of_f1,
)
from mvalgebra.terms import ClosedSet1D, load_corpus, to_pl1

CORPUS = load_corpus()


def test_v_of_examples():
    assert v_of_f1(to_pl1("x . x")) == ClosedSet1D.of([(0, F(1, 2))])
    FA = FiniteFunctionAlgebra.full(2, 2)
    f = FA.algebra.element("(0,1/2)")
    assert FA.v_of(generate(FA.algebra, [f])) == 0b01
    assert FA.v_of(zero_ideal(FA.algebra)) == FA.all_points
    assert v_of_f1(to_pl1("0")).is_full()


def test_j_of_examples():
    at0 = ClosedSet1D.of([(0, 0)])
    assert j_member_f1(to_pl1("x"), at0) and not j_member_f1(to_pl1("!x"), at0)
    FA = FiniteFunctionAlgebra.full(3, 1)
    assert FA.j_of(0) == full_ideal(FA.algebra)
    half = ClosedSet1D.of([(0, F(1, 2))])
    assert j_member_f1(to_pl1("x . x"), half)
    assert not j_member_f1(to_pl1("x"), half) and to_pl1("x")(F(1, 4)) > 0


def test_full_carrier_sizes():
    assert FiniteFunctionAlgebra.full(3, 2).algebra.size == 27
    assert FiniteFunctionAlgebra.constants(3, 2).algebra.size == 3


@pytest.mark.parametrize("points,chain", [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)])
def test_galois_suite_full_carriers(points, chain):
    r = galois_suite_finite(FiniteFunctionAlgebra.full(points, chain))
    assert r["separating"] and r["ok"], r["counterexamples"]
    assert r["closed_sets"] == 2 ** points
    assert "closed-set-recovery" in r["counterexamples"]


def test_constants_are_not_separating():
    FA = FiniteFunctionAlgebra.constants(3, 2)
    ok, bad = separating_check(FA)
    assert not ok and len(bad) == 6
    r = galois_suite_finite(FA)
    assert r["ok"] and not r["separating"]
    assert "closed-set-recovery" not in r["counterexamples"]


def test_restriction_iso_whole_set_and_subsets():
    FA = FiniteFunctionAlgebra.full(3, 2)
    for S in range(8):
        assert restriction_iso(FA, S)
    assert FA.restriction(FA.all_points) == set(FA.vectors)


@pytest.mark.parametrize("points,chain", [(2, 2), (3, 1)])
def test_finite_nullstellensatz_every_ideal(points, chain):
    FA = FiniteFunctionAlgebra.full(points, chain)
    for I in enumerate_ideals(FA.algebra):
        r = nullstellensatz_finite(FA, I)
        assert r["ok"]
        assert infrad_of(FA.algebra, I) == FA.j_of(FA.v_of(I))


def test_f1_nullstellensatz_examples():
    x, xx = to_pl1("x"), to_pl1("x . x")
    r = infradical_member_f1(xx, x, 64)
    assert r["criterion"] and r["witness"] and r["first_failing_n"] is None
    r = infradical_member_f1(x, xx, 64)
    # 1·x ⊙ x is the generator itself, so the first failure is at n = 2
    assert not r["criterion"] and not r["witness"] and r["first_failing_n"] == 2
    report = nullstellensatz_f1("0", CORPUS, 8)
    assert report["ok"]
    assert all(row["infradical_by_criterion"] == (to_pl1(row["g"]).is_zero) for row in report["rows"])


def test_rad_eq_jv_examples():
    assert rad_eq_jv_f1("x", CORPUS)["ok"]
    assert rad_eq_jv_f1("1", CORPUS)["ok"]


def test_principal_generator():
    g = principal_generator(["x . x", "!x . !x"])
    assert v_of_f1(g) == ClosedSet1D.of([(F(1, 2), F(1, 2))])


def test_separation_witness():
    s = separating_witness_f1("1/3", "2/3")
    f = to_pl1(s)
    assert f(F(1, 3)) == 0 and f(F(2, 3)) > 0
    r = separating_check_f1(4)
    assert r["ok"] and r["pairs"] == 42


def test_f1_nullstellensatz_whole_corpus():
    for f in CORPUS:
        assert nullstellensatz_f1(f, CORPUS, 64)["ok"], f


def test_f1_galois_suite():
    r = galois_suite_f1(CORPUS, 64)
    assert r["ok"], {k: v for k, v in r["counterexamples"].items() if v}
