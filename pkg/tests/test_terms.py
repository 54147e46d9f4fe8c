from fractions import Fraction as F

import pytest

import oracles
from mvalgebra.errors import (
    MalformedInputError,
    MissingBindingError,
    TermSyntaxError,
    UnknownIdentifierError,
    UnsupportedArityError,
)
from mvalgebra.terms import (
    PL1,
    ClosedSet1D,
    archimedean_pl,
    archimedean_witness_pl,
    evaluate,
    grid_eval_n,
    is_infinitesimal_pl,
    load_corpus,
    normalize,
    parse,
    pl_combine,
    pl_neg,
    quasiarchimedean_pl,
    render,
    term_eq1,
    to_pl1,
    zero_set,
)

CORPUS = load_corpus()


def pts(*pairs):
    return tuple((F(a), F(b)) for a, b in pairs)


# -- parsing -----------------------------------------------------------------------------------------


def test_parse_examples():
    assert repr(parse("!(x + x)")) == "Neg(Oplus(Var x, Var x))"
    assert repr(parse("x . x")) == "Odot(Var x, Var x)"


def test_syntax_error_column():
    with pytest.raises(TermSyntaxError) as e:
        parse("x + * x")
    assert e.value.column == 5


@pytest.mark.parametrize("bad", ["", "x +", "(x", "d(x x)", "x x", "!"])
def test_malformed_terms(bad):
    with pytest.raises(TermSyntaxError):
        parse(bad)


def test_unknown_identifier():
    with pytest.raises((UnknownIdentifierError, TermSyntaxError)):
        parse("y + x")


def test_precedence():
    # ⊙ binds tighter than ⊕, ⊕ tighter than ∧, ∧ tighter than ∨
    assert parse("x + x . x") == parse("x + (x . x)")
    assert parse("x /\\ x + x") == parse("x /\\ (x + x)")
    assert parse("x \\/ x /\\ x") == parse("x \\/ (x /\\ x)")
    assert parse("x - x + x") == parse("(x - x) + x")


def test_unicode_aliases():
    assert parse("¬x ⊕ x") == parse("!x + x")
    assert parse("x ⊙ x") == parse("x . x")


@pytest.mark.parametrize("s", CORPUS)
def test_render_round_trip(s):
    t = parse(s)
    assert parse(render(t)) == t


# -- evaluation -------------------------------------------------------------------------------------


def test_eval_examples():
    assert evaluate("x + x", {"x": F(1, 3)}) == F(2, 3)
    assert evaluate("x . x", {"x": F(3, 4)}) == F(1, 2)
    for v in (0, F(1, 7), 1):
        assert evaluate("d(x, x)", {"x": v}) == 0


def test_eval_errors():
    with pytest.raises(MissingBindingError):
        evaluate("x1 + x2", {"x1": F(1, 2)})
    with pytest.raises(MalformedInputError):
        evaluate("x", {"x": F(3, 2)})


@pytest.mark.parametrize("s", CORPUS)
def test_normal_form_preserves_value(s):
    t = parse(s)
    n = normalize(t)
    for x in oracles.grid(6):
        assert evaluate(n, {"x": x}) == evaluate(t, {"x": x})


# -- PL realisation --------------------------------------------------------------------------------


def test_to_pl1_examples():
    assert to_pl1("x + x").points == pts((0, 0), ("1/2", 1), (1, 1))
    assert to_pl1("x . x").points == pts((0, 0), ("1/2", 0), (1, 1))
    assert to_pl1("x - x") == PL1.const(0)


def test_multivariable_rejected():
    with pytest.raises(UnsupportedArityError):
        to_pl1("x1 + x2")


@pytest.mark.parametrize("s", CORPUS)
def test_pl_agrees_with_independent_evaluator(s):
    f = to_pl1(s)
    for x in oracles.grid(32):
        assert f(x) == oracles.eval_term(s, x)
    assert all(isinstance(k, int) for k in f.slopes())


@pytest.mark.parametrize("s", CORPUS)
def test_pl_canonical(s):
    f = to_pl1(s)
    ps = f.points
    assert ps[0][0] == 0 and ps[-1][0] == 1
    for (x0, y0), (x1, y1), (x2, y2) in zip(ps, ps[1:], ps[2:]):
        assert (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0)


def test_pl_combine_examples():
    assert pl_neg(to_pl1("x")).points == pts((0, 1), (1, 0))
    assert pl_combine("ominus", to_pl1("!x"), to_pl1("x"))(F(3, 4)) == 0
    f = to_pl1("x")
    m = pl_combine("meet", f, pl_neg(f))
    assert m(0) == 0 and m(1) == 0


def test_pl_rejects_non_integer_slope():
    with pytest.raises(MalformedInputError):
        PL1(pts((0, 0), (1, "1/2")))


# -- zero sets --------------------------------------------------------------------------------------


def test_zero_set_examples():
    assert zero_set(to_pl1("x . x")) == ClosedSet1D.of([(0, F(1, 2))])
    assert zero_set(to_pl1("x")) == ClosedSet1D.of([(0, 0)])
    assert zero_set(PL1.const(0)).is_full()
    assert zero_set(to_pl1("d(x + x + x, !x)")) == ClosedSet1D.of([(F(1, 4), F(1, 4))])


@pytest.mark.parametrize("s", CORPUS)
def test_zero_set_matches_sampled_oracle(s):
    z = zero_set(to_pl1(s))
    for x in oracles.grid(40):
        assert (x in z) == (oracles.eval_term(s, x) == 0)
    for a, b in z.intervals:
        assert oracles.eval_term(s, a) == 0 and oracles.eval_term(s, b) == 0


def test_corpus_covers_zero_set_shapes():
    shapes = set()
    for s in CORPUS:
        z = zero_set(to_pl1(s))
        if z.is_empty():
            shapes.add("none")
        elif z.is_full():
            shapes.add("everything")
        for a, b in z.intervals:
            shapes.add("boundary" if a == 0 or b == 1 else "interior")
            shapes.add("point" if a == b else "interval")
    assert {"none", "everything", "boundary", "interior", "point", "interval"} <= shapes
    assert 18 <= len(CORPUS) <= 30


# -- equality and classification -----------------------------------------------------------------


def test_term_eq_examples():
    assert term_eq1("x \\/ !x", "!(x /\\ !x)").equal
    r = term_eq1("x", "x + x")
    assert not r.equal and r.witness is not None
    assert evaluate("x", {"x": r.witness}) != evaluate("x + x", {"x": r.witness})
    assert term_eq1("x - x", "0").equal


def test_archimedean_examples():
    assert not archimedean_pl(to_pl1("x"))
    assert archimedean_pl(PL1.const(0))
    f = to_pl1("x \\/ !x")
    assert archimedean_pl(f)
    assert archimedean_witness_pl(f, 64) == (True, 2)


@pytest.mark.parametrize("s", CORPUS)
def test_archimedean_via_zero_set_matches_search(s):
    f = to_pl1(s)
    assert archimedean_pl(f) == archimedean_witness_pl(f, 64).holds


@pytest.mark.parametrize("s", CORPUS)
def test_no_nonzero_infinitesimals_and_quasi_equals_arch(s):
    f = to_pl1(s)
    assert is_infinitesimal_pl(f) == f.is_zero
    assert quasiarchimedean_pl(f, 64).holds == archimedean_pl(f)


def test_grid_eval():
    t = grid_eval_n("x1 - x2", 2, 2)
    assert len(t.values) == 9 and t.sampled
    assert all(v == 0 for p, v in zip(t.points, t.values) if p[0] == p[1])
    corners = grid_eval_n("x1 + x2", 1, 2)
    assert sorted(corners.values) == [0, 1, 1, 1]
    assert set(grid_eval_n("0", 3, 2).values) == {0}
