"""MV-terms: parser, exact evaluator, and one-variable McNaughton functions.

Grammar (lowest to highest precedence)::

    term := disj
    disj := conj {"\\/" conj}
    conj := sum {"/\\" sum}
    sum  := prod {("+" | "-") prod}
    prod := atom {"." atom}
    atom := "0" | "1" | ident | "!" atom | "d(" term "," term ")" | "(" term ")"

Identifiers are ``x`` or ``x`` followed by digits.  The Unicode connectives
⊕ ⊙ ⊖ ¬ ∨ ∧ are accepted as aliases.
"""
from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence

from .core import Verdict
from .errors import (
    MalformedInputError,
    MissingBindingError,
    TermSyntaxError,
    UnknownIdentifierError,
    UnsupportedArityError,
)

ZERO = Fraction(0)
ONE = Fraction(1)

# -- pointwise operations on [0, 1] ------------------------------------------

POINTWISE: dict[str, Callable[[Fraction, Fraction], Fraction]] = {
    "oplus": lambda u, v: min(ONE, u + v),
    "odot": lambda u, v: max(ZERO, u + v - 1),
    "ominus": lambda u, v: max(ZERO, u - v),
    "join": max,
    "meet": min,
    "dist": lambda u, v: abs(u - v),
}

SYMBOLS = {"oplus": "+", "odot": ".", "ominus": "-", "join": "\\/", "meet": "/\\"}


# -- syntax tree ---------------------------------------------------------------


class Term:
    __slots__ = ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Const(Term):
    value: int

    def __repr__(self):
        return f"Const {self.value}"


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __repr__(self):
        return f"Var {self.name}"


@dataclass(frozen=True)
class Neg(Term):
    arg: Term

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True)
class Bin(Term):
    op: str
    left: Term
    right: Term

    def __repr__(self):
        name = {"oplus": "Oplus", "odot": "Odot", "ominus": "Ominus",
                "join": "Join", "meet": "Meet", "dist": "Dist"}[self.op]
        return f"{name}({self.left!r}, {self.right!r})"


def render(t: Term) -> str:
    """Fully parenthesised concrete syntax that parses back to ``t``."""
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Neg):
        # binary terms render parenthesised, so the argument is always an atom
        return "!" + render(t.arg)
    if t.op == "dist":
        return f"d({render(t.left)}, {render(t.right)})"
    return f"({render(t.left)} {SYMBOLS[t.op]} {render(t.right)})"


def variables(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    if isinstance(t, Neg):
        return variables(t.arg)
    return variables(t.left) | variables(t.right)


def normalize(t: Term) -> Term:
    """Rewrite into the primitive signature {0, ¬, ⊕}."""
    if isinstance(t, Var):
        return t
    if isinstance(t, Const):
        return Const(0) if t.value == 0 else Neg(Const(0))
    if isinstance(t, Neg):
        return Neg(normalize(t.arg))
    a, b = normalize(t.left), normalize(t.right)
    return _expand(t.op, a, b)


def _expand(op: str, a: Term, b: Term) -> Term:
    if op == "oplus":
        return Bin("oplus", a, b)
    if op == "odot":
        return Neg(Bin("oplus", Neg(a), Neg(b)))
    if op == "ominus":
        return _expand("odot", a, Neg(b))
    if op == "join":
        return Bin("oplus", _expand("ominus", a, b), b)
    if op == "meet":
        return Neg(_expand("join", Neg(a), Neg(b)))
    return Bin("oplus", _expand("ominus", a, b), _expand("ominus", b, a))


# -- parser ----------------------------------------------------------------------

_PUNCT = [
    ("\\/", "join"), ("/\\", "meet"), ("+", "oplus"), ("-", "ominus"), (".", "odot"),
    ("!", "neg"), ("(", "lpar"), (")", "rpar"), (",", "comma"),
    ("⊕", "oplus"), ("⊙", "odot"), ("⊖", "ominus"), ("¬", "neg"), ("∨", "join"), ("∧", "meet"),
]


class _Tok(NamedTuple):
    kind: str
    text: str
    col: int


def _tokenize(s: str) -> list[_Tok]:
    toks, i = [], 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
            continue
        for text, kind in _PUNCT:
            if s.startswith(text, i):
                toks.append(_Tok(kind, text, i + 1))
                i += len(text)
                break
        else:
            if c.isdigit():
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                if s[i:j] not in ("0", "1"):
                    raise TermSyntaxError(f"only constants 0 and 1 are allowed, got {s[i:j]!r}", i + 1)
                toks.append(_Tok("const", s[i:j], i + 1))
                i = j
            elif c.isalpha() or c == "_":
                j = i
                while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                    j += 1
                word = s[i:j]
                if word == "d":
                    toks.append(_Tok("dist", word, i + 1))
                elif word == "x" or (word[0] == "x" and word[1:].isdigit()):
                    toks.append(_Tok("var", word, i + 1))
                else:
                    raise UnknownIdentifierError(f"unknown identifier {word!r} at column {i + 1}")
                i = j
            else:
                raise TermSyntaxError(f"unexpected character {c!r}", i + 1)
    toks.append(_Tok("eof", "", len(s) + 1))
    return toks


class _Parser:
    _LEVELS = [("join",), ("meet",), ("oplus", "ominus"), ("odot",)]

    def __init__(self, s: str):
        self.toks = _tokenize(s)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            what = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise TermSyntaxError(f"expected {kind}, found {what}", tok.col)
        self.pos += 1
        return tok

    def level(self, i: int) -> Term:
        if i == len(self._LEVELS):
            return self.atom()
        left = self.level(i + 1)
        while self.peek().kind in self._LEVELS[i]:
            op = self.take(self.peek().kind).kind
            left = Bin(op, left, self.level(i + 1))
        return left

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "const":
            self.pos += 1
            return Const(int(tok.text))
        if tok.kind == "var":
            self.pos += 1
            return Var(tok.text)
        if tok.kind == "neg":
            self.pos += 1
            return Neg(self.atom())
        if tok.kind == "dist":
            self.pos += 1
            self.take("lpar")
            a = self.level(0)
            self.take("comma")
            b = self.level(0)
            self.take("rpar")
            return Bin("dist", a, b)
        if tok.kind == "lpar":
            self.pos += 1
            inner = self.level(0)
            self.take("rpar")
            return inner
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise TermSyntaxError(f"unexpected {what}", tok.col)


def parse(s: str) -> Term:
    p = _Parser(s)
    t = p.level(0)
    p.take("eof")
    return t


def as_term(t) -> Term:
    return t if isinstance(t, Term) else parse(t)


# -- evaluation -----------------------------------------------------------------------


def _as_unit(v) -> Fraction:
    try:
        q = Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError):
        raise MalformedInputError(f"not a rational: {v!r}") from None
    if not ZERO <= q <= ONE:
        raise MalformedInputError(f"value {q} outside [0,1]")
    return q


def evaluate(t, valuation: Mapping[str, object]) -> Fraction:
    t = as_term(t)
    val = {k: _as_unit(v) for k, v in valuation.items()}
    return _eval(t, val)


def _eval(t: Term, val: Mapping[str, Fraction]) -> Fraction:
    if isinstance(t, Const):
        return Fraction(t.value)
    if isinstance(t, Var):
        try:
            return val[t.name]
        except KeyError:
            raise MissingBindingError(f"no value bound for variable {t.name!r}") from None
    if isinstance(t, Neg):
        return ONE - _eval(t.arg, val)
    return POINTWISE[t.op](_eval(t.left, val), _eval(t.right, val))


# -- one-variable piecewise-linear functions ------------------------------------------------


@dataclass(frozen=True)
class PL1:
    """Continuous piecewise-linear function on [0,1] given by its canonical breakpoints."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = self.points
        if len(pts) < 2 or pts[0][0] != 0 or pts[-1][0] != 1:
            raise MalformedInputError("breakpoints must start at 0 and end at 1")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise MalformedInputError("breakpoint abscissae must strictly increase")
            slope = (y1 - y0) / (x1 - x0)
            if slope.denominator != 1:
                raise MalformedInputError(f"non-integer slope {slope} on [{x0}, {x1}]")
        for _, y in pts:
            if not ZERO <= y <= ONE:
                raise MalformedInputError(f"value {y} outside [0,1]")

    @classmethod
    def from_points(cls, pts: Iterable[tuple]) -> "PL1":
        pts = [(Fraction(x), Fraction(y)) for x, y in pts]
        return cls(tuple(_drop_collinear(pts)))

    @classmethod
    def const(cls, c) -> "PL1":
        c = Fraction(c)
        return cls(((ZERO, c), (ONE, c)))

    @classmethod
    def identity(cls) -> "PL1":
        return cls(((ZERO, ZERO), (ONE, ONE)))

    @cached_property
    def xs(self) -> tuple[Fraction, ...]:
        return tuple(p[0] for p in self.points)

    def values_at(self, xs: Sequence[Fraction]) -> list[Fraction]:
        """Evaluate at sorted abscissae in one sweep."""
        out, i, pts = [], 0, self.points
        for x in xs:
            while i < len(pts) - 2 and pts[i + 1][0] <= x:
                i += 1
            (x0, y0), (x1, y1) = pts[i], pts[i + 1]
            out.append(y0 if x == x0 else y1 if x == x1 else y0 + (y1 - y0) * (x - x0) / (x1 - x0))
        return out

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        xs = self.xs
        i = bisect.bisect_right(xs, x) - 1
        if i >= len(xs) - 1:
            return self.points[-1][1]
        (x0, y0), (x1, y1) = self.points[i], self.points[i + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    @property
    def is_zero(self) -> bool:
        return all(y == 0 for _, y in self.points)

    def slopes(self) -> list[int]:
        return [int((y1 - y0) / (x1 - x0)) for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])]

    def as_list(self) -> list[list[str]]:
        return [[str(x), str(y)] for x, y in self.points]


def _drop_collinear(pts: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        (xa, ya), (xb, yb), (xc, yc) = out[-1], pts[i], pts[i + 1]
        if (yb - ya) * (xc - xb) != (yc - yb) * (xb - xa):
            out.append(pts[i])
    out.append(pts[-1])
    return out


def _apply(fn, switches, *fs: PL1) -> PL1:
    """Pointwise ``fn`` of PL1 arguments.

    ``fn`` is linear on each region cut out by the zero sets of the (affine)
    ``switches``, so the result is linear between merged breakpoints once every
    sign change of a switch is added as a breakpoint.
    """
    xs = sorted(set(itertools.chain.from_iterable(f.xs for f in fs)))
    grid = [xs[0]]
    for a, b in zip(xs, xs[1:]):
        va = [f(a) for f in fs]
        vb = [f(b) for f in fs]
        cuts = set()
        for s in switches:
            sa, sb = s(*va), s(*vb)
            if (sa < 0 < sb) or (sb < 0 < sa):
                cuts.add(a + (b - a) * sa / (sa - sb))
        grid.extend(sorted(cuts))
        grid.append(b)
    return PL1.from_points((x, fn(*(f(x) for f in fs))) for x in grid)


_SWITCHES = {
    "oplus": [lambda u, v: u + v - 1],
    "odot": [lambda u, v: u + v - 1],
    "ominus": [lambda u, v: u - v],
    "join": [lambda u, v: u - v],
    "meet": [lambda u, v: u - v],
    "dist": [lambda u, v: u - v],
}


def pl_combine(op: str, f: PL1, g: PL1) -> PL1:
    if op not in POINTWISE:
        raise MalformedInputError(f"unknown operation {op!r}")
    return _apply(POINTWISE[op], _SWITCHES[op], f, g)


def pl_neg(f: PL1) -> PL1:
    return PL1(tuple((x, ONE - y) for x, y in f.points))


def pl_times(n: int, f: PL1) -> PL1:
    """n·f = f ⊕ ... ⊕ f = min(1, n f)."""
    if n == 0:
        return PL1.const(0)
    return _apply(lambda u: min(ONE, n * u), [lambda u: n * u - 1], f)


def to_pl1(t) -> PL1:
    t = as_term(t)
    vs = variables(t)
    if len(vs) > 1:
        raise UnsupportedArityError(f"term uses {len(vs)} variables {sorted(vs)}; only one is supported")
    return _to_pl1(t)


def _to_pl1(t: Term) -> PL1:
    if isinstance(t, Const):
        return PL1.const(t.value)
    if isinstance(t, Var):
        return PL1.identity()
    if isinstance(t, Neg):
        return pl_neg(_to_pl1(t.arg))
    return pl_combine(t.op, _to_pl1(t.left), _to_pl1(t.right))


# -- closed subsets of [0,1] -----------------------------------------------------------------


@dataclass(frozen=True)
class ClosedSet1D:
    """Finite union of disjoint closed rational intervals, sorted; points are degenerate intervals."""

    intervals: tuple[tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def of(cls, intervals: Iterable[tuple]) -> "ClosedSet1D":
        ivs = sorted((Fraction(a), Fraction(b)) for a, b in intervals)
        out: list[list[Fraction]] = []
        for a, b in ivs:
            if a > b:
                raise MalformedInputError(f"empty interval [{a}, {b}]")
            if out and a <= out[-1][1]:
                out[-1][1] = max(out[-1][1], b)
            else:
                out.append([a, b])
        return cls(tuple((a, b) for a, b in out))

    @classmethod
    def full(cls) -> "ClosedSet1D":
        return cls(((ZERO, ONE),))

    def is_empty(self) -> bool:
        return not self.intervals

    def is_full(self) -> bool:
        return self.intervals == ((ZERO, ONE),)

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        return any(a <= x <= b for a, b in self.intervals)

    def issubset(self, other: "ClosedSet1D") -> bool:
        return all(any(c <= a and b <= d for c, d in other.intervals) for a, b in self.intervals)

    def union(self, other: "ClosedSet1D") -> "ClosedSet1D":
        return ClosedSet1D.of(self.intervals + other.intervals)

    def intersection(self, other: "ClosedSet1D") -> "ClosedSet1D":
        return ClosedSet1D.of(
            (max(a, c), min(b, d))
            for a, b in self.intervals for c, d in other.intervals
            if max(a, c) <= min(b, d)
        )

    def as_list(self) -> list[list[str]]:
        return [[str(a), str(b)] for a, b in self.intervals]

    def __str__(self):
        if not self.intervals:
            return "{}"
        return " ∪ ".join(f"{{{a}}}" if a == b else f"[{a}, {b}]" for a, b in self.intervals)


def zero_set(f: PL1) -> ClosedSet1D:
    # f ≥ 0 and linear between breakpoints, so f vanishes on a piece iff at both ends
    ivs: list[list[Fraction]] = []
    prev_zero = False
    for x, y in f.points:
        if y == 0:
            if prev_zero:
                ivs[-1][1] = x
            else:
                ivs.append([x, x])
        prev_zero = y == 0
    return ClosedSet1D(tuple((a, b) for a, b in ivs))


# -- equality and element classification in F[1] ---------------------------------------------


class EqResult(NamedTuple):
    equal: bool
    witness: Optional[Fraction] = None


def pl_equal(f: PL1, g: PL1) -> EqResult:
    if f == g:
        return EqResult(True)
    for x in sorted(set(f.xs) | set(g.xs)):
        if f(x) != g(x):
            return EqResult(False, x)
    raise AssertionError("canonical PL1 values differ structurally but agree on all breakpoints")


def term_eq1(t1, t2) -> EqResult:
    return pl_equal(to_pl1(t1), to_pl1(t2))


def archimedean_pl(f: PL1) -> bool:
    """Archimedean iff the zero set is open in [0,1], i.e. empty or everything."""
    z = zero_set(f)
    return z.is_empty() or z.is_full()


def archimedean_witness_pl(f: PL1, n_max: int = 64) -> Verdict:
    """Direct search for the least n ≤ n_max with (n+1)f ⊖ nf = 0."""
    prev = PL1.const(0)
    for n in range(n_max + 1):
        nxt = pl_combine("oplus", prev, f)
        if pl_combine("ominus", nxt, prev).is_zero:
            return Verdict(True, n)
        prev = nxt
    return Verdict(False)


def min_positive_value(f: PL1) -> Optional[Fraction]:
    vals = [y for _, y in f.points if y > 0]
    return min(vals) if vals else None


def is_infinitesimal_pl(f: PL1) -> bool:
    """Only 0 is infinitesimal in F[1]; a nonzero f is refuted with an explicit n."""
    v = min_positive_value(f)
    if v is None:
        return True
    n = math.ceil(1 / v)
    if pl_combine("odot", pl_times(n, f), f).is_zero:
        raise AssertionError(f"n·f ⊙ f vanished for n = {n} although f has value {v}")
    return False


def quasiarchimedean_pl(f: PL1, n_max: int = 64) -> Verdict:
    """Least n ≤ n_max with (n+1)f ⊖ nf infinitesimal."""
    for n in range(n_max + 1):
        if is_infinitesimal_pl(pl_combine("ominus", pl_times(n + 1, f), pl_times(n, f))):
            return Verdict(True, n)
    return Verdict(False)


# -- sampled N-variable evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class GridTable:
    denominator: int
    dimension: int
    variables: tuple[str, ...]
    points: tuple[tuple[Fraction, ...], ...]
    values: tuple[Fraction, ...]
    sampled: bool = True  # never a proof of a universal statement


def grid_eval_n(t, denominator: int, dimension: int) -> GridTable:
    if denominator < 1 or dimension < 1:
        raise MalformedInputError("denominator and dimension must be ≥ 1")
    t = as_term(t)
    names = ("x",) if dimension == 1 and variables(t) <= {"x"} else tuple(f"x{i}" for i in range(1, dimension + 1))
    extra = variables(t) - set(names)
    if extra:
        raise MissingBindingError(f"variables {sorted(extra)} not covered by a {dimension}-dimensional grid")
    axis = [Fraction(i, denominator) for i in range(denominator + 1)]
    pts = tuple(itertools.product(axis, repeat=dimension))
    vals = tuple(_eval(t, dict(zip(names, p))) for p in pts)
    return GridTable(denominator, dimension, names, pts, vals)


# -- corpus ------------------------------------------------------------------------------------


def load_corpus(path: Optional[str] = None) -> list[str]:
    """One term per line; blank lines and ``#`` comments are skipped."""
    if path is None:
        text = resources.files("mvalgebra").joinpath("data/f1_corpus.txt").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def corpus_functions(terms: Sequence[str]) -> list[tuple[str, PL1]]:
    return [(s, to_pl1(s)) for s in terms]
