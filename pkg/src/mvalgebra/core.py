"""Finite MV-algebras given by their ⊕ and ¬ tables.

Elements are plain integer indices into the tables.  Rational labels such as
``"1/2"`` exist only for presentation and for parsing element literals.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .errors import InvalidParameterError, MalformedInputError

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class FiniteMvAlgebra:
    size: int
    oplus: Table
    neg: tuple[int, ...]
    zero: int = 0
    labels: Optional[tuple[str, ...]] = field(default=None, repr=False)
    # coordinates in [0,1]^k for chains and products of chains
    coords: Optional[tuple[tuple[Fraction, ...], ...]] = field(default=None, repr=False)
    name: str = "table"

    def __post_init__(self):
        m = self.size
        if not isinstance(m, int) or m < 1:
            raise MalformedInputError(f"size must be a positive integer, got {m!r}")
        if len(self.oplus) != m or any(len(row) != m for row in self.oplus):
            raise MalformedInputError(f"oplus table must be {m}x{m}")
        if len(self.neg) != m:
            raise MalformedInputError(f"neg table must have length {m}")
        for v in itertools.chain(self.neg, *self.oplus, (self.zero,)):
            if not (isinstance(v, int) and 0 <= v < m):
                raise MalformedInputError(f"table entry {v!r} is not an element index in [0, {m})")
        if self.labels is not None and len(self.labels) != m:
            raise MalformedInputError("labels must name every element")

    @classmethod
    def from_tables(cls, oplus: Sequence[Sequence[int]], neg: Sequence[int], zero: int = 0, **kw):
        return cls(len(neg), tuple(tuple(r) for r in oplus), tuple(neg), zero, **kw)

    # -- derived structure -------------------------------------------------

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def one(self) -> int:
        return self.neg[self.zero]

    @cached_property
    def odot(self) -> Table:
        n, s = self.neg, self.oplus
        return tuple(tuple(n[s[n[x]][n[y]]] for y in self.elements) for x in self.elements)

    @cached_property
    def ominus(self) -> Table:
        n, d = self.neg, self.odot
        return tuple(tuple(d[x][n[y]] for y in self.elements) for x in self.elements)

    @cached_property
    def leq(self) -> tuple[tuple[bool, ...], ...]:
        z = self.zero
        return tuple(tuple(row[y] == z for y in self.elements) for row in self.ominus)

    @cached_property
    def join(self) -> Table:
        # x ∨ y = (x ⊖ y) ⊕ y
        s, m = self.oplus, self.ominus
        return tuple(tuple(s[m[x][y]][y] for y in self.elements) for x in self.elements)

    @cached_property
    def meet(self) -> Table:
        n, j = self.neg, self.join
        return tuple(tuple(n[j[n[x]][n[y]]] for y in self.elements) for x in self.elements)

    @cached_property
    def dist(self) -> Table:
        s, m = self.oplus, self.ominus
        return tuple(tuple(s[m[x][y]][m[y][x]] for y in self.elements) for x in self.elements)

    @cached_property
    def mult(self) -> Table:
        """``mult[x][n]`` is n·x for 0 ≤ n ≤ size (the sequence is constant afterwards)."""
        rows = []
        for x in self.elements:
            row = [self.zero]
            for _ in range(self.size):
                row.append(self.oplus[row[-1]][x])
            rows.append(tuple(row))
        return tuple(rows)

    def times(self, n: int, x: int) -> int:
        return self.mult[x][min(n, self.size)]

    # -- presentation ------------------------------------------------------

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def element(self, literal) -> int:
        """Resolve an element literal: an index, a label, or a rational value for chains."""
        if isinstance(literal, bool):
            raise MalformedInputError(f"bad element literal {literal!r}")
        if isinstance(literal, int):
            idx = literal
        else:
            text = str(literal).strip()
            if re.fullmatch(r"\d+", text):
                idx = int(text)
            else:
                idx = self._lookup_label(text)
        if not 0 <= idx < self.size:
            raise MalformedInputError(f"element index {idx} out of range for size {self.size}")
        return idx

    def _lookup_label(self, text: str) -> int:
        if self.labels is not None and text in self.labels:
            return self.labels.index(text)
        if self.coords is not None:
            try:
                parts = text.strip("()").split(",")
                want = tuple(Fraction(p.strip()) for p in parts)
            except (ValueError, ZeroDivisionError):
                raise MalformedInputError(f"unknown element literal {text!r}") from None
            for i, c in enumerate(self.coords):
                if c == want:
                    return i
        raise MalformedInputError(f"unknown element literal {text!r}")


def mk_chain(n: int) -> FiniteMvAlgebra:
    """The Łukasiewicz chain {0, 1/n, ..., 1}; index i encodes i/n."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidParameterError(f"chain length must be a positive integer, got {n!r}")
    oplus = tuple(tuple(min(n, i + j) for j in range(n + 1)) for i in range(n + 1))
    neg = tuple(n - i for i in range(n + 1))
    coords = tuple((Fraction(i, n),) for i in range(n + 1))
    labels = tuple(str(c[0]) for c in coords)
    return FiniteMvAlgebra(n + 1, oplus, neg, 0, labels, coords, name=f"chain({n})")


def mk_product(a: FiniteMvAlgebra, b: FiniteMvAlgebra) -> FiniteMvAlgebra:
    """Componentwise product; element (x, y) has index x * |b| + y."""
    mb = b.size
    m = a.size * mb
    oplus = tuple(
        tuple(a.oplus[i // mb][j // mb] * mb + b.oplus[i % mb][j % mb] for j in range(m))
        for i in range(m)
    )
    neg = tuple(a.neg[i // mb] * mb + b.neg[i % mb] for i in range(m))
    zero = a.zero * mb + b.zero
    coords = None
    if a.coords is not None and b.coords is not None:
        coords = tuple(a.coords[i // mb] + b.coords[i % mb] for i in range(m))
        labels = tuple("(" + ",".join(str(v) for v in c) + ")" for c in coords)
    else:
        labels = tuple(f"({a.label(i // mb)},{b.label(i % mb)})" for i in range(m))
    return FiniteMvAlgebra(m, oplus, neg, zero, labels, coords, name=f"{a.name}x{b.name}")


def projections(a: FiniteMvAlgebra, b: FiniteMvAlgebra, prod: FiniteMvAlgebra):
    """Element maps of the two projections out of ``mk_product(a, b)``."""
    mb = b.size
    return (
        tuple(i // mb for i in prod.elements),
        tuple(i % mb for i in prod.elements),
    )


# -- axioms ----------------------------------------------------------------


class AxiomFailure(NamedTuple):
    axiom: str
    witness: tuple[int, ...]


_MAX_FAILURES_PER_AXIOM = 10


def check_axioms(A: FiniteMvAlgebra) -> list[AxiomFailure]:
    """Exhaustively test the MV axioms; the result is empty iff ``A`` is an MV-algebra."""
    s, n, z = A.oplus, A.neg, A.zero
    E = A.elements
    out: list[AxiomFailure] = []
    counts: dict[str, int] = {}

    def fail(name, *w):
        if counts.get(name, 0) < _MAX_FAILURES_PER_AXIOM:
            out.append(AxiomFailure(name, w))
        counts[name] = counts.get(name, 0) + 1

    one = n[z]
    for x in E:
        if s[x][z] != x:
            fail("zero-unit", x)
        if n[n[x]] != x:
            fail("involution", x)
        if s[x][one] != one:
            fail("one-absorbing", x)
    for x in E:
        for y in E:
            if s[x][y] != s[y][x]:
                fail("commutativity", x, y)
            if s[n[s[n[x]][y]]][y] != s[n[s[n[y]][x]]][x]:
                fail("mv-axiom", x, y)
    for x in E:
        sx = s[x]
        for y in E:
            sy = s[y]
            sxy = s[sx[y]]
            for w in E:
                if sxy[w] != sx[sy[w]]:
                    fail("associativity", x, y, w)
    if not out:
        # order axioms only make sense once the equational base holds
        leq = A.leq
        for x in E:
            if not (leq[z][x] and leq[x][one]):
                fail("bounds", x)
            for y in E:
                if x != y and leq[x][y] and leq[y][x]:
                    fail("antisymmetry", x, y)
    return out


# -- derived operations and element classification -------------------------


def derived_ops(A: FiniteMvAlgebra, x: int, y: int, n: int = 0) -> dict[str, int]:
    return {
        "odot": A.odot[x][y],
        "ominus": A.ominus[x][y],
        "join": A.join[x][y],
        "meet": A.meet[x][y],
        "dist": A.dist[x][y],
        "times": A.times(n, x),
    }


class Verdict(NamedTuple):
    holds: bool
    witness: Optional[int] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class ElementClass:
    infinitesimal: bool
    archimedean: bool
    quasiarchimedean: bool
    stabilization_index: Optional[int] = None
    quasi_index: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "infinitesimal": self.infinitesimal,
            "archimedean": self.archimedean,
            "quasiarchimedean": self.quasiarchimedean,
            "stabilization_index": self.stabilization_index,
            "quasi_index": self.quasi_index,
        }


def is_infinitesimal(A: FiniteMvAlgebra, a: int) -> bool:
    # n ≤ |A| suffices: n·a takes at most |A| values and is nondecreasing
    mult, od, z = A.mult[a], A.odot, A.zero
    return all(od[mult[n]][a] == z for n in range(A.size + 1))


def is_archimedean(A: FiniteMvAlgebra, a: int) -> Verdict:
    mult, om, z = A.mult[a], A.ominus, A.zero
    for n in range(A.size):
        if om[mult[n + 1]][mult[n]] == z:
            return Verdict(True, n)
    return Verdict(False)


def is_quasiarchimedean(A: FiniteMvAlgebra, a: int) -> Verdict:
    mult, om = A.mult[a], A.ominus
    for n in range(A.size):
        if is_infinitesimal(A, om[mult[n + 1]][mult[n]]):
            return Verdict(True, n)
    return Verdict(False)


def classify_element(A: FiniteMvAlgebra, a: int) -> ElementClass:
    arch = is_archimedean(A, a)
    quasi = is_quasiarchimedean(A, a)
    return ElementClass(is_infinitesimal(A, a), arch.holds, quasi.holds, arch.witness, quasi.witness)
