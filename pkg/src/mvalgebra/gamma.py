"""The MV-algebras Γ(Z ×lex Z, (k, 0)), Chang's algebra being k = 1.

Elements are integer pairs (p, q) with (0, 0) ≤lex (p, q) ≤lex (k, 0).  These
are the only carriers in the package with nonzero infinitesimals: they are
exactly the pairs with p = 0.

Every predicate has a closed form.  For the cross-check, the same predicates
are evaluated straight from their first-order definitions over a finite window
|q| ≤ W.  Quantifiers over n stay exact with n ≤ k + 2.  For p = 0, n·x = (0, nq)
and the relevant differences are constant in n.  For p ≥ 1, n·x reaches the unit
by n = k + 1.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .core import AxiomFailure, ElementClass, FiniteMvAlgebra, mk_chain
from .errors import InvalidParameterError, MalformedInputError

Pair = tuple[int, int]


@dataclass(frozen=True)
class LexGammaAlgebra:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
            raise InvalidParameterError(f"unit k must be a positive integer, got {self.k!r}")

    @property
    def name(self) -> str:
        return f"lex_gamma({self.k})"

    @property
    def zero(self) -> Pair:
        return (0, 0)

    @property
    def one(self) -> Pair:
        return (self.k, 0)

    def is_valid(self, x) -> bool:
        p, q = x
        return (0, 0) <= (p, q) <= (self.k, 0)

    def check(self, x) -> Pair:
        try:
            p, q = x
        except (TypeError, ValueError):
            raise MalformedInputError(f"not an integer pair: {x!r}") from None
        if not (isinstance(p, int) and isinstance(q, int)) or not self.is_valid((p, q)):
            raise MalformedInputError(f"{x!r} is not an element of {self.name}")
        return (p, q)

    def element(self, literal) -> Pair:
        if isinstance(literal, (tuple, list)):
            return self.check(tuple(literal))
        m = re.fullmatch(r"\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*", str(literal))
        if not m:
            raise MalformedInputError(f"bad pair literal {literal!r}; expected '(p,q)'")
        return self.check((int(m.group(1)), int(m.group(2))))

    def label(self, x: Pair) -> str:
        return f"({x[0]},{x[1]})"

    # -- operations --------------------------------------------------------
    # Python tuples already compare lexicographically.

    def oplus(self, x: Pair, y: Pair) -> Pair:
        s = (x[0] + y[0], x[1] + y[1])
        return min(s, self.one)

    def neg(self, x: Pair) -> Pair:
        return (self.k - x[0], -x[1])

    def odot(self, x: Pair, y: Pair) -> Pair:
        return self.neg(self.oplus(self.neg(x), self.neg(y)))

    def ominus(self, x: Pair, y: Pair) -> Pair:
        return self.odot(x, self.neg(y))

    def join(self, x: Pair, y: Pair) -> Pair:
        return self.oplus(self.ominus(x, y), y)

    def meet(self, x: Pair, y: Pair) -> Pair:
        return self.neg(self.join(self.neg(x), self.neg(y)))

    def dist(self, x: Pair, y: Pair) -> Pair:
        return self.oplus(self.ominus(x, y), self.ominus(y, x))

    def leq(self, x: Pair, y: Pair) -> bool:
        return self.ominus(x, y) == (0, 0)

    def times(self, n: int, x: Pair) -> Pair:
        return min((n * x[0], n * x[1]), self.one)

    @property
    def n_bound(self) -> int:
        return self.k + 2

    def window(self, w: int) -> list[Pair]:
        """All elements with |q| ≤ w, in lexicographic order."""
        out = [(0, q) for q in range(0, w + 1)]
        for p in range(1, self.k):
            out.extend((p, q) for q in range(-w, w + 1))
        out.extend((self.k, q) for q in range(-w, 1))
        return out


# -- element classification --------------------------------------------------


def g_oplus(k: int, x, y) -> Pair:
    A = LexGammaAlgebra(k)
    return A.oplus(A.check(x), A.check(y))


def g_neg(k: int, x) -> Pair:
    A = LexGammaAlgebra(k)
    return A.neg(A.check(x))


def _least_n(A: LexGammaAlgebra, x: Pair, pred) -> Optional[int]:
    for n in range(A.n_bound + 1):
        if pred(A.ominus(A.times(n + 1, x), A.times(n, x))):
            return n
    return None


def g_classify(k: int, x) -> ElementClass:
    """Closed form: infinitesimal iff p = 0; archimedean iff p ≥ 1 or x = 0; always quasiarchimedean."""
    A = LexGammaAlgebra(k)
    x = A.check(x)
    infinitesimal = x[0] == 0
    archimedean = x[0] >= 1 or x == (0, 0)
    stab = _least_n(A, x, lambda d: d == (0, 0)) if archimedean else None
    quasi = _least_n(A, x, lambda d: d[0] == 0)
    return ElementClass(infinitesimal, archimedean, True, stab, quasi)


def is_infinitesimal_direct(A: LexGammaAlgebra, x: Pair) -> bool:
    return all(A.odot(A.times(n, x), x) == (0, 0) for n in range(A.n_bound + 1))


def classify_direct(A: LexGammaAlgebra, x: Pair) -> ElementClass:
    """Classification from the definitions, with n ≤ k + 2."""
    arch = _least_n(A, x, lambda d: d == (0, 0))
    quasi = _least_n(A, x, lambda d: is_infinitesimal_direct(A, d))
    return ElementClass(is_infinitesimal_direct(A, x), arch is not None, quasi is not None, arch, quasi)


# -- ideals --------------------------------------------------------------------


class GammaIdeal(enum.Enum):
    ZERO = "zero"
    RAD = "rad"
    FULL = "full"

    def contains(self, x: Pair) -> bool:
        if self is GammaIdeal.ZERO:
            return x == (0, 0)
        if self is GammaIdeal.RAD:
            return x[0] == 0
        return True

    def __le__(self, other: "GammaIdeal") -> bool:
        order = [GammaIdeal.ZERO, GammaIdeal.RAD, GammaIdeal.FULL]
        return order.index(self) <= order.index(other)


GAMMA_IDEALS = (GammaIdeal.ZERO, GammaIdeal.RAD, GammaIdeal.FULL)

# The ideal lattice is the 3-chain Zero < Rad < Full:
#   any ideal holding (p, q) with p ≥ 1 holds (k+1)·(p, q) = (k, 0);
#   any nonzero ideal inside Rad holds (0, q') ≤ q'·(0, q) for all q' ≥ 0.
_RAD_OF = {GammaIdeal.ZERO: GammaIdeal.RAD, GammaIdeal.RAD: GammaIdeal.RAD, GammaIdeal.FULL: GammaIdeal.FULL}
_INFRAD_OF = dict(_RAD_OF)

CLOSED_FORM_FLAGS = {
    GammaIdeal.ZERO: dict(prime=True, maximal=False, quasimaximal=False, radical=False,
                          hyperradical=False, quasihyperradical=True),
    GammaIdeal.RAD: dict(prime=True, maximal=True, quasimaximal=True, radical=True,
                         hyperradical=True, quasihyperradical=True),
    GammaIdeal.FULL: dict(prime=False, maximal=False, quasimaximal=False, radical=True,
                          hyperradical=True, quasihyperradical=True),
}


def g_ideals(k: int) -> tuple[GammaIdeal, ...]:
    LexGammaAlgebra(k)
    return GAMMA_IDEALS


def g_rad_of(I: GammaIdeal) -> GammaIdeal:
    return _RAD_OF[I]


def g_infrad_of(I: GammaIdeal) -> GammaIdeal:
    return _INFRAD_OF[I]


def g_quotient_by_rad(k: int) -> tuple[FiniteMvAlgebra, callable]:
    """A/Rad(A) ≅ chain(k); the projection sends (p, q) to the index p."""
    A = LexGammaAlgebra(k)

    def project(x) -> int:
        return A.check(x)[0]

    return mk_chain(k), project


def g_algebra_class(k: int) -> dict[str, bool]:
    LexGammaAlgebra(k)
    return dict(simple=False, quasisimple=False, semisimple=False, chain=True,
                hyperarchimedean=False, quasihyperarchimedean=True)


def g_character(k: int):
    """The unique character χ(p, q) = p/k; its kernel is Rad."""
    return lambda x: Fraction(x[0], k)


# -- window route: first-order definitions evaluated on |q| ≤ w ---------------


class GammaWindow:
    """Evaluates ideal predicates by brute force over a finite window.

    Ideals are identified with their traces on the window; ``identify`` maps a
    trace back to the tag it coincides with.
    """

    def __init__(self, A: LexGammaAlgebra, w: int, pair_w: Optional[int] = None):
        self.A = A
        self.w = w
        self.elems = A.window(w)
        self.pair_elems = A.window(pair_w if pair_w is not None else min(w, 12))
        self.N = A.n_bound

    def trace(self, I: GammaIdeal) -> frozenset:
        return frozenset(x for x in self.elems if I.contains(x))

    def identify(self, members: Iterable[Pair]) -> GammaIdeal:
        s = frozenset(members)
        for I in GAMMA_IDEALS:
            if self.trace(I) == s:
                return I
        raise MalformedInputError("window trace matches no ideal of the algebra")

    def principal_ideals(self) -> set[GammaIdeal]:
        """Ideals generated by single window elements, as downsets of multiples."""
        A = self.A
        found = set()
        for x in self.elems:
            top = A.times(self.N + 2 * self.w, x)
            found.add(self.identify(y for y in self.elems if A.leq(y, top)))
        return found

    def infrad(self, I: GammaIdeal) -> GammaIdeal:
        A = self.A
        return self.identify(
            a for a in self.elems
            if all(I.contains(A.odot(A.times(n, a), a)) for n in range(self.N + 1))
        )

    def is_prime(self, I: GammaIdeal) -> bool:
        A = self.A
        if I.contains(A.one):
            return False
        return all(
            I.contains(A.ominus(x, y)) or I.contains(A.ominus(y, x))
            for x in self.pair_elems for y in self.pair_elems
        )

    def _first_order_max(self, I: GammaIdeal, target: GammaIdeal) -> bool:
        A = self.A
        return all(
            (not I.contains(x)) == any(target.contains(A.neg(A.times(n, x))) for n in range(1, self.N + 1))
            for x in self.elems
        )

    def is_maximal(self, I: GammaIdeal) -> bool:
        return self._first_order_max(I, I)

    def is_quasimaximal(self, I: GammaIdeal) -> bool:
        return self._first_order_max(I, self.infrad(I))

    def rad(self, I: GammaIdeal) -> GammaIdeal:
        over = [M for M in GAMMA_IDEALS if self.is_maximal(M) and I <= M]
        if not over:
            return GammaIdeal.FULL
        members = set(self.elems)
        for M in over:
            members &= self.trace(M)
        return self.identify(members)

    def is_radical(self, I: GammaIdeal) -> bool:
        return self.rad(I) == I

    def _hyper(self, target: GammaIdeal) -> bool:
        A = self.A
        return all(
            any(target.contains(A.ominus(A.times(n + 1, x), A.times(n, x))) for n in range(1, self.N + 1))
            for x in self.elems
        )

    def is_hyperradical(self, I: GammaIdeal) -> bool:
        return self._hyper(I)

    def is_quasihyperradical(self, I: GammaIdeal) -> bool:
        return self._hyper(self.infrad(I))

    def flags(self, I: GammaIdeal) -> dict[str, bool]:
        return dict(
            prime=self.is_prime(I),
            maximal=self.is_maximal(I),
            quasimaximal=self.is_quasimaximal(I),
            radical=self.is_radical(I),
            hyperradical=self.is_hyperradical(I),
            quasihyperradical=self.is_quasihyperradical(I),
        )


# -- axioms on a window (vectorised) ----------------------------------------------


def check_axioms_window(A: LexGammaAlgebra, w: int = 64) -> list[AxiomFailure]:
    """MV axioms on all window pairs/triples; results are computed exactly, not clipped to the window."""
    k = A.k
    elems = A.window(w)
    P = np.array([e[0] for e in elems], dtype=np.int64)
    Q = np.array([e[1] for e in elems], dtype=np.int64)
    out: list[AxiomFailure] = []

    def add(p1, q1, p2, q2):
        sp, sq = p1 + p2, q1 + q2
        over = (sp > k) | ((sp == k) & (sq > 0))
        return np.where(over, k, sp), np.where(over, 0, sq)

    def neg(p, q):
        return k - p, -q

    def report(name, mask, *idx_arrays):
        bad = np.argwhere(mask)
        for row in bad[:10]:
            out.append(AxiomFailure(name, tuple(elems[idx_arrays[j][tuple(row)]] for j in range(len(idx_arrays)))))

    # unary axioms
    ids = np.arange(len(elems))
    p, q = add(P, Q, 0, 0)
    report("zero-unit", (p != P) | (q != Q), ids)
    p, q = neg(*neg(P, Q))
    report("involution", (p != P) | (q != Q), ids)
    p, q = add(P, Q, k, 0)
    report("one-absorbing", (p != k) | (q != 0), ids)

    X, Y = np.meshgrid(ids, ids, indexing="ij")
    px, qx, py, qy = P[X], Q[X], P[Y], Q[Y]
    sp, sq = add(px, qx, py, qy)
    valid = (sp >= 0) & ((sp > 0) | (sq >= 0)) & ((sp < k) | (sq <= 0)) & (sp <= k)
    report("closure", ~valid, X, Y)
    tp, tq = add(py, qy, px, qx)
    report("commutativity", (sp != tp) | (sq != tq), X, Y)
    # ¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x
    lp, lq = add(*neg(*add(*neg(px, qx), py, qy)), py, qy)
    rp, rq = add(*neg(*add(*neg(py, qy), px, qx)), px, qx)
    report("mv-axiom", (lp != rp) | (lq != rq), X, Y)

    for i in range(len(elems)):
        # (x ⊕ y) ⊕ z = x ⊕ (y ⊕ z) for x = elems[i]
        xyp, xyq = add(P[i], Q[i], py, qy)
        lp, lq = add(xyp, xyq, px, qx)
        rp, rq = add(P[i], Q[i], *add(py, qy, px, qx))
        bad = (lp != rp) | (lq != rq)
        if bad.any():
            for j, l in np.argwhere(bad)[:10]:
                out.append(AxiomFailure("associativity", (elems[i], elems[Y[j, l]], elems[X[j, l]])))
    return out
