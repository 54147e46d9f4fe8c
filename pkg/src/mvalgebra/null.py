"""The V–J Galois connection and the Nullstellensatz on two exact carriers.

* finite X = {0, ..., n-1} with a subalgebra of [0,1]^X (values in a chain);
* X = [0,1] with F[1], the one-variable McNaughton functions.

Every check returns a report dict whose ``counterexamples`` lists are empty
when the law holds.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .core import FiniteMvAlgebra
from .errors import MalformedInputError
from .ideals import (
    IdealFin,
    enumerate_ideals,
    generate,
    infrad_of,
    is_radical,
    member_principal1,
    quotient,
    rad_of,
    witness_search,
    zero_set_criterion,
)
from .terms import PL1, ClosedSet1D, pl_combine, pl_neg, pl_times, to_pl1, zero_set

ZERO = Fraction(0)
ONE = Fraction(1)


# -- finite carriers ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteFunctionAlgebra:
    """A subalgebra of [0,1]^X for a finite discrete X, closed under ⊕ and ¬."""

    points: int
    vectors: tuple[tuple[Fraction, ...], ...]
    algebra: FiniteMvAlgebra = field(repr=False)
    name: str = "functions"

    @classmethod
    def generated_by(cls, points: int, gens: Iterable[Sequence], name: str = "functions") -> "FiniteFunctionAlgebra":
        zero = tuple(ZERO for _ in range(points))
        seen = {zero}
        frontier = [zero] + [tuple(Fraction(v) for v in g) for g in gens]
        for g in frontier:
            if len(g) != points or any(not ZERO <= v <= ONE for v in g):
                raise MalformedInputError(f"generator {g} is not a function X -> [0,1] on {points} points")
        seen.update(frontier)
        work = list(seen)
        while work:
            f = work.pop()
            new = [tuple(ONE - v for v in f)]
            new += [tuple(min(ONE, u + v) for u, v in zip(f, g)) for g in list(seen)]
            for h in new:
                if h not in seen:
                    seen.add(h)
                    work.append(h)
        vectors = tuple(sorted(seen))
        idx = {v: i for i, v in enumerate(vectors)}
        oplus = tuple(
            tuple(idx[tuple(min(ONE, a + b) for a, b in zip(u, v))] for v in vectors) for u in vectors
        )
        neg = tuple(idx[tuple(ONE - a for a in u)] for u in vectors)
        labels = tuple("(" + ",".join(str(a) for a in u) + ")" for u in vectors)
        A = FiniteMvAlgebra(len(vectors), oplus, neg, idx[zero], labels, vectors, name=name)
        return cls(points, vectors, A, name)

    @classmethod
    def full(cls, points: int, chain: int) -> "FiniteFunctionAlgebra":
        """chain(r)^X: every function X → {0, 1/r, ..., 1}."""
        gens = [
            tuple(Fraction(1, chain) if j == i else ZERO for j in range(points)) for i in range(points)
        ]
        return cls.generated_by(points, gens, name=f"chain({chain})^{points}")

    @classmethod
    def constants(cls, points: int, chain: int) -> "FiniteFunctionAlgebra":
        """Constant functions only: compact but not separating when |X| ≥ 2."""
        return cls.generated_by(points, [tuple(Fraction(1, chain) for _ in range(points))],
                                name=f"const(chain({chain}))^{points}")

    def value(self, f: int, x: int) -> Fraction:
        return self.vectors[f][x]

    @property
    def all_points(self) -> int:
        return (1 << self.points) - 1

    def closed_sets(self) -> list[int]:
        return list(range(1 << self.points))

    def v_of(self, I: IdealFin) -> int:
        """V(I) as a bitset over X."""
        return sum(
            1 << x for x in range(self.points) if all(self.vectors[f][x] == 0 for f in I.members)
        )

    def j_of(self, S: int) -> IdealFin:
        """J(S): the functions vanishing on S."""
        pts = [x for x in range(self.points) if (S >> x) & 1]
        bits = sum(1 << f for f, v in enumerate(self.vectors) if all(v[x] == 0 for x in pts))
        return IdealFin(self.algebra, bits)

    def restriction(self, S: int) -> set[tuple]:
        pts = [x for x in range(self.points) if (S >> x) & 1]
        return {tuple(v[x] for x in pts) for v in self.vectors}


def separating_check(FA: FiniteFunctionAlgebra) -> tuple[bool, list]:
    """For all x ≠ y some f has f(x) = 0 < f(y); returns the failing pairs."""
    bad = []
    for x, y in itertools.permutations(range(FA.points), 2):
        if not any(v[x] == 0 and v[y] > 0 for v in FA.vectors):
            bad.append((x, y))
    return not bad, bad


def restriction_iso(FA: FiniteFunctionAlgebra, S: int) -> bool:
    """A/J(S) ≅ A|_S via [f] ↦ f|_S: well defined, bijective, preserving ⊕ and ¬."""
    A = FA.algebra
    Q, proj = quotient(A, FA.j_of(S))
    pts = [x for x in range(FA.points) if (S >> x) & 1]

    def restrict(f):
        return tuple(FA.vectors[f][x] for x in pts)

    image: dict[int, tuple] = {}
    for f in A.elements:
        c = proj(f)
        if image.setdefault(c, restrict(f)) != restrict(f):
            return False
    if len(set(image.values())) != Q.size or set(image.values()) != FA.restriction(S):
        return False
    for c in Q.elements:
        if image[Q.neg[c]] != tuple(ONE - a for a in image[c]):
            return False
        for d in Q.elements:
            if image[Q.oplus[c][d]] != tuple(min(ONE, a + b) for a, b in zip(image[c], image[d])):
                return False
    return True


def galois_suite_finite(FA: FiniteFunctionAlgebra) -> dict:
    A = FA.algebra
    ideals = enumerate_ideals(A, bound=max(A.size, 64))
    sets = FA.closed_sets()
    separating, _ = separating_check(FA)
    V = {I.bits: FA.v_of(I) for I in ideals}
    J = {S: FA.j_of(S) for S in sets}
    law: dict[str, list] = {k: [] for k in (
        "j-is-ideal", "v-antitone", "j-antitone", "ideal-in-jv", "set-in-vj",
        "union-of-loci-in-locus-of-meet", "join-of-vanishing-in-vanishing-of-meet",
        "meet-of-loci", "meet-of-vanishing",
        "infradical-in-jv", "jv-in-infradical",
    )}
    if separating:
        law.update({k: [] for k in (
            "proper-ideal-has-root", "closed-set-recovery", "restriction-iso",
            "rad-is-jv", "radical-closed-bijection",
        )})

    def sub(a, b):
        return a & ~b == 0

    for S in sets:
        if not _is_ideal_bits(A, J[S]):
            law["j-is-ideal"].append(S)
        if not sub(S, FA.v_of(J[S])):
            law["set-in-vj"].append(S)
    for I in ideals:
        jv = FA.j_of(V[I.bits])
        if not I <= jv:
            law["ideal-in-jv"].append(I.describe())
        root = infrad_of(A, I)
        if not root <= jv:
            law["infradical-in-jv"].append(I.describe())
        if not jv <= root:
            law["jv-in-infradical"].append(I.describe())
    for I, K in itertools.product(ideals, repeat=2):
        if I <= K and not sub(V[K.bits], V[I.bits]):
            law["v-antitone"].append((I.describe(), K.describe()))
        meet = I & K
        if not sub(V[I.bits] | V[K.bits], FA.v_of(meet)):
            law["union-of-loci-in-locus-of-meet"].append((I.describe(), K.describe()))
        join = generate(A, set(I.members) | set(K.members))
        if V[I.bits] & V[K.bits] != FA.v_of(join):
            law["meet-of-loci"].append((I.describe(), K.describe()))
    for S, T in itertools.product(sets, repeat=2):
        if sub(S, T) and not J[T] <= J[S]:
            law["j-antitone"].append((S, T))
        join = generate(A, set(J[S].members) | set(J[T].members))
        if not join <= J[S & T]:
            law["join-of-vanishing-in-vanishing-of-meet"].append((S, T))
        if J[S] & J[T] != J[S | T]:
            law["meet-of-vanishing"].append((S, T))

    if separating:
        for I in ideals:
            if I.is_proper and V[I.bits] == 0:
                law["proper-ideal-has-root"].append(I.describe())
            if rad_of(A, I) != FA.j_of(V[I.bits]):
                law["rad-is-jv"].append(I.describe())
        for S in sets:
            if FA.v_of(J[S]) != S:
                law["closed-set-recovery"].append(S)
            if not restriction_iso(FA, S):
                law["restriction-iso"].append(S)
        radicals = [I for I in ideals if is_radical(A, I)]
        # J∘V is the identity on radical ideals, V∘J the identity on closed sets
        for I in radicals:
            if FA.j_of(V[I.bits]) != I:
                law["radical-closed-bijection"].append(("JV", I.describe()))
        for S in sets:
            if not is_radical(A, J[S]) or FA.v_of(J[S]) != S:
                law["radical-closed-bijection"].append(("VJ", S))
        if len(radicals) != len(sets):
            law["radical-closed-bijection"].append(("count", len(radicals), len(sets)))

    return {
        "carrier": FA.name,
        "points": FA.points,
        "elements": A.size,
        "ideals": len(ideals),
        "closed_sets": len(sets),
        "separating": separating,
        "counterexamples": {k: v for k, v in law.items()},
        "ok": all(not v for v in law.values()),
    }


def _is_ideal_bits(A: FiniteMvAlgebra, I: IdealFin) -> bool:
    from .ideals import is_ideal

    return is_ideal(A, I.bits)


def nullstellensatz_finite(FA: FiniteFunctionAlgebra, I: IdealFin) -> dict:
    """√I = J(V(I)) on a finite (hence compact) carrier, element by element."""
    A = FA.algebra
    root = infrad_of(A, I)
    jv = FA.j_of(FA.v_of(I))
    rows = []
    for f in A.elements:
        rows.append({"g": A.label(f), "in_jv": f in jv, "in_infradical": f in root})
    disagreements = [r["g"] for r in rows if r["in_jv"] != r["in_infradical"]]
    return {"carrier": FA.name, "ideal": I.as_list(), "locus": _points(FA.v_of(I), FA.points),
            "rows": rows, "counterexamples": disagreements, "ok": not disagreements}


def _points(S: int, n: int) -> list[int]:
    return [x for x in range(n) if (S >> x) & 1]


# -- F[1] carrier -------------------------------------------------------------------------------------


def principal_generator(gens: Sequence) -> PL1:
    """⟨f₁, ..., f_m⟩ = ⟨f₁ ⊕ ... ⊕ f_m⟩."""
    fs = [g if isinstance(g, PL1) else to_pl1(g) for g in gens]
    out = PL1.const(0)
    for f in fs:
        out = pl_combine("oplus", out, f)
    return out


def v_of_f1(f: PL1) -> ClosedSet1D:
    return zero_set(f)


@lru_cache(maxsize=65536)
def j_member_f1(g: PL1, S: ClosedSet1D) -> bool:
    """g ∈ J(S): g vanishes on S, tested at the ends of each component and g's breakpoints inside."""
    for a, b in S.intervals:
        pts = {a, b} | {x for x in g.xs if a < x < b}
        if any(g(x) != 0 for x in pts):
            return False
    return True


def rad_member_f1(g: PL1, f: PL1) -> bool:
    """g ∈ Rad(⟨f⟩) = ∩{M_x : f(x) = 0}, M_x the maximal ideal of functions vanishing at x."""
    return j_member_f1(g, zero_set(f))


@lru_cache(maxsize=None)
def _infinitesimal_probe(g: PL1, n: int) -> PL1:
    """n·g ⊖ ¬g, which equals n·g ⊙ g."""
    return pl_combine("ominus", pl_times(n, g), pl_neg(g))


@lru_cache(maxsize=None)
def _member_pair(h: PL1, f: PL1, n_max: int) -> tuple[bool, bool]:
    return zero_set_criterion(h, f), witness_search(h, f, n_max) is not None


def infradical_member_f1(g: PL1, f: PL1, n_max: int = 64) -> dict:
    """Test n·g ⊖ ¬g ∈ ⟨f⟩ for n ≤ n_max by the zero-set criterion and by witness search."""
    by_criterion = True
    by_witness = True
    first_fail = None
    for n in range(n_max + 1):
        c, w = _member_pair(_infinitesimal_probe(g, n), f, n_max)
        if (not c or not w) and first_fail is None:
            first_fail = n
        by_criterion &= c
        by_witness &= w
    return {"criterion": by_criterion, "witness": by_witness, "first_failing_n": first_fail}


def nullstellensatz_f1(f, corpus: Sequence, n_max: int = 64) -> dict:
    """J(V(⟨f⟩)) = √⟨f⟩ on a corpus of one-variable terms."""
    f_pl = f if isinstance(f, PL1) else to_pl1(f)
    locus = zero_set(f_pl)
    rows, bad = [], []
    for g_src in corpus:
        g = g_src if isinstance(g_src, PL1) else to_pl1(g_src)
        in_jv = j_member_f1(g, locus)
        root = infradical_member_f1(g, f_pl, n_max)
        row = {
            "g": str(g_src) if not isinstance(g_src, PL1) else g_src.as_list(),
            "vanishes_on_locus": in_jv,
            "infradical_by_criterion": root["criterion"],
            "infradical_by_witness": root["witness"],
            "first_failing_n": root["first_failing_n"],
            "n_max": n_max,
        }
        rows.append(row)
        if not (in_jv == root["criterion"] == root["witness"]):
            bad.append(row["g"])
    return {"generator": str(f) if not isinstance(f, PL1) else f.as_list(), "locus": locus.as_list(),
            "rows": rows, "counterexamples": bad, "ok": not bad,
            "note": f"infradical membership verified up to n = {n_max}"}


def rad_eq_jv_f1(f, corpus: Sequence, n_max: int = 64) -> dict:
    f_pl = f if isinstance(f, PL1) else to_pl1(f)
    bad = []
    for g_src in corpus:
        g = to_pl1(g_src)
        rad = rad_member_f1(g, f_pl)
        jv = zero_set(f_pl).issubset(zero_set(g))
        if rad != jv:
            bad.append(str(g_src))
    return {"generator": str(f), "counterexamples": bad, "ok": not bad}


def galois_suite_f1(corpus: Sequence[str], n_max: int = 64) -> dict:
    fs = [(s, to_pl1(s)) for s in corpus]
    Z = {s: zero_set(f) for s, f in fs}
    law: dict[str, list] = {k: [] for k in (
        "v-antitone", "j-antitone", "ideal-in-jv", "set-in-vj", "closed-set-recovery",
        "union-of-loci-in-locus-of-meet", "join-of-vanishing-in-vanishing-of-meet",
        "meet-of-loci", "meet-of-vanishing", "proper-ideal-has-root", "principal-is-radical",
    )}
    one = PL1.const(1)
    sums = {(u, w): pl_combine("oplus", h1, h2) for (u, h1), (w, h2) in itertools.combinations(fs, 2)}
    for s, f in fs:
        S = Z[s]
        vanishing = [t for t, g in fs if j_member_f1(g, S)]
        if not j_member_f1(f, S):
            law["ideal-in-jv"].append(s)
        vj = ClosedSet1D.full()
        for t in vanishing:
            vj = vj.intersection(Z[t])
        if not S.issubset(vj):
            law["set-in-vj"].append(s)
        if vj != S:
            law["closed-set-recovery"].append(s)
        proper = member_principal1(one, f, n_max).verdict == "no"
        if proper and S.is_empty():
            law["proper-ideal-has-root"].append(s)
    for (s, f), (t, g) in itertools.product(fs, repeat=2):
        m = member_principal1(g, f, n_max)
        if m.verdict == "yes" and not j_member_f1(g, Z[s]):
            law["ideal-in-jv"].append((t, s))
        # ⟨g⟩ ⊆ ⟨f⟩ ⟹ V(f) ⊆ V(g)
        if m.verdict == "yes" and not Z[s].issubset(Z[t]):
            law["v-antitone"].append((t, s))
        if Z[s].issubset(Z[t]):
            # S ⊆ T ⟹ J(T) ⊆ J(S), on corpus members
            for u, h in fs:
                if j_member_f1(h, Z[t]) and not j_member_f1(h, Z[s]):
                    law["j-antitone"].append((s, t, u))
        # ⟨f⟩ ∩ ⟨g⟩ = ⟨f ∧ g⟩ and ⟨f⟩ ∨ ⟨g⟩ = ⟨f ⊕ g⟩
        meet_locus = zero_set(pl_combine("meet", f, g))
        if not Z[s].union(Z[t]).issubset(meet_locus):
            law["union-of-loci-in-locus-of-meet"].append((s, t))
        if Z[s].intersection(Z[t]) != zero_set(pl_combine("oplus", f, g)):
            law["meet-of-loci"].append((s, t))
        both = Z[s].union(Z[t])
        inter = Z[s].intersection(Z[t])
        for u, h in fs:
            if (j_member_f1(h, Z[s]) and j_member_f1(h, Z[t])) != j_member_f1(h, both):
                law["meet-of-vanishing"].append((s, t, u))
        for (u, h1), (w, h2) in itertools.combinations(fs, 2):
            if j_member_f1(h1, Z[s]) and j_member_f1(h2, Z[t]):
                if not j_member_f1(sums[u, w], inter):
                    law["join-of-vanishing-in-vanishing-of-meet"].append((s, t, u, w))
        # ⟨f⟩ = J(V(f)) on the corpus
        if (m.verdict == "yes") != j_member_f1(g, Z[s]):
            law["principal-is-radical"].append((t, s))
    return {"corpus": len(fs), "counterexamples": law, "ok": all(not v for v in law.values()),
            "note": "principal ideals of F[1] are radical: an implementer-derived consequence, checked on the corpus"}


# -- separation in F[1] -------------------------------------------------------------------------------


def _witness_pool(rounds: int = 3) -> list[tuple[str, PL1]]:
    pool: dict[PL1, str] = {PL1.identity(): "x"}
    for _ in range(rounds):
        items = list(pool.items())
        fresh: dict[PL1, str] = {}
        for f, s in items:
            fresh.setdefault(pl_neg(f), f"!({s})")
        for (f, s), (g, t) in itertools.product(items, repeat=2):
            fresh.setdefault(pl_combine("oplus", f, g), f"({s}) + ({t})")
            fresh.setdefault(pl_combine("odot", f, g), f"({s}) . ({t})")
        for f, s in fresh.items():
            pool.setdefault(f, s)
    return sorted(((s, f) for f, s in pool.items()), key=lambda p: (len(p[1].points), len(p[0]), p[0]))


def separating_check_f1(denominator: int = 4, rounds: int = 3) -> dict:
    """For every ordered pair p ≠ q of grid points find a term f with f(p) = 0 < f(q)."""
    grid = sorted({Fraction(i, d) for d in range(1, denominator + 1) for i in range(d + 1)})
    pool = _witness_pool(rounds)
    witnesses, missing = {}, []
    for p, q in itertools.permutations(grid, 2):
        for s, f in pool:
            if f(p) == 0 and f(q) > 0:
                witnesses[f"{p},{q}"] = s
                break
        else:
            missing.append((str(p), str(q)))
    return {"points": [str(g) for g in grid], "pairs": len(grid) * (len(grid) - 1),
            "witnesses": witnesses, "missing": missing, "ok": not missing}


def separating_witness_f1(p, q, rounds: int = 3) -> Optional[str]:
    p, q = Fraction(p), Fraction(q)
    for s, f in _witness_pool(rounds):
        if f(p) == 0 and f(q) > 0:
            return s
    return None
