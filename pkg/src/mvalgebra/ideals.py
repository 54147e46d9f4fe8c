"""Ideals: generation, enumeration, the classification predicates, Rad and √.

Finite ideals are bitsets over the carrier.  Every ∀n / ∃n quantifier on a
finite algebra of size m is decided with n ≤ m: the sequence n·x is
nondecreasing, so it stabilises within m steps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple, Optional, Union

from .core import FiniteMvAlgebra
from .errors import ConsistencyError, MalformedInputError, ResourceLimitError
from .gamma import CLOSED_FORM_FLAGS, GammaIdeal, GammaWindow, LexGammaAlgebra
from .terms import PL1, zero_set

DEFAULT_BOUND = 64


@dataclass(frozen=True)
class IdealFin:
    algebra: FiniteMvAlgebra = field(compare=False, repr=False)
    bits: int

    def __contains__(self, x: int) -> bool:
        return (self.bits >> x) & 1 == 1

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(x for x in self.algebra.elements if (self.bits >> x) & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __le__(self, other: "IdealFin") -> bool:
        return self.bits & ~other.bits == 0

    def __and__(self, other: "IdealFin") -> "IdealFin":
        return IdealFin(self.algebra, self.bits & other.bits)

    @property
    def is_proper(self) -> bool:
        return self.algebra.one not in self

    def describe(self) -> str:
        A = self.algebra
        if self.bits == 1 << A.zero:
            return "zero"
        if self.bits == (1 << A.size) - 1:
            return "full"
        return "gen:[" + ",".join(A.label(x) for x in self.members) + "]"

    def as_list(self) -> list[str]:
        return [self.algebra.label(x) for x in self.members]


def _bits(xs: Iterable[int]) -> int:
    b = 0
    for x in xs:
        b |= 1 << x
    return b


def _cache(A) -> dict:
    return A.__dict__.setdefault("_ideal_cache", {})


def ideal_from_members(A: FiniteMvAlgebra, members: Iterable[int]) -> IdealFin:
    I = IdealFin(A, _bits(members))
    if not is_ideal(A, I.bits):
        raise MalformedInputError("member set is not an ideal")
    return I


def is_ideal(A: FiniteMvAlgebra, bits: int) -> bool:
    mem = [(bits >> x) & 1 for x in A.elements]
    if not mem[A.zero]:
        return False
    leq, s = A.leq, A.oplus
    for x in A.elements:
        if not mem[x]:
            continue
        for y in A.elements:
            if leq[y][x] and not mem[y]:
                return False
            if mem[y] and not mem[s[x][y]]:
                return False
    return True


def zero_ideal(A: FiniteMvAlgebra) -> IdealFin:
    return IdealFin(A, 1 << A.zero)


def full_ideal(A: FiniteMvAlgebra) -> IdealFin:
    return IdealFin(A, (1 << A.size) - 1)


def generate(A: FiniteMvAlgebra, S: Iterable[int]) -> IdealFin:
    """Least ideal containing S: alternate down-closure and ⊕-closure until stable."""
    cur = set(S) | {A.zero}
    leq, s = A.leq, A.oplus
    while True:
        down = {y for x in cur for y in A.elements if leq[y][x]}
        closed = set(down)
        work = list(down)
        while work:
            x = work.pop()
            for y in list(closed):
                z = s[x][y]
                if z not in closed:
                    closed.add(z)
                    work.append(z)
        if closed == cur:
            return IdealFin(A, _bits(cur))
        cur = closed


def join_ideals(I: IdealFin, J: IdealFin) -> IdealFin:
    return generate(I.algebra, set(I.members) | set(J.members))


def enumerate_ideals(A: FiniteMvAlgebra, bound: int = DEFAULT_BOUND) -> list[IdealFin]:
    """All ideals, as the join-closure of the principal ideals, sorted by (size, bits)."""
    if A.size > bound:
        raise ResourceLimitError("ideal enumeration", bound, A.size)
    cache = _cache(A)
    if "ideals" in cache:
        return cache["ideals"]
    found: dict[int, IdealFin] = {}
    for a in A.elements:
        I = generate(A, [a])
        found.setdefault(I.bits, I)
    work = list(found.values())
    while work:
        I = work.pop()
        for J in list(found.values()):
            K = IdealFin(A, I.bits | J.bits)
            if K.bits in found:
                continue
            K = join_ideals(I, J)
            if K.bits not in found:
                found[K.bits] = K
                work.append(K)
    out = sorted(found.values(), key=lambda I: (len(I), I.bits))
    cache["ideals"] = out
    return out


# -- classification predicates ---------------------------------------------------------------


def prime_counterexample(A: FiniteMvAlgebra, I: IdealFin) -> Optional[tuple]:
    if not I.is_proper:
        return ("improper",)
    om = A.ominus
    for x in A.elements:
        for y in A.elements:
            if om[x][y] not in I and om[y][x] not in I:
                return (x, y)
    return None


def is_prime(A: FiniteMvAlgebra, I: IdealFin) -> bool:
    return prime_counterexample(A, I) is None


def _first_order_counterexample(A: FiniteMvAlgebra, I: IdealFin, target: IdealFin) -> Optional[int]:
    """First x violating  x ∉ I ⟺ ∃n ≥ 1: ¬(n·x) ∈ target."""
    neg, mult = A.neg, A.mult
    for x in A.elements:
        lhs = x not in I
        rhs = any(neg[mult[x][n]] in target for n in range(1, A.size + 1))
        if lhs != rhs:
            return x
    return None


def is_maximal(A: FiniteMvAlgebra, I: IdealFin) -> bool:
    """Decided by the first-order characterisation of maximal ideals."""
    return _first_order_counterexample(A, I, I) is None


def is_maximal_by_extension(A: FiniteMvAlgebra, I: IdealFin) -> bool:
    """Proper, and adjoining any outside element generates the whole algebra."""
    if not I.is_proper:
        return False
    full = full_ideal(A)
    return all(generate(A, list(I.members) + [x]) == full for x in A.elements if x not in I)


def maximal_ideals(A: FiniteMvAlgebra) -> list[IdealFin]:
    cache = _cache(A)
    if "maximal" not in cache:
        cache["maximal"] = [I for I in enumerate_ideals(A, max(A.size, DEFAULT_BOUND)) if is_maximal(A, I)]
    return cache["maximal"]


def rad_of(A: FiniteMvAlgebra, I: IdealFin) -> IdealFin:
    """Intersection of the maximal ideals containing I; the whole algebra for improper I."""
    bits = (1 << A.size) - 1
    for M in maximal_ideals(A):
        if I <= M:
            bits &= M.bits
    return IdealFin(A, bits)


def infrad_of(A: FiniteMvAlgebra, I: IdealFin) -> IdealFin:
    """√I: the I-infinitesimals {a : n·a ⊖ ¬a ∈ I for all n}."""
    return IdealFin(A, _bits(a for a in A.elements if _is_infinitesimal_mod(A, I, a)))


def is_radical(A: FiniteMvAlgebra, I: IdealFin) -> bool:
    by_rad = rad_of(A, I) == I
    by_infrad = infrad_of(A, I) == I
    if by_rad != by_infrad:
        raise ConsistencyError(f"I = Rad(I) is {by_rad} but I = √I is {by_infrad} for {I.describe()}")
    return by_rad


def hyper_counterexample(A: FiniteMvAlgebra, target: IdealFin) -> Optional[int]:
    """First x with (n+1)x ⊖ nx ∉ target for every 1 ≤ n ≤ |A|."""
    om, t = A.ominus, A.times
    for x in A.elements:
        if not any(om[t(n + 1, x)][t(n, x)] in target for n in range(1, A.size + 1)):
            return x
    return None


def is_hyperradical(A: FiniteMvAlgebra, I: IdealFin) -> bool:
    return hyper_counterexample(A, I) is None


def _is_infinitesimal_mod(A: FiniteMvAlgebra, I: IdealFin, a: int) -> bool:
    om, neg, mult = A.ominus, A.neg, A.mult
    return all(om[mult[a][n]][neg[a]] in I for n in range(A.size + 1))


def is_quasihyperradical(A: FiniteMvAlgebra, I: IdealFin) -> bool:
    om, t = A.ominus, A.times
    direct = all(
        any(_is_infinitesimal_mod(A, I, om[t(n + 1, x)][t(n, x)]) for n in range(1, A.size + 1))
        for x in A.elements
    )
    # second route: I is quasihyperradical iff √I is hyperradical
    via_root = is_hyperradical(A, infrad_of(A, I))
    if direct != via_root:
        raise ConsistencyError(f"quasihyperradical test disagrees with hyperradicality of √I for {I.describe()}")
    return direct


def is_quasimaximal(A: FiniteMvAlgebra, I: IdealFin) -> bool:
    return _first_order_counterexample(A, I, infrad_of(A, I)) is None


# -- flags -------------------------------------------------------------------------------------

FLAG_NAMES = ("prime", "maximal", "quasimaximal", "radical", "hyperradical", "quasihyperradical")

ALGEBRA_CLASS_OF = {
    "maximal": "simple",
    "quasimaximal": "quasisimple",
    "radical": "semisimple",
    "prime": "chain",
    "hyperradical": "hyperarchimedean",
    "quasihyperradical": "quasihyperarchimedean",
}

QUASISIMPLE_NOTE = "quasisimple is read as: {0} is a quasimaximal ideal"


@dataclass(frozen=True)
class IdealClassFlags:
    prime: bool
    maximal: bool
    quasimaximal: bool
    radical: bool
    hyperradical: bool
    quasihyperradical: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict[str, Any]:
        d = {name: getattr(self, name) for name in FLAG_NAMES}
        if self.witnesses:
            d["witnesses"] = self.witnesses
        return d


def classify_ideal(A, I) -> IdealClassFlags:
    if isinstance(A, LexGammaAlgebra):
        return _classify_gamma(A, I)
    labels = A.label
    w: dict[str, Any] = {}
    pc = prime_counterexample(A, I)
    if pc is not None and pc != ("improper",):
        w["prime"] = [labels(pc[0]), labels(pc[1])]
    mc = _first_order_counterexample(A, I, I)
    if mc is not None:
        w["maximal"] = labels(mc)
    root = infrad_of(A, I)
    qc = _first_order_counterexample(A, I, root)
    if qc is not None:
        w["quasimaximal"] = labels(qc)
    radical = is_radical(A, I)
    if not radical:
        w["radical"] = [labels(x) for x in rad_of(A, I).members if x not in I][:1]
    hc = hyper_counterexample(A, I)
    if hc is not None:
        w["hyperradical"] = labels(hc)
    qhr = is_quasihyperradical(A, I)
    return IdealClassFlags(pc is None, mc is None, qc is None, radical, hc is None, qhr, w)


def _classify_gamma(A: LexGammaAlgebra, I: GammaIdeal, window: int = 16) -> IdealClassFlags:
    closed = CLOSED_FORM_FLAGS[I]
    direct = GammaWindow(A, window, pair_w=8).flags(I)
    if closed != direct:
        raise ConsistencyError(f"closed-form flags {closed} disagree with window evaluation {direct}")
    w = {}
    if I is GammaIdeal.ZERO:
        w = {"maximal": "(0,1)", "radical": "(0,1)", "hyperradical": "(0,1)", "quasimaximal": "(0,1)"}
    return IdealClassFlags(**closed, witnesses=w)


def algebra_class(A) -> dict[str, bool]:
    """Algebra classes read off the zero ideal through the class/ideal correspondence."""
    if isinstance(A, LexGammaAlgebra):
        flags = classify_ideal(A, GammaIdeal.ZERO)
    else:
        flags = classify_ideal(A, zero_ideal(A))
    return {ALGEBRA_CLASS_OF[name]: getattr(flags, name) for name in FLAG_NAMES}


# -- quotients and morphisms ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Morphism:
    source: FiniteMvAlgebra
    target: FiniteMvAlgebra
    mapping: tuple[int, ...]
    name: str = "φ"

    def __post_init__(self):
        S, T, f = self.source, self.target, self.mapping
        if len(f) != S.size or any(not 0 <= v < T.size for v in f):
            raise MalformedInputError(f"{self.name}: element map is not total into the target")
        if f[S.zero] != T.zero:
            raise MalformedInputError(f"{self.name} does not preserve 0")
        for x in S.elements:
            if f[S.neg[x]] != T.neg[f[x]]:
                raise MalformedInputError(f"{self.name} does not preserve ¬ at {S.label(x)}")
            for y in S.elements:
                if f[S.oplus[x][y]] != T.oplus[f[x]][f[y]]:
                    raise MalformedInputError(f"{self.name} does not preserve ⊕ at ({S.label(x)}, {S.label(y)})")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @property
    def is_surjective(self) -> bool:
        return set(self.mapping) == set(self.target.elements)


def identity(A: FiniteMvAlgebra) -> Morphism:
    return Morphism(A, A, tuple(A.elements), "id")


def quotient(A: FiniteMvAlgebra, I: IdealFin) -> tuple[FiniteMvAlgebra, Morphism]:
    """A/I under x ~ y ⟺ d(x, y) ∈ I, with the canonical projection."""
    d = A.dist
    reps: list[int] = []
    cls = [0] * A.size
    for x in A.elements:
        for c, r in enumerate(reps):
            if d[x][r] in I:
                cls[x] = c
                break
        else:
            cls[x] = len(reps)
            reps.append(x)
    oplus = tuple(tuple(cls[A.oplus[r][s]] for s in reps) for r in reps)
    neg = tuple(cls[A.neg[r]] for r in reps)
    labels = tuple(f"[{A.label(r)}]" for r in reps)
    Q = FiniteMvAlgebra(len(reps), oplus, neg, cls[A.zero], labels, name=f"{A.name}/{I.describe()}")
    return Q, Morphism(A, Q, tuple(cls), "quotient")


def preimage_ideal(phi: Morphism, J: IdealFin) -> IdealFin:
    return IdealFin(phi.source, _bits(x for x in phi.source.elements if phi(x) in J))


def check_preimage_laws(phi: Morphism, J: IdealFin) -> dict[str, Optional[bool]]:
    """φ⁻¹√J = √φ⁻¹J always; φ⁻¹Rad(J) = Rad(φ⁻¹J) when φ is surjective (None otherwise)."""
    S, T = phi.source, phi.target
    pre = preimage_ideal(phi, J)
    infrad_law = preimage_ideal(phi, infrad_of(T, J)) == infrad_of(S, pre)
    rad_law = None
    if phi.is_surjective:
        rad_law = preimage_ideal(phi, rad_of(T, J)) == rad_of(S, pre)
    return {"is_ideal": is_ideal(S, pre.bits), "infradical": infrad_law, "rad": rad_law}


# -- principal ideals of F[1] ------------------------------------------------------------------------


class Membership(NamedTuple):
    verdict: str  # "yes" | "no" | "unknown"
    witness: Optional[int]
    criterion: bool
    n_max: int

    def __bool__(self):
        return self.verdict == "yes"


def witness_search(g: PL1, f: PL1, n_max: int = 64) -> Optional[int]:
    """Least k ≤ n_max with g ≤ k·f pointwise, or None.

    g ≤ min(1, k f) ⟺ g ≤ k f since g ≤ 1, and g − k f is linear between the
    merged breakpoints, so comparing there is exact.
    """
    xs = sorted(set(g.xs) | set(f.xs))
    pairs = list(zip(g.values_at(xs), f.values_at(xs)))
    for k in range(1, n_max + 1):
        if all(gv <= k * fv for gv, fv in pairs):
            return k
    return None


def zero_set_criterion(g: PL1, f: PL1) -> bool:
    """g ∈ ⟨f⟩ ⟺ V(f) ⊆ V(g) for one-variable piecewise-linear functions."""
    return zero_set(f).issubset(zero_set(g))


def member_principal1(g: PL1, f: PL1, n_max: int = 64) -> Membership:
    crit = zero_set_criterion(g, f)
    k = witness_search(g, f, n_max)
    if k is not None and not crit:
        raise ConsistencyError(f"witness k = {k} found although the zero-set criterion rejects membership")
    if k is not None:
        return Membership("yes", k, crit, n_max)
    if crit:
        return Membership("unknown", None, crit, n_max)
    return Membership("no", None, crit, n_max)


GenericIdeal = Union[IdealFin, GammaIdeal]
