"""Characters A → [0,1], the hat map, and the (co)Zariski base sets.

On a finite algebra each maximal ideal M gives a simple quotient A/M, a finite
chain with a unique embedding into [0,1]; that embedding composed with the
projection is the character.  On Γ(Z ×lex Z, (k,0)) there is exactly one
character, (p, q) ↦ p/k, and the element-wise checks run over a window.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Sequence

from .core import FiniteMvAlgebra, is_quasiarchimedean
from .errors import ConsistencyError
from .gamma import GammaIdeal, LexGammaAlgebra, g_character, g_classify
from .ideals import IdealFin, infrad_of, maximal_ideals, quotient, zero_ideal

ONE = Fraction(1)


@dataclass(frozen=True)
class Character:
    kernel: Any  # IdealFin, or GammaIdeal.RAD on the Γ carrier
    values: dict  # element -> Fraction

    def __call__(self, a) -> Fraction:
        return self.values[a]


@dataclass(frozen=True, eq=False)
class Spectrum:
    algebra: Any
    elements: tuple
    characters: tuple[Character, ...]

    def hat(self, a) -> tuple[Fraction, ...]:
        return tuple(chi(a) for chi in self.characters)

    def w(self, a) -> int:
        """W_a = {χ : χ(a) > 0} as a bitset over the character list."""
        return sum(1 << i for i, chi in enumerate(self.characters) if chi(a) > 0)

    def wc(self, a) -> int:
        """W^c_a = {χ : χ(a) = 0}."""
        return sum(1 << i for i, chi in enumerate(self.characters) if chi(a) == 0)

    @property
    def everything(self) -> int:
        return (1 << len(self.characters)) - 1

    def is_zariski_open(self, s: int) -> bool:
        """S is open iff it is the union of the basic opens W_b it contains."""
        cover = 0
        for b in self.elements:
            wb = self.w(b)
            if wb & ~s == 0:
                cover |= wb
        return cover == s


def _chain_rank(Q: FiniteMvAlgebra) -> list[Fraction]:
    """Value of each element of a finite simple algebra under its embedding into [0,1]."""
    r = Q.size - 1
    ranks = [sum(1 for y in Q.elements if Q.leq[y][c]) - 1 for c in Q.elements]
    if sorted(ranks) != list(range(Q.size)):
        raise ConsistencyError(f"quotient {Q.name} is not a chain")
    return [Fraction(k, r) if r else Fraction(0) for k in ranks]


def characters(A) -> Spectrum:
    if isinstance(A, LexGammaAlgebra):
        return gamma_spectrum(A)
    chars = []
    for M in sorted(maximal_ideals(A), key=lambda I: I.bits):
        Q, proj = quotient(A, M)
        val = _chain_rank(Q)
        values = {a: val[proj(a)] for a in A.elements}
        chi = Character(M, values)
        _check_character(A, A.elements, chi)
        if IdealFin(A, sum(1 << a for a in A.elements if values[a] == 0)) != M:
            raise ConsistencyError("character kernel differs from its maximal ideal")
        chars.append(chi)
    return Spectrum(A, tuple(A.elements), tuple(chars))


def gamma_spectrum(A: LexGammaAlgebra, window: int = 16) -> Spectrum:
    elems = tuple(A.window(window))
    chi_fn = g_character(A.k)
    chi = Character(GammaIdeal.RAD, {a: chi_fn(a) for a in elems})
    _check_character(A, elems, chi)
    return Spectrum(A, elems, (chi,))


def _check_character(A, elems: Sequence[Hashable], chi: Character) -> None:
    if isinstance(A, LexGammaAlgebra):
        oplus, neg = A.oplus, A.neg
        value = lambda a: chi.values.get(a, Fraction(a[0], A.k))  # noqa: E731
    else:
        oplus = lambda x, y: A.oplus[x][y]  # noqa: E731
        neg = lambda x: A.neg[x]  # noqa: E731
        value = chi
    if value(A.zero) != 0:
        raise ConsistencyError("character does not send 0 to 0")
    for a in elems:
        if value(neg(a)) != ONE - value(a):
            raise ConsistencyError(f"character does not preserve ¬ at {a}")
        for b in elems:
            if value(oplus(a, b)) != min(ONE, value(a) + value(b)):
                raise ConsistencyError(f"character does not preserve ⊕ at {a}, {b}")


def hat_function(A, a) -> tuple[Fraction, ...]:
    return characters(A).hat(a)


def vector_archimedean(v: Sequence[Fraction], n_max: int) -> tuple[bool, int | None]:
    """Least n ≤ n_max with (n+1)v ⊖ nv = 0 in the pointwise algebra [0,1]^X."""
    for n in range(n_max + 1):
        if all(min(ONE, (n + 1) * c) - min(ONE, n * c) <= 0 for c in v):
            return True, n
    return False, None


def hat_image(spec: Spectrum) -> set[tuple[Fraction, ...]]:
    return {spec.hat(a) for a in spec.elements}


def hat_kernel(spec: Spectrum) -> list:
    zero = tuple(Fraction(0) for _ in spec.characters)
    return [a for a in spec.elements if spec.hat(a) == zero]


def _quasi(A, a) -> bool:
    if isinstance(A, LexGammaAlgebra):
        return g_classify(A.k, a).quasiarchimedean
    return is_quasiarchimedean(A, a).holds


def check_prop24(A) -> dict:
    """For every a: a quasiarchimedean ⟺ â archimedean in Â."""
    spec = characters(A)
    image = hat_image(spec)
    n_max = max(len(image), max((c.denominator for v in image for c in v), default=1))
    rows, violations = [], []
    for a in spec.elements:
        lhs = _quasi(A, a)
        rhs, n = vector_archimedean(spec.hat(a), n_max)
        rows.append((a, lhs, rhs, n))
        if lhs != rhs:
            violations.append(_label(A, a))
    return {"elements": len(rows), "violations": violations}


def check_prop25and26(A) -> dict:
    """a quasiarchimedean ⟺ W^c_a Zariski-open, and the algebra-level equivalence."""
    spec = characters(A)
    violations = []
    all_open = True
    all_quasi = True
    for a in spec.elements:
        q = _quasi(A, a)
        opened = spec.is_zariski_open(spec.wc(a))
        all_open &= opened
        all_quasi &= q
        if q != opened:
            violations.append(_label(A, a))
    return {
        "elements": len(spec.elements),
        "violations": violations,
        "quasihyperarchimedean": all_quasi,
        "all_cozariski_basics_open": all_open,
        "equivalence_holds": all_quasi == all_open,
        "continuity_and_compactness": "trivially true on a finite spectrum; not independently testable at desk scale",
    }


def base_set_laws(spec: Spectrum) -> list:
    """W_a ∩ W^c_a = ∅, W_a ∪ W^c_a = X, W_0 = ∅, W_{a⊕b} ⊇ W_a ∪ W_b; returns violations."""
    A = spec.algebra
    oplus = A.oplus if isinstance(A, LexGammaAlgebra) else (lambda x, y: A.oplus[x][y])
    bad = []
    if spec.w(A.zero) != 0:
        bad.append(("W_0", _label(A, A.zero)))
    members = set(spec.elements)
    for a in spec.elements:
        if spec.w(a) & spec.wc(a) or (spec.w(a) | spec.wc(a)) != spec.everything:
            bad.append(("partition", _label(A, a)))
    for a in spec.elements:
        for b in spec.elements:
            s = oplus(a, b)
            if s in members and (spec.w(a) | spec.w(b)) & ~spec.w(s):
                bad.append(("join-monotone", _label(A, a), _label(A, b)))
    return bad


def hat_kernel_is_infradical(A) -> bool:
    spec = characters(A)
    ker = set(hat_kernel(spec))
    if isinstance(A, LexGammaAlgebra):
        return ker == {a for a in spec.elements if GammaIdeal.RAD.contains(a)}
    return ker == set(infrad_of(A, zero_ideal(A)).members)


def kernels_match_maximal(A: FiniteMvAlgebra) -> bool:
    spec = characters(A)
    kernels = {chi.kernel.bits for chi in spec.characters}
    return kernels == {M.bits for M in maximal_ideals(A)} and len(kernels) == len(spec.characters)


def _label(A, a) -> str:
    return A.label(a)


def spectrum_report(A, with_base_sets: bool = False) -> dict:
    spec = characters(A)
    out: dict[str, Any] = {
        "algebra": A.name,
        "characters": [
            {
                "kernel": chi.kernel.describe() if isinstance(chi.kernel, IdealFin) else chi.kernel.value,
                "values": {_label(A, a): str(chi(a)) for a in spec.elements},
            }
            for chi in spec.characters
        ],
    }
    if isinstance(A, LexGammaAlgebra):
        out["window"] = "values listed for |q| <= 16; the character is (p,q) -> p/k"
    if with_base_sets:
        out["base_sets"] = {
            _label(A, a): {"W": _bitlist(spec.w(a), spec), "Wc": _bitlist(spec.wc(a), spec)}
            for a in spec.elements
        }
    return out


def _bitlist(bits: int, spec: Spectrum) -> list[int]:
    return [i for i in range(len(spec.characters)) if (bits >> i) & 1]
