"""Theorem suite: every registered law, run exhaustively over a bank of instances.

A bank is a list of entries: finite algebras (chain, product, table), Γ
algebras (lex_gamma), function carriers on finite sets (functions) and the
one-variable free algebra with a term corpus (f1).  Work is split into one
task per entry (one per generator for the F[1] Nullstellensatz); tasks are
pure and their partial results are merged in bank order, so the report does
not depend on the number of workers.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .core import (
    FiniteMvAlgebra,
    check_axioms,
    classify_element,
    is_infinitesimal,
    mk_chain,
    projections,
)
from .errors import ConsistencyError, MalformedInputError
from .gamma import (
    GAMMA_IDEALS,
    GammaIdeal,
    GammaWindow,
    check_axioms_window,
    classify_direct,
    g_classify,
    g_infrad_of,
    g_quotient_by_rad,
    g_rad_of,
)
from .ideals import (
    FLAG_NAMES,
    QUASISIMPLE_NOTE,
    IdealFin,
    Morphism,
    algebra_class,
    check_preimage_laws,
    classify_ideal,
    enumerate_ideals,
    identity,
    infrad_of,
    is_hyperradical,
    is_ideal,
    is_maximal,
    is_maximal_by_extension,
    maximal_ideals,
    member_principal1,
    quotient,
    rad_of,
)
from .null import (
    FiniteFunctionAlgebra,
    galois_suite_f1,
    galois_suite_finite,
    nullstellensatz_f1,
    rad_eq_jv_f1,
    separating_check_f1,
)
from .spectra import (
    base_set_laws,
    characters,
    check_prop24,
    check_prop25and26,
    hat_kernel_is_infradical,
    kernels_match_maximal,
)
from .specs import algebra_from_spec, load_json
from .terms import (
    PL1,
    archimedean_pl,
    archimedean_witness_pl,
    evaluate,
    is_infinitesimal_pl,
    load_corpus,
    min_positive_value,
    quasiarchimedean_pl,
    to_pl1,
    zero_set,
)

GAMMA_AXIOM_WINDOW = 64
GAMMA_ELEMENT_WINDOW = 16
GAMMA_PAIR_WINDOW = 8
SOUNDNESS_DENOMINATOR = 32
REPORT_CAP = 10


@dataclass(frozen=True)
class Check:
    id: str
    statement: str


CHECKS = (
    Check("axioms", "⊕ commutative, associative, unit 0; ¬ involutive with ¬0 absorbing; "
                    "¬(¬x⊕y)⊕y = ¬(¬y⊕x)⊕x; x ≤ y ⟺ x⊖y = 0 is a bounded lattice order"),
    Check("element-class-invariants", "archimedean ⟹ quasiarchimedean; infinitesimal ∧ archimedean ⟹ a = 0"),
    Check("finite-no-nonzero-infinitesimals", "a finite MV-algebra has no infinitesimal other than 0"),
    Check("gamma-closed-forms", "on Γ(Z×lex Z,(k,0)): infinitesimal ⟺ p = 0; archimedean ⟺ p ≥ 1 or a = 0; "
                                "every element quasiarchimedean (closed form against direct evaluation)"),
    Check("difference-meet-zero", "(x ⊖ y) ∧ (y ⊖ x) = 0"),
    Check("stationary-propagation", "(n+1)x ⊖ nx ∈ I ⟹ mx ⊖ kx ∈ I for all m > k ≥ n"),
    Check("distance-join-identity", "d(x ∨ y, x) ∈ I ⟺ y ⊖ x ∈ I"),
    Check("maximal-cross-check", "first-order maximality test ⟺ proper with no strictly larger proper ideal"),
    Check("hyperradical-iff-qhr-and-radical", "hyperradical ⟺ quasihyperradical ∧ radical"),
    Check("hyperradical-implies-radical", "hyperradical ⟹ radical"),
    Check("maximal-implies-hyperradical", "maximal ⟹ hyperradical"),
    Check("quasimaximal-implies-qhr", "quasimaximal ⟹ quasihyperradical"),
    Check("prime-hyperradical-implies-maximal", "prime ∧ hyperradical ⟹ maximal"),
    Check("prime-implies-qhr", "prime ⟹ quasihyperradical"),
    Check("prime-radical-implies-maximal", "prime ∧ radical ⟹ maximal"),
    Check("prime-below-unique-maximal", "I prime ⟹ exactly one maximal ideal contains I, and it equals Rad(I)"),
    Check("qhr-via-infradical", "I quasihyperradical ⟺ √I hyperradical"),
    Check("rad-equals-infradical", "Rad(I) = √I"),
    Check("infradical-contains-ideal", "√I is an ideal and I ⊆ √I"),
    Check("infradical-of-intersection", "√(I₁ ∩ … ∩ Iₘ) = √I₁ ∩ … ∩ √Iₘ for m = 2, 3"),
    Check("non-reversal-witnesses", "the converses fail: quasihyperradical ∧ ¬hyperradical, prime ∧ ¬maximal, "
                                    "radical ∧ ¬prime all occur"),
    Check("preimage-infradical", "φ⁻¹√J = √(φ⁻¹J) for every morphism φ"),
    Check("preimage-rad", "φ⁻¹Rad(J) = Rad(φ⁻¹J) for every surjective morphism φ"),
    Check("character-kernels", "the kernels of the characters are exactly the maximal ideals"),
    Check("hat-kernel", "ker(a ↦ â) = √{0}"),
    Check("base-set-laws", "W_a ∩ W^c_a = ∅; W_a ∪ W^c_a = X_A; W_0 = ∅; W_a ∪ W_b ⊆ W_{a⊕b}"),
    Check("hat-archimedean", "a quasiarchimedean ⟺ â archimedean in Â"),
    Check("cozariski-open", "a quasiarchimedean ⟺ W^c_a Zariski-open"),
    Check("compact-spectrum", "A quasihyperarchimedean ⟺ every W^c_a open (continuity and compactness "
                              "conditions hold automatically on a finite spectrum)"),
    Check("algebra-classes", "finite algebras are hyperarchimedean and semisimple; Γ(Z×lex Z,(k,0)) is "
                             "quasihyperarchimedean, not hyperarchimedean, not semisimple"),
    Check("galois-connection", "V, J antitone; I ⊆ J(V(I)); S ⊆ V(J(S)); V(I) ∩ V(K) = V(I ∨ K); "
                               "V(I) ∪ V(K) ⊆ V(I ∩ K); J(S) ∩ J(T) = J(S ∪ T); proper ideals have a root; "
                               "S = V(J(S))"),
    Check("restriction-isomorphism", "A/J(S) ≅ A|_S"),
    Check("rad-equals-jv", "Rad(I) = J(V(I)) on a separating carrier"),
    Check("radical-closed-bijection", "J∘V and V∘J are inverse bijections between radical ideals and closed sets"),
    Check("infradical-vs-vanishing", "√I ⊆ J(V(I)), with equality on compact X, for any subalgebra"),
    Check("nullstellensatz", "J(V(I)) = √I"),
    Check("f1-term-soundness", f"term evaluation agrees with the piecewise-linear realisation at every "
                               f"rational with denominator ≤ {SOUNDNESS_DENOMINATOR}"),
    Check("f1-membership-oracle", "g ∈ ⟨f⟩ by zero sets (V(f) ⊆ V(g)) agrees with witness search g ≤ k·f, k ≤ nMax"),
    Check("f1-archimedean-zero-set", "f archimedean ⟺ f⁻¹(0) open in [0,1], against a direct search; "
                                     "x is not quasiarchimedean and has zero set {0}"),
    Check("f1-no-infinitesimals", "every nonzero f has n ≤ ⌈1/min f⁺⌉ with n·f ⊙ f ≠ 0"),
    Check("f1-quasi-iff-archimedean", "in F[1], quasiarchimedean ⟺ archimedean"),
    Check("f1-principal-radical", "⟨f⟩ = J(V(f)) (derived consequence, not a cited result)"),
    Check("f1-separation", "for grid points p ≠ q some term f has f(p) = 0 < f(q)"),
)
CHECK_IDS = tuple(c.id for c in CHECKS)

NON_REVERSALS = ("quasihyperradical-not-hyperradical", "prime-not-maximal", "radical-not-prime")


# -- bank ------------------------------------------------------------------------------------------


def default_bank() -> list[dict]:
    bank: list[dict] = [{"kind": "chain", "n": n} for n in range(1, 9)]
    for a in range(1, 36):
        for b in range(1, 36):
            if (a + 1) * (b + 1) <= 36:
                bank.append({"kind": "product", "factors": [{"kind": "chain", "n": a}, {"kind": "chain", "n": b}]})
    bank += [{"kind": "lex_gamma", "k": k} for k in (1, 2, 3)]
    for chain in (1, 2):
        for points in (2, 3, 4):
            bank.append({"kind": "functions", "points": points, "chain": chain})
    bank.append({"kind": "functions", "points": 3, "chain": 2, "subalgebra": "constants"})
    bank.append({"kind": "f1"})
    return bank


def parse_bank(text: str) -> list[dict]:
    if text == "default":
        return default_bank()
    data = load_json(text)
    bank = data if isinstance(data, list) else [data]
    if not bank or not all(isinstance(e, dict) and "kind" in e for e in bank):
        raise MalformedInputError("a bank is an algebra description or a non-empty list of them")
    return bank


def entry_json(entry: dict) -> str:
    return json.dumps(entry, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# -- accumulation ---------------------------------------------------------------------------------


class Acc:
    """Per-task partial results: instance counts, counterexamples, witnesses, counters."""

    def __init__(self):
        self.data: dict[str, dict] = {}

    def _slot(self, cid: str) -> dict:
        assert cid in CHECK_IDS, cid
        return self.data.setdefault(cid, {"instances": 0, "counterexamples": [], "witnesses": [], "counters": {}})

    def test(self, cid: str, ok: bool, payload: Any = None, n: int = 1) -> bool:
        slot = self._slot(cid)
        slot["instances"] += n
        if not ok:
            slot["counterexamples"].append(payload)
        return ok

    def witness(self, cid: str, payload: Any) -> None:
        self._slot(cid)["witnesses"].append(payload)

    def count(self, cid: str, key: str, n: int = 1) -> None:
        c = self._slot(cid)["counters"]
        c[key] = c.get(key, 0) + n


def _lbl(A, x) -> str:
    return A.label(x)


def _ideal(I) -> str:
    return I.value if isinstance(I, GammaIdeal) else I.describe()


# -- finite algebras --------------------------------------------------------------------------------


def _run_finite(entry: dict, acc: Acc, ctx: dict) -> None:
    A = algebra_from_spec(entry)
    name = A.name
    failures = check_axioms(A)
    acc.test("axioms", not failures,
             {"algebra": name, "failures": [{"axiom": f.axiom, "witness": [_lbl(A, x) for x in f.witness]}
                                            for f in failures[:REPORT_CAP]]})
    if failures:
        ctx["skipped"] = True
        return
    ideals = enumerate_ideals(A)
    ctx["ideal_pairs"] = len(ideals)
    _finite_elements(A, acc)
    _finite_element_ideal_laws(A, ideals, acc)
    _finite_ideal_laws(A, ideals, acc)
    _finite_preimages(entry, A, ideals, acc)
    _spectral(A, acc, finite=True)


def _finite_elements(A: FiniteMvAlgebra, acc: Acc) -> None:
    name = A.name
    for a in A.elements:
        c = classify_element(A, a)
        ok = (not c.archimedean or c.quasiarchimedean) and not (c.infinitesimal and c.archimedean and a != A.zero)
        acc.test("element-class-invariants", ok, {"algebra": name, "element": _lbl(A, a), "class": c.as_dict()})
        acc.test("finite-no-nonzero-infinitesimals", a == A.zero or not is_infinitesimal(A, a),
                 {"algebra": name, "element": _lbl(A, a)})
    om, meet = A.ominus, A.meet
    bad = [(x, y) for x in A.elements for y in A.elements if meet[om[x][y]][om[y][x]] != A.zero]
    acc.test("difference-meet-zero", not bad, {"algebra": name, "pairs": [[_lbl(A, x), _lbl(A, y)] for x, y in bad[:3]]},
             n=A.size * A.size)


def _finite_element_ideal_laws(A: FiniteMvAlgebra, ideals: list[IdealFin], acc: Acc) -> None:
    name, om, t, m = A.name, A.ominus, A.times, A.size
    for I in ideals:
        for x in A.elements:
            start = next((n for n in range(m + 1) if om[t(n + 1, x)][t(n, x)] in I), None)
            bad = None
            if start is not None:
                bad = next(((hi, lo) for lo in range(start, m + 1) for hi in range(lo + 1, m + 2)
                            if om[t(hi, x)][t(lo, x)] not in I), None)
            acc.test("stationary-propagation", bad is None,
                     {"algebra": name, "ideal": I.describe(), "x": _lbl(A, x), "n": start, "m,k": bad})
        d, j = A.dist, A.join
        bad = [(x, y) for x in A.elements for y in A.elements if (d[j[x][y]][x] in I) != (om[y][x] in I)]
        acc.test("distance-join-identity", not bad,
                 {"algebra": name, "ideal": I.describe(), "pairs": [[_lbl(A, x), _lbl(A, y)] for x, y in bad[:3]]},
                 n=m * m)


def _implications(flags: dict, acc: Acc, payload: dict) -> None:
    p, mx, qm, r, h, q = (flags[k] for k in FLAG_NAMES)
    acc.test("hyperradical-iff-qhr-and-radical", h == (q and r), payload)
    acc.test("hyperradical-implies-radical", not h or r, payload)
    acc.test("maximal-implies-hyperradical", not mx or h, payload)
    acc.test("quasimaximal-implies-qhr", not qm or q, payload)
    acc.test("prime-hyperradical-implies-maximal", not (p and h) or mx, payload)
    acc.test("prime-implies-qhr", not p or q, payload)
    acc.test("prime-radical-implies-maximal", not (p and r) or mx, payload)
    if q and not h:
        acc.witness("non-reversal-witnesses", {"kind": NON_REVERSALS[0], **payload})
    if p and not mx:
        acc.witness("non-reversal-witnesses", {"kind": NON_REVERSALS[1], **payload})
    if r and not p:
        acc.witness("non-reversal-witnesses", {"kind": NON_REVERSALS[2], **payload})


def _finite_ideal_laws(A: FiniteMvAlgebra, ideals: list[IdealFin], acc: Acc) -> None:
    name = A.name
    maximals = maximal_ideals(A)
    roots = {}
    for I in ideals:
        payload = {"algebra": name, "ideal": I.describe()}
        try:
            flags = classify_ideal(A, I).as_dict()
        except ConsistencyError as e:
            acc.test("rad-equals-infradical", False, {**payload, "error": str(e)})
            continue
        flags.pop("witnesses", None)
        payload_flags = {**payload, "flags": flags}
        _implications(flags, acc, payload_flags)
        acc.test("maximal-cross-check", is_maximal(A, I) == is_maximal_by_extension(A, I), payload)
        if flags["prime"]:
            above = [M for M in maximals if I <= M]
            acc.test("prime-below-unique-maximal", len(above) == 1 and rad_of(A, I) == above[0],
                     {**payload, "maximal_above": [M.describe() for M in above]})
        root = infrad_of(A, I)
        roots[I.bits] = root
        acc.test("qhr-via-infradical", flags["quasihyperradical"] == is_hyperradical(A, root), payload)
        rad = rad_of(A, I)
        if acc.test("rad-equals-infradical", rad == root,
                    {**payload, "rad": rad.describe(), "infradical": root.describe()}):
            acc.count("rad-equals-infradical", "finite-degenerate" if rad == I else "non-trivial")
        acc.test("infradical-contains-ideal", is_ideal(A, root.bits) and I <= root, payload)
    for r in (2, 3):
        for group in itertools.combinations_with_replacement(ideals, r):
            inter = group[0]
            for J in group[1:]:
                inter = inter & J
            rhs = roots[group[0].bits]
            for J in group[1:]:
                rhs = rhs & roots[J.bits]
            acc.test("infradical-of-intersection", infrad_of(A, inter) == rhs,
                     {"algebra": name, "ideals": [J.describe() for J in group]})


def _finite_morphisms(entry: dict, A: FiniteMvAlgebra, ideals: list[IdealFin]) -> list[Morphism]:
    maps = [identity(A)]
    if entry.get("kind") == "product" and len(entry["factors"]) == 2:
        left, right = (algebra_from_spec(f) for f in entry["factors"])
        p1, p2 = projections(left, right, A)
        maps += [Morphism(A, left, p1, "first projection"), Morphism(A, right, p2, "second projection")]
    if entry.get("kind") == "chain":
        n = entry["n"]
        # embeddings chain(a) → chain(n) for a | n, i ↦ i·n/a (not surjective unless a = n)
        for a in range(1, n):
            if n % a == 0:
                maps.append(Morphism(mk_chain(a), A, tuple(i * (n // a) for i in range(a + 1)),
                                     f"embedding chain({a})->chain({n})"))
    for I in ideals:
        maps.append(quotient(A, I)[1])
    return maps


def _finite_preimages(entry: dict, A: FiniteMvAlgebra, ideals: list[IdealFin], acc: Acc) -> None:
    for phi in _finite_morphisms(entry, A, ideals):
        for J in enumerate_ideals(phi.target):
            laws = check_preimage_laws(phi, J)
            payload = {"algebra": A.name, "morphism": phi.name, "source": phi.source.name,
                       "target": phi.target.name, "ideal": J.describe()}
            acc.test("preimage-infradical", laws["infradical"] and laws["is_ideal"], payload)
            if laws["rad"] is not None:
                acc.test("preimage-rad", laws["rad"], payload)


# -- spectra (finite and Γ) --------------------------------------------------------------------------


def _spectral(A, acc: Acc, finite: bool) -> None:
    name = A.name
    spec = characters(A)
    if finite:
        acc.test("character-kernels", kernels_match_maximal(A), {"algebra": name})
    else:
        acc.test("character-kernels", [c.kernel for c in spec.characters] == [GammaIdeal.RAD], {"algebra": name})
    acc.test("hat-kernel", hat_kernel_is_infradical(A), {"algebra": name})
    bad = base_set_laws(spec)
    acc.test("base-set-laws", not bad, {"algebra": name, "violations": bad[:REPORT_CAP]}, n=len(spec.elements))
    p24 = check_prop24(A)
    acc.test("hat-archimedean", not p24["violations"], {"algebra": name, "elements": p24["violations"]},
             n=p24["elements"])
    p25 = check_prop25and26(A)
    acc.test("cozariski-open", not p25["violations"], {"algebra": name, "elements": p25["violations"]},
             n=p25["elements"])
    acc.test("compact-spectrum", p25["equivalence_holds"],
             {"algebra": name, "quasihyperarchimedean": p25["quasihyperarchimedean"],
              "all_cozariski_basics_open": p25["all_cozariski_basics_open"]})
    cls = algebra_class(A)
    if finite:
        ok = cls["hyperarchimedean"] and cls["semisimple"]
    else:
        ok = cls["quasihyperarchimedean"] and not cls["hyperarchimedean"] and not cls["semisimple"]
        acc.witness("algebra-classes", {"algebra": name, "classes": cls})
    acc.test("algebra-classes", ok, {"algebra": name, "classes": cls})
    acc.count("algebra-classes", "hyperarchimedean" if cls["hyperarchimedean"] else
              "quasihyperarchimedean-not-hyperarchimedean" if cls["quasihyperarchimedean"] else "other")


# -- Γ algebras -----------------------------------------------------------------------------------


def _run_gamma(entry: dict, acc: Acc, ctx: dict) -> None:
    A = algebra_from_spec(entry)
    name = A.name
    failures = check_axioms_window(A, GAMMA_AXIOM_WINDOW)
    acc.test("axioms", not failures, {"algebra": name, "window": GAMMA_AXIOM_WINDOW,
                                      "failures": [{"axiom": f.axiom, "witness": list(map(str, f.witness))}
                                                   for f in failures[:REPORT_CAP]]})
    if failures:
        ctx["skipped"] = True
        return
    ctx["ideal_pairs"] = len(GAMMA_IDEALS)
    win = GammaWindow(A, GAMMA_ELEMENT_WINDOW, pair_w=GAMMA_PAIR_WINDOW)
    elems, pairs = win.elems, win.pair_elems

    for a in elems:
        closed, direct = g_classify(A.k, a), classify_direct(A, a)
        same = (closed.infinitesimal, closed.archimedean, closed.quasiarchimedean) == \
               (direct.infinitesimal, direct.archimedean, direct.quasiarchimedean)
        acc.test("gamma-closed-forms", same, {"algebra": name, "element": A.label(a)})
        c = closed
        acc.test("element-class-invariants",
                 (not c.archimedean or c.quasiarchimedean) and not (c.infinitesimal and c.archimedean and a != A.zero),
                 {"algebra": name, "element": A.label(a)})
    acc.witness("gamma-closed-forms", {"algebra": name, "element": "(0,1)",
                                       "class": g_classify(A.k, (0, 1)).as_dict()})
    bad = [(x, y) for x in pairs for y in pairs if A.meet(A.ominus(x, y), A.ominus(y, x)) != A.zero]
    acc.test("difference-meet-zero", not bad, {"algebra": name, "pairs": bad[:3]}, n=len(pairs) ** 2)

    N = A.n_bound
    for I in GAMMA_IDEALS:
        for x in elems:
            step = lambda n: A.ominus(A.times(n + 1, x), A.times(n, x))  # noqa: E731
            start = next((n for n in range(N + 1) if I.contains(step(n))), None)
            bad = None
            if start is not None:
                bad = next(((hi, lo) for lo in range(start, N + 2) for hi in range(lo + 1, N + 3)
                            if not I.contains(A.ominus(A.times(hi, x), A.times(lo, x)))), None)
            acc.test("stationary-propagation", bad is None,
                     {"algebra": name, "ideal": I.value, "x": A.label(x), "n": start, "m,k": bad})
        bad = [(x, y) for x in pairs for y in pairs
               if I.contains(A.dist(A.join(x, y), x)) != I.contains(A.ominus(y, x))]
        acc.test("distance-join-identity", not bad, {"algebra": name, "ideal": I.value, "pairs": bad[:3]},
                 n=len(pairs) ** 2)

    for I in GAMMA_IDEALS:
        payload = {"algebra": name, "ideal": I.value}
        try:
            flags = classify_ideal(A, I).as_dict()
        except ConsistencyError as e:
            acc.test("rad-equals-infradical", False, {**payload, "error": str(e)})
            continue
        flags.pop("witnesses", None)
        _implications(flags, acc, {**payload, "flags": flags})
        by_extension = I != GammaIdeal.FULL and all(
            J in (I, GammaIdeal.FULL) for J in GAMMA_IDEALS if I <= J
        )
        acc.test("maximal-cross-check", win.is_maximal(I) == by_extension == flags["maximal"], payload)
        if flags["prime"]:
            above = [M for M in GAMMA_IDEALS if I <= M and win.is_maximal(M)]
            acc.test("prime-below-unique-maximal", len(above) == 1 and g_rad_of(I) == above[0],
                     {**payload, "maximal_above": [M.value for M in above]})
        root = g_infrad_of(I)
        acc.test("qhr-via-infradical", flags["quasihyperradical"] == win.is_hyperradical(root), payload)
        closed_ok = g_rad_of(I) == root
        window_ok = win.rad(I) == win.infrad(I) == root
        if acc.test("rad-equals-infradical", closed_ok and window_ok,
                    {**payload, "rad": g_rad_of(I).value, "infradical": root.value}):
            if g_rad_of(I) == I:
                acc.count("rad-equals-infradical", "gamma-fixed")
            else:
                acc.count("rad-equals-infradical", "non-trivial")
                acc.witness("rad-equals-infradical",
                            {"algebra": name, "ideal": I.value, "rad": g_rad_of(I).value, "infradical": root.value})
        acc.test("infradical-contains-ideal", I <= root and win.identify(win.trace(root)) == root, payload)
    for r in (2, 3):
        for group in itertools.combinations_with_replacement(GAMMA_IDEALS, r):
            inter = min(group, key=GAMMA_IDEALS.index)
            rhs = min((g_infrad_of(J) for J in group), key=GAMMA_IDEALS.index)
            acc.test("infradical-of-intersection", g_infrad_of(inter) == rhs == win.infrad(inter),
                     {"algebra": name, "ideals": [J.value for J in group]})

    # quotient map Γ → Γ/Rad ≅ chain(k); its ideals are {0} and everything
    Q, project = g_quotient_by_rad(A.k)
    for J in enumerate_ideals(Q):
        pre = win.identify(x for x in elems if project(x) in J)
        payload = {"algebra": name, "morphism": "quotient by rad", "target": Q.name, "ideal": J.describe()}
        lhs_root = win.identify(x for x in elems if project(x) in infrad_of(Q, J))
        acc.test("preimage-infradical", lhs_root == win.infrad(pre), payload)
        lhs_rad = win.identify(x for x in elems if project(x) in rad_of(Q, J))
        acc.test("preimage-rad", lhs_rad == win.rad(pre), payload)
    _spectral(A, acc, finite=False)


# -- function carriers on finite sets ----------------------------------------------------------------

_GALOIS_GROUPS = {
    "galois-connection": ("j-is-ideal", "v-antitone", "j-antitone", "ideal-in-jv", "set-in-vj",
                          "union-of-loci-in-locus-of-meet", "join-of-vanishing-in-vanishing-of-meet",
                          "meet-of-loci", "meet-of-vanishing", "proper-ideal-has-root", "closed-set-recovery"),
    "restriction-isomorphism": ("restriction-iso",),
    "rad-equals-jv": ("rad-is-jv",),
    "radical-closed-bijection": ("radical-closed-bijection",),
    "infradical-vs-vanishing": ("infradical-in-jv", "jv-in-infradical"),
}


def _run_functions(entry: dict, acc: Acc, ctx: dict) -> None:
    points, chain = entry.get("points"), entry.get("chain", 1)
    if entry.get("subalgebra", "full") == "constants":
        FA = FiniteFunctionAlgebra.constants(points, chain)
    else:
        FA = FiniteFunctionAlgebra.full(points, chain)
    failures = check_axioms(FA.algebra)
    acc.test("axioms", not failures, {"algebra": FA.name, "failures": [f.axiom for f in failures[:REPORT_CAP]]})
    if failures:
        ctx["skipped"] = True
        return
    report = galois_suite_finite(FA)
    cx = report["counterexamples"]
    for cid, laws in _GALOIS_GROUPS.items():
        present = [law for law in laws if law in cx]
        if not present:
            continue
        bad = {law: cx[law][:REPORT_CAP] for law in present if cx[law]}
        acc.test(cid, not bad, {"carrier": FA.name, "laws": bad}, n=report["ideals"] + report["closed_sets"])
    if report["separating"]:
        acc.test("nullstellensatz", not cx["infradical-in-jv"] and not cx["jv-in-infradical"],
                 {"carrier": FA.name}, n=report["ideals"])
    else:
        acc.witness("infradical-vs-vanishing", {"carrier": FA.name, "separating": False,
                                                "ideals": report["ideals"]})


# -- F[1] ---------------------------------------------------------------------------------------------


def _rationals(denominator: int) -> list[Fraction]:
    return sorted({Fraction(i, d) for d in range(1, denominator + 1) for i in range(d + 1)})


def _run_f1_basic(corpus: list[str], n_max: int, acc: Acc) -> None:
    fs = [(s, to_pl1(s)) for s in corpus]
    grid = _rationals(SOUNDNESS_DENOMINATOR)
    for s, f in fs:
        vals = f.values_at(grid)
        bad = next((str(x) for x, v in zip(grid, vals) if evaluate(s, {"x": x}) != v), None)
        acc.test("f1-term-soundness", bad is None and all(isinstance(k, int) for k in f.slopes()),
                 {"term": s, "point": bad}, n=len(grid))

        arch = archimedean_pl(f)
        direct = archimedean_witness_pl(f, n_max)
        acc.test("f1-archimedean-zero-set", arch == direct.holds,
                 {"term": s, "zero_set": str(zero_set(f)), "by_zero_set": arch, "by_search": direct.holds})
        try:
            inf = is_infinitesimal_pl(f)
            ok = inf == f.is_zero
        except AssertionError:
            ok = False
        v = min_positive_value(f)
        acc.test("f1-no-infinitesimals", ok, {"term": s, "min_positive": str(v)})
        if v is not None:
            acc.witness("f1-no-infinitesimals", {"term": s, "n": math.ceil(1 / v)})
        quasi = quasiarchimedean_pl(f, n_max)
        acc.test("f1-quasi-iff-archimedean", quasi.holds == arch, {"term": s, "quasi": quasi.holds, "arch": arch})

    x = PL1.identity()
    zx = zero_set(x)
    ok = not archimedean_pl(x) and not quasiarchimedean_pl(x, n_max).holds and zx.as_list() == [["0", "0"]]
    acc.test("f1-archimedean-zero-set", ok, {"term": "x", "zero_set": str(zx)})
    acc.witness("f1-archimedean-zero-set", {"term": "x", "quasiarchimedean": False, "zero_set": str(zx)})

    gal = galois_suite_f1(corpus, n_max)
    cx = gal["counterexamples"]
    principal = cx.pop("principal-is-radical")
    bad = {k: v[:REPORT_CAP] for k, v in cx.items() if v}
    acc.test("galois-connection", not bad, {"carrier": "F[1]", "laws": bad}, n=len(corpus) ** 2)
    acc.test("f1-principal-radical", not principal, {"pairs": principal[:REPORT_CAP]}, n=len(corpus) ** 2)

    sep = separating_check_f1()
    acc.test("f1-separation", sep["ok"], {"missing": sep["missing"][:REPORT_CAP]}, n=sep["pairs"])
    acc.witness("f1-separation", {"pair": "1/3,2/3", "term": sep["witnesses"].get("1/3,2/3")})


def _run_f1_generator(corpus: list[str], index: int, n_max: int, acc: Acc) -> None:
    f_src = corpus[index]
    f = to_pl1(f_src)
    ns = nullstellensatz_f1(f_src, corpus, n_max)
    for row in ns["rows"]:
        ok = row["vanishes_on_locus"] == row["infradical_by_criterion"] == row["infradical_by_witness"]
        acc.test("nullstellensatz", ok, {"f": f_src, **row})
        acc.count("nullstellensatz", "in-radical" if row["vanishes_on_locus"] else "not-in-radical")
    acc.count("nullstellensatz", "n-checks", len(ns["rows"]) * (n_max + 1))
    rj = rad_eq_jv_f1(f_src, corpus, n_max)
    acc.test("rad-equals-jv", rj["ok"], {"f": f_src, "g": rj["counterexamples"]}, n=len(corpus))
    for g_src in corpus:
        g = to_pl1(g_src)
        try:
            m = member_principal1(g, f, n_max)
            ok = m.verdict != "unknown"
            acc.count("f1-membership-oracle", m.verdict)
        except ConsistencyError:
            ok = False
        acc.test("f1-membership-oracle", ok, {"g": g_src, "f": f_src})


# -- task execution --------------------------------------------------------------------------------


def _tasks(bank: list[dict], n_max: int, corpus_path: Optional[str]) -> list[tuple]:
    tasks = []
    for i, entry in enumerate(bank):
        kind = entry.get("kind")
        if kind in ("chain", "product", "table"):
            tasks.append(("finite", i, entry, n_max, None))
        elif kind == "lex_gamma":
            tasks.append(("gamma", i, entry, n_max, None))
        elif kind == "functions":
            tasks.append(("functions", i, entry, n_max, None))
        elif kind == "f1":
            corpus = load_corpus(entry.get("corpus", corpus_path))
            tasks.append(("f1-basic", i, entry, n_max, corpus))
            tasks += [("f1-generator", i, entry, n_max, (corpus, j)) for j in range(len(corpus))]
        else:
            raise MalformedInputError(f"unknown bank entry kind {kind!r}")
    return tasks


def _run_task(task: tuple) -> dict:
    kind, index, entry, n_max, extra = task
    acc, ctx = Acc(), {}
    start = time.perf_counter()
    if kind == "finite":
        _run_finite(entry, acc, ctx)
    elif kind == "gamma":
        _run_gamma(entry, acc, ctx)
    elif kind == "functions":
        _run_functions(entry, acc, ctx)
    elif kind == "f1-basic":
        _run_f1_basic(extra, n_max, acc)
    else:
        corpus, j = extra
        _run_f1_generator(corpus, j, n_max, acc)
    return {"kind": kind, "entry": entry, "index": index, "data": acc.data, "ctx": ctx,
            "elapsed": time.perf_counter() - start,
            "label": kind if kind.startswith("f1") else _entry_name(entry)}


def _entry_name(entry: dict) -> str:
    kind = entry.get("kind")
    if kind == "chain":
        return f"chain({entry.get('n')})"
    if kind == "product":
        return "x".join(_entry_name(f) for f in entry.get("factors", []))
    if kind == "lex_gamma":
        return f"lex_gamma({entry.get('k')})"
    if kind == "functions":
        sub = entry.get("subalgebra", "full")
        base = f"chain({entry.get('chain', 1)})^{entry.get('points')}"
        return base if sub == "full" else f"{sub}:{base}"
    if kind == "f1":
        return "F[1]"
    return entry.get("name", kind)


def _reproduce(cid: str, entry: dict, payload: Any, n_max: int) -> str:
    spec = entry_json(entry)
    kind = entry.get("kind")
    if cid == "axioms" and kind != "functions":
        return f"mv check-axioms --algebra '{spec}'"
    if isinstance(payload, dict) and "ideal" in payload and kind in ("chain", "product", "table", "lex_gamma"):
        return f"mv ideals classify --algebra '{spec}' --ideal '{payload['ideal']}'"
    if cid in ("hat-archimedean", "cozariski-open", "compact-spectrum"):
        which = {"hat-archimedean": "2.4", "cozariski-open": "2.5", "compact-spectrum": "2.6"}[cid]
        return f"mv spectrum '{spec}' --check {which}"
    if kind == "f1" and isinstance(payload, dict) and "f" in payload:
        return f"mv null check --carrier f1 --ideal 'principal:{payload['f']}' --nmax {n_max}"
    return f"mv suite run --bank '{spec}' --nmax {n_max}"


def run_suite(bank: list[dict], n_max: int = 64, jobs: int = 1, corpus_path: Optional[str] = None,
              timings: bool = False) -> dict:
    if n_max < 1:
        raise MalformedInputError("nMax must be ≥ 1")
    if not bank:
        raise MalformedInputError("bank must not be empty")
    tasks = _tasks(bank, n_max, corpus_path)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    return _aggregate(bank, results, n_max, timings)


def _aggregate(bank: list[dict], results: list[dict], n_max: int, timings: bool) -> dict:
    merged = {cid: {"instances": 0, "counterexamples": [], "witnesses": [], "counters": {}} for cid in CHECK_IDS}
    skipped, ideal_pairs = [], 0
    for res in results:
        if res["ctx"].get("skipped"):
            skipped.append(res["label"])
        ideal_pairs += res["ctx"].get("ideal_pairs", 0)
        for cid, slot in res["data"].items():
            m = merged[cid]
            m["instances"] += slot["instances"]
            for cx in slot["counterexamples"]:
                m["counterexamples"].append({"payload": cx, "reproduce": _reproduce(cid, res["entry"], cx, n_max)})
            m["witnesses"] += slot["witnesses"]
            for k, v in slot["counters"].items():
                m["counters"][k] = m["counters"].get(k, 0) + v

    checks = []
    for c in CHECKS:
        m = merged[c.id]
        entry: dict[str, Any] = {"id": c.id, "statement": c.statement, "instances": m["instances"]}
        if m["counterexamples"]:
            status = "fail"
        elif m["instances"] == 0:
            status = "not-applicable"
        else:
            status = "pass"
        witnesses = m["witnesses"]
        if c.id == "non-reversal-witnesses":
            first = {}
            for w in witnesses:
                first.setdefault(w["kind"], w)
            witnesses = [first[k] for k in NON_REVERSALS if k in first]
            missing = [k for k in NON_REVERSALS if k not in first]
            entry["instances"] = len(NON_REVERSALS)
            status = "pass" if not missing else "not-applicable"
            if missing:
                entry["missing"] = missing
        entry["status"] = status
        if m["counters"]:
            entry["counters"] = dict(sorted(m["counters"].items()))
        if c.id == "rad-equals-infradical":
            entry["note"] = ("on finite algebras every ideal satisfies Rad(I) = √I = I (degenerate); "
                             "the Γ instance Zero ↦ Rad is the non-trivial one")
        if c.id == "compact-spectrum":
            entry["note"] = "continuity and compactness conditions are automatic on finite spectra; not independently tested"
        if c.id == "f1-principal-radical":
            entry["note"] = "derived consequence of the zero-set membership criterion, checked on the corpus"
        if c.id == "nullstellensatz":
            entry["note"] = f"F[1] infradical membership verified for all n ≤ {n_max} and by the exact zero-set criterion"
        if m["counterexamples"]:
            entry["counterexample_count"] = len(m["counterexamples"])
            entry["counterexamples"] = m["counterexamples"][:REPORT_CAP]
        if witnesses:
            entry["witnesses"] = witnesses[:REPORT_CAP]
        checks.append(entry)

    # axiom failures are reported first
    checks.sort(key=lambda e: (e["id"] != "axioms" or e["status"] != "fail"))
    counts = {s: sum(1 for e in checks if e["status"] == s) for s in ("pass", "fail", "not-applicable")}
    report: dict[str, Any] = {
        "status": "fail" if counts["fail"] else "pass",
        "summary": {**counts, "checks": len(checks), "ideal_pairs": ideal_pairs,
                    "bank_size": len(bank), "n_max": n_max},
        "bank": [_entry_name(e) for e in bank],
        "skipped": skipped,
        "interpretation": QUASISIMPLE_NOTE,
        "checks": checks,
    }
    if timings:
        report["timings"] = {
            "total_task_seconds": round(sum(r["elapsed"] for r in results), 3),
            "tasks": [{"task": r["label"], "seconds": round(r["elapsed"], 3)} for r in results],
        }
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, default=_default)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    if isinstance(o, GammaIdeal):
        return o.value
    raise TypeError(f"not serialisable: {type(o).__name__}")


def render_text(report: dict) -> str:
    lines = [f"suite: {report['status']}  "
             f"({report['summary']['pass']} pass, {report['summary']['fail']} fail, "
             f"{report['summary']['not-applicable']} not applicable; "
             f"{report['summary']['ideal_pairs']} (algebra, ideal) pairs)"]
    for c in report["checks"]:
        lines.append(f"{c['status'].upper():15} {c['id']:36} instances={c['instances']}")
        for cx in c.get("counterexamples", []):
            lines.append(f"    counterexample: {json.dumps(cx['payload'], ensure_ascii=False, default=_default)}")
            lines.append(f"    reproduce: {cx['reproduce']}")
    if report["skipped"]:
        lines.append("skipped after axiom failure: " + ", ".join(report["skipped"]))
    return "\n".join(lines)
