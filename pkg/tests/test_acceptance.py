"""End-to-end acceptance criteria, one PASS/FAIL line each (shown in the terminal summary)."""
import itertools
import time

import pytest

import conftest
from mvalgebra import null
from mvalgebra.core import check_axioms, mk_chain, mk_product
from mvalgebra.gamma import (
    GammaIdeal,
    GammaWindow,
    LexGammaAlgebra,
    check_axioms_window,
    g_infrad_of,
    g_rad_of,
)
from mvalgebra.ideals import (
    algebra_class,
    enumerate_ideals,
    infrad_of,
    is_maximal,
    is_maximal_by_extension,
    rad_of,
    witness_search,
    zero_set_criterion,
)
from mvalgebra.suite import dumps, parse_bank, run_suite
from mvalgebra.terms import load_corpus, quasiarchimedean_pl, to_pl1, zero_set

AXIOM_BUDGET_S = 10
NULLSTELLENSATZ_BUDGET_S = 60
SUITE_BUDGET_S = 300
MIN_IDEAL_PAIRS = 200
N_MAX = 64
GAMMA_WINDOW = 64

CHAINS = [mk_chain(n) for n in range(1, 9)]
PRODUCTS = [mk_product(mk_chain(a), mk_chain(b))
            for a, b in itertools.product(range(1, 36), repeat=2) if (a + 1) * (b + 1) <= 36]
FINITE = CHAINS + PRODUCTS
GAMMAS = [LexGammaAlgebra(k) for k in (1, 2, 3)]


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def check(report, cid):
    return next(c for c in report["checks"] if c["id"] == cid)


@pytest.fixture(scope="module")
def suite_run():
    start = time.perf_counter()
    report = run_suite(parse_bank("default"), n_max=N_MAX, jobs=1)
    return report, dumps(report), time.perf_counter() - start


def test_criterion_1_axioms():
    start = time.perf_counter()
    failures = [A.name for A in FINITE if check_axioms(A)]
    failures += [A.name for A in GAMMAS if check_axioms_window(A, GAMMA_WINDOW)]
    elapsed = time.perf_counter() - start
    record(1, "axioms on chains, products and Γ windows",
           not failures and elapsed < AXIOM_BUDGET_S,
           f"{len(FINITE) + len(GAMMAS)} algebras, {elapsed:.1f}s < {AXIOM_BUDGET_S}s, failures={failures}")


def test_criterion_2_rad_equals_infradical(suite_run):
    report, _, _ = suite_run
    bad = [(A.name, I.describe()) for A in FINITE for I in enumerate_ideals(A) if rad_of(A, I) != infrad_of(A, I)]
    # Γ side recomputed on a window: √I element-wise, Rad(I) as the meet of maximal ideals above I
    win = GammaWindow(LexGammaAlgebra(1), 12, pair_w=6)

    def window_rad(I):
        above = [M for M in GammaIdeal if I <= M and win.is_maximal(M)]
        return min(above, default=GammaIdeal.FULL)

    gamma_ok = all(window_rad(I) == win.infrad(I) == g_rad_of(I) == g_infrad_of(I) for I in GammaIdeal)
    nontrivial = window_rad(GammaIdeal.ZERO) is GammaIdeal.RAD and win.infrad(GammaIdeal.ZERO) is GammaIdeal.RAD
    c = check(report, "rad-equals-infradical")
    labelled = c["counters"].get("finite-degenerate", 0) > 0 and "degenerate" in c["note"]
    record(2, "Rad(I) = √I on every bank ideal, Chang Zero ↦ Rad",
           not bad and gamma_ok and nontrivial and labelled and c["status"] == "pass",
           f"counters={c['counters']}")


def test_criterion_3_implication_lattice(suite_run):
    report, _, _ = suite_run
    ids = ["hyperradical-iff-qhr-and-radical", "hyperradical-implies-radical", "maximal-implies-hyperradical",
           "quasimaximal-implies-qhr", "prime-hyperradical-implies-maximal", "prime-implies-qhr",
           "prime-radical-implies-maximal"]
    statuses = {cid: check(report, cid)["status"] for cid in ids}
    pairs = report["summary"]["ideal_pairs"]
    nr = check(report, "non-reversal-witnesses")
    kinds = sorted(w["kind"] for w in nr["witnesses"])
    ok = (all(s == "pass" for s in statuses.values()) and pairs >= MIN_IDEAL_PAIRS
          and nr["status"] == "pass" and len(kinds) == 3)
    record(3, "implication lattice over all enumerated ideals plus non-reversal witnesses", ok,
           f"{pairs} pairs >= {MIN_IDEAL_PAIRS}, witnesses={kinds}")


def test_criterion_4_nullstellensatz_f1():
    for fn in (null.j_member_f1, null._infinitesimal_probe, null._member_pair):
        fn.cache_clear()
    corpus = load_corpus()
    start = time.perf_counter()
    bad = []
    for f in corpus:
        r = null.nullstellensatz_f1(f, corpus, N_MAX)
        bad += [(f, g) for g in r["counterexamples"]]
    elapsed = time.perf_counter() - start
    record(4, "J(V(<f>)) = √<f> on F[1] corpus, criterion and n ≤ 64 checks",
           not bad and elapsed < NULLSTELLENSATZ_BUDGET_S,
           f"{len(corpus)}² pairs, {elapsed:.1f}s < {NULLSTELLENSATZ_BUDGET_S}s, discrepancies={len(bad)}")


def test_criterion_5_hat_and_cozariski(suite_run):
    report, _, _ = suite_run
    statuses = [check(report, cid)["status"] for cid in ("hat-archimedean", "cozariski-open", "algebra-classes")]
    chang = algebra_class(LexGammaAlgebra(1))
    chang_ok = chang["quasihyperarchimedean"] and not chang["hyperarchimedean"] and not chang["semisimple"]
    finite_ok = all(algebra_class(A)["hyperarchimedean"] for A in FINITE)
    x = to_pl1("x")
    x_ok = not quasiarchimedean_pl(x, N_MAX).holds and zero_set(x).as_list() == [["0", "0"]]
    f1 = check(report, "f1-archimedean-zero-set")
    record(5, "quasiarchimedean ⟺ â archimedean ⟺ W^c_a open; class reports",
           all(s == "pass" for s in statuses) and chang_ok and finite_ok and x_ok and f1["status"] == "pass",
           "Chang quasihyperarchimedean, not hyperarchimedean, not semisimple; x has zero set {0}")


def test_criterion_6_galois(suite_run):
    report, _, _ = suite_run
    results = [null.galois_suite_finite(null.FiniteFunctionAlgebra.full(p, c)) for p in (2, 3, 4) for c in (1, 2)]
    exhaustive = all(r["closed_sets"] == 2 ** r["points"] and r["ok"] and r["separating"] for r in results)
    statuses = [check(report, cid)["status"] for cid in
                ("galois-connection", "restriction-isomorphism", "rad-equals-jv", "radical-closed-bijection")]
    record(6, "Galois connection exhaustive on |X| ≤ 4, S = V(J(S)), radical/closed bijection",
           exhaustive and all(s == "pass" for s in statuses),
           f"{len(results)} carriers, {sum(r['closed_sets'] for r in results)} closed sets")


def test_criterion_7_oracle_cross_checks():
    fs = [to_pl1(s) for s in load_corpus()]
    membership_bad = sum(zero_set_criterion(g, f) != (witness_search(g, f, N_MAX) is not None)
                         for f in fs for g in fs)
    maximal_bad = sum(is_maximal(A, I) != is_maximal_by_extension(A, I)
                      for A in FINITE for I in enumerate_ideals(A))
    record(7, "membership criterion vs witness search, maximality vs extension",
           membership_bad == 0 and maximal_bad == 0,
           f"{len(fs) ** 2} corpus pairs, disagreements={membership_bad}+{maximal_bad}")


def test_criterion_8_determinism(suite_run):
    report, first, elapsed = suite_run
    second = dumps(run_suite(parse_bank("default"), n_max=N_MAX, jobs=1))
    parallel = dumps(run_suite(parse_bank("default"), n_max=N_MAX, jobs=2))
    record(8, "byte-identical default runs, parallel run identical, suite under 5 minutes",
           first == second and first == parallel and elapsed < SUITE_BUDGET_S and report["status"] == "pass",
           f"{elapsed:.1f}s < {SUITE_BUDGET_S}s, {len(first)} bytes")
