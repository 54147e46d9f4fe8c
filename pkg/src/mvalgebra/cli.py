"""Command-line front end.  Exit codes: 0 pass, 1 law failure, 2 usage or parse error, 3 resource limit."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional

from .core import check_axioms, classify_element
from .errors import ConsistencyError, MVError, ResourceLimitError
from .gamma import GAMMA_IDEALS, GammaIdeal, LexGammaAlgebra, check_axioms_window, g_classify
from .ideals import (
    FLAG_NAMES,
    QUASISIMPLE_NOTE,
    algebra_class,
    classify_ideal,
    enumerate_ideals,
    infrad_of,
    rad_of,
)
from .null import galois_suite_finite, nullstellensatz_f1, nullstellensatz_finite, rad_eq_jv_f1
from .spectra import check_prop24, check_prop25and26, spectrum_report
from .specs import (
    algebra_from_spec,
    finite_carrier_from_spec,
    ideal_from_literal,
    principal_from_literal,
)
from .suite import dumps, parse_bank, render_text, run_suite
from .terms import evaluate, load_corpus, normalize, parse, render, term_eq1, to_pl1, zero_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(payload: dict, fmt: str, text: Optional[str] = None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False, default=str))
    else:
        print(text if text is not None else _as_text(payload))


def _as_text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_as_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            (f"{pad}-\n{_as_text(v, indent + 1)}" if isinstance(v, (dict, list)) else f"{pad}- {_scalar(v)}")
            for v in obj
        )
    return f"{pad}{_scalar(obj)}"


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def _report_arg(p: argparse.ArgumentParser, choices=("json", "text"), default="text") -> None:
    p.add_argument("--report", choices=choices, default=default, help="output format")


# -- commands -------------------------------------------------------------------------------------


def cmd_check_axioms(args) -> int:
    A = algebra_from_spec(args.algebra)
    if isinstance(A, LexGammaAlgebra):
        failures = check_axioms_window(A, args.window)
        scope = {"window": args.window}
    else:
        failures = check_axioms(A)
        scope = {"size": A.size}
    label = (lambda x: str(x)) if isinstance(A, LexGammaAlgebra) else A.label
    out = {
        "algebra": A.name,
        **scope,
        "ok": not failures,
        "failures": [{"axiom": f.axiom, "witness": [label(x) for x in f.witness]} for f in failures],
    }
    _emit(out, args.report)
    return EXIT_OK if not failures else EXIT_FAIL


def _ideal_payload(A, I) -> dict:
    flags = classify_ideal(A, I)
    out: dict[str, Any] = {"ideal": I.value if isinstance(I, GammaIdeal) else I.describe()}
    if not isinstance(I, GammaIdeal):
        out["members"] = I.as_list()
        out["rad"] = rad_of(A, I).describe()
        out["infradical"] = infrad_of(A, I).describe()
    else:
        from .gamma import g_infrad_of, g_rad_of

        out["rad"] = g_rad_of(I).value
        out["infradical"] = g_infrad_of(I).value
    out["flags"] = flags.as_dict()
    return out


def cmd_classify(args) -> int:
    A = algebra_from_spec(args.algebra)
    if args.element is not None:
        x = A.element(args.element)
        c = g_classify(A.k, x) if isinstance(A, LexGammaAlgebra) else classify_element(A, x)
        out = {"algebra": A.name, "element": A.label(x), **c.as_dict()}
    elif args.ideal is not None:
        out = {"algebra": A.name, **_ideal_payload(A, ideal_from_literal(A, args.ideal))}
    else:
        out = {"algebra": A.name, "classes": algebra_class(A), "interpretation": QUASISIMPLE_NOTE}
    _emit(out, args.report)
    return EXIT_OK


def _all_ideals(A) -> list:
    return list(GAMMA_IDEALS) if isinstance(A, LexGammaAlgebra) else enumerate_ideals(A)


def cmd_ideals(args) -> int:
    A = algebra_from_spec(args.algebra)
    if args.action == "list":
        out = {"algebra": A.name, "ideals": [_ideal_payload(A, I) for I in _all_ideals(A)]}
    else:
        if args.ideal is None:
            raise SystemExit(_usage("ideals classify needs --ideal"))
        out = {"algebra": A.name, **_ideal_payload(A, ideal_from_literal(A, args.ideal))}
    _emit(out, args.report)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    A = algebra_from_spec(args.algebra)
    out = spectrum_report(A, with_base_sets=args.base_sets)
    status = EXIT_OK
    if args.check == "2.4":
        r = check_prop24(A)
        out["hat-archimedean"] = r
        status = EXIT_FAIL if r["violations"] else EXIT_OK
    elif args.check in ("2.5", "2.6"):
        r = check_prop25and26(A)
        key = "cozariski-open" if args.check == "2.5" else "compact-spectrum"
        out[key] = r
        bad = r["violations"] if args.check == "2.5" else not r["equivalence_holds"]
        status = EXIT_FAIL if bad else EXIT_OK
    _emit(out, args.report)
    return status


def _valuation(pairs: list[str]) -> dict[str, Fraction]:
    val = {}
    for p in pairs:
        if "=" not in p:
            raise SystemExit(_usage(f"bad binding {p!r}; expected name=value"))
        k, v = p.split("=", 1)
        try:
            val[k.strip()] = Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise SystemExit(_usage(f"bad value in binding {p!r}")) from None
    return val


def cmd_term(args) -> int:
    t = parse(args.term)
    if args.action == "parse":
        out = {"term": render(t), "ast": repr(t), "normal_form": render(normalize(t))}
    elif args.action == "eval":
        out = {"term": render(t), "value": str(evaluate(t, _valuation(args.at or [])))}
    elif args.action == "pl":
        f = to_pl1(t)
        out = {"term": render(t), "breakpoints": f.as_list(), "slopes": f.slopes()}
    elif args.action == "zeros":
        z = zero_set(to_pl1(t))
        out = {"term": render(t), "zero_set": z.as_list(), "pretty": str(z)}
    else:
        if args.other is None:
            raise SystemExit(_usage("term eq needs a second term"))
        r = term_eq1(t, parse(args.other))
        out = {"left": render(t), "right": render(parse(args.other)), "equal": r.equal,
               "witness": None if r.witness is None else str(r.witness)}
    _emit(out, args.report)
    return EXIT_OK


def cmd_null(args) -> int:
    if args.carrier == "f1":
        label, f = principal_from_literal(args.ideal)
        corpus = load_corpus(args.corpus)
        out = nullstellensatz_f1(f, corpus, args.nmax)
        out["generator"] = label
        out["rad_equals_jv"] = rad_eq_jv_f1(f, corpus, args.nmax)["ok"]
        ok = out["ok"] and out["rad_equals_jv"]
    elif args.carrier.startswith("finite:"):
        FA = finite_carrier_from_spec(args.carrier[len("finite:"):])
        I = ideal_from_literal(FA.algebra, args.ideal)
        out = nullstellensatz_finite(FA, I)
        galois = galois_suite_finite(FA)
        out["separating"] = galois["separating"]
        out["galois_laws"] = {k: not v for k, v in galois["counterexamples"].items()}
        # equality needs a separating carrier; the inclusion √I ⊆ J(V(I)) does not
        if not galois["separating"]:
            out["ok"] = all(not r["in_infradical"] or r["in_jv"] for r in out["rows"])
            out["note"] = "non-separating carrier: only √I ⊆ J(V(I)) is required"
        ok = out["ok"] and galois["ok"]
    else:
        raise SystemExit(_usage("--carrier must be f1 or finite:<json>"))
    _emit(out, args.report)
    return EXIT_OK if ok else EXIT_FAIL


def _hasse_edges(nodes: list, leq) -> list[tuple[int, int]]:
    edges = []
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if i != j and leq(a, b) and not any(
                k not in (i, j) and leq(a, c) and leq(c, b) for k, c in enumerate(nodes)
            ):
                edges.append((i, j))
    return edges


def cmd_lattice(args) -> int:
    A = algebra_from_spec(args.algebra)
    ideals = _all_ideals(A)
    payloads = [_ideal_payload(A, I) for I in ideals]
    edges = _hasse_edges(ideals, lambda a, b: a <= b and a != b)
    if args.report == "dot":
        lines = [f'digraph "{A.name}" {{', "  rankdir=BT;", "  node [shape=box];"]
        for i, p in enumerate(payloads):
            on = [k for k in FLAG_NAMES if p["flags"][k]]
            label = p["ideal"] + "\\n" + (", ".join(on) if on else "-")
            lines.append(f'  n{i} [label="{label}"];')
        for i, j in edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        print("\n".join(lines))
    else:
        out = {"algebra": A.name, "nodes": payloads,
               "edges": [[payloads[i]["ideal"], payloads[j]["ideal"]] for i, j in edges]}
        _emit(out, args.report)
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.nmax < 1:
        raise SystemExit(_usage("--nmax must be ≥ 1"))
    if args.jobs < 1:
        raise SystemExit(_usage("--jobs must be ≥ 1"))
    bank = parse_bank(args.bank)
    report = run_suite(bank, n_max=args.nmax, jobs=args.jobs, corpus_path=args.corpus, timings=args.timings)
    if args.report == "json":
        print(dumps(report))
    else:
        print(render_text(report))
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def _usage(msg: str) -> int:
    print(f"mv: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


# -- parser -----------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mv", description="MV-algebra computations and theorem checks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check-axioms", help="verify the MV axioms")
    s.add_argument("--algebra", required=True, help="JSON description or path")
    s.add_argument("--window", type=int, default=64, help="|q| bound for Γ algebras")
    _report_arg(s)
    s.set_defaults(func=cmd_check_axioms)

    s = sub.add_parser("classify", help="classify an element, an ideal, or the algebra")
    s.add_argument("--algebra", required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--element")
    g.add_argument("--ideal")
    _report_arg(s)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("ideals", help="enumerate or classify ideals")
    s.add_argument("action", choices=("list", "classify"))
    s.add_argument("--algebra", required=True)
    s.add_argument("--ideal")
    _report_arg(s)
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("spectrum", help="characters, base sets and hat-map checks")
    s.add_argument("algebra")
    s.add_argument("--base-sets", action="store_true")
    s.add_argument("--check", choices=("2.4", "2.5", "2.6"))
    _report_arg(s)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("term", help="parse, evaluate and compare terms")
    s.add_argument("action", choices=("parse", "eval", "pl", "zeros", "eq"))
    s.add_argument("term")
    s.add_argument("other", nargs="?")
    s.add_argument("--at", nargs="*", metavar="VAR=VALUE")
    _report_arg(s)
    s.set_defaults(func=cmd_term)

    s = sub.add_parser("null", help="Nullstellensatz check on a carrier")
    s.add_argument("action", choices=("check",))
    s.add_argument("--carrier", required=True, help="f1 or finite:<json>")
    s.add_argument("--ideal", required=True)
    s.add_argument("--nmax", type=int, default=64)
    s.add_argument("--corpus", help="term corpus file (defaults to the bundled one)")
    _report_arg(s)
    s.set_defaults(func=cmd_null)

    s = sub.add_parser("lattice", help="ideal lattice as a Hasse diagram")
    s.add_argument("--algebra", required=True)
    _report_arg(s, choices=("json", "text", "dot"), default="dot")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("suite", help="run the theorem suite")
    s.add_argument("action", choices=("run",))
    s.add_argument("--bank", default="default", help="'default', a JSON description, a JSON list, or a path")
    s.add_argument("--nmax", type=int, default=64)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--corpus")
    s.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    _report_arg(s)
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ResourceLimitError as e:
        print(f"mv: resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except ConsistencyError as e:
        print(f"mv: consistency failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    except MVError as e:
        print(f"mv: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"mv: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
