"""Parsing of algebra descriptions, element literals, ideal literals and function carriers."""
from __future__ import annotations

import json
import os
import re
from typing import Any, Union

from .core import FiniteMvAlgebra, mk_chain, mk_product
from .errors import InvalidParameterError, MalformedInputError, ResourceLimitError
from .gamma import GammaIdeal, LexGammaAlgebra
from .ideals import IdealFin, full_ideal, generate, zero_ideal
from .null import FiniteFunctionAlgebra
from .terms import PL1, parse, to_pl1

Algebra = Union[FiniteMvAlgebra, LexGammaAlgebra]

FINITE_CARRIER_BOUND = 81


def load_json(text: str) -> Any:
    """Accept inline JSON or a path to a JSON file."""
    if not text.lstrip().startswith(("{", "[")) and os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"invalid JSON: {e}") from None


def algebra_from_spec(spec: Any) -> Algebra:
    if isinstance(spec, str):
        spec = load_json(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise MalformedInputError(f"algebra description needs a 'kind': {spec!r}")
    kind = spec["kind"]
    if kind == "chain":
        n = spec.get("n")
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvalidParameterError(f"chain needs an integer n, got {n!r}")
        return mk_chain(n)
    if kind == "product":
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise MalformedInputError("product needs a non-empty 'factors' list")
        parts = [algebra_from_spec(f) for f in factors]
        if any(not isinstance(p, FiniteMvAlgebra) for p in parts):
            raise MalformedInputError("product factors must be finite algebras")
        out = parts[0]
        for p in parts[1:]:
            out = mk_product(out, p)
        return out
    if kind == "table":
        try:
            oplus = tuple(tuple(r) for r in spec["oplus"])
            neg = tuple(spec["neg"])
        except (KeyError, TypeError):
            raise MalformedInputError("table needs 'oplus' (m×m) and 'neg' (length m)") from None
        size = spec.get("size", len(neg))
        labels = spec.get("labels")
        return FiniteMvAlgebra(size, oplus, neg, spec.get("zero", 0),
                               tuple(labels) if labels is not None else None,
                               name=spec.get("name", "table"))
    if kind == "lex_gamma":
        return LexGammaAlgebra(spec.get("k"))
    raise MalformedInputError(f"unknown algebra kind {kind!r}")


def element_from_literal(A: Algebra, literal: str):
    return A.element(literal)


_GEN = re.compile(r"gen:\[(.*)\]", re.S)


def _split_top(text: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    if "".join(cur).strip():
        out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


def ideal_from_literal(A: Algebra, literal: str):
    text = literal.strip()
    if isinstance(A, LexGammaAlgebra):
        try:
            return GammaIdeal(text)
        except ValueError:
            raise MalformedInputError(f"Γ ideals are zero, rad, full; got {literal!r}") from None
    if text == "zero":
        return zero_ideal(A)
    if text == "full":
        return full_ideal(A)
    if text == "rad":
        from .ideals import rad_of

        return rad_of(A, zero_ideal(A))
    m = _GEN.fullmatch(text)
    if m:
        return generate(A, [A.element(e) for e in _split_top(m.group(1))])
    raise MalformedInputError(f"bad ideal literal {literal!r}; expected zero, full, rad or gen:[...]")


def principal_from_literal(literal: str) -> tuple[str, PL1]:
    text = literal.strip()
    if not text.startswith("principal:"):
        raise MalformedInputError(f"F[1] ideals are written principal:<term>, got {literal!r}")
    body = text[len("principal:"):]
    body = body.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    gens = _split_top(body)
    if not gens:
        raise MalformedInputError("principal ideal needs a generator term")
    if len(gens) == 1:
        return gens[0], to_pl1(parse(gens[0]))
    from .null import principal_generator

    return " + ".join(f"({g})" for g in gens), principal_generator([parse(g) for g in gens])


def finite_carrier_from_spec(text: str) -> FiniteFunctionAlgebra:
    """'{"points":3,"chain":2}' optionally with "subalgebra":"constants"."""
    spec = load_json(text)
    if not isinstance(spec, dict):
        raise MalformedInputError("finite carrier needs a JSON object")
    points, chain = spec.get("points"), spec.get("chain", 1)
    for name, v in (("points", points), ("chain", chain)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InvalidParameterError(f"finite carrier {name} must be a positive integer, got {v!r}")
    if (chain + 1) ** points > FINITE_CARRIER_BOUND:
        raise ResourceLimitError("finite carrier", FINITE_CARRIER_BOUND, (chain + 1) ** points)
    sub = spec.get("subalgebra", "full")
    if sub == "full":
        return FiniteFunctionAlgebra.full(points, chain)
    if sub == "constants":
        return FiniteFunctionAlgebra.constants(points, chain)
    raise MalformedInputError(f"unknown subalgebra {sub!r}; expected full or constants")


def describe_ideal(I) -> str:
    if isinstance(I, GammaIdeal):
        return I.value
    if isinstance(I, IdealFin):
        return I.describe()
    return str(I)
