"""Parser for coefficient and polynomial expressions over GF(2).

Grammar: sums of monomials joined by ``+``; a monomial is factors joined by
``*`` or whitespace; a factor is ``name``, ``name^e``, ``0`` or ``1``.
There is no subtraction in characteristic 2.
"""

from __future__ import annotations

import re

from .algebra import OVERFLOW, FiniteGradedAlgebra
from .charpoly import FiberedPolynomial, PolyRing

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<op>[+*^]))")


class ExprError(ValueError):
    def __init__(self, message: str, column: int):
        self.column = column
        super().__init__(f"{message} (column {column + 1})")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def parse_terms(text: str) -> list[tuple[int, dict[str, int]]]:
    """Return the expression as (constant, {name: exponent}) monomials."""
    toks = _tokens(text)
    if not toks:
        raise ExprError("empty expression", 0)
    terms = []
    k = 0

    def expect_factor():
        nonlocal k
        if k >= len(toks):
            raise ExprError("expected a factor", len(text))
        kind, val, col = toks[k]
        if kind == "int":
            if val not in ("0", "1"):
                raise ExprError(f"constant {val} is not in GF(2)", col)
            k += 1
            return int(val), None, 1
        if kind != "name":
            raise ExprError(f"expected a factor, got {val!r}", col)
        k += 1
        exp = 1
        if k < len(toks) and toks[k][1] == "^":
            k += 1
            if k >= len(toks) or toks[k][0] != "int":
                raise ExprError("expected an exponent after '^'", toks[k - 1][2])
            exp = int(toks[k][1])
            k += 1
        return 1, val, exp

    while True:
        const, powers = 1, {}
        while True:
            c, name, e = expect_factor()
            const &= c
            if name is not None:
                powers[name] = powers.get(name, 0) + e
            if k < len(toks) and toks[k][1] == "*":
                k += 1
                continue
            if k < len(toks) and toks[k][0] in ("name", "int"):
                continue
            break
        terms.append((const, powers))
        if k == len(toks):
            return terms
        kind, val, col = toks[k]
        if val != "+":
            raise ExprError(f"unexpected {val!r}", col)
        k += 1


def _monomial_value(alg: FiniteGradedAlgebra, powers: dict[str, int], text: str) -> int:
    term = alg.one
    for name, e in powers.items():
        try:
            g = alg.generator(name)
        except KeyError:
            raise ExprError(f"unknown generator {name!r}", text.find(name)) from None
        p = OVERFLOW if g is OVERFLOW else alg.power(g, e)
        term = OVERFLOW if p is OVERFLOW else alg.multiply(term, p)
        if term is OVERFLOW:
            raise ExprError(f"{name}^{e} exceeds the degree cap {alg.cap}", text.find(name))
    return term


def eval_base(alg: FiniteGradedAlgebra, text: str) -> int:
    """Evaluate an expression in a base algebra; unknown names and overflow raise."""
    acc = 0
    for const, powers in parse_terms(text):
        if const:
            acc ^= _monomial_value(alg, powers, text)
    return acc


def eval_poly(ring: PolyRing, text: str) -> FiberedPolynomial:
    """Evaluate an expression in H*(B)[x, y]; ``x`` and ``y`` are the polynomial variables."""
    out = ring.zero
    for const, powers in parse_terms(text):
        if not const:
            continue
        i = powers.pop("x", 0)
        j = powers.pop("y", 0)
        out = out + ring.monomial(i, j, _monomial_value(ring.base, powers, text))
    return out


__all__ = ["ExprError", "eval_base", "eval_poly", "parse_terms"]
