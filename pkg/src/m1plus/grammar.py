"""Text form of Fock vectors.

::

    element  := term (('+'|'-') term)*      (a leading '-' is allowed; '0' is the zero vector)
    term     := [rational '*'] ('h(' idx ')' ['^' nat])* CYCLIC
    idx      := '-'nat | '-'nat'/2'
    rational := int ['/' nat]

``CYCLIC`` is ``vac`` for elements of M(1) and ``u`` for module vectors.
Example: ``1/2*h(-1)^2 vac``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List

from .errors import ParseError
from .fock import FockVector, Monomial, Sector, collect

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<h>h\(\s*-\s*(?P<idx>\d+(?:/2)?)\s*\))"
                    r"|(?P<pow>\^\s*\d+)|(?P<op>[-+*])|(?P<word>[A-Za-z_]+))")


def _tokens(text: str) -> List[tuple]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at column {pos}: {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.group("num"):
            out.append(("num", Fraction(m.group("num"))))
        elif m.group("h"):
            idx = m.group("idx")
            if idx.endswith("/2"):
                d = int(idx[:-2])
                if d % 2 == 0:
                    raise ParseError(f"h(-{idx}) is not a half-integer index")
            else:
                d = 2 * int(idx)
            if d <= 0:
                raise ParseError("creation index must be positive")
            out.append(("h", d))
        elif m.group("pow"):
            out.append(("pow", int(m.group("pow")[1:].strip())))
        elif m.group("op"):
            out.append(("op", m.group("op")))
        else:
            out.append(("word", m.group("word")))
    return out


def parse_element(text: str, sector: Sector | None = None, cyclic: str = "vac") -> FockVector:
    """Parse ``text`` into a :class:`FockVector`.

    The sector is taken from ``sector`` when given, otherwise inferred from the
    parity of the indices (untwisted if there are none).
    """
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty element")
    if len(toks) == 1 and toks[0] == ("num", Fraction(0)):
        return FockVector({}, sector or Sector.UNTWISTED)
    terms: Dict[Monomial, Fraction] = {}
    pos = 0
    sign = 1
    first = True
    while pos < len(toks):
        kind, val = toks[pos]
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            pos += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms")
        first = False
        coeff = Fraction(1)
        if pos < len(toks) and toks[pos][0] == "num":
            coeff = toks[pos][1]
            pos += 1
            if pos >= len(toks) or toks[pos] != ("op", "*"):
                raise ParseError("expected '*' after coefficient")
            pos += 1
        parts: List[int] = []
        while pos < len(toks) and toks[pos][0] == "h":
            d = toks[pos][1]
            pos += 1
            e = 1
            if pos < len(toks) and toks[pos][0] == "pow":
                e = toks[pos][1]
                pos += 1
            parts.extend([d] * e)
        if pos >= len(toks) or toks[pos] != ("word", cyclic):
            raise ParseError(f"term must end with {cyclic!r}")
        pos += 1
        mono = tuple(sorted(parts, reverse=True))
        terms[mono] = terms.get(mono, Fraction(0)) + sign * coeff
        sign = 1
    if sector is None:
        odd = {d % 2 for m in terms for d in m}
        if len(odd) > 1:
            raise ParseError("mixed integer and half-integer indices")
        sector = Sector.TWISTED if odd == {1} else Sector.UNTWISTED
    try:
        return FockVector(terms, sector)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _format_index(idx) -> str:
    return f"-{idx}"


def format_monomial(mono: Monomial, cyclic: str = "vac") -> str:
    factors = "".join(
        f"h({_format_index(i)})" + (f"^{e}" if e > 1 else "") for i, e in collect(mono))
    return f"{factors} {cyclic}" if factors else cyclic


def sort_key(mono: Monomial):
    return (sum(mono), tuple(-d for d in mono))


def format_element(v: FockVector, cyclic: str = "vac") -> str:
    """Inverse of :func:`parse_element`; terms ordered by weight, then lexicographically."""
    if not v:
        return "0"
    chunks = []
    for mono, c in sorted(v.items(), key=lambda mc: sort_key(mc[0])):
        a = abs(c)
        body = format_monomial(mono, cyclic)
        text = body if a == 1 else f"{a}*{body}"
        if not chunks:
            chunks.append(f"-{text}" if c < 0 else text)
        else:
            chunks.append(f"{'-' if c < 0 else '+'} {text}")
    return " ".join(chunks)
