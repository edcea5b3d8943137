"""Unimodular symmetric forms: named building blocks, a shorthand parser, and
a coarse classifier."""

from __future__ import annotations

import json
import re

from . import lattice as la
from .errors import NotSymmetric, NotUnimodular, ParseError

# node 7 hangs off node 4 of the chain 0-1-2-3-4-5-6
E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]


def e8() -> la.Matrix:
    m = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in E8_EDGES:
        m[i][j] = m[j][i] = -1
    return la.to_matrix(m)


def hyperbolic() -> la.Matrix:
    return ((0, 1), (1, 0))


def diagonal(*entries: int) -> la.Matrix:
    return tuple(tuple(d if i == j else 0 for j in range(len(entries))) for i, d in enumerate(entries))


def negate(m: la.Matrix) -> la.Matrix:
    return la.scale(m, -1)


def form_sum(blocks) -> la.Matrix:
    return la.direct_sum(*blocks)


def is_even(m: la.Matrix) -> bool:
    return all(m[i][i] % 2 == 0 for i in range(len(m)))


def check_form(m: la.Matrix) -> la.Matrix:
    """Raise unless ``m`` is square, symmetric and unimodular."""
    if not la.is_symmetric(m):
        raise NotSymmetric("form matrix must be square and symmetric")
    if not la.is_unimodular(m):
        raise NotUnimodular(f"determinant {la.det(m)}")
    return m


_TERM = re.compile(r"^\s*(-?\d*)\s*(E8|H|<\s*-?1\s*>|\d+)\s*$", re.IGNORECASE)


def _block(name: str) -> la.Matrix:
    name = name.replace(" ", "").upper()
    if name == "E8":
        return e8()
    if name == "H":
        return hyperbolic()
    if name.startswith("<"):
        return diagonal(int(name[1:-1]))
    return diagonal(int(name))


def parse_form(text: str) -> la.Matrix:
    """Parse ``"3E8+2H"``-style shorthand or a JSON matrix.

    Terms are joined by ``+``; each is an optional multiplicity followed by
    ``E8``, ``H``, ``<1>``, ``<-1>``; a negative multiplicity such as
    ``-2E8`` means copies of ``-E8``.  A bare integer ``d`` denotes
    the rank-one form ``<d>``.  A multiplicity of zero contributes nothing.
    """
    text = text.strip()
    if text.startswith("["):
        try:
            rows = json.loads(text)
            return la.to_matrix(rows)
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise ParseError(f"bad matrix: {exc}") from None
    if not text:
        raise ParseError("empty form")
    blocks = []
    for term in text.split("+"):
        if not term.strip():
            raise ParseError(f"empty term in {text!r}")
        m = _TERM.match(term)
        if not m:
            raise ParseError(f"cannot read term {term.strip()!r}")
        mult, name = m.groups()
        if name.isdigit():
            # "12" is the integer 12, not 1 copy of <2>
            blocks.append(diagonal(int(mult + name)))
            continue
        count = int(mult) if mult not in ("", "-") else (-1 if mult else 1)
        block = _block(name)
        if count < 0:
            if name.upper() != "E8":
                raise ParseError(f"only E8 takes a negative multiplicity: {term.strip()!r}")
            block, count = negate(block), -count
        blocks.extend([block] * count)
    return form_sum(blocks)


def classify_form(m: la.Matrix):
    """Label ``m`` as ``mE8+nH`` or ``p<1>+q<-1>`` when the classification is forced.

    Indefinite unimodular forms are determined by rank, signature and parity.
    Definite forms are only labelled up to rank 8, where the even case is
    ``E8`` and the odd case is diagonal.  Returns ``None`` otherwise.
    """
    check_form(m)
    n = len(m)
    if n == 0:
        return "0"
    s = la.signature(m)
    even = is_even(m)
    definite = abs(s) == n
    if definite and (n > 8 or (even and n != 8)):
        return None
    if even:
        mult = s // 8
        hyper = (n - abs(s)) // 2
        parts = []
        if mult:
            parts.append({1: "E8", -1: "-E8"}.get(mult, f"{mult}E8"))
        if hyper:
            parts.append(f"{hyper if hyper > 1 else ''}H")
        return "+".join(parts)
    p = (n + s) // 2
    q = n - p
    parts = []
    if p:
        parts.append(f"{p if p > 1 else ''}<1>")
    if q:
        parts.append(f"{q if q > 1 else ''}<-1>")
    return "+".join(parts)
