"""Quaternion literals: parsing and canonical rendering.

Grammar (whitespace allowed between tokens)::

    quat  := [sign] term { sign term }
    term  := coeff [unit] | unit
    unit  := "i" | "j" | "k"
    coeff := decimal | integer | integer "/" integer

Decimals may carry an exponent (``1.5e-07``) so that 17-digit float
renderings parse back.  Each unit, and the real part, may appear once.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .scalar import Backend, Quaternion

_NUMBER = re.compile(r"(\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_INTEGER = re.compile(r"\d+")
_SLOT = {"": 0, "i": 1, "j": 2, "k": 3}


def _skip_ws(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def parse_quat(text: str, backend: Backend = Backend.EXACT) -> Quaternion:
    if not isinstance(text, str):
        raise ParseError(f"expected a string literal, got {type(text).__name__}")
    coeffs = [None, None, None, None]
    pos = _skip_ws(text, 0)
    if pos == len(text):
        raise ParseError("empty quaternion literal", pos)
    first = True
    while pos < len(text):
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = _skip_ws(text, pos + 1)
        elif not first:
            raise ParseError(f"expected '+' or '-', found {text[pos]!r}", pos)
        term_start = pos
        value = None
        m = _NUMBER.match(text, pos)
        if m:
            pos = m.end()
            lexeme = m.group(0)
            probe = _skip_ws(text, pos)
            if probe < len(text) and text[probe] == "/":
                if not _INTEGER.fullmatch(lexeme):
                    raise ParseError("fraction numerator must be an integer", term_start)
                probe = _skip_ws(text, probe + 1)
                d = _INTEGER.match(text, probe)
                if not d:
                    raise ParseError("expected integer denominator", probe)
                if int(d.group(0)) == 0:
                    raise ParseError("zero denominator", probe)
                value = Fraction(int(lexeme), int(d.group(0)))
                pos = d.end()
            else:
                value = Fraction(lexeme)
            pos = _skip_ws(text, pos)
        unit = ""
        if pos < len(text) and text[pos] in "ijk":
            unit = text[pos]
            pos += 1
        elif value is None:
            found = repr(text[pos]) if pos < len(text) else "end of input"
            raise ParseError(f"expected a number or unit, found {found}", pos)
        if value is None:
            value = Fraction(1)
        slot = _SLOT[unit]
        if coeffs[slot] is not None:
            what = f"unit {unit!r}" if unit else "real part"
            raise ParseError(f"duplicate {what}", term_start)
        coeffs[slot] = sign * value
        pos = _skip_ws(text, pos)
        first = False
    parts = [c if c is not None else Fraction(0) for c in coeffs]
    if backend is Backend.FLOAT:
        return Quaternion(*(float(c) for c in parts))
    return Quaternion(*parts)


def render_scalar(c) -> str:
    if isinstance(c, float):
        return format(c, ".17g")
    return str(Fraction(c))


def render_quat(q: Quaternion) -> str:
    """Canonical text of ``q``: exact coefficients as ``p/q``, floats to 17 significant digits."""
    out = []
    for c, unit in zip(q.components, ("", "i", "j", "k")):
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        body = render_scalar(mag)
        if unit and mag == 1:
            body = ""
        term = body + unit
        if not out:
            out.append("-" + term if neg else term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out) if out else "0"


def render_vector(v) -> str:
    return ", ".join(render_quat(q) for q in v)


def parse_vector(items, backend: Backend = Backend.EXACT):
    if isinstance(items, str):
        items = [s for s in items.split(",")]
    return tuple(parse_quat(s, backend) for s in items)
