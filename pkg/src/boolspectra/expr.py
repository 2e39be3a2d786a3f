"""Tiny parser for ANF-style expressions such as ``1 + x1x6 + x4(x5 + x6)``.

``+``, ``^`` and ``⊕`` are XOR; juxtaposition, ``*`` and ``&`` are AND.
Evaluation happens on whole truth tables, so any bracketed product works.
"""

from __future__ import annotations

import re

from .core import BooleanFunction, variables

_TOKEN = re.compile(r"\s*(?:(x)_?(\d+)|([01])|([+^⊕])|([*&·])|(\()|(\)))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks: list[tuple[str, str]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character {text[pos:pos + 1]!r} at {pos} in {text!r}")
        if m.group(1):
            toks.append(("var", m.group(2)))
        elif m.group(3):
            toks.append(("const", m.group(3)))
        elif m.group(4):
            toks.append(("xor", ""))
        elif m.group(5):
            toks.append(("and", ""))
        elif m.group(6):
            toks.append(("(", ""))
        else:
            toks.append((")", ""))
        pos = m.end()
    return toks


def parse_expression(text: str, n: int) -> BooleanFunction:
    toks = _tokenize(text)
    xs = variables(n)
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def factor() -> BooleanFunction:
        nonlocal pos
        if pos >= len(toks):
            raise ValueError(f"unexpected end of {text!r}")
        kind, val = toks[pos]
        pos += 1
        if kind == "var":
            j = int(val)
            if not 1 <= j <= n:
                raise ValueError(f"x{j} out of range for n={n}")
            return xs[j - 1]
        if kind == "const":
            return BooleanFunction.one(n) if val == "1" else BooleanFunction.zero(n)
        if kind == "(":
            out = expr()
            if peek() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            pos += 1
            return out
        raise ValueError(f"unexpected token {kind!r} in {text!r}")

    def term() -> BooleanFunction:
        nonlocal pos
        out = factor()
        while peek() in ("and", "var", "const", "("):
            if peek() == "and":
                pos += 1
            out = out & factor()
        return out

    def expr() -> BooleanFunction:
        nonlocal pos
        out = term()
        while peek() == "xor":
            pos += 1
            out = out ^ term()
        return out

    if not toks:
        raise ValueError("empty expression")
    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result
