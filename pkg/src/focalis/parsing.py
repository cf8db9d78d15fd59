"""Reader and writer for the PLANECONGRUENCE v1 text format.

Layout: a header line `PLANECONGRUENCE v1`, then three lines with five
comma-separated polynomial expressions in u and v (one line per frame
row).  `#` starts a comment, blank lines are skipped, whitespace is
otherwise insignificant.  Expressions use `+ - * ^` with parentheses and
rational literals like `3`, `-2`, `5/7`.

The writer emits text the reader accepts, with terms in graded-lex order.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import CongruenceSyntaxError
from .poly import MPoly

HEADER = "PLANECONGRUENCE v1"
FRAME_VARS = ("u", "v")
_MAX_EXPONENT = 9999


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize_line(text: str, line_no: int):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("num", text[i:j], line_no, col))
            i = j
            continue
        if ch in ("u", "v"):
            if i + 1 < n and (text[i + 1].isalnum() or text[i + 1] == "_"):
                raise CongruenceSyntaxError(
                    f"unknown name starting at {text[i:i + 2]!r}", line_no, col
                )
            toks.append(_Token("name", ch, line_no, col))
            i += 1
            continue
        if ch in "+-*^(),/":
            toks.append(_Token(ch, ch, line_no, col))
            i += 1
            continue
        raise CongruenceSyntaxError(f"unexpected character {ch!r}", line_no, col)
    return toks


class _Parser:
    def __init__(self, tokens, line_no):
        self.toks = tokens
        self.pos = 0
        self.line = line_no

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        t = self.peek()
        if t is None:
            raise CongruenceSyntaxError(
                f"unexpected end of line (expected {kind or 'more input'})",
                self.line,
                (self.toks[-1].col + len(self.toks[-1].text)) if self.toks else 1,
            )
        if kind is not None and t.kind != kind:
            raise CongruenceSyntaxError(
                f"expected {kind!r}, found {t.text!r}", t.line, t.col
            )
        self.pos += 1
        return t

    def parse_entry_list(self):
        entries = [self.parse_expr()]
        while self.peek() is not None and self.peek().kind == ",":
            self.take(",")
            entries.append(self.parse_expr())
        t = self.peek()
        if t is not None:
            raise CongruenceSyntaxError(
                f"unexpected trailing {t.text!r}", t.line, t.col
            )
        return entries

    def parse_expr(self) -> MPoly:
        acc = self.parse_term()
        while True:
            t = self.peek()
            if t is None or t.kind not in ("+", "-"):
                return acc
            self.take()
            rhs = self.parse_term()
            acc = acc + rhs if t.kind == "+" else acc - rhs

    def parse_term(self) -> MPoly:
        acc = self.parse_factor()
        while self.peek() is not None and self.peek().kind == "*":
            self.take("*")
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> MPoly:
        base = self.parse_base()
        if self.peek() is not None and self.peek().kind == "^":
            self.take("^")
            t = self.take("num")
            e = int(t.text)
            if e > _MAX_EXPONENT:
                raise CongruenceSyntaxError("exponent too large", t.line, t.col)
            return base**e
        return base

    def parse_base(self) -> MPoly:
        t = self.peek()
        if t is None:
            raise CongruenceSyntaxError(
                "unexpected end of line (expected an expression)", self.line, 1
            )
        if t.kind == "-":
            self.take("-")
            return -self.parse_base_after_sign()
        return self.parse_base_after_sign()

    def parse_base_after_sign(self) -> MPoly:
        t = self.take()
        if t.kind == "num":
            num = int(t.text)
            if self.peek() is not None and self.peek().kind == "/":
                self.take("/")
                d = self.take("num")
                den = int(d.text)
                if den == 0:
                    raise CongruenceSyntaxError(
                        "zero denominator in rational literal", d.line, d.col
                    )
                return MPoly.const(FRAME_VARS, Fraction(num, den))
            return MPoly.const(FRAME_VARS, Fraction(num))
        if t.kind == "name":
            return MPoly.variable(FRAME_VARS, t.text)
        if t.kind == "(":
            inner = self.parse_expr()
            self.take(")")
            return inner
        raise CongruenceSyntaxError(
            f"expected a number, u, v, or '(', found {t.text!r}", t.line, t.col
        )


def parse_text(text: str):
    """Parse PLANECONGRUENCE v1 text into a 3x5 matrix of MPoly in (u, v)."""
    if text.startswith("﻿"):
        text = text[1:]
    rows = []
    header_seen = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if not header_seen:
            if body.strip() != HEADER:
                raise CongruenceSyntaxError(
                    f"expected header {HEADER!r}", line_no, 1
                )
            header_seen = True
            continue
        if len(rows) == 3:
            raise CongruenceSyntaxError(
                "unexpected content after the three frame rows", line_no, 1
            )
        toks = _tokenize_line(body, line_no)
        parser = _Parser(toks, line_no)
        entries = parser.parse_entry_list()
        if len(entries) != 5:
            raise CongruenceSyntaxError(
                f"expected 5 comma-separated entries, found {len(entries)}",
                line_no,
                1,
            )
        rows.append(entries)
    if not header_seen:
        raise CongruenceSyntaxError(f"missing header {HEADER!r}", 1, 1)
    if len(rows) != 3:
        raise CongruenceSyntaxError(
            f"expected 3 frame rows, found {len(rows)}", 1, 1
        )
    return rows


def parse_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_text(fh.read())


def _poly_entry_text(p: MPoly) -> str:
    """Render one polynomial in the input grammar (round-trips via parse)."""
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    parts = []
    for e, c in items:
        factors = []
        for name, k in zip(p.vars, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        mono = "*".join(factors)
        first = not parts
        mag = c if first else abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        elif first and mag == -1:
            body = f"-1*{mono}"
        else:
            body = f"{mag}*{mono}"
        if first:
            parts.append(body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def congruence_to_text(rows) -> str:
    """Write a 3x5 frame matrix back out in PLANECONGRUENCE v1 format."""
    lines = [HEADER]
    for row in rows:
        lines.append(", ".join(_poly_entry_text(p) for p in row))
    return "\n".join(lines) + "\n"
