"""Textual syntax: one expression grammar for polynomials in T, rational
functions (num / den), and twisted polynomials (tau written as t), plus
the module description file and the d > 1 height table.

Grammar (whitespace ignored, explicit * required):

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' integer)?
    atom  := integer | 'T' | 'z' | 't' | '(' expr ')'

`z` is the extension generator (only defined when e > 1); `t` is the
twist.  Division requires both operands to be twist-free.  Parse errors
carry the character offset.
"""

from __future__ import annotations

import configparser
import csv
import io
from dataclasses import dataclass

from .errors import ParseError
from .fields import FunctionField, RationalFunc, function_field
from .fq import FqContext, fq_make
from .heights import HeightDatum
from .modules import DrinfeldModule
from .polys import Poly
from .twisted import TwistedPoly


class _Parser:
    """Recursive descent over a twisted-polynomial value domain."""

    def __init__(self, text: str, field: FunctionField, allow_tau: bool):
        self.text = text
        self.pos = 0
        self.field = field
        self.allow_tau = allow_tau

    # -- lexing helpers ------------------------------------------------------

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _take(self) -> str:
        ch = self._peek()
        self.pos += 1
        return ch

    def _integer(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    # -- productions ------------------------------------------------------------

    def parse(self) -> TwistedPoly:
        value = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError(
                f"unexpected {self.text[self.pos]!r}", self.pos
            )
        return value

    def _expr(self) -> TwistedPoly:
        value = self._term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                value = value + self._term()
            elif ch == "-":
                self.pos += 1
                value = value - self._term()
            else:
                return value

    def _term(self) -> TwistedPoly:
        value = self._unary()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                value = value * self._unary()
            elif ch == "/":
                at = self.pos
                self.pos += 1
                divisor = self._unary()
                if value.tau_degree > 0 or divisor.tau_degree > 0:
                    raise ParseError("division involving t is not defined", at)
                if divisor.is_zero:
                    raise ParseError("division by zero", at)
                num = value.d_part
                den = divisor.d_part
                value = TwistedPoly.constant(self.field, num / den)
            else:
                return value

    def _unary(self) -> TwistedPoly:
        if self._peek() == "-":
            self.pos += 1
            return -self._unary()
        return self._power()

    def _power(self) -> TwistedPoly:
        base = self._atom()
        if self._peek() == "^":
            at = self.pos
            self.pos += 1
            if self._peek() == "^":
                raise ParseError("malformed exponent", self.pos)
            exp = self._integer()
            try:
                return base**exp
            except ValueError as exc:
                raise ParseError(str(exc), at) from exc
        return base

    def _atom(self) -> TwistedPoly:
        ch = self._peek()
        at = self.pos
        if ch == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                raise ParseError("missing ')'", self.pos)
            self.pos += 1
            return value
        if ch.isdigit():
            return TwistedPoly.constant(self.field, self.field.from_int(self._integer()))
        if ch == "T":
            self.pos += 1
            return TwistedPoly.constant(self.field, self.field.t)
        if ch == "z":
            self.pos += 1
            fq = self.field.fq
            if fq.e == 1:
                raise ParseError("z is undefined over a prime field", at)
            return TwistedPoly.constant(self.field, self.field.from_base(fq.generator))
        if ch == "t":
            self.pos += 1
            if not self.allow_tau:
                raise ParseError("t (the twist) is not allowed here", at)
            return TwistedPoly.tau(self.field)
        if ch == "":
            raise ParseError("unexpected end of input", at)
        raise ParseError(f"unexpected {ch!r}", at)


def parse_twisted(text: str, field: FunctionField) -> TwistedPoly:
    """Twisted polynomial over F_q(T) from its display syntax."""
    return _Parser(text, field, allow_tau=True).parse()


def parse_rational(text: str, fq: FqContext) -> RationalFunc:
    """Rational function num / den over F_q."""
    value = _Parser(text, function_field(fq), allow_tau=False).parse()
    return value.d_part


def parse_poly(text: str, fq: FqContext) -> Poly:
    """Element of A = F_q[T]."""
    r = parse_rational(text, fq)
    if not r.is_poly:
        raise ParseError(f"{text!r} is not polynomial (denominator present)")
    return r.num


# -- module description files ---------------------------------------------------


@dataclass(frozen=True)
class ModuleFile:
    """Parsed module description: field data, rank, optional coefficients."""

    fq: FqContext
    rank: int
    d: int
    module: DrinfeldModule | None  # None when coefficients were omitted (d > 1)


def _strip_quotes(s: str) -> str:
    s = s.strip()
    if len(s) >= 2 and s[0] == s[-1] and s[0] in "\"'":
        return s[1:-1]
    return s


def parse_module_text(text: str) -> ModuleFile:
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"bad module file: {exc}") from exc
    if "field" not in cp or "module" not in cp:
        raise ParseError("module file needs [field] and [module] sections")
    try:
        p = int(_strip_quotes(cp["field"].get("p", "")))
        e = int(_strip_quotes(cp["field"].get("e", "1")))
        rank = int(_strip_quotes(cp["module"].get("rank", "")))
    except ValueError as exc:
        raise ParseError(f"bad integer in module file: {exc}") from exc
    d = 1
    if "extension" in cp:
        try:
            d = int(_strip_quotes(cp["extension"].get("d", "1")))
        except ValueError as exc:
            raise ParseError(f"bad extension degree: {exc}") from exc
    fq = fq_make(p, e)
    field = function_field(fq)
    coeffs = []
    missing = False
    for i in range(1, rank + 1):
        raw = cp["module"].get(f"g{i}")
        if raw is None:
            missing = True
            continue
        coeffs.append(parse_rational(_strip_quotes(raw), fq))
    if missing and coeffs:
        raise ParseError("either give every coefficient g1..gr or none")
    module = None
    if not missing:
        module = DrinfeldModule(field, rank, coeffs)
    return ModuleFile(fq, rank, d, module)


def load_module_file(path: str) -> ModuleFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_module_text(fh.read())


def module_file_text(module: DrinfeldModule, d: int = 1) -> str:
    """Round-trippable module description."""
    fq = module.fq
    lines = ["[field]", f"p = {fq.p}", f"e = {fq.e}", "", "[module]", f"rank = {module.rank}"]
    for i, g in enumerate(module.coeffs, start=1):
        lines.append(f'g{i} = "{g!r}"')
    if d > 1:
        lines += ["", "[extension]", f"d = {d}"]
    return "\n".join(lines) + "\n"


# -- height tables (d > 1) ---------------------------------------------------------


def parse_height_table(text: str, rank: int) -> list[HeightDatum]:
    """CSV rows: place_label, deg, n_nu, v(g1), ..., v(gr); header optional."""
    rows = []
    reader = csv.reader(io.StringIO(text))
    for idx, row in enumerate(reader):
        if not row or all(not cell.strip() for cell in row):
            continue
        cells = [c.strip() for c in row]
        if idx == 0 and not _is_int(cells[1] if len(cells) > 1 else ""):
            continue  # header line
        if len(cells) != 3 + rank:
            raise ParseError(
                f"height table row {idx + 1}: expected {3 + rank} columns, "
                f"got {len(cells)}"
            )
        try:
            rows.append(
                HeightDatum(
                    cells[0],
                    int(cells[1]),
                    int(cells[2]),
                    tuple(int(c) for c in cells[3:]),
                )
            )
        except ValueError as exc:
            raise ParseError(f"height table row {idx + 1}: {exc}") from exc
    if not rows:
        raise ParseError("height table has no data rows")
    return rows


def _is_int(s: str) -> bool:
    try:
        int(s)
        return True
    except ValueError:
        return False


def load_height_table(path: str, rank: int) -> list[HeightDatum]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_height_table(fh.read(), rank)
