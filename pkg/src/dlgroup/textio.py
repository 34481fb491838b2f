"""Text formats for ring elements, group elements, words, lamps and automorphisms.

Ring expressions follow

    expr   := ['-'] term (('+' | '-') term)*
    term   := [int '*'] factor ('*' factor)* | int
    factor := 't' ['^' int] | '(' 't' ('+' | '-') int ')' ['^' int]

Exponents may be negative only on variables that are inverted in the ring,
i.e. t and t + l_i.
"""

from __future__ import annotations

import json
import re

from .errors import ExprSyntaxError, UnknownVariable
from .params import GroupParams
from .ring import RingElem, const, decompose, monomial, one, zero

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2).strip():
            tokens.append(("sym", m.group(2), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _RingParser:
    def __init__(self, params: GroupParams, text: str):
        self.params = params
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ExprSyntaxError(message, self.text, tok[2])

    def expect(self, sym):
        tok = self.next()
        if tok[1] != sym:
            raise self.error(f"expected {sym!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "sym":
            sign = -1 if self.next()[1] == "-" else 1
        tok = self.next()
        if tok[0] != "int":
            raise self.error("expected an integer", tok)
        return sign * int(tok[1])

    def parse(self) -> RingElem:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        total = zero(self.params)
        sign = 1
        if self.peek()[1] == "-":
            self.next()
            sign = -1
        total = total + self.term() * sign
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "sym":
            sign = -1 if self.next()[1] == "-" else 1
            total = total + self.term() * sign
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return total

    def term(self) -> RingElem:
        value = one(self.params)
        if self.peek()[0] == "int":
            value = const(self.params, int(self.next()[1]))
            if self.peek()[1] != "*":
                return value
            self.next()
        value = value * self.factor()
        while self.peek()[1] == "*":
            self.next()
            value = value * self.factor()
        return value

    def exponent(self) -> int:
        if self.peek()[1] == "^":
            self.next()
            return self.signed_int()
        return 1

    def factor(self) -> RingElem:
        tok = self.next()
        p = self.params
        if tok[1] == "t":
            n = self.exponent()
            v = [0] * p.rank
            v[0] = n
            return monomial(p, v)
        if tok[1] != "(":
            raise self.error(f"expected 't' or '(', found {tok[1] or 'end of input'!r}", tok)
        self.expect("t")
        op = self.next()
        if op[1] not in "+-" or op[0] != "sym":
            raise self.error("expected '+' or '-' after t", op)
        num = self.next()
        if num[0] != "int":
            raise self.error("expected an integer", num)
        c = int(num[1]) * (1 if op[1] == "+" else -1)
        self.expect(")")
        n = self.exponent()
        c %= p.q
        if c in p.l:
            v = [0] * p.rank
            v[p.l.index(c)] = n
            return monomial(p, v)
        if n < 0:
            raise UnknownVariable(f"(t+{c}) is not invertible in the ring", self.text, tok[2])
        return RingElem.from_parts(p, (c, 1)) ** n


def parse_ring_expr(params: GroupParams, text: str) -> RingElem:
    return _RingParser(params, text).parse()


def _var(params: GroupParams, tree: int) -> str:
    c = params.l[tree - 1]
    return "t" if c == 0 else f"(t+{c})"


def _term(c: int, var: str, n: int) -> str:
    if n == 0:
        return str(c)
    body = var if n == 1 else f"{var}^{n}"
    return body if c == 1 else f"{c}*{body}"


def _part_terms(params: GroupParams, part) -> list[str]:
    if part.tree == params.d:
        return [_term(c, "t", -e) for e, c in sorted(part.terms, key=lambda ec: -ec[0])]
    return [_term(c, _var(params, part.tree), e) for e, c in part.terms]


def format_ring(Q: RingElem) -> str:
    """Sum of the decomposition parts, each lowest degree first; '0' for zero."""
    pieces = []
    for part in decompose(Q):
        pieces.extend(_part_terms(Q.params, part))
    return " + ".join(pieces) if pieces else "0"


def format_decomposition(Q: RingElem) -> str:
    out = []
    for part in decompose(Q):
        label = "Pd" if part.tree == Q.params.d else f"P{part.tree}"
        out.append(f"{label}: {' + '.join(_part_terms(Q.params, part)) or '0'}")
    return " ; ".join(out)


def _format_vector(v) -> str:
    return "[" + ",".join(str(a) for a in v) + "]"


def format_element(g) -> str:
    return f"{_format_vector(g.x)} ; {format_ring(g.Q)}"


def parse_vector(text: str, length: int | None = None) -> tuple:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ExprSyntaxError(f"expected a bracketed vector, got {text!r}")
    body = text[1:-1].strip()
    try:
        vec = tuple(int(a) for a in body.split(",")) if body else ()
    except ValueError:
        raise ExprSyntaxError(f"bad integer vector {text!r}") from None
    if length is not None and len(vec) != length:
        raise ExprSyntaxError(f"vector {text!r} should have {length} entries")
    return vec


def parse_element(params: GroupParams, text: str):
    from .group import GroupElement
    if ";" not in text:
        raise ExprSyntaxError("element must look like '[k_1,...] ; <expr>'", text)
    head, expr = text.split(";", 1)
    return GroupElement(parse_vector(head, params.rank), parse_ring_expr(params, expr.strip()))


_GEN = re.compile(r"^\s*([AB])\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)\s*$")


def parse_generator(params: GroupParams, text: str):
    from .group import Generator
    m = _GEN.match(text)
    if not m:
        raise ExprSyntaxError(f"cannot parse generator {text!r}")
    kind, a, b, c = m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4))
    gen = Generator.A(a, b, c) if kind == "A" else Generator.B(a, b, c)
    gen.validate(params)
    return gen


def parse_word(params: GroupParams, text: str) -> list:
    """Generators separated by newlines, spaces or commas between closing parentheses."""
    items = re.findall(r"[AB]\([^)]*\)", text)
    leftover = re.sub(r"[AB]\([^)]*\)", "", text)
    if leftover.strip(" \t\r\n,;*."):
        raise ExprSyntaxError(f"unrecognised text in word: {leftover.strip()!r}")
    return [parse_generator(params, item) for item in items]


def format_lamp_config(config) -> str:
    lamps = " ".join(f"({','.join(map(str, v))})={c}" for v, c in config.lamps) or "none"
    return f"{lamps} ; x={_format_vector(config.x)}"


_LAMP = re.compile(r"\(([^)]*)\)=(\d+)")


def parse_lamp_config(params: GroupParams, text: str):
    from .lampstand import LampConfig
    if ";" not in text:
        raise ExprSyntaxError("lamp configuration must end with '; x=[...]'", text)
    body, tail = text.rsplit(";", 1)
    tail = tail.strip()
    if not tail.startswith("x="):
        raise ExprSyntaxError("expected 'x=[...]'", text)
    x = parse_vector(tail[2:], params.rank)
    lamps = {}
    for m in _LAMP.finditer(body):
        v = tuple(int(a) for a in m.group(1).split(","))
        if len(v) != params.rank:
            raise ExprSyntaxError(f"lamp position {v} has wrong length", text)
        c = int(m.group(2)) % params.q
        if c:
            lamps[v] = c
    return LampConfig(tuple(sorted(lamps.items())), x)


def format_matrix(beta) -> str:
    return "[" + ",".join(_format_vector(row) for row in beta) + "]"


def parse_matrix(text: str, size: int | None = None) -> tuple:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprSyntaxError(f"bad matrix: {exc.msg}", text, exc.pos) from None
    if (not isinstance(rows, list) or not rows
            or not all(isinstance(r, list) and len(r) == len(rows) for r in rows)
            or not all(isinstance(a, int) for r in rows for a in r)):
        raise ExprSyntaxError("matrix must be a square list of integer rows", text)
    if size is not None and len(rows) != size:
        raise ExprSyntaxError(f"matrix must be {size}x{size}", text)
    return tuple(tuple(r) for r in rows)


def format_autrep(phi) -> str:
    delta = ";".join(format_ring(v) for v in phi.delta.values)
    return f"delta=[{delta}] R={format_ring(phi.R)} beta={format_matrix(phi.beta)}"


_AUT = re.compile(r"^\s*delta=\[(?P<delta>[^\]]*)\]\s+R=(?P<R>.*?)\s+beta=(?P<beta>\[.*\])\s*$", re.S)


def parse_autrep(params: GroupParams, text: str):
    from .aut import AutRep, Derivation
    m = _AUT.match(text)
    if not m:
        raise ExprSyntaxError("automorphism must look like 'delta=[e;...] R=<expr> beta=[[...]]'", text)
    values = [parse_ring_expr(params, e.strip()) for e in m.group("delta").split(";")]
    beta = parse_matrix(m.group("beta"), params.rank)
    return AutRep(Derivation(tuple(values)), parse_ring_expr(params, m.group("R").strip()), beta)
