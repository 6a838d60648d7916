"""The ideal text format and JSON certificates.

Ideal files are line-oriented:

    field QQ            (or: field GF 32003)
    vars x y z w
    x^2
    x*y + z*w

Generator expressions use +, -, *, ^ with integer coefficients; blank
lines and lines starting with '#' are ignored.  Printing canonicalizes
(sorted terms, cleared denominators over QQ) so parse ∘ print is the
identity on canonical forms.
"""

import json
import re
from fractions import Fraction

from quadgor.field import GF, QQ
from quadgor.poly import PolyRing
from quadgor.rings import RingPresentation

FORMAT_VERSION = "1"


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column else "")
        super().__init__(message + loc)
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|\(|\)))")


def _tokenize(text, lineno):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(
                f"unexpected character {stripped[0]!r}", lineno, pos + 1
            )
        if m.group(1):
            out.append(("int", int(m.group(1)), m.start() + 1))
        elif m.group(2):
            out.append(("name", m.group(2), m.start() + 1))
        else:
            out.append(("op", m.group(3), m.start() + 1))
        pos = m.end()
    return out


class _ExprParser:
    def __init__(self, ring, tokens, lineno):
        self.ring = ring
        self.tokens = tokens
        self.lineno = lineno
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.lineno)
        self.pos += 1
        return t

    def parse(self):
        e = self.expr()
        if self.peek() is not None:
            kind, val, col = self.peek()
            raise ParseError(f"trailing token {val!r}", self.lineno, col)
        return e

    def expr(self):
        t = self.peek()
        if t and t[0] == "op" and t[1] == "-":
            self.take()
            acc = -self.term()
        else:
            acc = self.term()
        while True:
            t = self.peek()
            if t is None or t[0] != "op" or t[1] not in "+-":
                return acc
            self.take()
            nxt = self.term()
            acc = acc + nxt if t[1] == "+" else acc - nxt

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t is None or t[0] != "op" or t[1] != "*":
                return acc
            self.take()
            acc = acc * self.factor()

    def factor(self):
        kind, val, col = self.take()
        if kind == "int":
            base = self.ring.one().scale(val)
        elif kind == "name":
            try:
                idx = self.ring.names.index(val)
            except ValueError:
                raise ParseError(f"unknown variable {val!r}", self.lineno, col)
            base = self.ring.var(idx)
        elif val == "(":
            base = self.expr()
            kind2, val2, col2 = self.take()
            if val2 != ")":
                raise ParseError("expected ')'", self.lineno, col2)
        elif val == "-":
            return -self.factor()
        else:
            raise ParseError(f"unexpected token {val!r}", self.lineno, col)
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            kind2, e, col2 = self.take()
            if kind2 != "int":
                raise ParseError("exponent must be an integer", self.lineno, col2)
            out = self.ring.one()
            for _ in range(e):
                out = out * base
            return out
        return base


def parse_ideal_text(text):
    """RingPresentation from the ideal text format."""
    field = None
    ring = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head = line.split()
        if head[0] == "field":
            if field is not None:
                raise ParseError("duplicate field line", lineno)
            if head[1:] == ["QQ"]:
                field = QQ
            elif len(head) == 3 and head[1] == "GF":
                try:
                    field = GF(int(head[2]))
                except ValueError as exc:
                    raise ParseError(str(exc), lineno)
            else:
                raise ParseError("field must be 'QQ' or 'GF <p>'", lineno)
            continue
        if head[0] == "vars":
            if field is None:
                raise ParseError("'vars' before 'field'", lineno)
            if ring is not None:
                raise ParseError("duplicate vars line", lineno)
            if len(head) < 2:
                raise ParseError("empty variable list", lineno)
            ring = PolyRing(field, head[1:])
            continue
        if ring is None:
            raise ParseError("generator before 'vars' header", lineno)
        p = _ExprParser(ring, _tokenize(line, lineno), lineno).parse()
        if p.is_zero():
            continue
        if p.homogeneous_degree() is None:
            raise ParseError(f"inhomogeneous generator: {line}", lineno)
        gens.append(p)
    if ring is None:
        raise ParseError("missing 'field'/'vars' header")
    return RingPresentation(ring, gens)


def parse_ideal_file(path):
    with open(path) as fh:
        return parse_ideal_text(fh.read())


def _coeff_str(c):
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise ValueError("clear denominators before printing")
        c = c.numerator
    return str(int(c))


def format_polynomial(p):
    """Canonical text form (descending degrevlex, integer coefficients)."""
    if p.is_zero():
        return "0"
    if p.ring.field.p == 0:
        # clear denominators so the grammar stays integer-only
        denoms = [c.denominator for c in p.terms.values()]
        lcm = 1
        for d in denoms:
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        if lcm != 1:
            p = p.scale(lcm)
    names = p.ring.names
    parts = []
    for m, c in p.sorted_terms():
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        c = int(c) if not isinstance(c, Fraction) else int(c)
        mono = "*".join(factors)
        if not factors:
            piece = str(c)
        elif c == 1:
            piece = mono
        elif c == -1:
            piece = f"-{mono}"
        else:
            piece = f"{c}*{mono}"
        if parts and not piece.startswith("-"):
            parts.append("+ " + piece)
        elif parts:
            parts.append("- " + piece[1:])
        else:
            parts.append(piece)
    return " ".join(parts)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def print_ideal_file(pres):
    """Serialize a RingPresentation to the ideal text format."""
    k = pres.field
    lines = []
    if k.p == 0:
        lines.append("field QQ")
    else:
        lines.append(f"field GF {k.p}")
    lines.append("vars " + " ".join(pres.ring.names))
    for g in pres.generators:
        lines.append(format_polynomial(g))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Certificates


class _CertEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, Fraction):
            if o.denominator == 1:
                return _safe_int(o.numerator)
            return f"{o.numerator}/{o.denominator}"
        if isinstance(o, set):
            return sorted(o)
        return super().default(o)


def _safe_int(n):
    # JSON numbers above 2^53 lose precision in common consumers
    return n if abs(n) < 2**53 else str(n)


def _sanitize(obj):
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return _safe_int(obj)
    return obj


def certificate_json(payload):
    """Stable JSON text for a certificate payload dict."""
    body = {"certificate_version": FORMAT_VERSION}
    body.update(_sanitize(payload))
    return json.dumps(body, indent=2, sort_keys=True, cls=_CertEncoder)


def betti_to_dict(bt):
    """BettiTable → {"i,j": β} plus the display rows."""
    return {
        "entries": {f"{i},{j}": b for (i, j), b in sorted(bt.data.items())},
        "regularity": bt.regularity(),
        "proj_dim": bt.proj_dim(),
        "display": bt.format(),
    }
