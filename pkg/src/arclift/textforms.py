"""Parsing and formatting for the deterministic text interfaces.

One expression grammar serves ring-element literals, polynomials in t, and
equation systems:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

The grammar is evaluated against a small algebra object, so the same
parser produces ring elements (names = ring generators), dense t-polynomial
coefficient lists (name ``t`` allowed), or integer-coefficient multivariate
polynomials (names = declared variables).  Division is restricted to
scalars; it extends the published grammar so rational literals like
``1/2`` are expressible.

All formatters order monomials by degree (then lexicographically) and
print canonical coefficient forms, so identical values serialize to
identical bytes.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .newton import PolyMap
from .polynomials import MultiPoly
from .rings import ArtinianLocalRing, IntegersMod, PrimeFieldRing, RationalRing, Ring
from .series import TruncatedSeries, format_series
from .weierstrass import LowPoly, MonicPoly, StrictFactorization, poly_mul

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
            break
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, algebra, source):
        self.tokens = tokens
        self.pos = 0
        self.algebra = algebra
        self.source = source

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.source!r}")

    def parse(self):
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.source!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = self.algebra.add(value, rhs) if val == "+" else self.algebra.sub(value, rhs)
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                value = self.algebra.mul(value, rhs) if val == "*" else self.algebra.div(value, rhs)
            else:
                return value

    def factor(self):
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return self.algebra.neg(self.factor())
        value = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, k = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be an integer in {self.source!r}")
            value = self.algebra.pow(value, k)
        return value

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.algebra.from_int(val)
        if kind == "name":
            return self.algebra.from_name(val)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError(f"unexpected token in {self.source!r}")


class _TPolyAlgebra:
    """Values are dense ascending coefficient lists over a ring ([] = 0)."""

    def __init__(self, ring, allow_t=True):
        self.ring = ring
        self.allow_t = allow_t
        self.gens = ring.generators()

    def _trim(self, c):
        while c and not c[-1]:
            c.pop()
        return c

    def from_int(self, k):
        return self._trim([self.ring.from_int(k)])

    def from_name(self, name):
        if name == "t" and self.allow_t:
            return [self.ring.zero, self.ring.one]
        if name in self.gens:
            return self._trim([self.gens[name]])
        raise ParseError(f"unknown name {name!r} over {self.ring}")

    def add(self, a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else self.ring.zero
            y = b[i] if i < len(b) else self.ring.zero
            out.append(x + y)
        return self._trim(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return [-c for c in a]

    def mul(self, a, b):
        return self._trim(poly_mul(a, b, self.ring))

    def div(self, a, b):
        if len(b) > 1:
            raise ParseError("division is only allowed by scalars")
        if not b:
            raise ParseError("division by zero")
        inv = self.ring.invert(b[0])
        return [c * inv for c in a]

    def pow(self, a, k):
        out = self.from_int(1)
        for _ in range(k):
            out = self.mul(out, a)
        return out


class _MapAlgebra:
    """Values are MultiPoly with int/Fraction coefficients."""

    def __init__(self, var_names):
        self.names = list(var_names)

    def from_int(self, k):
        return MultiPoly.constant(len(self.names), k)

    def from_name(self, name):
        try:
            i = self.names.index(name)
        except ValueError:
            raise ParseError(f"unknown variable {name!r}") from None
        return MultiPoly.variable(i, len(self.names), 1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        c = b.terms.get((0,) * b.nvars)
        if len(b.terms) > (1 if c else 0) or not c:
            raise ParseError("division is only allowed by scalar constants")
        return a.scale(Fraction(1, 1) / c)

    def pow(self, a, k):
        out = self.from_int(1)
        for _ in range(k):
            out = out * a
        return out


def _split_top(text, sep=","):
    """Split on a separator at bracket depth zero."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


# -- rings ---------------------------------------------------------------

def parse_ring(text: str) -> Ring:
    """Descriptors: ``Q``, ``Fp(5)``, ``Zmod(9)``, ``Artin(Fp(5); eps; 2)``."""
    text = text.strip()
    if text == "Q":
        return RationalRing()
    m = re.fullmatch(r"Fp\(\s*(\d+)\s*\)", text)
    if m:
        return PrimeFieldRing(int(m.group(1)))
    m = re.fullmatch(r"Zmod\(\s*(\d+)\s*\)", text)
    if m:
        return IntegersMod(int(m.group(1)))
    m = re.fullmatch(r"Artin\((.*)\)", text, re.DOTALL)
    if m:
        sections = _split_top(m.group(1), ";")
        if len(sections) != 3:
            raise ParseError("Artin descriptor needs base; generators; order")
        base = parse_ring(sections[0])
        names = [s.strip() for s in sections[1].split(",") if s.strip()]
        try:
            order = int(sections[2].strip())
        except ValueError:
            raise ParseError(f"bad truncation order {sections[2].strip()!r}") from None
        return ArtinianLocalRing(base, names, order)
    raise ParseError(f"unrecognized ring descriptor {text!r}")


def format_ring(ring: Ring) -> str:
    return repr(ring)


# -- elements and t-polynomials --------------------------------------------

def parse_t_poly(text: str, ring) -> list:
    """A polynomial in t with element coefficients, as an ascending list."""
    return _Parser(_tokenize(text), _TPolyAlgebra(ring), text).parse()


def parse_element(text: str, ring):
    coeffs = parse_t_poly(text, ring)
    if len(coeffs) > 1:
        raise ParseError(f"{text!r} is not a scalar (it mentions t)")
    return coeffs[0] if coeffs else ring.zero


_O_TAIL = re.compile(r"\+\s*O\(\s*t\^(\d+)\s*\)\s*$")


def parse_series(text: str, ring, default_precision=None) -> TruncatedSeries:
    """``[c0, c1, ...] + O(t^N)`` or a polynomial in t with an O-tail."""
    text = text.strip()
    m = _O_TAIL.search(text)
    precision = default_precision
    if m:
        precision = int(m.group(1))
        text = text[: m.start()].strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ParseError(f"unbalanced brackets in {text!r}")
        inner = text[1:-1].strip()
        coeffs = [parse_element(p, ring) for p in _split_top(inner)] if inner else []
        if precision is None:
            precision = len(coeffs)
        return TruncatedSeries(ring, coeffs, precision)
    coeffs = parse_t_poly(text, ring)
    if precision is None:
        raise ParseError(f"series {text!r} needs an O(t^N) tail or a default precision")
    return TruncatedSeries(ring, coeffs, precision)


def parse_monic(text: str, ring) -> MonicPoly:
    coeffs = parse_t_poly(text, ring)
    if not coeffs or coeffs[-1] != ring.one:
        raise ParseError(f"{text!r} is not monic")
    return MonicPoly(ring, coeffs[:-1])


def parse_low(text: str, ring, bound: int) -> LowPoly:
    coeffs = parse_t_poly(text, ring)
    if len(coeffs) > bound:
        raise ParseError(f"{text!r} has degree >= {bound}")
    return LowPoly(ring, bound, coeffs)


def format_t_poly(ring, coeffs, var="t") -> str:
    """Degree-descending polynomial text, canonical coefficients."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        cs = ring.format_element(c.value)
        composite = " + " in cs or " - " in cs or ("-" in cs[1:]) or "/" in cs or "*" in cs
        if k == 0:
            terms.append(f"({cs})" if composite else cs)
            continue
        tpow = var if k == 1 else f"{var}^{k}"
        if cs == "1":
            terms.append(tpow)
        elif cs == "-1":
            terms.append(f"-{tpow}")
        else:
            neg = cs.startswith("-") and not composite
            if neg:
                cs = cs[1:]
            if composite:
                cs = f"({cs})"
            term = f"{cs}*{tpow}"
            terms.append("-" + term if neg else term)
    if not terms:
        return "0"
    out = terms[0]
    for part in terms[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


def format_monic(q: MonicPoly) -> str:
    return format_t_poly(q.ring, q.coeff_list())


def format_low(a: LowPoly) -> str:
    return format_t_poly(a.ring, list(a.coeffs))


def format_element(ring, element) -> str:
    return ring.format_element(element.value)


# -- factorizations ---------------------------------------------------------

def format_factorization(f: StrictFactorization) -> str:
    return (
        f"{{u: {format_series(f.u)}, q: {format_monic(f.q)}, "
        f"n: {f.certificate_n}, N: {f.precision}}}"
    )


def parse_factorization(text: str, ring) -> StrictFactorization:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError("factorizations are brace-delimited")
    fields = {}
    for part in _split_top(text[1:-1]):
        key, _, value = part.partition(":")
        fields[key.strip()] = value.strip()
    missing = {"u", "q", "n", "N"} - set(fields)
    if missing:
        raise ParseError(f"factorization is missing {sorted(missing)}")
    return StrictFactorization(
        u=parse_series(fields["u"], ring),
        q=parse_monic(fields["q"], ring),
        certificate_n=int(fields["n"]),
        precision=int(fields["N"]),
    )


# -- polynomial maps ----------------------------------------------------------

def parse_poly_map(text: str) -> PolyMap:
    """``vars: [x1, y1]; split: 1; eqs: [y1^2 - x1^3]``"""
    fields = {}
    for part in _split_top(text, ";"):
        key, colon, value = part.partition(":")
        if not colon:
            raise ParseError(f"expected key: value in {part!r}")
        fields[key.strip()] = value.strip()
    missing = {"vars", "split", "eqs"} - set(fields)
    if missing:
        raise ParseError(f"map is missing {sorted(missing)}")

    def bracket_list(s):
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ParseError(f"expected a bracketed list, got {s!r}")
        inner = s[1:-1].strip()
        return _split_top(inner) if inner else []

    names = [v.strip() for v in bracket_list(fields["vars"])]
    algebra = _MapAlgebra(names)
    polys = [
        _Parser(_tokenize(src), algebra, src).parse() for src in bracket_list(fields["eqs"])
    ]
    try:
        split = int(fields["split"])
    except ValueError:
        raise ParseError(f"bad split {fields['split']!r}") from None
    return PolyMap(names, split, polys)


def _scalar_str(c) -> str:
    return str(c)


def format_poly_map(pm: PolyMap) -> str:
    eqs = ", ".join(p.format(pm.var_names, _scalar_str) for p in pm.polys)
    return f"vars: [{', '.join(pm.var_names)}]; split: {pm.split}; eqs: [{eqs}]"


def parse_arc(text: str, ring, default_precision=None):
    """Semicolon-separated series literals, one per coordinate."""
    return tuple(
        parse_series(part, ring, default_precision) for part in _split_top(text, ";")
    )
