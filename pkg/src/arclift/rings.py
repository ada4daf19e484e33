"""Exact coefficient rings: the closed family of "test rings".

Four families are supported, each with canonical element representations so
that equality is plain representational equality:

* ``PrimeFieldRing(p)``     -- F_p, residues stored in ``[0, p)``;
* ``RationalRing()``        -- Q, reduced ``fractions.Fraction``;
* ``IntegersMod(n)``        -- Z/n, residues in ``[0, n)``; local iff n = p^e;
* ``ArtinianLocalRing(base, names, e)`` -- base[s_1..s_m] truncated by
  "total degree >= e is zero", so the maximal ideal (s_1..s_m) satisfies
  m^e = 0.  Elements are finite maps from exponent multi-indices to nonzero
  base coefficients.

Every ring is immutable and every operation is a pure function, so values
can be shared freely across threads.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InvalidDescriptor, MixedRings, NonLocalRing, NotAUnit


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(n: int):
    """Return (p, e) with n = p^e and p prime, or None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            return (n, 1)
        if n % p:
            continue
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        return (p, e) if m == 1 else None
    return None


class RingElement:
    """Thin immutable handle: a ring reference plus a canonical payload."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring.payload_from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.payload_add(self.value, v))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, self.ring.payload_neg(self.value))

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.payload_add(self.value, self.ring.payload_neg(v)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.payload_mul(self.value, v))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self.ring.payload_eq(self.value, v)

    def __bool__(self):
        return not self.ring.payload_is_zero(self.value)

    def __hash__(self):
        if isinstance(self.value, dict):
            return hash((self.ring, tuple(sorted(self.value.items()))))
        return hash((self.ring, self.value))

    def __repr__(self):
        return self.ring.format_element(self.value)


class Ring:
    """Common interface; subclasses implement the payload-level arithmetic."""

    is_field = False

    # -- payload layer (fast path, no wrappers) -------------------------
    def payload_from_int(self, k: int):
        raise NotImplementedError

    def payload_add(self, a, b):
        raise NotImplementedError

    def payload_neg(self, a):
        raise NotImplementedError

    def payload_mul(self, a, b):
        raise NotImplementedError

    def payload_is_zero(self, a) -> bool:
        raise NotImplementedError

    def payload_eq(self, a, b) -> bool:
        """Representational equality; overridden where payloads carry a
        presentation level that must be aligned first."""
        return a == b

    # -- element layer ---------------------------------------------------
    def element(self, value) -> RingElement:
        return RingElement(self, value)

    def from_int(self, k: int) -> RingElement:
        return RingElement(self, self.payload_from_int(k))

    def from_fraction(self, q: Fraction) -> RingElement:
        num = self.from_int(q.numerator)
        if q.denominator == 1:
            return num
        return num * self.invert(self.from_int(q.denominator))

    @property
    def zero(self) -> RingElement:
        return self.from_int(0)

    @property
    def one(self) -> RingElement:
        return self.from_int(1)

    def generators(self) -> dict:
        return {}

    # -- units and locality ----------------------------------------------
    def is_unit(self, a: RingElement) -> bool:
        raise NotImplementedError

    def invert(self, a: RingElement) -> RingElement:
        raise NotImplementedError

    @property
    def is_local(self) -> bool:
        raise NotImplementedError

    def nilpotency_exponent(self) -> int:
        """Smallest e with m^e = 0 for the maximal ideal m of a local ring."""
        raise NotImplementedError

    def residue_field(self) -> "Ring":
        raise NotImplementedError

    def residue(self, a: RingElement) -> RingElement:
        """Image of a in R/m, as an element of ``residue_field()``."""
        raise NotImplementedError

    def is_nilpotent(self, a: RingElement) -> bool:
        if not self.is_local:
            raise NonLocalRing(f"{self} is not local")
        return not self.residue(a)

    # -- sampling for randomized tests ------------------------------------
    def random_element(self, rng) -> RingElement:
        raise NotImplementedError

    def random_unit(self, rng) -> RingElement:
        for _ in range(1000):
            a = self.random_element(rng)
            if self.is_unit(a):
                return a
        raise RuntimeError("failed to sample a unit")

    def random_nilpotent(self, rng) -> RingElement:
        if self.nilpotency_exponent() == 1:
            return self.zero  # the maximal ideal is zero
        for _ in range(1000):
            a = self.random_element(rng)
            if self.is_nilpotent(a):
                return a
        raise RuntimeError("failed to sample a nilpotent")

    def format_element(self, value) -> str:
        raise NotImplementedError


class PrimeFieldRing(Ring):
    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise InvalidDescriptor(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeFieldRing) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"Fp({self.p})"

    def payload_from_int(self, k):
        return k % self.p

    def payload_add(self, a, b):
        return (a + b) % self.p

    def payload_neg(self, a):
        return (-a) % self.p

    def payload_mul(self, a, b):
        return (a * b) % self.p

    def payload_is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a.value != 0

    def invert(self, a):
        if a.value == 0:
            raise NotAUnit("0 is not invertible")
        return self.element(pow(a.value, -1, self.p))

    @property
    def is_local(self):
        return True

    def nilpotency_exponent(self):
        return 1

    def residue_field(self):
        return self

    def residue(self, a):
        return a

    def elements(self):
        return [self.element(k) for k in range(self.p)]

    def random_element(self, rng):
        return self.element(rng.randrange(self.p))

    def format_element(self, value):
        return str(value)


class RationalRing(Ring):
    is_field = True

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def payload_from_int(self, k):
        return Fraction(k)

    def payload_add(self, a, b):
        return a + b

    def payload_neg(self, a):
        return -a

    def payload_mul(self, a, b):
        return a * b

    def payload_is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a.value != 0

    def invert(self, a):
        if a.value == 0:
            raise NotAUnit("0 is not invertible")
        return self.element(1 / a.value)

    @property
    def is_local(self):
        return True

    def nilpotency_exponent(self):
        return 1

    def residue_field(self):
        return self

    def residue(self, a):
        return a

    def random_element(self, rng):
        return self.element(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))

    def format_element(self, value):
        return str(value)


class IntegersMod(Ring):
    """Z/n.  Arithmetic for every n >= 2; residue theory only for n = p^e."""

    def __init__(self, n: int):
        if n < 2:
            raise InvalidDescriptor("modulus must be >= 2")
        self.n = n
        self._pe = prime_power(n)

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.n == self.n

    def __hash__(self):
        return hash(("Zmod", self.n))

    def __repr__(self):
        return f"Zmod({self.n})"

    def payload_from_int(self, k):
        return k % self.n

    def payload_add(self, a, b):
        return (a + b) % self.n

    def payload_neg(self, a):
        return (-a) % self.n

    def payload_mul(self, a, b):
        return (a * b) % self.n

    def payload_is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return math.gcd(a.value, self.n) == 1

    def invert(self, a):
        try:
            return self.element(pow(a.value, -1, self.n))
        except ValueError:
            raise NotAUnit(f"gcd({a.value}, {self.n}) != 1") from None

    @property
    def is_local(self):
        return self._pe is not None

    def nilpotency_exponent(self):
        if self._pe is None:
            raise NonLocalRing(f"{self} is not local")
        return self._pe[1]

    def residue_field(self):
        if self._pe is None:
            raise NonLocalRing(f"{self} is not local")
        return PrimeFieldRing(self._pe[0])

    def residue(self, a):
        return self.residue_field().from_int(a.value)

    def elements(self):
        return [self.element(k) for k in range(self.n)]

    def random_element(self, rng):
        return self.element(rng.randrange(self.n))

    def random_nilpotent(self, rng):
        p, e = self._pe if self._pe else (None, None)
        if p is None:
            raise NonLocalRing(f"{self} is not local")
        if e == 1:
            return self.zero
        return self.element(p * rng.randrange(self.n // p))

    def format_element(self, value):
        return str(value)


def _monomial_key(exps):
    return (sum(exps), exps)


class ArtinianLocalRing(Ring):
    """base[s_1..s_m] / (all monomials of total degree >= e).

    Payloads are dicts mapping exponent tuples (total degree < e) to nonzero
    base payloads.  Multiplication convolves exponents and discards any
    monomial of total degree >= e, which is exactly m^e = 0.
    """

    def __init__(self, base: Ring, names, truncation_order: int):
        if not isinstance(base, (PrimeFieldRing, RationalRing)):
            raise InvalidDescriptor("base must be a prime field or Q")
        names = tuple(names)
        if not names:
            raise InvalidDescriptor("at least one generator required")
        if len(set(names)) != len(names):
            raise InvalidDescriptor("generator names must be distinct")
        if truncation_order < 1:
            raise InvalidDescriptor("truncation order must be >= 1")
        self.base = base
        self.names = names
        self.e = truncation_order
        self.m = len(names)

    def __eq__(self, other):
        return (
            isinstance(other, ArtinianLocalRing)
            and other.base == self.base
            and other.names == self.names
            and other.e == self.e
        )

    def __hash__(self):
        return hash(("Artin", self.base, self.names, self.e))

    def __repr__(self):
        return f"Artin({self.base}; {','.join(self.names)}; {self.e})"

    def payload_from_int(self, k):
        c = self.base.payload_from_int(k)
        if self.base.payload_is_zero(c):
            return {}
        return {(0,) * self.m: c}

    def payload_add(self, a, b):
        out = dict(a)
        base = self.base
        for exps, c in b.items():
            if exps in out:
                s = base.payload_add(out[exps], c)
                if base.payload_is_zero(s):
                    del out[exps]
                else:
                    out[exps] = s
            else:
                out[exps] = c
        return out

    def payload_neg(self, a):
        base = self.base
        return {exps: base.payload_neg(c) for exps, c in a.items()}

    def payload_mul(self, a, b):
        base = self.base
        e = self.e
        out = {}
        for xa, ca in a.items():
            for xb, cb in b.items():
                exps = tuple(i + j for i, j in zip(xa, xb))
                if sum(exps) >= e:
                    continue
                c = base.payload_mul(ca, cb)
                if exps in out:
                    c = base.payload_add(out[exps], c)
                if base.payload_is_zero(c):
                    out.pop(exps, None)
                else:
                    out[exps] = c
        return out

    def payload_is_zero(self, a):
        return not a

    def generators(self):
        out = {}
        for i, name in enumerate(self.names):
            exps = tuple(1 if j == i else 0 for j in range(self.m))
            if self.e == 1:
                out[name] = self.zero  # m = 0 when e = 1
            else:
                out[name] = self.element({exps: self.base.payload_from_int(1)})
        return out

    def is_unit(self, a):
        c = a.value.get((0,) * self.m)
        if c is None:
            return False
        return self.base.is_unit(self.base.element(c))

    def invert(self, a):
        const = a.value.get((0,) * self.m)
        if const is None:
            raise NotAUnit("constant coefficient is zero")
        c = self.base.element(const)
        if not self.base.is_unit(c):
            raise NotAUnit("constant coefficient is not a base unit")
        cinv = RingElement(self, {(0,) * self.m: self.base.invert(c).value})
        nil = a - RingElement(self, {(0,) * self.m: const})
        # geometric series: (c + v)^{-1} = c^{-1} sum_k (-c^{-1} v)^k, exact
        # because v^e = 0.
        t = -cinv * nil
        acc = self.one
        term = self.one
        for _ in range(1, self.e):
            term = term * t
            acc = acc + term
        return cinv * acc

    @property
    def is_local(self):
        return True

    def nilpotency_exponent(self):
        return self.e

    def residue_field(self):
        return self.base

    def residue(self, a):
        c = a.value.get((0,) * self.m)
        return self.base.zero if c is None else self.base.element(c)

    def random_element(self, rng):
        out = {}
        for exps in self.monomials():
            if rng.random() < 0.6:
                c = self.base.random_element(rng)
                if c:
                    out[exps] = c.value
        return self.element(out)

    def random_nilpotent(self, rng):
        a = self.random_element(rng)
        out = dict(a.value)
        out.pop((0,) * self.m, None)
        return self.element(out)

    def monomials(self):
        """All exponent tuples of total degree < e, degree-then-lex order."""

        def rec(prefix, remaining, budget):
            if remaining == 0:
                yield prefix
                return
            for k in range(budget + 1):
                yield from rec(prefix + (k,), remaining - 1, budget - k)

        out = list(rec((), self.m, self.e - 1))
        out.sort(key=_monomial_key)
        return out

    def format_element(self, value):
        if not value:
            return "0"
        parts = []
        for exps in sorted(value, key=_monomial_key):
            c = value[exps]
            factors = []
            for name, k in zip(self.names, exps):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            cs = self.base.format_element(c)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def make_ring(descriptor):
    """Build a ring from a descriptor string like ``Artin(Fp(5); eps; 2)``.

    Accepts an already-built ring unchanged; see ``textforms.parse_ring``
    for the grammar.
    """
    if isinstance(descriptor, Ring):
        return descriptor
    from .textforms import parse_ring

    return parse_ring(descriptor)
