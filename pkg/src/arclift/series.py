"""Truncated power series R[[t]] mod t^N and Laurent series.

Precision is explicit data.  Every operation states the precision of its
output and never claims a coefficient beyond it: sums and products follow
the min-precision rule, shifts gain orders, and Laurent division records
exactly how many orders the strict-factorization certificate consumed.
"""

from __future__ import annotations

from .errors import (
    Indeterminate,
    InsufficientPrecision,
    MixedRings,
    NotAUnit,
    PrecisionExhausted,
)
from .rings import RingElement


class TruncatedSeries:
    """c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N) with exact coefficients."""

    __slots__ = ("ring", "precision", "coeffs")

    def __init__(self, ring, coeffs, precision=None):
        coerced = []
        for c in coeffs:
            if isinstance(c, RingElement):
                if c.ring != ring:
                    raise MixedRings(f"coefficient from {c.ring}, series over {ring}")
                coerced.append(c)
            elif isinstance(c, int):
                coerced.append(ring.from_int(c))
            else:
                raise TypeError(f"cannot use {type(c).__name__} as a coefficient")
        if precision is None:
            precision = len(coerced)
        if precision < 1:
            raise InsufficientPrecision("a series needs at least one known coefficient")
        if len(coerced) > precision:
            coerced = coerced[:precision]
        while len(coerced) < precision:
            coerced.append(ring.zero)
        self.ring = ring
        self.precision = precision
        self.coeffs = tuple(coerced)

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_ints(cls, ring, ints, precision=None):
        return cls(ring, [ring.from_int(k) for k in ints], precision)

    @classmethod
    def constant(cls, value: RingElement, precision):
        return cls(value.ring, [value], precision)

    @classmethod
    def t_power(cls, ring, k, precision):
        if k >= precision:
            raise InsufficientPrecision(f"t^{k} is invisible at precision {precision}")
        return cls(ring, [ring.zero] * k + [ring.one], precision)

    # -- basics --------------------------------------------------------------
    def coefficient(self, i) -> RingElement:
        if i >= self.precision:
            raise InsufficientPrecision(f"coefficient {i} beyond precision {self.precision}")
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise MixedRings(f"{self.ring} vs {other.ring}")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.precision == other.precision
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.ring, self.precision, len(self.coeffs)))

    def agrees(self, other, upto=None) -> bool:
        """Coefficientwise equality on the common known window (or ``upto``)."""
        self._check(other)
        n = min(self.precision, other.precision)
        if upto is not None:
            if upto > n:
                raise InsufficientPrecision(f"cannot compare {upto} orders at precision {n}")
            n = upto
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n))

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(
            self.ring, [self.coeffs[i] + other.coeffs[i] for i in range(n)], n
        )

    def __neg__(self):
        return TruncatedSeries(self.ring, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        self._check(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(
            self.ring, [self.coeffs[i] - other.coeffs[i] for i in range(n)], n
        )

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return self.scale(other)
        self._check(other)
        ring = self.ring
        n = min(self.precision, other.precision)
        a = [c.value for c in self.coeffs]
        b = [c.value for c in other.coeffs]
        padd, pmul, pzero = ring.payload_add, ring.payload_mul, ring.payload_is_zero
        out = [ring.payload_from_int(0)] * n
        for i in range(n):
            ai = a[i]
            if pzero(ai):
                continue
            for j in range(n - i):
                bj = b[j]
                if pzero(bj):
                    continue
                out[i + j] = padd(out[i + j], pmul(ai, bj))
        return TruncatedSeries(ring, [RingElement(ring, v) for v in out], n)

    def scale(self, c: RingElement):
        return TruncatedSeries(self.ring, [c * x for x in self.coeffs], self.precision)

    def times_poly(self, poly_coeffs):
        """Multiply by an exact polynomial (ascending coefficient list).

        The polynomial carries no truncation, so the output precision equals
        this series' precision.
        """
        ring = self.ring
        n = self.precision
        padd, pmul, pzero = ring.payload_add, ring.payload_mul, ring.payload_is_zero
        out = [ring.payload_from_int(0)] * n
        for i, p in enumerate(poly_coeffs):
            if i >= n:
                break
            pv = p.value
            if pzero(pv):
                continue
            for j in range(n - i):
                sv = self.coeffs[j].value
                if pzero(sv):
                    continue
                out[i + j] = padd(out[i + j], pmul(pv, sv))
        return TruncatedSeries(ring, [RingElement(ring, v) for v in out], n)

    def shift(self, k):
        """Multiply by t^k (k >= 0); gains k orders of precision."""
        if k < 0:
            raise ValueError("negative shifts live in LaurentSeries")
        if k == 0:
            return self
        return TruncatedSeries(
            self.ring, [self.ring.zero] * k + list(self.coeffs), self.precision + k
        )

    def truncate(self, n):
        if n > self.precision:
            raise InsufficientPrecision(f"cannot extend precision {self.precision} to {n}")
        return TruncatedSeries(self.ring, self.coeffs[:n], n)

    def invert(self):
        """Inverse by the standard recurrence; needs a unit constant term."""
        ring = self.ring
        c0 = self.coeffs[0]
        if not ring.is_unit(c0):
            raise NotAUnit("constant coefficient is not a unit")
        n = self.precision
        inv0 = ring.invert(c0)
        out = [inv0.value]
        padd, pmul = ring.payload_add, ring.payload_mul
        neg_inv0 = (-inv0).value
        a = [c.value for c in self.coeffs]
        for k in range(1, n):
            acc = None
            for i in range(1, k + 1):
                term = pmul(a[i], out[k - i])
                acc = term if acc is None else padd(acc, term)
            out.append(pmul(neg_inv0, acc))
        return TruncatedSeries(ring, [RingElement(ring, v) for v in out], n)

    # -- residue diagnostics ---------------------------------------------
    def residue_series(self):
        """Reduction to the residue field k[[t]] (local rings only)."""
        ring = self.ring
        k = ring.residue_field()
        return TruncatedSeries(k, [ring.residue(c) for c in self.coeffs], self.precision)

    def __repr__(self):
        return format_series(self)


def format_series(x: TruncatedSeries) -> str:
    body = ", ".join(x.ring.format_element(c.value) for c in x.coeffs)
    return f"[{body}] + O(t^{x.precision})"


def is_nondegenerate(x: TruncatedSeries) -> bool:
    """True when the residue series is visibly nonzero within precision.

    Over a local ring every homomorphism to a field factors through the
    residue field, so a single reduction decides non-degeneracy.  When all
    known coefficients reduce to zero the verdict is ``Indeterminate``:
    the truncation cannot certify either answer, and that is deliberately
    distinct from "no".
    """
    xbar = x.residue_series()
    if xbar.is_zero():
        raise Indeterminate(
            f"all {x.precision} known coefficients are nilpotent; cannot classify"
        )
    return True


def reduced_order(x: TruncatedSeries) -> int:
    """Smallest d whose coefficient has nonzero residue (vanishing order)."""
    xbar = x.residue_series()
    for d, c in enumerate(xbar.coeffs):
        if c:
            return d
    raise Indeterminate(
        f"all {x.precision} known coefficients are nilpotent; order is invisible"
    )


class LaurentSeries:
    """t^offset * body, body a TruncatedSeries (offset may be negative).

    Coefficients are known for exponents ``offset .. offset+N-1`` where N is
    the body precision; ``precision_bound`` is the exclusive upper end of
    that window.  Normalization strips leading exact zeros, raising the
    offset without shrinking the window.
    """

    __slots__ = ("offset", "body")

    def __init__(self, offset: int, body: TruncatedSeries):
        self.offset = offset
        self.body = body

    @property
    def ring(self):
        return self.body.ring

    @property
    def precision_bound(self) -> int:
        return self.offset + self.body.precision

    def normalize(self):
        offset, body = self.offset, self.body
        coeffs = list(body.coeffs)
        while len(coeffs) > 1 and not coeffs[0]:
            coeffs.pop(0)
            offset += 1
        return LaurentSeries(offset, TruncatedSeries(body.ring, coeffs, len(coeffs)))

    def coefficient(self, exponent: int) -> RingElement:
        i = exponent - self.offset
        if i < 0:
            return self.ring.zero
        return self.body.coefficient(i)

    def is_zero(self):
        return self.body.is_zero()

    def power_series_part(self):
        """Return an equal TruncatedSeries, or None if a negative exponent
        carries a nonzero coefficient (the witness is ``first_pole()``)."""
        norm = self.normalize()
        if norm.offset < 0 and norm.body.coeffs[0]:
            return None
        if norm.offset < 0:
            # all-zero body stuck below 0: shift the window up
            n = norm.precision_bound
            if n < 1:
                raise PrecisionExhausted("no non-negative exponent is certified")
            return TruncatedSeries(norm.ring, [], n)
        return norm.body.shift(norm.offset)

    def first_pole(self):
        norm = self.normalize()
        if norm.offset < 0 and norm.body.coeffs[0]:
            return norm.offset, norm.body.coeffs[0]
        return None

    def times_series(self, s: TruncatedSeries):
        return LaurentSeries(self.offset, self.body * s)

    def scale(self, c: RingElement):
        return LaurentSeries(self.offset, self.body.scale(c))

    def agrees_with_series(self, s: TruncatedSeries, upto=None) -> bool:
        """Compare against a plain power series on the common window."""
        n = min(self.precision_bound, s.precision)
        if upto is not None:
            n = min(n, upto)
        lo = min(self.offset, 0)
        for k in range(lo, n):
            sc = s.coeffs[k] if k >= 0 else s.ring.zero
            if self.coefficient(k) != sc:
                return False
        return True

    def __repr__(self):
        return f"t^({self.offset}) * ({format_series(self.body)})"


def laurent_divide(a: TruncatedSeries, b: TruncatedSeries) -> LaurentSeries:
    """a / b in R((t)) for non-degenerate b over a local Artinian ring.

    Uses the strict factorization b = u * q and the certificate q * q' = t^n:
    1/b = u^{-1} q' t^{-n}.  The numerator is multiplied by the exact
    polynomial q' first and normalized before the unit inverse is applied,
    so the certified window is as wide as the data allows.
    """
    from .weierstrass import divides_power_of_t, strict_prepare

    a._check(b)
    fact = strict_prepare(b)
    qprime = divides_power_of_t(fact.q, fact.certificate_n)
    numerator = a.times_poly(qprime.coeff_list())
    out = LaurentSeries(-fact.certificate_n, numerator).normalize()
    out = out.times_series(fact.u.invert()).normalize()
    if out.precision_bound < 1:
        raise PrecisionExhausted(
            f"certificate consumed {fact.certificate_n} orders, none remain"
        )
    return out
