"""Newton-style lifting of approximate arcs on complete intersections.

Equations f = (f_1..f_n) on A^m come with a coordinate split: the first
m-n coordinates are passive, the last n are the ones Newton corrections
move (corrections never touch the passive block).  The Jacobian block B is
taken in the moving coordinates, with adjugate satisfying the Cramer
identity B * adj = adj * B = det * Id.

The pipeline works with truncated series throughout and never divides
blindly: the quadratic-and-higher Taylor terms are collected so that each
order-k term carries (t*det)^k explicitly, which makes the key congruence
a statement about exact divisibility by t*det^2 checked through Laurent
division with a strict-factorization certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (
    ArityMismatch,
    CongruenceFailed,
    DegenerateJacobian,
    InsufficientPrecision,
    InvalidDescriptor,
    MixedRings,
    NonLocalRing,
    PrecisionExhausted,
    ResidualNonzero,
)
from .polynomials import MultiPoly
from .series import TruncatedSeries, laurent_divide, reduced_order


def embed_scalar(ring, c) -> "RingElement":
    if isinstance(c, Fraction):
        return ring.from_fraction(c)
    return ring.from_int(c)


class PolyMap:
    """A polynomial map A^m -> A^n with integer or rational coefficients."""

    __slots__ = ("var_names", "split", "polys")

    def __init__(self, var_names, split: int, polys):
        var_names = tuple(var_names)
        polys = tuple(polys)
        if not polys:
            raise InvalidDescriptor("a polynomial map needs at least one equation")
        if len(set(var_names)) != len(var_names):
            raise InvalidDescriptor("variable names must be distinct")
        if split != len(var_names) - len(polys) or split < 0:
            raise InvalidDescriptor(
                f"split {split} inconsistent with {len(var_names)} variables, "
                f"{len(polys)} equations"
            )
        for p in polys:
            if p.nvars != len(var_names):
                raise ArityMismatch("equation arity does not match the variable list")
        self.var_names = var_names
        self.split = split
        self.polys = polys

    @property
    def m(self):
        return len(self.var_names)

    @property
    def n(self):
        return len(self.polys)

    def __repr__(self):
        from .textforms import format_poly_map

        return format_poly_map(self)


@dataclass(frozen=True)
class JacobianData:
    """Jacobian block in the moving coordinates, its adjugate, and det."""

    matrix: tuple
    adjugate: tuple
    det: MultiPoly


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(1, n)), a[i][0] * b[0][j]) for j in range(n))
        for i in range(n)
    )


def _det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def jacobian_data(pm: PolyMap) -> JacobianData:
    n, m = pm.n, pm.m
    one = MultiPoly.constant(m, 1)
    matrix = tuple(
        tuple(pm.polys[i].derivative(pm.split + j) for j in range(n)) for i in range(n)
    )
    if n == 1:
        adj = ((one,),)
    else:
        cof = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [matrix[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
                cof[i][j] = _det(minor) if (i + j) % 2 == 0 else -_det(minor)
        adj = tuple(tuple(cof[j][i] for j in range(n)) for i in range(n))  # transpose
    det = _det(matrix)
    if det.is_zero():
        raise DegenerateJacobian("Jacobian determinant is identically zero")
    zero = MultiPoly(m, {})
    det_id = tuple(tuple(det if i == j else zero for j in range(n)) for i in range(n))
    if _mat_mul(matrix, adj) != det_id or _mat_mul(adj, matrix) != det_id:
        raise RuntimeError("Cramer identity failed symbolically; this is a bug")
    return JacobianData(matrix=matrix, adjugate=adj, det=det)


class ArcPoint:
    """An m-tuple of series with the equation data evaluated along it."""

    def __init__(self, pm: PolyMap, components):
        components = tuple(components)
        if len(components) != pm.m:
            raise ArityMismatch(f"expected {pm.m} components, got {len(components)}")
        ring = components[0].ring
        for c in components[1:]:
            if c.ring != ring:
                raise MixedRings("arc components must share one ring")
        self.map = pm
        self.components = components
        self.ring = ring
        self.jacobian = jacobian_data(pm)

    @property
    def precision(self):
        return min(c.precision for c in self.components)

    def truncated(self, n):
        return ArcPoint(self.map, tuple(c.truncate(min(n, c.precision)) for c in self.components))

    def _eval(self, poly: MultiPoly) -> TruncatedSeries:
        ring, n = self.ring, self.precision
        zero = TruncatedSeries.constant(ring.zero, n)
        return poly.evaluate_or(
            self.components,
            zero,
            embed=lambda c: TruncatedSeries.constant(embed_scalar(ring, c), n),
        )

    @cached_property
    def values(self):
        """f(x), one series per equation."""
        return tuple(self._eval(p) for p in self.map.polys)

    @cached_property
    def adjugate_at(self):
        return tuple(tuple(self._eval(p) for p in row) for row in self.jacobian.adjugate)

    @cached_property
    def jacobian_at(self):
        return tuple(tuple(self._eval(p) for p in row) for row in self.jacobian.matrix)

    @cached_property
    def det_at(self) -> TruncatedSeries:
        return self._eval(self.jacobian.det)

    def __repr__(self):
        return f"ArcPoint({', '.join(map(repr, self.components))})"


def _apply_matrix(mat, vec):
    n = len(mat)
    out = []
    for i in range(n):
        acc = mat[i][0] * vec[0]
        for j in range(1, n):
            acc = acc + mat[i][j] * vec[j]
        out.append(acc)
    return tuple(out)


def taylor_remainder(arc: ArcPoint):
    """Collected quadratic-and-higher Taylor data H as polynomials in the
    correction variables, with series coefficients.

    Writing f(x + v) = f(x) + B(x; v) + sum_{k>=2} B_k(x; v) by homogeneous
    degree in v, the returned H satisfies

        f(x + t*det*v) = f(x) + t*det*B(x; v) + (t*det)^2 * H(x; v)

    identically: each B_k term is weighted by (t*det)^{k-2} at construction,
    so no series division ever happens.
    """
    pm, ring = arc.map, arc.ring
    n, prec = pm.n, arc.precision
    one = TruncatedSeries.constant(ring.one, prec)
    values = []
    for i, comp in enumerate(arc.components):
        const = MultiPoly.constant(n, comp.truncate(prec))
        if i < pm.split:
            values.append(const)
        else:
            values.append(const + MultiPoly.variable(i - pm.split, n, one))
    zero_poly = MultiPoly(n, {})

    def embed(c):
        return MultiPoly.constant(n, TruncatedSeries.constant(embed_scalar(ring, c), prec))

    tdet = arc.det_at.truncate(prec).shift(1)
    out = []
    for f in pm.polys:
        expanded = f.evaluate_or(values, zero_poly, embed=embed)
        h = MultiPoly(n, {})
        weight = None
        for k in range(2, expanded.total_degree() + 1):
            part = expanded.homogeneous_part(k)
            if k == 2:
                weight = None
            else:
                weight = tdet if weight is None else weight * tdet
            if part.is_zero():
                continue
            if weight is not None:
                w = weight.truncate(prec)
                part = part.map_coefficients(lambda s: (s * w))
            h = h + part.map_coefficients(lambda s: s.truncate(prec))
        out.append(h)
    return out


def adjugate_remainder(arc: ArcPoint):
    """adj(x) applied to the Taylor remainder: the self-map h of the solver."""
    h = taylor_remainder(arc)
    n = arc.map.n
    adj = arc.adjugate_at
    prec = arc.precision
    out = []
    for i in range(n):
        acc = MultiPoly(n, {})
        for j in range(n):
            entry = adj[i][j].truncate(prec)
            if h[j].is_zero():
                continue
            acc = acc + h[j].map_coefficients(lambda s: s * entry)
        out.append(acc)
    return out


def _eval_correction(polys, v):
    """Evaluate v-polynomials (series coefficients) at a series vector."""
    ring = v[0].ring
    prec = min(x.precision for x in v)
    zero = TruncatedSeries.constant(ring.zero, prec)
    return tuple(p.evaluate_or(v, zero).truncate(prec) for p in polys)


def check_congruence(arc: ArcPoint):
    """Divide the adjugate defect adj(x; f(x)) by t*det(x)^2.

    Returns the congruence correction v1 (sign convention:
    adj(x; f(x)) + t*det^2*v1 = 0) when every component is a power series,
    and raises CongruenceFailed with the first offending component's
    Laurent expansion otherwise.
    """
    ring = arc.ring
    if not ring.is_local:
        raise NonLocalRing("the congruence test needs a local coefficient ring")
    e = ring.nilpotency_exponent()
    det_series = arc.det_at
    rho = reduced_order(det_series)
    big_n = arc.precision
    # the divisor t*det^2 has order 2*rho + 1 and is known mod t^{N+1}; its
    # strict preparation and a nonempty certified quotient window need:
    d_div = 2 * rho + 1
    need = max(d_div * (e + 1) - 1, d_div * e + 1)
    if big_n < need:
        raise PrecisionExhausted(
            f"congruence at det order {rho} over m^{e}=0 needs N >= {need}, got {big_n}"
        )
    divisor = (det_series * det_series).shift(1)
    defect = _apply_matrix(arc.adjugate_at, arc.values)
    parts = []
    for i, a in enumerate(defect):
        quotient = laurent_divide(a, divisor)
        ps = quotient.power_series_part()
        if ps is None:
            raise CongruenceFailed(i, quotient.normalize())
        parts.append(-ps)
    prec = min(p.precision for p in parts)
    return tuple(p.truncate(prec) for p in parts)


def fixed_point_solve(h, v1, precision: int):
    """The unique v0 with v0 + t*h(v0) = v1, by contraction iteration.

    Each pass computes v <- v1 - t*h(v); because of the leading t the
    iterates agree one order deeper every time (checked), so the loop is
    exact mod t^precision after at most ``precision`` passes.
    """
    v1 = tuple(v1)
    if min(x.precision for x in v1) < precision:
        raise InsufficientPrecision("v1 is not known to the requested precision")
    v = tuple(x.truncate(precision) for x in v1)
    for j in range(precision + 1):
        hv = h(v)
        nxt = tuple(
            (v1[i].truncate(precision) - hv[i].shift(1).truncate(precision))
            for i in range(len(v))
        )
        stable = min(j + 1, precision)
        for a, b in zip(nxt, v):
            if not a.agrees(b, stable):
                raise RuntimeError("contraction certificate failed; this is a bug")
        if all(a.agrees(b) for a, b in zip(nxt, v)):
            return nxt
        v = nxt
    raise RuntimeError("fixed point iteration exceeded the precision bound; this is a bug")


def congruence_forward(arc: ArcPoint, v0):
    """Push a solved correction to its congruence correction:
    v1 = v0 + t * adj(x; H(x; v0))."""
    polys = adjugate_remainder(arc)
    hv = _eval_correction(polys, tuple(v0))
    prec = min(min(x.precision for x in v0), min(x.precision for x in hv) + 1)
    return tuple(
        v0[i].truncate(prec) + hv[i].shift(1).truncate(prec) for i in range(len(hv))
    )


@dataclass(frozen=True)
class LiftResult:
    v1: tuple
    v0: tuple
    arc: ArcPoint
    precision: int


def arc_lift(arc: ArcPoint, working_precision=None) -> LiftResult:
    """Lift an approximate arc to an exact solution mod t^N'.

    Pipeline: the congruence correction v1, the fixed point v0 of
    v + t*adj(H(v)), then the update x_new = x + t*det(x)*v0 applied to the
    moving block only.  The residual f(x_new) is checked to vanish at the
    certified precision N'; over the supported rings a failure would be an
    internal bug (ResidualNonzero), not a legitimate outcome.
    """
    if working_precision is not None:
        arc = arc.truncated(working_precision)
    v1 = check_congruence(arc)
    out_prec = min(x.precision for x in v1)
    polys = adjugate_remainder(arc)

    def h(v):
        return _eval_correction(polys, v)

    v0 = fixed_point_solve(h, v1, out_prec)
    det_series = arc.det_at
    pm = arc.map
    new_components = list(arc.components)
    for j in range(pm.n):
        step = (det_series * v0[j]).shift(1)
        new_components[pm.split + j] = (arc.components[pm.split + j] + step).truncate(
            min(out_prec + 1, arc.precision)
        )
    lifted = ArcPoint(pm, new_components)
    for value in lifted.values:
        if any(value.coeffs[i] for i in range(min(out_prec, value.precision))):
            raise ResidualNonzero(
                f"f(lifted arc) != 0 mod t^{out_prec}; the coefficient ring must "
                "have elements vanishing to infinite order, or this is a bug"
            )
    return LiftResult(v1=v1, v0=v0, arc=lifted, precision=out_prec)
