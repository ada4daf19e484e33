import random

import pytest

from arclift import (
    ArtinianLocalRing,
    LowPoly,
    MonicPoly,
    MultiPoly,
    PolyMap,
    PrimeFieldRing,
    RationalRing,
    TruncatedSeries,
    expand_around,
    map_mod_poly,
    mod_q_reduce,
)
from arclift.errors import ArityMismatch, InsufficientPrecision
from arclift.jets import ModQVector
from arclift.weierstrass import poly_mul


def test_reduce_power_past_modulus():
    f7 = PrimeFieldRing(7)
    x = TruncatedSeries.t_power(f7, 3, 6)
    out = mod_q_reduce(x, MonicPoly.t_power(f7, 2))
    assert out.value.is_zero()
    assert out.exact


def test_reduce_mod_shifted_square():
    f7 = PrimeFieldRing(7)
    x = TruncatedSeries.from_ints(f7, [1, 1, 1], 3)
    out = mod_q_reduce(x, MonicPoly.from_ints(f7, [-1]))  # t - 1... degree 1
    # 1 + t + t^2 at t = 1 is 3
    assert out.value == LowPoly.from_ints(f7, 1, [3])
    assert not out.exact
    q2 = MonicPoly.from_ints(f7, [-1, 0])  # t^2 - 1
    out2 = mod_q_reduce(x, q2)
    assert out2.value == LowPoly.from_ints(f7, 2, [2, 1])


def test_reduce_constant_is_identity():
    q = RationalRing()
    x = TruncatedSeries.from_ints(q, [5], 4)
    out = mod_q_reduce(x, MonicPoly.t_power(q, 2))
    assert out.value == LowPoly.from_ints(q, 2, [5])


def test_reduce_needs_enough_precision():
    f7 = PrimeFieldRing(7)
    with pytest.raises(InsufficientPrecision):
        mod_q_reduce(TruncatedSeries.from_ints(f7, [1], 1), MonicPoly.t_power(f7, 2))


def _identity_map(m):
    return PolyMap(
        tuple(f"y{i}" for i in range(m)),
        0,
        [MultiPoly.variable(i, m, 1) for i in range(m)],
    )


def test_map_identity_fixes_vectors():
    f5 = PrimeFieldRing(5)
    q = MonicPoly.from_ints(f5, [1, 1])
    xbar = ModQVector(q, [LowPoly.from_ints(f5, 2, [2, 3])])
    assert map_mod_poly(_identity_map(1), q, xbar) == xbar


def test_map_squares_and_reduces():
    q = RationalRing()
    modulus = MonicPoly.t_power(q, 2)
    square = PolyMap(("y",), 0, [MultiPoly(1, {(2,): 1})])
    a, b = 3, 4
    xbar = ModQVector(modulus, [LowPoly.from_ints(q, 2, [a, b])])
    out = map_mod_poly(square, modulus, xbar)
    assert out.components[0] == LowPoly.from_ints(q, 2, [a * a, 2 * a * b])


def test_map_constant():
    f5 = PrimeFieldRing(5)
    modulus = MonicPoly.from_ints(f5, [2, 0])
    const = PolyMap(("y",), 0, [MultiPoly.constant(1, 3)])
    xbar = ModQVector(modulus, [LowPoly.from_ints(f5, 2, [1, 1])])
    out = map_mod_poly(const, modulus, xbar)
    assert out.components[0] == LowPoly.from_ints(f5, 2, [3, 0])


def _random_poly_map(rng, m, n, deg, max_coeff=4):
    polys = []
    for _ in range(n):
        terms = {}
        for _ in range(4):
            exps = tuple(rng.randrange(deg + 1) for _ in range(m))
            if sum(exps) > deg:
                continue
            c = rng.randint(-max_coeff, max_coeff)
            if c:
                terms[exps] = terms.get(exps, 0) + c
        polys.append(MultiPoly(m, terms) + MultiPoly.constant(m, rng.randint(-2, 2)))
    return PolyMap(tuple(f"y{i}" for i in range(m)), m - n, polys)


def test_map_composition_is_functorial():
    rng = random.Random(9)
    f5 = PrimeFieldRing(5)
    for _ in range(40):
        d = rng.randrange(1, 4)
        q = MonicPoly(f5, [f5.random_element(rng) for _ in range(d)])
        f = _random_poly_map(rng, 2, 2, 2)
        g = _random_poly_map(rng, 2, 2, 2)
        composed_polys = [
            p.evaluate_or(list(f.polys), MultiPoly(2, {}), embed=lambda c: MultiPoly.constant(2, c))
            for p in g.polys
        ]
        gf = PolyMap(f.var_names, 0, composed_polys)
        xbar = ModQVector(
            q, [LowPoly(f5, d, [f5.random_element(rng) for _ in range(d)]) for _ in range(2)]
        )
        assert map_mod_poly(gf, q, xbar) == map_mod_poly(
            g, q, map_mod_poly(f, q, map_mod_poly(_identity_map(2), q, xbar))
        )


def test_map_over_pure_power_agrees_with_jets():
    # reduction mod t^d of f(series) equals f applied to the d-jet
    rng = random.Random(10)
    f5 = PrimeFieldRing(5)
    for _ in range(30):
        d = rng.randrange(1, 5)
        q = MonicPoly.t_power(f5, d)
        f = _random_poly_map(rng, 2, 2, 3)
        series = [
            TruncatedSeries(f5, [f5.random_element(rng) for _ in range(d)], d + 3)
            for _ in range(2)
        ]
        xbar = ModQVector(q, [mod_q_reduce(s, q).value for s in series])
        out = map_mod_poly(f, q, xbar)
        zero = TruncatedSeries.constant(f5.zero, d + 3)
        direct = [
            p.evaluate_or(
                series, zero, embed=lambda c: TruncatedSeries.constant(f5.from_int(c), d + 3)
            )
            for p in f.polys
        ]
        for got, s in zip(out.components, direct):
            assert got == mod_q_reduce(s, q).value


def test_expand_square_around_scalar_with_unit_modulus():
    # g(y) = y^2 around xbar = c with modulus t (q = 1): head c^2, tail 2c + t
    q = RationalRing()
    g = PolyMap(("y",), 0, [MultiPoly(1, {(2,): 1})])
    unit_modulus = MonicPoly(q, [])
    c = 3
    xbar = ModQVector(MonicPoly.from_ints(q, [0]), [LowPoly.from_ints(q, 1, [c])])
    xprime = (TruncatedSeries.from_ints(q, [1], 6),)
    out = expand_around(g, unit_modulus, xbar, xprime)
    assert out.head.components[0] == LowPoly.from_ints(q, 1, [c * c])
    assert out.tail[0] == TruncatedSeries.from_ints(q, [2 * c, 1], 6)


def test_expand_square_around_constant_mod_t_squared():
    # q = t: w = (c + t^2)^2 = c^2 + 2c t^2 + t^4, head = c^2, tail = 2c + t^2
    q = RationalRing()
    g = PolyMap(("y",), 0, [MultiPoly(1, {(2,): 1})])
    modulus = MonicPoly.t_power(q, 1)
    c = 5
    xbar = ModQVector(MonicPoly.t_power(q, 2), [LowPoly.from_ints(q, 2, [c])])
    xprime = (TruncatedSeries.from_ints(q, [1], 8),)
    out = expand_around(g, modulus, xbar, xprime)
    assert out.head.components[0] == LowPoly.from_ints(q, 2, [c * c, 0])
    assert out.tail[0] == TruncatedSeries.from_ints(q, [2 * c, 0, 1], 7)


def test_expand_without_perturbation_reduces_the_value():
    f5 = PrimeFieldRing(5)
    g = PolyMap(("y",), 0, [MultiPoly(1, {(3,): 1})])
    modulus = MonicPoly.from_ints(f5, [1])
    xbar = ModQVector(MonicPoly.from_ints(f5, [0, 1]), [LowPoly.from_ints(f5, 2, [1, 1])])
    xprime = (TruncatedSeries.constant(f5.zero, 8),)
    out = expand_around(g, modulus, xbar, xprime)
    # w = (1 + t)^3 with no perturbation: reconstruct exactly
    w = TruncatedSeries.from_ints(f5, [1, 3, 3, 1], 9)
    back = out.tail[0].times_poly([f5.zero] + modulus.coeff_list()) + out.head.components[
        0
    ].as_series(out.tail[0].precision)
    assert back.agrees(w)


@pytest.mark.parametrize(
    "ring", [PrimeFieldRing(5), ArtinianLocalRing(PrimeFieldRing(5), ["eps"], 2)], ids=repr
)
def test_expand_reconstructs_randomized(ring):
    rng = random.Random(11)
    for _ in range(60):
        d = rng.randrange(0, 4)
        q = MonicPoly(ring, [ring.random_element(rng) for _ in range(d)])
        tq_coeffs = [ring.zero] + q.coeff_list()
        g = _random_poly_map(rng, 2, 2, 3)
        xbar = ModQVector(
            MonicPoly(ring, tq_coeffs[:-1]),
            [LowPoly(ring, d + 1, [ring.random_element(rng) for _ in range(d + 1)]) for _ in range(2)],
        )
        n = d + 4
        xprime = tuple(
            TruncatedSeries(ring, [ring.random_element(rng) for _ in range(n)], n)
            for _ in range(2)
        )
        out = expand_around(g, q, xbar, xprime)
        # recompute g(xbar + t q x') directly and compare with head + t*q*tail
        moved = [
            c.as_series(n + 1) + xp.times_poly(q.coeff_list()).shift(1)
            for c, xp in zip(xbar.components, xprime)
        ]
        zero = TruncatedSeries.constant(ring.zero, n + 1)
        for i, poly in enumerate(g.polys):
            w = poly.evaluate_or(
                moved, zero, embed=lambda c: TruncatedSeries.constant(ring.from_int(c), n + 1)
            )
            back = out.tail[i].times_poly(tq_coeffs) + out.head.components[i].as_series(
                out.tail[i].precision
            )
            assert back.agrees(w)


def test_expand_arity_checks():
    q = RationalRing()
    g = PolyMap(("y",), 0, [MultiPoly(1, {(2,): 1})])
    modulus = MonicPoly.t_power(q, 1)
    bad = ModQVector(MonicPoly.t_power(q, 1), [LowPoly.from_ints(q, 1, [1])])
    with pytest.raises(ArityMismatch):
        expand_around(g, modulus, bad, (TruncatedSeries.from_ints(q, [1], 6),))


def test_expand_needs_perturbation_precision_beyond_the_modulus():
    q = RationalRing()
    g = PolyMap(("y",), 0, [MultiPoly(1, {(2,): 1})])
    modulus = MonicPoly.t_power(q, 2)
    xbar = ModQVector(MonicPoly.t_power(q, 3), [LowPoly.from_ints(q, 3, [1])])
    with pytest.raises(InsufficientPrecision):
        expand_around(g, modulus, xbar, (TruncatedSeries.from_ints(q, [1], 2),))
