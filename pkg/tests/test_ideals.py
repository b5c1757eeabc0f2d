"""Ideal operations: membership laws, elimination, saturation, lengths."""

import pytest

from cidcurve import (
    INFINITE,
    Field,
    GREVLEX,
    Ideal,
    LEX,
    PolyRing,
    colon_certified,
    dimension_at_most,
    distinct_point_count,
    eliminate,
    ideal,
    ideal_equal,
    ideal_product,
    ideal_sum,
    intersect,
    is_saturated,
    local_vdim_origin,
    quotient,
    radical_zero_dim,
    saturate,
    saturate_irrelevant,
    vdim,
)
from cidcurve.errors import NotZeroDimensional, RingMismatch
from cidcurve.ideals import (
    minimal_polynomial_of_variable,
    reduce_mod_prime,
)
from cidcurve.rng import SplitMix64

from conftest import twisted_cubic_gens

QQ = Field.rationals()


def ring3():
    return PolyRing(QQ, ("x", "y", "z"))


def random_ideal(ring, seed, count=2, terms=3, max_deg=2):
    rng = SplitMix64(seed)
    gens = []
    for _ in range(count):
        f = ring.zero()
        for _ in range(terms):
            exps = [0] * ring.arity
            for _ in range(rng.randint(0, max_deg)):
                exps[rng.randint(0, ring.arity - 1)] += 1
            f = f + ring.polynomial(
                {tuple(exps): ring.field.from_int(rng.randint(-5, 5))}
            )
        if f:
            gens.append(f)
    return Ideal(ring, gens or [ring.zero()])


@pytest.mark.parametrize("seed", [11, 23, 31])
def test_algebra_laws(seed):
    ring = ring3()
    a = random_ideal(ring, seed)
    b = random_ideal(ring, seed + 1)
    gb_sum = ideal_sum(a, b).gb()
    for g in list(a.generators) + list(b.generators):
        assert gb_sum.contains(g)
    prod = ideal_product(a, b)
    meet = intersect(a, b)
    gb_a, gb_b = a.gb(), b.gb()
    gb_meet = meet.gb()
    # product inside intersection inside each factor
    for g in prod.generators:
        assert gb_meet.contains(g)
    for g in meet.generators:
        assert gb_a.contains(g) and gb_b.contains(g)
    # quotient law: (a : b) * b inside a
    quo = quotient(a, b)
    for f in quo.generators:
        for g in b.generators:
            assert gb_a.contains(f * g)
    # a inside (a : b)
    gb_quo = quo.gb()
    for g in a.generators:
        assert gb_quo.contains(g)


def test_intersection_example():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    meet = intersect(ideal(x), ideal(y))
    assert ideal_equal(meet, ideal(x * y))


def test_quotient_examples():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    assert ideal_equal(quotient(ideal(x * y), ideal(x)), ideal(y))
    assert ideal_equal(quotient(ideal(x * y, x * x), ideal(x)),
                       ideal(x, y))
    # colon by a non-member of the support: unchanged
    assert ideal_equal(quotient(ideal(x), ideal(y)), ideal(x))
    assert quotient(ideal(x), ideal(x)).is_unit()


def test_colon_certified_matches_quotient():
    ring = ring3()
    for seed in (3, 5):
        a = random_ideal(ring, seed)
        b = random_ideal(ring, seed + 7)
        assert ideal_equal(colon_certified(a, b), quotient(a, b))


def test_saturation():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    # (x*y^3, x^2*y) saturated by (y) leaves (x)
    a = ideal(x * y**3, x**2 * y)
    sat = saturate(a, ideal(y))
    assert ideal_equal(sat, ideal(x))
    # saturation is a fixed point
    assert ideal_equal(saturate(sat, ideal(y)), sat)


def test_saturate_irrelevant():
    ring = PolyRing(QQ, ("x0", "x1", "x2", "x3"))
    gens = twisted_cubic_gens(ring)
    clean = Ideal(ring, gens)
    assert is_saturated(clean)
    # multiply by the whole irrelevant ideal: junk supported only at
    # the irrelevant maximal ideal, which saturation must strip
    dirty = Ideal(ring, [v * g for v in ring.variables() for g in gens])
    recovered = saturate_irrelevant(dirty)
    assert ideal_equal(recovered, clean)
    assert not is_saturated(dirty)


def test_eliminate_implicitization():
    # parameter elimination recovers the implicit curve equation
    ring = PolyRing(QQ, ("t", "x", "y"))
    t, x, y = ring.variables()
    a = Ideal(ring, [x - t**2, y - t**3])
    out = eliminate(a, (0,))
    ox, oy = out.ring.variables()
    assert ideal_equal(out, Ideal(out.ring, [oy**2 - ox**3]))


def test_eliminate_two_lines():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    meet = intersect(ideal(x), ideal(y))
    assert ideal_equal(meet, ideal(x * y))


def test_vdim_examples_and_order_independence():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    a = ideal(x**2, y**3)
    assert vdim(a) == 6
    assert vdim(a, order=LEX) == 6
    assert vdim(ideal(x)) == INFINITE
    assert vdim(Ideal(ring, [ring.one()])) == 0
    b = ideal(x**2 - y, y**2 - x)
    assert vdim(b, order=GREVLEX) == vdim(b, order=LEX) == 4


def test_local_vdim_origin():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    assert local_vdim_origin(ideal(x**2, y**3)) == 6
    # global scheme: origin plus the point (1, 1); only the origin counts
    a = ideal(x * (x - ring.one()), y * (x - ring.one()), y**2 - x * y)
    assert local_vdim_origin(a) == 1
    # unit ideal: empty germ
    assert local_vdim_origin(Ideal(ring, [ring.one()])) == 0


def test_radical_zero_dim():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    rad = radical_zero_dim(ideal(x**2, y**3))
    assert ideal_equal(rad, ideal(x, y))
    with pytest.raises(NotZeroDimensional):
        radical_zero_dim(ideal(x))
    # squarefree but non-radical input over an extension: (x^2+1) stays
    rad2 = radical_zero_dim(ideal(x**2 + ring.one(), y))
    assert ideal_equal(rad2, ideal(x**2 + ring.one(), y))


def test_distinct_point_count():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    one = ring.one()
    # three reduced points
    pts = ideal(x * (x - one) * (x + one), y)
    assert distinct_point_count(pts) == 3
    # fat point counts once
    assert distinct_point_count(ideal(x**2, y)) == 1
    with pytest.raises(NotZeroDimensional):
        distinct_point_count(ideal(x))


def test_minimal_polynomial():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    one = ring.one()
    a = ideal(x**2 - x, y - x)
    coeffs = minimal_polynomial_of_variable(a, 1)
    # y satisfies y^2 - y
    assert coeffs[0] == 0 and coeffs[2] != 0
    assert len(coeffs) == 3


def test_reduce_mod_prime():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    a = ideal(x.scale(QQ.from_fraction(__import__("fractions").Fraction(1, 2))) + y)
    b = reduce_mod_prime(a, 7)
    assert b.ring.field.characteristic == 7
    # 1/2 x + y -> primitive x + 2y -> mod 7
    assert str(b.generators[0]) in ("x + 2*y",)


def test_dimension_at_most_matches_krull():
    from cidcurve import krull_dimension

    ring = PolyRing(QQ, ("x0", "x1", "x2", "x3"))
    a = Ideal(ring, twisted_cubic_gens(ring))
    assert krull_dimension(a) == 2
    assert dimension_at_most(a, 2)
    assert not dimension_at_most(a, 1)
    x0 = ring.variable(0)
    assert dimension_at_most(ideal_sum(a, ideal(x0)), 1)


def test_ring_mismatch_rejected():
    r1 = PolyRing(QQ, ("x", "y"))
    r2 = PolyRing(QQ, ("a", "b"))
    with pytest.raises(RingMismatch):
        ideal_sum(ideal(r1.variable(0)), ideal(r2.variable(0)))
