"""Hilbert series invariants against a brute-force monomial count."""

from fractions import Fraction

import pytest

from cidcurve import (
    Field,
    Ideal,
    PolyRing,
    arithmetic_genus,
    graded_dimension,
    hilbert_polynomial,
    hilbert_series,
    krull_dimension,
    proj_degree,
    proj_dimension,
)
from cidcurve.errors import NotACurve, NotSaturated
from cidcurve.hilbert import ci_hilbert_data

from conftest import twisted_cubic_gens

QQ = Field.rationals()


def brute_graded_dimension(a, mu):
    """Count degree-mu monomials outside the leading-term ideal by
    direct enumeration."""
    basis = a.gb()
    lms = [f.leading()[0] for f in basis.elements]
    ring = a.ring
    count = 0

    def rec(pos, remaining, exps):
        nonlocal count
        if pos == ring.arity - 1:
            done = exps + (remaining,)
            if not any(all(x >= y for x, y in zip(done, lm)) for lm in lms):
                count += 1
            return
        for e in range(remaining + 1):
            rec(pos + 1, remaining - e, exps + (e,))

    rec(0, mu, ())
    return count


@pytest.mark.parametrize("mu", [0, 1, 2, 3, 5, 8])
def test_graded_dimension_matches_brute_force(mu):
    ring = PolyRing(QQ, ("x0", "x1", "x2", "x3"))
    a = Ideal(ring, twisted_cubic_gens(ring))
    assert graded_dimension(a, mu) == brute_graded_dimension(a, mu)


def test_twisted_cubic_invariants():
    ring = PolyRing(QQ, ("x0", "x1", "x2", "x3"))
    a = Ideal(ring, twisted_cubic_gens(ring))
    data = hilbert_series(a)
    assert krull_dimension(a) == 2
    assert proj_dimension(a) == 1
    assert proj_degree(a) == 3
    assert data.p_a == 0
    # Hilbert polynomial 3*mu + 1
    assert hilbert_polynomial(a) == (Fraction(1), Fraction(3))
    for mu in (2, 3, 6):
        assert graded_dimension(a, mu) == 3 * mu + 1


def test_hilbert_polynomial_eventually_equals_function():
    ring = PolyRing(QQ, ("x", "y", "z"))
    x, y, z = ring.variables()
    a = Ideal(ring, [x**2 * y - z**3])
    coeffs = hilbert_polynomial(a)
    for mu in (4, 5, 7):
        value = sum(c * mu**k for k, c in enumerate(coeffs))
        assert graded_dimension(a, mu) == value


def test_plane_curves_genus():
    ring = PolyRing(QQ, ("x", "y", "z"))
    x, y, z = ring.variables()
    for d in (3, 4, 5):
        a = Ideal(ring, [x**d + y**d + z**d])
        assert proj_degree(a) == d
        assert arithmetic_genus(a) == (d - 1) * (d - 2) // 2


def test_complete_intersection_data():
    ring = PolyRing(QQ, ("x0", "x1", "x2", "x3"))
    x0, x1, x2, x3 = ring.variables()
    # CI of a quadric and a cubic in P^3
    a = Ideal(ring, [x0 * x3 - x1 * x2, x0**3 + x1**3 + x2**3 + x3**3])
    assert proj_dimension(a) == 1
    assert proj_degree(a) == 6
    # genus of a (2,3) complete intersection curve
    assert arithmetic_genus(a) == 4
    # closed-form series for the same degrees agrees
    data = ci_hilbert_data((2, 3), 4)
    assert data.degree == 6
    assert data.p_a == 4


def test_empty_scheme_conventions():
    ring = PolyRing(QQ, ("x", "y", "z"))
    a = Ideal(ring, [ring.one()])
    data = hilbert_series(a)
    assert data.degree == 0
    assert data.p_a == 1


def test_genus_guards():
    ring = PolyRing(QQ, ("x0", "x1", "x2", "x3"))
    gens = twisted_cubic_gens(ring)
    dirty = Ideal(ring, [v * g for v in ring.variables() for g in gens])
    with pytest.raises(NotSaturated):
        arithmetic_genus(dirty)
    assert arithmetic_genus(dirty, auto_saturate=True) == 0
    x0 = ring.variable(0)
    with pytest.raises(NotACurve):
        arithmetic_genus(Ideal(ring, [x0]))


def test_points_have_degree_count():
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    # two reduced points on the projective line
    a = Ideal(ring, [x * y])
    assert proj_dimension(a) == 0
    assert proj_degree(a) == 2
