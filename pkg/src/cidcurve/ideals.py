"""Ideal-level operations: sums, products, intersections, quotients,
saturation, elimination, vector-space dimensions and zero-dimensional
radicals.

Intersections use the classic auxiliary-variable trick (eliminate t
from t*I + (1-t)*J), quotients reduce to principal quotients via
intersection plus exact division, and saturation iterates quotients to
stabilization.  Saturation by the irrelevant maximal ideal of a
homogeneous ideal has a dedicated fast path: saturating by a single
linear form is one grevlex basis computation (divide every element by
the top power of the last variable), and a Hilbert-polynomial
comparison certifies that the chosen form missed every relevant
associated prime; on certificate failure the exact intersection
formula over all coordinate saturations is used instead.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .errors import (
    DivisionFailure,
    NotHomogeneous,
    NotZeroDimensional,
    PrecisionCapExceeded,
    RingMismatch,
)
from . import hilbert as _hilbert
from .groebner import GroebnerBasis, groebner_basis
from .orders import Block, GREVLEX, LEX
from .polynomials import Chart, Polynomial, PolyRing, map_poly
from .rng import SplitMix64

INFINITE = float("inf")

SATURATION_CAP = 64


class Ideal:
    """An ideal presented by generators, with per-order basis caching.

    Instances are immutable; the Groebner cache is filled on demand and
    a concurrent duplicate fill is harmless (both threads compute the
    same canonical basis and the dict store is atomic).
    """

    __slots__ = ("ring", "generators", "_gb_cache", "_data_cache")

    def __init__(self, ring: PolyRing, generators):
        self.ring = ring
        seen = set()
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatch("generator outside the ideal's ring")
            if not g or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators = tuple(gens)
        self._gb_cache = {}
        self._data_cache = {}

    def gb(self, order=GREVLEX) -> GroebnerBasis:
        cached = self._gb_cache.get(order)
        if cached is None:
            cached = groebner_basis(self.generators, order, ring=self.ring)
            self._gb_cache[order] = cached
        return cached

    def contains(self, f: Polynomial) -> bool:
        return self.gb().contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        gb = self.gb()
        return all(gb.contains(g) for g in other.generators)

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal({inside})"


def ideal(*gens) -> Ideal:
    if not gens:
        raise ValueError("need at least one generator to infer the ring")
    return Ideal(gens[0].ring, list(gens))


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    if a.ring != b.ring:
        raise RingMismatch("ideal sum across different rings")
    return Ideal(a.ring, a.generators + b.generators)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    if a.ring != b.ring:
        raise RingMismatch("ideal product across different rings")
    gens = [f * g for f in a.generators for g in b.generators]
    return Ideal(a.ring, gens)


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    if a.ring != b.ring:
        raise RingMismatch("comparing ideals in different rings")
    return a.gb().elements == b.gb().elements


def is_saturated(a: Ideal) -> bool:
    return ideal_equal(a, saturate_irrelevant(a))


# --- ring plumbing -----------------------------------------------------


def _fresh_name(ring: PolyRing, stem="t"):
    name = stem
    while name in ring.names:
        name += "_"
    return name


def _with_aux_first(ring: PolyRing):
    """(aux ring with one extra leading variable, embedding index map)."""
    name = _fresh_name(ring)
    aux = PolyRing(ring.field, (name,) + ring.names)
    index_map = [i + 1 for i in range(ring.arity)]
    return aux, index_map


def map_ideal(a: Ideal, target: PolyRing, index_map) -> Ideal:
    return Ideal(target, [map_poly(g, target, index_map) for g in a.generators])


def chart_ideal(a: Ideal, chart: Chart) -> Ideal:
    return Ideal(chart.ring, [chart.apply(g) for g in a.generators])


# --- intersection, quotient, saturation --------------------------------


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """a ∩ b by eliminating t from t*a + (1-t)*b."""
    if a.ring != b.ring:
        raise RingMismatch("intersecting ideals in different rings")
    if a.is_zero() or b.is_zero():
        return Ideal(a.ring, [])
    aux, emb = _with_aux_first(a.ring)
    t = aux.variable(0)
    one_minus_t = aux.one() - t
    gens = [t * map_poly(g, aux, emb) for g in a.generators]
    gens += [one_minus_t * map_poly(g, aux, emb) for g in b.generators]
    gb = groebner_basis(gens, Block(1), ring=aux)
    back = [None] * aux.arity
    for i in range(a.ring.arity):
        back[i + 1] = i
    kept = [
        map_poly(g, a.ring, back)
        for g in gb.elements
        if all(e[0] == 0 for e in g.terms)
    ]
    return Ideal(a.ring, kept)


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f/g when division is exact; DivisionFailure otherwise."""
    ring = f.ring
    field = ring.field
    quotient_poly = ring.zero()
    rest = f
    lm_g, lc_g = g.leading(GREVLEX)
    while rest:
        m, c = rest.leading(GREVLEX)
        if not all(x <= y for x, y in zip(lm_g, m)):
            raise DivisionFailure(f"{g} does not divide {f}")
        shift = tuple(y - x for x, y in zip(lm_g, m))
        term = ring.polynomial({shift: field.div(c, lc_g)})
        quotient_poly = quotient_poly + term
        rest = rest - term * g
    return quotient_poly


def colon_principal(a: Ideal, g: Polynomial) -> Ideal:
    """(a : g) for a single polynomial."""
    if g.ring != a.ring:
        raise RingMismatch("colon divisor outside the ideal's ring")
    if not g:
        return Ideal(a.ring, [a.ring.one()])
    if g.is_constant():
        return a
    meet = intersect(a, Ideal(a.ring, [g]))
    return Ideal(a.ring, [divide_exact(f, g) for f in meet.generators])


def quotient(a: Ideal, b: Ideal) -> Ideal:
    """(a : b) as the intersection of single-generator quotients."""
    if a.ring != b.ring:
        raise RingMismatch("ideal quotient across different rings")
    parts = [colon_principal(a, g) for g in b.generators]
    if not parts:
        return Ideal(a.ring, [a.ring.one()])
    result = parts[0]
    for part in parts[1:]:
        result = intersect(result, part)
    return result


def colon_certified(a: Ideal, b: Ideal, seed=0) -> Ideal:
    """(a : b) via a single random combination g of b's generators,
    certified exact by the product test (a : g) * b ⊆ a; falls back to
    the full quotient when certification fails."""
    if a.ring != b.ring:
        raise RingMismatch("ideal quotient across different rings")
    if not b.generators:
        return Ideal(a.ring, [a.ring.one()])
    if len(b.generators) == 1:
        return colon_principal(a, b.generators[0])
    rng = SplitMix64(seed ^ 0x5EED_C010)
    field = a.ring.field
    gb_a = a.gb()
    for _ in range(2):
        g = a.ring.zero()
        for gen in b.generators:
            g = g + gen.scale(field.from_int(rng.unit_coefficient()))
        if not g:
            continue
        candidate = colon_principal(a, g)
        if all(
            gb_a.contains(q * h)
            for q in candidate.generators
            for h in b.generators
        ):
            return candidate
    return quotient(a, b)


def saturate(a: Ideal, b: Ideal, cap: int = SATURATION_CAP) -> Ideal:
    """(a : b^infinity) by iterated quotients."""
    current = a
    for _ in range(cap):
        nxt = quotient(current, b)
        if ideal_equal(nxt, current):
            return current
        current = nxt
    raise PrecisionCapExceeded(f"saturation did not stabilize within {cap} steps", cap=cap)


# --- fast irrelevant saturation ----------------------------------------


def _sat_last_var_grevlex(a: Ideal) -> Ideal:
    """(a : x_last^infinity) for homogeneous a: divide every reduced
    grevlex basis element by its top x_last power."""
    gb = a.gb(GREVLEX)
    last = a.ring.arity - 1
    out = []
    for g in gb.elements:
        k = min(e[last] for e in g.terms)
        if k == 0:
            out.append(g)
        else:
            out.append(
                g.ring.polynomial(
                    {tuple(x - (k if i == last else 0) for i, x in enumerate(e)): c
                     for e, c in g.terms.items()}
                )
            )
    return Ideal(a.ring, out)


def _sat_var_inf(a: Ideal, index: int) -> Ideal:
    """(a : x_index^infinity) by moving the variable last."""
    ring = a.ring
    if index == ring.arity - 1:
        return _sat_last_var_grevlex(a)
    perm = [i for i in range(ring.arity) if i != index] + [index]
    permuted = PolyRing(ring.field, tuple(ring.names[i] for i in perm))
    fwd = [None] * ring.arity
    for new_pos, old in enumerate(perm):
        fwd[old] = new_pos
    moved = map_ideal(a, permuted, fwd)
    sat = _sat_last_var_grevlex(moved)
    back = [None] * ring.arity
    for new_pos, old in enumerate(perm):
        back[new_pos] = old
    return map_ideal(sat, ring, back)


def _sat_linear_inf(a: Ideal, coeffs) -> Ideal:
    """(a : h^infinity) for the linear form with given coefficients."""
    ring = a.ring
    nz = [i for i, c in enumerate(coeffs) if c]
    if len(nz) == 1 and coeffs[nz[0]] == ring.field.one():
        return _sat_var_inf(a, nz[0])
    field = ring.field
    n = ring.arity
    pivot = nz[-1]
    rest = [i for i in range(n) if i != pivot]
    # forward: x_i -> y_slot(i) for i != pivot, x_pivot -> (y_last - sum c_i y_slot(i)) / c_pivot
    slot = {old: new for new, old in enumerate(rest)}
    images = [None] * n
    for i in rest:
        images[i] = ring.variable(slot[i])
    pivot_image = ring.variable(n - 1)
    for i in rest:
        if coeffs[i]:
            pivot_image = pivot_image - ring.variable(slot[i]).scale(coeffs[i])
    images[pivot] = pivot_image.scale(field.inv(coeffs[pivot]))
    moved = Ideal(ring, [g.compose(ring, images) for g in a.generators])
    sat = _sat_last_var_grevlex(moved)
    # backward: y_j -> x_rest[j] for j < n-1, y_last -> h(x)
    back_images = [ring.variable(rest[j]) for j in range(n - 1)]
    back_images.append(ring.linear_form(coeffs))
    return Ideal(ring, [g.compose(ring, back_images) for g in sat.generators])


def saturate_irrelevant(a: Ideal) -> Ideal:
    """Saturation of a homogeneous ideal by the irrelevant maximal ideal."""
    if not a.is_homogeneous():
        raise NotHomogeneous("irrelevant saturation needs a homogeneous ideal")
    if a.is_zero():
        return a
    ring = a.ring
    field = ring.field
    target = _hilbert.hilbert_series(a).hilbert_poly
    candidates = []
    for i in range(ring.arity):
        coeffs = [field.zero()] * ring.arity
        coeffs[i] = field.one()
        candidates.append(coeffs)
    rng = SplitMix64(0xC1D_5A7)
    for _ in range(6):
        candidates.append([field.from_int(rng.unit_coefficient()) for _ in range(ring.arity)])
    for coeffs in candidates:
        sat = _sat_linear_inf(a, coeffs)
        if _hilbert.hilbert_series(sat).hilbert_poly == target:
            return sat
    # exact fallback: intersection of all coordinate saturations
    result = _sat_var_inf(a, 0)
    for i in range(1, ring.arity):
        result = intersect(result, _sat_var_inf(a, i))
    return result


# --- elimination -------------------------------------------------------


def eliminate(a: Ideal, var_indices) -> Ideal:
    """Generators of a ∩ k[remaining variables], returned in the ring of
    the remaining variables."""
    ring = a.ring
    drop = sorted(set(var_indices))
    if not drop:
        return a
    if len(drop) >= ring.arity:
        raise ValueError("cannot eliminate every variable")
    keep = [i for i in range(ring.arity) if i not in drop]
    perm = drop + keep
    permuted = PolyRing(ring.field, tuple(ring.names[i] for i in perm))
    fwd = [None] * ring.arity
    for new_pos, old in enumerate(perm):
        fwd[old] = new_pos
    moved = map_ideal(a, permuted, fwd)
    gb = moved.gb(Block(len(drop)))
    small = PolyRing(ring.field, tuple(ring.names[i] for i in keep))
    back = [None] * permuted.arity
    for j, old in enumerate(keep):
        back[len(drop) + j] = j
    kept = [
        map_poly(g, small, back)
        for g in gb.elements
        if all(all(e[k] == 0 for k in range(len(drop))) for e in g.terms)
    ]
    return Ideal(small, kept)


# --- dimensions --------------------------------------------------------


def _lt_min_gens(a: Ideal, order=GREVLEX):
    return _hilbert.minimalize([g.leading(order)[0] for g in a.gb(order).elements])


def vdim(a: Ideal, order=GREVLEX):
    """dim_k of the quotient ring, or INFINITE.  Counts standard
    monomials of the leading-term ideal."""
    gb = a.gb(order)
    if gb.is_unit():
        return 0
    lt = [f.leading(order)[0] for f in gb.elements]
    count = _hilbert.count_standard_monomials(lt, a.ring.arity)
    if count is None:
        return INFINITE
    return count


def _degree_monomials(ring: PolyRing, degree: int):
    out = []
    for combo in combinations_with_replacement(range(ring.arity), degree):
        exps = [0] * ring.arity
        for i in combo:
            exps[i] += 1
        out.append(ring.polynomial({tuple(exps): ring.field.one()}))
    return out


def local_vdim_origin(a: Ideal, cap: int = 256):
    """Length of the quotient localized at the origin: vdim(a + m^N) for
    doubling N until two consecutive values agree."""
    if a.is_unit():
        return 0
    previous = None
    n = 2
    while n <= cap:
        truncated = Ideal(a.ring, list(a.generators) + _degree_monomials(a.ring, n))
        value = vdim(truncated)
        if previous is not None and value == previous:
            return value
        previous = value
        n *= 2
    raise PrecisionCapExceeded(
        f"local length did not stabilize up to truncation order {cap}", cap=cap
    )


# --- zero-dimensional radical ------------------------------------------


def _standard_monomial_basis(a: Ideal):
    lt = _lt_min_gens(a)
    bounds = []
    for i in range(a.ring.arity):
        pure = [g[i] for g in lt if sum(g) == g[i] and g[i] > 0]
        if not pure:
            raise NotZeroDimensional("no pure power for a variable in the staircase")
        bounds.append(min(pure))
    basis = []

    def walk(prefix, i):
        if i == a.ring.arity:
            exps = tuple(prefix)
            if not any(all(x <= y for x, y in zip(g, exps)) for g in lt):
                basis.append(exps)
            return
        for k in range(bounds[i]):
            walk(prefix + [k], i + 1)

    walk([], 0)
    basis.sort(key=GREVLEX.key)
    return basis


def _univ_trim(c):
    while c and not c[-1]:
        c.pop()
    return c


def _univ_monic(c, field):
    inv = field.inv(c[-1])
    return [field.mul(x, inv) for x in c]


def _univ_derivative(c, field):
    return _univ_trim([field.mul(c[k], field.from_int(k)) for k in range(1, len(c))])


def _univ_mod(a, b, field):
    a = list(a)
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        factor = field.div(a[-1], b[-1])
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = field.sub(a[shift + i], field.mul(factor, bc))
        a.pop()
    return _univ_trim(a)

def _univ_gcd(a, b, field):
    a, b = _univ_trim(list(a)), _univ_trim(list(b))
    while b:
        a, b = b, _univ_mod(a, b, field)
    return _univ_monic(a, field) if a else a


def _univ_exact_div(a, b, field):
    a = list(a)
    out = [field.zero()] * (len(a) - len(b) + 1)
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        factor = field.div(a[-1], b[-1])
        out[len(a) - len(b)] = factor
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = field.sub(a[shift + i], field.mul(factor, bc))
        a.pop()
    if _univ_trim(a):
        raise DivisionFailure("inexact univariate division")
    return _univ_trim(out)


def _univ_squarefree(c, field):
    """Monic squarefree part, handling the char-p descent m = g(x^p)."""
    c = _univ_monic(_univ_trim(list(c)), field)
    if len(c) <= 1:
        return c
    p = field.characteristic
    d = _univ_derivative(c, field)
    if not d:
        # every exponent divisible by p: take p-th root (prime field)
        root = [c[i] for i in range(0, len(c), p)]
        return _univ_squarefree(root, field)
    g = _univ_gcd(c, d, field)
    if len(g) == 1:
        return c
    w = _univ_exact_div(c, g, field)
    if p == 0:
        return _univ_monic(w, field)
    # strip w-factors out of g; what is left is a p-th power
    y = g
    while True:
        common = _univ_gcd(y, w, field)
        if len(common) == 1:
            break
        y = _univ_exact_div(y, common, field)
    rest = _univ_squarefree(y, field) if len(y) > 1 else [field.one()]
    merged = _univ_gcd(w, rest, field)
    if len(merged) > 1:
        rest = _univ_exact_div(rest, merged, field)
    product = _univ_mul(w, rest, field)
    return _univ_monic(product, field)


def _univ_mul(a, b, field):
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return _univ_trim(out)


def minimal_polynomial_of_element(a: Ideal, f):
    """Monic minimal polynomial of the residue class of f acting on the
    finite quotient, as a coefficient list (constant first)."""
    ring = a.ring
    field = ring.field
    gb = a.gb()
    if gb.is_unit():
        return [field.one()]
    basis = _standard_monomial_basis(a)
    pos = {m: i for i, m in enumerate(basis)}
    x = gb.normal_form(f)

    def axpy(target, factor, row):
        for k, v in row.items():
            nv = field.sub(target.get(k, field.zero()), field.mul(factor, v))
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)

    # echelonized rows, pivot column -> (vector, power-combination)
    pivots = {}
    current = ring.one()
    power = 0
    while True:
        vec = {pos[e]: c for e, c in gb.normal_form(current).terms.items()}
        combo = {power: field.one()}
        while vec:
            j = min(vec)
            row = pivots.get(j)
            if row is None:
                break
            factor = field.div(vec[j], row[0][j])
            axpy(vec, factor, row[0])
            axpy(combo, factor, row[1])
        if not vec:
            degree = max(combo)
            lead = combo[degree]
            coeffs = [field.zero()] * (degree + 1)
            for k, v in combo.items():
                coeffs[k] = field.div(v, lead)
            return coeffs
        pivots[min(vec)] = (vec, combo)
        power += 1
        current = gb.normal_form(current * x)


def minimal_polynomial_of_variable(a: Ideal, index: int):
    return minimal_polynomial_of_element(a, a.ring.variable(index))


def reduce_mod_prime(a: Ideal, p: int) -> Ideal:
    """The generators of a rational ideal, scaled to primitive integer
    form, mapped into the same variables over F_p.

    For homogeneous input the graded quotient can only grow under this
    specialization (Macaulay-matrix ranks can only drop mod p), so any
    dimension bound or Hilbert-function vanishing established mod p is
    a valid certificate for the rational ideal.  The converse fails for
    unlucky primes; callers must fall back to the exact computation."""
    from .fields import Field

    fp = Field.prime_field(p)
    ring_p = PolyRing(fp, a.ring.names)
    gens = []
    for g in a.generators:
        gi = g.primitive_int()
        image = ring_p.polynomial(
            {e: fp.from_int(int(c)) for e, c in gi.terms.items()}
        )
        if image:
            gens.append(image)
    return Ideal(ring_p, gens)


CERTIFICATE_PRIMES = (32003, 65537)


def dimension_at_most(a: Ideal, bound: int) -> bool:
    """Whether the projective-cone dimension of a homogeneous rational
    ideal is at most `bound`; tries cheap mod-p certificates before the
    exact rational basis."""
    if a.ring.field.characteristic:
        return _hilbert.krull_dimension(a) <= bound
    for p in CERTIFICATE_PRIMES:
        if _hilbert.krull_dimension(reduce_mod_prime(a, p)) <= bound:
            return True
    return _hilbert.krull_dimension(a) <= bound


def distinct_point_count(a: Ideal, seed: int = 0, tries: int = 3) -> int:
    """Number of distinct points of a finite scheme, counted with
    residue-field degree: the vdim of the radical.

    Fast path: for a random linear form, the squarefree part of its
    minimal polynomial has degree at most the radical's vdim, with
    equality when the form separates the points.  If that degree
    reaches vdim(a) the scheme is certified reduced and the count is
    returned without computing the radical; otherwise (non-reduced, or
    every draw non-separating) the exact radical route decides.
    """
    length = vdim(a)
    if length == INFINITE:
        raise NotZeroDimensional("point counting needs a finite quotient")
    if length == 0:
        return 0
    ring = a.ring
    field = ring.field
    rng = SplitMix64(seed ^ 0xD157_C007)
    for _ in range(tries):
        coeffs = [field.from_int(rng.unit_coefficient())
                  for _ in range(ring.arity)]
        mp = minimal_polynomial_of_element(a, ring.linear_form(coeffs))
        sf = _univ_squarefree(mp, field)
        if len(sf) - 1 == length:
            return length
    return vdim(radical_zero_dim(a))


def radical_zero_dim(a: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal: add the squarefree part of
    each variable's minimal polynomial (Seidenberg)."""
    if a.is_unit():
        return a
    if vdim(a) == INFINITE:
        raise NotZeroDimensional("radical_zero_dim needs a finite quotient")
    ring = a.ring
    field = ring.field
    gens = list(a.generators)
    for i in range(ring.arity):
        mp = minimal_polynomial_of_variable(a, i)
        sf = _univ_squarefree(mp, field)
        terms = {}
        for k, c in enumerate(sf):
            if c:
                e = [0] * ring.arity
                e[i] = k
                terms[tuple(e)] = c
        gens.append(ring.polynomial(terms))
    return Ideal(ring, gens)
