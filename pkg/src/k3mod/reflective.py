"""Reflections of integral lattices and their action on discriminant groups.

A primitive vector r with (r, r) != 0 is reflective when the reflection
sigma_r preserves the lattice; its class records whether the induced action
on A_L is the identity, minus the identity, or neither.  For the signature
(2, 19) lattices L_2d this classification is governed by r^2 and div(r),
and the module checks those statements on demand (sampled, with exact
arithmetic) rather than assuming them.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from . import lattice as lt
from .lattice import IntLattice, LatticeError, LatVec, disc_group, divisor, \
    is_primitive, make_l2d, orth_complement, pairing_vector


class NotIntegralError(LatticeError):
    pass


IN_TILDE_O = "in_tilde_O"
MINUS_IN_TILDE_O = "minus_in_tilde_O"
NEITHER = "neither"
NOT_INTEGRAL = "not_integral"


class IsometryMatrix:
    """Integer matrix over the lattice basis with M^t G M = G (checked)."""

    __slots__ = ("lattice", "matrix")

    def __init__(self, lattice, matrix):
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        g = lattice.gram
        n = lattice.rank
        for i in range(n):
            for j in range(i, n):
                s = sum(m[a][i] * g[a][b] * m[b][j] for a in range(n) for b in range(n))
                if s != g[i][j]:
                    raise LatticeError("matrix does not preserve the form")
        self.lattice = lattice
        self.matrix = m

    def apply_coords(self, coords):
        n = self.lattice.rank
        return tuple(sum(self.matrix[i][j] * coords[j] for j in range(n)) for i in range(n))

    def __repr__(self):
        return f"IsometryMatrix(rank={self.lattice.rank})"


def reflection_coefficients(lat, coords):
    """The integers 2 (b_j, r) / (r, r) if they exist, else None."""
    pair = pairing_vector(lat, coords)
    norm = sum(p * c for p, c in zip(pair, coords))
    if norm == 0:
        raise LatticeError("cannot reflect in an isotropic vector")
    cs = []
    for p in pair:
        num = 2 * p
        if num % norm:
            return None
        cs.append(num // norm)
    return cs


def reflection(lat, r):
    """The reflection sigma_r as an IsometryMatrix, if it preserves the lattice."""
    coords = r.coords if isinstance(r, LatVec) else tuple(r)
    cs = reflection_coefficients(lat, coords)
    if cs is None:
        raise NotIntegralError("sigma_r does not preserve the lattice")
    n = lat.rank
    m = [[(1 if i == j else 0) - cs[j] * coords[i] for j in range(n)] for i in range(n)]
    return IsometryMatrix(lat, m)


_disc_cache = {}


def cached_disc_group(lat):
    if lat.token not in _disc_cache:
        _disc_cache[lat.token] = disc_group(lat)
    return _disc_cache[lat.token]


def disc_action(lat, g, disc=None):
    """Images of the discriminant generator lifts under g, as dual vectors."""
    disc = disc or cached_disc_group(lat)
    return [lt.DualVec(lat, [sum(Fraction(g.matrix[i][j]) * w.coords[j]
                                 for j in range(lat.rank)) for i in range(lat.rank)])
            for w in disc.generator_lifts]


def _acts_as(lat, g, sign, disc):
    for w in disc.generator_lifts:
        for i in range(lat.rank):
            img = sum(Fraction(g.matrix[i][j]) * w.coords[j] for j in range(lat.rank))
            if (img - sign * w.coords[i]).denominator != 1:
                return False
    return True


def is_id_on_disc(lat, g, disc=None):
    return _acts_as(lat, g, 1, disc or cached_disc_group(lat))


def is_minus_id_on_disc(lat, g, disc=None):
    return _acts_as(lat, g, -1, disc or cached_disc_group(lat))


def classify_reflection(lat, r, disc=None):
    """Tag of sigma_r on the discriminant group, with theory cross-checks.

    The cross-checks raise on violation: sigma_r acts as the identity iff
    r^2 = +-2; the minus-identity action forces (and, in the sufficient
    cases, follows from) the r^2 / div(r) patterns in terms of the exponent
    D of A_L; for |A_L| odd both directions are two-sided.
    """
    coords = r.coords if isinstance(r, LatVec) else tuple(r)
    if not is_primitive(lat, coords):
        raise LatticeError("reflection classification needs a primitive vector")
    if not lat.is_even():
        raise LatticeError("classification is stated for even lattices")
    try:
        sigma = reflection(lat, coords)
    except NotIntegralError:
        return NOT_INTEGRAL
    disc = disc or cached_disc_group(lat)
    plus = _acts_as(lat, sigma, 1, disc)
    minus = _acts_as(lat, sigma, -1, disc)
    pair = pairing_vector(lat, coords)
    norm = sum(p * c for p, c in zip(pair, coords))
    div = 0
    for p in pair:
        div = gcd(div, p)
    dd = disc.exponent
    if plus != (abs(norm) == 2):
        raise AssertionError(f"identity action and r^2 = {norm} disagree")
    if minus:
        cond_i = (abs(norm) == 2 * dd and div == dd and dd % 2 == 1) or \
                 (abs(norm) == dd and div in (dd, dd // 2 if dd % 2 == 0 else -1))
        if not (cond_i or dd == 1):
            raise AssertionError(
                f"minus-identity action with r^2 = {norm}, div = {div}, D = {dd}")
    if abs(norm) == dd and (div == dd or (div * 2 == dd and div % 2 == 1)):
        if not minus:
            raise AssertionError("sufficient minus-identity condition failed")
    if abs(norm) == 2 * dd and div == dd and dd % 2 == 1 and not minus:
        raise AssertionError("sufficient minus-identity condition failed")
    if disc.order % 2 == 1 and minus != (abs(norm) == 2 * dd and div == dd):
        raise AssertionError("odd-determinant two-sided test failed")
    if plus:
        return IN_TILDE_O
    if minus:
        return MINUS_IN_TILDE_O
    return NEITHER


def is_two_elementary(disc):
    """Every invariant factor equals 2."""
    return all(f == 2 for f in disc.invariant_factors)


def parity_delta(disc):
    """0 when the discriminant form only takes integral values, else 1."""
    if disc.q_values is None:
        raise LatticeError("parity is defined for even lattices")
    lat = disc.lattice
    lifts = disc.generator_lifts
    for q in disc.q_values:
        if q.denominator != 1:
            return 1
    for i in range(len(lifts)):
        for j in range(i + 1, len(lifts)):
            s = lifts[i].coords
            t = lifts[j].coords
            cross = 2 * sum(s[a] * lat.gram[a][b] * t[b]
                            for a in range(lat.rank) for b in range(lat.rank))
            if (disc.q_values[i] + disc.q_values[j] + cross).denominator != 1:
                return 1
    return 0


def orth_det_check(d, r):
    """Determinant of the orthogonal complement of r in L_2d versus the
    index formula |det L| * |r^2| / div(r)^2 (which is 4d^2/div^2 for the
    r^2 = -2d reflective vectors).  Returns (|det|, predicted)."""
    lat = make_l2d(d) if isinstance(r, (tuple, list)) else r.lattice
    coords = tuple(r) if isinstance(r, (tuple, list)) else r.coords
    if not is_primitive(lat, coords):
        raise LatticeError("determinant check needs a primitive vector")
    pair = pairing_vector(lat, coords)
    norm = sum(p * c for p, c in zip(pair, coords))
    if norm == 0:
        raise LatticeError("isotropic vector")
    div = 0
    for p in pair:
        div = gcd(div, p)
    predicted, rem = divmod(abs(lat.det) * abs(norm), div * div)
    assert rem == 0
    comp, _basis = orth_complement(lat, [coords])
    return abs(comp.det), predicted


# ---------------------------------------------------------------------------
# sampled verification on L_2d
# ---------------------------------------------------------------------------

def _interesting_vectors(d, lat):
    """Deterministic seed vectors hitting each reflective class."""
    n = lat.rank
    vecs = []

    def unit(i, c=1):
        v = [0] * n
        v[i] = c
        return tuple(v)

    h = unit(n - 1)                     # the <-2d> generator: r^2 = -2d, div = 2d
    vecs.append(h)
    u_plus_h = tuple(x + y for x, y in zip(unit(0, d), h))
    vecs.append(u_plus_h)               # d*u + h: r^2 = -2d, div = d
    vecs.append(tuple(x + y for x, y in zip(unit(0), unit(1))))    # (u+v): r^2 = 2
    vecs.append(tuple(x - y for x, y in zip(unit(0), unit(1))))    # (u-v): r^2 = -2
    vecs.append(unit(4))                # a simple root of the E8(-1) part: r^2 = -2
    vecs.append(tuple(x + y for x, y in zip(unit(0, 2), unit(1))))  # div 1, r^2 = 4
    return vecs


def reflk3_sample_check(d, samples=10**4, seed=0, box=20):
    """Sample primitive vectors of L_2d and test the biconditional:

        sigma_r acts as +-id on A_L  <=>  r^2 = +-2, or r^2 = +-2d with
        div(r) in {d, 2d}

    plus the complement-determinant formula on every reflective sample.
    Returns a report dict; `counterexamples` is expected empty.
    """
    lat = make_l2d(d)
    disc = cached_disc_group(lat)
    rng = random.Random(seed)
    n = lat.rank
    report = {"d": d, "samples": 0, "reflective": 0, "skipped_nonintegral": 0,
              "skipped_isotropic": 0, "counterexamples": [], "det_checks": 0,
              "det_mismatches": []}
    queue = _interesting_vectors(d, lat)
    produced = 0
    while produced < samples:
        if queue:
            coords = queue.pop(0)
        else:
            coords = tuple(rng.randint(-box, box) for _ in range(n))
            if not any(coords):
                continue
            g = 0
            for c in coords:
                g = gcd(g, c)
            if g > 1:
                coords = tuple(c // g for c in coords)
        produced += 1
        report["samples"] += 1
        pair = pairing_vector(lat, coords)
        norm = sum(p * c for p, c in zip(pair, coords))
        if norm == 0:
            report["skipped_isotropic"] += 1
            continue
        cs = reflection_coefficients(lat, coords)
        if cs is None:
            report["skipped_nonintegral"] += 1
            continue
        report["reflective"] += 1
        sigma = reflection(lat, coords)
        plus = _acts_as(lat, sigma, 1, disc)
        minus = _acts_as(lat, sigma, -1, disc)
        div = 0
        for p in pair:
            div = gcd(div, p)
        lhs = plus or minus
        rhs = abs(norm) == 2 or (abs(norm) == 2 * d and div in (d, 2 * d))
        if lhs != rhs:
            report["counterexamples"].append(
                {"r": list(coords), "rSquared": norm, "div": div,
                 "plus": plus, "minus": minus})
        got, predicted = orth_det_check(d, lat.vector(coords))
        report["det_checks"] += 1
        if got != predicted:
            report["det_mismatches"].append(
                {"r": list(coords), "det": got, "predicted": predicted})
    return report


def reflection_report(lat, coords):
    """JSON-ready classification of one vector: {r, rSquared, div, discAction, class}."""
    pair = pairing_vector(lat, coords)
    norm = sum(p * c for p, c in zip(pair, coords))
    div = 0
    for p in pair:
        div = gcd(div, p)
    tag = classify_reflection(lat, lat.vector(coords))
    action = {IN_TILDE_O: "id", MINUS_IN_TILDE_O: "-id",
              NEITHER: "neither", NOT_INTEGRAL: "undefined"}[tag]
    return {"r": list(coords), "rSquared": norm, "div": div,
            "discAction": action, "class": tag}
