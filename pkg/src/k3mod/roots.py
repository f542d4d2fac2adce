"""Root and fixed-norm vector enumeration for definite lattices.

The enumerator is Fincke-Pohst style: the Gram matrix is completed to a sum
of squares with rational pivots, and coordinate ranges are propagated from
the last coordinate to the first with exact bounds (integer square roots
plus an exact adjustment step, so no acceptance errors from rounding).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .lattice import IntLattice, LatticeError, LatVec, pairing_vector


class IndefiniteError(LatticeError):
    pass


class RootSystemData:
    """All norm-2 vectors of a definite lattice, closed under negation."""

    __slots__ = ("lattice", "roots", "coords")

    def __init__(self, lattice, coords):
        self.lattice = lattice
        self.coords = tuple(coords)
        self.roots = tuple(LatVec(lattice, c) for c in self.coords)

    @property
    def count(self):
        return len(self.coords)


_cholesky_cache = {}
_root_cache = {}


def _cholesky(lat):
    """(sign, pivots q_i, coefficients u[i][j]) with sign*Q(x) = sum q_i (x_i + sum_j u_ij x_j)^2."""
    cached = _cholesky_cache.get(lat.token)
    if cached is not None:
        return cached
    n = lat.rank
    for sign in (1, -1):
        a = [[Fraction(sign * x) for x in row] for row in lat.gram]
        q = [None] * n
        u = [[Fraction(0)] * n for _ in range(n)]
        ok = True
        for i in range(n):
            if a[i][i] <= 0:
                ok = False
                break
            q[i] = a[i][i]
            for j in range(i + 1, n):
                u[i][j] = a[i][j] / q[i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    a[k][l] -= q[i] * u[i][k] * u[i][l]
                    a[l][k] = a[k][l]
        if ok:
            result = (sign, q, u)
            _cholesky_cache[lat.token] = result
            return result
    raise IndefiniteError("lattice is not definite")


_scaled_cache = {}


def _scaled_form(lat):
    """Integer-scaled square completion of the definite form.

    Returns (scale L, a_i, unum, uden) such that for integer x,

        L * Q(x) = sum_i a_i * y_i^2,   y_i = uden_i * x_i + sum_{j>i} unum_i[j] x_j.

    All quantities are integers, so budget propagation needs no rationals.
    """
    cached = _scaled_cache.get(lat.token)
    if cached is not None:
        return cached
    _sign, q, u = _cholesky(lat)
    n = lat.rank
    uden = []
    unum = []
    for i in range(n):
        den = 1
        for j in range(i + 1, n):
            den = den * u[i][j].denominator // gcd(den, u[i][j].denominator)
        uden.append(den)
        unum.append([int(u[i][j] * den) for j in range(n)])
    scale = 1
    for i in range(n):
        block = q[i].denominator * uden[i] * uden[i]
        scale = scale * block // gcd(scale, block)
    a = []
    for i in range(n):
        f = scale // (q[i].denominator * uden[i] * uden[i])
        a.append(q[i].numerator * f)
    result = (scale, a, unum, uden)
    _scaled_cache[lat.token] = result
    return result


def _enumerate(lat, target, visitor, exact):
    """Visit x != 0 with Q(x) == target (exact) or 0 < Q(x) <= target.

    `visitor(coords, norm)` may return False to abort.  Q is the Gram form
    up to the internal sign flip for negative definite lattices; reported
    norms are the positive ones.  Returns the number of vectors visited.
    """
    scale, a, unum, uden = _scaled_form(lat)
    n = lat.rank
    x = [0] * n
    count = 0
    aborted = False
    total = scale * target

    def recurse(i, budget):
        # budget = scale * (target - partial sum); y = uden_i x_i + centre
        nonlocal count, aborted
        ai = a[i]
        di = uden[i]
        row = unum[i]
        centre = 0
        for j in range(i + 1, n):
            if x[j]:
                centre += row[j] * x[j]
        if i == 0:
            if exact:
                ysq, rem = divmod(budget, ai)
                if rem:
                    return
                y = isqrt(ysq)
                if y * y != ysq:
                    return
                for yy in {y, -y}:
                    xi, r = divmod(yy - centre, di)
                    if r == 0:
                        x[0] = xi
                        if any(x):
                            count += 1
                            if visitor is not None and visitor(tuple(x), target) is False:
                                aborted = True
                                return
                x[0] = 0
            else:
                ymax = isqrt(budget // ai)
                lo = -((ymax + centre) // di)
                hi = (ymax - centre) // di
                base = total - budget
                y = lo * di + centre
                for xi in range(lo, hi + 1):
                    x[0] = xi
                    norm, rem = divmod(base + ai * y * y, scale)
                    assert rem == 0
                    if norm:
                        count += 1
                        if visitor is not None and visitor(tuple(x), norm) is False:
                            aborted = True
                            return
                    y += di
                x[0] = 0
            return
        ymax = isqrt(budget // ai)
        lo = -((ymax + centre) // di)
        hi = (ymax - centre) // di
        y = lo * di + centre
        for xi in range(lo, hi + 1):
            x[i] = xi
            rem = budget - ai * y * y
            if rem >= 0:
                recurse(i - 1, rem)
                if aborted:
                    return
            y += di
        x[i] = 0

    recurse(n - 1, total)
    return count


def enumerate_norm_vectors(lat, norm, visitor=None):
    """Visit every x in L with (x, x) = norm exactly once; returns the count.

    The count equals the theta-series coefficient of the (sign-normalised)
    lattice.  An odd `norm` on an even lattice simply yields 0.
    """
    if norm < 1:
        raise LatticeError("norm must be positive")
    return _enumerate(lat, norm, visitor, exact=True)


def enumerate_up_to(lat, max_norm, visitor=None):
    """Visit every x != 0 with 0 < (x, x) <= max_norm; returns the count."""
    if max_norm < 1:
        raise LatticeError("bound must be positive")
    return _enumerate(lat, max_norm, visitor, exact=False)


def enumerate_roots(lat):
    """All vectors of norm 2 (after definite sign normalisation), cached and sorted."""
    data = _root_cache.get(lat.token)
    if data is None:
        found = []
        enumerate_norm_vectors(lat, 2, lambda coords, _n: found.append(coords))
        found.sort()
        data = RootSystemData(lat, found)
        _root_cache[lat.token] = data
    return data


def count_orth_roots(lat, x):
    """Number of roots r with (r, x) = 0; always even."""
    coords = x.coords if isinstance(x, LatVec) else tuple(x)
    if isinstance(x, LatVec) and x.lattice.token != lat.token:
        raise LatticeError("vector belongs to a different lattice")
    data = enumerate_roots(lat)
    pair = pairing_vector(lat, coords)
    n = lat.rank
    cnt = 0
    for r in data.coords:
        if sum(r[i] * pair[i] for i in range(n)) == 0:
            cnt += 1
    return cnt


def bouquet_decomposition(lat, a):
    """Split the roots meeting a fixed root `a` into A2 subsystems.

    Returns (x, triples) where x is the list of roots c with (a, c) != 0 and
    each triple is the root set {+-a, +-c, +-(a+c)} of one A2; the triples
    pairwise intersect exactly in {+-a}.
    """
    data = enumerate_roots(lat)
    acoords = a.coords if isinstance(a, LatVec) else tuple(a)
    pair = pairing_vector(lat, acoords)
    n = lat.rank
    x = [r for r in data.coords if sum(r[i] * pair[i] for i in range(n)) != 0]
    neg_a = tuple(-c for c in acoords)
    triples = []
    seen = set()
    for r in x:
        if r == tuple(acoords) or r == neg_a:
            continue
        prod = sum(r[i] * pair[i] for i in range(n))
        c = r if prod == -1 else tuple(-v for v in r)
        if c in seen:
            continue
        s = tuple(ai + ci for ai, ci in zip(acoords, c))
        group = {tuple(acoords), neg_a, c, tuple(-v for v in c), s, tuple(-v for v in s)}
        if len(group) != 6:
            raise LatticeError("degenerate A2 grouping")
        seen.update({c, tuple(-v for v in c), s, tuple(-v for v in s)})
        triples.append(frozenset(group))
    return x, triples
