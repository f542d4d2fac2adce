"""Integral lattices given by Gram matrices, with exact arithmetic throughout.

Everything here works over Z (or Q for dual objects) using arbitrary-precision
integers and fractions.  No floating point: discriminant groups, divisors and
elementary divisors are integrality statements and are computed as such.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from math import gcd, lcm


class LatticeError(ValueError):
    pass


class ParseError(LatticeError):
    """Raised on malformed lattice expressions; carries the failing position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# small exact linear algebra over Z / Q
# ---------------------------------------------------------------------------

def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    assert len(a[0]) == inner
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            s = ai[k]
            if s:
                bk = b[k]
                for j in range(cols):
                    oi[j] += s * bk[j]
    return out


def mat_vec(a, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def det_bareiss(mat):
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_rational(a, rhs_cols):
    """Solve a*X = rhs for X over Q; `a` square nonsingular, rhs a list of columns."""
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(c[i]) for c in rhs_cols]
         for i in range(n)]
    w = n + len(rhs_cols)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise LatticeError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [[m[i][n + j] for j in range(len(rhs_cols))] for i in range(n)]


def invert_rational(a):
    n = len(a)
    cols = solve_rational(a, [[1 if i == j else 0 for i in range(n)] for j in range(n)])
    return cols


def invert_unimodular(a):
    """Exact integer inverse of a unimodular integer matrix."""
    inv = invert_rational(a)
    out = []
    for row in inv:
        r = []
        for x in row:
            if x.denominator != 1:
                raise LatticeError("matrix is not unimodular")
            r.append(int(x))
        out.append(r)
    return out


def smith_normal_form(mat):
    """Smith normal form with transforms: returns (d, u, v) with u*mat*v = d.

    Deterministic pivoting: smallest absolute nonzero entry, ties broken
    row-major, so generator lifts derived from `u` are reproducible.
    """
    a = [list(row) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, piv = x, (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:  # remainder becomes the new, smaller pivot
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the remaining block
            witness = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t]:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            row_op(t, witness, -1)  # fold the offending row into row t
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def kernel_basis(mat):
    """Saturated basis of {x in Z^n : mat * x = 0}, as columns."""
    d, _u, v = smith_normal_form(mat)
    rows = len(mat)
    cols = len(mat[0])
    rank = sum(1 for i in range(min(rows, cols)) if d[i][i] != 0)
    return [[v[i][j] for i in range(cols)] for j in range(rank, cols)]


def signature_of(gram):
    """Exact signature (n_plus, n_minus) of a nondegenerate symmetric matrix."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next(j for j in range(k + 1, n) if a[k][j] != 0)
                for col in range(n):
                    a[k][col] += a[j][col]
                for r in a:
                    r[k] += r[j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                for col in range(n):
                    a[i][col] -= f * a[k][col]
                for r in a:
                    r[i] -= f * r[k]
    return pos, neg


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

_token_counter = itertools.count(1)


class IntLattice:
    """An integral lattice presented by a symmetric Gram matrix.

    Instances are immutable after construction.  Identity (for vector
    ownership and caches) is the `token`, not structural Gram equality:
    distinct isometric lattices must not silently interoperate.
    """

    __slots__ = ("gram", "rank", "name", "token", "_det", "_sig")

    def __init__(self, gram, name=None):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix must be symmetric")
        det = det_bareiss(g)
        if det == 0:
            raise LatticeError("Gram matrix is singular")
        self.gram = g
        self.rank = n
        self.name = name
        self.token = next(_token_counter)
        self._det = det
        self._sig = None

    @property
    def det(self):
        return self._det

    @property
    def signature(self):
        if self._sig is None:
            self._sig = signature_of(self.gram)
        return self._sig

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def vector(self, coords):
        return LatVec(self, coords)

    def dual_vector(self, coords):
        return DualVec(self, coords)

    def __repr__(self):
        label = self.name or f"rank-{self.rank} lattice"
        return f"IntLattice({label}, det={self.det})"


class LatVec:
    """Integer coordinate vector relative to the basis of its owning lattice."""

    __slots__ = ("lattice", "coords")

    def __init__(self, lattice, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != lattice.rank:
            raise LatticeError("coordinate length does not match lattice rank")
        self.lattice = lattice
        self.coords = coords

    def norm(self):
        return inner(self.lattice, self, self)

    def is_zero(self):
        return not any(self.coords)

    def __neg__(self):
        return LatVec(self.lattice, tuple(-c for c in self.coords))

    def __eq__(self, other):
        return (isinstance(other, LatVec) and other.lattice.token == self.lattice.token
                and other.coords == self.coords)

    def __hash__(self):
        return hash((self.lattice.token, self.coords))

    def __repr__(self):
        return f"LatVec{self.coords}"


class DualVec:
    """Rational vector (coordinates in the lattice basis) lying in the dual lattice."""

    __slots__ = ("lattice", "coords")

    def __init__(self, lattice, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != lattice.rank:
            raise LatticeError("coordinate length does not match lattice rank")
        # membership in the dual: pairing with every basis vector is integral
        for row in lattice.gram:
            if sum(r * c for r, c in zip(row, coords)).denominator != 1:
                raise LatticeError("vector does not pair integrally with the lattice")
        self.lattice = lattice
        self.coords = coords

    def norm(self):
        g = self.lattice.gram
        c = self.coords
        return sum(c[i] * g[i][j] * c[j] for i in range(len(c)) for j in range(len(c)))

    def __repr__(self):
        return f"DualVec{tuple(str(c) for c in self.coords)}"


class DiscGroup:
    """The finite group A_L = L^vee / L as cyclic invariant factors.

    `q_values` are the discriminant-form values (g, g) of the generator lifts,
    reduced into [0, 2); only defined when the lattice is even.
    """

    __slots__ = ("lattice", "invariant_factors", "generator_lifts", "q_values")

    def __init__(self, lattice, invariant_factors, generator_lifts, q_values):
        self.lattice = lattice
        self.invariant_factors = tuple(invariant_factors)
        self.generator_lifts = tuple(generator_lifts)
        self.q_values = None if q_values is None else tuple(q_values)

    @property
    def order(self):
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self):
        return not self.invariant_factors

    def is_cyclic(self):
        return len(self.invariant_factors) <= 1

    def __repr__(self):
        return f"DiscGroup{self.invariant_factors}"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def hyperbolic_plane(scale=1):
    name = "U" if scale == 1 else f"U({scale})"
    return IntLattice([[0, scale], [scale, 0]], name=name)


def rank_one(k):
    if k == 0:
        raise LatticeError("rank-1 lattice needs a nonzero norm")
    return IntLattice([[k]], name=f"<{k}>")


def root_lattice_a(n):
    if n < 1:
        raise LatticeError("A(n) needs n >= 1")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -1
    return IntLattice(g, name=f"A{n}")


def root_lattice_d(n):
    if n < 2:
        raise LatticeError("D(n) needs n >= 2")
    # chain e_i - e_{i+1} plus the fork e_{n-1} + e_n
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i in range(n - 2):
        g[i][i + 1] = g[i + 1][i] = -1
    if n >= 3:
        g[n - 3][n - 1] = g[n - 1][n - 3] = -1
    return IntLattice(g, name=f"D{n}")


_E8_EDGES = ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8))


def root_lattice_e(n):
    """E6/E7/E8 on the Coxeter simple-root basis (chain 1-3-4-5-6-7-8, node 2 on 4)."""
    if n not in (6, 7, 8):
        raise LatticeError("E(n) needs n in {6, 7, 8}")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i, j in _E8_EDGES:
        if i <= n and j <= n:
            g[i - 1][j - 1] = g[j - 1][i - 1] = -1
    return IntLattice(g, name=f"E{n}")


def make_named(name, *params):
    if name == "U":
        return hyperbolic_plane(*params) if params else hyperbolic_plane()
    if name == "A":
        return root_lattice_a(params[0])
    if name == "D":
        return root_lattice_d(params[0])
    if name == "E":
        lat = root_lattice_e(params[0])
        if len(params) > 1 and params[1] != 1:
            return rescale(lat, params[1])
        return lat
    raise LatticeError(f"unknown lattice name {name!r}")


def direct_sum(*lattices):
    if not lattices:
        raise LatticeError("direct sum of nothing")
    n = sum(lat.rank for lat in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                g[off + i][off + j] = lat.gram[i][j]
        off += lat.rank
    name = " + ".join(lat.name or "?" for lat in lattices)
    return IntLattice(g, name=name)


def rescale(lat, t):
    if t == 0:
        raise LatticeError("rescaling by zero")
    g = [[t * x for x in row] for row in lat.gram]
    return IntLattice(g, name=f"{lat.name or '?'}({t})")


def make_l2d(d):
    """The signature (2, 17) lattice 2U + 2E8(-1) + <-2d>; the <-2d> generator is last."""
    if d < 1:
        raise LatticeError("polarisation degree d must be positive")
    lat = parse_lattice_expr(f"2U+2E8(-1)+<{-2 * d}>")
    lat.name = f"L_{2 * d}"
    return lat


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _own(lat, vec):
    if vec.lattice.token != lat.token:
        raise LatticeError("vector belongs to a different lattice")
    return vec.coords


def inner(lat, x, y):
    cx = _own(lat, x)
    cy = _own(lat, y)
    g = lat.gram
    return sum(cx[i] * g[i][j] * cy[j] for i in range(lat.rank) for j in range(lat.rank))


def pairing_vector(lat, coords):
    """All pairings (x, b_j) of x with the lattice basis, i.e. gram * coords."""
    return [sum(row[j] * coords[j] for j in range(lat.rank)) for row in lat.gram]


def divisor(lat, x):
    """Positive generator of the pairing ideal (x, L); x/div(x) is primitive in the dual."""
    coords = _own(lat, x) if isinstance(x, LatVec) else tuple(x)
    if not any(coords):
        raise LatticeError("divisor of the zero vector")
    d = 0
    for p in pairing_vector(lat, coords):
        d = gcd(d, p)
    return d


def is_primitive(lat, x):
    coords = _own(lat, x) if isinstance(x, LatVec) else tuple(x)
    g = 0
    for c in coords:
        g = gcd(g, c)
    return g == 1


def disc_group(lat):
    """Discriminant group via Smith normal form of the Gram matrix.

    Generator lifts are elements of the dual realising each cyclic factor;
    they are reproducible thanks to the deterministic SNF pivoting.
    """
    d, u, _v = smith_normal_form(lat.gram)
    n = lat.rank
    u_inv = invert_unimodular(u)
    factors = []
    lifts = []
    for i in range(n):
        if d[i][i] > 1:
            factors.append(d[i][i])
            col = [u_inv[r][i] for r in range(n)]
            lift = solve_rational(lat.gram, [col])
            lifts.append(DualVec(lat, [row[0] for row in lift]))
    q_values = None
    if lat.is_even():
        q_values = [lift.norm() % 2 for lift in lifts]
    return DiscGroup(lat, factors, lifts, q_values)


def orth_complement(lat, vectors):
    """Primitive orthogonal complement of the span of `vectors`, with embedding.

    Returns (sublattice, basis) where basis[i] is the coordinate vector in
    `lat` of the i-th basis vector of the complement.  The result is
    saturated: its saturation in `lat` equals itself.
    """
    rows = []
    for vec in vectors:
        coords = _own(lat, vec) if isinstance(vec, LatVec) else tuple(vec)
        rows.append(pairing_vector(lat, coords))
    if len(rows) != len({tuple(r) for r in rows}) or _rank_of(rows) != len(rows):
        raise LatticeError("vectors are not linearly independent")
    basis = kernel_basis(rows)
    if not basis:
        raise LatticeError("the vectors span the whole lattice")
    g = lat.gram
    n = lat.rank
    k = len(basis)
    sub = [[sum(basis[a][i] * g[i][j] * basis[b][j] for i in range(n) for j in range(n))
            for b in range(k)] for a in range(k)]
    return IntLattice(sub), basis


def _rank_of(int_rows):
    d, _u, _v = smith_normal_form([list(r) for r in int_rows])
    return sum(1 for i in range(min(len(int_rows), len(int_rows[0]))) if d[i][i] != 0)


def isotropic_elementary_divisors(lat, basis_pair):
    """Elementary divisors (delta, delta*e) of a primitive rank-2 isotropic sublattice.

    Computed as the SNF of the full 2 x n pairing matrix of the sublattice
    against the ambient basis; returns (delta, e).
    """
    if len(basis_pair) != 2:
        raise LatticeError("need exactly two basis vectors")
    coords = [_own(lat, v) if isinstance(v, LatVec) else tuple(v) for v in basis_pair]
    for a in range(2):
        for b in range(2):
            x, y = coords[a], coords[b]
            s = sum(x[i] * lat.gram[i][j] * y[j]
                    for i in range(lat.rank) for j in range(lat.rank))
            if s != 0:
                raise LatticeError("sublattice is not totally isotropic")
    d, _u, _v = smith_normal_form([list(c) for c in coords])
    if d[0][0] != 1 or d[1][1] != 1:
        raise LatticeError("sublattice is not primitive")
    pair = [pairing_vector(lat, c) for c in coords]
    d, _u, _v = smith_normal_form(pair)
    delta, second = d[0][0], d[1][1]
    if delta == 0 or second == 0 or second % delta:
        raise LatticeError("degenerate pairing")  # impossible for nondegenerate L
    return delta, second // delta


def isotropic_subgroups_cyclic(lat, bound=10**6):
    """True iff every isotropic subgroup of (A_L, q_L) is cyclic.

    It suffices to rule out an isotropic (Z/p)^2 for each prime p dividing
    the exponent, since a non-cyclic group contains one.
    """
    disc = disc_group(lat)
    if disc.order > bound:
        raise LatticeError(f"discriminant group of order {disc.order} exceeds bound {bound}")
    if disc.is_cyclic():
        return True
    factors = disc.invariant_factors
    lifts = disc.generator_lifts
    k = len(factors)
    gram_q = [[_dual_pairing(lat, lifts[i], lifts[j]) for j in range(k)] for i in range(k)]

    def qval(elem):
        tot = Fraction(0)
        for i in range(k):
            if elem[i]:
                tot += elem[i] * elem[i] * gram_q[i][i]
                for j in range(i + 1, k):
                    tot += 2 * elem[i] * elem[j] * gram_q[i][j]
        return tot % 2

    exponent = disc.exponent
    for p in _prime_divisors(exponent):
        gens = [i for i in range(k) if factors[i] % p == 0]
        if len(gens) < 2:
            continue
        # p-torsion elements, coordinates in the chosen generators
        pts = []
        for combo in itertools.product(range(p), repeat=len(gens)):
            if not any(combo):
                continue
            elem = [0] * k
            for g, c in zip(gens, combo):
                elem[g] = c * (factors[g] // p)
            pts.append(tuple(elem))
        if len(pts) > 10**5:
            raise LatticeError("p-torsion too large to enumerate")
        iso = [e for e in pts if qval(e) == 0]
        for a in range(len(iso)):
            for b in range(a + 1, len(iso)):
                x, y = iso[a], iso[b]
                span = set()
                for i in range(p):
                    for j in range(p):
                        span.add(tuple((i * xi + j * yi) % f for xi, yi, f in zip(x, y, factors)))
                if len(span) != p * p:
                    continue  # y in <x>: cyclic span
                if all(qval(e) == 0 for e in span):
                    return False
    return True


def _dual_pairing(lat, a, b):
    g = lat.gram
    n = lat.rank
    return sum(a.coords[i] * g[i][j] * b.coords[j] for i in range(n) for j in range(n))


def _prime_divisors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# expression grammar
# ---------------------------------------------------------------------------
#   expr := term ("+" term)*
#   term := [multiplicity] atom
#   atom := "U" ["(" int ")"] | "A(" n ")" | "D(" n ")" | "E" n ["(" int ")"] | "<" int ">"
# Whitespace is ignored; the scaling suffix "(t)" multiplies the Gram by t.

_TOKEN_RE = re.compile(r"\s*(\d+|[UADE<>()+-])")


def parse_lattice_expr(text):
    parser = _ExprParser(text)
    lat = parser.parse()
    lat.name = re.sub(r"\s+", "", text)
    return lat


class _ExprParser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch):
        if self._peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def _int(self):
        self._skip_ws()
        m = re.match(r"-?\d+", self.text[self.pos:])
        if not m:
            raise ParseError("expected an integer", self.pos)
        self.pos += m.end()
        return int(m.group())

    def parse(self):
        parts = [self._term()]
        while self._peek() == "+":
            self.pos += 1
            parts.append(self._term())
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError("trailing input", self.pos)
        flat = [lat for mult, lat in parts for _ in range(mult)]
        return flat[0] if len(flat) == 1 else direct_sum(*flat)

    def _term(self):
        mult = 1
        self._skip_ws()
        m = re.match(r"\d+", self.text[self.pos:])
        if m:
            mult = int(m.group())
            if mult < 1:
                raise ParseError("multiplicity must be positive", self.pos)
            self.pos += m.end()
        return mult, self._atom()

    def _atom(self):
        ch = self._peek()
        start = self.pos
        if ch == "U":
            self.pos += 1
            scale = self._opt_scale()
            return hyperbolic_plane(scale)
        if ch in "AD":
            self.pos += 1
            self._expect("(")
            n = self._int()
            self._expect(")")
            try:
                return root_lattice_a(n) if ch == "A" else root_lattice_d(n)
            except LatticeError as exc:
                raise ParseError(str(exc), start) from None
        if ch == "E":
            self.pos += 1
            n = self._int()
            if n not in (6, 7, 8):
                raise ParseError("E rank must be 6, 7 or 8", start)
            lat = root_lattice_e(n)
            scale = self._opt_scale()
            return lat if scale == 1 else rescale(lat, scale)
        if ch == "<":
            self.pos += 1
            k = self._int()
            self._expect(">")
            if k == 0:
                raise ParseError("<0> is degenerate", start)
            return rank_one(k)
        raise ParseError("expected a lattice atom", self.pos)

    def _opt_scale(self):
        if self._peek() == "(":
            self.pos += 1
            t = self._int()
            self._expect(")")
            if t == 0:
                raise ParseError("scale must be nonzero", self.pos)
            return t
        return 1
