"""The E8 lattice in two exact coordinate charts.

The canonical basis everywhere in this package is the Coxeter basis of
simple roots a1..a8 (chain 1-3-4-5-6-7-8 with node 2 hanging off node 4).
The second chart writes vectors in the euclidean basis e1..e8 with all
coordinates doubled, so that half-integral vectors become integral:

    a1 = (e1 + e8)/2 - (e2 + ... + e7)/2      a2 = e1 + e2
    ak = e_{k-1} - e_{k-2}   (3 <= k <= 8)

Table-style search vectors live naturally in the e-chart; root counting and
lattice arithmetic live in the simple-root chart.  Conversion both ways is
exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .lattice import LatticeError, root_lattice_e, solve_rational

# rows: doubled e-coordinates of the simple roots a1..a8
SIMPLE_ROOTS_2X = (
    (1, -1, -1, -1, -1, -1, -1, 1),
    (2, 2, 0, 0, 0, 0, 0, 0),
    (-2, 2, 0, 0, 0, 0, 0, 0),
    (0, -2, 2, 0, 0, 0, 0, 0),
    (0, 0, -2, 2, 0, 0, 0, 0),
    (0, 0, 0, -2, 2, 0, 0, 0),
    (0, 0, 0, 0, -2, 2, 0, 0),
    (0, 0, 0, 0, 0, -2, 2, 0),
)

# rows: doubled e-coordinates of the fundamental weights w1..w8 (dual basis)
WEIGHTS_2X = (
    (0, 0, 0, 0, 0, 0, 0, 4),
    (1, 1, 1, 1, 1, 1, 1, 5),
    (-1, 1, 1, 1, 1, 1, 1, 7),
    (0, 0, 2, 2, 2, 2, 2, 10),
    (0, 0, 0, 2, 2, 2, 2, 8),
    (0, 0, 0, 0, 2, 2, 2, 6),
    (0, 0, 0, 0, 0, 2, 2, 4),
    (0, 0, 0, 0, 0, 0, 2, 2),
)


def dot2x(a, b):
    """Inner product of two vectors given in doubled e-coordinates."""
    s = sum(x * y for x, y in zip(a, b))
    if s % 4:
        raise LatticeError("non-integral inner product: vectors not both in E8")
    return s // 4


def in_e8_2x(vec2x):
    """Membership test for a doubled e-coordinate vector."""
    pars = {c & 1 for c in vec2x}
    return len(pars) == 1 and sum(vec2x) % 4 == 0


@lru_cache(maxsize=1)
def lattice():
    """The shared E8 lattice instance (Gram = Cartan matrix of the Coxeter basis)."""
    return root_lattice_e(8)


@lru_cache(maxsize=1)
def _alpha_matrix_inverse():
    # columns of m are the simple roots; v = m^{-1} * (e-coords)
    m = [[Fraction(SIMPLE_ROOTS_2X[j][i], 2) for j in range(8)] for i in range(8)]
    n = 8
    cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    inv = solve_rational(m, cols)
    return tuple(tuple(inv[i][j] for j in range(n)) for i in range(n))


def alpha_from_2x(vec2x):
    """Simple-root coordinates of a doubled e-coordinate vector (must lie in E8)."""
    if not in_e8_2x(vec2x):
        raise LatticeError(f"{vec2x} is not in E8")
    inv = _alpha_matrix_inverse()
    out = []
    for row in inv:
        c = sum(r * Fraction(v, 2) for r, v in zip(row, vec2x))
        assert c.denominator == 1
        out.append(int(c))
    return tuple(out)


def to_2x(alpha_coords):
    """Doubled e-coordinates of a vector given in simple-root coordinates."""
    out = [0] * 8
    for c, root in zip(alpha_coords, SIMPLE_ROOTS_2X):
        if c:
            for i in range(8):
                out[i] += c * root[i]
    return tuple(out)


@lru_cache(maxsize=1)
def roots_2x():
    """All 240 roots in doubled e-coordinates, lexicographically sorted.

    112 integral roots +-e_i +- e_j and 128 half-integral roots
    (+-e1 +- ... +- e8)/2 with an even number of minus signs.
    """
    out = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (2, -2):
                for sj in (2, -2):
                    v = [0] * 8
                    v[i], v[j] = si, sj
                    out.append(tuple(v))
    for mask in range(256):
        if bin(mask).count("1") % 2 == 0:
            out.append(tuple(-1 if mask >> i & 1 else 1 for i in range(8)))
    out.sort()
    return tuple(out)


def count_orth_roots_2x(vec2x):
    """Number of roots orthogonal to a vector, both in doubled e-coordinates."""
    n = 0
    for r in roots_2x():
        if sum(x * y for x, y in zip(r, vec2x)) == 0:
            n += 1
    return n


@lru_cache(maxsize=1)
def weight_gram():
    """Gram matrix of the fundamental weights (the inverse Cartan matrix)."""
    return tuple(tuple(dot2x(a, b) for b in WEIGHTS_2X) for a in WEIGHTS_2X)
