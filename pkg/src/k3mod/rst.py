"""Quotient-singularity arithmetic: fractional eigenvalue sums, cyclotomic
decompositions of finite-order integer matrices, and quasi-reflection tests.

The sum Sigma(g) of fractional eigenvalue exponents decides canonicity of a
cyclic quotient singularity; c_min(d) bounds the contribution of one
irreducible rational summand.  Exponents are always recovered from the
cyclotomic factorisation of the characteristic polynomial, never from a
numerical eigensolver.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from .lattice import identity_matrix, mat_mul


class EigenExponents:
    """Eigenvalues zeta^{a_1}, ..., zeta^{a_n} of an order-m map, zeta = e^(2 pi i/m)."""

    __slots__ = ("order", "exponents")

    def __init__(self, order, exponents):
        if order < 1:
            raise ValueError("order must be positive")
        exponents = tuple(int(a) for a in exponents)
        if any(a < 0 or a >= order for a in exponents):
            raise ValueError("exponents must satisfy 0 <= a < order")
        self.order = order
        self.exponents = exponents

    def __repr__(self):
        return f"EigenExponents(m={self.order}, a={self.exponents})"


def sigma_rst(e):
    """Sigma(g) = sum a_i / m as an exact rational."""
    return sum((Fraction(a, e.order) for a in e.exponents), Fraction(0))


def sigma_prime(e, l):
    """Modified sum for g of order 2k whose k-th power is a quasi-reflection.

    The last exponent is the odd one; the class of g^l modulo the reflection
    has exponent sum {l a_n / k} + sum_{i<n} {l a_i / 2k}.
    """
    m = e.order
    if m % 2:
        raise ValueError("order must be even (g^k is an involution)")
    k = m // 2
    if not 1 <= l < k:
        raise ValueError("l must satisfy 1 <= l < k")
    if e.exponents[-1] % 2 == 0 or any(a % 2 for a in e.exponents[:-1]):
        raise ValueError("expected even exponents with a single odd final slot")
    total = Fraction(l * e.exponents[-1], k) % 1
    for a in e.exponents[:-1]:
        total += Fraction(l * a, 2 * k) % 1
    return total


def is_quasi_reflection(e):
    """Exactly one nontrivial eigenvalue."""
    return sum(1 for a in e.exponents if a) == 1


def is_reflection(e):
    """Quasi-reflection whose nontrivial eigenvalue is -1."""
    nontrivial = [a for a in e.exponents if a]
    return len(nontrivial) == 1 and 2 * nontrivial[0] == e.order


# ---------------------------------------------------------------------------
# c_min
# ---------------------------------------------------------------------------

def c_min_with_argmin(d):
    """min over shifts a of sum_{0<b<d, (b,d)=1} {(b+a)/d}, with the smallest
    shift attaining it."""
    if d < 3:
        raise ValueError("c_min needs d >= 3")
    coprime = [b for b in range(1, d) if gcd(b, d) == 1]
    best = None
    best_a = None
    for a in range(d):
        s = sum((b + a) % d for b in coprime)
        if best is None or s < best:
            best, best_a = s, a
    return Fraction(best, d), best_a


def c_min(d):
    return c_min_with_argmin(d)[0]


# ---------------------------------------------------------------------------
# cyclotomic decomposition
# ---------------------------------------------------------------------------

def euler_phi(n):
    out = n
    p = 2
    while p * p <= n:
        if n % p == 0:
            out -= out // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out -= out // n
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(a[i + len(b) - 1], b[-1])
        if r:
            return None, a
        out[i] = q
        if q:
            for j, y in enumerate(b):
                a[i + j] -= q * y
    return out, a


_cyclo_cache = {1: [-1, 1]}


def cyclotomic_poly(d):
    """Coefficients (low degree first) of the d-th cyclotomic polynomial."""
    if d not in _cyclo_cache:
        num = [0] * d + [1]
        num[0] = -1  # x^d - 1
        for e in range(1, d):
            if d % e == 0:
                num, rem = _poly_divmod(num, cyclotomic_poly(e))
                assert num is not None and not any(rem)
        _cyclo_cache[d] = num
    return _cyclo_cache[d]


def matrix_order(g, cap=10**4):
    """Multiplicative order of an integer matrix, or raises past the cap."""
    n = len(g)
    ident = identity_matrix(n)
    power = [row[:] for row in g]
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = mat_mul(power, g)
    raise ValueError(f"matrix order exceeds the cap {cap}")


def char_poly(g):
    """Characteristic polynomial det(xI - g), low degree first, exact integers."""
    n = len(g)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = identity_matrix(n)
    for k in range(1, n + 1):
        m = mat_mul(g, m)
        tr = sum(m[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] += c
    return coeffs


class CycloDecomp:
    """Multiplicities nu_d of cyclotomic factors in the characteristic polynomial."""

    __slots__ = ("order", "rank", "multiplicities")

    def __init__(self, order, rank, multiplicities):
        self.order = order
        self.rank = rank
        self.multiplicities = dict(multiplicities)
        assert sum(v * euler_phi(d) for d, v in self.multiplicities.items()) == rank

    def eigen_exponents(self):
        """All eigenvalue exponents on the scale of the element order."""
        m = self.order
        exps = []
        for d in sorted(self.multiplicities):
            prim = [k * (m // d) for k in range(d) if gcd(k, d) == 1] if d > 1 else [0]
            exps.extend(sorted(prim) * self.multiplicities[d])
        return EigenExponents(m, sorted(exps))

    def __repr__(self):
        return f"CycloDecomp(order={self.order}, {self.multiplicities})"


def cyclo_decompose(g, order_cap=10**4):
    """Factor the characteristic polynomial of a finite-order integer matrix
    into cyclotomic polynomials by exact trial division."""
    order = matrix_order(g, order_cap)
    poly = char_poly(g)
    mult = {}
    for d in sorted(_divisors_of(order)):
        cp = cyclotomic_poly(d)
        while len(poly) >= len(cp):
            quo, rem = _poly_divmod(poly, cp)
            if quo is None or any(rem):
                break
            mult[d] = mult.get(d, 0) + 1
            poly = quo
    if poly != [1]:
        raise ArithmeticError("characteristic polynomial is not a product of "
                              "cyclotomics; the matrix cannot have finite order")
    return CycloDecomp(order, len(g), mult)


def _divisors_of(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


# ---------------------------------------------------------------------------
# finite verifications
# ---------------------------------------------------------------------------

def bigphi_verify(r_max):
    """For every r <= r_max with phi(r) >= 6 and every admissible first
    residue k1: check sum_{i>=3} {(k1 + k_i)/r} >= 1 by direct evaluation.

    Returns a report with the minimum attained and any violations (none
    expected).
    """
    if r_max < 7:
        raise ValueError("r_max must be at least 7")
    checked = 0
    min_sum = None
    min_at = None
    violations = []
    for r in range(7, r_max + 1):
        units = [k for k in range(1, r) if gcd(k, r) == 1]
        if len(units) < 6:
            continue
        for k1 in units:
            k2 = r - k1
            rest = [k for k in units if k != k1 and k != k2]
            s = sum(Fraction((k1 + ki) % r, r) for ki in rest)
            checked += 1
            if min_sum is None or s < min_sum:
                min_sum, min_at = s, (r, k1)
            if s < 1:
                violations.append({"r": r, "k1": k1, "sum": str(s)})
    return {"checked": checked, "min_sum": min_sum, "min_at": min_at,
            "violations": violations}


def toric_order2_check(g, order_cap=10**4):
    """Consistency report for a finite-order integer matrix acting on a torus.

    Verifies that an integral quasi-reflection is an honest reflection (the
    nontrivial eigenvalue is forced to -1 by trace integrality, so the
    element has order 2) and that otherwise Sigma(g) >= 1 unless g is the
    identity.
    """
    decomp = cyclo_decompose(g, order_cap)
    exps = decomp.eigen_exponents()
    sigma = sigma_rst(exps)
    qref = is_quasi_reflection(exps)
    report = {
        "order": decomp.order,
        "decomposition": dict(sorted(decomp.multiplicities.items())),
        "sigma": sigma,
        "is_quasi_reflection": qref,
        "is_reflection": is_reflection(exps),
        "consistent": True,
    }
    if qref:
        if not is_reflection(exps) or decomp.order != 2:
            report["consistent"] = False
    elif decomp.order > 1 and sigma < 1:
        report["consistent"] = False
    return report
