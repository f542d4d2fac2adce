import random

import pytest
from fractions import Fraction

from k3mod import lattice as lt
from k3mod.lattice import (
    LatticeError, ParseError, direct_sum, disc_group, divisor, inner,
    isotropic_elementary_divisors, isotropic_subgroups_cyclic, make_l2d,
    make_named, orth_complement, parse_lattice_expr, rescale,
    smith_normal_form,
)


def test_named_constructors():
    u = make_named("U")
    assert u.gram == ((0, 1), (1, 0))
    e8 = make_named("E", 8)
    assert e8.rank == 8 and e8.det == 1 and e8.signature == (8, 0)
    assert all(e8.gram[i][i] == 2 for i in range(8))
    d6 = make_named("D", 6)
    assert d6.det == 4
    assert make_named("A", 2).det == 3
    with pytest.raises(LatticeError):
        make_named("E", 5)
    with pytest.raises(LatticeError):
        make_named("Q")


def test_inner_products():
    e8 = make_named("E", 8)
    alpha2 = e8.vector((0, 1, 0, 0, 0, 0, 0, 0))
    assert inner(e8, alpha2, alpha2) == 2
    u = make_named("U")
    iso = u.vector((1, 0))
    assert inner(u, iso, iso) == 0
    m10 = parse_lattice_expr("<-10>")
    g = m10.vector((1,))
    assert inner(m10, g, g) == -10


def test_vectors_do_not_cross_lattices():
    u1 = make_named("U")
    u2 = make_named("U")
    v = u1.vector((1, 0))
    with pytest.raises(LatticeError):
        inner(u2, v, v)


def test_direct_sum_and_rescale():
    u = make_named("U")
    uu = direct_sum(u, u)
    assert uu.rank == 4 and uu.det == 1
    u2 = rescale(u, 2)
    assert u2.gram == ((0, 2), (2, 0)) and u2.det == -4
    with pytest.raises(LatticeError):
        rescale(u, 0)


def test_l2d_shape():
    # 2U + 2E8(-1) + <-2d> has rank 21 and signature (2, 19)
    lat = make_l2d(1)
    assert lat.rank == 21
    assert lat.det == -2
    assert lat.signature == (2, 19)
    lat5 = parse_lattice_expr("2U+2E8(-1)+<-10>")
    assert lat5.det == -10 and lat5.signature == (2, 19)


def test_divisor():
    u = make_named("U")
    assert divisor(u, u.vector((1, 0))) == 1
    m6 = parse_lattice_expr("<-6>")
    assert divisor(m6, m6.vector((1,))) == 6
    with pytest.raises(LatticeError):
        divisor(u, u.vector((0, 0)))


def test_divisor_divides_norm_for_reflective_vectors():
    # div(r) | r^2 | 2 div(r) whenever the reflection preserves the lattice
    from k3mod.reflective import reflection_coefficients
    lat = parse_lattice_expr("U+<-4>")
    rng = random.Random(7)
    seen = 0
    for _ in range(4000):
        coords = tuple(rng.randint(-6, 6) for _ in range(lat.rank))
        if not any(coords):
            continue
        vec = lat.vector(coords)
        norm = vec.norm()
        if norm == 0:
            continue
        if reflection_coefficients(lat, coords) is None:
            continue
        d = divisor(lat, vec)
        assert norm % d == 0 and (2 * d) % norm == 0
        seen += 1
    assert seen > 50
    l2d = make_l2d(3)
    n = l2d.rank
    for coords in ([1, -1] + [0] * (n - 2), [0] * (n - 1) + [1],
                   [3] + [0] * (n - 2) + [1]):
        vec = l2d.vector(coords)
        assert reflection_coefficients(l2d, tuple(coords)) is not None
        d = divisor(l2d, vec)
        norm = vec.norm()
        assert norm % d == 0 and (2 * d) % abs(norm) == 0


def test_disc_group_e8_trivial():
    disc = disc_group(make_named("E", 8))
    assert disc.is_trivial() and disc.order == 1 and disc.exponent == 1


@pytest.mark.parametrize("d", [1, 2, 3, 5, 12, 20])
def test_disc_group_l2d(d):
    disc = disc_group(make_l2d(d))
    assert disc.invariant_factors == (2 * d,)
    # generator q-value is -1/(2d) reduced mod 2
    assert disc.q_values[0] == Fraction(-1, 2 * d) % 2


def test_disc_group_u2():
    disc = disc_group(parse_lattice_expr("U(2)"))
    assert disc.invariant_factors == (2, 2)
    assert all(q.denominator == 1 for q in disc.q_values)


def test_disc_order_is_det():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 4)
        while True:
            g = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    g[i][j] = g[j][i] = rng.randint(-3, 3)
                g[i][i] = 2 * rng.randint(-2, 2)
            try:
                lat = lt.IntLattice(g)
                break
            except LatticeError:
                continue
        disc = disc_group(lat)
        assert disc.order == abs(lat.det)


def test_smith_normal_form_transforms():
    from k3mod.lattice import mat_mul, det_bareiss
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    d, u, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == d
    assert abs(det_bareiss(u)) == 1 and abs(det_bareiss(v)) == 1
    assert [d[i][i] for i in range(3)] == [2, 6, 12]
    rng = random.Random(17)
    for _ in range(20):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        d, u, v = smith_normal_form(m)
        assert mat_mul(mat_mul(u, m), v) == d
        assert abs(det_bareiss(u)) == 1 and abs(det_bareiss(v)) == 1
        diag = [d[i][i] for i in range(min(rows, cols))]
        for a, b in zip(diag, diag[1:]):
            assert (b % a == 0) if a else b == 0


def test_orth_complement_in_e8():
    from k3mod import roots
    e8 = make_named("E", 8)
    a2 = e8.vector((0, 1, 0, 0, 0, 0, 0, 0))
    e7, basis = orth_complement(e8, [a2])
    assert e7.rank == 7 and abs(e7.det) == 2
    assert roots.enumerate_roots(e7).count == 126
    # an A2 inside E8: two adjacent simple roots
    e6, _ = orth_complement(e8, [(0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1, 0, 0)])
    assert e6.rank == 6 and abs(e6.det) == 3
    assert roots.enumerate_roots(e6).count == 72
    # an A3: a chain of three simple roots
    d5, _ = orth_complement(e8, [(0, 1, 0, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0, 0, 0),
                                 (0, 0, 0, 0, 1, 0, 0, 0)])
    assert d5.rank == 5 and abs(d5.det) == 4
    assert roots.enumerate_roots(d5).count == 40


def test_orth_complement_is_primitive():
    e8 = make_named("E", 8)
    _sub, basis = orth_complement(e8, [(0, 1, 0, 0, 0, 0, 0, 0)])
    cols = [list(b) for b in basis]
    d, _u, _v = smith_normal_form(cols)
    divisors = [d[i][i] for i in range(min(len(cols), 8))]
    assert all(x == 1 for x in divisors if x)


def test_orth_complement_errors():
    u = make_named("U")
    with pytest.raises(LatticeError):
        orth_complement(u, [(1, 0), (0, 1)])
    with pytest.raises(LatticeError):
        orth_complement(u, [(1, 0), (2, 0)])


def test_isotropic_elementary_divisors():
    l2u = parse_lattice_expr("2U")
    assert isotropic_elementary_divisors(l2u, [(1, 0, 0, 0), (0, 0, 1, 0)]) == (1, 1)
    # d = 4 = e^2 with e = 2: w = 2 u2 + 2 v2 + h is isotropic of divisor 2
    lat = parse_lattice_expr("2U+<-8>")
    w = (0, 0, 2, 2, 1)
    assert lat.vector(w).norm() == 0
    assert divisor(lat, lat.vector(w)) == 2
    assert isotropic_elementary_divisors(lat, [(1, 0, 0, 0, 0), w]) == (1, 2)
    # non-cyclic H_E forces delta > 1
    uu2 = parse_lattice_expr("U(2)+U(2)")
    delta, e = isotropic_elementary_divisors(uu2, [(1, 0, 0, 0), (0, 0, 1, 0)])
    assert delta > 1 and (delta, delta * e) == (2, 2)


def test_isotropic_elementary_divisors_rejects():
    l2u = parse_lattice_expr("2U")
    with pytest.raises(LatticeError):
        isotropic_elementary_divisors(l2u, [(1, 0, 0, 0), (0, 1, 0, 0)])
    with pytest.raises(LatticeError):
        isotropic_elementary_divisors(l2u, [(2, 0, 0, 0), (0, 0, 2, 0)])


def test_isotropic_subgroups_cyclic():
    assert isotropic_subgroups_cyclic(make_l2d(5)) is True
    assert isotropic_subgroups_cyclic(make_named("E", 8)) is True
    assert isotropic_subgroups_cyclic(parse_lattice_expr("U(2)+U(2)")) is False
    with pytest.raises(LatticeError):
        isotropic_subgroups_cyclic(make_l2d(5), bound=3)


def test_parser():
    lat = parse_lattice_expr("2U+2E8(-1)+<-10>")
    assert lat.rank == 21 and lat.det == -10
    assert parse_lattice_expr("U(2)").gram == ((0, 2), (2, 0))
    triple = parse_lattice_expr("E8+E8+E8")
    assert triple.rank == 24 and triple.det == 1
    assert parse_lattice_expr(" 2 U ").rank == 4
    assert parse_lattice_expr("4A(1)").rank == 4
    assert parse_lattice_expr("D(6)").det == 4


@pytest.mark.parametrize("bad", ["", "E5", "U+", "<0>", "2", "A(0)", "U)troll", "<x>"])
def test_parser_errors(bad):
    with pytest.raises(ParseError) as info:
        parse_lattice_expr(bad)
    assert info.value.pos >= 0


def test_disc_of_direct_sum_matches_block_snf():
    a = parse_lattice_expr("A(2)")
    b = parse_lattice_expr("<-4>")
    s = direct_sum(a, b)
    disc = disc_group(s)
    prod = 1
    for f in disc.invariant_factors:
        prod *= f
    assert prod == abs(s.det) == 12
    d, _u, _v = smith_normal_form([list(r) for r in s.gram])
    snf_factors = tuple(d[i][i] for i in range(s.rank) if abs(d[i][i]) > 1)
    assert tuple(disc.invariant_factors) == snf_factors


def test_dual_vec_membership():
    u = make_named("U")
    u.dual_vector((Fraction(1, 1), Fraction(0)))
    lat = parse_lattice_expr("<-4>")
    lat.dual_vector((Fraction(1, 4),))
    with pytest.raises(LatticeError):
        lat.dual_vector((Fraction(1, 3),))
