"""Acceptance suite: one test per criterion, exact tolerances, one
pass/fail line each (run with -s to see them on success)."""

import random
from contextlib import contextmanager
from fractions import Fraction

from k3mod import e8
from k3mod import lattice as lt
from k3mod import qseries as qs
from k3mod import reflective as rf
from k3mod import roots
from k3mod import rst
from k3mod import search as se


@contextmanager
def criterion(n, label):
    try:
        yield
    except BaseException:
        print(f"criterion {n:2d} [{label}]: FAIL")
        raise
    print(f"criterion {n:2d} [{label}]: PASS")


def test_criterion_01_root_counts():
    with criterion(1, "root counts"):
        counts = {
            "E8": 240, "E7": 126, "E6": 72, "D(8)": 112,
            "A(2)": 6, "4A(1)": 8, "A(1)+A(2)": 8, "A(3)": 12, "2A(1)+A(2)": 10,
        }
        for expr, want in counts.items():
            assert roots.enumerate_roots(lt.parse_lattice_expr(expr)).count == want


def test_criterion_02_bouquet_decomposition():
    with criterion(2, "A2 bouquet"):
        lat = e8.lattice()
        all_roots = list(roots.enumerate_roots(lat).coords)
        rng = random.Random(0)
        for a in rng.sample(all_roots, 10):
            x, triples = roots.bouquet_decomposition(lat, lat.vector(a))
            assert len(x) == 114
            assert len(triples) == 28
            pm_a = {tuple(a), tuple(-c for c in a)}
            for i in range(len(triples)):
                for j in range(i + 1, len(triples)):
                    assert triples[i] & triples[j] == pm_a


def test_criterion_03_theta_cross_validation():
    with criterion(3, "theta vs brute"):
        builders = {
            "E7": qs.theta_e7(12), "E6": qs.theta_e6(12),
            "D5": qs.theta_dn(5, 12), "D6": qs.theta_dn(6, 12),
            "D8": qs.theta_dn(8, 12),
        }
        for name, series in builders.items():
            brute = qs.theta_brute(qs.named_definite_lattice(name), 12)
            for m in range(13):
                assert series.coeff(m) == brute.coeff(m), (name, m)
        assert qs.theta_d6_eis(240) == qs.theta_dn(6, 240)


def test_criterion_04_e7_growth_ratio():
    with criterion(4, "N_E7(314) ratio"):
        n = qs.rep_num("E7", 314)
        # 124.72 <= N / 157^(5/2) <= 124.74, via squares of exact integers
        assert 12472**2 * 157**5 <= n * n * 10**4 <= 12474**2 * 157**5


def test_criterion_05_bound_constants():
    with criterion(5, "growth constants"):
        for m in range(1, 241):
            ne7 = qs.rep_num("E7", 2 * m)
            ne6 = qs.rep_num("E6", 2 * m)
            nd6 = qs.rep_num("D6", 2 * m)
            assert 100 * ne7 * ne7 > 1238**2 * m**5, m
            assert 100 * ne6 < 10369 * m * m, m
            assert 100 * nd6 < 7513 * m * m, m


def test_criterion_06_pex_reproduction():
    with criterion(6, "exceptional degree set"):
        want = set(range(1, 101)) - {96}
        want |= {m for m in range(101, 128) if m % 2}
        want |= {110, 131, 137, 143}
        assert set(se.compute_pex(240)) == want


def test_criterion_07_table_reproduction():
    with criterion(7, "table rows"):
        # table_rows re-embeds every row, checks the norm 2d exactly and
        # recomputes the root count with the 240-root oracle
        assert len(se.table_rows("I")) == 40
        assert len(se.table_rows("II-10")) == 18
        assert len(se.table_rows("II-14")) == 6
        assert len(se.table_rows("III")) == 10
        assert len(se.table_rows("IV")) == 4
        assert all(n in (8, 12) for _d, _t, n in se.table_rows("I"))
        assert all(n == 10 for _d, _t, n in se.table_rows("II-10"))
        assert all(n == 14 for _d, _t, n in se.table_rows("II-14"))


def test_criterion_08_predicate_oracle_equivalence():
    with criterion(8, "predicate vs oracle, d <= 150"):
        checked = 0
        for d in range(1, 151):
            for case in se.CASES:
                for ms in se.iter_case_tuples(case, d):
                    if case == "IV":
                        claimed = se.case4_formula_count(ms)
                        vec = se.embed_case4(*ms, sum(ms))
                    else:
                        claimed = se._PREDICATE[case](ms)
                        if claimed is None:
                            continue
                        vec = se._EMBED[case](*ms)
                    assert e8.count_orth_roots_2x(vec) == claimed, (case, ms)
                    checked += 1
        assert checked > 20000


def test_criterion_09_verdict_suite():
    with criterion(9, "verdict suite"):
        general = {46, 50, 54, 57, 58, 60} | set(range(62, 151))
        at_least_nonneg = {40, 42, 43, 48, 49, 51, 52, 53, 55, 56, 59, 61, 63}
        for d in sorted(general):
            v = se.kodaira_verdict(d)
            assert v.kind == se.GENERAL_TYPE, (d, v.kind)
            assert v.witness is not None and 2 <= v.witness.n_l <= 12
        for d in sorted(at_least_nonneg):
            v = se.kodaira_verdict(d)
            assert v.kind in (se.GENERAL_TYPE, se.NONNEGATIVE_KODAIRA), (d, v.kind)
            assert v.witness is not None and v.witness.n_l <= 14
        for d in (1, 2, 3):
            assert se.exhaustive_search(d, max_roots=14) is None, d


def test_criterion_10_c_min_table():
    with criterion(10, "c_min values"):
        want = {30: Fraction(92, 30), 18: Fraction(42, 18), 12: Fraction(16, 12),
                10: Fraction(12, 10), 8: Fraction(12, 8), 5: Fraction(6, 5),
                3: Fraction(1, 3), 6: Fraction(1, 3), 4: Fraction(1, 2)}
        for d, value in want.items():
            assert rst.c_min(d) == value, d
        assert rst.c_min_with_argmin(30)[1] == 19


def test_criterion_11_bigphi():
    with criterion(11, "coprime-sum bound"):
        report = rst.bigphi_verify(100)
        assert report["violations"] == []
        assert report["min_sum"] >= 1


def test_criterion_12_reflective_classification():
    with criterion(12, "reflective sampling"):
        for d in (1, 2, 5, 6):
            report = rf.reflk3_sample_check(d, samples=10**4, seed=0)
            assert report["samples"] == 10**4
            assert report["counterexamples"] == [], d
            assert report["det_mismatches"] == [], d
            assert report["det_checks"] == report["reflective"]


def test_criterion_13_discriminant_plumbing():
    with criterion(13, "discriminant groups"):
        for d in range(1, 21):
            disc = lt.disc_group(lt.make_l2d(d))
            assert disc.invariant_factors == (2 * d,)
            assert disc.q_values[0] == Fraction(-1, 2 * d) % 2
        assert rf.parity_delta(lt.disc_group(lt.parse_lattice_expr("U(2)"))) == 0
        assert rf.parity_delta(lt.disc_group(lt.parse_lattice_expr("<2>+<-2>"))) == 1
