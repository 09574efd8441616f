from fractions import Fraction

import pytest
import sympy as sp

from chiloc import hyperbolicity as H
from chiloc.euler import chi1, chi1_cubic_coefficient


def _hrr_symbolic():
    """chi(S^m Omega) from Chern roots, as a polynomial in m, K^2 and c2."""
    m, i, a, b = sp.symbols("m i a b")
    K2, c2 = sp.symbols("K2 c2")
    x = i * a + (m - i) * b  # Chern roots of S^m; c1(Omega) = K = a + b
    # degree-2 part of ch(L) td(X) minus td_2, for a line bundle with c1 = x
    total = sp.expand(sp.summation(x**2 / 2 - x * (a + b) / 2, (i, 0, m)))
    sym, rest, defs = sp.polys.polyfuncs.symmetrize(total, a, b, formal=True)
    assert rest == 0
    (s1, e1), (s2, e2) = defs  # s1 = a + b = K, s2 = ab = c2
    expr = sym.subs(s2, c2)
    expr = sp.expand(expr).subs(s1**2, K2)
    assert not expr.has(s1)
    return sp.expand(expr + (m + 1) * (K2 + c2) / 12), (m, K2, c2)


def test_closed_formula_matches_chern_root_derivation():
    expr, (m, K2, c2) = _hrr_symbolic()
    for d in range(1, 13):
        k2, cc = H.chern_numbers(d)
        for mm in range(0, 8):
            assert expr.subs({K2: k2, c2: cc, m: mm}) == H.chi_smooth(d, mm)


def test_chi_smooth_examples():
    assert H.chi_smooth(5, 0) == 5
    assert H.chi_smooth(5, 1) == -45
    for d in range(1, 13):
        k2, c2 = H.chern_numbers(d)
        chi_o = H.chi_structure_sheaf(d)
        assert H.chi_smooth(d, 0) == chi_o
        assert H.chi_smooth(d, 1) == 2 * chi_o - c2


def test_chi_smooth_cubic_term():
    for d in range(1, 31):
        vals = [H.chi_smooth(d, m) for m in range(4)]
        third_difference = vals[3] - 3 * vals[2] + 3 * vals[1] - vals[0]
        assert Fraction(third_difference, 6) == Fraction(-(2 * d * d - 5 * d), 3)
    assert H.smooth_cubic_coefficient(5) == Fraction(-25, 3)


def test_r_min_examples():
    assert H.r_min(5, 1) == 57
    assert H.r_min(5, 2) == 27
    assert H.r_min(8, 3) == 62
    assert H.r_min(10, 1) == 338
    assert H.r_min(6, 6) == 15
    assert Fraction(9, 4) * 25 == Fraction(225, 4)  # 56.25 for quintics with nodes


def test_table_reproduced():
    table = H.rdn_table(10, 6)
    for row in table:
        for cell in row:
            published = H.PUBLISHED_RDN[cell.d][cell.n - 1]
            if published is None:
                assert cell.flagged
            else:
                assert cell.r == published and not cell.flagged
    assert [c.r for c in table[9 - 5]] == [264, 126, 83, 61, 49, 41]


def test_table_monotonicity():
    table = H.rdn_table(10, 6)
    for n in range(6):
        col = [row[n].r for row in table]
        assert all(x < y for x, y in zip(col, col[1:]))
    for row in table:
        rs = [c.r for c in row]
        assert all(x >= y for x, y in zip(rs, rs[1:]))


def test_threshold_is_sharp():
    for d in range(5, 11):
        for n in range(1, 7):
            r = H.r_min(d, n)
            assert H.bound_cubic_coefficient(H.SurfaceProfile(d, n, r)) > 0
            assert H.bound_cubic_coefficient(H.SurfaceProfile(d, n, r - 1)) <= 0


def test_h0_bound():
    p = H.SurfaceProfile(5, 1, 56)
    assert H.bound_cubic_coefficient(p) == Fraction(-25, 3) + 56 * Fraction(4, 27) < 0
    for d, r in ((5, 57), (10, 345)):
        q = H.SurfaceProfile(d, 1, r)
        assert H.h0_lower_bound(q, 200) > 0
    with pytest.raises(ValueError):
        H.h0_lower_bound(p, 2)
    assert H.h0_lower_bound(p, 3) == H.chi_smooth(5, 3) + 56 * chi1(1, 3)


def test_miyaoka():
    assert H.miyaoka_max(10, 1) == 360
    assert H.miyaoka_max(5, 1) == 35
    assert H.r_min(10, 1) <= 345 <= H.miyaoka_max(10, 1)


def test_labs():
    assert H.labs_check(3).to_json() == {"k": 3, "d": 6, "n": 2, "available": 36, "required": 46, "verdict": False}
    assert H.labs_check(4).verdict and H.labs_check(4).required == 62
    assert H.labs_check(5).verdict and H.labs_check(5).required == 78
    with pytest.raises(H.DegreeTooSmallError):
        H.labs_check(2)


def test_profile_guard():
    with pytest.raises(H.DegreeTooSmallError):
        H.SurfaceProfile(4, 1, 10)


def test_chi1_cubic_feeds_threshold():
    assert chi1_cubic_coefficient(1) == Fraction(4, 27)
    assert H.r_min(5, 1) == int(Fraction(25, 3) / Fraction(4, 27)) + 1
