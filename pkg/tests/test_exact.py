from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dyndeg import exact
from dyndeg.exact import Algebraic

x = sympy.symbols("x")


def to_sympy(p):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                                     for c in p])), x)


small_polys = st.lists(st.integers(-6, 6), min_size=1, max_size=6).filter(lambda p: any(p))


@settings(max_examples=100, deadline=None)
@given(small_polys, small_polys)
def test_poly_arithmetic_matches_sympy(p, q):
    P, Q = to_sympy(p), to_sympy(q)
    assert (to_sympy(exact.pmul(p, q)) - P * Q).is_zero
    assert (to_sympy(exact.padd(p, q) or [0]) - (P + Q)).is_zero
    if exact.degree(exact.trim(q)) >= 0:
        quo, rem = exact.pdivmod(p, q)
        sq, sr = sympy.div(P, Q)
        assert (to_sympy(quo or [0]) - sq).is_zero
        assert (to_sympy(rem or [0]) - sr).is_zero


@settings(max_examples=100, deadline=None)
@given(small_polys)
def test_real_root_count_matches_sympy(p):
    if exact.degree(exact.trim(p)) < 1:
        return
    sq = exact.squarefree(p)
    expected = len(set(sympy.real_roots(to_sympy(p))))
    assert len(exact.isolate_real_roots(sq)) == expected


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=4), st.lists(st.integers(-4, 4), min_size=2, max_size=4))
def test_resultant_matches_sympy(p, q):
    if not p[-1] or not q[-1]:
        return
    r = exact.resultant(p, q)
    # sign conventions differ between libraries; the magnitude and the swap rule are convention free
    assert abs(r) == abs(sympy.resultant(to_sympy(p).as_expr(), to_sympy(q).as_expr(), x))
    m, n = len(p) - 1, len(q) - 1
    assert exact.resultant(q, p) == (-1) ** (m * n) * r


def test_resultant_root_product_formula():
    # Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f
    f = [-2, -1, 1]          # (x - 2)(x + 1)
    g = [-3, 0, 1]           # x^2 - 3
    assert exact.resultant(f, g) == (4 - 3) * (1 - 3)
    assert exact.resultant([1, 1], [0, 0, 0, 1]) == (-1) ** 3


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_charpoly_and_det(m):
    M = sympy.Matrix(m)
    assert exact.det(m) == M.det()
    cp = exact.charpoly(m)
    assert to_sympy(cp) == M.charpoly(x).as_poly(x)


def test_matpow_and_inverse():
    m = [[2, 1], [1, 1]]
    assert exact.matpow(m, 5) == [[89, 55], [55, 34]]
    inv = exact.inverse(m)
    assert exact.matmul(m, inv) == exact.identity(2)


# the recurrence is returned as its characteristic polynomial, lowest degree first

def test_berlekamp_massey_fibonacci_like():
    seq = [1, 3, 8, 21, 55, 144]
    assert exact.berlekamp_massey(seq) == [1, -3, 1]


def test_berlekamp_massey_geometric():
    assert exact.berlekamp_massey([5 ** n for n in range(1, 9)]) == [-5, 1]


def test_interpolate_recovers_polynomial():
    xs = [0, 1, 2, 3]
    ys = [1, 2, 5, 10]  # x^2 + 1
    assert exact.trim(exact.interpolate(xs, ys)) == [1, 0, 1]


def test_algebraic_rational_and_radical():
    a = Algebraic.rational(Fraction(10, 3))
    assert a.as_fraction() == Fraction(10, 3)
    assert exact.format_exact(a) == "10/3"
    r = Algebraic.radical(6, 2)
    assert exact.format_exact(r) == "6^{1/2}"
    assert Algebraic.rational(2) < r < Algebraic.rational(3)
    assert r * r == Algebraic.rational(6)


def test_algebraic_largest_root_compares_exactly():
    golden_sq = Algebraic.largest_real_root([1, -3, 1])  # (3 + 5^{1/2}) / 2
    assert abs(float(golden_sq) - (3 + 5 ** 0.5) / 2) < 1e-12
    assert golden_sq > Algebraic.rational(Fraction(261, 100))
    assert golden_sq < Algebraic.rational(Fraction(262, 100))


def test_algebraic_sum_matches_float():
    a, b = Algebraic.radical(2, 2), Algebraic.radical(3, 2)
    s = a + b
    assert abs(float(s) - (2 ** 0.5 + 3 ** 0.5)) < 1e-12
    assert s.is_root_of([1, 0, -10, 0, 1])


def test_format_drops_rational_factors():
    # root of (x - 1)(x^2 - 3x + 1): the printed polynomial is the quadratic
    p = exact.pmul([-1, 1], [1, -3, 1])
    a = Algebraic.largest_real_root(p)
    assert "x^2 - 3*x + 1" in exact.format_exact(a)


def test_nth_root_upper_is_upper_bound():
    for v, n in [(2, 2), (10, 3), (1000, 3), (7, 5)]:
        r = exact.nth_root_upper(v, n)
        assert r ** n >= v
        assert (r - Fraction(1, 10 ** 9)) ** n < v


def test_spectral_radius_of_companion():
    assert exact.spectral_radius([[0, 1], [6, 1]]) == Algebraic.rational(3)


@pytest.mark.parametrize("m,expected", [([[4, 0], [0, 1]], 4), ([[1, 1], [1, 1]], 2)])
def test_spectral_radius_rational(m, expected):
    assert exact.spectral_radius(m).as_fraction() == expected
