from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from dyndeg.algebra import Correspondence, add, combined_matrix
from dyndeg.atoms import AtomDeclaration, DeclaredAtom, diagonal, power_map, product_atom, reverse_power
from dyndeg.exact import Algebraic
from dyndeg.relative import make_projection_semiconj
from dyndeg.rings import Product, Projective
from dyndeg.verify import (FAILS, HOLDS, INCONCLUSIVE, INFO, LambdaData, c_min, check_log_concavity,
                           check_monotonicity, check_obstruction, check_primitivity, check_product_formula,
                           check_simplicity, check_triangle, check_weak_product, iterate_irreducibility,
                           log_concavity_from_values, weak_product_from_data)

P1, P2, P3 = Projective(1), Projective(2), Projective(3)


def ex3(a=1):
    return Correspondence.from_terms(P2, [(power_map(P2, 2), 1), (diagonal(P2), a)])


def test_log_concavity_example():
    r = check_log_concavity(ex3())
    assert r.verdict == FAILS and r.summary == "log-concavity: FAILS (9 < 10)"
    assert r.with_expectation(FAILS).summary.endswith(", expected")
    assert r.with_expectation(FAILS).matches_expectation


def test_log_concavity_holds_for_maps():
    r = check_log_concavity(Correspondence.atom(power_map(P3, 2)))
    assert r.verdict == HOLDS
    assert "single terms" in r.notes[0]


def test_irreducibility_evidence():
    assert iterate_irreducibility(ex3(), 3) == [False, False, False]
    assert iterate_irreducibility(Correspondence.atom(reverse_power(P2, 2)), 3) == [True] * 3


def test_product_formula():
    f = Correspondence.atom(product_atom(power_map(P2, 2), power_map(P1, 3)))
    r = check_product_formula(make_projection_semiconj(Product(P2, P1), f, [1]))
    assert r.verdict == HOLDS
    assert [row[1] for row in r.rows] == ["1", "3", "6", "12"]


def test_weak_product_and_c_min():
    for d, e in ((2, 3), (3, 2)):
        f = Correspondence.atom(product_atom(reverse_power(P1, d), reverse_power(P1, e)))
        sc = make_projection_semiconj(Product(P1, P1), f, [1])
        r = check_weak_product(sc)
        assert r.verdict == HOLDS
        assert f"c_min = {e} = lam_0(g)" in r.summary


def test_weak_product_from_data_failure():
    A = Algebraic.rational
    data = LambdaData({0: A(8), 1: A(5), 2: A(5), 3: A(5)}, {0: A(8), 1: A(5)}, {0: A(5), 1: A(5), 2: A(5)}, 3, 2)
    r = weak_product_from_data(data, "union")
    assert r.verdict == FAILS and "(25 < 40)" in r.summary
    assert c_min(data).as_fraction() == 8


def test_triangle():
    D = Correspondence.atom(diagonal(P2))
    r = check_triangle(Correspondence.atom(reverse_power(P2, 3)), D)
    assert r.verdict == HOLDS and "equality" in r.summary
    b = AtomDeclaration("b", P3, ([[1]], [[3]], [[3]], [[1]]), reverse_name="rb", birational=True)
    r = check_triangle(Correspondence.atom(DeclaredAtom(b)), Correspondence.atom(DeclaredAtom(b, -1)))
    assert r.verdict == HOLDS and "strict at p = 1, 2" in r.summary
    assert r.rows[1][1] == "10/3" and r.rows[1][4] == "6"


def test_primitivity_and_obstruction():
    assert check_primitivity(Correspondence.atom(reverse_power(P2, 2))).verdict == HOLDS
    assert check_primitivity(ex3()).verdict == INFO
    r = check_obstruction([2, 3, 5], "F")
    assert r.verdict == HOLDS and "9 < 10" in r.summary
    r = check_obstruction([2, 3, 5, 9], "F")
    assert r.verdict == HOLDS and "18 > 15" in r.summary
    assert check_obstruction([1, 2, 4], "g").verdict == INFO
    assert check_obstruction([1, None, 4], "g").verdict == INCONCLUSIVE


def test_monotonicity_under_identity():
    f = Correspondence.atom(product_atom(power_map(P2, 2), power_map(P1, 3)))
    sc = make_projection_semiconj(Product(P2, P1), f, [1])
    r = check_monotonicity(sc, sc, Correspondence.atom(diagonal(Product(P2, P1))))
    assert r.verdict == HOLDS


def test_simplicity_example():
    f = Correspondence.atom(product_atom(power_map(P1, 2), power_map(P1, 3)))
    r = check_simplicity(combined_matrix(f, 1), combined_matrix(f, 2))
    assert r.verdict == HOLDS
    assert r.summary == "simplicity: HOLDS (9 > 6, simple, 2 < 6^{1/2})"


def test_simplicity_repeated_root_fails():
    r = check_simplicity([[3, 0], [0, 3]], [[6]])
    assert r.verdict == FAILS and "repeated" in r.summary


def test_simplicity_complex_spectrum():
    # eigenvalues 3, i, -i: other moduli are 1
    r = check_simplicity([[3, 0, 0], [0, 0, -1], [0, 1, 0]], [[6]])
    assert r.verdict == HOLDS and "1 < 6^{1/2}" in r.summary


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=9, max_size=9), st.integers(1, 40))
def test_simplicity_verdict_matches_numeric_spectrum(entries, r2):
    M = [entries[0:3], entries[3:6], entries[6:9]]
    eig = sorted(sympy.Matrix(M).charpoly().nroots(n=15, maxsteps=500), key=lambda z: -abs(complex(z)))
    mods = [abs(complex(z)) for z in eig]
    rho = max(float(sympy.re(z)) for z in eig if abs(sympy.im(z)) < 1e-9)
    rep = check_simplicity(M, [[r2]])
    if abs(rho * rho - r2) < 1e-9:
        return
    if rho * rho < r2:
        assert rep.verdict == FAILS
        return
    if sum(1 for m in mods if abs(m - rho) < 1e-9) > 1:
        # a repeated Perron root, or another eigenvalue on the same circle
        assert rep.verdict in (FAILS, INCONCLUSIVE) or dict(rep.rows).get("rho(M1) simple") == "yes"
        return
    second = mods[1]
    if abs(second * second - r2) < 1e-9:
        return
    assert rep.verdict == (HOLDS if second * second < r2 else FAILS)
