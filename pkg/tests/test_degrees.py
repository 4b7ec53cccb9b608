from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dyndeg.algebra import Correspondence, add, combined_matrix, degree_weights
from dyndeg.atoms import AtomDeclaration, DeclaredAtom, UndeclaredComposition, diagonal, power_map, reverse_power
from dyndeg.degrees import (degree_sequence, dual_degree_check, dyn_degree, dyn_degrees, fekete_bound,
                            submultiplicativity)
from dyndeg.exact import Algebraic, format_exact
from dyndeg.rings import Product, Projective

P2, P3 = Projective(2), Projective(3)


def example(d=2, a=1, k=2):
    Pk = Projective(k)
    return Correspondence.from_terms(Pk, [(power_map(Pk, d), 1), (diagonal(Pk), a)])


def test_example_sequences_and_degrees():
    F = example()
    for p, base in enumerate((2, 3, 5)):
        assert degree_sequence(F, p, 10) == [base ** n for n in range(1, 11)]
    reps = dyn_degrees(F)
    assert [format_exact(reps[p].exact_value) for p in range(3)] == ["2", "3", "5"]
    assert all(r.method == "linear-recurrence" for r in reps.values())


def test_threefold_example():
    reps = dyn_degrees(example(k=3))
    assert [reps[p].exact_value for p in range(4)] == [Algebraic.rational(v) for v in (2, 3, 5, 9)]


def test_shift_by_diagonal_multiples():
    for a in (1, 2, 3):
        reps = dyn_degrees(example(a=a))
        assert [reps[p].exact_value.as_fraction() for p in range(3)] == [1 + a, 2 + a, 4 + a]


def spectral_radius_sympy(M):
    return max(abs(complex(ev)) for ev in sympy.Matrix(M).eigenvals(multiple=True))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([1, 2, 3]), st.integers(1, 3)), min_size=1, max_size=3), st.booleans())
def test_exact_value_is_spectral_radius(ds, rev):
    """On a single projective space all matrices are 1x1 so lambda_p is the combined scalar."""
    ctor = reverse_power if rev else power_map
    F = Correspondence.from_terms(P2, [(ctor(P2, d), c) for d, c in ds])
    for p in range(3):
        r = dyn_degree(F, p, 8)
        assert abs(float(r.exact_value) - spectral_radius_sympy(combined_matrix(F, p))) < 1e-9
        assert r.fekete_upper is not None and r.exact_value <= Algebraic.rational(r.fekete_upper)


def test_product_space_degrees():
    from dyndeg.atoms import product_atom
    X = Product(P2, Projective(1))
    f = Correspondence.atom(product_atom(power_map(P2, 2), power_map(Projective(1), 3)))
    reps = dyn_degrees(f)
    assert [reps[p].exact_value.as_fraction() for p in range(4)] == [1, 3, 6, 12]


def test_irrational_growth_rate_is_algebraic():
    # h + 2 Delta on P2 x P1 mixes eigenvalues of the two factors
    from dyndeg.atoms import product_atom
    P1 = Projective(1)
    f = Correspondence.from_terms(Product(P2, P1), [(product_atom(power_map(P2, 2), power_map(P1, 3)), 1),
                                                    (product_atom(reverse_power(P2, 2), power_map(P1, 3)), 1)])
    r = dyn_degree(f, 1, 12)
    M = combined_matrix(f, 1)
    assert abs(float(r.exact_value) - spectral_radius_sympy(M)) < 1e-9


def birational(l1=3, l2=3):
    return AtomDeclaration("b", P3, ([[1]], [[l1]], [[l2]], [[1]]), reverse_name="rb", birational=True)


def test_birational_pair_laurent_route():
    b = birational()
    F = Correspondence.from_terms(P3, [(DeclaredAtom(b), 1), (DeclaredAtom(b, -1), 1)])
    reps = dyn_degrees(F)
    assert [format_exact(reps[p].exact_value) for p in range(4)] == ["2", "10/3", "10/3", "2"]
    assert reps[1].method == "laurent-extremum"
    assert any("declared" in s for s in reps[1].stability_assertions)


def test_birational_pair_sequence_oracle():
    # b^i rb^j collapses to b^(i-j); N^1 degree of b^m is 3^|m| (m != 0) and 1 for m = 0
    b = birational()
    F = Correspondence.from_terms(P3, [(DeclaredAtom(b), 1), (DeclaredAtom(b, -1), 1)])
    from math import comb
    for n in range(1, 8):
        want = sum(comb(n, i) * 3 ** abs(2 * i - n) for i in range(n + 1))
        assert degree_sequence(F, 1, n)[-1] == want


def test_undeclared_composition_propagates():
    F = Correspondence.from_terms(P2, [(power_map(P2, 2), 1), (reverse_power(P2, 3), 1)])
    with pytest.raises(UndeclaredComposition):
        dyn_degrees(F, 4)


def test_submultiplicativity_and_fekete():
    seq = [3 ** n for n in range(1, 8)]
    rep = submultiplicativity(seq)
    assert rep.holds and rep.max_ratio == 1
    assert fekete_bound(seq) == 3
    bad = [1, 5, 30]
    assert not submultiplicativity(bad).holds


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_dual_degree_on_p2xp1(p):
    from dyndeg.atoms import product_atom
    P1 = Projective(1)
    f = Correspondence.atom(product_atom(reverse_power(P2, 2), power_map(P1, 3)))
    d = dual_degree_check(f, p)
    assert d.holds


def test_degree_weights_reproduce_deg():
    F = example()
    from dyndeg.algebra import deg_p
    for p in range(3):
        u, v = degree_weights(P2, p)
        M = combined_matrix(F, p)
        assert sum(ui * M[i][j] * vj for i, ui in enumerate(u) for j, vj in enumerate(v)) == deg_p(F, p)
