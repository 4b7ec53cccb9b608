import pytest

from dyndeg.algebra import Correspondence, iterate
from dyndeg.atoms import diagonal, power_map, product_atom, reverse_power
from dyndeg.declared import blowup_p2, blowup_p3
from dyndeg.relative import (NotSemiConjugate, make_declared_semiconj, make_projection_semiconj, point_semiconj,
                             project_terms, rel_dyn_degrees, relative_degree_sequence, verify_iterates)
from dyndeg.degrees import degree_sequence
from dyndeg.rings import Product, Projective

P1, P2 = Projective(1), Projective(2)
X = Product(P2, P1)


def test_projection_synthesizes_g():
    f = Correspondence.atom(product_atom(power_map(P2, 2), power_map(P1, 3)))
    sc = make_projection_semiconj(X, f, [1])
    assert str(sc.g) == "power(P1,3)" and sc.multiplier == 1 and sc.verified
    assert [relative_degree_sequence(sc, p, 3) for p in range(3)] == [[1, 1, 1], [2, 4, 8], [4, 16, 64]]


def test_projection_multiplier_from_sheets():
    # revpower(P1, 2) has two sheets, so projecting it away multiplies by 2
    f = Correspondence.atom(product_atom(power_map(P2, 2), reverse_power(P1, 2)))
    sc = make_projection_semiconj(X, f, [0])
    assert sc.multiplier == 2 and str(sc.g) == "power(P2,2)"
    assert verify_iterates(sc, 4) == [True] * 4


def test_projection_of_sums():
    f = Correspondence.from_terms(X, [(product_atom(power_map(P2, 2), power_map(P1, 3)), 1),
                                      (product_atom(reverse_power(P2, 2), power_map(P1, 3)), 1)])
    # both terms lie over power(P1, 3); the second has 4 sheets over the P1 factor
    assert project_terms(f, [1]) == {power_map(P1, 3): 5}
    sc = make_projection_semiconj(X, f, [1])
    assert sc.multiplier == 5 and str(sc.g) == "power(P1,3)"


def test_invalid_projections():
    f = Correspondence.atom(product_atom(power_map(P2, 2), power_map(P1, 3)))
    with pytest.raises(NotSemiConjugate):
        make_projection_semiconj(X, f, [])
    with pytest.raises(NotSemiConjugate):
        make_projection_semiconj(X, f, [2])
    with pytest.raises(NotSemiConjugate):
        make_projection_semiconj(P2, f, [0])


def test_point_semiconjugacy_gives_absolute_degrees():
    F = Correspondence.from_terms(P2, [(power_map(P2, 2), 1), (diagonal(P2), 1)])
    sc = point_semiconj(F)
    for p in range(3):
        assert relative_degree_sequence(sc, p, 6) == degree_sequence(F, p, 6)


def test_relative_degrees_of_reverse_product():
    f = Correspondence.atom(product_atom(reverse_power(P2, 2), reverse_power(P1, 2)))
    sc = make_projection_semiconj(X, f, [0])
    reps = rel_dyn_degrees(sc)
    assert [reps[p].exact_value.as_fraction() for p in range(2)] == [8, 4]


def test_relative_degree_matches_fibre_restriction():
    # over P1 the fibre is P2, so deg_p(f^n | pi) is the P2 degree of the fibre map times the sheet count of
    # the base map raised to n
    f = Correspondence.atom(product_atom(power_map(P2, 3), reverse_power(P1, 2)))
    sc = make_projection_semiconj(X, f, [1])
    for p in range(3):
        want = [(3 ** p * 1) ** n * 2 ** n for n in range(1, 6)]
        assert relative_degree_sequence(sc, p, 5) == want


def test_declared_semiconjugacy_shapes():
    X2, Y2 = blowup_p3(), blowup_p2()
    from dyndeg.atoms import AtomDeclaration, DeclaredAtom

    def scalar(name, space, d):
        return DeclaredAtom(AtomDeclaration(name, space, tuple(
            [[d if i == j else 0 for j in range(space.rank(p))] for i in range(space.rank(p))]
            for p in range(space.dim + 1))))

    f = Correspondence.atom(scalar("f2", X2, 5))
    g = Correspondence.atom(scalar("g2", Y2, 5))
    sc = make_declared_semiconj(X2, Y2, f, g, [[[1]], [[1, 0], [0, 1]], [[1], [0]]])
    reps = rel_dyn_degrees(sc)
    assert [reps[p].exact_value.as_fraction() for p in range(2)] == [5, 5]
    with pytest.raises(ValueError):
        make_declared_semiconj(X2, Y2, f, g, [[[1]], [[1, 0], [0, 1]]])
