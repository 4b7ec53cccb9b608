from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dyndeg.declared import blowup_p2, blowup_p3, load_space, parse_space_name, space_from_dict, space_to_dict
from dyndeg.rings import (CycleClass, DeclaredSpace, MonomialSpace, Point, Product, Projective, RingError, degree,
                          intersect, norm_l1, omega_power, pairing_matrix)


def test_basis_orders_and_labels():
    X = Product(Projective(2), Projective(1))
    assert X.name == "P2xP1"
    assert X.basis(1) == ((1, 0), (0, 1))
    assert X.basis_labels(1) == ["h1", "h2"]
    assert [X.rank(p) for p in range(4)] == [1, 2, 2, 1]
    assert Projective(3).basis_labels(2) == ["H^2"]
    assert Point().name == "pt" and Point().dim == 0


def test_omega_powers_match_sympy():
    # omega = h1 + h2 on P2 x P1; compare with truncated polynomial arithmetic
    h1, h2 = sympy.symbols("h1 h2")
    X = Product(Projective(2), Projective(1))
    for p in range(4):
        e = sympy.Poly(sympy.expand((h1 + h2) ** p), h1, h2)
        want = {m: c for m, c in zip(e.monoms(), e.coeffs()) if m[0] <= 2 and m[1] <= 1}
        got = {mono: c for mono, c in zip(X.basis(p), omega_power(X, p).coeffs)}
        assert got == {m: Fraction(int(want.get(m, 0))) for m in X.basis(p)}
    assert degree(omega_power(X, 3)) == 3
    assert norm_l1(CycleClass(X, 1, (1, 1))) == 3


spaces = st.sampled_from([Projective(1), Projective(2), Projective(3), Product(Projective(1), Projective(1)),
                          Product(Projective(2), Projective(1)), blowup_p2(), blowup_p3()])


@settings(max_examples=100, deadline=None)
@given(spaces, st.data())
def test_intersection_is_commutative_and_associative(X, data):
    k = X.dim

    def cls(p):
        coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=X.rank(p), max_size=X.rank(p)))
        return CycleClass(X, p, tuple(coeffs))

    p = data.draw(st.integers(0, k))
    q = data.draw(st.integers(0, k - p))
    r = data.draw(st.integers(0, k - p - q))
    a, b, c = cls(p), cls(q), cls(r)
    assert intersect(a, b) == intersect(b, a)
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))


@pytest.mark.parametrize("X", [Projective(2), Product(Projective(1), Projective(2)), blowup_p2(), blowup_p3()])
def test_pairing_is_nondegenerate(X):
    for p in range(X.dim + 1):
        M = sympy.Matrix(pairing_matrix(X, p))
        assert M.det() != 0


def test_blowups():
    B2, B3 = blowup_p2(), blowup_p3()
    assert degree(omega_power(B2, 2)) == 3
    assert degree(omega_power(B3, 3)) == 7
    assert omega_power(B3, 2).coeffs == (4, 3)
    # F = H - E is a pencil of planes through the centre: F^2 is the line class m, F^3 = 0
    F = CycleClass(B3, 1, (0, 1))
    assert intersect(F, F).coeffs == (1, 0)
    assert degree(intersect(intersect(F, F), F)) == 0


def test_declared_space_validation():
    # H^2 = 0 makes the codimension-one pairing degenerate
    with pytest.raises(RingError):
        space_from_dict({"name": "bad", "dim": 2, "labels": [["1"], ["H"], ["pt"]], "products": []})
    with pytest.raises(RingError):
        space_from_dict({"name": "bad", "dim": 2, "labels": [["1"], ["H", "F"], ["pt"]],
                         "products": [["H", "F", {"pt": 1}], ["F", "H", {"pt": 2}], ["H", "H", {"pt": 1}]]})
    with pytest.raises(RingError):
        space_from_dict({"name": "bad", "dim": 2, "labels": [["1"], ["H"], ["pt"]],
                         "products": [["H", "H", {"pt": 1}]], "polarization": [-1, 0]})
    with pytest.raises(Exception):
        space_from_dict({"name": "bad", "dim": 1})


def test_declared_space_round_trip(tmp_path):
    import json
    B = blowup_p3()
    d = space_to_dict(B)
    (tmp_path / "b.json").write_text(json.dumps(d))
    assert load_space(tmp_path / "b.json") == B


def test_space_names():
    assert parse_space_name("P2xP1") == Product(Projective(2), Projective(1))
    assert parse_space_name("pt") == Point()
    assert parse_space_name("Q3") is None


def test_codimension_overflow():
    X = Projective(2)
    with pytest.raises(RingError):
        intersect(omega_power(X, 2), omega_power(X, 1))
