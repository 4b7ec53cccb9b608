"""Structural identities of dynamical degrees, checked on random catalog correspondences.

Torus exponents are drawn from {1, 2, 4} so every pair is nested and all
compositions stay inside the rewrite rule.
"""

from hypothesis import assume, given, settings, strategies as st

from dyndeg.algebra import Correspondence, iterate, reverse
from dyndeg.atoms import product_atom, torus
from dyndeg.degrees import check_submultiplicative, dual_degree_check, dyn_degree
from dyndeg.relative import NotSemiConjugate, make_projection_semiconj, rel_dyn_degree, verify_iterates
from dyndeg.rings import Product, Projective

EXP = st.sampled_from([1, 2, 4])
SPACES = [(1,), (2,), (3,), (1, 1), (2, 1), (1, 2)]


def make_space(dims):
    return Projective(dims[0]) if len(dims) == 1 else Product(*(Projective(d) for d in dims))


@st.composite
def atom_on(draw, dims):
    parts = [torus(Projective(d), draw(EXP), draw(EXP)) for d in dims]
    return parts[0] if len(parts) == 1 else product_atom(*parts)


@st.composite
def correspondences(draw, dims=None, max_terms=3):
    if dims is None:
        dims = draw(st.sampled_from(SPACES))
    X = make_space(dims)
    n = draw(st.integers(1, max_terms))
    terms = [(draw(atom_on(dims)), draw(st.integers(1, 3))) for _ in range(n)]
    return Correspondence.from_terms(X, terms)


def lam(F, p, N=8):
    r = dyn_degree(F, p, N)
    assert r.exact_value is not None, r
    return r.exact_value


@settings(max_examples=100, deadline=None)
@given(correspondences(), st.data())
def test_submultiplicativity(F, data):
    p = data.draw(st.integers(0, F.space.dim))
    assert check_submultiplicative(F, p, 6).holds


@settings(max_examples=100, deadline=None)
@given(correspondences(), st.data())
def test_dual_degree(F, data):
    p = data.draw(st.integers(0, F.space.dim))
    r = dual_degree_check(F, p)
    assert r.holds and r.pullback_side == r.pushforward_side


@settings(max_examples=100, deadline=None)
@given(correspondences(max_terms=2))
def test_reverse_duality(F):
    k = F.space.dim
    R = reverse(F)
    for p in range(k + 1):
        assert lam(R, p) == lam(F, k - p)


@settings(max_examples=100, deadline=None)
@given(correspondences(max_terms=2), st.integers(1, 3))
def test_power_compatibility(F, m):
    Fm = iterate(F, m)
    for p in range(F.space.dim + 1):
        a = lam(F, p)
        power = a
        for _ in range(m - 1):
            power = power * a
        assert lam(Fm, p, 6) == power


@st.composite
def commuting_correspondences(draw):
    # per factor, either all forward powers or all reverse powers: such atoms commute
    dims = draw(st.sampled_from(SPACES))
    forward = [draw(st.booleans()) for _ in dims]
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        parts = []
        for d, fw in zip(dims, forward):
            e = draw(st.sampled_from([1, 2, 3, 4]))
            parts.append(torus(Projective(d), 1, e) if fw else torus(Projective(d), e, 1))
        atom = parts[0] if len(parts) == 1 else product_atom(*parts)
        terms.append((atom, draw(st.integers(1, 3))))
    return Correspondence.from_terms(make_space(dims), terms)


@settings(max_examples=100, deadline=None)
@given(commuting_correspondences(), st.integers(1, 6))
def test_strategy_agreement(F, n):
    assert iterate(F, n, "word_expansion") == iterate(F, n, "commuting_multinomial")


@st.composite
def projection_semiconjs(draw):
    dims = draw(st.sampled_from([(1, 1), (2, 1), (1, 2), (2, 2)]))
    keep = draw(st.sampled_from([0, 1]))
    base = torus(Projective(dims[keep]), draw(EXP), draw(EXP))
    other = dims[1 - keep]
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        fib = torus(Projective(other), draw(EXP), draw(EXP))
        parts = (base, fib) if keep == 0 else (fib, base)
        terms.append((product_atom(*parts), draw(st.integers(1, 3))))
    f = Correspondence.from_terms(make_space(dims), terms)
    return make_projection_semiconj(f.space, f, [keep])


@settings(max_examples=100, deadline=None)
@given(projection_semiconjs())
def test_relative_degree_zero_equals_top(sc):
    assert all(verify_iterates(sc, 3))
    r = rel_dyn_degree(sc, 0, 8)
    assert r.exact_value == lam(sc.f, 0)


@settings(max_examples=100, deadline=None)
@given(correspondences(dims=(1, 1), max_terms=2), st.sampled_from([0, 1]))
def test_relative_degree_zero_on_any_valid_projection(f, keep):
    try:
        sc = make_projection_semiconj(f.space, f, [keep])
    except NotSemiConjugate:
        assume(False)
    assert all(verify_iterates(sc, 3))
    assert rel_dyn_degree(sc, 0, 8).exact_value == lam(f, 0)
