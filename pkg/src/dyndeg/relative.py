"""Semi-conjugacies and relative degrees ``deg_p(f^n | pi)``.

For a projection ``pi`` of a product onto some of its factors, a product
atom ``L x R`` (``L`` on the forgotten factors, ``R`` on the kept ones)
satisfies ``pi o (L x R) = s(L) (R o pi)`` where ``s(L)`` is the number of
images of a generic point under ``L``.  Declared semi-conjugacies instead
supply the class pullback ``pi^*`` on every codimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import exact
from .algebra import Correspondence, DEFAULT_MAX_TERMS, combined_matrix, iterates, pullback_class
from .atoms import Atom, TorusAtom
from .degrees import DEFAULT_N, DegreeReport, growth_report, laurent_growth, linear_model_exact, stability_assertions
from .rings import CycleClass, MonomialSpace, Space, degree, intersect, omega_power


class NotSemiConjugate(ValueError):
    pass


@dataclass(frozen=True)
class SemiConjugacy:
    """``pi o f = a (g o pi)`` between ``(X, f)`` and ``(Y, g)``.

    ``keep`` lists the kept factor indices (0-based) for a projection;
    ``pullback`` holds declared matrices ``N^q(Y) -> N^q(X)`` otherwise.
    """

    X: Space
    Y: Space
    f: Correspondence
    g: Correspondence
    multiplier: int
    verified: bool
    keep: tuple[int, ...] | None = None
    pullback: tuple | None = None
    how: str = "projection"

    @property
    def k(self) -> int:
        return self.X.dim

    @property
    def l(self) -> int:
        return self.Y.dim

    def pull(self, beta: CycleClass) -> CycleClass:
        """``pi^* beta`` as a class on ``X``."""
        if beta.space != self.Y:
            raise ValueError("class does not live on the base")
        if self.keep is not None:
            return _projection_pull(self.X, self.keep, beta)
        m = self.pullback[beta.codim]
        return CycleClass(self.X, beta.codim, tuple(exact.matvec(m, beta.coeffs)))

    def fiber_class(self) -> CycleClass:
        return self.pull(omega_power(self.Y, self.l))


def _projection_pull(X: MonomialSpace, keep: Sequence[int], beta: CycleClass) -> CycleClass:
    out = [Fraction(0)] * X.rank(beta.codim)
    for c, mono in zip(beta.coeffs, beta.space.basis(beta.codim)):
        full = [0] * len(X.factors)
        for idx, e in zip(keep, mono):
            full[idx] = e
        out[X.index_of(tuple(full))] += c
    return CycleClass(X, beta.codim, tuple(out))


def split_atom(atom: Atom, X: MonomialSpace, keep: Sequence[int]) -> tuple[int, TorusAtom]:
    """``(s(L), R)`` for ``atom = L x R`` relative to the kept factors."""
    if not isinstance(atom, TorusAtom):
        raise NotSemiConjugate(f"term {atom} is not a product of catalog atoms")
    Y = MonomialSpace(tuple(X.factors[i] for i in keep))
    drop = [i for i in range(len(X.factors)) if i not in keep]
    sheets = 1
    for i in drop:
        a, _ = atom.pairs[i]
        sheets *= a ** X.factors[i]
    return sheets, TorusAtom(Y, tuple(atom.pairs[i] for i in keep))


def project_terms(f: Correspondence, keep: Sequence[int]) -> dict[TorusAtom, int]:
    """``pi o f`` as a combination of atoms on the base (each precomposed with ``pi``)."""
    out: dict[TorusAtom, int] = {}
    for atom, c in f.terms:
        s, r = split_atom(atom, f.space, keep)
        out[r] = out.get(r, 0) + c * s
    return out


def make_projection_semiconj(X: Space, f: Correspondence, keep: Sequence[int]) -> SemiConjugacy:
    """Synthesize ``g`` and the multiplier ``a`` with ``pi o f = a (g o pi)``."""
    if not isinstance(X, MonomialSpace):
        raise NotSemiConjugate("projections are defined on products of projective spaces")
    keep = tuple(sorted(set(keep)))
    if not keep or any(not 0 <= i < len(X.factors) for i in keep):
        raise NotSemiConjugate(f"invalid factor selection {keep} for {X}")
    if f.space != X:
        raise NotSemiConjugate("correspondence lives on another space")
    projected = project_terms(f, keep)
    Y = MonomialSpace(tuple(X.factors[i] for i in keep))
    a = 0
    for c in projected.values():
        a = gcd(a, c)
    g = Correspondence.from_terms(Y, {r: c // a for r, c in projected.items()})
    # re-verify term by term
    lhs = project_terms(f, keep)
    rhs = {r: a * c for r, c in g.terms}
    return SemiConjugacy(X, Y, f, g, a, lhs == rhs, keep=keep)


def make_declared_semiconj(X: Space, Y: Space, f: Correspondence, g: Correspondence,
                           pullback: Sequence, multiplier: int = 1) -> SemiConjugacy:
    """A semi-conjugacy whose class pullback is user data; trusted, not re-derived."""
    if len(pullback) != Y.dim + 1:
        raise ValueError("declared pullback needs one matrix per codimension of the base")
    mats = []
    for q, m in enumerate(pullback):
        if len(m) != X.rank(q) or any(len(r) != Y.rank(q) for r in m):
            raise ValueError(f"declared pullback in codimension {q} has the wrong shape")
        mats.append(tuple(tuple(Fraction(x) for x in r) for r in m))
    return SemiConjugacy(X, Y, f, g, multiplier, True, pullback=tuple(mats), how="declared")


def point_semiconj(f: Correspondence) -> SemiConjugacy:
    """``pi : X -> point``; relative degrees coincide with absolute ones."""
    pt = MonomialSpace(())
    from .atoms import diagonal
    g = Correspondence.atom(diagonal(pt), 1)
    return make_declared_semiconj(f.space, pt, f, g, [[[1]]], multiplier=1)


def relative_weights(sc: SemiConjugacy, p: int) -> tuple[list[Fraction], list[Fraction]]:
    """``(u, v)`` with ``deg(M omega^p . pi^* omega_Y^l . omega^(k-l-p)) = u^T M v``."""
    X = sc.X
    k, l = sc.k, sc.l
    if not 0 <= p <= k - l:
        raise ValueError(f"relative codimension {p} outside 0..{k - l}")
    rest = intersect(sc.fiber_class(), omega_power(X, k - l - p))
    u = [degree(intersect(CycleClass.basis_class(X, p, i), rest)) for i in range(X.rank(p))]
    return u, list(omega_power(X, p).coeffs)


def relative_degree_sequence(sc: SemiConjugacy, p: int, N: int,
                             max_terms: int = DEFAULT_MAX_TERMS) -> list[int]:
    u, v = relative_weights(sc, p)
    out = []
    for n, G in enumerate(iterates(sc.f, max_terms), start=1):
        alpha = pullback_class(G, omega_power(sc.X, p)).coeffs
        out.append(int(sum(a * b for a, b in zip(u, alpha))))
        if n == N:
            break
    return out


def rel_dyn_degree(sc: SemiConjugacy, p: int, N: int = DEFAULT_N,
                   max_terms: int = DEFAULT_MAX_TERMS) -> DegreeReport:
    if not sc.verified:
        raise NotSemiConjugate("relative degrees need a verified semi-conjugacy")
    seq = relative_degree_sequence(sc, p, N, max_terms)
    f = sc.f
    ok, reason = linear_model_exact(f.atoms, p)
    assertions = stability_assertions(f.atoms)
    if sc.how == "declared" and sc.l > 0:
        assertions += ("class pullback of the semi-conjugacy is declared",)
    if ok:
        u, v = relative_weights(sc, p)
        return growth_report(p, seq, linear=(combined_matrix(f, p), u, v), assertions=assertions)
    lam = laurent_growth(f, p) if sc.l == 0 else None
    return growth_report(p, seq, laurent=lam, assertions=assertions, notes=(reason,))


def rel_dyn_degrees(sc: SemiConjugacy, N: int = DEFAULT_N) -> dict[int, DegreeReport]:
    return {p: rel_dyn_degree(sc, p, N) for p in range(sc.k - sc.l + 1)}


def verify_iterates(sc: SemiConjugacy, n_max: int = 4) -> list[bool]:
    """Re-verify ``pi o f^n = a^n (g^n o pi)`` for ``n = 1..n_max`` (projections only)."""
    if sc.keep is None:
        raise ValueError("only projection semi-conjugacies can be re-verified")
    out = []
    fi, gi = iterates(sc.f), iterates(sc.g)
    for n in range(1, n_max + 1):
        F, G = next(fi), next(gi)
        lhs = project_terms(F, sc.keep)
        rhs = {r: sc.multiplier ** n * c for r, c in G.terms}
        out.append(lhs == rhs)
    return out


__all__ = [
    "SemiConjugacy", "NotSemiConjugate", "make_projection_semiconj", "make_declared_semiconj",
    "point_semiconj", "relative_degree_sequence", "rel_dyn_degree", "rel_dyn_degrees",
    "relative_weights", "project_terms", "split_atom", "verify_iterates",
]
