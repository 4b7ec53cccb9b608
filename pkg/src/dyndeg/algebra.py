"""Formal nonnegative combinations of atoms: sums, composition, iterates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterable, Iterator, Mapping

from . import exact
from .atoms import Atom, DeclaredAtom, UndeclaredComposition, commutes, compose_atoms, characteristic
from .rings import CycleClass, Space, degree, intersect, omega_power, pairing_vector

DEFAULT_MAX_TERMS = 10 ** 6


class TermBlowup(RuntimeError):
    """The normalized term count exceeded the configured cap."""


class MissingCertificate(ValueError):
    """A commutation certificate required by the chosen strategy is absent."""


@dataclass(frozen=True)
class Correspondence:
    """``sum c_i a_i`` with distinct atoms and integer ``c_i >= 1`` in canonical order."""

    space: Space
    terms: tuple[tuple[Atom, int], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a dominant correspondence needs at least one term")
        for atom, c in self.terms:
            if atom.space != self.space:
                raise ValueError(f"atom {atom} does not live on {self.space}")
            if not isinstance(c, int) or c < 1:
                raise ValueError("coefficients must be positive integers")

    @classmethod
    def from_terms(cls, space: Space, terms: Mapping[Atom, int] | Iterable[tuple[Atom, int]]) -> "Correspondence":
        merged: dict[Atom, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for atom, c in items:
            if c:
                merged[atom] = merged.get(atom, 0) + int(c)
        return cls(space, tuple(sorted(((a, c) for a, c in merged.items() if c), key=lambda t: t[0].sort_key())))

    @classmethod
    def atom(cls, atom: Atom, coef: int = 1) -> "Correspondence":
        return cls.from_terms(atom.space, [(atom, coef)])

    def as_dict(self) -> dict[Atom, int]:
        return dict(self.terms)

    @property
    def atoms(self) -> tuple[Atom, ...]:
        return tuple(a for a, _ in self.terms)

    @property
    def is_irreducible_like(self) -> bool:
        """Single term ``d * Gamma`` (the syntactic irreducibility evidence)."""
        return len(self.terms) == 1

    def __add__(self, other: "Correspondence") -> "Correspondence":
        return add(self, other)

    def __rmul__(self, a: int) -> "Correspondence":
        return scale(a, self)

    def __str__(self) -> str:
        parts = [str(a) if c == 1 else f"{c}*{a}" for a, c in self.terms]
        return " + ".join(parts)


def add(F: Correspondence, G: Correspondence) -> Correspondence:
    if F.space != G.space:
        raise ValueError(f"space mismatch: {F.space} vs {G.space}")
    return Correspondence.from_terms(F.space, list(F.terms) + list(G.terms))


def scale(a: int, F: Correspondence) -> Correspondence:
    if a < 1:
        raise ValueError("scale factor must be a positive integer")
    return Correspondence.from_terms(F.space, [(t, a * c) for t, c in F.terms])


@lru_cache(maxsize=None)
def _compose_cached(a1: Atom, a2: Atom, char: int) -> tuple[int, Atom]:
    return compose_atoms(a1, a2)


def compose_normal(a1: Atom, a2: Atom) -> tuple[int, Atom]:
    return _compose_cached(a1, a2, characteristic())


def compose(F: Correspondence, G: Correspondence, max_terms: int = DEFAULT_MAX_TERMS) -> Correspondence:
    """``F o G``: apply ``G`` first."""
    if F.space != G.space:
        raise ValueError(f"space mismatch: {F.space} vs {G.space}")
    out: dict[Atom, int] = {}
    for a, ca in F.terms:
        for b, cb in G.terms:
            try:
                c, r = compose_normal(a, b)
            except UndeclaredComposition as e:
                raise UndeclaredComposition(f"{e} (while composing {a} after {b})") from None
            out[r] = out.get(r, 0) + ca * cb * c
    if len(out) > max_terms:
        raise TermBlowup(f"{len(out)} normalized terms exceed the cap {max_terms}")
    return Correspondence.from_terms(F.space, out)


def iterates(F: Correspondence, max_terms: int = DEFAULT_MAX_TERMS) -> Iterator[Correspondence]:
    """``F, F^2, F^3, ...`` by left-to-right word expansion with merging."""
    G = F
    while True:
        yield G
        G = compose(G, F, max_terms)


def atom_power(a: Atom, m: int) -> tuple[int, Atom | None]:
    """``a^m`` normalized; ``m = 0`` returns ``(1, None)`` meaning the diagonal."""
    coef, cur = 1, None
    for _ in range(m):
        if cur is None:
            cur = a
        else:
            c, cur = compose_normal(cur, a)
            coef *= c
    return coef, cur


def _multinomial(n: int, ms: Iterable[int]) -> int:
    out = factorial(n)
    for m in ms:
        out //= factorial(m)
    return out


def iterate(F: Correspondence, n: int, strategy: str = "word_expansion",
            max_terms: int = DEFAULT_MAX_TERMS) -> Correspondence:
    if n < 1:
        raise ValueError("iterate needs n >= 1")
    if strategy == "word_expansion":
        G = F
        for _ in range(n - 1):
            G = compose(G, F, max_terms)
        return G
    if strategy != "commuting_multinomial":
        raise ValueError(f"unknown strategy {strategy!r}")
    atoms = F.atoms
    for i, a in enumerate(atoms):
        for b in atoms[i:]:
            if not commutes(a, b):
                raise MissingCertificate(f"no commutation certificate for {a} and {b}")
    coefs = [c for _, c in F.terms]
    r = len(atoms)
    out: dict[Atom, int] = {}
    for combo in combinations_with_replacement(range(r), n):
        ms = [combo.count(i) for i in range(r)]
        weight = _multinomial(n, ms)
        for i in range(r):
            weight *= coefs[i] ** ms[i]
        acc: Atom | None = None
        for i in range(r):
            if not ms[i]:
                continue
            c, pw = atom_power(atoms[i], ms[i])
            weight *= c
            if acc is None:
                acc = pw
            else:
                c2, acc = compose_normal(acc, pw)
                weight *= c2
        out[acc] = out.get(acc, 0) + weight
        if len(out) > max_terms:
            raise TermBlowup(f"{len(out)} normalized terms exceed the cap {max_terms}")
    return Correspondence.from_terms(F.space, out)


def combined_matrix(F: Correspondence, p: int) -> list[list[Fraction]]:
    """``sum c_w M_p(w)``: the pullback of ``F`` on ``N^p``."""
    n = F.space.rank(p)
    out = [[Fraction(0)] * n for _ in range(n)]
    for a, c in F.terms:
        m = a.matrix(p)
        for i in range(n):
            for j in range(n):
                out[i][j] += c * m[i][j]
    return out


def pullback_class(F: Correspondence, alpha: CycleClass) -> CycleClass:
    if alpha.space != F.space:
        raise ValueError("class lives on another space")
    v = exact.matvec(combined_matrix(F, alpha.codim), alpha.coeffs)
    return CycleClass(F.space, alpha.codim, tuple(v))


def pushforward_class(F: Correspondence, beta: CycleClass) -> CycleClass:
    """``F_* beta`` computed as the pullback by the reverse correspondence."""
    return pullback_class(reverse(F), beta)


def reverse(F: Correspondence) -> Correspondence:
    return Correspondence.from_terms(F.space, [(a.reverse(), c) for a, c in F.terms])


def degree_weights(space: Space, p: int) -> tuple[list[Fraction], list[Fraction]]:
    """``(u, v)`` with ``deg(M omega^p . omega^(k-p)) = u^T M v``."""
    u = pairing_vector(space, omega_power(space, space.dim - p))
    v = list(omega_power(space, p).coeffs)
    return u, v


def deg_p(F: Correspondence, p: int) -> int:
    alpha = pullback_class(F, omega_power(F.space, p))
    d = degree(intersect(alpha, omega_power(F.space, F.space.dim - p)))
    return int(d)


def declared_atoms(F: Correspondence) -> list[DeclaredAtom]:
    return [a for a in F.atoms if isinstance(a, DeclaredAtom)]
