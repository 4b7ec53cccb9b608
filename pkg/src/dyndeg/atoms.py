"""Correspondence atoms, their pullback matrices, and composition rules.

On ``P^k`` the catalog atoms are torus correspondences ``y^a = x^b`` taken
coordinate-wise in an affine chart.  We write such an atom as the pair
``[a, b]``: ``[1, d]`` is the power map ``x -> x^d``, ``[d, 1]`` its reverse,
``[1, 1]`` the diagonal and ``[e, e]`` the sum of the ``e^k`` torus
translations by ``e``-th roots of unity.  Products of projective spaces carry
one pair per factor.

The pullback on ``N^p(P^k)`` is multiplication by ``b^p a^(k-p)``, and
``[A, B] o [C, E]`` (``[C, E]`` applied first) normalizes to
``g^k [A*C/g, B*E/g]`` with ``g = gcd(B, C)`` whenever one of ``B, C``
divides the other.  The rule is refused otherwise, and in characteristic
``p`` when ``p`` divides a root-of-unity count the rule relies on.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator

from . import exact
from .rings import DeclaredSpace, MonomialSpace, RingError, Space, pairing_matrix, pairing_vector, omega_power


class UndeclaredComposition(ValueError):
    """No rewrite rule normalizes the requested composite."""


class DeclarationError(ValueError):
    pass


_CHAR: contextvars.ContextVar[int] = contextvars.ContextVar("characteristic", default=0)


def characteristic() -> int:
    return _CHAR.get()


@contextlib.contextmanager
def use_characteristic(p: int) -> Iterator[None]:
    """Evaluate compositions over a field of characteristic ``p`` (0 or prime)."""
    if p < 0 or (p > 1 and any(p % q == 0 for q in range(2, isqrt(p) + 1))) or p == 1:
        raise ValueError(f"characteristic must be 0 or a prime, got {p}")
    token = _CHAR.set(p)
    try:
        yield
    finally:
        _CHAR.reset(token)


class Atom:
    """An irreducible-like generator with a numerical action on every ``N^p``."""

    space: Space

    @property
    def source(self) -> Space:
        return self.space

    @property
    def target(self) -> Space:
        return self.space

    @property
    def variant(self) -> str:
        raise NotImplementedError

    @property
    def is_diagonal(self) -> bool:
        return False

    def matrix(self, p: int) -> list[list[int]]:
        raise NotImplementedError

    def reverse(self) -> "Atom":
        raise NotImplementedError

    def sort_key(self) -> tuple:
        raise NotImplementedError

    def __lt__(self, other: "Atom") -> bool:
        return self.sort_key() < other.sort_key()


def _torus_entry(pairs, factors, mono) -> int:
    v = 1
    for (a, b), k, m in zip(pairs, factors, mono):
        v *= b ** m * a ** (k - m)
    return v


def _is_kth_power(c: int, k: int) -> int | None:
    if k == 0:
        return 1 if c == 1 else None
    r = round(c ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 1 and cand ** k == c:
            return cand
    return None


@dataclass(frozen=True)
class TorusAtom(Atom):
    """Coordinate-wise torus correspondence, one ``(a, b)`` pair per factor."""

    space: MonomialSpace
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.pairs) != len(self.space.factors):
            raise DeclarationError("one exponent pair per factor is required")
        for (a, b), k in zip(self.pairs, self.space.factors):
            if a < 1 or b < 1:
                raise DeclarationError("exponents must be positive")
            if k == 0 and (a, b) != (1, 1):
                raise DeclarationError("a point factor only carries the diagonal")

    @property
    def is_diagonal(self) -> bool:
        return all(p == (1, 1) for p in self.pairs)

    @property
    def variant(self) -> str:
        if self.is_diagonal:
            return "Diagonal"
        if len(self.pairs) > 1:
            return "ProductAtom"
        a, b = self.pairs[0]
        if a == 1:
            return "PowerMap"
        if b == 1:
            return "ReversePower"
        if a == b:
            return "LinearAutoSum"
        return "RootOfPower"

    def factor(self, i: int) -> "TorusAtom":
        return TorusAtom(self.space.factor_space(i), (self.pairs[i],))

    def matrix(self, p: int) -> list[list[int]]:
        basis = self.space.basis(p)
        n = len(basis)
        out = [[0] * n for _ in range(n)]
        for i, mono in enumerate(basis):
            out[i][i] = _torus_entry(self.pairs, self.space.factors, mono)
        return out

    def sheet_count(self) -> int:
        """Number of images of a generic point (the action on ``N^0``)."""
        return self.matrix(0)[0][0]

    def reverse(self) -> "TorusAtom":
        return TorusAtom(self.space, tuple((b, a) for a, b in self.pairs))

    def sort_key(self) -> tuple:
        order = {"Diagonal": 0, "PowerMap": 1, "ReversePower": 2, "LinearAutoSum": 3,
                 "RootOfPower": 4, "ProductAtom": 5}
        return (0, self.space.factors, order[self.variant], self.pairs)

    def __str__(self) -> str:
        if len(self.pairs) > 1:
            if self.is_diagonal:
                return f"diag({self.space.name})"
            return "prod(" + ",".join(str(self.factor(i)) for i in range(len(self.pairs))) + ")"
        name = self.space.name
        a, b = self.pairs[0] if self.pairs else (1, 1)
        k = self.space.dim
        if (a, b) == (1, 1):
            return f"diag({name})"
        if a == 1:
            return f"power({name},{b})"
        if b == 1:
            return f"revpower({name},{a})"
        if a == b:
            return f"autsum({name},{a ** k})"
        return f"torus({name},{a},{b})"


@dataclass(frozen=True)
class OpaqueAutSum(Atom):
    """Sum over a finite automorphism group of order ``count``, known only numerically.

    Its square is ``count`` times itself; it composes with nothing else
    besides the diagonal.
    """

    space: Space
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise DeclarationError("automorphism count must be >= 1")

    @property
    def variant(self) -> str:
        return "LinearAutoSum"

    def matrix(self, p: int) -> list[list[int]]:
        n = self.space.rank(p)
        return [[self.count if i == j else 0 for j in range(n)] for i in range(n)]

    def reverse(self) -> "OpaqueAutSum":
        return self

    def sort_key(self) -> tuple:
        return (1, self.space.name, self.count)

    def __str__(self) -> str:
        return f"autsum({self.space.name},{self.count})"


@dataclass(frozen=True)
class Identity(Atom):
    """The diagonal of a declared space."""

    space: Space

    @property
    def is_diagonal(self) -> bool:
        return True

    @property
    def variant(self) -> str:
        return "Diagonal"

    def matrix(self, p: int) -> list[list[int]]:
        n = self.space.rank(p)
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def reverse(self) -> "Identity":
        return self

    def sort_key(self) -> tuple:
        return (-1, self.space.name)

    def __str__(self) -> str:
        return f"diag({self.space.name})"


def _as_int_matrix(m, n: int, what: str) -> tuple[tuple[int, ...], ...]:
    if len(m) != n or any(len(row) != n for row in m):
        raise DeclarationError(f"{what}: expected a {n}x{n} matrix")
    out = []
    for row in m:
        r = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1 or f < 0:
                raise DeclarationError(f"{what}: entries must be nonnegative integers")
            r.append(int(f))
        out.append(tuple(r))
    return tuple(out)


def pairing_transpose(space: Space, m_dual, p: int) -> list[list[Fraction]]:
    """Matrix ``R`` on ``N^p`` with ``deg(R a . b) = deg(a . M b)`` for ``M = m_dual`` on ``N^(k-p)``."""
    P = pairing_matrix(space, p)
    # (R a)^T P b = a^T P M b  =>  R^T P = P M  =>  R = (P M P^{-1})^T
    return exact.transpose(exact.matmul(exact.matmul(P, m_dual), exact.inverse(P)))


@dataclass(frozen=True)
class AtomDeclaration:
    """User-declared stable atom: pullback matrices for itself and its reverse.

    ``matrices[p]`` acts on ``N^p`` in the space's basis.  When the reverse
    matrices are not supplied they are obtained by transposing with respect
    to the degree pairing.  ``birational`` declares ``b o rev(b) = rev(b) o b = diag``.
    """

    name: str
    space: Space
    matrices: tuple
    reverse_name: str | None = None
    reverse_matrices: tuple | None = None
    birational: bool = False
    _rev: tuple = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        k = self.space.dim
        if len(self.matrices) != k + 1:
            raise DeclarationError(f"{self.name}: need one matrix per codimension 0..{k}")
        mats = tuple(_as_int_matrix(m, self.space.rank(p), f"{self.name} codim {p}")
                     for p, m in enumerate(self.matrices))
        object.__setattr__(self, "matrices", mats)
        if self.birational and self.reverse_name is None:
            raise DeclarationError(f"{self.name}: a birational atom needs a reverse partner")
        if self.reverse_name is None:
            if self.reverse_matrices is not None:
                raise DeclarationError(f"{self.name}: reverse matrices given without a partner name")
            return
        if self.reverse_matrices is not None:
            rev = tuple(_as_int_matrix(m, self.space.rank(p), f"{self.reverse_name} codim {p}")
                        for p, m in enumerate(self.reverse_matrices))
            if len(rev) != k + 1:
                raise DeclarationError(f"{self.reverse_name}: need one matrix per codimension")
        else:
            rev = []
            for p in range(k + 1):
                r = pairing_transpose(self.space, mats[k - p], p)
                rev.append(_as_int_matrix(r, self.space.rank(p), f"{self.reverse_name} (derived) codim {p}"))
            rev = tuple(rev)
        object.__setattr__(self, "_rev", rev)

    def reverse_matrix(self, p: int):
        if self._rev is None:
            raise DeclarationError(f"declared atom {self.name} has no reverse partner")
        return self._rev[p]


@dataclass(frozen=True)
class DeclaredAtom(Atom):
    """``b^n`` for ``n > 0`` and ``rev(b)^(-n)`` for ``n < 0``; matrices are matrix powers."""

    decl: AtomDeclaration
    n: int = 1

    def __post_init__(self):
        if self.n == 0:
            raise DeclarationError("use the diagonal instead of a zeroth power")
        if self.n < 0:
            self.decl.reverse_matrix(0)

    @property
    def space(self) -> Space:
        return self.decl.space

    @property
    def variant(self) -> str:
        return "DeclaredStable"

    def matrix(self, p: int) -> list[list[int]]:
        self.space.check_codim(p)
        base = self.decl.matrices[p] if self.n > 0 else self.decl.reverse_matrix(p)
        return [[int(x) for x in r] for r in exact.matpow([list(r) for r in base], abs(self.n))]

    def reverse(self) -> "DeclaredAtom":
        return DeclaredAtom(self.decl, -self.n)

    def sort_key(self) -> tuple:
        return (2, self.decl.name, self.n)

    def __str__(self) -> str:
        name = self.decl.name if self.n > 0 else self.decl.reverse_name
        return name if abs(self.n) == 1 else f"{name}^{abs(self.n)}"


# constructors --------------------------------------------------------------

def _single(space: Space, what: str) -> MonomialSpace:
    if not isinstance(space, MonomialSpace) or len(space.factors) != 1:
        raise DeclarationError(f"{what} needs a projective space, got {space}")
    return space


def power_map(space: Space, d: int) -> TorusAtom:
    return TorusAtom(_single(space, "power"), ((1, d),))


def reverse_power(space: Space, d: int) -> TorusAtom:
    return TorusAtom(_single(space, "revpower"), ((d, 1),))


def torus(space: Space, a: int, b: int) -> TorusAtom:
    return TorusAtom(_single(space, "torus"), ((a, b),))


def diagonal(space: Space) -> Atom:
    if isinstance(space, MonomialSpace):
        return TorusAtom(space, tuple((1, 1) for _ in space.factors))
    return Identity(space)


def autsum(space: Space, count: int) -> Atom:
    """Linear automorphism sum with ``count`` members.

    On ``P^k`` with ``count = e^k`` this is the root-of-unity translation sum
    ``[e, e]``; any other count is kept opaque.
    """
    if count < 1:
        raise DeclarationError("automorphism count must be >= 1")
    if isinstance(space, MonomialSpace) and space.factors:
        ks = [k for k in space.factors]
        e = _is_kth_power(count, sum(ks))
        if e is not None:
            return TorusAtom(space, tuple((e, e) if k else (1, 1) for k in ks))
    if count == 1:
        return diagonal(space)
    return OpaqueAutSum(space, count)


def product_atom(*atoms: Atom) -> Atom:
    """Exterior product of torus atoms on the product of their spaces."""
    factors: tuple[int, ...] = ()
    pairs: tuple[tuple[int, int], ...] = ()
    for a in atoms:
        if not isinstance(a, TorusAtom):
            raise DeclarationError(f"products are only formed from catalog torus atoms, got {a}")
        factors += a.space.factors
        pairs += a.pairs
    return TorusAtom(MonomialSpace(factors), pairs)


# rules ---------------------------------------------------------------------

def _compose_pair(outer: tuple[int, int], inner: tuple[int, int], k: int, char: int) -> tuple[int, tuple[int, int]]:
    A, B = outer
    C, E = inner
    if B % C and C % B:
        raise UndeclaredComposition(f"no rule for [{A},{B}] o [{C},{E}]: exponents {B} and {C} are not nested")
    g = gcd(B, C)
    res = (A * C // g, B * E // g)
    if char and (g % char == 0 or gcd(*res) % char == 0):
        raise UndeclaredComposition(
            f"[{A},{B}] o [{C},{E}] needs roots of unity of order divisible by the characteristic {char}")
    return g ** k, res


def compose_atoms(a1: Atom, a2: Atom) -> tuple[int, Atom]:
    """Normal form of ``a1 o a2`` (``a2`` applied first) as ``(coefficient, atom)``."""
    if a1.space != a2.space:
        raise UndeclaredComposition(f"cannot compose atoms on {a1.space} and {a2.space}")
    if a1.is_diagonal:
        return 1, a2
    if a2.is_diagonal:
        return 1, a1
    char = _CHAR.get()
    if isinstance(a1, TorusAtom) and isinstance(a2, TorusAtom):
        coef, pairs = 1, []
        for o, i, k in zip(a1.pairs, a2.pairs, a1.space.factors):
            c, r = _compose_pair(o, i, k, char)
            coef *= c
            pairs.append(r)
        return coef, TorusAtom(a1.space, tuple(pairs))
    if isinstance(a1, OpaqueAutSum) and isinstance(a2, OpaqueAutSum) and a1.count == a2.count:
        return a1.count, a1
    if isinstance(a1, DeclaredAtom) and isinstance(a2, DeclaredAtom) and a1.decl == a2.decl:
        same_sign = (a1.n > 0) == (a2.n > 0)
        if not same_sign and not a1.decl.birational:
            raise UndeclaredComposition(f"{a1} o {a2}: declared atom is not birational")
        m = a1.n + a2.n
        return 1, (diagonal(a1.space) if m == 0 else DeclaredAtom(a1.decl, m))
    raise UndeclaredComposition(f"no rule for {a1} o {a2}")


def commutes(a1: Atom, a2: Atom) -> bool:
    """Declared commutation certificate (never inferred from normal forms)."""
    if a1.space != a2.space:
        return False
    if a1.is_diagonal or a2.is_diagonal or a1 == a2:
        return True
    if isinstance(a1, TorusAtom) and isinstance(a2, TorusAtom):
        for (a, b), (c, e) in zip(a1.pairs, a2.pairs):
            if (a, b) == (c, e) or (a, b) == (1, 1) or (c, e) == (1, 1):
                continue
            if a == 1 and c == 1:
                continue
            if b == 1 and e == 1:
                continue
            return False
        return True
    if isinstance(a1, DeclaredAtom) and isinstance(a2, DeclaredAtom) and a1.decl == a2.decl:
        return (a1.n > 0) == (a2.n > 0) or a1.decl.birational
    return False


def matrix_rule_holds(a1: Atom, a2: Atom, p: int) -> bool:
    """Whether ``c * M_p(r) == M_p(a2) M_p(a1)`` for the rule ``a1 o a2 = c r``."""
    c, r = compose_atoms(a1, a2)
    lhs = [[c * x for x in row] for row in r.matrix(p)]
    return lhs == exact.matmul(a2.matrix(p), a1.matrix(p))


def pullback_matrix(a: Atom, p: int) -> list[list[int]]:
    """Action of ``a^*`` on ``N^p`` (column vectors in the monomial basis)."""
    a.space.check_codim(p)
    return a.matrix(p)


def reverse(a: Atom) -> Atom:
    return a.reverse()


def atom_deg_p(a: Atom, p: int) -> int:
    """``deg(a^*(omega^p) . omega^(k-p))``."""
    space = a.space
    u = pairing_vector(space, omega_power(space, space.dim - p))
    v = omega_power(space, p).coeffs
    val = sum(ui * mij * vj for ui, row in zip(u, a.matrix(p)) for mij, vj in zip(row, v))
    return int(val)


__all__ = [
    "Atom", "TorusAtom", "OpaqueAutSum", "Identity", "AtomDeclaration", "DeclaredAtom",
    "UndeclaredComposition", "DeclarationError", "RingError",
    "power_map", "reverse_power", "torus", "diagonal", "autsum", "product_atom",
    "compose_atoms", "commutes", "matrix_rule_holds", "pullback_matrix", "reverse", "atom_deg_p",
    "pairing_transpose", "characteristic", "use_characteristic", "DeclaredSpace",
]
