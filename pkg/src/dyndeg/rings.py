"""Numerical cycle rings of the catalog spaces.

The catalog is small on purpose: projective spaces, products of them, the
point, and user-declared rings given by an explicit intersection table.  For
the monomial spaces the graded group of codimension ``p`` classes has basis
``h_1^{a_1} ... h_r^{a_r}`` with ``sum(a) = p`` and ``a_i <= k_i``; the ring
relations are ``h_i^{k_i + 1} = 0`` and the point class is the top monomial.

Everything is exact: coefficients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Mapping, Sequence

from . import exact


class RingError(ValueError):
    """Invalid ring operation (codimension overflow, space mismatch, bad table)."""


class Space:
    """Base class for spaces with an explicit numerical ring."""

    dim: int

    @property
    def kind(self) -> str:
        raise NotImplementedError

    @property
    def name(self) -> str:
        raise NotImplementedError

    def basis(self, p: int) -> tuple:
        raise NotImplementedError

    def basis_labels(self, p: int) -> list[str]:
        raise NotImplementedError

    def rank(self, p: int) -> int:
        return len(self.basis(p))

    def product_coeffs(self, p: int, i: int, q: int, j: int) -> Mapping[int, Fraction]:
        """Coefficients of ``b_i^(p) * b_j^(q)`` in the basis of codimension ``p + q``."""
        raise NotImplementedError

    def polarization_coeffs(self) -> tuple[Fraction, ...]:
        raise NotImplementedError

    def check_codim(self, p: int) -> None:
        if not 0 <= p <= self.dim:
            raise RingError(f"codimension {p} out of range 0..{self.dim} on {self.name}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class MonomialSpace(Space):
    """A product ``P^{k_1} x ... x P^{k_r}``; ``r = 0`` is the point."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if any(k < 0 for k in self.factors):
            raise RingError("projective dimensions must be nonnegative")

    @property
    def dim(self) -> int:
        return sum(self.factors)

    @property
    def kind(self) -> str:
        if not self.factors:
            return "point"
        return "projective" if len(self.factors) == 1 else "product"

    @property
    def name(self) -> str:
        if not self.factors:
            return "pt"
        return "x".join(f"P{k}" for k in self.factors)

    @cached_property
    def _bases(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        out = []
        for p in range(self.dim + 1):
            monos = [a for a in itertools.product(*(range(k + 1) for k in self.factors)) if sum(a) == p]
            out.append(tuple(sorted(monos, reverse=True)))
        return tuple(out)

    @cached_property
    def _index(self) -> tuple[dict, ...]:
        return tuple({m: i for i, m in enumerate(b)} for b in self._bases)

    def basis(self, p: int) -> tuple[tuple[int, ...], ...]:
        self.check_codim(p)
        return self._bases[p]

    def index_of(self, mono: Sequence[int]) -> int:
        return self._index[sum(mono)][tuple(mono)]

    def basis_labels(self, p: int) -> list[str]:
        labels = []
        for mono in self.basis(p):
            if len(self.factors) == 1:
                e = mono[0]
                labels.append("1" if e == 0 else ("H" if e == 1 else f"H^{e}"))
                continue
            parts = [(f"h{i + 1}" if e == 1 else f"h{i + 1}^{e}") for i, e in enumerate(mono) if e]
            labels.append("*".join(parts) if parts else "1")
        return labels

    def product_coeffs(self, p, i, q, j):
        a, b = self.basis(p)[i], self.basis(q)[j]
        c = tuple(x + y for x, y in zip(a, b))
        if any(x > k for x, k in zip(c, self.factors)):
            return {}
        return {self.index_of(c): Fraction(1)}

    def polarization_coeffs(self):
        return tuple(Fraction(1) for _ in self.basis(1)) if self.dim >= 1 else ()

    def factor_space(self, i: int) -> "MonomialSpace":
        return MonomialSpace((self.factors[i],))


def Projective(k: int) -> MonomialSpace:
    return MonomialSpace((k,))


def Point() -> MonomialSpace:
    return MonomialSpace(())


def Product(*spaces: MonomialSpace) -> MonomialSpace:
    factors: tuple[int, ...] = ()
    for s in spaces:
        if not isinstance(s, MonomialSpace):
            raise RingError("products are only formed from projective spaces")
        factors += s.factors
    return MonomialSpace(factors)


@dataclass(frozen=True)
class DeclaredSpace(Space):
    """A space given by a user-supplied intersection table.

    ``labels[p]`` lists the basis of codimension ``p`` (``labels[0]`` must be the
    single fundamental class, ``labels[dim]`` the single point class).
    ``table`` maps unordered label pairs to a result vector; missing products
    of positive-codimension classes are zero, products with the fundamental
    class are the identity.  ``polarization`` is a codimension-one class.
    """

    label: str
    dim: int
    labels: tuple[tuple[str, ...], ...]
    table: tuple[tuple[tuple[str, str], tuple[tuple[str, Fraction], ...]], ...]
    polarization: tuple[Fraction, ...] = ()
    _mult: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.labels) != self.dim + 1:
            raise RingError("declared space needs one label list per codimension")
        if len(self.labels[0]) != 1 or (self.dim > 0 and len(self.labels[self.dim]) != 1):
            raise RingError("codimension 0 and top codimension must have rank one")
        where = {}
        for p, labs in enumerate(self.labels):
            for i, lab in enumerate(labs):
                if lab in where:
                    raise RingError(f"duplicate basis label {lab!r}")
                where[lab] = (p, i)
        mult: dict = {}
        for (a, b), result in self.table:
            if a not in where or b not in where:
                raise RingError(f"unknown label in product {a}*{b}")
            (pa, ia), (pb, ib) = where[a], where[b]
            if pa + pb > self.dim:
                raise RingError(f"product {a}*{b} exceeds top codimension")
            vec: dict[int, Fraction] = {}
            for lab, c in result:
                pc, ic = where[lab]
                if pc != pa + pb:
                    raise RingError(f"product {a}*{b} has a term of the wrong codimension")
                vec[ic] = vec.get(ic, Fraction(0)) + Fraction(c)
            key, rev = (pa, ia, pb, ib), (pb, ib, pa, ia)
            for k in (key, rev):
                if k in mult and mult[k] != vec:
                    raise RingError(f"intersection table is not symmetric at {a}*{b}")
                mult[k] = vec
        object.__setattr__(self, "_mult", mult)
        if self.dim >= 1:
            pol = self.polarization or tuple(Fraction(1) for _ in self.labels[1])
            if len(pol) != len(self.labels[1]):
                raise RingError("polarization has the wrong length")
            object.__setattr__(self, "polarization", tuple(Fraction(c) for c in pol))
        for p in range(self.dim + 1):
            if exact.det(pairing_matrix(self, p)) == 0:
                raise RingError(f"degree pairing in codimension {p} is degenerate")
        if degree(omega_power(self, self.dim)) <= 0:
            raise RingError("polarization has nonpositive top self-intersection")

    @property
    def kind(self) -> str:
        return "declared"

    @property
    def name(self) -> str:
        return self.label

    def basis(self, p: int) -> tuple[str, ...]:
        self.check_codim(p)
        return self.labels[p]

    def basis_labels(self, p: int) -> list[str]:
        return list(self.basis(p))

    def product_coeffs(self, p, i, q, j):
        if p == 0:
            return {j: Fraction(1)}
        if q == 0:
            return {i: Fraction(1)}
        return self._mult.get((p, i, q, j), {})

    def polarization_coeffs(self):
        return self.polarization


@dataclass(frozen=True)
class CycleClass:
    """A class in the codimension ``codim`` part of the numerical ring of ``space``."""

    space: Space
    codim: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        self.space.check_codim(self.codim)
        if len(self.coeffs) != self.space.rank(self.codim):
            raise RingError("coefficient vector does not match the basis size")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, space: Space, p: int) -> "CycleClass":
        return cls(space, p, (Fraction(0),) * space.rank(p))

    @classmethod
    def basis_class(cls, space: Space, p: int, i: int) -> "CycleClass":
        v = [Fraction(0)] * space.rank(p)
        v[i] = Fraction(1)
        return cls(space, p, tuple(v))

    @classmethod
    def fundamental(cls, space: Space) -> "CycleClass":
        return cls(space, 0, (Fraction(1),))

    @property
    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same(self, other: "CycleClass"):
        if self.space != other.space:
            raise RingError(f"space mismatch: {self.space} vs {other.space}")
        if self.codim != other.codim:
            raise RingError("codimension mismatch")

    def __add__(self, other: "CycleClass") -> "CycleClass":
        self._same(other)
        return CycleClass(self.space, self.codim, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycleClass") -> "CycleClass":
        self._same(other)
        return CycleClass(self.space, self.codim, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycleClass":
        return CycleClass(self.space, self.codim, tuple(-a for a in self.coeffs))

    def __rmul__(self, c) -> "CycleClass":
        return CycleClass(self.space, self.codim, tuple(Fraction(c) * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, CycleClass):
            return intersect(self, other)
        return self.__rmul__(other)

    def __str__(self) -> str:
        terms = []
        for c, lab in zip(self.coeffs, self.space.basis_labels(self.codim)):
            if c:
                terms.append(lab if c == 1 else f"{exact.format_fraction(c)}*{lab}")
        return " + ".join(terms) if terms else "0"


def intersect(a: CycleClass, b: CycleClass) -> CycleClass:
    """Intersection product; bilinear and commutative."""
    if a.space != b.space:
        raise RingError(f"space mismatch: {a.space} vs {b.space}")
    space = a.space
    p = a.codim + b.codim
    if p > space.dim:
        raise RingError(f"codimension overflow: {a.codim} + {b.codim} > {space.dim}")
    out = [Fraction(0)] * space.rank(p)
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j, cb in enumerate(b.coeffs):
            if not cb:
                continue
            for k, c in space.product_coeffs(a.codim, i, b.codim, j).items():
                out[k] += ca * cb * c
    return CycleClass(space, p, tuple(out))


def degree(a: CycleClass) -> Fraction:
    """Degree of a top-codimension class: its coefficient on the point class."""
    if a.codim != a.space.dim:
        raise RingError(f"degree needs a top-codimension class, got codimension {a.codim}")
    return a.coeffs[0]


def omega_power(space: Space, p: int) -> CycleClass:
    """``omega^p`` for the fixed polarization of ``space``."""
    space.check_codim(p)
    if isinstance(space, MonomialSpace):
        # multinomial expansion of (h_1 + ... + h_r)^p with h_i^{k_i+1} = 0
        coeffs = []
        for mono in space.basis(p):
            c = factorial(p)
            for e in mono:
                c //= factorial(e)
            coeffs.append(Fraction(c))
        return CycleClass(space, p, tuple(coeffs))
    result = CycleClass.fundamental(space)
    if p:
        pol = CycleClass(space, 1, space.polarization_coeffs())
        for _ in range(p):
            result = intersect(result, pol)
    return result


def polarization(space: Space) -> CycleClass:
    return CycleClass(space, 1, space.polarization_coeffs())


def pairing_matrix(space: Space, p: int) -> list[list[Fraction]]:
    """``M[i][j] = degree(b_i * b_j')`` for bases of codimension ``p`` and ``dim - p``."""
    k = space.dim
    rows = []
    for i in range(space.rank(p)):
        bi = CycleClass.basis_class(space, p, i)
        rows.append([degree(intersect(bi, CycleClass.basis_class(space, k - p, j)))
                     for j in range(space.rank(k - p))])
    return rows


def pairing_vector(space: Space, cls: CycleClass) -> list[Fraction]:
    """``u[i] = degree(b_i * cls)`` over the basis of the complementary codimension."""
    p = space.dim - cls.codim
    return [degree(intersect(CycleClass.basis_class(space, p, i), cls)) for i in range(space.rank(p))]


def norm_l1(v: CycleClass) -> Fraction:
    """Monomial-basis L1 norm weighted by basis degrees against ``omega^(k-p)``."""
    weights = pairing_vector(v.space, omega_power(v.space, v.space.dim - v.codim))
    return sum((abs(c) * w for c, w in zip(v.coeffs, weights)), Fraction(0))
