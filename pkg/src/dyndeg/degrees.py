"""Degree sequences and dynamical degrees.

Exact values come from one of two certified routes:

* a linear model ``s_n = u^T L^n v`` with ``L`` the combined pullback matrix,
  valid whenever every composition rule the iteration can use is compatible
  with matrix products.  The minimal recurrence of ``s_n`` (Berlekamp-Massey)
  is a polynomial whose largest positive root is the growth rate: the
  generating function is rational with positive coefficients, so its
  dominant singularity is on the positive axis.
* a Laurent route for ``sum c_j b^j`` with ``b`` a declared birational atom
  acting on a rank-one ``N^p`` where ``b o rev(b) = diag`` breaks the linear
  model.  Then ``F^n`` is the ``n``-th power of a Laurent polynomial ``P`` and
  the rate is ``max(inf_{t >= mu} P(t), inf_{0 < t <= 1/nu} P(t))``.

Anything else is reported as an estimate with a Fekete-type upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact
from .algebra import (Correspondence, DEFAULT_MAX_TERMS, combined_matrix, deg_p, degree_weights,
                      iterates, pullback_class, pushforward_class)
from .atoms import Atom, DeclaredAtom, UndeclaredComposition
from .exact import Algebraic
from .rings import degree, intersect, omega_power

DEFAULT_N = 12


class StabilityNotDeclared(ValueError):
    """The combined pullback matrix is not known to compute iterate degrees."""


@dataclass(frozen=True)
class DegreeReport:
    p: int
    sequence: tuple[int, ...]
    root_sequence: tuple[Fraction, ...]
    exact_value: Algebraic | None
    method: str
    fekete_upper: Fraction | None
    C_used: int = 1
    max_ratio: Fraction | None = None
    stability_assertions: tuple[str, ...] = ()
    recurrence: tuple[int, ...] | None = None
    converged: bool = False
    notes: tuple[str, ...] = ()

    @property
    def is_exact(self) -> bool:
        return self.exact_value is not None

    @property
    def value_text(self) -> str:
        if self.exact_value is not None:
            return exact.format_exact(self.exact_value)
        return "~" + f"{float(self.root_sequence[-1]):.6f}"

    def approx(self) -> float:
        if self.exact_value is not None:
            return float(self.exact_value)
        return float(self.root_sequence[-1])


@dataclass(frozen=True)
class NormEstimate:
    exact_value: Algebraic | None
    lower: Fraction | None = None
    upper: Fraction | None = None


@dataclass(frozen=True)
class SubmultReport:
    holds: bool
    max_ratio: Fraction
    C: int
    worst: tuple[int, int] | None


# sequences -----------------------------------------------------------------

def degree_sequence(F: Correspondence, p: int, N: int, max_terms: int = DEFAULT_MAX_TERMS) -> list[int]:
    if N < 1:
        raise ValueError("N must be >= 1")
    F.space.check_codim(p)
    out = []
    for n, G in enumerate(iterates(F, max_terms), start=1):
        out.append(deg_p(G, p))
        if n == N:
            break
    return out


def degree_table(F: Correspondence, ps: Sequence[int], N: int,
                 max_terms: int = DEFAULT_MAX_TERMS) -> dict[int, list[int]]:
    """Degree sequences for several ``p`` sharing one pass over the iterates."""
    for p in ps:
        F.space.check_codim(p)
    table: dict[int, list[int]] = {p: [] for p in ps}
    for n, G in enumerate(iterates(F, max_terms), start=1):
        for p in ps:
            table[p].append(deg_p(G, p))
        if n == N:
            break
    return table


# stability -----------------------------------------------------------------

def linear_model_exact(atoms: Sequence[Atom], p: int) -> tuple[bool, str]:
    """Whether ``(F^n)^* = (F^*)^n`` on ``N^p`` for sums of these atoms.

    Torus rules multiply matrices exactly; declared powers do so by the
    user's stability assertion; cancellation ``b o rev(b) = diag`` does so only
    when the declared matrices are mutually inverse.
    """
    decls = {a.decl for a in atoms if isinstance(a, DeclaredAtom)}
    for d in decls:
        signs = {a.n > 0 for a in atoms if isinstance(a, DeclaredAtom) and a.decl == d}
        if len(signs) == 2:
            m = [list(r) for r in d.matrices[p]]
            r = [list(x) for x in d.reverse_matrix(p)]
            ident = exact.identity(len(m))
            if exact.matmul(m, r) != ident or exact.matmul(r, m) != ident:
                return False, f"{d.name} o {d.reverse_name} = diag is not matrix-compatible on N^{p}"
    return True, "composition rules are compatible with matrix products"


def stability_assertions(atoms: Sequence[Atom]) -> tuple[str, ...]:
    names = sorted({a.decl.name for a in atoms if isinstance(a, DeclaredAtom)})
    return tuple(f"{n}: iterates use matrix powers (declared 1-stable)" for n in names)


# growth extraction ---------------------------------------------------------

def _root_approx(seq: Sequence[int]) -> tuple[Fraction, ...]:
    return tuple(exact.nth_root_upper(s, n) for n, s in enumerate(seq, start=1))


def _converged(roots: Sequence[Fraction]) -> bool:
    if len(roots) < 4:
        return False
    tail = roots[-4:]
    return all(abs(b - a) <= Fraction(1, 10 ** 6) * abs(b) for a, b in zip(tail, tail[1:]))


def submultiplicativity(seq: Sequence[int], C: int = 1) -> SubmultReport:
    """Checks ``s_{n+m} <= C s_n s_m`` for all ``n + m <= len(seq)``."""
    worst, best = None, Fraction(0)
    N = len(seq)
    for n in range(1, N + 1):
        for m in range(1, N - n + 1):
            r = Fraction(seq[n + m - 1], seq[n - 1] * seq[m - 1])
            if r > best:
                best, worst = r, (n, m)
    return SubmultReport(best <= C, best, C, worst)


def fekete_bound(seq: Sequence[int], C: int = 1) -> Fraction:
    return min(exact.nth_root_upper(C * s, n) for n, s in enumerate(seq, start=1))


def linear_growth(L, u, v, seq: Sequence[int]) -> tuple[Algebraic, tuple[int, ...]]:
    """Exact growth rate of ``u^T L^n v`` checked against ``seq`` (entries ``n = 1..``)."""
    d = len(L)
    vals = []
    w = [Fraction(x) for x in v]
    for _ in range(max(2 * d + 2, len(seq) + 1)):
        vals.append(sum(a * b for a, b in zip(u, w)))
        w = exact.matvec(L, w)
    for n, s in enumerate(seq, start=1):
        if vals[n] != s:
            raise AssertionError(f"linear model disagrees with normal forms at n={n}: {vals[n]} != {s}")
    rec = exact.berlekamp_massey(vals)
    lam = Algebraic.largest_real_root(rec)
    return lam, tuple(exact.primitive(rec))


def _poly_at(poly: Sequence[Fraction], t: Algebraic) -> Algebraic:
    acc = Algebraic.rational(0)
    for c in reversed(list(poly)):
        acc = acc * t + c
    return acc


def _laurent_inf(coeffs: dict[int, Fraction], lo: Fraction | None, hi: Fraction | None):
    """Exact ``inf P(t)`` over ``[lo, inf)`` or ``(0, hi]`` for a Laurent polynomial with positive coefficients."""
    m = -min(min(coeffs), 0)
    top = max(max(coeffs), 0)
    Q = [Fraction(0)] * (top + m + 1)
    for j, c in coeffs.items():
        Q[j + m] += c
    # P(t) = Q(t) / t^m ; P'(t) t^(m+1) = t Q'(t) - m Q(t)
    crit = exact.psub(exact.pmul([0, 1], exact.pderiv(Q)), exact.pscale(Q, m))

    def value(t):
        if isinstance(t, Algebraic):
            return _poly_at(Q, t) / (t ** m)
        return exact.peval(Q, t) / t ** m

    cands = []
    if lo is not None:
        cands.append(Algebraic.rational(value(lo)))
        if top == 0:
            cands.append(Algebraic.rational(coeffs.get(0, Fraction(0))))
    else:
        cands.append(Algebraic.rational(value(hi)))
        if m == 0:
            cands.append(Algebraic.rational(coeffs.get(0, Fraction(0))))
    crit = exact.trim(crit)
    if len(crit) > 1:
        for r in Algebraic.real_roots(crit):
            if r > 0 and ((lo is not None and r > lo) or (hi is not None and r < hi)):
                f = r.as_fraction()
                cands.append(Algebraic.rational(value(f)) if f is not None else value(r))
    best = cands[0]
    for c in cands[1:]:
        if c < best:
            best = c
    return best


def laurent_growth(F: Correspondence, p: int) -> Algebraic | None:
    """Growth rate for sums of powers of one birational declared atom on a rank-one ``N^p``."""
    decls = set()
    coeffs: dict[int, Fraction] = {}
    for a, c in F.terms:
        if a.is_diagonal:
            j = 0
        elif isinstance(a, DeclaredAtom) and a.decl.birational:
            decls.add(a.decl)
            j = a.n
        else:
            return None
        coeffs[j] = coeffs.get(j, Fraction(0)) + c
    if len(decls) != 1 or F.space.rank(p) != 1:
        return None
    d = decls.pop()
    mu = Fraction(d.matrices[p][0][0])
    nu = Fraction(d.reverse_matrix(p)[0][0])
    if mu <= 0 or nu <= 0:
        return None
    A = _laurent_inf(coeffs, mu, None)
    B = _laurent_inf(coeffs, None, 1 / nu)
    return A if B < A else B


def growth_report(p: int, seq: Sequence[int], *, linear=None, laurent: Algebraic | None = None,
                  assertions: Sequence[str] = (), notes: Sequence[str] = (), C: int = 1) -> DegreeReport:
    roots = _root_approx(seq)
    sub = submultiplicativity(seq, C)
    fek = fekete_bound(seq, C) if sub.holds else None
    notes = list(notes)
    if not sub.holds:
        notes.append(f"submultiplicativity with C={C} violated at {sub.worst} (ratio "
                     f"{exact.format_fraction(sub.max_ratio)}); no Fekete certificate")
    value, method, rec = None, "estimate", None
    if linear is not None:
        L, u, v = linear
        value, rec = linear_growth(L, u, v, seq)
        method = "linear-recurrence"
    elif laurent is not None:
        value, method = laurent, "laurent-extremum"
    if value is not None and fek is not None and value > fek:
        raise AssertionError("exact value exceeds the Fekete upper bound")
    return DegreeReport(p=p, sequence=tuple(seq), root_sequence=roots, exact_value=value, method=method,
                        fekete_upper=fek, C_used=C, max_ratio=sub.max_ratio,
                        stability_assertions=tuple(assertions), recurrence=rec,
                        converged=_converged(roots), notes=tuple(notes))


def dyn_degree(F: Correspondence, p: int, N: int = DEFAULT_N, max_terms: int = DEFAULT_MAX_TERMS,
               seq: Sequence[int] | None = None) -> DegreeReport:
    if seq is None:
        seq = degree_sequence(F, p, N, max_terms)
    ok, reason = linear_model_exact(F.atoms, p)
    assertions = stability_assertions(F.atoms)
    if ok:
        u, v = degree_weights(F.space, p)
        return growth_report(p, seq, linear=(combined_matrix(F, p), u, v), assertions=assertions)
    lam = laurent_growth(F, p)
    notes = [reason]
    if lam is None:
        notes.append("no exact route; value is the last root-sequence entry")
    return growth_report(p, seq, laurent=lam, assertions=assertions, notes=notes)


def dyn_degrees(F: Correspondence, N: int = DEFAULT_N, max_terms: int = DEFAULT_MAX_TERMS,
                ps: Sequence[int] | None = None) -> dict[int, DegreeReport]:
    ps = list(range(F.space.dim + 1)) if ps is None else list(ps)
    table = degree_table(F, ps, N, max_terms)
    return {p: dyn_degree(F, p, N, max_terms, seq=table[p]) for p in ps}


def dyn_degree_via_norm(F: Correspondence, p: int, exact_limit: int = 8,
                        steps: int = 60) -> NormEstimate:
    ok, reason = linear_model_exact(F.atoms, p)
    if not ok:
        raise StabilityNotDeclared(reason)
    L = combined_matrix(F, p)
    if len(L) <= exact_limit:
        return NormEstimate(exact.spectral_radius(L))
    lo, hi = collatz_wielandt(L, steps)
    return NormEstimate(None, lo, hi)


def collatz_wielandt(L, steps: int = 60, digits: int = 30) -> tuple[Fraction, Fraction]:
    """Certified ``min (Lx)_i/x_i <= rho(L) <= max (Lx)_i/x_i`` for a positive vector ``x``."""
    n = len(L)
    x = [Fraction(1)] * n
    scale = Fraction(10) ** digits
    lo, hi = Fraction(0), None
    for _ in range(steps):
        y = exact.matvec(L, x)
        ratios = [yi / xi for yi, xi in zip(y, x)]
        lo, cur_hi = max(lo, min(ratios)), max(ratios)
        hi = cur_hi if hi is None else min(hi, cur_hi)
        top = max(y)
        if top == 0:
            return Fraction(0), Fraction(0)
        # keep x strictly positive with bounded denominators
        x = [max(Fraction(round(yi / top * scale), 1) / scale, 1 / scale) for yi in y]
    return lo, hi


def check_submultiplicative(F: Correspondence, p: int, N: int, C: int = 1) -> SubmultReport:
    return submultiplicativity(degree_sequence(F, p, N), C)


@dataclass(frozen=True)
class DualDegree:
    holds: bool
    pullback_side: Fraction
    pushforward_side: Fraction


def dual_degree_check(F: Correspondence, p: int) -> DualDegree:
    """``deg(F^* omega^p . omega^(k-p)) == deg(omega^p . F_* omega^(k-p))``."""
    k = F.space.dim
    left = degree(intersect(pullback_class(F, omega_power(F.space, p)), omega_power(F.space, k - p)))
    right = degree(intersect(omega_power(F.space, p), pushforward_class(F, omega_power(F.space, k - p))))
    return DualDegree(left == right, left, right)


__all__ = [
    "DegreeReport", "NormEstimate", "SubmultReport", "StabilityNotDeclared", "DualDegree",
    "degree_sequence", "degree_table", "dyn_degree", "dyn_degrees", "dyn_degree_via_norm",
    "check_submultiplicative", "dual_degree_check", "linear_model_exact", "laurent_growth",
    "growth_report", "linear_growth", "submultiplicativity", "fekete_bound", "collatz_wielandt",
    "UndeclaredComposition", "DEFAULT_N",
]
