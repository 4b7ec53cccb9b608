"""Executable checks producing reports with the exact numbers on both sides.

A verdict of ``holds`` or ``fails`` is only issued from exact quantities;
anything estimated makes the check ``inconclusive``.  ``info`` marks checks
that only report (a criterion that stays silent, a certificate that is not
emitted).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import exact
from .algebra import Correspondence, add, compose, iterates
from .atoms import commutes
from .degrees import DEFAULT_N, DegreeReport, check_submultiplicative, dual_degree_check, dyn_degrees
from .exact import Algebraic, format_exact
from .relative import SemiConjugacy, rel_dyn_degrees

HOLDS, FAILS, INCONCLUSIVE, INFO = "holds", "fails", "inconclusive", "info"


@dataclass(frozen=True)
class CheckReport:
    name: str
    inputs: str
    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    verdict: str
    summary: str
    claims: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    expected: str | None = None

    @property
    def matches_expectation(self) -> bool:
        return self.expected is not None and self.expected == self.verdict

    def with_expectation(self, expected: str) -> "CheckReport":
        summary = self.summary
        if expected == self.verdict and expected == FAILS:
            summary += ", expected"
        return CheckReport(self.name, self.inputs, self.columns, self.rows, self.verdict, summary,
                           self.claims, self.notes, expected)

    def lines(self) -> list[str]:
        out = [f"check {self.name}: {self.inputs}"]
        if self.rows:
            widths = [max(len(c), *(len(r[i]) for r in self.rows)) for i, c in enumerate(self.columns)]
            out.append("  " + "  ".join(c.rjust(w) for c, w in zip(self.columns, widths)))
            for r in self.rows:
                out.append("  " + "  ".join(x.rjust(w) for x, w in zip(r, widths)))
        for c in self.claims:
            out.append(f"  claim: {c}")
        for n in self.notes:
            out.append(f"  note: {n}")
        out.append(f"  {self.summary}")
        return out


def _fmt(x) -> str:
    return format_exact(x)


def _alg(x) -> Algebraic:
    return x if isinstance(x, Algebraic) else Algebraic.rational(x)


def _exact_vector(reports: Mapping[int, DegreeReport]) -> list[Algebraic] | None:
    if any(not r.is_exact for r in reports.values()):
        return None
    return [reports[p].exact_value for p in sorted(reports)]


def iterate_irreducibility(F: Correspondence, n_max: int = 6) -> list[bool]:
    """Syntactic evidence: whether ``F^n`` is a single (possibly multiplied) term."""
    out = []
    for n, G in enumerate(iterates(F), start=1):
        out.append(G.is_irreducible_like)
        if n == n_max:
            break
    return out


# log-concavity --------------------------------------------------------------

def log_concavity_from_values(lam: Sequence, label: str, irreducible: Sequence[bool] | None = None) -> CheckReport:
    rows, verdict, first = [], HOLDS, None
    lam = [_alg(x) for x in lam]
    for p in range(1, len(lam) - 1):
        lhs, rhs = lam[p] * lam[p], lam[p - 1] * lam[p + 1]
        ok = not (lhs < rhs)
        rows.append((str(p), _fmt(lhs), _fmt(rhs), "yes" if ok else "no"))
        if not ok and first is None:
            first, verdict = (lhs, rhs), FAILS
    notes = []
    if irreducible is not None:
        if all(irreducible):
            notes.append(f"iterates 1..{len(irreducible)} are single terms (hypothesis satisfied)")
        else:
            notes.append("reducible iterates: the irreducibility hypothesis does not hold")
    if verdict == HOLDS:
        summary = "log-concavity: HOLDS"
    else:
        summary = f"log-concavity: FAILS ({_fmt(first[0])} < {_fmt(first[1])})"
    return CheckReport("log_concavity", label, ("p", "lam_p^2", "lam_{p-1}lam_{p+1}", "ok"), tuple(rows),
                       verdict, summary, ("relative dynamical degrees of iterates-irreducible correspondences "
                                          "are log-concave",), tuple(notes))


def check_log_concavity(F: Correspondence, N: int = DEFAULT_N) -> CheckReport:
    reps = dyn_degrees(F, N)
    lam = _exact_vector(reps)
    if lam is None:
        return CheckReport("log_concavity", str(F), (), (), INCONCLUSIVE,
                           "log-concavity: INCONCLUSIVE (estimates only)")
    return log_concavity_from_values(lam, str(F), iterate_irreducibility(F))


# product formulas -----------------------------------------------------------

def _lam(reports: Mapping[int, DegreeReport]) -> dict[int, Algebraic] | None:
    v = _exact_vector(reports)
    return None if v is None else dict(zip(sorted(reports), v))


def _product_rhs(p: int, lam_g: Mapping[int, Algebraic], lam_rel: Mapping[int, Algebraic],
                 l: int, k: int) -> Algebraic:
    best = None
    for j in range(0, l + 1):
        if 0 <= p - j <= k - l:
            v = lam_g[j] * lam_rel[p - j]
            if best is None or best < v:
                best = v
    return best


@dataclass(frozen=True)
class LambdaData:
    f: dict[int, Algebraic]
    rel: dict[int, Algebraic]
    g: dict[int, Algebraic]
    k: int
    l: int


def lambda_data(sc: SemiConjugacy, N: int = DEFAULT_N) -> LambdaData | None:
    lf, lr, lg = _lam(dyn_degrees(sc.f, N)), _lam(rel_dyn_degrees(sc, N)), _lam(dyn_degrees(sc.g, N))
    if lf is None or lr is None or lg is None:
        return None
    return LambdaData(lf, lr, lg, sc.k, sc.l)


def check_product_formula(sc: SemiConjugacy, N: int = DEFAULT_N) -> CheckReport:
    """``lam_0(g) lam_p(f) = max_j lam_j(g) lam_{p-j}(f|pi)`` for every ``p``."""
    label = f"f = {sc.f}, g = {sc.g}, multiplier {sc.multiplier}"
    data = lambda_data(sc, N)
    if data is None:
        return CheckReport("product_formula", label, (), (), INCONCLUSIVE,
                           "product formula: INCONCLUSIVE (estimates only)")
    rows, verdict = [], HOLDS
    for p in range(data.k + 1):
        lhs = data.g[0] * data.f[p]
        rhs = _product_rhs(p, data.g, data.rel, data.l, data.k)
        ok = lhs == rhs
        rows.append((str(p), _fmt(data.f[p]), _fmt(lhs), _fmt(rhs), "yes" if ok else "no"))
        if not ok:
            verdict = FAILS
    notes = []
    if not sc.g.is_irreducible_like:
        notes.append("g is not a multiple of a single atom: the equality is outside its hypothesis")
    summary = "product formula: " + ("HOLDS" if verdict == HOLDS else "FAILS")
    return CheckReport("product_formula", label, ("p", "lam_p(f)", "lam_0(g)lam_p(f)", "max_j", "equal"),
                       tuple(rows), verdict, summary,
                       ("lam_0(g) lam_p(f) = max_j lam_j(g) lam_{p-j}(f|pi) when g is a multiple of a rational map",),
                       tuple(notes))


def weak_product_from_data(data: LambdaData, label: str, notes: Sequence[str] = ()) -> CheckReport:
    rows, verdict, first = [], HOLDS, None
    c_min = None
    for p in range(data.k + 1):
        lhs = data.g[0] * data.f[p]
        rhs = _product_rhs(p, data.g, data.rel, data.l, data.k)
        ok = not (lhs < rhs)
        ratio = rhs / data.f[p]
        if c_min is None or c_min < ratio:
            c_min = ratio
        rows.append((str(p), _fmt(lhs), _fmt(rhs), "yes" if ok else "no"))
        if not ok and first is None:
            first, verdict = (lhs, rhs), FAILS
    sharp = not (c_min < data.g[0])
    notes = list(notes) + [f"minimal feasible c = {_fmt(c_min)}, lam_0(g) = {_fmt(data.g[0])}"
                           + (" (c >= lam_0(g))" if sharp else " (c < lam_0(g))")]
    if not sharp:
        verdict = FAILS
    if verdict == HOLDS:
        summary = f"weak product formula: HOLDS (c_min = {_fmt(c_min)} = lam_0(g))" if c_min == data.g[0] \
            else f"weak product formula: HOLDS (c_min = {_fmt(c_min)})"
    elif first is not None:
        summary = f"weak product formula: FAILS ({_fmt(first[0])} < {_fmt(first[1])})"
    else:
        summary = f"weak product formula: FAILS (c_min = {_fmt(c_min)} < lam_0(g))"
    return CheckReport("weak_product", label, ("p", "lam_0(g)lam_p(f)", "max_j", ">="), tuple(rows), verdict,
                       summary, ("lam_0(g) lam_p(f) >= max_j lam_j(g) lam_{p-j}(f|pi), and any feasible c "
                                 "satisfies c >= lam_0(g), when some iterates of g are irreducible",),
                       tuple(notes))


def check_weak_product(sc: SemiConjugacy, N: int = DEFAULT_N) -> CheckReport:
    label = f"f = {sc.f}, g = {sc.g}"
    data = lambda_data(sc, N)
    if data is None:
        return CheckReport("weak_product", label, (), (), INCONCLUSIVE,
                           "weak product formula: INCONCLUSIVE (estimates only)")
    irr = iterate_irreducibility(sc.g)
    notes = [f"g iterates single-term for n = 1..{len(irr)}: {'yes' if all(irr) else 'no'}"]
    if not any(irr):
        notes.append("no irreducible iterate of g observed: outside the hypothesis")
    return weak_product_from_data(data, label, notes)


def c_min(data: LambdaData) -> Algebraic:
    best = None
    for p in range(data.k + 1):
        r = _product_rhs(p, data.g, data.rel, data.l, data.k) / data.f[p]
        if best is None or best < r:
            best = r
    return best


# triangle inequality ----------------------------------------------------------

def check_triangle(F1: Correspondence, F2: Correspondence, N: int = DEFAULT_N) -> CheckReport:
    label = f"F1 = {F1}, F2 = {F2}"
    missing = [(a, b) for a in F1.atoms for b in F2.atoms if not commutes(a, b)]
    if missing:
        a, b = missing[0]
        return CheckReport("triangle", label, (), (), INCONCLUSIVE,
                           f"triangle inequality: INCONCLUSIVE (no commutation certificate for {a}, {b})")
    r1, r2, r12 = dyn_degrees(F1, N), dyn_degrees(F2, N), dyn_degrees(add(F1, F2), N)
    l1, l2, l12 = _exact_vector(r1), _exact_vector(r2), _exact_vector(r12)
    if l1 is None or l2 is None or l12 is None:
        return CheckReport("triangle", label, (), (), INCONCLUSIVE,
                           "triangle inequality: INCONCLUSIVE (estimates only)")
    rows, verdict, strict = [], HOLDS, []
    for p in range(F1.space.dim + 1):
        s = l1[p] + l2[p]
        ok = not (s < l12[p])
        kind = "equal" if l12[p] == s else ("strict" if ok else "violated")
        if kind == "strict":
            strict.append(p)
        rows.append((str(p), _fmt(l12[p]), _fmt(l1[p]), _fmt(l2[p]), _fmt(s), kind))
        if not ok:
            verdict = FAILS
    if verdict == FAILS:
        summary = "triangle inequality: FAILS"
    elif strict:
        summary = f"triangle inequality: HOLDS (strict at p = {', '.join(map(str, strict))})"
    else:
        summary = "triangle inequality: HOLDS (equality)"
    return CheckReport("triangle", label, ("p", "lam(F1+F2)", "lam(F1)", "lam(F2)", "sum", "kind"),
                       tuple(rows), verdict, summary,
                       ("lam_p(f1 + f2) <= lam_p(f1) + lam_p(f2) for commuting f1, f2",))


# monotonicity --------------------------------------------------------------------

def check_monotonicity(sc1: SemiConjugacy, sc2: SemiConjugacy, phi: Correspondence | None = None,
                       N: int = DEFAULT_N) -> CheckReport:
    """``lam_p(f1|pi1) >= lam_p(f2|pi2)`` given a generically finite ``phi: (X2, f2) -> (X1, f1)``."""
    label = f"f1 = {sc1.f}, f2 = {sc2.f}" + (f", phi = {phi}" if phi is not None else "")
    notes = []
    if phi is not None:
        same = compose(phi, sc2.f) == compose(sc1.f, phi)
        notes.append("phi o f2 = f1 o phi: " + ("verified" if same else "NOT verified"))
        if not same:
            return CheckReport("monotonicity", label, (), (), INCONCLUSIVE,
                               "monotonicity: INCONCLUSIVE (phi is not a semi-conjugacy)", notes=tuple(notes))
    a, b = _lam(rel_dyn_degrees(sc1, N)), _lam(rel_dyn_degrees(sc2, N))
    if a is None or b is None:
        return CheckReport("monotonicity", label, (), (), INCONCLUSIVE, "monotonicity: INCONCLUSIVE (estimates only)")
    rows, verdict = [], HOLDS
    for p in sorted(set(a) & set(b)):
        ok = not (a[p] < b[p])
        rows.append((str(p), _fmt(a[p]), _fmt(b[p]), "yes" if ok else "no"))
        if not ok:
            verdict = FAILS
    return CheckReport("monotonicity", label, ("p", "lam(f1|pi1)", "lam(f2|pi2)", ">="), tuple(rows), verdict,
                       "monotonicity: " + ("HOLDS" if verdict == HOLDS else "FAILS"),
                       ("lam_p(f1|pi1) >= lam_p(f2|pi2) under generically finite semi-conjugacies",), tuple(notes))


# primitivity and obstructions ---------------------------------------------------

def check_primitivity(F: Correspondence, N: int = DEFAULT_N) -> CheckReport:
    reps = dyn_degrees(F, N, ps=[0, 1])
    lam = _exact_vector(reps)
    if lam is None:
        return CheckReport("primitivity", str(F), (), (), INCONCLUSIVE, "primitivity: INCONCLUSIVE (estimates only)")
    l0, l1 = lam
    rows = (("0", _fmt(l0)), ("1", _fmt(l1)))
    claim = ("lam_0(f) > lam_1(f) implies f is weakly primitive",)
    if l1 < l0:
        return CheckReport("primitivity", str(F), ("p", "lam_p"), rows, HOLDS,
                           f"weakly primitive: YES ({_fmt(l0)} > {_fmt(l1)})", claim)
    return CheckReport("primitivity", str(F), ("p", "lam_p"), rows, INFO,
                       f"criterion silent ({_fmt(l0)} <= {_fmt(l1)})", claim)


def check_obstruction(lam: Sequence, label: str) -> CheckReport:
    """Certificates excluding semi-conjugacies onto multiples of rational maps."""
    if any(x is None for x in lam):
        return CheckReport("obstruction", label, (), (), INCONCLUSIVE, "obstruction: INCONCLUSIVE (estimates only)")
    lam = [_alg(x) for x in lam]
    k = len(lam) - 1
    if k == 2:
        lhs, rhs = lam[1] * lam[1], lam[0] * lam[2]
        cert = lhs < rhs
        rows = (("lam_1^2", _fmt(lhs)), ("lam_0 lam_2", _fmt(rhs)))
        text = (f"obstruction certificate: YES ({_fmt(lhs)} < {_fmt(rhs)}): no semi-conjugacy to a curve "
                f"with multiple-of-rational-map dynamics") if cert else "obstruction certificate: none"
        claim = "on a surface semi-conjugate to a*g' over a curve, lam_1^2 >= lam_0 lam_2"
    elif k == 3:
        lhs, rhs = lam[0] * lam[3], lam[1] * lam[2]
        cert = rhs < lhs
        rows = (("lam_0 lam_3", _fmt(lhs)), ("lam_1 lam_2", _fmt(rhs)))
        text = (f"obstruction certificate: YES ({_fmt(lhs)} > {_fmt(rhs)}): lam_0 lam_3 <= lam_1 lam_2 violated"
                if cert else "obstruction certificate: none")
        claim = "on a threefold semi-conjugate to a*g' with 0 < dim Y < 3, lam_0 lam_3 <= lam_1 lam_2"
    else:
        return CheckReport("obstruction", label, (), (), INFO, f"no obstruction test in dimension {k}")
    return CheckReport("obstruction", label, ("quantity", "value"), rows, HOLDS if cert else INFO, text, (claim,))


# simplicity -----------------------------------------------------------------------

def _multiplicity(P, root: Algebraic) -> int:
    d, m = exact.trim(P), 0
    while len(d) > 1 and root.is_root_of(d):
        m += 1
        d = exact.pderiv(d)
    return m


def _max_other_modulus_sq(P, rho: Algebraic) -> tuple[Algebraic | None, str]:
    """``max |z|^2`` over eigenvalues other than one copy of ``rho``.

    Real eigenvalues are compared directly.  For the others, every ``z zbar`` is a
    positive real root of the pairwise-product polynomial whose multiplicity exceeds
    the number of ordered real pairs with that product.  Any extra value found that
    way is ``|z_i z_j|`` for two non-real eigenvalues, so never above the true maximum.
    """
    P = exact.trim(P)
    reals = Algebraic.real_roots(exact.squarefree(P))
    mults = [_multiplicity(P, root) for root in reals]
    best = None
    for root, m in zip(reals, mults):
        if root == rho:
            m -= 1
        if m > 0:
            sq = root * root
            if best is None or best < sq:
                best = sq
    if sum(mults) == len(P) - 1:
        return (best if best is not None else Algebraic.rational(0)), "real spectrum"
    ints = exact.primitive(P)
    S = exact.trim(exact._binary_op_poly(ints, ints, "*"))
    for v in Algebraic.real_roots(exact.squarefree(S)):
        if not Algebraic.rational(0) < v:
            continue
        if best is not None and not best < v:
            continue
        real_pairs = sum(mi * mj for ri, mi in zip(reals, mults) for rj, mj in zip(reals, mults)
                         if ri * rj == v)
        if _multiplicity(S, v) > real_pairs:
            best = v
    return (best if best is not None else Algebraic.rational(0)), "pairwise-product resultant"


def check_simplicity(M1, M2, label: str = "") -> CheckReport:
    """``rho(M1)^2 >= rho(M2)``; if strict, ``rho(M1)`` simple and the rest of the spectrum in ``|z| <= sqrt(rho(M2))``."""
    P1 = exact.charpoly(M1)
    r1 = exact.spectral_radius(M1)
    r2 = exact.spectral_radius(M2)
    lhs = r1 * r1
    rows = [("rho(M1)", _fmt(r1)), ("rho(M2)", _fmt(r2)), ("rho(M1)^2", _fmt(lhs))]
    claims = ("r_1(f)^2 >= r_2(f)", "if r_1^2 > r_2 then r_1 is a simple eigenvalue and every other eigenvalue "
              "has modulus <= r_2^{1/2}")
    if lhs < r2:
        return CheckReport("simplicity", label, ("quantity", "value"), tuple(rows), FAILS,
                           f"simplicity: FAILS ({_fmt(lhs)} < {_fmt(r2)})", claims)
    if lhs == r2:
        return CheckReport("simplicity", label, ("quantity", "value"), tuple(rows), HOLDS,
                           f"simplicity: HOLDS (boundary {_fmt(lhs)} = {_fmt(r2)}, simplicity not required)", claims)
    simple = not r1.is_root_of(exact.pderiv(P1))
    rows.append(("rho(M1) simple", "yes" if simple else "no"))
    if not simple:
        return CheckReport("simplicity", label, ("quantity", "value"), tuple(rows), FAILS,
                           f"simplicity: FAILS ({_fmt(lhs)} > {_fmt(r2)} but rho(M1) = {_fmt(r1)} is a repeated root)",
                           claims, ("hypothesis: strict inequality forces a simple leading eigenvalue",))
    msq, how = _max_other_modulus_sq(P1, r1)
    if msq is None:
        return CheckReport("simplicity", label, ("quantity", "value"), tuple(rows), INCONCLUSIVE,
                           f"simplicity: INCONCLUSIVE ({how})", claims)
    second = _sqrt_text(msq)
    bound = _sqrt_text(r2)
    ok = not (r2 < msq)
    rows.append(("max other |z|", second))
    rows.append(("bound", bound))
    rel = "<" if msq < r2 else ("=" if msq == r2 else ">")
    verdict = HOLDS if ok else FAILS
    return CheckReport("simplicity", label, ("quantity", "value"), tuple(rows), verdict,
                       f"simplicity: {'HOLDS' if ok else 'FAILS'} ({_fmt(lhs)} > {_fmt(r2)}, simple, "
                       f"{second} {rel} {bound})", claims, (f"modulus bound via {how}",))


def _sqrt_text(x: Algebraic) -> str:
    f = x.as_fraction()
    if f is not None:
        num, den = f.numerator, f.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        if rn is not None and rd is not None:
            return exact.format_fraction(Fraction(rn, rd))
        return f"{exact.format_fraction(f)}^{{1/2}}"
    return f"({_fmt(x)})^{{1/2}}"


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


# sanity checks on degree data --------------------------------------------------

def check_submult(F: Correspondence, ps: Sequence[int], N: int = DEFAULT_N) -> CheckReport:
    rows, verdict = [], HOLDS
    for p in ps:
        r = check_submultiplicative(F, p, N)
        worst = "-" if r.worst is None else f"{r.worst[0]}+{r.worst[1]}"
        rows.append((str(p), exact.format_fraction(r.max_ratio), worst, "yes" if r.holds else "no"))
        if not r.holds:
            verdict = FAILS
    return CheckReport("submultiplicativity", str(F), ("p", "max ratio", "at n+m", "<= 1"), tuple(rows), verdict,
                       "submultiplicativity: " + ("HOLDS" if verdict == HOLDS else "FAILS"),
                       ("deg_p(F^(n+m)) <= deg_p(F^n) deg_p(F^m)",),
                       (f"ratio deg_p(F^(n+m)) / (deg_p(F^n) deg_p(F^m)) over n + m <= {N}",))


def check_dual(F: Correspondence, ps: Sequence[int]) -> CheckReport:
    rows, verdict = [], HOLDS
    for p in ps:
        d = dual_degree_check(F, p)
        rows.append((str(p), _fmt(d.pullback_side), _fmt(d.pushforward_side), "yes" if d.holds else "no"))
        if not d.holds:
            verdict = FAILS
    return CheckReport("dual_degree", str(F), ("p", "F^*w^p . w^(k-p)", "w^p . F_*w^(k-p)", "equal"), tuple(rows),
                       verdict, "dual degree identity: " + ("HOLDS" if verdict == HOLDS else "FAILS"),
                       ("pullback and pushforward degrees agree through the degree pairing",))


__all__ = [
    "CheckReport", "LambdaData", "HOLDS", "FAILS", "INCONCLUSIVE", "INFO",
    "check_log_concavity", "log_concavity_from_values", "check_product_formula", "check_weak_product",
    "weak_product_from_data", "lambda_data", "c_min", "check_triangle", "check_monotonicity",
    "check_primitivity", "check_obstruction", "check_simplicity", "iterate_irreducibility",
    "check_submult", "check_dual",
]
