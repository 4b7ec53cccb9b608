"""Exact univariate polynomials, real root isolation and real algebraic numbers.

Polynomials are lists of rationals, lowest degree first.  Everything here is
exact: Sturm sequences count roots, resultants are evaluated at integer points
and interpolated, and :class:`Algebraic` numbers carry an isolating interval
that is refined on demand.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

Poly = list  # list[Fraction], index = degree


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def trim(p: Iterable) -> Poly:
    out = [_q(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    return len(p) - 1


def padd(p, q) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def psub(p, q) -> Poly:
    return padd(p, [-c for c in q])


def pmul(p, q) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def pscale(p, c) -> Poly:
    return trim([c * a for a in p])


def pdivmod(p, q) -> tuple[Poly, Poly]:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [], p
    r = list(p)
    out = [Fraction(0)] * (len(p) - len(q) + 1)
    lead = q[-1]
    for i in range(len(out) - 1, -1, -1):
        c = r[i + len(q) - 1] / lead
        out[i] = c
        if c:
            for j, b in enumerate(q):
                r[i + j] -= c * b
    return trim(out), trim(r[: len(q) - 1])


def pmonic(p) -> Poly:
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def pgcd(p, q) -> Poly:
    p, q = trim(p), trim(q)
    while q:
        p, q = q, pdivmod(p, q)[1]
    return pmonic(p)


def pderiv(p) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree(p) -> Poly:
    p = trim(p)
    g = pgcd(p, pderiv(p))
    return pmonic(pdivmod(p, g)[0]) if len(g) > 1 else pmonic(p)


def primitive(p) -> list[int]:
    """Integer primitive polynomial with positive leading coefficient."""
    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def pcompose_linear(p, a, b) -> Poly:
    """p(a*x + b)."""
    out: Poly = []
    power: Poly = [Fraction(1)]
    lin = trim([b, a])
    for c in p:
        out = padd(out, pscale(power, c))
        power = pmul(power, lin)
    return out


def pow_poly(p, e: int) -> Poly:
    out: Poly = [Fraction(1)]
    for _ in range(e):
        out = pmul(out, p)
    return out


def format_poly(p, var: str = "x") -> str:
    p = primitive(p)
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        coeff = str(mag) if (mag != 1 or not mono) else ""
        term = coeff + ("*" if coeff and mono else "") + mono
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        s += f" {sign} {term}"
    return s


# -- Sturm sequences -------------------------------------------------------

def sturm_sequence(p) -> list[Poly]:
    p = trim(p)
    seq = [p, pderiv(p)]
    while seq[-1]:
        r = pdivmod(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    return seq[:-1]


def _sign_changes(seq, x) -> int:
    signs = [s for s in (peval(q, x) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(p, lo, hi, seq=None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    seq = seq if seq is not None else sturm_sequence(p)
    return _sign_changes(seq, _q(lo)) - _sign_changes(seq, _q(hi))


def count_roots_closed(p, lo, hi, seq=None) -> int:
    lo, hi = _q(lo), _q(hi)
    extra = 1 if peval(p, lo) == 0 else 0
    if lo == hi:
        return extra
    return count_roots(p, lo, hi, seq) + extra


def cauchy_bound(p) -> Fraction:
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p) -> list[tuple[Fraction, Fraction]]:
    """Disjoint closed intervals, increasing, each holding exactly one real root.

    Degenerate intervals ``(r, r)`` mark rational roots hit exactly.
    """
    p = squarefree(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    b = cauchy_bound(p)
    out: list[tuple[Fraction, Fraction]] = []

    def rec(lo, hi, n):
        # invariant: n roots in (lo, hi]
        if n == 0:
            return
        mid = (lo + hi) / 2
        if n == 1:
            if peval(p, hi) == 0:
                out.append((hi, hi))
                return
            # the closed interval must not pick up a root sitting at lo
            while peval(p, lo) == 0:
                m = (lo + hi) / 2
                if count_roots(p, lo, m, seq):
                    hi = m
                else:
                    lo = m
            out.append((lo, hi))
            return
        left = count_roots(p, lo, mid, seq)
        rec(lo, mid, left)
        rec(mid, hi, n - left)

    rec(-b, b, count_roots(p, -b, b, seq))
    out.sort()
    return out


# -- linear algebra helpers ------------------------------------------------

def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(inner)), Fraction(0)) for j in range(cols)]
            for i in range(len(a))]


def matvec(a, v):
    return [sum((row[t] * v[t] for t in range(len(v))), Fraction(0)) for row in a]


def matpow(a, n: int):
    result = identity(len(a))
    base = a
    while n:
        if n & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        n >>= 1
    return result


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def det(m) -> Fraction:
    """Fraction-exact determinant by Gaussian elimination."""
    a = [[_q(x) for x in row] for row in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return d


def inverse(m):
    n = len(m)
    a = [[_q(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def charpoly(m) -> Poly:
    """Characteristic polynomial det(xI - M) by Faddeev-LeVerrier."""
    n = len(m)
    a = [[_q(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        mk = matmul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        am = matmul(a, mk)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs


def berlekamp_massey(seq: Sequence) -> Poly:
    """Shortest recurrence of a rational sequence.

    Returns the characteristic polynomial ``x^L - c_1 x^{L-1} - ... - c_L``
    with ``s_n = c_1 s_{n-1} + ... + c_L s_{n-L}``.
    """
    s = [_q(x) for x in seq]
    c = [Fraction(1)]
    b = [Fraction(1)]
    length, m, bb = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n] + sum((c[i] * s[n - i] for i in range(1, length + 1)), Fraction(0))
        if d == 0:
            m += 1
            continue
        coef = d / bb
        t = list(c)
        shifted = [Fraction(0)] * m + [coef * x for x in b]
        size = max(len(c), len(shifted))
        c = [(c[i] if i < len(c) else 0) - (shifted[i] if i < len(shifted) else 0) for i in range(size)]
        if 2 * length <= n:
            length, b, bb, m = n + 1 - length, t, d, 1
        else:
            m += 1
    c = c + [Fraction(0)] * (length + 1 - len(c))
    # connection polynomial C(z) = 1 + c1 z + ... ; characteristic poly is its reversal
    return trim(list(reversed(c[: length + 1])))


# -- resultants ------------------------------------------------------------

def _int_det(m) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(p: Sequence[int], q: Sequence[int]) -> int:
    """Resultant of two integer polynomials via the Sylvester matrix."""
    p, q = list(p), list(q)
    while p and p[-1] == 0:
        p.pop()
    while q and q[-1] == 0:
        q.pop()
    m, n = len(p) - 1, len(q) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    rows = []
    hp, hq = list(reversed(p)), list(reversed(q))
    for i in range(n):
        rows.append([0] * i + hp + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + hq + [0] * (size - n - 1 - i))
    return _int_det(rows)


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    out: Poly = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis: Poly = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = pmul(basis, [-_q(xj), Fraction(1)])
                den *= xi - xj
        out = padd(out, pscale(basis, Fraction(yi) / den))
    return out


def _binary_op_poly(p: list[int], q: list[int], op: str) -> Poly:
    """Integer polynomial vanishing at every a+b (op '+') or a*b (op '*')."""
    dp, dq = len(p) - 1, len(q) - 1
    bound = dp * dq
    xs = list(range(bound + 1))
    ys = []
    for x0 in xs:
        if op == "+":
            # q(x0 - y) as a polynomial in y
            qy = [int(c) for c in pcompose_linear(q, -1, x0)]
        else:
            # y^dq * q(x0 / y)
            qy = [q[dq - i] * x0 ** (dq - i) for i in range(dq + 1)]
        ys.append(resultant(p, qy))
    return interpolate(xs, ys)


@total_ordering
class Algebraic:
    """A real algebraic number: squarefree integer polynomial + isolating interval."""

    __slots__ = ("poly", "lo", "hi", "_seq")

    def __init__(self, poly, lo, hi):
        self.poly = squarefree(poly)
        self.lo, self.hi = _q(lo), _q(hi)
        self._seq = None
        if self.lo > self.hi:
            raise ValueError("empty isolating interval")

    # constructors
    @classmethod
    def rational(cls, value) -> "Algebraic":
        v = _q(value)
        return cls([-v, Fraction(1)], v, v)

    @classmethod
    def radical(cls, r, m: int) -> "Algebraic":
        """The positive real ``r^(1/m)`` for rational ``r > 0``."""
        r = _q(r)
        if r <= 0 or m < 1:
            raise ValueError("radical needs r > 0 and m >= 1")
        poly = [-r] + [Fraction(0)] * (m - 1) + [Fraction(1)]
        return cls.largest_real_root(poly)

    @classmethod
    def largest_real_root(cls, poly) -> "Algebraic":
        roots = isolate_real_roots(poly)
        if not roots:
            raise ValueError("polynomial has no real root")
        lo, hi = roots[-1]
        return cls(poly, lo, hi)

    @classmethod
    def real_roots(cls, poly) -> list["Algebraic"]:
        return [cls(poly, lo, hi) for lo, hi in isolate_real_roots(poly)]

    # refinement
    def _sturm(self):
        if self._seq is None:
            self._seq = sturm_sequence(self.poly)
        return self._seq

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def refine(self, width=Fraction(1, 10 ** 12)) -> "Algebraic":
        width = _q(width)
        while self.hi - self.lo > width:
            self._bisect()
        return self

    def _bisect(self):
        if self.lo == self.hi:
            return
        mid = (self.lo + self.hi) / 2
        vm = peval(self.poly, mid)
        if vm == 0:
            self.lo = self.hi = mid
            return
        if count_roots_closed(self.poly, self.lo, mid, self._sturm()) >= 1:
            self.hi = mid
        else:
            self.lo = mid

    def __float__(self) -> float:
        self.refine(Fraction(1, 10 ** 18))
        return float((self.lo + self.hi) / 2)

    # exact predicates
    def is_root_of(self, q) -> bool:
        q = trim(q)
        if not q:
            return True
        if self.is_exact:
            return peval(q, self.lo) == 0
        g = pgcd(self.poly, q)
        if len(g) <= 1:
            return False
        return count_roots_closed(g, self.lo, self.hi) >= 1

    def as_fraction(self) -> Fraction | None:
        if self.is_exact:
            return self.lo
        cand = _rational_root_in(self.poly, self.lo, self.hi)
        if cand is not None:
            self.lo = self.hi = cand
        return cand

    def as_radical(self) -> tuple[Fraction, int] | None:
        """``(r, m)`` with ``self == r^(1/m)`` and smallest such ``m``, if any."""
        if self.lo < 0 or (self.hi <= 0 and not (self.is_exact and self.lo > 0)):
            return None
        f = self.as_fraction()
        if f is not None:
            return (f, 1) if f > 0 else None
        poly = trim(self.poly)
        for m in range(2, len(poly)):
            # with m minimal, x^m - r is irreducible, so it divides poly; reducing poly modulo
            # x^m = r leaves m coefficient polynomials in r that must vanish together
            g = []
            for j in range(m):
                g = pgcd(g, poly[j::m]) if g else trim(poly[j::m])
            if len(g) <= 1:
                continue
            for lo, hi in isolate_real_roots(squarefree(g)):
                if hi <= 0:
                    continue
                r = _rational_root_in(g, lo, hi)
                if r is not None and r > 0 and self.is_root_of([-r] + [0] * (m - 1) + [1]):
                    return (r, m)
        return None

    def without_rational_factors(self) -> "Algebraic":
        """Same number, with linear factors of other (rational) roots divided out."""
        poly = self.poly
        for lo, hi in isolate_real_roots(poly):
            if lo <= self.lo and self.hi <= hi:
                continue
            r = _rational_root_in(poly, lo, hi)
            if r is not None:
                poly, _ = pdivmod(poly, [-r, Fraction(1)])
        if len(poly) == len(self.poly):
            return self
        out = Algebraic(poly, self.lo, self.hi)
        return out

    # comparisons
    def _separate(self, other: "Algebraic") -> int:
        """-1, 0, 1 comparing self with other."""
        shared = None
        checked = False
        while True:
            if self.hi < other.lo:
                return -1
            if other.hi < self.lo:
                return 1
            if self.is_exact and other.is_exact:
                return (self.lo > other.lo) - (self.lo < other.lo)
            if not checked:
                checked = True
                g = pgcd(self.poly, other.poly)
                if len(g) > 1 and self.is_root_of(g) and other.is_root_of(g):
                    shared = (g, sturm_sequence(g))
            if shared is not None:
                lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
                if count_roots_closed(shared[0], lo, hi, shared[1]) == 1:
                    return 0
            self._bisect()
            other._bisect()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebraic):
            try:
                other = Algebraic.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._separate(other) == 0

    def __lt__(self, other) -> bool:
        if not isinstance(other, Algebraic):
            other = Algebraic.rational(other)
        return self._separate(other) < 0

    def __hash__(self):
        f = self.as_fraction()
        if f is not None:
            return hash(f)
        return hash(tuple(primitive(self.poly)))

    # arithmetic
    def _combine(self, other: "Algebraic", op: str) -> "Algebraic":
        a, b = self.as_fraction(), other.as_fraction()
        if a is not None and b is not None:
            return Algebraic.rational(a + b if op == "+" else a * b)
        poly = squarefree(_binary_op_poly(primitive(self.poly), primitive(other.poly), op))
        seq = sturm_sequence(poly)
        while True:
            if op == "+":
                lo, hi = self.lo + other.lo, self.hi + other.hi
            else:
                ends = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
                lo, hi = min(ends), max(ends)
            if count_roots_closed(poly, lo, hi, seq) == 1:
                res = Algebraic(poly, lo, hi)
                res._seq = seq
                return res
            self._bisect()
            other._bisect()

    def __add__(self, other) -> "Algebraic":
        if not isinstance(other, Algebraic):
            other = Algebraic.rational(other)
        return self._combine(other, "+")

    __radd__ = __add__

    def __mul__(self, other) -> "Algebraic":
        if not isinstance(other, Algebraic):
            other = Algebraic.rational(other)
        return self._combine(other, "*")

    __rmul__ = __mul__

    def __neg__(self) -> "Algebraic":
        return Algebraic([c * (-1) ** i for i, c in enumerate(self.poly)], -self.hi, -self.lo)

    def __sub__(self, other) -> "Algebraic":
        if not isinstance(other, Algebraic):
            other = Algebraic.rational(other)
        return self + (-other)

    def reciprocal(self) -> "Algebraic":
        f = self.as_fraction()
        if f is not None:
            return Algebraic.rational(1 / f)
        while self.lo <= 0 <= self.hi:
            self._bisect()
        return Algebraic(list(reversed(self.poly)), 1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "Algebraic":
        if not isinstance(other, Algebraic):
            other = Algebraic.rational(other)
        return self * other.reciprocal()

    def __pow__(self, n: int) -> "Algebraic":
        out = Algebraic.rational(1)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        return format_exact(self)

    def __repr__(self) -> str:
        return f"Algebraic({format_exact(self)})"


def _rational_root_in(poly, lo, hi) -> Fraction | None:
    ints = primitive(poly)
    if not ints:
        return None
    lead = abs(ints[-1])
    x = Algebraic.__new__(Algebraic)
    x.poly, x.lo, x.hi, x._seq = squarefree(poly), _q(lo), _q(hi), None
    # two rationals with denominators <= lead differ by >= 1/lead^2
    x.refine(Fraction(1, 4 * lead * lead))
    if x.is_exact:
        return x.lo
    cand = ((x.lo + x.hi) / 2).limit_denominator(lead)
    if x.lo <= cand <= x.hi and peval(poly, cand) == 0:
        return cand
    return None


def format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_exact(x) -> str:
    """Integer, ``a/b``, ``r^{1/m}`` or ``root(poly in [lo, hi])``."""
    if isinstance(x, (int, Fraction)):
        return format_fraction(Fraction(x))
    f = x.as_fraction()
    if f is not None:
        return format_fraction(f)
    rad = x.as_radical()
    if rad is not None:
        r, m = rad
        return f"{format_fraction(r)}^{{1/{m}}}"
    x = x.without_rational_factors()
    x.refine(Fraction(1, 10 ** 7))
    scale = 10 ** 6
    lo = Fraction(math.floor(x.lo * scale), scale)
    hi = Fraction(math.ceil(x.hi * scale), scale)
    return f"root({format_poly(x.poly)}; [{format_fraction(lo)}, {format_fraction(hi)}])"


def spectral_radius(m) -> Algebraic:
    """Exact Perron root of a square nonnegative rational matrix."""
    p = charpoly(m)
    return Algebraic.largest_real_root(p)


def nth_root_upper(value: int, n: int, digits: int = 9) -> Fraction:
    """Smallest multiple of 10^-digits that is >= value^(1/n)."""
    scale = 10 ** digits
    # integer k with (k/scale)^n >= value, minimal
    lo, hi = 0, scale * (value + 1)
    target = value * scale ** n
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** n >= target:
            hi = mid
        else:
            lo = mid + 1
    return Fraction(lo, scale)
