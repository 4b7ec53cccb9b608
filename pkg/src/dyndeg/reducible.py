"""Correspondences on reducible varieties as weighted edges between components.

An edge ``(i, j, a, c)`` is the piece ``c * a : X_i -> X_j``.  Two pieces are
composed only when the range of the first is the domain of the second, so
iterates are sums over composable paths.  Pieces between distinct
components use atoms on a common model space, which requires the two
components to carry the same space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .algebra import DEFAULT_MAX_TERMS, TermBlowup, compose_normal, degree_weights
from .atoms import Atom, UndeclaredComposition, atom_deg_p
from .degrees import DEFAULT_N, DegreeReport, growth_report, linear_model_exact, stability_assertions
from .relative import split_atom
from .rings import MonomialSpace, Space


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    atom: Atom
    coef: int
    label: str = ""

    def key(self) -> tuple:
        return (self.src, self.dst, self.atom.sort_key())


@dataclass(frozen=True)
class ComponentGraph:
    components: tuple[Space, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        dims = {c.dim for c in self.components}
        if len(dims) > 1:
            raise ValueError("all components must have the same dimension")
        m = len(self.components)
        srcs, dsts = set(), set()
        for e in self.edges:
            if not (0 <= e.src < m and 0 <= e.dst < m):
                raise ValueError(f"edge {e.src + 1}->{e.dst + 1} refers to a missing component")
            if e.coef < 1:
                raise ValueError("edge coefficients must be positive")
            if e.atom.space != self.components[e.src] or e.atom.space != self.components[e.dst]:
                raise ValueError(f"edge {e.src + 1}->{e.dst + 1}: atom {e.atom} does not live on both components")
            srcs.add(e.src)
            dsts.add(e.dst)
        if srcs != set(range(m)) or dsts != set(range(m)):
            raise ValueError("not dominant: every component must be a source and a target of some edge")

    @classmethod
    def build(cls, components: Sequence[Space], edges: Sequence[Edge]) -> "ComponentGraph":
        return cls(tuple(components), normalize_edges(edges))

    @property
    def dim(self) -> int:
        return self.components[0].dim

    def adjacency(self) -> list[list[int]]:
        m = len(self.components)
        A = [[0] * m for _ in range(m)]
        for e in self.edges:
            A[e.src][e.dst] += 1
        return A

    def __str__(self) -> str:
        parts = []
        for e in self.edges:
            coef = "" if e.coef == 1 else f"{e.coef}*"
            parts.append(f"{e.src + 1}->{e.dst + 1}: {coef}{e.atom}")
        return "; ".join(parts)


def normalize_edges(edges: Sequence[Edge]) -> tuple[Edge, ...]:
    merged: dict[tuple, Edge] = {}
    for e in edges:
        k = (e.src, e.dst, e.atom)
        if k in merged:
            old = merged[k]
            merged[k] = Edge(e.src, e.dst, e.atom, old.coef + e.coef)
        else:
            merged[k] = Edge(e.src, e.dst, e.atom, e.coef, e.label)
    return tuple(sorted(merged.values(), key=Edge.key))


def compose_graphs(first: ComponentGraph, then: ComponentGraph, max_terms: int = DEFAULT_MAX_TERMS) -> ComponentGraph:
    """All composites ``b o a`` with ``a`` an edge of ``first`` ending where ``b`` starts."""
    out = []
    for a in first.edges:
        for b in then.edges:
            if a.dst != b.src:
                continue
            try:
                c, r = compose_normal(b.atom, a.atom)
            except UndeclaredComposition as err:
                raise UndeclaredComposition(
                    f"{err} (path {a.src + 1}->{a.dst + 1}->{b.dst + 1})") from None
            out.append(Edge(a.src, b.dst, r, a.coef * b.coef * c))
    edges = normalize_edges(out)
    if len(edges) > max_terms:
        raise TermBlowup(f"{len(edges)} normalized edges exceed the cap {max_terms}")
    return ComponentGraph(first.components, edges)


def iterate_graph(cg: ComponentGraph, n: int, max_terms: int = DEFAULT_MAX_TERMS) -> ComponentGraph:
    if n < 1:
        raise ValueError("iterate needs n >= 1")
    G = cg
    for _ in range(n - 1):
        G = compose_graphs(G, cg, max_terms)
    return G


def graph_iterates(cg: ComponentGraph, max_terms: int = DEFAULT_MAX_TERMS):
    G = cg
    while True:
        yield G
        G = compose_graphs(G, cg, max_terms)


def path_terms(cg: ComponentGraph, n: int) -> dict[tuple[int, ...], int]:
    """Unnormalized expansion: composable edge-index paths of length ``n`` and their weights."""
    paths: dict[tuple[int, ...], int] = {(i,): e.coef for i, e in enumerate(cg.edges)}
    for _ in range(n - 1):
        nxt = {}
        for path, w in paths.items():
            last = cg.edges[path[-1]]
            for j, e in enumerate(cg.edges):
                if e.src == last.dst:
                    nxt[path + (j,)] = w * e.coef
        paths = nxt
    return paths


def path_labels(cg: ComponentGraph, n: int) -> dict[tuple[str, ...], int]:
    """``path_terms`` keyed by edge labels in the order the edges are applied."""
    out: dict[tuple[str, ...], int] = {}
    for path, w in path_terms(cg, n).items():
        key = tuple(cg.edges[i].label or f"{cg.edges[i].src + 1}->{cg.edges[i].dst + 1}" for i in path)
        out[key] = out.get(key, 0) + w
    return out


def graph_deg_p(cg: ComponentGraph, p: int) -> int:
    return sum(e.coef * atom_deg_p(e.atom, p) for e in cg.edges)


def graph_degree_sequence(cg: ComponentGraph, p: int, N: int, max_terms: int = DEFAULT_MAX_TERMS) -> list[int]:
    out = []
    for n, G in enumerate(graph_iterates(cg, max_terms), start=1):
        out.append(graph_deg_p(G, p))
        if n == N:
            break
    return out


def block_model(cg: ComponentGraph, p: int):
    """``(B, U, V)`` with total degree of the ``n``-th iterate equal to ``U^T B^n V``."""
    offs, total = [], 0
    for c in cg.components:
        offs.append(total)
        total += c.rank(p)
    B = [[Fraction(0)] * total for _ in range(total)]
    for e in cg.edges:
        m = e.atom.matrix(p)
        oi, oj = offs[e.src], offs[e.dst]
        for r, row in enumerate(m):
            for s, x in enumerate(row):
                B[oi + r][oj + s] += e.coef * x
    U, V = [], []
    for c in cg.components:
        u, v = degree_weights(c, p)
        U += u
        V += v
    return B, U, V


def graph_dyn_degree(cg: ComponentGraph, p: int, N: int = DEFAULT_N,
                     max_terms: int = DEFAULT_MAX_TERMS) -> DegreeReport:
    seq = graph_degree_sequence(cg, p, N, max_terms)
    atoms = [e.atom for e in cg.edges]
    by_space: dict[Space, list[Atom]] = {}
    for a in atoms:
        by_space.setdefault(a.space, []).append(a)
    ok, reason = True, ""
    for group in by_space.values():
        ok, reason = linear_model_exact(group, p)
        if not ok:
            break
    assertions = stability_assertions(atoms)
    if ok:
        B, U, V = block_model(cg, p)
        return growth_report(p, seq, linear=(B, U, V), assertions=assertions)
    return growth_report(p, seq, assertions=assertions, notes=(reason,))


def check_path_count(cg: ComponentGraph, n: int) -> tuple[int, int]:
    """``(number of composable paths, sum of entries of A^n)``; they must agree."""
    A = cg.adjacency()
    An = exact.matpow(A, n)
    return len(path_terms(cg, n)), int(sum(sum(r) for r in An))


# semi-conjugacy over reducible sources ------------------------------------

@dataclass(frozen=True)
class ComponentMap:
    """``pi_i``: component ``i`` goes to base component ``target``, keeping ``keep`` factors (None = identity)."""

    target: int
    keep: tuple[int, ...] | None = None


@dataclass(frozen=True)
class NaiveCheck:
    n: int
    holds: bool
    lhs: tuple
    rhs: tuple


def _pi_after(cg: ComponentGraph, pis: Sequence[ComponentMap], G: ComponentGraph) -> dict:
    out: dict = {}
    for e in G.edges:
        pj = pis[e.dst]
        if pj.keep is None:
            mult, atom = 1, e.atom
        else:
            space = cg.components[e.dst]
            if not isinstance(space, MonomialSpace):
                raise ValueError("projection component maps need product components")
            mult, atom = split_atom(e.atom, space, pj.keep)
        key = (e.src, pj.target, atom)
        out[key] = out.get(key, 0) + e.coef * mult
    return out


def _g_after_pi(pis: Sequence[ComponentMap], H: ComponentGraph, m: int) -> dict:
    out: dict = {}
    for i in range(m):
        y = pis[i].target
        for e in H.edges:
            if e.src != y:
                continue
            key = (i, e.dst, e.atom)
            out[key] = out.get(key, 0) + e.coef
    return out


def _fmt_terms(d: dict) -> tuple:
    return tuple(sorted(((i + 1, y + 1, str(a), c) for (i, y, a), c in d.items())))


def check_no_naive_semiconjugacy(cg: ComponentGraph, pis: Sequence[ComponentMap], base: ComponentGraph,
                                 N: int = 4) -> list[NaiveCheck]:
    """Compare ``pi o f^n`` with ``g^n o pi`` term by term for ``n = 1..N``."""
    if len(pis) != len(cg.components):
        raise ValueError("one component map per component is required")
    out = []
    fi, gi = graph_iterates(cg), graph_iterates(base)
    for n in range(1, N + 1):
        F, G = next(fi), next(gi)
        lhs = _pi_after(cg, pis, F)
        rhs = _g_after_pi(pis, G, len(cg.components))
        out.append(NaiveCheck(n, lhs == rhs, _fmt_terms(lhs), _fmt_terms(rhs)))
    return out


def first_failure(checks: Sequence[NaiveCheck]) -> int | None:
    for c in checks:
        if not c.holds:
            return c.n
    return None


__all__ = [
    "Edge", "ComponentGraph", "ComponentMap", "NaiveCheck", "normalize_edges", "compose_graphs",
    "iterate_graph", "graph_iterates", "path_terms", "path_labels", "graph_deg_p",
    "graph_degree_sequence", "graph_dyn_degree", "block_model", "check_path_count",
    "check_no_naive_semiconjugacy", "first_failure",
]
