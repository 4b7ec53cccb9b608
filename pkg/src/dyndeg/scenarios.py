"""Built-in scenarios reproducing the worked examples.

Each scenario returns a list of blocks (degree tables, check reports, text)
that the command-line front end renders.  Expected failures are marked on
the check reports so the exit status can distinguish them from surprises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from . import exact
from .algebra import Correspondence, add, iterate, scale
from .atoms import (AtomDeclaration, DeclaredAtom, diagonal, power_map, product_atom, reverse_power)
from .declared import blowup_p2, blowup_p3
from .degrees import DEFAULT_N, DegreeReport, dyn_degrees
from .reducible import (ComponentGraph, ComponentMap, Edge, check_no_naive_semiconjugacy, first_failure,
                        graph_dyn_degree, iterate_graph, path_labels)
from .relative import make_declared_semiconj, make_projection_semiconj, rel_dyn_degrees, relative_degree_sequence
from .rings import Product, Projective
from .verify import (FAILS, HOLDS, CheckReport, LambdaData, check_log_concavity, check_obstruction,
                     check_primitivity, check_product_formula, check_simplicity, check_triangle, check_weak_product,
                     weak_product_from_data)
from .algebra import combined_matrix


@dataclass(frozen=True)
class DegreeBlock:
    title: str
    reports: tuple[DegreeReport, ...]
    quantity: str = "deg_p(F^n)"
    summary: bool = True


@dataclass(frozen=True)
class TextBlock:
    title: str
    lines: tuple[str, ...]


Block = Union[DegreeBlock, TextBlock, CheckReport]


def degree_block(title: str, F: Correspondence, N: int) -> DegreeBlock:
    reps = dyn_degrees(F, N)
    return DegreeBlock(title, tuple(reps[p] for p in sorted(reps)))


def _lams(reps) -> list:
    return [r.exact_value for r in reps]


def _fmt_vec(v) -> str:
    return "(" + ", ".join(exact.format_exact(x) for x in v) + ")"


# scenarios -------------------------------------------------------------------

def example3(N: int = DEFAULT_N, d: int = 2, a: int = 1) -> list[Block]:
    P2 = Projective(2)
    F = Correspondence.from_terms(P2, [(power_map(P2, d), 1), (diagonal(P2), a)])
    deg = degree_block(f"surface correspondence F = {F}", F, N)
    lam = _lams(deg.reports)
    return [
        deg,
        TextBlock("dynamical degrees", (f"lambda = {_fmt_vec(lam)}",
                                        f"expected (1+a, d+a, d^2+a) = ({1 + a}, {d + a}, {d * d + a})")),
        check_log_concavity(F, N).with_expectation(FAILS),
        check_obstruction(lam, str(F)),
        check_primitivity(F, N),
    ]


def example4(N: int = DEFAULT_N, d: int = 2, a: int = 1) -> list[Block]:
    P3 = Projective(3)
    F = Correspondence.from_terms(P3, [(power_map(P3, d), 1), (diagonal(P3), a)])
    deg = degree_block(f"threefold correspondence F = {F}", F, N)
    lam = _lams(deg.reports)
    return [deg, TextBlock("dynamical degrees", (f"lambda = {_fmt_vec(lam)}",)),
            check_obstruction(lam, str(F)),
            check_log_concavity(F, N).with_expectation(FAILS)]


def remark1pt5(N: int = DEFAULT_N) -> list[Block]:
    blocks: list[Block] = []
    P2 = Projective(2)
    g = Correspondence.atom(power_map(P2, 2))
    lam_g = _lams(dyn_degrees(g, N).values())
    lines = [f"g = {g}: lambda(g) = {_fmt_vec(lam_g)}"]
    for a in (1, 2, 3):
        F = add(g, scale(a, Correspondence.atom(diagonal(P2))))
        lam = _lams(dyn_degrees(F, N).values())
        shifted = all(x == y + a for x, y in zip(lam, lam_g))
        lines.append(f"a = {a}: lambda(g + a*diag) = {_fmt_vec(lam)}; lambda(g) + a: {'yes' if shifted else 'NO'}")
        blocks.append(check_log_concavity(F, N).with_expectation(FAILS))
    return [TextBlock("degree shift by multiples of the diagonal", tuple(lines))] + blocks


def _pt6_component2(d2: int):
    X2, Y2 = blowup_p3(), blowup_p2()

    def scalar_decl(name, space, d):
        mats = [[[d if i == j else 0 for j in range(space.rank(p))] for i in range(space.rank(p))]
                for p in range(space.dim + 1)]
        return AtomDeclaration(name, space, tuple(mats))

    f2 = Correspondence.atom(DeclaredAtom(scalar_decl("f2", X2, d2)))
    g2 = Correspondence.atom(DeclaredAtom(scalar_decl("g2", Y2, d2)))
    # pi2^*: N^0 and N^1 identically (H -> H, F -> F); the point class goes to a fibre line m
    pull = [[[1]], [[1, 0], [0, 1]], [[1], [0]]]
    return X2, Y2, f2, g2, make_declared_semiconj(X2, Y2, f2, g2, pull)


def remark1pt6(N: int = DEFAULT_N, d1: int = 2, d2: int = 5) -> list[Block]:
    P2, P1 = Projective(2), Projective(1)
    X1 = Product(P2, P1)
    f1 = Correspondence.atom(product_atom(reverse_power(P2, d1), reverse_power(P1, d1)))
    sc1 = make_projection_semiconj(X1, f1, [0])
    g1 = sc1.g
    X2, Y2, f2, g2, sc2 = _pt6_component2(d2)

    lf1, lr1, lg1 = (_lams(dyn_degrees(f1, N).values()), _lams(rel_dyn_degrees(sc1, N).values()),
                     _lams(dyn_degrees(g1, N).values()))
    lf2, lr2, lg2 = (_lams(dyn_degrees(f2, N).values()), _lams(rel_dyn_degrees(sc2, N).values()),
                     _lams(dyn_degrees(g2, N).values()))

    # totally disjoint unions as component graphs; lambda from the totals
    fX = ComponentGraph.build([X1, X2], [Edge(0, 0, f1.terms[0][0], 1), Edge(1, 1, f2.terms[0][0], 1)])
    gY = ComponentGraph.build([P2, Y2], [Edge(0, 0, g1.terms[0][0], 1), Edge(1, 1, g2.terms[0][0], 1)])
    lf = [graph_dyn_degree(fX, p, N).exact_value for p in range(4)]
    lg = [graph_dyn_degree(gY, p, N).exact_value for p in range(3)]
    lr = [max(x, y) for x, y in zip(lr1, lr2)]
    max_ok = all(u == max(x, y) for u, x, y in zip(lf, lf1, lf2)) and \
        all(u == max(x, y) for u, x, y in zip(lg, lg1, lg2))

    stated = (lf1[0] == d1 ** 3 and lf1[1] == d1 ** 2 and lg1[0] == d1 ** 2 and lg1[1] == d1
              and lf2[0] == lf2[1] == lg2[0] == lg2[1] == d2)
    lines = (
        f"d1 = {d1}, d2 = {d2}; d1^3 > d2 > d1^2: {'yes' if d1 ** 3 > d2 > d1 ** 2 else 'no'}",
        f"component 1: X1 = {X1} (birational model of P3 over P2), f1 = {f1}, g1 = {g1}",
        f"  lambda(f1) = {_fmt_vec(lf1)}, lambda(f1|pi1) = {_fmt_vec(lr1)}, lambda(g1) = {_fmt_vec(lg1)}",
        f"component 2: X2 = {X2.name}, Y2 = {Y2.name}, f2 = {f2}, g2 = {g2} (declared)",
        f"  lambda(f2) = {_fmt_vec(lf2)}, lambda(f2|pi2) = {_fmt_vec(lr2)}, lambda(g2) = {_fmt_vec(lg2)}",
        f"stated lambda-data reproduced: {'yes' if stated else 'NO'}",
        f"union: lambda(f) = {_fmt_vec(lf)}, lambda(f|pi) = {_fmt_vec(lr)}, lambda(g) = {_fmt_vec(lg)}",
        f"union lambdas are componentwise maxima: {'yes' if max_ok else 'NO'}",
    )
    data = LambdaData(dict(enumerate(lf)), dict(enumerate(lr)), dict(enumerate(lg)), 3, 2)
    main = weak_product_from_data(data, "reducible X = X1 u X2 over Y = Y1 u Y2").with_expectation(FAILS)

    # the projection of component 1 carries a multiplier
    a = sc1.multiplier
    lg1a = _lams(dyn_degrees(scale(a, g1), N).values())
    lg_a = [max(x, y) for x, y in zip(lg1a, lg2)]
    data_a = LambdaData(dict(enumerate(lf)), dict(enumerate(lr)), dict(enumerate(lg_a)), 3, 2)
    alt = weak_product_from_data(data_a, f"same union with g1 replaced by {a}*g1",
                                 (f"pi1 o f1 = {a} (g1 o pi1) on the product model",))
    return [TextBlock("reducible counterexample to the weak product formula", lines), main,
            TextBlock("multiplier of the first projection",
                      (f"pi1 o f1 = {a} (g1 o pi1): multiplier {a}",
                       f"with g1 -> {a}*g1: lambda(g) = {_fmt_vec(lg_a)}")),
            alt]


def remark1pt7(N: int = DEFAULT_N) -> list[Block]:
    blocks: list[Block] = []
    P2, P3 = Projective(2), Projective(3)
    D = Correspondence.atom(diagonal(P2))
    for F in (Correspondence.atom(power_map(P2, 2)), Correspondence.atom(power_map(P2, 3)),
              Correspondence.atom(reverse_power(P2, 2)), Correspondence.atom(reverse_power(P2, 3))):
        blocks.append(check_triangle(F, D, N))
    b = birational_pair_decl(P3, 3, 3)
    blocks.append(check_triangle(Correspondence.atom(DeclaredAtom(b)), Correspondence.atom(DeclaredAtom(b, -1)), N))
    return blocks


def birational_pair_decl(space, lam: int, lam_rev: int) -> AtomDeclaration:
    """Declared birational ``b`` on ``P^3`` with ``lambda_1(b) = lam`` and ``lambda_1(rev b) = lam_rev``.

    On ``P^3`` the reverse acts on ``N^1`` as ``b`` acts on ``N^2``.
    """
    mats = [[[1]], [[lam]], [[lam_rev]], [[1]]]
    return AtomDeclaration("b", space, tuple(mats), reverse_name="rb", birational=True)


def thm65_reverse(N: int = DEFAULT_N) -> list[Block]:
    blocks: list[Block] = []
    for k in (2, 3):
        Pk = Projective(k)
        fp = Correspondence.atom(power_map(Pk, 2))
        f = Correspondence.atom(reverse_power(Pk, 2))
        lam_fp = _lams(dyn_degrees(fp, N).values())
        lam_f = _lams(dyn_degrees(f, N).values())
        ok = lam_f[0] == lam_fp[k] and lam_f[1] == lam_fp[k - 1]
        blocks.append(TextBlock(f"reverse of the squaring map on P{k}", (
            f"lambda(f') = {_fmt_vec(lam_fp)}, lambda(f) = {_fmt_vec(lam_f)}",
            f"lambda_0(f) = lambda_{k}(f') and lambda_1(f) = lambda_{k - 1}(f'): {'yes' if ok else 'NO'}")))
        blocks.append(check_primitivity(f, N))
    P2 = Projective(2)
    for a in (2, 3):
        F = Correspondence.from_terms(P2, [(power_map(P2, 2), 1), (diagonal(P2), a)])
        blocks.append(check_primitivity(F, N))
    return blocks


def product_p2xp1(N: int = DEFAULT_N) -> list[Block]:
    P2, P1 = Projective(2), Projective(1)
    X = Product(P2, P1)
    f = Correspondence.atom(product_atom(power_map(P2, 2), power_map(P1, 3)))
    sc = make_projection_semiconj(X, f, [1])
    rel = rel_dyn_degrees(sc, N)
    blocks: list[Block] = [
        degree_block(f"f = {f} on {X}", f, N),
        TextBlock("semi-conjugacy", (f"pi = projection to factor 2, g = {sc.g}, multiplier {sc.multiplier}, "
                                     f"verified: {'yes' if sc.verified else 'no'}",)),
        DegreeBlock("relative degrees", tuple(rel[p] for p in sorted(rel)), "deg_p(f^n|pi)"),
        check_product_formula(sc, N),
    ]
    Y = Product(P1, P1)
    h = Correspondence.atom(product_atom(power_map(P1, 2), power_map(P1, 3)))
    blocks.append(check_simplicity(combined_matrix(h, 1), combined_matrix(h, 2), f"{h} on {Y}, N^1 vs N^2"))
    return blocks


def weak_sharpness(N: int = DEFAULT_N) -> list[Block]:
    P1 = Projective(1)
    blocks: list[Block] = []
    for d, e in ((2, 3), (3, 2)):
        f = Correspondence.atom(product_atom(reverse_power(P1, d), reverse_power(P1, e)))
        sc = make_projection_semiconj(Product(P1, P1), f, [1])
        blocks.append(check_weak_product(sc, N))
    return blocks


def reducible_iteration(N: int = DEFAULT_N) -> list[Block]:
    P1 = Projective(1)
    h = power_map(P1, 2)
    cg = ComponentGraph.build([P1, P1], [Edge(0, 1, h, 2, "f12"), Edge(1, 0, h, 1, "f21"), Edge(1, 1, h, 1, "f22")])
    paths = path_labels(cg, 2)
    lines = [f"f = {cg}", "f^2 by composable paths (edges in order of application):"]
    lines += [f"  {' then '.join(k)}: {c}" for k, c in sorted(paths.items())]
    lines.append(f"f^2 normalized: {iterate_graph(cg, 2)}")
    blocks: list[Block] = [TextBlock("iteration over two components", tuple(lines))]
    pis = [ComponentMap(0), ComponentMap(0)]
    for mult in (1, 2):
        base = ComponentGraph.build([P1], [Edge(0, 0, h, mult)])
        checks = check_no_naive_semiconjugacy(cg, pis, base, 4)
        fail = first_failure(checks)
        name = "g" if mult == 1 else f"{mult}g"
        tl = [f"n = {c.n}: {'equal' if c.holds else 'DIFFER'}  pi o f^n = {_terms(c.lhs)};  "
              f"({name})^n o pi = {_terms(c.rhs)}" for c in checks]
        tl.append(f"first failure: n = {fail}" if fail else "no failure for n <= 4")
        blocks.append(TextBlock(f"pi o f^n versus ({name})^n o pi, g = {base.edges[0].atom}", tuple(tl)))
    return blocks


def _terms(t) -> str:
    return " + ".join(f"{c}*[{i}->{y}] {a}" for i, y, a, c in t)


SCENARIOS: dict[str, Callable[..., list[Block]]] = {
    "example3": example3,
    "example4": example4,
    "remark1pt5": remark1pt5,
    "remark1pt6": remark1pt6,
    "remark1pt7": remark1pt7,
    "thm65-reverse": thm65_reverse,
    "product-p2xp1": product_p2xp1,
    "weak-sharpness": weak_sharpness,
    "reducible-iteration": reducible_iteration,
}


def run_scenario(name: str, N: int = DEFAULT_N) -> list[Block]:
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}") from None
    return fn(N=N)
