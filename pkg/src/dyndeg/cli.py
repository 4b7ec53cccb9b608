"""``dyndeg``: run scene files or built-in scenarios.

Exit status: 0 when every executed check holds or is informational,
2 when the only failures are ones the scenario expects, 1 otherwise
(including errors).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import exact
from .algebra import (DEFAULT_MAX_TERMS, Correspondence, TermBlowup, add, combined_matrix, reverse, scale)
from .atoms import (DeclarationError, DeclaredAtom, UndeclaredComposition, autsum, diagonal, power_map,
                    product_atom, reverse_power, torus, use_characteristic)
from .declared import load_atom, load_space, parse_space_name
from .degrees import DEFAULT_N, dyn_degrees
from .reducible import ComponentGraph, Edge, graph_dyn_degree
from .relative import NotSemiConjugate, make_projection_semiconj, rel_dyn_degree
from .rings import Point, Product, Projective, RingError, Space
from .scenarios import SCENARIOS, Block, DegreeBlock, TextBlock, run_scenario
from .scene import Scene, SceneError, format_command, format_expr, parse_scene
from .verify import (FAILS, HOLDS, CheckReport, check_dual, check_log_concavity, check_monotonicity,
                     check_obstruction, check_primitivity, check_product_formula, check_simplicity, check_submult,
                     check_triangle, check_weak_product)

CHECKS = ("log_concavity", "product_formula", "weak_product", "triangle", "monotonicity", "primitivity",
          "obstruction", "simplicity", "submult", "dual")

_ERRORS = (SceneError, UndeclaredComposition, DeclarationError, NotSemiConjugate, RingError, TermBlowup,
           ValueError, KeyError, OSError)


class CommandError(RuntimeError):
    pass


# scene resolution ------------------------------------------------------------------

class Resolver:
    def __init__(self, scene: Scene, max_terms: int = DEFAULT_MAX_TERMS):
        self.scene = scene
        self.base = Path(scene.base)
        self.max_terms = max_terms
        self._spaces: dict[str, Space] = {}
        self._corrs: dict[str, Correspondence] = {}
        self._atoms: dict[str, DeclaredAtom] = {}

    def space(self, name: str) -> Space:
        if name in self._spaces:
            return self._spaces[name]
        decl = self.scene.lookup("spaces", name)
        if decl is None:
            s = parse_space_name(name)
            if s is None:
                raise CommandError(f"unknown space {name!r}")
        elif decl[0] == "proj":
            s = Projective(decl[1])
        elif decl[0] == "point":
            s = Point()
        elif decl[0] == "prod":
            s = Product(*(self.space(x) for x in decl[1:]))
        else:
            s = load_space(self._path(decl[1]))
        self._spaces[name] = s
        return s

    def _path(self, f: str) -> Path:
        p = Path(f)
        return p if p.is_absolute() else self.base / p

    def corr(self, name: str) -> Correspondence:
        if name not in self._corrs:
            e = self.scene.lookup("corrs", name)
            if e is None:
                raise CommandError(f"unknown correspondence {name!r}")
            self._corrs[name] = self.expr(e)
        return self._corrs[name]

    def expr(self, e) -> Correspondence:
        tag = e[0]
        if tag == "ref":
            return self.corr(e[1])
        if tag == "power":
            return Correspondence.atom(power_map(self.space(e[1]), e[2]))
        if tag == "revpower":
            return Correspondence.atom(reverse_power(self.space(e[1]), e[2]))
        if tag == "torus":
            return Correspondence.atom(torus(self.space(e[1]), e[2], e[3]))
        if tag == "diag":
            return Correspondence.atom(diagonal(self.space(e[1])))
        if tag == "autsum":
            return Correspondence.atom(autsum(self.space(e[1]), e[2]))
        if tag == "declared":
            if e[1] not in self._atoms:
                user_spaces = {n: self.space(n) for n, _ in self.scene.spaces}
                self._atoms[e[1]] = DeclaredAtom(load_atom(self._path(e[1]), user_spaces))
            return Correspondence.atom(self._atoms[e[1]])
        if tag == "scale":
            return scale(e[1], self.expr(e[2]))
        if tag == "sum":
            out = self.expr(e[1])
            for x in e[2:]:
                nxt = self.expr(x)
                if nxt.space != out.space:
                    raise CommandError(f"cannot add correspondences on {out.space} and {nxt.space}")
                out = add(out, nxt)
            return out
        if tag == "rev":
            return reverse(self.expr(e[1]))
        if tag == "prod":
            return self._product([self.expr(x) for x in e[1:]])
        raise CommandError(f"unknown expression {tag!r}")

    @staticmethod
    def _product(parts: Sequence[Correspondence]) -> Correspondence:
        # bilinear expansion over the terms of each factor
        terms = [((), 1)]
        for F in parts:
            terms = [(atoms + (a,), c * d) for atoms, c in terms for a, d in F.terms]
        out: dict = {}
        for atoms, c in terms:
            a = product_atom(*atoms)
            out[a] = out.get(a, 0) + c
        space = next(iter(out)).space
        return Correspondence.from_terms(space, out)

    def semiconj(self, name: str):
        d = self.scene.lookup("semiconjs", name)
        if d is None:
            return None
        _, X, i, j, e = d
        space = self.space(X)
        F = self.expr(e)
        if F.space != space:
            raise CommandError(f"semi-conjugacy {name}: correspondence lives on {F.space}, not {space}")
        return make_projection_semiconj(space, F, range(i - 1, j))

    def graph(self, name: str):
        for g, comps, edges in self.scene.graphs:
            if g != name:
                continue
            spaces = [self.space(c) for c in comps]
            out = []
            for s, d, e, label in edges:
                F = self.expr(e)
                for a, c in F.terms:
                    out.append(Edge(s - 1, d - 1, a, c, label))
            return ComponentGraph.build(spaces, out)
        return None


# command execution -----------------------------------------------------------------

def _prange(opts: dict, top: int) -> list[int]:
    a, b = opts.get("p", (0, top))
    if a < 0 or b > top:
        raise CommandError(f"codimension range {a}..{b} outside 0..{top}")
    return list(range(a, b + 1))


def _expectation(report: CheckReport, opts: dict) -> CheckReport:
    exp = opts.get("expect")
    if exp is None:
        return report
    return report.with_expectation(FAILS if exp == "fails" else HOLDS)


def run_command(R: Resolver, cmd) -> list[Block]:
    _, verb, args, opts = cmd
    opts = dict(opts)
    N = opts.get("n", DEFAULT_N)
    if verb == "scenario":
        return run_scenario(args[0], N)
    if verb in ("degrees", "sequence"):
        if len(args) != 1:
            raise CommandError(f"{verb} takes one correspondence or graph")
        e = args[0]
        cg = R.graph(e[1]) if e[0] == "ref" else None
        if cg is not None:
            ps = _prange(opts, cg.dim)
            reps = tuple(graph_dyn_degree(cg, p, N, R.max_terms) for p in ps)
            title = f"graph {e[1]} = {cg}"
        else:
            F = R.expr(e)
            ps = _prange(opts, F.space.dim)
            got = dyn_degrees(F, N, R.max_terms, ps)
            reps = tuple(got[p] for p in ps)
            title = f"{format_expr(e)} = {F}" if e[0] == "ref" else str(F)
        return [DegreeBlock(title, reps, summary=(verb == "degrees"))]
    if verb == "relative":
        if len(args) != 1 or args[0][0] != "ref":
            raise CommandError("relative takes one semi-conjugacy name")
        sc = R.semiconj(args[0][1])
        if sc is None:
            raise CommandError(f"unknown semi-conjugacy {args[0][1]!r}")
        ps = _prange(opts, sc.k - sc.l)
        reps = tuple(rel_dyn_degree(sc, p, N, R.max_terms) for p in ps)
        return [DegreeBlock(f"{args[0][1]}: f = {sc.f} over g = {sc.g} (multiplier {sc.multiplier})", reps,
                            "deg_p(f^n|pi)")]
    if verb == "verify":
        return [_expectation(_verify(R, args[0], args[1:], opts, N), opts)]
    raise CommandError(f"unknown command {verb!r}")


def _verify(R: Resolver, check: str, args, opts: dict, N: int) -> CheckReport:
    if check not in CHECKS:
        raise CommandError(f"unknown check {check!r}; known: {', '.join(CHECKS)}")

    def sc(i):
        if i >= len(args) or args[i][0] != "ref" or R.semiconj(args[i][1]) is None:
            raise CommandError(f"{check} needs a semi-conjugacy name as argument {i + 1}")
        return R.semiconj(args[i][1])

    def corr(i):
        if i >= len(args):
            raise CommandError(f"{check} needs a correspondence as argument {i + 1}")
        return R.expr(args[i])

    if check == "product_formula":
        return check_product_formula(sc(0), N)
    if check == "weak_product":
        return check_weak_product(sc(0), N)
    if check == "monotonicity":
        return check_monotonicity(sc(0), sc(1), corr(2) if len(args) > 2 else None, N)
    if check == "triangle":
        return check_triangle(corr(0), corr(1), N)
    F = corr(0)
    if check == "log_concavity":
        return check_log_concavity(F, N)
    if check == "primitivity":
        return check_primitivity(F, N)
    if check == "obstruction":
        reps = dyn_degrees(F, N, R.max_terms)
        return check_obstruction([reps[p].exact_value if reps[p].is_exact else None for p in sorted(reps)], str(F))
    if check == "simplicity":
        if F.space.dim < 2:
            raise CommandError("simplicity compares N^1 and N^2; the space needs dimension >= 2")
        return check_simplicity(combined_matrix(F, 1), combined_matrix(F, 2), str(F))
    if check == "submult":
        return check_submult(F, _prange(opts, F.space.dim), N)
    return check_dual(F, _prange(opts, F.space.dim))


# rendering ------------------------------------------------------------------------------

def _approx_text(x) -> str:
    return f"{float(x):.6f}"


def _summary_line(r, approx: bool) -> str:
    s = f"  p={r.p}: lambda = {r.value_text} ({r.method})"
    if approx:
        s += f"  ~ {_approx_text(r.approx())}"
        if r.fekete_upper is not None:
            s += f", Fekete bound <= {_approx_text(r.fekete_upper)}"
    return s


def render_table(blocks: Sequence[Block], approx: bool = False) -> str:
    out: list[str] = []
    for b in blocks:
        if isinstance(b, CheckReport):
            out += b.lines()
        elif isinstance(b, TextBlock):
            out.append(b.title)
            out += ["  " + x for x in b.lines]
        else:
            out.append(f"{b.quantity}: {b.title}")
            cols = ["n"] + [f"p={r.p}" for r in b.reports]
            n_max = max(len(r.sequence) for r in b.reports)
            rows = [[str(n + 1)] + [str(r.sequence[n]) for r in b.reports] for n in range(n_max)]
            widths = [max(len(c), *(len(row[i]) for row in rows)) for i, c in enumerate(cols)]
            out.append("  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)))
            out += ["  " + "  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in rows]
            if b.summary:
                out += [_summary_line(r, approx) for r in b.reports]
                seen: list[str] = []
                for r in b.reports:
                    for note in r.stability_assertions + r.notes:
                        if note and note not in seen:
                            seen.append(note)
                out += [f"  note: {x}" for x in seen]
        out.append("")
    return "\n".join(out) + "\n"


def _key(col: str) -> str:
    return "".join(c if c.isalnum() or c in "_^()." else "_" for c in col)


def _records(blocks: Sequence[Block], approx: bool) -> list[list[tuple[str, str]]]:
    recs = []
    for b in blocks:
        if isinstance(b, CheckReport):
            for row in b.rows:
                recs.append([("kind", "check_row"), ("check", b.name)] + list(zip(map(_key, b.columns), row)))
            recs.append([("kind", "check"), ("check", b.name), ("inputs", b.inputs), ("verdict", b.verdict),
                         ("expected", b.expected or ""), ("summary", b.summary)])
        elif isinstance(b, TextBlock):
            for x in b.lines:
                recs.append([("kind", "text"), ("title", b.title), ("line", x)])
        else:
            for r in b.reports:
                for n, v in enumerate(r.sequence, start=1):
                    recs.append([("kind", "degree"), ("title", b.title), ("quantity", b.quantity), ("p", str(r.p)),
                                 ("n", str(n)), ("value", str(v))])
                if b.summary:
                    rec = [("kind", "lambda"), ("title", b.title), ("quantity", b.quantity), ("p", str(r.p)),
                           ("value", r.value_text), ("method", r.method)]
                    if approx:
                        rec.append(("approx", _approx_text(r.approx())))
                    recs.append(rec)
    return recs


def render_csv(blocks: Sequence[Block], approx: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for rec in _records(blocks, approx):
        w.writerow([v for _, v in rec])
    return buf.getvalue()


def render_records(blocks: Sequence[Block], approx: bool = False) -> str:
    lines = []
    for rec in _records(blocks, approx):
        lines.append(" ".join(f"{k}={json.dumps(v) if (not v or ' ' in v or '=' in v) else v}" for k, v in rec))
    return "\n".join(lines) + ("\n" if lines else "")


RENDER = {"table": render_table, "csv": render_csv, "records": render_records}


def exit_status(blocks: Sequence[Block]) -> int:
    expected = False
    for b in blocks:
        if isinstance(b, CheckReport):
            if b.expected is not None and not b.matches_expectation:
                return 1
            if b.verdict == FAILS and b.expected is None:
                return 1
            if b.matches_expectation and b.verdict == FAILS:
                expected = True
    return 2 if expected else 0


# entry points ---------------------------------------------------------------------

def run_scene(scene: Scene, fmt: str = "table", approx: bool = False, max_terms: int = DEFAULT_MAX_TERMS,
              out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    R = Resolver(scene, max_terms)
    status = 0
    with use_characteristic(scene.char):
        for cmd in scene.commands:
            try:
                blocks = run_command(R, cmd)
            except (CommandError, *_ERRORS) as e:
                msg = e.args[0] if isinstance(e, KeyError) and e.args else e
                err.write(f"error in `{format_command(cmd)}`: {msg}\n")
                return 1
            out.write(RENDER[fmt](blocks, approx))
            s = exit_status(blocks)
            status = max(status, s) if 1 not in (status, s) else 1
    return status


def run_scenarios(names: Sequence[str], N: int = DEFAULT_N, fmt: str = "table", approx: bool = False,
                  out=None) -> int:
    out = out or sys.stdout
    status = 0
    for name in names:
        blocks = run_scenario(name, N)
        if len(names) > 1 and fmt == "table":
            out.write(f"=== scenario {name}\n")
        out.write(RENDER[fmt](blocks, approx))
        s = exit_status(blocks)
        status = 1 if 1 in (status, s) else max(status, s)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="dyndeg", description="Exact degree growth of correspondences.")
    ap.add_argument("target", nargs="+", help="a scene file, or 'scenario <name>' (name 'all' runs the battery)")
    ap.add_argument("--format", choices=sorted(RENDER), default="table")
    ap.add_argument("--approx", action="store_true", help="also print decimal approximations")
    ap.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    ap.add_argument("-n", type=int, default=DEFAULT_N, help="iteration depth for scenarios")
    ns = ap.parse_args(argv)

    if ns.target[0] == "scenario":
        if len(ns.target) != 2:
            ap.error("usage: dyndeg scenario <name>")
        name = ns.target[1]
        names = list(SCENARIOS) if name == "all" else [name]
        if name != "all" and name not in SCENARIOS:
            sys.stderr.write(f"error: unknown scenario {name!r}; known: {', '.join(SCENARIOS)}, all\n")
            return 1
        return run_scenarios(names, ns.n, ns.format, ns.approx)
    if len(ns.target) != 1:
        ap.error("give exactly one scene file")
    path = Path(ns.target[0])
    try:
        scene = parse_scene(path.read_text(encoding="utf-8"), base=path.parent)
    except SceneError as e:
        sys.stderr.write(f"{path}: {e}\n")
        return 1
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    return run_scene(scene, ns.format, ns.approx, ns.max_terms)


if __name__ == "__main__":
    sys.exit(main())
