"""Scene files: a small line-oriented language for spaces, correspondences and commands.

Example::

    set char 0
    space X = prod(P2,P1)
    corr F = power(P2,2) + 1*diag(P2)
    corr H = prod(power(P2,2), power(P1,3))
    semiconj S = proj(X -> factor 2) of H
    graph G = components(P1,P1); edge 1->2 power 2; edge 2->1 power 3
    cmd degrees F p=0..2 n=10
    cmd verify product_formula S p=0..3

Parsing produces plain tuples so two scenes compare structurally; names
are resolved into library objects only when a scene is run.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

SPACE_NAME = re.compile(r"^(P\d+(xP\d+)*|pt)$")


class SceneError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.msg, self.line, self.col = msg, line, col
        where = "" if line is None else f"line {line}" + ("" if col is None else f", column {col}") + ": "
        super().__init__(where + msg)


@dataclass(frozen=True)
class Scene:
    char: int = 0
    spaces: tuple = ()
    corrs: tuple = ()
    semiconjs: tuple = ()
    graphs: tuple = ()
    commands: tuple = ()
    base: str = field(default=".", compare=False)

    def lookup(self, kind: str, name: str):
        for item in getattr(self, kind):
            if item[0] == name:
                return item[1] if len(item) == 2 else item[1:]
        return None


# tokens ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(->)|(\.\.)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([(),+*=]))")


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


class _Line:
    """Token cursor over one statement."""

    def __init__(self, text: str, lineno: int, offset: int):
        self.text, self.lineno, self.offset = text, lineno, offset
        self.pos = 0

    def err(self, msg: str, col: int | None = None) -> SceneError:
        return SceneError(msg, self.lineno, self.offset + (self.pos if col is None else col) + 1)

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> _Tok | None:
        self._skip()
        if self.pos >= len(self.text):
            return None
        m = _TOKEN.match(self.text, self.pos)
        if not m or m.end() == self.pos:
            raise self.err(f"unexpected character {self.text[self.pos]!r}")
        kinds = ("arrow", "range", "int", "name", "sym")
        for kind, g in zip(kinds, m.groups()):
            if g is not None:
                return _Tok(kind, g, m.start(m.lastindex))
        raise self.err("bad token")

    def next(self) -> _Tok:
        t = self.peek()
        if t is None:
            raise self.err("unexpected end of line")
        self.pos = t.col + len(t.text)
        return t

    def accept(self, text: str) -> bool:
        t = self.peek()
        if t is not None and t.text == text:
            self.next()
            return True
        return False

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t is None or t.text != text:
            got = "end of line" if t is None else repr(t.text)
            raise self.err(f"expected {text!r}, got {got}", None if t is None else t.col)
        return self.next()

    def name(self) -> str:
        t = self.next()
        if t.kind != "name":
            raise self.err(f"expected a name, got {t.text!r}", t.col)
        return t.text

    def integer(self) -> int:
        t = self.next()
        if t.kind != "int":
            raise self.err(f"expected an integer, got {t.text!r}", t.col)
        return int(t.text)

    def space_name(self) -> str:
        """``P2``, ``P2xP1`` (tokenized as one name) or a declared name."""
        return self.name()

    def raw(self, stop: str = "") -> str:
        """Everything up to ``stop`` (or the end), stripped; used for file names."""
        self._skip()
        end = self.text.find(stop, self.pos) if stop else len(self.text)
        if end < 0:
            raise self.err(f"expected {stop!r}")
        s = self.text[self.pos:end].strip()
        self.pos = end
        if not s:
            raise self.err("expected a file name")
        return s

    def done(self) -> bool:
        return self.peek() is None

    def finish(self):
        t = self.peek()
        if t is not None:
            raise self.err(f"unexpected {t.text!r}", t.col)


# expressions ---------------------------------------------------------------------
#   sum := term ('+' term)* ; term := INT '*' term | atom ; atom := call | NAME | '(' sum ')'

_CALLS = {"power": ("space", "int"), "revpower": ("space", "int"), "diag": ("space",),
          "autsum": ("space", "int"), "torus": ("space", "int", "int")}


def _expr(L: _Line):
    terms = [_term(L)]
    while L.accept("+"):
        terms.append(_term(L))
    return terms[0] if len(terms) == 1 else ("sum",) + tuple(terms)


def _term(L: _Line):
    t = L.peek()
    if t is not None and t.kind == "int":
        n = L.integer()
        L.expect("*")
        return ("scale", n, _term(L))
    return _atom(L)


def _atom(L: _Line):
    t = L.peek()
    if t is None:
        raise L.err("expected an expression")
    if L.accept("("):
        e = _expr(L)
        L.expect(")")
        return e
    name = L.name()
    if not L.accept("("):
        return ("ref", name)
    if name in _CALLS:
        args: list[Any] = []
        for i, kind in enumerate(_CALLS[name]):
            if i:
                L.expect(",")
            args.append(L.space_name() if kind == "space" else L.integer())
        L.expect(")")
        return (name,) + tuple(args)
    if name == "prod":
        parts = [_expr(L)]
        while L.accept(","):
            parts.append(_expr(L))
        L.expect(")")
        return ("prod",) + tuple(parts)
    if name == "rev":
        e = _expr(L)
        L.expect(")")
        return ("rev", e)
    if name == "declared":
        f = L.raw(")")
        L.expect(")")
        return ("declared", f)
    raise L.err(f"unknown constructor {name!r}", t.col)


def format_expr(e) -> str:
    tag = e[0]
    if tag == "ref":
        return e[1]
    if tag in _CALLS:
        return f"{tag}(" + ",".join(str(x) for x in e[1:]) + ")"
    if tag == "prod":
        return "prod(" + ", ".join(format_expr(x) for x in e[1:]) + ")"
    if tag == "rev":
        return f"rev({format_expr(e[1])})"
    if tag == "declared":
        return f"declared({e[1]})"
    if tag == "scale":
        inner = format_expr(e[2])
        return f"{e[1]}*" + (f"({inner})" if e[2][0] == "sum" else inner)
    if tag == "sum":
        return " + ".join(f"({format_expr(x)})" if x[0] == "sum" else format_expr(x) for x in e[1:])
    raise ValueError(f"unknown expression node {tag!r}")


def _refs(e, out: set):
    tag = e[0]
    if tag == "ref":
        out.add(e[1])
    elif tag in ("prod", "sum"):
        for x in e[1:]:
            _refs(x, out)
    elif tag == "rev":
        _refs(e[1], out)
    elif tag == "scale":
        _refs(e[2], out)


def _spaces_used(e, out: set):
    tag = e[0]
    if tag in _CALLS:
        out.add(e[1])
    elif tag in ("prod", "sum"):
        for x in e[1:]:
            _spaces_used(x, out)
    elif tag == "rev":
        _spaces_used(e[1], out)
    elif tag == "scale":
        _spaces_used(e[2], out)


# statements ---------------------------------------------------------------------------

VERBS = ("degrees", "sequence", "relative", "verify", "scenario")
OPTIONS = ("p", "n", "expect")


def _space_decl(L: _Line):
    t = L.name()
    if t == "proj":
        return ("proj", L.integer())
    if t == "point":
        return ("point",)
    if t == "prod":
        L.expect("(")
        names = [L.space_name()]
        while L.accept(","):
            names.append(L.space_name())
        L.expect(")")
        return ("prod",) + tuple(names)
    if t == "declared":
        return ("declared", L.raw())
    raise L.err(f"unknown space form {t!r}")


def _edge(L: _Line, components: tuple[str, ...]):
    src = L.integer()
    L.expect("->")
    dst = L.integer()
    m = len(components)
    for i in (src, dst):
        if not 1 <= i <= m:
            raise L.err(f"component {i} does not exist (graph has {m})")
    coef = 1
    t = L.peek()
    if t is not None and t.kind == "int":
        coef = L.integer()
        L.expect("*")
    t = L.peek()
    if t is None:
        raise L.err("edge needs a correspondence")
    short = t.kind == "name" and t.text in ("power", "revpower", "diag", "autsum", "torus")
    if short:
        save = L.pos
        L.next()
        if L.peek() is not None and L.peek().text == "(":
            L.pos = save
            short = False
    if short:
        if components[src - 1] != components[dst - 1]:
            raise L.err("short edge forms need equal source and target spaces; write the full expression")
        S = components[src - 1]
        args = [L.integer() for _ in _CALLS[t.text][1:]]
        e = (t.text, S) + tuple(args)
    else:
        e = _expr(L)
    if coef != 1:
        e = ("scale", coef, e)
    label = ""
    if L.accept("as"):
        label = L.name()
    return (src, dst, e, label)


def _options(L: _Line) -> tuple:
    opts = {}
    while not L.done():
        t = L.peek()
        key = L.name()
        if key not in OPTIONS:
            raise L.err(f"unknown option {key!r}", t.col)
        if key in opts:
            raise L.err(f"option {key!r} given twice", t.col)
        L.expect("=")
        if key == "expect":
            v = L.name()
            if v not in ("holds", "fails"):
                raise L.err("expect= takes 'holds' or 'fails'")
            opts[key] = v
        elif key == "p":
            a = L.integer()
            b = L.integer() if L.accept("..") else a
            if b < a:
                raise L.err("empty codimension range")
            opts[key] = (a, b)
        else:
            n = L.integer()
            if n < 1:
                raise L.err("n must be >= 1")
            opts[key] = n
    return tuple(sorted(opts.items()))


def _command(L: _Line):
    t = L.peek()
    verb = L.name()
    if verb not in VERBS:
        raise L.err(f"unknown command {verb!r}; expected one of {', '.join(VERBS)}", t.col)
    if verb == "scenario":
        L._skip()
        m = re.compile(r"[A-Za-z0-9_-]+").match(L.text, L.pos)
        if not m:
            raise L.err("expected a scenario name")
        L.pos = m.end()
        return ("cmd", verb, (m.group(),), _options(L))
    args: list = []
    if verb == "verify":
        args.append(L.name())
    while not L.done():
        save = L.pos
        t = L.peek()
        if t.kind == "name":
            L.next()
            if L.peek() is not None and L.peek().text == "=":
                L.pos = save
                break
            L.pos = save
        args.append(_expr(L))
    return ("cmd", verb, tuple(args), _options(L))


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for part in line.split(";"):
            if part.strip():
                yield _Line(part, lineno, offset)
            offset += len(part) + 1


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def parse_scene(text: str, base: str | Path = ".") -> Scene:
    char = None
    kinds: dict[str, dict] = {"spaces": {}, "corrs": {}, "semiconjs": {}, "graphs": {}}
    graph_edges: dict[str, list] = {}
    last_graph = None
    commands = []
    where: dict[tuple, tuple[int, int]] = {}

    def define(kind, name, value, L, col):
        if name in kinds[kind]:
            raise SceneError(f"{kind[:-1]} {name!r} is already defined", L.lineno, L.offset + col + 1)
        kinds[kind][name] = value
        where[(kind, name)] = (L.lineno, L.offset + col + 1)

    for L in _statements(text):
        head = L.peek()
        kw = L.name()
        if kw == "set":
            L.expect("char")
            t = L.peek()
            p = L.integer()
            if p != 0 and not _is_prime(p):
                raise L.err(f"characteristic must be 0 or a prime, got {p}", t.col)
            if char is not None and char != p:
                raise L.err("characteristic set twice")
            char = p
        elif kw == "space":
            t = L.peek()
            name = L.name()
            if SPACE_NAME.match(name):
                raise L.err(f"{name!r} is a built-in space name", t.col)
            L.expect("=")
            define("spaces", name, _space_decl(L), L, t.col)
        elif kw == "corr":
            t = L.peek()
            name = L.name()
            L.expect("=")
            define("corrs", name, _expr(L), L, t.col)
        elif kw == "semiconj":
            t = L.peek()
            name = L.name()
            L.expect("=")
            if L.name() != "proj":
                raise L.err("semi-conjugacies are written proj(<space> -> factor i..j) of <corr>")
            L.expect("(")
            X = L.space_name()
            L.expect("->")
            if L.name() != "factor":
                raise L.err("expected 'factor'")
            i = L.integer()
            j = L.integer() if L.accept("..") else i
            L.expect(")")
            if L.name() != "of":
                raise L.err("expected 'of'")
            define("semiconjs", name, ("proj", X, i, j, _expr(L)), L, t.col)
        elif kw == "graph":
            t = L.peek()
            name = L.name()
            L.expect("=")
            if L.name() != "components":
                raise L.err("graphs are written components(<space>, ...)")
            L.expect("(")
            comps = [L.space_name()]
            while L.accept(","):
                comps.append(L.space_name())
            L.expect(")")
            define("graphs", name, tuple(comps), L, t.col)
            graph_edges[name] = []
            last_graph = name
        elif kw == "edge":
            t = L.peek()
            gname = last_graph
            if t is not None and t.kind == "name":
                gname = L.name()
                if gname not in kinds["graphs"]:
                    raise L.err(f"unknown graph {gname!r}", t.col)
            if gname is None:
                raise L.err("edge before any graph declaration")
            graph_edges[gname].append(_edge(L, kinds["graphs"][gname]))
        elif kw == "cmd":
            commands.append((_command(L), L.lineno))
        else:
            raise L.err(f"unknown statement {kw!r}", head.col)
        L.finish()

    scene = Scene(
        char=char or 0,
        spaces=tuple(kinds["spaces"].items()),
        corrs=tuple(kinds["corrs"].items()),
        semiconjs=tuple(kinds["semiconjs"].items()),
        graphs=tuple((g, comps, tuple(graph_edges[g])) for g, comps in kinds["graphs"].items()),
        commands=tuple(c for c, _ in commands),
        base=str(base),
    )
    _check_names(scene, where, dict((c, ln) for c, ln in commands))
    return scene


def _check_names(scene: Scene, where: dict, cmd_lines: dict):
    spaces = {n for n, _ in scene.spaces}
    corrs = [n for n, _ in scene.corrs]

    def space_ok(s):
        return s in spaces or SPACE_NAME.match(s)

    def check_expr(e, loc, allowed):
        used: set = set()
        _spaces_used(e, used)
        for s in sorted(used):
            if not space_ok(s):
                raise SceneError(f"unresolved space {s!r}", *loc)
        refs: set = set()
        _refs(e, refs)
        for r in sorted(refs):
            if r not in allowed:
                raise SceneError(f"unresolved correspondence {r!r}", *loc)
        if scene.char:
            _check_char(e, scene.char, loc)

    for n, decl in scene.spaces:
        if decl[0] == "prod":
            for s in decl[1:]:
                if not space_ok(s):
                    raise SceneError(f"unresolved space {s!r}", *where[("spaces", n)])
    for i, (n, e) in enumerate(scene.corrs):
        check_expr(e, where[("corrs", n)], set(corrs[:i]))
    for n, (_, X, i, j, e) in scene.semiconjs:
        if not space_ok(X):
            raise SceneError(f"unresolved space {X!r}", *where[("semiconjs", n)])
        if i < 1 or j < i:
            raise SceneError(f"bad factor range {i}..{j}", *where[("semiconjs", n)])
        check_expr(e, where[("semiconjs", n)], set(corrs))
    for g, comps, edges in scene.graphs:
        for s in comps:
            if not space_ok(s):
                raise SceneError(f"unresolved space {s!r}", *where[("graphs", g)])
        for _, _, e, _ in edges:
            check_expr(e, where[("graphs", g)], set(corrs))
    names = {"corrs": set(corrs), "semiconjs": {n for n, _ in scene.semiconjs},
             "graphs": {g for g, _, _ in scene.graphs}}
    for cmd in scene.commands:
        _, verb, args, _ = cmd
        loc = (cmd_lines.get(cmd),)
        if verb == "scenario":
            continue
        exprs = args[1:] if verb == "verify" else args
        for e in exprs:
            if e[0] == "ref" and (e[1] in names["semiconjs"] or e[1] in names["graphs"]):
                continue
            check_expr(e, loc, names["corrs"])


def _check_char(e, char: int, loc):
    tag = e[0]
    if tag == "autsum":
        from .declared import parse_space_name
        S = parse_space_name(e[1])
        if S is not None and S.factors:
            k = sum(S.factors)
            r = round(e[2] ** (1 / k))
            for c in (r - 1, r, r + 1):
                if c > 1 and c ** k == e[2] and c % char == 0:
                    raise SceneError(f"autsum({e[1]},{e[2]}) needs roots of unity of order {c}, "
                                     f"impossible in characteristic {char}", *loc)
    elif tag in ("prod", "sum"):
        for x in e[1:]:
            _check_char(x, char, loc)
    elif tag == "rev":
        _check_char(e[1], char, loc)
    elif tag == "scale":
        _check_char(e[2], char, loc)


# pretty printing -------------------------------------------------------------

def _format_space_decl(d) -> str:
    if d[0] == "proj":
        return f"proj {d[1]}"
    if d[0] == "point":
        return "point"
    if d[0] == "prod":
        return "prod(" + ",".join(d[1:]) + ")"
    return f"declared {d[1]}"


def _format_options(opts) -> str:
    out = []
    for k, v in opts:
        if k == "p":
            out.append(f"p={v[0]}" if v[0] == v[1] else f"p={v[0]}..{v[1]}")
        else:
            out.append(f"{k}={v}")
    return " ".join(out)


def format_command(cmd) -> str:
    _, verb, args, opts = cmd
    parts = ["cmd", verb]
    for i, a in enumerate(args):
        parts.append(a if isinstance(a, str) else format_expr(a))
    o = _format_options(opts)
    return " ".join(parts) + (" " + o if o else "")


def format_scene(scene: Scene) -> str:
    lines = [f"set char {scene.char}"]
    lines += [f"space {n} = {_format_space_decl(d)}" for n, d in scene.spaces]
    lines += [f"corr {n} = {format_expr(e)}" for n, e in scene.corrs]
    for n, (_, X, i, j, e) in scene.semiconjs:
        rng = f"{i}" if i == j else f"{i}..{j}"
        lines.append(f"semiconj {n} = proj({X} -> factor {rng}) of {format_expr(e)}")
    for g, comps, edges in scene.graphs:
        lines.append(f"graph {g} = components({','.join(comps)})")
        for s, d, e, label in edges:
            lines.append(f"edge {g} {s}->{d} {format_expr(e)}" + (f" as {label}" if label else ""))
    lines += [format_command(c) for c in scene.commands]
    return "\n".join(lines) + "\n"


__all__ = ["Scene", "SceneError", "parse_scene", "format_scene", "format_expr", "format_command", "VERBS"]
