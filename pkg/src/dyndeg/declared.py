"""JSON loaders for declared spaces and declared stable atoms.

Space file::

    {"name": "BlP2", "dim": 2,
     "labels": [["1"], ["H", "F"], ["pt"]],
     "products": [["H", "H", {"pt": 1}], ["H", "F", {"pt": 1}]],
     "polarization": [1, 1]}

Atom file::

    {"name": "b", "space": "P3" | {...space object...} | {"file": "x.json"},
     "matrices": [[[1]], [[3]], [[3]], [[1]]],
     "reverse": {"name": "rb", "matrices": [...]},      # matrices optional
     "birational": true}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .atoms import AtomDeclaration, DeclarationError
from .rings import DeclaredSpace, MonomialSpace, Point, Space

_PROJ = re.compile(r"^P(\d+)(?:xP(\d+))*$")


def parse_space_name(name: str) -> MonomialSpace | None:
    """``P3`` or ``P2xP1`` style names of catalog spaces; ``pt`` is the point."""
    if name == "pt":
        return Point()
    if not _PROJ.match(name):
        return None
    return MonomialSpace(tuple(int(x[1:]) for x in name.split("x")))


def space_from_dict(d: dict[str, Any]) -> DeclaredSpace:
    try:
        name, dim, labels = d["name"], int(d["dim"]), d["labels"]
    except KeyError as e:
        raise DeclarationError(f"declared space is missing the field {e.args[0]!r}") from None
    table = []
    for entry in d.get("products", []):
        a, b, res = entry
        table.append(((a, b), tuple((lab, Fraction(c)) for lab, c in sorted(res.items()))))
    pol = tuple(Fraction(c) for c in d.get("polarization", ()))
    return DeclaredSpace(name, dim, tuple(tuple(x) for x in labels), tuple(table), pol)


def space_to_dict(s: DeclaredSpace) -> dict[str, Any]:
    return {
        "name": s.label, "dim": s.dim, "labels": [list(x) for x in s.labels],
        "products": [[a, b, {lab: _num(c) for lab, c in res}] for (a, b), res in s.table],
        "polarization": [_num(c) for c in s.polarization],
    }


def _num(c: Fraction):
    return int(c) if c.denominator == 1 else str(c)


def load_space(path: str | Path) -> DeclaredSpace:
    return space_from_dict(json.loads(Path(path).read_text()))


def _resolve_space(spec, base: Path | None, spaces: dict[str, Space] | None) -> Space:
    if isinstance(spec, str):
        if spaces and spec in spaces:
            return spaces[spec]
        s = parse_space_name(spec)
        if s is None:
            raise DeclarationError(f"unknown space {spec!r}")
        return s
    if isinstance(spec, dict) and "file" in spec:
        p = Path(spec["file"])
        return load_space(p if base is None or p.is_absolute() else base / p)
    if isinstance(spec, dict):
        return space_from_dict(spec)
    raise DeclarationError(f"cannot read a space from {spec!r}")


def atom_from_dict(d: dict[str, Any], base: Path | None = None,
                   spaces: dict[str, Space] | None = None) -> AtomDeclaration:
    space = _resolve_space(d.get("space"), base, spaces)
    rev = d.get("reverse") or {}
    return AtomDeclaration(
        name=d["name"], space=space, matrices=tuple(d["matrices"]),
        reverse_name=rev.get("name"),
        reverse_matrices=tuple(rev["matrices"]) if rev.get("matrices") is not None else None,
        birational=bool(d.get("birational", False)),
    )


def load_atom(path: str | Path, spaces: dict[str, Space] | None = None) -> AtomDeclaration:
    p = Path(path)
    return atom_from_dict(json.loads(p.read_text()), p.parent, spaces)


# spaces used by the built-in scenarios ------------------------------------

def blowup_p2() -> DeclaredSpace:
    """``P^2`` blown up at a point; ``N^1`` basis ``H``, ``F = H - E``."""
    return space_from_dict({
        "name": "BlP2", "dim": 2,
        "labels": [["1"], ["H", "F"], ["pt"]],
        "products": [["H", "H", {"pt": 1}], ["H", "F", {"pt": 1}], ["F", "F", {}]],
    })


def blowup_p3() -> DeclaredSpace:
    """``P^3`` blown up at a point.

    ``N^1``: ``H``, ``F = H - E``.  ``N^2``: ``m`` (a line through the centre,
    strict transform) and ``f`` (a line in the exceptional divisor).
    """
    return space_from_dict({
        "name": "BlP3", "dim": 3,
        "labels": [["1"], ["H", "F"], ["m", "f"], ["pt"]],
        "products": [
            ["H", "H", {"m": 1, "f": 1}], ["H", "F", {"m": 1, "f": 1}], ["F", "F", {"m": 1}],
            ["H", "m", {"pt": 1}], ["H", "f", {}], ["F", "m", {}], ["F", "f", {"pt": 1}],
        ],
    })
