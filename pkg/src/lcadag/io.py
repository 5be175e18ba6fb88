"""Text formats for constraint sets and DAGs, plus DOT export.

Constraint files hold one fact per line, ``A B < X Y``, meaning that the
pair ``{A, B}`` is constrained below ``{X, Y}`` (singletons are written by
repetition, ``A A < X Y``).  DAG files hold one arc per line, ``U -> V``.
Both accept ``#`` comments and an optional ``leaves:`` header.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Union

from .dag import Dag
from .errors import InvalidDag, InvalidLeafName, LcaError, ParseError
from .relation import ROOT_LABEL, LeafSet, Relation, check_leaf_name

PathLike = Union[str, Path]


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _header(line: str) -> Optional[list[str]]:
    if line.startswith("leaves:"):
        return line[len("leaves:"):].split()
    return None


@dataclass
class ConstraintFile:
    """Parsed constraint file: the relation plus the source line of every fact."""

    relation: Relation
    lines: dict[tuple[str, str, str, str], int] = field(default_factory=dict)


def parse_constraints(text: str, path: PathLike = "<string>", reject_reflexive: bool = False) -> ConstraintFile:
    names: set[str] = set()
    facts: list[tuple[str, str, str, str]] = []
    lines: dict[tuple[str, str, str, str], int] = {}

    def check(name: str, lineno: int) -> None:
        try:
            check_leaf_name(name)
        except InvalidLeafName as exc:
            raise ParseError(path, lineno, str(exc)) from None

    for lineno, line in _lines(text):
        header = _header(line)
        if header is not None:
            for name in header:
                check(name, lineno)
            names.update(header)
            continue
        sides = line.split("<")
        if len(sides) != 2:
            raise ParseError(path, lineno, f"expected 'A B < X Y', got {line!r}")
        left, right = sides[0].split(), sides[1].split()
        if len(left) != 2 or len(right) != 2:
            raise ParseError(path, lineno, f"each side of '<' needs exactly two leaf names: {line!r}")
        for name in left + right:
            check(name, lineno)
        fact = (*sorted(left), *sorted(right))
        if reject_reflexive and sorted(left) == sorted(right):
            raise ParseError(path, lineno, f"pair {' '.join(left)} cannot be incomparable with itself")
        names.update(left + right)
        facts.append(fact)
        lines.setdefault(fact, lineno)

    if not names:
        raise ParseError(path, 0, "no leaves: file has neither constraints nor a 'leaves:' header")
    ls = LeafSet(names)
    rel = Relation.from_pairs(ls, [((a, b), (x, y)) for a, b, x, y in facts])
    return ConstraintFile(rel, lines)


def read_constraints(path: PathLike, reject_reflexive: bool = False) -> ConstraintFile:
    return parse_constraints(_read(path), path, reject_reflexive)


def serialize_constraints(r: Relation) -> str:
    """One ``a b < x y`` line per fact in pair-id order.

    A ``leaves:`` header listing every leaf is written when some leaf does not
    occur in any fact, so that the leaf set survives a round trip.
    """
    ls = r.leaf_set
    out = []
    used = {x for fact in r for p in fact for x in (p.lo, p.hi)}
    if len(used) < len(ls):
        out.append("leaves: " + " ".join(ls.labels))
    out.extend(f"{ls.pair_str(p)} < {ls.pair_str(q)}" for p, q in r)
    return "".join(line + "\n" for line in out)


def parse_dag(text: str, path: PathLike = "<string>") -> Dag:
    header: Optional[list[str]] = None
    header_line = 0
    order: dict[str, None] = {}
    arcs: list[tuple[str, str]] = []
    seen: dict[tuple[str, str], int] = {}
    for lineno, line in _lines(text):
        names = _header(line)
        if names is not None:
            for name in names:
                try:
                    check_leaf_name(name)
                except InvalidLeafName as exc:
                    raise ParseError(path, lineno, str(exc)) from None
            header = (header or []) + names
            header_line = lineno
            order.update(dict.fromkeys(names))
            continue
        parts = line.split("->")
        if len(parts) != 2 or len(parts[0].split()) != 1 or len(parts[1].split()) != 1:
            raise ParseError(path, lineno, f"expected 'U -> V', got {line!r}")
        u, v = parts[0].strip(), parts[1].strip()
        if u == v:
            raise ParseError(path, lineno, f"self-loop on {u}")
        if (u, v) in seen:
            raise ParseError(path, lineno, f"duplicate arc {u} -> {v} (first on line {seen[u, v]})")
        seen[(u, v)] = lineno
        order.update(dict.fromkeys((u, v)))
        arcs.append((u, v))
    if not order:
        raise ParseError(path, 0, "empty DAG file")

    try:
        leaf_set = LeafSet(header) if header is not None else None
        if leaf_set is None:
            parents = {u for u, _ in arcs}
            sinks = [name for name in order if name not in parents]
            for name in sinks:
                check_leaf_name(name)
        return Dag(list(order), arcs, leaf_set)
    except InvalidLeafName as exc:
        raise ParseError(path, header_line, str(exc)) from None
    except InvalidDag as exc:
        raise ParseError(path, header_line, str(exc)) from None
    except LcaError as exc:
        raise ParseError(path, 0, str(exc)) from None


def read_dag(path: PathLike) -> Dag:
    return parse_dag(_read(path), path)


def serialize_dag(g: Dag) -> str:
    """``leaves:`` header followed by arcs sorted by (parent id, child id)."""
    out = ["leaves: " + " ".join(g.leaf_set.labels)]
    out.extend(f"{g.labels[u]} -> {g.labels[v]}" for u, v in sorted(g.arcs))
    return "".join(line + "\n" for line in out)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Dag, tooltips: Optional[Mapping[str, str]] = None, name: str = "G") -> str:
    """Graphviz rendering: leaves as boxes, ``_root`` as a point, the rest as ellipses."""
    tooltips = tooltips or {}
    out = [f"digraph {name} {{"]
    for v, label in enumerate(g.labels):
        if label == ROOT_LABEL:
            attrs = "shape=point"
        elif g.is_leaf(v):
            attrs = f"shape=box, label={_quote(label)}"
        else:
            attrs = f"shape=ellipse, label={_quote(label)}"
            if label in tooltips:
                attrs += f", tooltip={_quote(tooltips[label])}"
        out.append(f"  {_quote(label)} [{attrs}];")
    for u, v in sorted(g.arcs):
        out.append(f"  {_quote(g.labels[u])} -> {_quote(g.labels[v])};")
    out.append("}")
    return "\n".join(out) + "\n"


def _read(path: PathLike) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(path, 0, exc.strerror or str(exc)) from None
    except UnicodeDecodeError as exc:
        raise ParseError(path, 0, f"not UTF-8: {exc.reason}") from None


def write_text(path: PathLike, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
