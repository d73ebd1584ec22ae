"""Line-oriented text format for catalog entries, plus DOT output.

One directive per line, ``#`` starts a comment::

    poset NAME
    elements e1 e2 ...
    bottom e
    covers a<b a<c ...
    ortho p:q ...
    set NAME e1 e2 ...
    rel NAME (p,q) (r,s) ...

Serialisation is canonical (fixed section order, index-sorted members), so
parse-serialize round trips are byte identical on canonical input.
"""

from __future__ import annotations

import re

from .catalog import CatalogEntry
from .ortho import validate_ortho
from .poset import PosetError, bits, build_from_covers, mask_of
from .relations import Relation

LABEL_RE = re.compile(r"[A-Za-z0-9_.'+\-]+$")
PAIR_RE = re.compile(r"\(([A-Za-z0-9_.'+\-]+),([A-Za-z0-9_.'+\-]+)\)$")


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_entry(text: str) -> CatalogEntry:
    """Parse one entry; validation failures surface as PosetError subclasses."""
    name = None
    labels: list[str] | None = None
    bottom = None
    covers: list[tuple[str, str, int]] = []
    ortho_pairs: list[tuple[str, str]] = []
    named_sets: list[tuple[str, list[str], int]] = []
    named_rels: list[tuple[str, list[tuple[str, str]], int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        directive, args = parts[0], parts[1:]
        if directive == "poset":
            if len(args) != 1:
                raise ParseError(line_no, "poset takes exactly one name")
            if name is not None:
                raise ParseError(line_no, "duplicate poset directive")
            name = args[0]
        elif directive == "elements":
            for token in args:
                if not LABEL_RE.match(token):
                    raise ParseError(line_no, f"bad element label {token!r}")
            labels = (labels or []) + args
        elif directive == "bottom":
            if len(args) != 1:
                raise ParseError(line_no, "bottom takes exactly one element")
            bottom = args[0]
        elif directive == "covers":
            for token in args:
                if token.count("<") != 1:
                    raise ParseError(line_no, f"bad cover {token!r}, expected a<b")
                lo, hi = token.split("<")
                covers.append((lo, hi, line_no))
        elif directive == "ortho":
            for token in args:
                if token.count(":") != 1:
                    raise ParseError(line_no, f"bad ortho pair {token!r}, expected p:q")
                p, q = token.split(":")
                ortho_pairs.append((p, q))
        elif directive == "set":
            if not args:
                raise ParseError(line_no, "set needs a name")
            named_sets.append((args[0], args[1:], line_no))
        elif directive == "rel":
            if not args:
                raise ParseError(line_no, "rel needs a name")
            pairs = []
            for token in args[1:]:
                m = PAIR_RE.match(token)
                if not m:
                    raise ParseError(line_no, f"bad pair {token!r}, expected (p,q)")
                pairs.append((m.group(1), m.group(2)))
            named_rels.append((args[0], pairs, line_no))
        else:
            raise ParseError(line_no, f"unknown directive {directive!r}")

    if name is None:
        raise ParseError(0, "missing poset directive")
    if not labels:
        raise ParseError(0, "missing elements directive")
    if bottom is None:
        raise ParseError(0, "missing bottom directive")

    known = set(labels)
    for lo, hi, line_no in covers:
        if lo not in known or hi not in known:
            missing = lo if lo not in known else hi
            raise ParseError(line_no, f"unknown element {missing!r} in covers")
    poset = build_from_covers(labels, bottom, [(lo, hi) for lo, hi, _ in covers])

    perp = None
    if ortho_pairs:
        mapping = {}
        for p, q in ortho_pairs:
            mapping[p] = q
            mapping[q] = p
        perp = validate_ortho(poset, mapping).perp

    entry = CatalogEntry(name, "file", poset, perp)
    entry.sets["Zfull"] = poset.full_mask
    if poset.top is not None:
        entry.sets["Z01"] = 1 << poset.bottom | 1 << poset.top
    for set_name, members, line_no in named_sets:
        for member in members:
            if member not in known:
                raise ParseError(line_no, f"unknown element {member!r} in set")
        entry.sets[set_name] = poset.subset(members)
    for rel_name, pairs, line_no in named_rels:
        for p, q in pairs:
            if p not in known or q not in known:
                missing = p if p not in known else q
                raise ParseError(line_no, f"unknown element {missing!r} in rel")
        entry.relations[rel_name] = Relation.from_label_pairs(poset, pairs)
    return entry


def _chunk(tokens, width=12):
    for i in range(0, len(tokens), width):
        yield tokens[i:i + width]


def serialize_entry(entry: CatalogEntry) -> str:
    """Canonical text for an entry: covers from the Hasse diagram, members
    in index order, sections in fixed order."""
    P = entry.poset
    lines = [f"poset {entry.name}"]
    for chunk in _chunk(list(P.labels)):
        lines.append("elements " + " ".join(chunk))
    lines.append(f"bottom {P.label(P.bottom)}")
    cover_tokens = [f"{P.label(p)}<{P.label(q)}" for p, q in P.cover_pairs]
    for chunk in _chunk(cover_tokens):
        lines.append("covers " + " ".join(chunk))
    if entry.perp is not None:
        tokens = [f"{P.label(p)}:{P.label(q)}"
                  for p, q in enumerate(entry.perp) if p <= q]
        for chunk in _chunk(tokens):
            lines.append("ortho " + " ".join(chunk))
    skip = {"Zfull", "Z01"}
    for set_name in sorted(entry.sets):
        if set_name in skip:
            continue
        members = " ".join(P.labels_of(entry.sets[set_name]))
        lines.append(f"set {set_name} {members}".rstrip())
    for rel_name in sorted(entry.relations):
        tokens = [f"({a},{b})" for a, b in entry.relations[rel_name].label_pairs()]
        for chunk in _chunk(tokens):
            lines.append(f"rel {rel_name} " + " ".join(chunk))
    return "\n".join(lines) + "\n"


def to_dot(entry: CatalogEntry, highlight: int = 0) -> str:
    """Hasse diagram in DOT, drawn bottom-up, with the given subset filled."""
    P = entry.poset
    lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=ellipse];"]
    for p in range(P.n):
        attrs = f'label="{P.label(p)}"'
        if highlight >> p & 1:
            attrs += ", style=filled, fillcolor=lightblue"
        lines.append(f'  n{p} [{attrs}];')
    for p, q in P.cover_pairs:
        lines.append(f"  n{p} -> n{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"
