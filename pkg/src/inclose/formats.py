"""Reading contexts and writing results.

Inputs: Burmeister ``.cxt``, FIMI transaction files (``.dat``, one object
per line, 0-based attribute ids) and 0/1 CSV. Outputs: ``.cxt``, CSV, a
plain-text concept list and a JSON document of the spawn tree.
"""

from __future__ import annotations

import csv
import gzip
import io
import json
import re
from pathlib import Path

import numpy as np

from inclose._engine import ConceptTree
from inclose.context import ConceptSet, FormalContext


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# -- Burmeister .cxt -------------------------------------------------------

def parse_cxt(text: str) -> FormalContext:
    lines = text.splitlines()
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected {what}", pos + 1)
        pos += 1
        return lines[pos - 1]

    if take("header 'B'").strip() != "B":
        raise ParseError("first line must be 'B'", 1)
    # optional context name, then the two dimensions
    line = take("object count").strip()
    while not line.isdigit():
        if line and pos > 2:
            raise ParseError(f"expected object count, got {line!r}", pos)
        line = take("object count").strip()
    m = int(line)
    line = take("attribute count").strip()
    if not line.isdigit():
        raise ParseError(f"expected attribute count, got {line!r}", pos)
    n = int(line)
    if pos < len(lines) and not lines[pos].strip():
        pos += 1
    objects = [take("object name").strip() for _ in range(m)]
    attributes = [take("attribute name").strip() for _ in range(n)]
    inc = np.zeros((m, n), dtype=bool)
    for g in range(m):
        row = take(f"row {g + 1} of {m}").strip()
        if len(row) != n:
            raise ParseError(f"row {g + 1} ({objects[g]!r}) has {len(row)} cells, expected {n}", pos)
        for j, ch in enumerate(row):
            if ch in "Xx":
                inc[g, j] = True
            elif ch != ".":
                raise ParseError(f"illegal character {ch!r} in row {g + 1}", pos)
    for extra in lines[pos:]:
        if extra.strip():
            raise ParseError("trailing content after the last row", lines.index(extra, pos) + 1)
    return FormalContext(inc, objects, attributes)


def write_cxt(ctx: FormalContext) -> str:
    m, n = ctx.shape
    out = ["B", "", str(m), str(n), ""]
    out += list(ctx.object_names) + list(ctx.attribute_names)
    out += ["".join("X" if b else "." for b in row) for row in ctx.incidence]
    return "\n".join(out) + "\n"


# -- FIMI transactions ------------------------------------------------------

def parse_fimi(text: str, attribute_count: int | None = None) -> FormalContext:
    """One object per line, each line the 0-based attribute ids it has."""
    rows = []
    top = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        items = set()
        for tok in line.split():
            if not tok.isdigit():
                raise ParseError(f"not a non-negative integer: {tok!r}", lineno)
            items.add(int(tok))
        if items:
            top = max(top, max(items))
        rows.append(items)
    n = max(top + 1, attribute_count or 0)
    inc = np.zeros((len(rows), n), dtype=bool)
    for g, items in enumerate(rows):
        inc[g, list(items)] = True
    return FormalContext(inc, [str(g + 1) for g in range(len(rows))], [str(j) for j in range(n)])


def write_fimi(ctx: FormalContext) -> str:
    return "".join(" ".join(map(str, np.flatnonzero(row))) + "\n" for row in ctx.incidence)


# -- CSV ----------------------------------------------------------------------

def parse_csv(text: str, header: bool | None = None, index: bool | None = None) -> FormalContext:
    """0/1 matrix with an optional header row and an optional name column.

    Without explicit flags, a first row holding anything other than 0/1 is
    a header; a first column is a name column when the header row starts
    with an empty cell or every first cell is a non-numeric string.
    """
    rows = [r for r in csv.reader(io.StringIO(text))]
    while rows and not any(c.strip() for c in rows[-1]):
        rows.pop()
    if not rows:
        return FormalContext(np.zeros((0, 0), bool))
    binary = {"0", "1"}
    if header is None:
        header = any(c.strip() not in binary for c in rows[0])
    head = rows[0] if header else None
    body = rows[1:] if header else rows
    if index is None:
        if head is not None and head and not head[0].strip():
            index = True
        else:
            firsts = [r[0].strip() for r in body if r]
            index = bool(firsts) and all(f and not re.fullmatch(r"-?\d+(\.\d*)?", f) for f in firsts)
    start = 1 if index else 0
    n = (len(head) - start) if head is not None else (len(body[0]) - start if body else 0)
    inc = np.zeros((len(body), n), dtype=bool)
    names = []
    for g, r in enumerate(body):
        lineno = g + (2 if header else 1)
        cells = r[start:]
        if len(cells) != n:
            raise ParseError(f"ragged row: {len(cells)} cells, expected {n}", lineno)
        for j, c in enumerate(cells):
            c = c.strip()
            if c not in binary:
                raise ParseError(f"non-binary cell {c!r} in column {j + 1}", lineno)
            inc[g, j] = c == "1"
        names.append(r[0].strip() if index else str(g + 1))
    attrs = [h.strip() for h in head[start:]] if head is not None else None
    return FormalContext(inc, names, attrs)


def write_csv(ctx: FormalContext) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(ctx.attribute_names))
    for name, row in zip(ctx.object_names, ctx.incidence):
        w.writerow([name] + [int(b) for b in row])
    return buf.getvalue()


# -- dispatch -------------------------------------------------------------------

FORMATS = ("cxt", "fimi", "csv")


def guess_format(path) -> str:
    name = str(path).lower().removesuffix(".gz")
    if name.endswith(".cxt"):
        return "cxt"
    if name.endswith(".csv"):
        return "csv"
    return "fimi"


def read_context(path, fmt: str | None = None) -> FormalContext:
    path = Path(path)
    fmt = fmt or guess_format(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", encoding="ascii") as fh:
        text = fh.read()
    return {"cxt": parse_cxt, "fimi": parse_fimi, "csv": parse_csv}[fmt](text)


def write_context(ctx: FormalContext, path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or guess_format(path)
    text = {"cxt": write_cxt, "fimi": write_fimi, "csv": write_csv}[fmt](ctx)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "wt", encoding="ascii", newline="") as fh:
        fh.write(text)


# -- results --------------------------------------------------------------------

_PLAIN = re.compile(r"[!-~]+")


def quote_name(name: str) -> str:
    """Names made of visible ASCII (no quotes or ';') pass through; others are JSON-quoted."""
    if _PLAIN.fullmatch(name) and '"' not in name and ";" not in name:
        return name
    return json.dumps(name, ensure_ascii=True)


def concept_line(extent, intent, ctx: FormalContext) -> str:
    objs = " ".join(quote_name(ctx.object_names[g]) for g in sorted(extent))
    attrs = " ".join(quote_name(ctx.attribute_names[j]) for j in sorted(intent))
    return f"{objs} ; {attrs}".strip()


def write_concepts_text(cs: ConceptSet, ctx: FormalContext) -> str:
    return "".join(concept_line(cs.extent_of(k), cs.intent_of(k), ctx) + "\n" for k in range(len(cs)))


CONCEPT_TREE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["context", "nodes"],
    "properties": {
        "context": {
            "type": "object",
            "required": ["objects", "attributes", "source"],
            "properties": {
                "objects": {"type": "integer", "minimum": 0},
                "attributes": {"type": "integer", "minimum": 0},
                "source": {"type": ["string", "null"]},
            },
        },
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "parent", "spawn_attribute", "intent", "extent_size"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "parent": {"type": ["integer", "null"], "minimum": 0},
                    "spawn_attribute": {"type": ["string", "null"]},
                    "intent": {"type": "array", "items": {"type": "string"}},
                    "extent_size": {"type": "integer", "minimum": 0},
                    "extent": {"type": "array", "items": {"type": "string"}},
                },
                "additionalProperties": False,
            },
        },
    },
}


def concept_tree_document(tree: ConceptTree, ctx: FormalContext, source: str | None = None,
                          include_extents: bool = False) -> dict:
    m, n = ctx.shape
    nodes = []
    for c in range(len(tree)):
        p = int(tree.parent[c])
        j = int(tree.spawn_attribute[c])
        extent = tree.extent(c)
        node = {
            "id": c,
            "parent": p if p >= 0 else None,
            "spawn_attribute": ctx.attribute_names[j] if j >= 0 else None,
            "intent": [ctx.attribute_names[a] for a in tree.intent(c)],
            "extent_size": len(extent),
        }
        if include_extents:
            node["extent"] = [ctx.object_names[g] for g in extent]
        nodes.append(node)
    return {"context": {"objects": m, "attributes": n, "source": source}, "nodes": nodes}


def write_concept_tree_json(tree: ConceptTree, ctx: FormalContext, source: str | None = None,
                            include_extents: bool = False, indent: int | None = None) -> str:
    doc = concept_tree_document(tree, ctx, source, include_extents)
    return json.dumps(doc, indent=indent, ensure_ascii=True) + "\n"
