"""Text formats for hypergraphs and families.

``.hg``: first non-comment line is ``k n [q]`` (q present marks a partite
graph with Q on the low indices); each subsequent line lists the k vertex
indices of one edge.  ``.fam``: header ``k n t`` followed by t blocks of
edge lines separated by ``%`` lines.  ``#`` starts a comment anywhere.
"""

from __future__ import annotations

import warnings

from .core import Family, Hypergraph, PartiteStructure


class ParseError(ValueError):
    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


def _content_lines(text):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def _parse_edge(path, line_no, line, k, n):
    parts = line.split()
    if len(parts) != k:
        raise ParseError(path, line_no, f"expected {k} vertex indices, got {len(parts)}")
    try:
        edge = tuple(int(x) for x in parts)
    except ValueError:
        raise ParseError(path, line_no, f"non-integer vertex in {line!r}") from None
    if len(set(edge)) != k:
        raise ParseError(path, line_no, f"repeated vertex in edge {edge}")
    if min(edge) < 0 or max(edge) >= n:
        raise ParseError(path, line_no, f"vertex out of range in edge {edge}")
    return tuple(sorted(edge))


def parse_hypergraph(path) -> tuple[Hypergraph, PartiteStructure | None]:
    text = open(path).read()
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(path, 1, "empty file")
    line_no, header = lines[0]
    fields = header.split()
    if len(fields) not in (2, 3):
        raise ParseError(path, line_no, f"header must be 'k n [q]', got {header!r}")
    try:
        k, n = int(fields[0]), int(fields[1])
        q = int(fields[2]) if len(fields) == 3 else None
    except ValueError:
        raise ParseError(path, line_no, f"non-integer header field in {header!r}") from None
    edges = []
    seen = set()
    for line_no, line in lines[1:]:
        edge = _parse_edge(path, line_no, line, k, n)
        if edge in seen:
            warnings.warn(f"{path}:{line_no}: duplicate edge {edge} ignored", stacklevel=2)
            continue
        seen.add(edge)
        edges.append(edge)
    ps = PartiteStructure(q) if q is not None else None
    return Hypergraph(k, n, edges), ps


def emit_hypergraph(path, h: Hypergraph, ps: PartiteStructure | None = None) -> None:
    with open(path, "w") as f:
        header = f"{h.k} {h.n_vertices}" + (f" {ps.q_size}" if ps else "")
        f.write(header + "\n")
        for e in h.edges:
            f.write(" ".join(map(str, e)) + "\n")


def parse_family(path) -> Family:
    text = open(path).read()
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(path, 1, "empty file")
    line_no, header = lines[0]
    fields = header.split()
    if len(fields) != 3:
        raise ParseError(path, line_no, f"header must be 'k n t', got {header!r}")
    try:
        k, n, t = (int(x) for x in fields)
    except ValueError:
        raise ParseError(path, line_no, f"non-integer header field in {header!r}") from None
    blocks: list[list] = [[]]
    block_seen: set = set()
    for line_no, line in lines[1:]:
        if line == "%":
            blocks.append([])
            block_seen = set()
            continue
        edge = _parse_edge(path, line_no, line, k, n)
        if edge in block_seen:
            warnings.warn(f"{path}:{line_no}: duplicate edge {edge} ignored", stacklevel=2)
            continue
        block_seen.add(edge)
        blocks[-1].append(edge)
    if len(blocks) != t:
        raise ParseError(path, lines[-1][0], f"expected {t} member blocks, found {len(blocks)}")
    members = tuple(Hypergraph(k, n, b) for b in blocks)
    return Family(n_vertices=n, members=members)


def emit_family(path, family: Family) -> None:
    with open(path, "w") as f:
        f.write(f"{family.k} {family.n_vertices} {family.t}\n")
        for i, member in enumerate(family.members):
            if i:
                f.write("%\n")
            for e in member.edges:
                f.write(" ".join(map(str, e)) + "\n")
