"""Instance file parsers.

Vertices are 0-based in every format except DIMACS, whose variables are
1-based by convention.  Lines starting with ``#`` are comments (``c`` in
DIMACS).  Errors carry the 1-based line and column of the offending token.
Parsers take either a :class:`~pathlib.Path` or the file text itself.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .apps import (BlockPartition, CnfInstance, ColorMatrix, EdgeColoring, Hypergraph,
                   PackingInstance)
from .core import ContractError


class FormatError(ContractError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None,
                 source: str = "<input>"):
        where = source
        if line is not None:
            where += f":{line}"
            if col is not None:
                where += f":{col}"
        super().__init__(f"{where}: {msg}")
        self.line = line
        self.col = col


def _read(src) -> tuple:
    if isinstance(src, Path):
        path = src
        try:
            return path.read_text(), str(path)
        except (OSError, UnicodeDecodeError) as exc:
            raise FormatError(f"cannot read file: {exc}", source=str(path)) from None
    return str(src), "<input>"


def _tokens(text: str, comment: str = "#"):
    """Yield ``(line_no, [(col, token), ...])`` for non-blank, non-comment lines."""
    for ln, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith(comment):
            continue
        toks = []
        col = 0
        for part in raw.split():
            col = raw.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        yield ln, toks


def _int(tok, ln, src, lo=None, what="integer"):
    col, s = tok
    try:
        v = int(s)
    except ValueError:
        raise FormatError(f"expected {what}, got {s!r}", ln, col, src) from None
    if lo is not None and v < lo:
        raise FormatError(f"{what} must be >= {lo}, got {v}", ln, col, src)
    return v


def parse_dimacs(src) -> CnfInstance:
    text, name = _read(src)
    header = None
    clauses = []
    cur: list = []
    last = 0
    for ln, toks in _tokens(text, comment="c"):
        last = ln
        if toks[0][1] == "%":
            break
        if toks[0][1] == "p":
            if header is not None:
                raise FormatError("duplicate problem line", ln, toks[0][0], name)
            if len(toks) != 4 or toks[1][1] != "cnf":
                raise FormatError("expected 'p cnf <vars> <clauses>'", ln, toks[0][0], name)
            header = (_int(toks[2], ln, name, 0, "variable count"),
                      _int(toks[3], ln, name, 0, "clause count"))
            continue
        if header is None:
            raise FormatError("clause before the problem line", ln, toks[0][0], name)
        for tok in toks:
            v = _int(tok, ln, name, what="literal")
            if v == 0:
                clauses.append(cur)
                cur = []
                continue
            if abs(v) > header[0]:
                raise FormatError(f"literal {v} exceeds {header[0]} variables", ln, tok[0], name)
            if v in cur:
                raise FormatError(f"duplicate literal {v}", ln, tok[0], name)
            cur.append(v)
    if header is None:
        raise FormatError("missing 'p cnf' line", source=name)
    if cur:
        raise FormatError("last clause is not terminated by 0", last, None, name)
    if len(clauses) != header[1]:
        raise FormatError(f"header promises {header[1]} clauses, found {len(clauses)}",
                          source=name)
    try:
        return CnfInstance(header[0], clauses)
    except ContractError as exc:
        raise FormatError(str(exc), source=name) from None


def parse_color_matrix(src) -> ColorMatrix:
    text, name = _read(src)
    rows = []
    lines = []
    for ln, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or all(not c.strip() for c in row) or row[0].lstrip().startswith("#"):
            continue
        rows.append([c.strip() for c in row])
        lines.append(ln)
    n = len(rows)
    if n == 0:
        raise FormatError("empty color matrix", source=name)
    for ln, row in zip(lines, rows):
        if len(row) != n:
            raise FormatError(f"row has {len(row)} entries, expected {n}", ln, None, name)
        for j, c in enumerate(row):
            if not c:
                raise FormatError(f"empty color in column {j + 1}", ln, j + 1, name)
    return ColorMatrix(rows)


def _edge_lines(text: str, name: str, s: int | None):
    edges = {}
    for ln, toks in _tokens(text):
        if len(toks) < 3:
            raise FormatError("expected vertices followed by a color", ln, toks[0][0], name)
        if s is None:
            s = len(toks) - 1
        if len(toks) != s + 1:
            raise FormatError(f"expected {s} vertices and a color", ln, toks[0][0], name)
        vs = tuple(_int(t, ln, name, 0, "vertex") for t in toks[:-1])
        if len(set(vs)) != s:
            raise FormatError("repeated vertex in edge", ln, toks[0][0], name)
        key = tuple(sorted(vs))
        if key in edges:
            raise FormatError(f"edge {key} listed twice", ln, toks[0][0], name)
        edges[key] = toks[-1][1]
    if not edges:
        raise FormatError("no edges", source=name)
    return edges, s


def parse_edge_coloring(src, s: int | None = None) -> EdgeColoring:
    """``v1 ... vs color`` lines; ``n`` is one more than the largest vertex."""
    text, name = _read(src)
    edges, s = _edge_lines(text, name, s)
    n = 1 + max(v for e in edges for v in e)
    try:
        return EdgeColoring(n, edges, s)
    except ContractError as exc:
        raise FormatError(str(exc), source=name) from None


def _hypergraph_block(items, name: str) -> tuple:
    if not items:
        raise FormatError("missing 'p hyp' header", source=name)
    ln, toks = items[0]
    if len(toks) != 4 or toks[0][1] != "p" or toks[1][1] != "hyp":
        raise FormatError("expected 'p hyp <n> <m>'", ln, toks[0][0], name)
    n = _int(toks[2], ln, name, 0, "vertex count")
    m = _int(toks[3], ln, name, 0, "edge count")
    edges = []
    for ln, toks in items[1:]:
        e = []
        for t in toks:
            v = _int(t, ln, name, 0, "vertex")
            if v >= n:
                raise FormatError(f"vertex {v} outside range({n})", ln, t[0], name)
            if v in e:
                raise FormatError(f"repeated vertex {v}", ln, t[0], name)
            e.append(v)
        edges.append(e)
    if len(edges) != m:
        raise FormatError(f"header promises {m} edges, found {len(edges)}", ln, None, name)
    return n, edges


def parse_hypergraph(src) -> Hypergraph:
    text, name = _read(src)
    n, edges = _hypergraph_block(list(_tokens(text)), name)
    try:
        return Hypergraph(n, edges)
    except ContractError as exc:
        raise FormatError(str(exc), source=name) from None


def parse_packing(src) -> PackingInstance:
    """Two ``p hyp`` blocks separated by a line holding ``%``."""
    text, name = _read(src)
    blocks: list = [[]]
    for ln, toks in _tokens(text):
        if toks[0][1] == "%":
            if len(blocks) == 2:
                raise FormatError("more than one '%' separator", ln, toks[0][0], name)
            blocks.append([])
            continue
        blocks[-1].append((ln, toks))
    if len(blocks) != 2:
        raise FormatError("expected two hypergraphs separated by '%'", source=name)
    (n1, e1), (n2, e2) = (_hypergraph_block(b, name) for b in blocks)
    sizes = {len(e) for e in e1 + e2}
    if len(sizes) > 1:
        raise FormatError(f"edges have mixed sizes {sorted(sizes)}", source=name)
    s = sizes.pop() if sizes else 2
    try:
        return PackingInstance(max(n1, n2), s, e1, e2)
    except ContractError as exc:
        raise FormatError(str(exc), source=name) from None


def parse_block_graph(src) -> BlockPartition:
    """``block v1 ... vb`` lines followed by ``u v`` edge lines."""
    text, name = _read(src)
    blocks = []
    edges = []
    for ln, toks in _tokens(text):
        if toks[0][1] == "block":
            if edges:
                raise FormatError("block line after the edge list", ln, toks[0][0], name)
            blocks.append([_int(t, ln, name, 0, "vertex") for t in toks[1:]])
        else:
            if len(toks) != 2:
                raise FormatError("expected an edge 'u v'", ln, toks[0][0], name)
            edges.append(tuple(_int(t, ln, name, 0, "vertex") for t in toks))
    if not blocks:
        raise FormatError("no block lines", source=name)
    n = sum(len(b) for b in blocks)
    try:
        return BlockPartition(n, blocks, edges)
    except ContractError as exc:
        raise FormatError(str(exc), source=name) from None


# -- writers (used by tests and examples) ---------------------------------------

def write_dimacs(cnf: CnfInstance) -> str:
    lines = [f"p cnf {cnf.nvars} {len(cnf.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def write_color_matrix(mat: ColorMatrix) -> str:
    return "\n".join(",".join(str(c) for c in row) for row in mat.colors) + "\n"


def write_edge_coloring(col: EdgeColoring) -> str:
    return "".join(" ".join(map(str, e)) + f" {c}\n" for e, c in sorted(col.colors.items()))


def write_hypergraph(h, n: int | None = None) -> str:
    edges = h.edges
    n = h.n if n is None else n
    return f"p hyp {n} {len(edges)}\n" + "".join(" ".join(map(str, e)) + "\n" for e in edges)


def write_packing(inst: PackingInstance) -> str:
    return (write_hypergraph(Hypergraph(inst.n, inst.h1)) + "%\n"
            + write_hypergraph(Hypergraph(inst.n, inst.h2)))


def write_block_graph(part: BlockPartition) -> str:
    out = "".join("block " + " ".join(map(str, b)) + "\n" for b in part.blocks)
    return out + "".join(f"{u} {v}\n" for u, v in part.edges)
