from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from lopsided.apps import (random_block_graph, random_color_matrix, random_edge_coloring,
                           random_hypergraph, random_ksat, random_packing)
from lopsided.formats import (FormatError, parse_block_graph, parse_color_matrix, parse_dimacs,
                              parse_edge_coloring, parse_hypergraph, parse_packing,
                              write_block_graph, write_color_matrix, write_dimacs,
                              write_edge_coloring, write_hypergraph, write_packing)


def test_dimacs_basic():
    cnf = parse_dimacs("c hi\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n")
    assert cnf.clauses == [(1, -2), (2, 3, -1)]


@pytest.mark.parametrize("text,line,col", [
    ("p cnf 3 1\n1 x 0\n", 2, 3),
    ("1 2 0\n", 1, 1),
    ("p cnf 2 1\n1 3 0\n", 2, 3),
    ("p cnf 2 1\n1 1 0\n", 2, 3),
    ("p cnf 2 1\n1 2\n", 2, None),
])
def test_dimacs_errors_locate_tokens(text, line, col):
    with pytest.raises(FormatError) as exc:
        parse_dimacs(text)
    assert exc.value.line == line and exc.value.col == col


def test_dimacs_clause_count_checked():
    with pytest.raises(FormatError):
        parse_dimacs("p cnf 2 2\n1 2 0\n")


def test_color_matrix_csv():
    mat = parse_color_matrix("red,blue\nblue, red\n")
    assert mat.n == 2 and mat.colors[0][0] == mat.colors[1][1]
    with pytest.raises(FormatError) as exc:
        parse_color_matrix("a,b\nc\n")
    assert exc.value.line == 2


def test_edge_coloring_lines():
    text = "0 1 a\n0 2 b\n1 2 a\n"
    col = parse_edge_coloring(text)
    assert col.n == 3 and col.max_multiplicity() == 2
    with pytest.raises(FormatError) as exc:
        parse_edge_coloring("0 1 a\n0 q b\n")
    assert (exc.value.line, exc.value.col) == (2, 3)
    with pytest.raises(FormatError):
        parse_edge_coloring("0 1 a\n1 0 b\n")
    with pytest.raises(FormatError):
        parse_edge_coloring("0 1 a\n0 2 b\n")  # (1, 2) is uncolored


def test_hypergraph_and_packing():
    h = parse_hypergraph("# x\np hyp 4 2\n0 1 2\n1 2 3\n")
    assert h.edges == [(0, 1, 2), (1, 2, 3)]
    with pytest.raises(FormatError) as exc:
        parse_hypergraph("p hyp 3 1\n0 5\n")
    assert (exc.value.line, exc.value.col) == (2, 3)
    inst = parse_packing("p hyp 5 1\n0 1\n%\np hyp 5 1\n2 3\n")
    assert inst.h1 == [(0, 1)] and inst.h2 == [(2, 3)] and inst.s == 2
    with pytest.raises(FormatError):
        parse_packing("p hyp 5 1\n0 1\n")


def test_block_graph():
    part = parse_block_graph("block 0 1\nblock 2 3\n0 2\n1 3\n")
    assert part.b == 2 and part.edges == [(0, 2), (1, 3)]
    with pytest.raises(FormatError):
        parse_block_graph("block 0 1\n0 1\nblock 2 3\n")
    with pytest.raises(FormatError):
        parse_block_graph("block 0 1\nblock 2\n")


def test_missing_file_is_a_format_error(tmp_path):
    with pytest.raises(FormatError):
        parse_dimacs(Path(tmp_path / "nope.cnf"))


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_writers_round_trip(seed):
    cnf = random_ksat(12, 6, 3, seed=seed)
    assert parse_dimacs(write_dimacs(cnf)).clauses == cnf.clauses
    mat = random_color_matrix(5, 2, seed)
    assert parse_color_matrix(write_color_matrix(mat)).colors == mat.colors
    col = random_edge_coloring(6, 2, seed=seed)
    assert parse_edge_coloring(write_edge_coloring(col)).colors == col.colors
    h = random_hypergraph(9, 3, 3, seed=seed)
    assert parse_hypergraph(write_hypergraph(h)).edges == h.edges
    pk = random_packing(8, 2, 3, 3, seed)
    back = parse_packing(write_packing(pk))
    assert (back.h1, back.h2) == (pk.h1, pk.h2)
    part = random_block_graph(3, 3, 2, 5, seed)
    back = parse_block_graph(write_block_graph(part))
    assert (back.blocks, back.edges) == (part.blocks, part.edges)
