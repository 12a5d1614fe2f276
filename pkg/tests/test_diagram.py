import pytest

from knotsum.diagram import (
    checkerboard,
    checkerboard_graph,
    component_count,
    faces,
    parse_pd,
    spanning_tree_count,
    spanning_tree_count_bruteforce,
    writhe,
    CheckerboardGraph,
)
from knotsum.errors import (
    DanglingEdge,
    DisconnectedDiagram,
    NonPlanarError,
    PDSyntaxError,
)

from conftest import TREFOIL, TREFOIL_LEFT, FIGURE8, HOPF_POS


def test_parse_trefoil():
    d = parse_pd(TREFOIL)
    assert d.n == 3
    assert d.link_components == 1
    assert len(d.faces) == 5


def test_parse_unknot():
    d = parse_pd("unknot")
    assert d.n == 0
    assert d.link_components == 1
    assert d.face_count == 2


def test_parse_empty_rejected():
    with pytest.raises(PDSyntaxError):
        parse_pd("")


def test_parse_comments_and_whitespace():
    d = parse_pd("# a trefoil\nX[4,2,5,1]  X[6,4,1,3]\n\tX[2,6,3,5] # done")
    assert d.n == 3


def test_dangling_edge():
    with pytest.raises(DanglingEdge):
        parse_pd("X[1,4,2,5] X[3,6,4,1]")


def test_bad_token():
    with pytest.raises(PDSyntaxError):
        parse_pd("Y[1,2,3,4]")


def test_component_declaration_mismatch():
    with pytest.raises(PDSyntaxError):
        parse_pd("components=[1,2] " + TREFOIL)


def test_euler_formula_on_corpus(corpus):
    for d in corpus:
        if d.n:
            assert len(d.faces) == 2 - d.n + 2 * d.n  # V - E + F = 2


def test_faces_trefoil_edge_sides():
    d = parse_pd(TREFOIL)
    walks = faces(d)
    assert len(walks) == 5
    incidences = [len(w) for w in walks]
    assert sum(incidences) == 2 * d.n_edges
    # every crossing shows exactly 4 quadrants
    for v in range(d.n):
        quads = [d.quadrant_face(v, q) for q in range(4)]
        assert len(quads) == 4


def test_faces_hopf_shadow():
    d = parse_pd(HOPF_POS)
    assert len(faces(d)) == 4


def test_component_count():
    assert component_count(parse_pd(TREFOIL)) == 1
    assert component_count(parse_pd(HOPF_POS)) == 2
    assert component_count(parse_pd("unknot")) == 1


def test_writhe_values():
    assert writhe(parse_pd(TREFOIL)) == 3
    assert writhe(parse_pd(TREFOIL_LEFT)) == -3
    assert writhe(parse_pd("unknot")) == 0
    assert writhe(parse_pd(FIGURE8)) == 0


def test_trefoil_switched_writhe():
    from knotsum.moves import mirror

    assert writhe(mirror(parse_pd(TREFOIL))) == -3


def test_checkerboard_trefoil():
    d = parse_pd(TREFOIL)
    s = checkerboard(d)
    assert {s.n_shaded, s.n_unshaded} == {2, 3}
    assert not s.is_shaded(d.outer_face)


def test_checkerboard_unknot():
    d = parse_pd("unknot")
    s = checkerboard(d)
    assert s.n_shaded == 1 and s.n_unshaded == 1


def test_checkerboard_proper_on_corpus(corpus):
    for d in corpus:
        if not d.is_connected or d.n == 0:
            continue
        s = checkerboard(d)
        for e in range(1, d.n_edges + 1):
            assert s.is_shaded(d.left_face(e)) != s.is_shaded(d.right_face(e))


def test_checkerboard_rejects_disconnected():
    d = parse_pd(TREFOIL + " unknot")
    with pytest.raises(DisconnectedDiagram):
        checkerboard(d)


def test_checkerboard_graph_trefoil():
    d = parse_pd(TREFOIL)
    g = checkerboard_graph(d)
    # one color class gives a triangle, the other two nodes with 3 edges
    assert (g.n_nodes, g.n_edges) in {(3, 3), (2, 3)}
    assert spanning_tree_count(g) == 3


def test_checkerboard_graph_unknot():
    g = checkerboard_graph(parse_pd("unknot"))
    assert g.n_nodes == 1 and g.n_edges == 0
    assert spanning_tree_count(g) == 1


def test_checkerboard_graph_hopf():
    g = checkerboard_graph(parse_pd(HOPF_POS))
    assert g.n_nodes == 2 and g.n_edges == 2
    assert spanning_tree_count(g) == 2


def test_spanning_tree_parallel_edges():
    g = CheckerboardGraph((0, 1), ((0, 1), (0, 1), (0, 1)))
    assert spanning_tree_count(g) == 3
    assert spanning_tree_count_bruteforce(g) == 3


def test_spanning_tree_triangle():
    g = CheckerboardGraph((0, 1, 2), ((0, 1), (1, 2), (2, 0)))
    assert spanning_tree_count(g) == 3


def test_spanning_tree_disconnected():
    g = CheckerboardGraph((0, 1, 2), ((0, 1),))
    assert spanning_tree_count(g) == 0


def test_spanning_tree_matches_bruteforce_on_corpus(corpus):
    for d in corpus:
        if not d.is_connected or d.n == 0:
            continue
        g = checkerboard_graph(d)
        if g.n_edges <= 12:
            assert spanning_tree_count(g) == spanning_tree_count_bruteforce(g)


def test_nonplanar_rejected():
    # trefoil tuple with two entries swapped breaks the rotation system
    with pytest.raises((NonPlanarError, PDSyntaxError)):
        parse_pd("X[4,2,1,5] X[6,4,1,3] X[2,6,3,5]")


def test_outer_face_hint():
    d = parse_pd(TREFOIL + " outer=1L")
    assert d.outer_face == d.left_face(1)


def test_to_text_roundtrip(corpus):
    for d in corpus:
        d2 = parse_pd(d.to_text())
        assert d2.crossings == d.crossings
        assert d2.free_loops == d.free_loops
