import random

import pytest

from knotsum.bracket import bracket, f_poly
from knotsum.diagram import parse_pd
from knotsum.errors import InvalidSite
from knotsum.laurent import LaurentPoly
from knotsum.moves import (
    apply_reidemeister,
    canonical_key,
    make_alternating,
    mirror,
    move_sites,
    random_moves,
    same_diagram,
    smooth_crossing,
    switch_crossing,
)

from conftest import TREFOIL


def test_r1_on_bare_unknot():
    d = apply_reidemeister(parse_pd("unknot"), "R1+", None)
    assert d.n == 1 and d.writhe == 1


def test_r1_writhe_change(corpus):
    rng = random.Random(2)
    for d in corpus:
        sites = move_sites(d, "R1+")
        site = sites[rng.randrange(len(sites))]
        assert apply_reidemeister(d, "R1+", site).writhe == d.writhe + 1
        assert apply_reidemeister(d, "R1-", site).writhe == d.writhe - 1


def test_r1_undo_roundtrip():
    d = parse_pd(TREFOIL)
    for e in range(1, 7):
        grown = apply_reidemeister(d, "R1+", e)
        curls = move_sites(grown, "R1-undo")
        assert any(
            same_diagram(apply_reidemeister(grown, "R1-undo", v), d) for v in curls
        )


def test_r2_preserves_writhe_and_components(corpus):
    rng = random.Random(3)
    for d in corpus:
        sites = move_sites(d, "R2")
        if not sites:
            continue
        site = sites[rng.randrange(len(sites))]
        out = apply_reidemeister(d, "R2", site)
        assert out.n == d.n + 2
        assert out.writhe == d.writhe
        assert out.link_components == d.link_components


def test_r2_then_undo():
    d = parse_pd(TREFOIL)
    for site in move_sites(d, "R2")[:10]:
        grown = apply_reidemeister(d, "R2", site)
        undone = [
            apply_reidemeister(grown, "R2-undo", f)
            for f in move_sites(grown, "R2-undo")
        ]
        assert any(same_diagram(u, d) for u in undone)


def test_r2_invalid_site():
    d = parse_pd(TREFOIL)
    with pytest.raises(InvalidSite):
        apply_reidemeister(d, "R2", ((1, "L"), (1, "R"), True))


def test_r3_preserves_invariants(corpus):
    rng = random.Random(4)
    count = 0
    for d in corpus:
        for site in move_sites(d, "R3"):
            out = apply_reidemeister(d, "R3", site)
            assert out.n == d.n
            assert out.writhe == d.writhe
            assert out.link_components == d.link_components
            assert bracket(out) == bracket(d)
            count += 1
            if count > 40:
                return
    assert count > 5


def test_r3_invalid_on_non_triangle():
    d = parse_pd(TREFOIL)
    non_triangles = [f for f in range(len(d.faces)) if len(d.faces[f]) != 3]
    with pytest.raises(InvalidSite):
        apply_reidemeister(d, "R3", (non_triangles[0], 1))


def test_component_count_invariant_under_moves(corpus):
    rng = random.Random(5)
    for d in corpus[:20]:
        out = random_moves(d, rng, 3, max_crossings=10)
        assert out.link_components == d.link_components


def test_writhe_r2_r3_invariance(corpus):
    rng = random.Random(6)
    for d in corpus[:20]:
        cur = d
        for _ in range(3):
            for move in ("R2", "R3"):
                sites = move_sites(cur, move)
                if sites and cur.n < 10:
                    cur = apply_reidemeister(cur, move, sites[rng.randrange(len(sites))])
        assert cur.writhe == d.writhe


def test_switch_and_mirror():
    d = parse_pd(TREFOIL)
    assert switch_crossing(d, 0).writhe == 1
    m = mirror(d)
    assert m.writhe == -3
    assert same_diagram(mirror(m), d)


def test_smooth_counts():
    d = parse_pd(TREFOIL)
    assert smooth_crossing(d, 0, "oriented").link_components == 2
    a = smooth_crossing(d, 0, "A")
    b = smooth_crossing(d, 0, "B")
    assert {a.link_components, b.link_components} == {1, 2}


def test_make_alternating(corpus):
    for d in corpus:
        if not d.is_connected or d.n == 0:
            continue
        alt = make_alternating(d)
        assert alt.is_alternating()
        assert alt.n == d.n


def test_canonical_key_detects_renumbering():
    d1 = parse_pd(TREFOIL)
    # renumber starting the strand two edges later
    remap = {e: (e - 3) % 6 + 1 for e in range(1, 7)}
    tuples = [tuple(remap[e] for e in x) for x in d1.crossings]
    d2 = parse_pd(" ".join(f"X[{a},{b},{c},{d}]" for a, b, c, d in tuples))
    assert canonical_key(d1) == canonical_key(d2)
    assert canonical_key(d1) != canonical_key(mirror(d1))


def test_f_poly_invariance_spot(corpus):
    rng = random.Random(7)
    for d in corpus[:10]:
        moved = random_moves(d, rng, 3, max_crossings=11)
        assert f_poly(moved) == f_poly(d)
