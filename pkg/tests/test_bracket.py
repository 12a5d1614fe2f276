import random

import pytest

from knotsum.bracket import (
    DELTA,
    bracket,
    curl_check,
    f_poly,
    jones,
    loop_partition,
    smoothing_state,
    switching_check,
)
from knotsum.diagram import parse_pd
from knotsum.errors import NotACurl, SiteMismatch, TooLarge
from knotsum.laurent import LaurentPoly
from knotsum.moves import (
    apply_reidemeister,
    mirror,
    move_sites,
    random_moves,
    smooth_crossing,
    switch_crossing,
)

from conftest import FIGURE8, HOPF_POS, TREFOIL

A = LaurentPoly.monomial(1, 4)
A_INV = LaurentPoly.monomial(1, -4)
ONE = LaurentPoly.one()


def bracket_recursive(d):
    """Independent oracle: expand the smoothing axiom crossing by crossing."""
    if d.n == 0:
        return DELTA ** (d.free_loops - 1)
    a_side = bracket_recursive(smooth_crossing(d, 0, "A"))
    b_side = bracket_recursive(smooth_crossing(d, 0, "B"))
    return A * a_side + A_INV * b_side


def test_bracket_trefoil_golden():
    assert bracket(parse_pd(TREFOIL)) == LaurentPoly({20: -1, -12: -1, -28: 1})


def test_bracket_unknot():
    assert bracket(parse_pd("unknot")) == ONE


def test_bracket_hopf():
    assert bracket(parse_pd(HOPF_POS)) == LaurentPoly({16: -1, -16: -1})


def test_bracket_matches_recursive_oracle(corpus):
    for d in corpus:
        if d.n <= 6:
            assert bracket(d) == bracket_recursive(d)


def test_bracket_disjoint_union(corpus):
    for d in corpus[:20]:
        with_loop = parse_pd(d.to_text() + " unknot")
        assert bracket(with_loop) == DELTA * bracket(d)


def test_bracket_smoothing_axiom(corpus):
    for d in corpus[:25]:
        for v in range(d.n):
            expect = (A * bracket(smooth_crossing(d, v, "A"))
                      + A_INV * bracket(smooth_crossing(d, v, "B")))
            assert bracket(d) == expect


def test_smoothing_state_counts():
    d = parse_pd(TREFOIL)
    s_all_a = smoothing_state(d, 0b111)
    assert s_all_a.a_count == 3
    assert s_all_a.loops >= 1
    total = sum(1 for m in range(8) for _ in [smoothing_state(d, m)])
    assert total == 8


def test_loop_partition_covers_edges():
    d = parse_pd(FIGURE8)
    for mask in range(16):
        parts = loop_partition(d, mask)
        assert sorted(e for p in parts for e in p) == list(range(1, 9))


def test_curl_checks():
    pos = parse_pd("X[1,1,2,2]")
    neg = parse_pd("X[1,2,2,1]")
    assert bracket(pos) == LaurentPoly({12: -1})
    assert bracket(neg) == LaurentPoly({-12: -1})
    assert curl_check(pos, 0) == 3
    assert curl_check(neg, 0) == -3


def test_double_negative_curl():
    d = apply_reidemeister(parse_pd("X[1,2,2,1]"), "R1-", 1)
    assert bracket(d) == LaurentPoly({-24: 1})  # (-A^-3)^2


def test_curl_check_rejects_non_curl():
    with pytest.raises(NotACurl):
        curl_check(parse_pd(TREFOIL), 0)


def test_bracket_r1_factor(corpus):
    rng = random.Random(23)
    for d in corpus[:15]:
        sites = move_sites(d, "R1+")
        site = sites[rng.randrange(len(sites))]
        up = apply_reidemeister(d, "R1+", site)
        down = apply_reidemeister(d, "R1-", site)
        assert bracket(up) == LaurentPoly({12: -1}) * bracket(d)
        assert bracket(down) == LaurentPoly({-12: -1}) * bracket(d)


def test_bracket_r2_r3_invariance(corpus):
    rng = random.Random(29)
    for d in corpus[:15]:
        cur = d
        for _ in range(2):
            for move in ("R2", "R3"):
                sites = move_sites(cur, move)
                if sites and cur.n <= 9:
                    cur = apply_reidemeister(cur, move, sites[rng.randrange(len(sites))])
        assert bracket(cur) == bracket(d)


def test_f_poly_trefoil_golden():
    assert f_poly(parse_pd(TREFOIL)) == LaurentPoly({-16: 1, -48: 1, -64: -1})


def test_f_poly_curled_unknots():
    rng = random.Random(31)
    d = parse_pd("unknot")
    for _ in range(4):
        sites = move_sites(d, rng.choice(["R1+", "R1-"]))
        d = apply_reidemeister(d, rng.choice(["R1+", "R1-"]),
                               sites[rng.randrange(len(sites))])
    assert f_poly(d) == ONE


def test_f_poly_mirror(corpus):
    for d in corpus[:20]:
        mirrored = f_poly(mirror(d))
        assert mirrored == f_poly(d).substitute(1, -4)


def test_f_poly_reidemeister_invariance(corpus):
    rng = random.Random(37)
    for d in corpus[:12]:
        moved = random_moves(d, rng, 3, max_crossings=11)
        assert f_poly(moved) == f_poly(d)


def test_jones_trefoil():
    assert jones(parse_pd(TREFOIL)) == LaurentPoly({4: 1, 12: 1, 16: -1})


def test_jones_unknot():
    assert jones(parse_pd("unknot")) == ONE


def test_jones_two_unlink():
    v = jones(parse_pd("unknot unknot"))
    assert v == LaurentPoly({2: -1, -2: -1})  # -t^1/2 - t^-1/2


def test_jones_figure8_symmetric():
    v = jones(parse_pd(FIGURE8))
    assert v == v.substitute(1, -4)  # amphichiral
    assert v == LaurentPoly({8: 1, 4: -1, 0: 1, -4: -1, -8: 1})


def test_switching_formula_on_corpus(corpus):
    for d in corpus[:20]:
        for v in range(min(d.n, 2)):
            assert switching_check(d, switch_crossing(d, v), v)


def test_switching_site_mismatch():
    d = parse_pd(TREFOIL)
    with pytest.raises(SiteMismatch):
        switching_check(d, d, 0)


def test_too_large(monkeypatch):
    monkeypatch.setenv("KNOT_MAX_CROSSINGS", "2")
    with pytest.raises(TooLarge):
        bracket(parse_pd(TREFOIL))


def test_paper_switching_chain():
    """The worked trefoil computation: U and U' brackets and the identity."""
    k = parse_pd(TREFOIL)
    u = switch_crossing(k, 0)
    u_prime = smooth_crossing(u, 0, "A")
    assert bracket(u) == LaurentPoly({12: -1})        # -A^3
    assert bracket(u_prime) == LaurentPoly({-24: 1})  # A^-6
    lhs = A_INV * bracket(k) - A * bracket(u)
    rhs = (LaurentPoly({-8: 1, 8: -1})) * bracket(u_prime)
    assert lhs == rhs
    assert switching_check(u, k, 0)