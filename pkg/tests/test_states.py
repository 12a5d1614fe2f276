import random

import pytest

from knotsum.alexander import alexander_poly, default_stars
from knotsum.diagram import parse_pd
from knotsum.errors import MoveNotAvailable, SiteMismatch
from knotsum.laurent import LaurentPoly
from knotsum.moves import random_moves, switch_crossing
from knotsum.states import (
    CONWAY_WEIGHTS,
    StateSumContext,
    alexander_state_sum,
    available_moves,
    black_hole_count,
    clock_move,
    conway_state_sum,
    derive_conway_weights,
    enumerate_states,
    enumerate_states_bruteforce,
    initial_state,
    make_skein_triple,
    skein_check,
    state_epsilon,
    state_permutation_sign,
)

from conftest import FIGURE8, HOPF_POS, TREFOIL

X = LaurentPoly.var(1)
X_INV = LaurentPoly({-4: 1})
ONE = LaurentPoly.one()
Z = X - X_INV


def test_conway_weights_rederive():
    assert derive_conway_weights() == CONWAY_WEIGHTS


def test_conway_weights_mixed_are_one():
    for (sign, kind), w in CONWAY_WEIGHTS.items():
        if kind == "mixed":
            assert w == ONE


def test_conway_weight_products():
    # at either crossing sign the non-trivial weights multiply to 1
    for sign in (1, -1):
        assert CONWAY_WEIGHTS[(sign, "source")] * CONWAY_WEIGHTS[(sign, "sink")] == ONE


def test_initial_state_trefoil():
    d = parse_pd(TREFOIL)
    s = initial_state(d)
    assert len(s.markers) == 3
    crossings = {v for _, (v, _) in s.markers}
    assert crossings == {0, 1, 2}


def test_initial_state_unknot():
    s = initial_state(parse_pd("unknot"))
    assert s.markers == ()


def test_enumerate_trefoil():
    d = parse_pd(TREFOIL)
    assert len(enumerate_states(d)) == 3


def test_enumerate_hopf():
    d = parse_pd(HOPF_POS)
    assert len(enumerate_states(d)) == 2


def test_clock_move_invertibility():
    d = parse_pd(TREFOIL)
    s = initial_state(d)
    moves = available_moves(s)
    assert moves
    (pair, direction) = moves[0]
    t = clock_move(s, pair, direction)
    back = clock_move(t, pair, "ccw" if direction == "cw" else "cw")
    assert back == s


def test_clock_move_unavailable():
    d = parse_pd(TREFOIL)
    s = initial_state(d)
    available = {pair for pair, _ in available_moves(s)}
    for i in range(d.n):
        for j in range(i + 1, d.n):
            if (i, j) not in available:
                with pytest.raises(MoveNotAvailable):
                    clock_move(s, (i, j), "cw")
                with pytest.raises(MoveNotAvailable):
                    clock_move(s, (i, j), "ccw")


def test_clock_theorem_on_corpus(corpus):
    for d in corpus:
        if not d.is_connected or d.n > 7:
            continue
        bfs = enumerate_states(d)
        brute = enumerate_states_bruteforce(d)
        assert bfs == brute


def test_clock_move_flips_parity_and_sign(corpus):
    for d in corpus:
        if not d.is_connected or d.n > 6 or d.n == 0:
            continue
        stars = default_stars(d)
        ctx = StateSumContext(d, stars)
        for s in enumerate_states(d, stars):
            for pair, direction in available_moves(s):
                t = clock_move(s, pair, direction)
                assert (-1) ** black_hole_count(t) == -((-1) ** black_hole_count(s))
                assert state_permutation_sign(t, ctx) == -state_permutation_sign(s, ctx)


def test_sign_harmony(corpus):
    for d in corpus:
        if not d.is_connected or d.n > 6:
            continue
        stars = default_stars(d)
        eps = state_epsilon(d, stars)
        ctx = StateSumContext(d, stars)
        for s in enumerate_states(d, stars):
            assert (-1) ** black_hole_count(s) == eps * state_permutation_sign(s, ctx)


def test_black_holes_empty_state():
    assert black_hole_count(initial_state(parse_pd("unknot"))) == 0


def test_alexander_state_sum_matches_determinant(corpus):
    for d in corpus:
        if not d.is_connected:
            continue
        assert alexander_state_sum(d).dot_equals(alexander_poly(d))[0]


def test_alexander_state_sum_golden():
    assert alexander_state_sum(parse_pd(TREFOIL)) == X * X - X + ONE
    assert alexander_state_sum(parse_pd("unknot")) == ONE
    assert alexander_state_sum(parse_pd(FIGURE8)) == X * X - 3 * X + ONE


def test_conway_golden_values():
    assert conway_state_sum(parse_pd("unknot")) == ONE
    assert conway_state_sum(parse_pd(TREFOIL)) == Z * Z + ONE
    assert conway_state_sum(parse_pd(HOPF_POS)) == Z
    assert conway_state_sum(parse_pd(FIGURE8)) == ONE - Z * Z


def test_conway_star_independence_exact(corpus):
    for d in corpus[:20]:
        if not d.is_connected or d.n == 0:
            continue
        values = set()
        n_faces = d.face_count
        for f1 in range(n_faces):
            for f2 in range(f1 + 1, n_faces):
                if d.faces_adjacent(f1, f2):
                    values.add(conway_state_sum(d, (f1, f2)))
        assert len(values) == 1


def test_conway_reidemeister_invariance_exact(corpus):
    rng = random.Random(17)
    for d in corpus[:15]:
        if not d.is_connected:
            continue
        moved = random_moves(d, rng, 2, max_crossings=9)
        if moved.is_connected:
            assert conway_state_sum(moved) == conway_state_sum(d)


def test_conway_bridges_alexander(corpus):
    # Omega(sqrt(x)) = Delta(x) up to sign and half-powers of x; clearing
    # the half-powers turns it into Omega(x) matching Delta(x^2)
    for d in corpus:
        if not d.is_connected:
            continue
        omega = conway_state_sum(d)
        assert omega.dot_equals(alexander_poly(d).substitute(1, 8))[0]


def test_skein_trefoil_triple():
    d = parse_pd(TREFOIL)
    kp, km, k0 = make_skein_triple(d, 0)
    assert skein_check(kp, km, k0, 0)


def test_skein_site_mismatch():
    d = parse_pd(TREFOIL)
    kp, km, k0 = make_skein_triple(d, 0)
    with pytest.raises(SiteMismatch):
        skein_check(kp, kp, k0, 0)
    with pytest.raises(SiteMismatch):
        skein_check(kp, km, parse_pd("unknot"), 0)


def test_skein_on_corpus(corpus):
    count = 0
    for d in corpus:
        if not d.is_connected or d.n == 0:
            continue
        for v in range(d.n):
            kp, km, k0 = make_skein_triple(d, v)
            if not k0.is_connected:
                continue
            assert skein_check(kp, km, k0, v)
            count += 1
            if count >= 60:
                return
    assert count >= 50
