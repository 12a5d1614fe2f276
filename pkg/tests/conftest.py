"""Shared corpus of small connected diagrams and tangles.

The corpus mixes knots and links, alternating and not, 0 to 8 crossings,
generated deterministically from torus closures, rational tangle sums,
crossing switches and random Reidemeister dressing.
"""

from __future__ import annotations

import random

import pytest

from knotsum.diagram import LinkDiagram, parse_pd
from knotsum.moves import canonical_key, make_alternating, random_moves, switch_crossing
from knotsum.tangle import TangleDiagram, closure, tangle_sum, twist_tangle

TREFOIL = "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]"        # writhe +3, the golden one
TREFOIL_LEFT = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
FIGURE8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
HOPF_POS = "components=[1,3] X[1,3,2,4] X[3,1,4,2]"


def torus_link(k: int) -> LinkDiagram:
    """(2, k) torus link; positive crossings and writhe +k for k > 0."""
    return closure(twist_tangle(-k), "denominator")


def rational_sum(*twists: int) -> TangleDiagram:
    t = twist_tangle(twists[0])
    for k in twists[1:]:
        t = tangle_sum(t, twist_tangle(k))
    return t


def build_corpus() -> list[LinkDiagram]:
    seeds = [
        parse_pd("unknot"),
        parse_pd("X[1,1,2,2]"),
        parse_pd("X[1,2,2,1]"),
        parse_pd(TREFOIL),
        parse_pd(TREFOIL_LEFT),
        parse_pd(FIGURE8),
        parse_pd(HOPF_POS),
        torus_link(-2),
        torus_link(4),
        torus_link(-4),
        torus_link(5),
        torus_link(-5),
        torus_link(6),
        torus_link(7),
        closure(rational_sum(2, 3), "numerator"),
        closure(rational_sum(2, 3), "denominator"),
        closure(rational_sum(-2, 3), "numerator"),
        closure(rational_sum(2, 2), "numerator"),
        closure(rational_sum(3, 3), "numerator"),
        closure(rational_sum(2, -3), "denominator"),
        closure(rational_sum(2, 2, 2), "numerator"),
        closure(rational_sum(2, 3, 2), "denominator"),
        closure(rational_sum(-2, 3, -2), "numerator"),
        closure(tangle_sum(rational_sum(2, 2), twist_tangle(3)), "numerator"),
    ]
    rng = random.Random(20240901)
    corpus: list[LinkDiagram] = []
    seen = set()

    def push(d: LinkDiagram) -> None:
        if not d.is_connected or d.n > 8:
            return
        key = canonical_key(d)
        if key not in seen:
            seen.add(key)
            corpus.append(d)

    for d in seeds:
        push(d)
    for d in list(corpus):
        if d.n >= 3:
            for v in range(min(d.n, 2)):
                push(switch_crossing(d, v))
    for d in list(corpus[:12]):
        push(random_moves(d, rng, 2, max_crossings=8))
    for d in list(corpus):
        if d.n:
            push(make_alternating(d))
    return corpus


_CORPUS = None


def corpus_diagrams() -> list[LinkDiagram]:
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = build_corpus()
    return _CORPUS


@pytest.fixture(scope="session")
def corpus() -> list[LinkDiagram]:
    diagrams = corpus_diagrams()
    assert len(diagrams) >= 30
    return diagrams


@pytest.fixture(scope="session")
def alternating_corpus(corpus) -> list[LinkDiagram]:
    out = [d for d in corpus if d.is_alternating() and d.is_connected]
    assert len(out) >= 10
    return out


@pytest.fixture(scope="session")
def knot_corpus(corpus) -> list[LinkDiagram]:
    return [d for d in corpus if d.link_components == 1]


def build_tangle_corpus() -> list[TangleDiagram]:
    tangles = [
        twist_tangle(0),
        rational_sum(1),
        rational_sum(-1),
        rational_sum(2),
        rational_sum(-2),
        rational_sum(3),
        rational_sum(1, 1),
        rational_sum(2, 1),
        rational_sum(2, -1),
        rational_sum(2, 3),
        rational_sum(-2, 3),
        rational_sum(1, 1, 1),
        rational_sum(2, -1, 2),
        tangle_sum(rational_sum(1), twist_tangle(-2)),
    ]
    from knotsum.tangle import tangle_zero

    tangles.append(tangle_zero())
    return tangles


@pytest.fixture(scope="session")
def tangle_corpus() -> list[TangleDiagram]:
    return build_tangle_corpus()
