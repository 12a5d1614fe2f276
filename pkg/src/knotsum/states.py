"""Marker states on a link universe and the state sums built from them.

A state assigns to every face except two starred adjacent ones a marker in
a quadrant of a crossing on its boundary, each crossing marked exactly
once. States correspond to the nonzero terms of the Alexander determinant
expansion; their signs come out of a purely diagrammatic count:

    sign(S) = (-1)**b(S),  b(S) = markers sitting in quadrants whose two
    bounding strands both point into the crossing ("black holes").

Clock moves exchange the markers of two crossings sharing two adjacent
faces by rotating both a quarter turn the same way; breadth-first search
over clock moves enumerates every state of a connected universe.

The Conway weights arise from the Alexander quadrant labels by dropping
signs, substituting x -> x**2 and scaling by 1/x, erasing the weights in
mixed-orientation quadrants, and finally swapping x with 1/x. The result
depends only on crossing sign and quadrant orientation class:

    positive crossing:  source x      sink 1/x     mixed 1
    negative crossing:  source 1/x    sink x       mixed 1

Summing (-1)**b(S) times the product of marked weights gives a strict
regular- and ambient-isotopy invariant normalization of the Alexander
polynomial, a polynomial in z = x - 1/x.
"""

from __future__ import annotations

from .alexander import QUADRANT_LABELS, alexander_poly, default_stars
from .diagram import LinkDiagram
from .errors import MoveNotAvailable, NoState, SiteMismatch
from .laurent import LaurentPoly

X = LaurentPoly.var(1)
X_INV = LaurentPoly({-4: 1})
ONE = LaurentPoly.one()

CONWAY_WEIGHTS: dict[tuple[int, str], LaurentPoly] = {
    (1, "source"): X,
    (1, "sink"): X_INV,
    (1, "mixed"): ONE,
    (-1, "source"): X_INV,
    (-1, "sink"): X,
    (-1, "mixed"): ONE,
}

# orientation class of each quadrant by crossing sign (under-strand enters
# south; over-strand enters west at positive crossings, east at negative)
_QUADRANT_TYPES = {
    1: ("mixed", "source", "mixed", "sink"),
    -1: ("sink", "mixed", "source", "mixed"),
}


def derive_conway_weights() -> dict[tuple[int, str], LaurentPoly]:
    """Re-derive the weight table from the Alexander labels.

    Follows the transformation chain: remove signs, x -> x**2 then scale by
    1/x, erase mixed-quadrant weights, exchange x and 1/x. Returns a table
    equal to CONWAY_WEIGHTS (asserted by the self-test in the suite).
    """
    table: dict[tuple[int, str], LaurentPoly] = {}
    for sign in (1, -1):
        types = _QUADRANT_TYPES[sign]
        for q in range(4):
            label = QUADRANT_LABELS[q]
            ((e, c),) = label.terms.items()
            unsigned = LaurentPoly.monomial(abs(c), e)
            scaled = unsigned.substitute(1, 8).shifted(-4)  # x -> x^2, then /x
            final = ONE if types[q] == "mixed" else scaled.substitute(1, -4)
            key = (sign, types[q])
            if key in table:
                if table[key] != final:
                    raise AssertionError("inconsistent weight derivation")
            else:
                table[key] = final
    return table


class StateMarking:
    """Bijection from non-starred faces to marked crossing quadrants."""

    __slots__ = ("diagram", "starred", "markers", "_by_crossing")

    def __init__(self, diagram: LinkDiagram, starred: tuple[int, int],
                 markers: dict[int, tuple[int, int]]):
        self.diagram = diagram
        self.starred = tuple(starred)
        self.markers = tuple(sorted(markers.items()))
        self._by_crossing = {vq[0]: (face, vq[1]) for face, vq in markers.items()}

    def marker_of(self, face: int) -> tuple[int, int]:
        return dict(self.markers)[face]

    def face_at(self, crossing: int) -> tuple[int, int]:
        """(face, quadrant) of the marker sitting at the crossing."""
        return self._by_crossing[crossing]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateMarking):
            return NotImplemented
        return self.starred == other.starred and self.markers == other.markers

    def __hash__(self) -> int:
        return hash((self.starred, self.markers))

    def __repr__(self) -> str:
        inner = ", ".join(f"f{f}->({v},q{q})" for f, (v, q) in self.markers)
        return f"StateMarking({inner})"


class StateSumContext:
    """Fixed crossing/face orderings and the global sign they induce."""

    def __init__(self, diagram: LinkDiagram, starred: tuple[int, int]):
        self.diagram = diagram
        self.starred = tuple(starred)
        self.face_order = tuple(
            f for f in range(diagram.face_count) if f not in starred
        )
        self.crossing_order = tuple(range(diagram.n))
        self.epsilon = 0  # set once the first state is seen

    def fix_epsilon(self, state: StateMarking) -> None:
        if self.epsilon == 0:
            b = black_hole_count(state)
            self.epsilon = (-1) ** b * state_permutation_sign(state, self)


def _face_candidates(d: LinkDiagram, starred) -> dict[int, list[tuple[int, int]]]:
    cands: dict[int, list[tuple[int, int]]] = {}
    for f in range(len(d.faces)):
        if f in starred:
            continue
        cands[f] = sorted((dart // 4, dart % 4) for dart in d.faces[f])
    # faces of free loops (no darts) can never take a marker
    for f in range(len(d.faces), d.face_count):
        if f not in starred:
            cands[f] = []
    return cands


def initial_state(d: LinkDiagram, starred: tuple[int, int] | None = None) -> StateMarking:
    """One valid state, via maximum bipartite matching of faces to crossings."""
    d.require_connected()
    if starred is None:
        starred = default_stars(d)
    if d.n == 0:
        return StateMarking(d, starred, {})
    cands = _face_candidates(d, starred)
    order = sorted(cands, key=lambda f: len(cands[f]))
    match_crossing: dict[int, int] = {}  # crossing -> face

    def augment(face: int, banned: set[int]) -> bool:
        for v, _ in cands[face]:
            if v in banned:
                continue
            banned.add(v)
            if v not in match_crossing or augment(match_crossing[v], banned):
                match_crossing[v] = face
                return True
        return False

    for f in order:
        if not augment(f, set()):
            raise NoState(f"no marker assignment exists with stars {starred}")
    markers: dict[int, tuple[int, int]] = {}
    for v, f in match_crossing.items():
        q = next(q for vv, q in cands[f] if vv == v)
        markers[f] = (v, q)
    return StateMarking(d, starred, markers)


def _rotate(q: int, direction: str) -> int:
    # quadrants are indexed counterclockwise, so clockwise rotation decrements
    if direction == "cw":
        return (q - 1) % 4
    if direction == "ccw":
        return (q + 1) % 4
    raise ValueError(f"direction must be 'cw' or 'ccw', got {direction!r}")


def clock_move(s: StateMarking, crossings: tuple[int, int], direction: str) -> StateMarking:
    """Exchange the markers at two crossings by a quarter turn each."""
    i, j = crossings
    d = s.diagram
    if i == j or i not in s._by_crossing or j not in s._by_crossing:
        raise MoveNotAvailable(f"crossings {crossings} carry no exchangeable markers")
    face_a, qi = s.face_at(i)
    face_b, qj = s.face_at(j)
    qi2, qj2 = _rotate(qi, direction), _rotate(qj, direction)
    if d.quadrant_face(i, qi2) != face_b or d.quadrant_face(j, qj2) != face_a:
        raise MoveNotAvailable(
            f"markers at {i},{j} do not rotate {direction} into each other's faces"
        )
    markers = dict(s.markers)
    markers[face_b] = (i, qi2)
    markers[face_a] = (j, qj2)
    return StateMarking(d, s.starred, markers)


def available_moves(s: StateMarking) -> list[tuple[tuple[int, int], str]]:
    d = s.diagram
    marker = dict(s.markers)
    out = []
    for face_a, (i, qi) in s.markers:
        for direction in ("cw", "ccw"):
            qi2 = _rotate(qi, direction)
            face_b = d.quadrant_face(i, qi2)
            if face_b == face_a or face_b in s.starred:
                continue
            entry = marker.get(face_b)
            if entry is None:
                continue
            j, qj = entry
            if j == i:
                continue
            if d.quadrant_face(j, _rotate(qj, direction)) == face_a and i < j:
                out.append(((i, j), direction))
    return out


def enumerate_states(d: LinkDiagram, starred: tuple[int, int] | None = None) -> set[StateMarking]:
    """All states, by breadth-first clock-move search from an initial state."""
    if starred is None:
        starred = default_stars(d)
    start = initial_state(d, starred)
    seen = {start}
    frontier = [start]
    while frontier:
        s = frontier.pop()
        for crossings, direction in available_moves(s):
            t = clock_move(s, crossings, direction)
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return seen


def enumerate_states_bruteforce(d: LinkDiagram,
                                starred: tuple[int, int] | None = None) -> set[StateMarking]:
    """All bijective marker assignments by backtracking; oracle path."""
    d.require_connected()
    if starred is None:
        starred = default_stars(d)
    if d.n == 0:
        return {StateMarking(d, starred, {})}
    cands = _face_candidates(d, starred)
    faces = sorted(cands, key=lambda f: len(cands[f]))
    out: set[StateMarking] = set()
    used: set[int] = set()
    markers: dict[int, tuple[int, int]] = {}

    def rec(idx: int) -> None:
        if idx == len(faces):
            out.add(StateMarking(d, starred, dict(markers)))
            return
        f = faces[idx]
        for v, q in cands[f]:
            if v in used:
                continue
            used.add(v)
            markers[f] = (v, q)
            rec(idx + 1)
            used.discard(v)
            del markers[f]

    rec(0)
    return out


def black_hole_count(s: StateMarking) -> int:
    d = s.diagram
    return sum(
        1 for _, (v, q) in s.markers if d.quadrant_type(v, q) == "sink"
    )


def state_permutation_sign(s: StateMarking, ctx: StateSumContext) -> int:
    """Sign of the face -> crossing bijection under the context orderings."""
    face_index = {f: i for i, f in enumerate(ctx.face_order)}
    crossing_index = {v: i for i, v in enumerate(ctx.crossing_order)}
    perm = [0] * len(ctx.face_order)
    for f, (v, _) in s.markers:
        perm[face_index[f]] = crossing_index[v]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def state_epsilon(d: LinkDiagram, starred: tuple[int, int] | None = None) -> int:
    """Global sign relating (-1)**b(S) to the permutation sign."""
    if starred is None:
        starred = default_stars(d)
    ctx = StateSumContext(d, starred)
    ctx.fix_epsilon(initial_state(d, starred))
    return ctx.epsilon


def alexander_state_sum(d: LinkDiagram,
                        starred: tuple[int, int] | None = None) -> LaurentPoly:
    """Sum of (-1)**b(S) times the product of marked Alexander labels,
    canonicalized like the determinant form."""
    try:
        states = enumerate_states(d, starred)
    except NoState:
        return LaurentPoly.zero()
    total = LaurentPoly.zero()
    for s in states:
        term = LaurentPoly.from_int((-1) ** black_hole_count(s))
        for _, (v, q) in s.markers:
            term = term * QUADRANT_LABELS[q]
        total = total + term
    return total.dot_normal()


def conway_state_sum(d: LinkDiagram,
                     starred: tuple[int, int] | None = None) -> LaurentPoly:
    """Conway-normalized state sum: exact, no dot-equality slack."""
    d.require_connected()
    try:
        states = enumerate_states(d, starred)
    except NoState:
        return LaurentPoly.zero()
    total = LaurentPoly.zero()
    for s in states:
        term = LaurentPoly.from_int((-1) ** black_hole_count(s))
        for _, (v, q) in s.markers:
            term = term * CONWAY_WEIGHTS[(d.sign[v], d.quadrant_type(v, q))]
        total = total + term
    return total


def make_skein_triple(d: LinkDiagram, v: int) -> tuple[LinkDiagram, LinkDiagram, LinkDiagram]:
    """(K+, K-, K0) differing only at crossing v of d."""
    from .moves import smooth_crossing, switch_crossing

    if not 0 <= v < d.n:
        raise SiteMismatch(f"no crossing {v}")
    other = switch_crossing(d, v)
    zero = smooth_crossing(d, v, "oriented")
    if d.sign[v] > 0:
        return d, other, zero
    return other, d, zero


def skein_check(kplus: LinkDiagram, kminus: LinkDiagram, kzero: LinkDiagram,
                site: int) -> bool:
    """Verify Omega(K+) - Omega(K-) = (x - 1/x) * Omega(K0).

    `site` is a crossing index of K+; the three diagrams must be the honest
    skein triple there (checked up to renumbering).
    """
    from .moves import same_diagram, smooth_crossing, switch_crossing

    if not 0 <= site < kplus.n:
        raise SiteMismatch(f"no crossing {site} in K+")
    if kplus.sign[site] <= 0:
        raise SiteMismatch("site crossing of K+ is not positive")
    if not same_diagram(switch_crossing(kplus, site), kminus):
        raise SiteMismatch("K- is not K+ with the site crossing switched")
    if not same_diagram(smooth_crossing(kplus, site, "oriented"), kzero):
        raise SiteMismatch("K0 is not the oriented smoothing of K+")
    z = X - X_INV
    return (conway_state_sum(kplus) - conway_state_sum(kminus)
            == z * conway_state_sum(kzero))
