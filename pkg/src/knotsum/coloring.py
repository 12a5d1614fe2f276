"""Fox colorings of arcs and the matching face-coloring system.

An arc is a maximal run of edges between dives under a crossing: walking a
strand, the arc ends where the strand enters a crossing as the under-strand
and a new arc leaves it. A Fox coloring mod N labels arcs so that at every
crossing a + c = 2b, with b on the over-arc. The face system A + B = C + D
pairs the faces flanking each half of the over-strand: in the compass
frame, quadrants SE + NE = NW + SW. Summing the two faces flanking an arc
translates a face coloring into a Fox coloring.
"""

from __future__ import annotations

from .diagram import LinkDiagram, _DSU
from .laurent import LaurentPoly
from .linalg import solution_basis_mod, solution_count_mod


def arcs(d: LinkDiagram) -> tuple[dict[int, int], int]:
    """Map each edge to its arc id; returns (edge -> arc, arc count).

    Arc count includes one arc per free loop, numbered after the rest.
    """
    if d.n == 0:
        return {}, d.free_loops
    dsu = _DSU(d.n_edges + 1)
    for e in range(1, d.n_edges + 1):
        head_v, head_pos = next(
            (v, p) for v, p in d.occurrences[e] if d.arm_is_in(v, p)
        )
        if head_pos != 0:  # over-passage: the arc continues
            dsu.union(e, d.succ(e))
    reps = sorted({dsu.find(e) for e in range(1, d.n_edges + 1)})
    index = {r: i for i, r in enumerate(reps)}
    arc_of = {e: index[dsu.find(e)] for e in range(1, d.n_edges + 1)}
    return arc_of, len(reps) + d.free_loops


def _fox_rows(d: LinkDiagram) -> tuple[list[list[int]], int]:
    arc_of, n_arcs = arcs(d)
    rows = []
    for v, x in enumerate(d.crossings):
        row = [0] * n_arcs
        row[arc_of[x[0]]] += 1          # under-in arc a
        row[arc_of[x[2]]] += 1          # under-out arc c
        row[arc_of[x[1]]] -= 2          # over-arc b (either over edge)
        rows.append(row)
    return rows, n_arcs


def _region_rows(d: LinkDiagram) -> tuple[list[list[int]], int]:
    n_faces = d.face_count
    rows = []
    for v in range(d.n):
        row = [0] * n_faces
        row[d.quadrant_face(v, 0)] += 1
        row[d.quadrant_face(v, 1)] += 1
        row[d.quadrant_face(v, 2)] -= 1
        row[d.quadrant_face(v, 3)] -= 1
        rows.append(row)
    return rows, n_faces


class FoxColoring:
    """Arc labels mod N satisfying a + c = 2b at every crossing."""

    def __init__(self, d: LinkDiagram, modulus: int, labels: dict[int, int]):
        self.diagram = d
        self.modulus = modulus
        self.labels = {a: v % modulus for a, v in labels.items()}

    def is_valid(self) -> bool:
        d = self.diagram
        arc_of, _ = arcs(d)
        for x in d.crossings:
            a = self.labels[arc_of[x[0]]]
            c = self.labels[arc_of[x[2]]]
            b = self.labels[arc_of[x[1]]]
            if (a + c - 2 * b) % self.modulus:
                return False
        return True

    def is_constant(self) -> bool:
        return len(set(self.labels.values())) <= 1


class RegionColoring:
    """Face labels mod N satisfying the paired-face rule at every crossing."""

    def __init__(self, d: LinkDiagram, modulus: int, labels: dict[int, int]):
        self.diagram = d
        self.modulus = modulus
        self.labels = {f: v % modulus for f, v in labels.items()}

    def is_valid(self) -> bool:
        d = self.diagram
        for v in range(d.n):
            total = (self.labels[d.quadrant_face(v, 0)]
                     + self.labels[d.quadrant_face(v, 1)]
                     - self.labels[d.quadrant_face(v, 2)]
                     - self.labels[d.quadrant_face(v, 3)])
            if total % self.modulus:
                return False
        return True


class ColoringSpace:
    """Solution count and generating set of a coloring system mod N."""

    def __init__(self, diagram, modulus, count, generators, kind):
        self.diagram = diagram
        self.modulus = modulus
        self.count = count
        self.generators = generators
        self.kind = kind

    @property
    def nonconstant_count(self) -> int:
        return self.count - self.modulus

    def sample_colorings(self, limit: int = 1000):
        """Enumerate solutions (as label dicts) from the generator set."""
        n_vars = len(self.generators[0][0]) if self.generators else 0
        seen = set()
        out = []

        def rec(idx, acc):
            if len(out) >= limit:
                return
            if idx == len(self.generators):
                key = tuple(acc)
                if key not in seen:
                    seen.add(key)
                    out.append(dict(enumerate(acc)))
                return
            vec, order = self.generators[idx]
            for k in range(order):
                rec(idx + 1, [(a + k * b) % self.modulus for a, b in zip(acc, vec)])

        rec(0, [0] * n_vars)
        return out


def fox_colorings(d: LinkDiagram, modulus: int) -> ColoringSpace:
    """Count and generators of Fox colorings mod N (constants included)."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    d.require_connected()
    rows, n_arcs = _fox_rows(d)
    count = solution_count_mod(rows, n_arcs, modulus)
    gens = solution_basis_mod(rows, n_arcs, modulus)
    return ColoringSpace(d, modulus, count, gens, "fox")


def region_colorings(d: LinkDiagram, modulus: int) -> ColoringSpace:
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    d.require_connected()
    rows, n_faces = _region_rows(d)
    count = solution_count_mod(rows, n_faces, modulus)
    gens = solution_basis_mod(rows, n_faces, modulus)
    return ColoringSpace(d, modulus, count, gens, "region")


def region_to_fox(rc: RegionColoring) -> FoxColoring:
    """Arc label = sum of the two face labels flanking the arc."""
    d = rc.diagram
    arc_of, n_arcs = arcs(d)
    labels: dict[int, int] = {}
    for e in range(1, d.n_edges + 1):
        a = arc_of[e]
        val = (rc.labels[d.left_face(e)] + rc.labels[d.right_face(e)]) % rc.modulus
        if a in labels and labels[a] != val:
            raise AssertionError("face coloring induces inconsistent arc labels")
        labels[a] = val
    for a in range(n_arcs):
        labels.setdefault(a, 0)  # free-loop arcs flank only via their own faces
    fox = FoxColoring(d, rc.modulus, labels)
    if not fox.is_valid():
        raise AssertionError("translated coloring violates the Fox condition")
    return fox


def sign_removed_alexander_rows_at_minus_one(d: LinkDiagram) -> list[list[int]]:
    """Rows of the sign-stripped region matrix evaluated at x = -1.

    Stripping the signs from the Alexander labels gives quadrant weights
    (1, 1, x, x); at x = -1 each crossing row reads +1, +1, -1, -1 across
    quadrants 0..3, which is exactly the face-coloring system.
    """
    from .alexander import QUADRANT_LABELS

    n_faces = d.face_count
    rows = []
    for v in range(d.n):
        row = [0] * n_faces
        for q in range(4):
            ((e, c),) = QUADRANT_LABELS[q].terms.items()
            value = abs(c) * LaurentPoly.monomial(1, e).evaluate(-1)
            row[d.quadrant_face(v, q)] += int(value)
        rows.append(row)
    return rows
