"""Planar diagram codes as oriented combinatorial maps.

A diagram is a list of crossings, each a 4-tuple of edge identifiers read
counterclockwise starting from the incoming under-strand. Edges are numbered
1..2n consecutively along each oriented component (with wraparound inside a
component's range), so the strand leaving a passage always carries the
successor number of the strand entering it.

Internally each crossing ``v`` owns four darts ``4*v + pos``; a dart points
out of its crossing along the edge occupying that position. ``alpha`` swaps
the two darts of an edge, and faces are the orbits of
``dart -> rotate_cw(alpha(dart))``: the orbit of dart ``(v, i)`` is exactly
the face filling quadrant ``i`` of crossing ``v`` (the sector between
positions ``i`` and ``i+1``).

Compass convention used throughout: the incoming under-strand enters from
the south (position 0) heading north, so positions 0,1,2,3 sit at S,E,N,W.
A crossing is positive exactly when its over-strand enters at position 3
(runs west to east).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    DanglingEdge,
    DisconnectedDiagram,
    NonPlanarError,
    PDSyntaxError,
)

Crossing = tuple[int, int, int, int]


def _trace_orbits(n_darts: int, step) -> list[list[int]]:
    """Orbits of a permutation given as a callable on 0..n_darts-1."""
    seen = [False] * n_darts
    orbits = []
    for d0 in range(n_darts):
        if seen[d0]:
            continue
        orbit = []
        d = d0
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = step(d)
        orbits.append(orbit)
    return orbits


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


class LinkDiagram:
    """Oriented link diagram as an immutable combinatorial map."""

    def __init__(self, crossings, free_loops: int = 0,
                 component_starts=None, outer=None):
        self.crossings: tuple[Crossing, ...] = tuple(
            tuple(int(e) for e in x) for x in crossings
        )
        self.free_loops = int(free_loops)
        if self.free_loops < 0:
            raise PDSyntaxError("negative unknot count")
        for x in self.crossings:
            if len(x) != 4:
                raise PDSyntaxError(f"crossing {x} does not have 4 edges")
        self.n = len(self.crossings)
        self.n_edges = 2 * self.n
        self._validate_edge_ids()
        self._find_components(component_starts)
        self._orient()
        self._build_map()
        self._check_planar()
        self._pick_outer(outer)

    # -- construction ---------------------------------------------------------

    def _validate_edge_ids(self) -> None:
        count: dict[int, int] = {}
        for x in self.crossings:
            for e in x:
                if e < 1:
                    raise PDSyntaxError(f"edge identifiers must be positive, got {e}")
                count[e] = count.get(e, 0) + 1
        for e, k in sorted(count.items()):
            if k != 2:
                raise DanglingEdge(f"edge {e} appears {k} times (expected 2)")
        expected = set(range(1, self.n_edges + 1))
        if set(count) != expected:
            missing = sorted(expected - set(count))
            raise DanglingEdge(f"edge numbering is not 1..{self.n_edges}; missing {missing}")
        occ: dict[int, list[tuple[int, int]]] = {e: [] for e in expected}
        for v, x in enumerate(self.crossings):
            for pos, e in enumerate(x):
                occ[e].append((v, pos))
        self.occurrences = occ

    def _find_components(self, component_starts) -> None:
        if self.n == 0:
            self.blocks: tuple[tuple[int, int], ...] = ()
            return
        dsu = _DSU(self.n_edges + 1)
        for a, b, c, d in self.crossings:
            dsu.union(a, c)
            dsu.union(b, d)
        groups: dict[int, list[int]] = {}
        for e in range(1, self.n_edges + 1):
            groups.setdefault(dsu.find(e), []).append(e)
        blocks = []
        for edges in groups.values():
            lo, hi = min(edges), max(edges)
            if hi - lo + 1 != len(edges):
                raise PDSyntaxError(
                    f"component edges {sorted(edges)} are not consecutively numbered"
                )
            blocks.append((lo, hi))
        blocks.sort()
        for (_, hi_prev), (lo, _) in zip(blocks, blocks[1:]):
            if lo != hi_prev + 1:
                raise PDSyntaxError("component ranges overlap")
        self.blocks = tuple(blocks)
        if component_starts is not None:
            declared = sorted(int(s) for s in component_starts)
            if declared != [lo for lo, _ in blocks]:
                raise PDSyntaxError(
                    f"components={declared} does not match inferred starts "
                    f"{[lo for lo, _ in blocks]}"
                )

    def succ(self, e: int) -> int:
        """Next edge number along the oriented strand."""
        for lo, hi in self.blocks:
            if lo <= e <= hi:
                return lo if e == hi else e + 1
        raise ValueError(f"edge {e} out of range")

    def _orient(self) -> None:
        """Fix the over-strand direction at every crossing.

        ``over_in[v]`` is the position (1 or 3) where the over-strand enters.
        Numbering forces succ(in) == out; the remaining two-edge-component
        ambiguity is settled by in/out role propagation and, failing that, a
        documented default of position 3 (positive crossing).
        """
        n = self.n
        over_in: list[int | None] = [None] * n
        # role[e][k] for occurrence k of edge e: True = strand enters there
        role: dict[tuple[int, int], bool] = {}

        def set_role(e: int, occ_idx: int, entering: bool) -> None:
            key = (e, occ_idx)
            if key in role:
                if role[key] != entering:
                    raise PDSyntaxError(f"inconsistent orientation at edge {e}")
                return
            role[key] = entering
            other = 1 - occ_idx
            if (e, other) not in role:
                role[(e, other)] = not entering
                v, pos = self.occurrences[e][other]
                _propagate_crossing(v)

        def _occ_index(e: int, v: int, pos: int) -> int:
            occs = self.occurrences[e]
            idx = occs.index((v, pos))
            return idx

        pending: list[int] = []

        def _propagate_crossing(v: int) -> None:
            pending.append(v)

        for v, (a, b, c, d) in enumerate(self.crossings):
            if self.succ(a) != c:
                raise PDSyntaxError(
                    f"crossing {v}: under-strand {a}->{c} breaks consecutive numbering"
                )
            set_role(a, _occ_index(a, v, 0), True)
            set_role(c, _occ_index(c, v, 2), False)

        def try_resolve(v: int) -> bool:
            if over_in[v] is not None:
                return False
            a, b, c, d = self.crossings[v]
            d_to_b = self.succ(d) == b
            b_to_d = self.succ(b) == d
            choice: int | None = None
            if d_to_b and not b_to_d:
                choice = 3
            elif b_to_d and not d_to_b:
                choice = 1
            elif not d_to_b and not b_to_d:
                raise PDSyntaxError(
                    f"crossing {v}: over-strand {{{b},{d}}} breaks consecutive numbering"
                )
            else:
                kb = (b, _occ_index(b, v, 1))
                kd = (d, _occ_index(d, v, 3))
                if kd in role:
                    choice = 3 if role[kd] else 1
                elif kb in role:
                    choice = 1 if role[kb] else 3
            if choice is None:
                return False
            over_in[v] = choice
            if choice == 3:
                set_role(d, _occ_index(d, v, 3), True)
                set_role(b, _occ_index(b, v, 1), False)
            else:
                set_role(b, _occ_index(b, v, 1), True)
                set_role(d, _occ_index(d, v, 3), False)
            return True

        progress = True
        while progress:
            progress = False
            while pending:
                try_resolve(pending.pop())
            for v in range(n):
                if try_resolve(v):
                    progress = True
        for v in range(n):
            if over_in[v] is None:
                # two-edge component crossing only as the over-strand: the
                # numbering cannot orient it, so by convention the smaller
                # edge label enters (writers relabel to express the reverse)
                a, b, c, d = self.crossings[v]
                over_in[v] = 1 if b < d else 3
                e_in = b if b < d else d
                e_out = d if b < d else b
                set_role(e_in, _occ_index(e_in, v, over_in[v]), True)
                set_role(e_out, _occ_index(e_out, v, 4 - over_in[v]), False)
                while pending:
                    try_resolve(pending.pop())
        self.over_in: tuple[int, ...] = tuple(over_in)  # type: ignore[arg-type]
        self.sign: tuple[int, ...] = tuple(1 if p == 3 else -1 for p in over_in)
        # verify every over passage respects numbering
        for v, (a, b, c, d) in enumerate(self.crossings):
            e_in, e_out = (d, b) if over_in[v] == 3 else (b, d)
            if self.succ(e_in) != e_out:
                raise PDSyntaxError(
                    f"crossing {v}: over-strand {e_in}->{e_out} breaks consecutive numbering"
                )

    def _build_map(self) -> None:
        n_darts = 4 * self.n
        alpha = [0] * n_darts
        for e, occs in self.occurrences.items():
            (v1, p1), (v2, p2) = occs
            d1, d2 = 4 * v1 + p1, 4 * v2 + p2
            alpha[d1], alpha[d2] = d2, d1
        self.alpha = alpha
        orbits = _trace_orbits(n_darts, lambda d: 4 * (alpha[d] // 4) + (alpha[d] % 4 - 1) % 4)
        orbits.sort(key=min)
        self.faces: tuple[tuple[int, ...], ...] = tuple(tuple(o) for o in orbits)
        face_of = [0] * n_darts
        for i, orbit in enumerate(orbits):
            for d in orbit:
                face_of[d] = i
        self.face_of = face_of

    def _check_planar(self) -> None:
        if self.n == 0:
            self.n_crossing_components = 0
            return
        dsu = _DSU(self.n)
        for occs in self.occurrences.values():
            (v1, _), (v2, _) = occs
            dsu.union(v1, v2)
        comps = len({dsu.find(v) for v in range(self.n)})
        self.n_crossing_components = comps
        expected = 2 * comps + self.n  # 2C - V + E with E = 2V
        if len(self.faces) != expected:
            raise NonPlanarError(
                f"face count {len(self.faces)} != {expected}; "
                "rotation system is not planar"
            )

    def _pick_outer(self, outer) -> None:
        if self.n == 0:
            self.outer_face = None
            return
        if outer is not None:
            e, side = outer
            self.outer_face = self.face_of[self.dart_of_edge_side(e, side)]
        else:
            best = max(range(len(self.faces)),
                       key=lambda i: (len(self.faces[i]), -i))
            self.outer_face = best

    # -- basic queries -----------------------------------------------------------

    @property
    def writhe(self) -> int:
        return sum(self.sign)

    @property
    def n_universe_components(self) -> int:
        return self.n_crossing_components + self.free_loops

    @property
    def is_connected(self) -> bool:
        return self.n_universe_components == 1

    @property
    def link_components(self) -> int:
        return len(self.blocks) + self.free_loops

    @property
    def face_count(self) -> int:
        """Total regions in the plane, free-loop interiors included."""
        base = len(self.faces) if self.n else 1
        # disjoint pieces share one unbounded region
        extra_outer = max(self.n_crossing_components - 1, 0) if self.n else 0
        return base + self.free_loops - extra_outer

    def require_connected(self) -> None:
        if not self.is_connected:
            raise DisconnectedDiagram(
                f"universe has {self.n_universe_components} components"
            )

    def dart(self, v: int, pos: int) -> int:
        return 4 * v + pos

    def dart_edge(self, d: int) -> int:
        return self.crossings[d // 4][d % 4]

    def arm_is_in(self, v: int, pos: int) -> bool:
        """True when the strand at this position points into the crossing."""
        if pos == 0:
            return True
        if pos == 2:
            return False
        return pos == self.over_in[v]

    def edge_tail_dart(self, e: int) -> int:
        """Dart at the occurrence where the strand leaves (edge start)."""
        for v, pos in self.occurrences[e]:
            if not self.arm_is_in(v, pos):
                return 4 * v + pos
        raise ValueError(f"edge {e} has no outgoing occurrence")

    def edge_head_dart(self, e: int) -> int:
        for v, pos in self.occurrences[e]:
            if self.arm_is_in(v, pos):
                return 4 * v + pos
        raise ValueError(f"edge {e} has no incoming occurrence")

    def dart_of_edge_side(self, e: int, side: str) -> int:
        """Dart whose face orbit lies on the given side of oriented edge e."""
        if side == "L":
            return self.edge_tail_dart(e)
        if side == "R":
            return self.edge_head_dart(e)
        raise ValueError(f"side must be 'L' or 'R', got {side!r}")

    def left_face(self, e: int) -> int:
        return self.face_of[self.edge_tail_dart(e)]

    def right_face(self, e: int) -> int:
        return self.face_of[self.edge_head_dart(e)]

    def quadrant_face(self, v: int, q: int) -> int:
        """Face filling the sector between positions q and q+1."""
        return self.face_of[4 * v + q]

    def quadrant_type(self, v: int, q: int) -> str:
        """'sink' (both strands inward), 'source', or 'mixed'."""
        first = self.arm_is_in(v, q)
        second = self.arm_is_in(v, (q + 1) % 4)
        if first and second:
            return "sink"
        if not first and not second:
            return "source"
        return "mixed"

    def face_quadrants(self, f: int) -> list[tuple[int, int]]:
        return [(d // 4, d % 4) for d in self.faces[f]]

    def face_edge_sides(self, f: int) -> list[tuple[int, str]]:
        """Face boundary as (edge, side) incidences in walk order."""
        out = []
        for d in self.faces[f]:
            e = self.dart_edge(d)
            side = "L" if d == self.edge_tail_dart(e) else "R"
            out.append((e, side))
        return out

    def faces_adjacent(self, f1: int, f2: int) -> bool:
        """Two faces are adjacent when some edge has one on each side."""
        if self.n == 0:
            # single free loop: inside and outside share the curve
            return self.free_loops == 1 and f1 != f2 and {f1, f2} == {0, 1}
        for e in range(1, self.n_edges + 1):
            if {self.left_face(e), self.right_face(e)} == {f1, f2}:
                return True
        return False

    def is_alternating(self) -> bool:
        """Strand passes under/over alternately along every component."""
        if self.n == 0:
            return True
        for e in range(1, self.n_edges + 1):
            head_v, head_pos = next(
                (v, p) for v, p in self.occurrences[e] if self.arm_is_in(v, p)
            )
            tail_v, tail_pos = next(
                (v, p) for v, p in self.occurrences[e] if not self.arm_is_in(v, p)
            )
            if (head_pos == 0) == (tail_pos == 2):
                return False
        return True

    # -- serialization ----------------------------------------------------------------

    def to_text(self) -> str:
        parts = []
        if len(self.blocks) > 1:
            parts.append("components=[" + ",".join(str(lo) for lo, _ in self.blocks) + "]")
        parts.extend(f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings)
        parts.extend(["unknot"] * self.free_loops)
        return " ".join(parts) if parts else "unknot"

    def __repr__(self) -> str:
        return f"LinkDiagram({self.to_text()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (self.crossings == other.crossings
                and self.free_loops == other.free_loops)

    def __hash__(self) -> int:
        return hash((self.crossings, self.free_loops))


# -- parsing --------------------------------------------------------------------------

_TOKEN_X = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]$")
_TOKEN_COMP = re.compile(r"components=\[([\d,\s]*)\]$")
_TOKEN_OUTER = re.compile(r"outer=(\d+)([LR])$")


def _strip_comments(text: str) -> str:
    lines = []
    for line in text.splitlines():
        hash_at = line.find("#")
        lines.append(line if hash_at < 0 else line[:hash_at])
    return " ".join(lines)


def parse_pd(text: str) -> LinkDiagram:
    """Parse diagram text: X[a,b,c,d] tokens, `unknot`, components=[...], outer=<e><L|R>."""
    crossings: list[Crossing] = []
    free_loops = 0
    component_starts = None
    outer = None
    for token in _strip_comments(text).split():
        m = _TOKEN_X.match(token)
        if m:
            crossings.append(tuple(int(g) for g in m.groups()))  # type: ignore[arg-type]
            continue
        if token == "unknot":
            free_loops += 1
            continue
        m = _TOKEN_COMP.match(token)
        if m:
            body = m.group(1).strip()
            component_starts = [int(s) for s in body.split(",")] if body else []
            continue
        m = _TOKEN_OUTER.match(token)
        if m:
            outer = (int(m.group(1)), m.group(2))
            continue
        raise PDSyntaxError(f"unrecognized token {token!r}")
    if not crossings and free_loops == 0:
        raise PDSyntaxError("empty diagram: declare at least `unknot`")
    return LinkDiagram(crossings, free_loops,
                       component_starts=component_starts, outer=outer)


def faces(d: LinkDiagram) -> list[list[tuple[int, str]]]:
    """All faces as cyclic (edge, side) walks. Free-loop faces are empty walks."""
    walks = [d.face_edge_sides(f) for f in range(len(d.faces))]
    walks.extend([[]] * (d.face_count - len(walks)))
    return walks


def component_count(d: LinkDiagram) -> int:
    """Closed walks crossing straight through every vertex (link components)."""
    return d.link_components


def writhe(d: LinkDiagram) -> int:
    return d.writhe


# -- checkerboard structures -------------------------------------------------------------


class Shading:
    """Proper two-coloring of faces; the unbounded face is unshaded."""

    def __init__(self, d: LinkDiagram, shaded: frozenset[int]):
        self.diagram = d
        self.shaded = shaded

    def is_shaded(self, face: int) -> bool:
        return face in self.shaded

    @property
    def n_shaded(self) -> int:
        return len(self.shaded)

    @property
    def n_unshaded(self) -> int:
        return self.diagram.face_count - len(self.shaded)


def checkerboard(d: LinkDiagram) -> Shading:
    """Two-color the faces so edge-adjacent faces differ; outer face unshaded."""
    d.require_connected()
    if d.n == 0:
        # lone loop: inside face (index 0) shaded, outside (index 1) unshaded
        return Shading(d, frozenset([0]))
    adj: dict[int, set[int]] = {f: set() for f in range(len(d.faces))}
    for e in range(1, d.n_edges + 1):
        lf, rf = d.left_face(e), d.right_face(e)
        adj[lf].add(rf)
        adj[rf].add(lf)
    color = {d.outer_face: 0}
    queue = [d.outer_face]
    while queue:
        f = queue.pop()
        for g in adj[f]:
            if g not in color:
                color[g] = 1 - color[f]
                queue.append(g)
            elif color[g] == color[f] and g != f:
                raise NonPlanarError("face two-coloring failed; shading impossible")
    shaded = frozenset(f for f, c in color.items() if c == 1)
    return Shading(d, shaded)


class CheckerboardGraph:
    """One node per shaded face, one edge per crossing between shaded faces."""

    def __init__(self, nodes: tuple[int, ...], edges: tuple[tuple[int, int], ...]):
        self.nodes = nodes
        self.edges = edges

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def checkerboard_graph(d: LinkDiagram, shading: Shading | None = None) -> CheckerboardGraph:
    if shading is None:
        shading = checkerboard(d)
    if d.n == 0:
        return CheckerboardGraph((0,), ())
    nodes = tuple(sorted({f for f in range(len(d.faces)) if shading.is_shaded(f)}))
    index = {f: i for i, f in enumerate(nodes)}
    edges = []
    for v in range(d.n):
        q02 = (d.quadrant_face(v, 0), d.quadrant_face(v, 2))
        q13 = (d.quadrant_face(v, 1), d.quadrant_face(v, 3))
        if shading.is_shaded(q02[0]):
            pair = q02
        else:
            pair = q13
        if not (shading.is_shaded(pair[0]) and shading.is_shaded(pair[1])):
            raise NonPlanarError("quadrant shading is not alternating")
        edges.append((index[pair[0]], index[pair[1]]))
    return CheckerboardGraph(tuple(range(len(nodes))), tuple(edges))


def spanning_tree_count(g: CheckerboardGraph) -> int:
    """Exact number of spanning trees via the matrix-tree determinant."""
    n = g.n_nodes
    if n == 0:
        return 0
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for i, j in g.edges:
        if i == j:
            continue  # self-loops never enter a tree
        lap[i][i] += 1
        lap[j][j] += 1
        lap[i][j] -= 1
        lap[j][i] -= 1
    minor = [row[1:] for row in lap[1:]]
    return _int_det(minor)


def spanning_tree_count_bruteforce(g: CheckerboardGraph) -> int:
    """Enumerate all edge subsets; cross-check oracle for small graphs."""
    from itertools import combinations

    n = g.n_nodes
    if n == 0:
        return 0
    if n == 1:
        return 1
    usable = [(i, j) for i, j in g.edges if i != j]
    count = 0
    for subset in combinations(range(len(usable)), n - 1):
        dsu = _DSU(n)
        ok = True
        for k in subset:
            i, j = usable[k]
            if dsu.find(i) == dsu.find(j):
                ok = False
                break
            dsu.union(i, j)
        if ok and len({dsu.find(i) for i in range(n)}) == 1:
            count += 1
    return count


def _int_det(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
