"""Diagram surgery: Reidemeister moves, crossing switches, smoothings.

Moves exist to generate Reidemeister-equivalent test corpora for the
invariance properties, so every move validates its site and re-emits a
fully checked diagram. Site formats:

    R1+ / R1-   edge id carrying the new curl (None for the bare unknot)
    R2          ((edge, side), (edge, side), first_over) - two incidences
                of one face; the first strand pokes across the second
    R3          (face index, slider edge) - triangle face, slider passes
                over both of its corners on that face (or under both)
    R1-undo     crossing index of the curl
    R2-undo     face index of the poke bigon

The geometric frame for R2/R3 is fixed by the face walk: walking a face
keeps it on the left, so placing the first edge's walk dart pointing west
puts the face below it; all compass talk in the code refers to that frame.
"""

from __future__ import annotations

from itertools import permutations, product

from ._assembly import FLOW_AB, FLOW_BA, FLOW_NONE, Assembly
from .diagram import LinkDiagram, parse_pd
from .errors import InvalidSite

S, E, N, W = 0, 1, 2, 3  # slot compass: CCW order south, east, north, west


def switch_crossing(d: LinkDiagram, v: int) -> LinkDiagram:
    """Exchange over- and under-strand at crossing v."""
    if not 0 <= v < d.n:
        raise InvalidSite(f"no crossing {v}")
    asm, _ = Assembly.from_diagram(d)
    asm.under_axis[v] = 1
    return asm.emit()


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Switch every crossing."""
    asm, _ = Assembly.from_diagram(d)
    for v in asm.under_axis:
        asm.under_axis[v] = 1
    return asm.emit()


def smooth_crossing(d: LinkDiagram, v: int, kind: str) -> LinkDiagram:
    """Replace crossing v by a smoothing.

    kind 'A' joins positions (0,1) and (2,3); 'B' joins (0,3) and (1,2);
    'oriented' picks the orientation-respecting one (A at positive
    crossings, B at negative). Unoriented kinds re-orient freely.
    """
    if not 0 <= v < d.n:
        raise InvalidSite(f"no crossing {v}")
    if kind == "oriented":
        kind = "A" if d.sign[v] > 0 else "B"
    elif kind in ("A", "B"):
        pass
    else:
        raise ValueError(f"unknown smoothing kind {kind!r}")
    asm, _ = Assembly.from_diagram(d)
    if kind != ("A" if d.sign[v] > 0 else "B"):
        asm.erase_all_flow()
    if kind == "A":
        asm.fuse(("n", v, 0), ("n", v, 1))
        asm.fuse(("n", v, 2), ("n", v, 3))
    else:
        asm.fuse(("n", v, 0), ("n", v, 3))
        asm.fuse(("n", v, 1), ("n", v, 2))
    del asm.under_axis[v]
    return asm.emit()


# -- Reidemeister moves ------------------------------------------------------------


def _curl(d: LinkDiagram, edge: int | None, positive: bool) -> LinkDiagram:
    if d.n == 0:
        base = "X[1,1,2,2]" if positive else "X[1,2,2,1]"
        extra = " ".join(["unknot"] * (d.free_loops - 1))
        return parse_pd(base + (" " + extra if extra else ""))
    if edge is None or not 1 <= edge <= d.n_edges:
        raise InvalidSite(f"no edge {edge}")
    asm, wmap = Assembly.from_diagram(d)
    z = asm.add_node(0)
    if positive:
        # under first, loop wire from under-out (N) around to over-in (W)
        asm.cut(wmap[edge], ("n", z, S), ("n", z, E))
        asm.add_wire(("n", z, N), ("n", z, W), FLOW_AB)
    else:
        asm.cut(wmap[edge], ("n", z, S), ("n", z, W))
        asm.add_wire(("n", z, N), ("n", z, E), FLOW_AB)
    return asm.emit()


def _curl_sites(d: LinkDiagram):
    return list(range(1, d.n_edges + 1)) if d.n else [None]


def _uncurl(d: LinkDiagram, v: int) -> LinkDiagram:
    if not 0 <= v < d.n:
        raise InvalidSite(f"no crossing {v}")
    x = d.crossings[v]
    loop_pos = None
    for p in range(4):
        if x[p] == x[(p + 1) % 4]:
            loop_pos = p
            break
    if loop_pos is None:
        raise InvalidSite(f"crossing {v} is not a curl")
    asm, _ = Assembly.from_diagram(d)
    loop_wire = asm.port_wire[("n", v, loop_pos)]
    asm.remove_wire(loop_wire)
    asm.fuse(("n", v, (loop_pos + 2) % 4), ("n", v, (loop_pos + 3) % 4))
    del asm.under_axis[v]
    return asm.emit()


def _uncurl_sites(d: LinkDiagram):
    return [v for v in range(d.n)
            if any(d.crossings[v][p] == d.crossings[v][(p + 1) % 4] for p in range(4))]


def _poke(d: LinkDiagram, e_spec, f_spec, first_over: bool) -> LinkDiagram:
    """Push strand e across strand f through a shared face.

    Frame: the face walk dart on e points east along the bottom of the face,
    the one on f points west along the top; the finger rises from e,
    crossing f at z1 (west, upward) and z2 (east, downward).
    """
    e, side_e = e_spec
    f, side_f = f_spec
    if e == f:
        raise InvalidSite("poke needs two distinct edges")
    try:
        de = d.dart_of_edge_side(e, side_e)
        df = d.dart_of_edge_side(f, side_f)
    except (KeyError, ValueError) as exc:
        raise InvalidSite(str(exc)) from None
    if d.face_of[de] != d.face_of[df]:
        raise InvalidSite("edges do not border a common face")
    s_e = 1 if side_e == "L" else -1  # walk dart along strand direction?
    s_f = 1 if side_f == "L" else -1
    asm, wmap = Assembly.from_diagram(d)
    axis = 1 if first_over else 0  # under-strand axis at the new crossings
    z1 = asm.add_node(axis)
    z2 = asm.add_node(axis)
    if s_e > 0:  # e-strand runs east: climbs at z1, descends at z2
        asm.cut(wmap[e], ("n", z1, S), ("n", z2, S))
        asm.add_wire(("n", z1, N), ("n", z2, N), FLOW_AB)
    else:
        asm.cut(wmap[e], ("n", z2, S), ("n", z1, S))
        asm.add_wire(("n", z2, N), ("n", z1, N), FLOW_AB)
    if s_f > 0:  # f-strand runs west: meets z2 first
        asm.cut(wmap[f], ("n", z2, E), ("n", z1, W))
        asm.add_wire(("n", z2, W), ("n", z1, E), FLOW_AB)
    else:
        asm.cut(wmap[f], ("n", z1, W), ("n", z2, E))
        asm.add_wire(("n", z1, E), ("n", z2, W), FLOW_AB)
    return asm.emit()


def _poke_sites(d: LinkDiagram):
    sites = []
    for fi in range(len(d.faces)):
        incid = d.face_edge_sides(fi)
        for i in range(len(incid)):
            for j in range(len(incid)):
                if i != j and incid[i][0] != incid[j][0]:
                    for over in (True, False):
                        sites.append((incid[i], incid[j], over))
    return sites


def _unpoke(d: LinkDiagram, face: int) -> LinkDiagram:
    if not 0 <= face < len(d.faces):
        raise InvalidSite(f"no face {face}")
    walk = d.faces[face]
    if len(walk) != 2:
        raise InvalidSite("face is not a bigon")
    d1, d2 = walk
    z1, z2 = d1 // 4, d2 // 4
    if z1 == z2:
        raise InvalidSite("bigon is a curl, not a poke")
    e1 = d.dart_edge(d1)
    over_at = lambda edge, v: any(
        pos in (1, 3) for vv, pos in d.occurrences[edge] if vv == v
    )
    if over_at(e1, z1) != over_at(e1, z2):
        raise InvalidSite("bigon is a clasp; strands alternate")
    asm, _ = Assembly.from_diagram(d)
    asm.remove_node_straight(z1)
    asm.remove_node_straight(z2)
    return asm.emit()


def _unpoke_sites(d: LinkDiagram):
    sites = []
    for fi in range(len(d.faces)):
        walk = d.faces[fi]
        if len(walk) != 2:
            continue
        d1, d2 = walk
        if d1 // 4 == d2 // 4:
            continue
        e1 = d.dart_edge(d1)
        over1 = any(pos in (1, 3) for v, pos in d.occurrences[e1] if v == d1 // 4)
        over2 = any(pos in (1, 3) for v, pos in d.occurrences[e1] if v == d2 // 4)
        if over1 == over2:
            sites.append(fi)
    return sites


def _slide(d: LinkDiagram, face: int, slider: int) -> LinkDiagram:
    """Slide a doubly-over (or doubly-under) strand across the third crossing
    of a triangular face."""
    if not 0 <= face < len(d.faces):
        raise InvalidSite(f"no face {face}")
    walk = d.faces[face]
    if len(walk) != 3:
        raise InvalidSite("face is not a triangle")
    starts = [i for i, dd in enumerate(walk) if d.dart_edge(dd) == slider]
    if not starts:
        raise InvalidSite(f"edge {slider} is not a side of face {face}")
    d1 = walk[starts[0]]
    d2 = walk[(starts[0] + 1) % 3]
    d3 = walk[(starts[0] + 2) % 3]
    c_b, c_a, c3 = d1 // 4, d2 // 4, d3 // 4
    if len({c_a, c_b, c3}) != 3:
        raise InvalidSite("triangle corners are not distinct crossings")
    g = slider
    side_a_edge, side_b_edge = d.dart_edge(d2), d.dart_edge(d3)
    if len({g, side_a_edge, side_b_edge}) != 3:
        raise InvalidSite("triangle sides are not distinct edges")
    pos_g_cb = d1 % 4
    pos_g_ca = d.alpha[d1] % 4
    over_b = pos_g_cb in (1, 3)
    over_a = pos_g_ca in (1, 3)
    if over_a != over_b:
        raise InvalidSite("slider must pass over both corners or under both")
    slider_over = over_a
    p_edge = d.crossings[c_a][(pos_g_ca + 2) % 4]
    q_edge = d.crossings[c_b][(pos_g_cb + 2) % 4]
    pos_sa_c3 = d.alpha[d2] % 4
    a_far = d.crossings[c3][(pos_sa_c3 + 2) % 4]
    pos_sb_c3 = d3 % 4
    b_far = d.crossings[c3][(pos_sb_c3 + 2) % 4]
    if a_far == b_far:
        raise InvalidSite("strands re-cross immediately behind the corner")
    if p_edge == q_edge or p_edge in (g, side_a_edge, side_b_edge) \
            or q_edge in (g, side_a_edge, side_b_edge):
        raise InvalidSite("slider strand is too short to reroute")
    # far ports of the slider's outer edges must survive the corner removals
    p_far = next(((v, pos) for v, pos in d.occurrences[p_edge] if v != c_a), None)
    q_far = next(((v, pos) for v, pos in d.occurrences[q_edge] if v != c_b), None)
    if p_far is None or q_far is None or p_far[0] in (c_a, c_b) or q_far[0] in (c_a, c_b):
        raise InvalidSite("slider strand is too short to reroute")
    slider_forward = any(
        v == c_a and not d.arm_is_in(v, pos) for v, pos in d.occurrences[g]
    )  # True when the strand runs p -> g -> q (west to east in the frame)

    asm, _ = Assembly.from_diagram(d)
    asm.remove_node_straight(c_a)
    asm.remove_node_straight(c_b)
    axis = 0 if slider_over else 1
    z_b = asm.add_node(axis)
    z_a = asm.add_node(axis)
    p_far_port = ("n",) + p_far
    q_far_port = ("n",) + q_far
    ws = asm.port_wire[p_far_port]
    if ws != asm.port_wire[q_far_port]:
        raise AssertionError("slider wire did not fuse into one piece")
    asm.remove_wire(ws)
    flow = FLOW_AB if slider_forward else FLOW_BA
    asm.add_wire(p_far_port, ("n", z_b, W), flow)
    asm.add_wire(("n", z_b, E), ("n", z_a, W), flow)
    asm.add_wire(("n", z_a, E), q_far_port, flow)
    for far_edge, far_pos, z in ((b_far, (pos_sb_c3 + 2) % 4, z_b),
                                 (a_far, (pos_sa_c3 + 2) % 4, z_a)):
        c3_port = ("n", c3, far_pos)
        wf = asm.port_wire[c3_port]
        pa, _ = asm.wires[wf]
        # the segment facing c3 attaches to the new crossing's north arm
        if pa == c3_port:
            asm.cut(wf, ("n", z, N), ("n", z, S))
        else:
            asm.cut(wf, ("n", z, S), ("n", z, N))
    return asm.emit()


def _slide_sites(d: LinkDiagram):
    sites = []
    for fi in range(len(d.faces)):
        walk = d.faces[fi]
        if len(walk) != 3:
            continue
        for dd in walk:
            try:
                _check_slide_site(d, fi, d.dart_edge(dd))
            except InvalidSite:
                continue
            sites.append((fi, d.dart_edge(dd)))
    return sites


def _check_slide_site(d: LinkDiagram, face: int, slider: int) -> None:
    """Raise InvalidSite unless _slide would accept the site (dry run)."""
    walk = d.faces[face]
    if len(walk) != 3:
        raise InvalidSite("not a triangle")
    starts = [i for i, dd in enumerate(walk) if d.dart_edge(dd) == slider]
    if not starts:
        raise InvalidSite("slider not on face")
    d1 = walk[starts[0]]
    d2 = walk[(starts[0] + 1) % 3]
    d3 = walk[(starts[0] + 2) % 3]
    c_b, c_a, c3 = d1 // 4, d2 // 4, d3 // 4
    if len({c_a, c_b, c3}) != 3:
        raise InvalidSite("corners not distinct")
    g, sa, sb = slider, d.dart_edge(d2), d.dart_edge(d3)
    if len({g, sa, sb}) != 3:
        raise InvalidSite("sides not distinct")
    if (d1 % 4 in (1, 3)) != (d.alpha[d1] % 4 in (1, 3)):
        raise InvalidSite("slider alternates")
    pos_sa_c3 = d.alpha[d2] % 4
    a_far = d.crossings[c3][(pos_sa_c3 + 2) % 4]
    b_far = d.crossings[c3][(d3 % 4 + 2) % 4]
    if a_far == b_far:
        raise InvalidSite("far strands coincide")
    p_edge = d.crossings[c_a][(d.alpha[d1] % 4 + 2) % 4]
    q_edge = d.crossings[c_b][(d1 % 4 + 2) % 4]
    if p_edge == q_edge or p_edge in (g, sa, sb) or q_edge in (g, sa, sb):
        raise InvalidSite("slider too short")
    p_far = next(((v, pos) for v, pos in d.occurrences[p_edge] if v != c_a), None)
    q_far = next(((v, pos) for v, pos in d.occurrences[q_edge] if v != c_b), None)
    if p_far is None or q_far is None or p_far[0] in (c_a, c_b) or q_far[0] in (c_a, c_b):
        raise InvalidSite("slider too short")


MOVES = ("R1+", "R1-", "R2", "R3", "R1-undo", "R2-undo")


def apply_reidemeister(d: LinkDiagram, move: str, site) -> LinkDiagram:
    """Apply one Reidemeister move at the given site."""
    if move == "R1+":
        return _curl(d, site, positive=True)
    if move == "R1-":
        return _curl(d, site, positive=False)
    if move == "R2":
        return _poke(d, *site)
    if move == "R3":
        return _slide(d, *site)
    if move == "R1-undo":
        return _uncurl(d, site)
    if move == "R2-undo":
        return _unpoke(d, site)
    raise ValueError(f"unknown move {move!r}")


def move_sites(d: LinkDiagram, move: str) -> list:
    """All admissible sites for the move on this diagram."""
    if move in ("R1+", "R1-"):
        return _curl_sites(d)
    if move == "R2":
        return _poke_sites(d)
    if move == "R3":
        return _slide_sites(d)
    if move == "R1-undo":
        return _uncurl_sites(d)
    if move == "R2-undo":
        return _unpoke_sites(d)
    raise ValueError(f"unknown move {move!r}")


def random_moves(d: LinkDiagram, rng, count: int, max_crossings: int = 12) -> LinkDiagram:
    """Apply `count` random moves, preferring growth while under the cap."""
    cur = d
    for _ in range(count):
        moves = ["R2", "R1+", "R1-", "R3", "R3"]
        if cur.n + 2 > max_crossings:
            moves = ["R3", "R1-undo", "R2-undo"]
        rng.shuffle(moves)
        for move in moves:
            sites = move_sites(cur, move)
            if move in ("R1+", "R1-") and cur.n + 1 > max_crossings:
                continue
            if sites:
                cur = apply_reidemeister(cur, move, sites[rng.randrange(len(sites))])
                break
    return cur


# -- alternating assignment ----------------------------------------------------------


def make_alternating(d: LinkDiagram) -> LinkDiagram:
    """Reassign crossings so the diagram alternates (same universe)."""
    from .diagram import checkerboard

    if d.n == 0:
        return d
    shading = checkerboard(d)
    asm, _ = Assembly.from_diagram(d)
    for v in range(d.n):
        if not shading.is_shaded(d.quadrant_face(v, 1)):
            asm.under_axis[v] = 1
    out = asm.emit()
    assert out.is_alternating()
    return out


# -- isomorphism up to renumbering ------------------------------------------------------


def canonical_key(d: LinkDiagram):
    """Canonical form under component reordering and cyclic renumbering.

    Two diagrams describe the same labeled map (same over/under data and
    orientations) iff their keys are equal.
    """
    if d.n == 0:
        return (d.free_loops,)
    blocks = list(d.blocks)
    best = None
    for order in permutations(range(len(blocks))):
        lengths = [blocks[i][1] - blocks[i][0] + 1 for i in order]
        news = []
        base = 1
        for length in lengths:
            news.append(base)
            base += length
        for shifts in product(*(range(length) for length in lengths)):
            remap = {}
            for slot, bi in enumerate(order):
                lo, hi = blocks[bi]
                length = hi - lo + 1
                for t in range(length):
                    remap[lo + t] = news[slot] + (t + shifts[slot]) % length
            cand = tuple(sorted(
                tuple(remap[e] for e in x) for x in d.crossings
            ))
            if best is None or cand < best:
                best = cand
    return (d.free_loops, best)


def same_diagram(d1: LinkDiagram, d2: LinkDiagram) -> bool:
    return canonical_key(d1) == canonical_key(d2)
