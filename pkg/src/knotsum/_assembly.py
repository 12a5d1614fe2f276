"""Wire-level surgery on diagrams.

An Assembly is a bag of 4-valent nodes (future crossings, slots listed
counterclockwise) and wires joining ports. Reidemeister moves, smoothings,
closures and tangle gluings are all small edits here; ``emit`` walks the
strands, orients them, numbers the edges canonically and hands the result
to LinkDiagram for full validation.

Ports are ("n", node, slot) or ("e", name) for tangle endpoints. A wire may
carry a flow mark (which of its two ports the strand leaves last); strands
with no marks get a deterministic arbitrary orientation at emission.
"""

from __future__ import annotations

from .diagram import LinkDiagram

Port = tuple

FLOW_AB = 0   # strand runs from port a to port b
FLOW_BA = 1
FLOW_NONE = -1


class Assembly:
    def __init__(self):
        self.under_axis: dict[int, int] = {}
        self.wires: dict[int, tuple[Port, Port]] = {}
        self.flow: dict[int, int] = {}
        self.key: dict[int, tuple] = {}
        self.port_wire: dict[Port, int] = {}
        self.free_loops = 0
        self._next_node = 0
        self._next_wire = 0

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_diagram(cls, d: LinkDiagram) -> tuple["Assembly", dict[int, int]]:
        """Load a diagram; returns (assembly, edge -> wire id)."""
        asm = cls()
        asm.free_loops = d.free_loops
        for v in range(d.n):
            asm.add_node(0)
        wire_of_edge = {}
        for e in range(1, d.n_edges + 1):
            td, hd = d.edge_tail_dart(e), d.edge_head_dart(e)
            pa = ("n", td // 4, td % 4)
            pb = ("n", hd // 4, hd % 4)
            wire_of_edge[e] = asm.add_wire(pa, pb, FLOW_AB, key=(0, e))
        return asm, wire_of_edge

    def add_node(self, under_axis: int) -> int:
        v = self._next_node
        self._next_node += 1
        self.under_axis[v] = under_axis
        return v

    def add_wire(self, pa: Port, pb: Port, flow: int = FLOW_NONE, key=None) -> int:
        w = self._next_wire
        self._next_wire += 1
        if pa in self.port_wire or pb in self.port_wire:
            raise AssertionError("port already wired")
        if pa == pb:
            raise AssertionError("wire cannot join a port to itself")
        self.wires[w] = (pa, pb)
        self.flow[w] = flow
        self.key[w] = key if key is not None else (9, w)
        self.port_wire[pa] = w
        self.port_wire[pb] = w
        return w

    def remove_wire(self, w: int) -> None:
        pa, pb = self.wires.pop(w)
        del self.port_wire[pa]
        del self.port_wire[pb]
        del self.flow[w]
        del self.key[w]

    # -- surgery -----------------------------------------------------------------

    def cut(self, w: int, port_near_a: Port, port_near_b: Port) -> tuple[int, int]:
        """Split wire a---b into a---port_near_a and port_near_b---b."""
        pa, pb = self.wires[w]
        f, k = self.flow[w], self.key[w]
        self.remove_wire(w)
        w1 = self.add_wire(pa, port_near_a, f, key=k + ("cutL",))
        w2 = self.add_wire(port_near_b, pb, f, key=k + ("cutR",))
        return w1, w2

    def fuse(self, p1: Port, p2: Port) -> None:
        """Join the strand ends at p1 and p2, melting their wires into one.

        Fusing the two ends of a single wire closes it into a free loop.
        """
        w1 = self.port_wire[p1]
        w2 = self.port_wire[p2]
        if w1 == w2:
            self.remove_wire(w1)
            self.free_loops += 1
            return
        a1 = self.other_port(w1, p1)
        a2 = self.other_port(w2, p2)
        # flow into the junction must come from exactly one side when marked
        f1 = self.flow[w1]
        f2 = self.flow[w2]
        into1 = None if f1 == FLOW_NONE else (self.wires[w1].index(p1) == (1 if f1 == FLOW_AB else 0))
        into2 = None if f2 == FLOW_NONE else (self.wires[w2].index(p2) == (1 if f2 == FLOW_AB else 0))
        if into1 is not None and into2 is not None and into1 == into2:
            raise AssertionError("orientation conflict while fusing")
        if into1 is None and into2 is None:
            flow = FLOW_NONE
        else:
            from_a1 = into1 if into1 is not None else (not into2)
            flow = FLOW_AB if from_a1 else FLOW_BA
        k = min(self.key[w1], self.key[w2])
        self.remove_wire(w1)
        self.remove_wire(w2)
        self.add_wire(a1, a2, flow, key=k + ("fuse",))

    def remove_node_straight(self, v: int) -> None:
        """Delete node v and let both strands run straight through."""
        self.fuse(("n", v, 0), ("n", v, 2))
        self.fuse(("n", v, 1), ("n", v, 3))
        del self.under_axis[v]

    def reattach(self, old_port: Port, new_port: Port) -> None:
        """Move a wire end from one port to another (port must be free)."""
        if new_port in self.port_wire:
            raise AssertionError("target port is occupied")
        w = self.port_wire.pop(old_port)
        pa, pb = self.wires[w]
        self.wires[w] = (new_port, pb) if pa == old_port else (pa, new_port)
        self.port_wire[new_port] = w

    def absorb(self, other: "Assembly", end_map: dict[str, str]) -> dict:
        """Copy another assembly in; endpoint names translate via end_map.

        Returns {"node": old->new, "end": name->port} translation tables.
        """
        node_map = {}
        for v, axis in sorted(other.under_axis.items()):
            node_map[v] = self.add_node(axis)

        def tr(port: Port) -> Port:
            if port[0] == "n":
                return ("n", node_map[port[1]], port[2])
            return ("e", end_map[port[1]])

        for w in sorted(other.wires, key=lambda w: other.key[w]):
            pa, pb = other.wires[w]
            self.add_wire(tr(pa), tr(pb), other.flow[w])
        self.free_loops += other.free_loops
        return {"node": node_map,
                "end": {name: ("e", new) for name, new in end_map.items()}}

    def other_port(self, w: int, p: Port) -> Port:
        pa, pb = self.wires[w]
        return pb if p == pa else pa

    def erase_flow_strand(self, w0: int) -> None:
        """Drop orientation marks on the whole strand containing wire w0."""
        for w, _ in self._walk_strand(w0, 0):
            self.flow[w] = FLOW_NONE

    def erase_all_flow(self) -> None:
        for w in self.flow:
            self.flow[w] = FLOW_NONE

    # -- strand traversal -----------------------------------------------------------

    def _step(self, w: int, direction: int) -> tuple[int, int] | None:
        """Follow the strand out of wire w traversed a->b (0) or b->a (1)."""
        pa, pb = self.wires[w]
        arrive = pb if direction == 0 else pa
        if arrive[0] == "e":
            return None
        _, v, s = arrive
        leave = ("n", v, (s + 2) % 4)
        w2 = self.port_wire[leave]
        a2, _ = self.wires[w2]
        return w2, (0 if a2 == leave else 1)

    def _walk_strand(self, w0: int, d0: int):
        """Wires of the closed strand through (w0, d0) in traversal order."""
        out = [(w0, d0)]
        cur = self._step(w0, d0)
        while cur is not None and cur != (w0, d0):
            out.append(cur)
            cur = self._step(*cur)
        if cur is None:
            raise AssertionError("open strand in closed-diagram walk")
        return out

    def _walk_open(self, end_port: Port):
        """Wires from an endpoint to the opposite endpoint."""
        w = self.port_wire[end_port]
        pa, _ = self.wires[w]
        d = 0 if pa == end_port else 1
        out = [(w, d)]
        cur = self._step(w, d)
        while cur is not None:
            out.append(cur)
            cur = self._step(*cur)
        return out

    # -- emission ------------------------------------------------------------------

    def _closed_strands(self) -> list[list[tuple[int, int]]]:
        strands = []
        seen: set[int] = set()
        for w0 in sorted(self.wires, key=lambda w: self.key[w]):
            if w0 in seen:
                continue
            walk = self._walk_strand(w0, 0)
            marked = [(w, d) for w, d in walk if self.flow[w] != FLOW_NONE]
            agree = sum(1 for w, d in marked if self.flow[w] == d)
            if marked and agree == 0:
                walk = [(w, 1 - d) for w, d in reversed(walk)]
            elif agree != len(marked):
                raise AssertionError("strand carries conflicting orientation marks")
            start = min(range(len(walk)), key=lambda i: self.key[walk[i][0]])
            walk = walk[start:] + walk[:start]
            strands.append(walk)
            seen.update(w for w, _ in walk)
        return strands

    def emit(self, outer=None) -> LinkDiagram:
        """Number edges along every strand and build the validated diagram."""
        for v in self.under_axis:
            for s in range(4):
                if ("n", v, s) not in self.port_wire:
                    raise AssertionError(f"node {v} slot {s} is unwired")
        for pa, pb in self.wires.values():
            if pa[0] == "e" or pb[0] == "e":
                raise AssertionError("dangling endpoint in closed diagram")
        strands = self._closed_strands()
        strands.sort(key=lambda walk: min(self.key[w] for w, _ in walk))
        edge_no: dict[int, int] = {}
        arrives_at: dict[Port, int] = {}
        nxt = 1
        for walk in strands:
            for w, d in walk:
                edge_no[w] = nxt
                pa, pb = self.wires[w]
                arrives_at[pb if d == 0 else pa] = nxt
                nxt += 1
        crossings = []
        over_in_slots = []
        for v in sorted(self.under_axis):
            u = self.under_axis[v]
            cand = [s for s in (u, u + 2) if ("n", v, s) in arrives_at]
            if len(cand) != 1:
                raise AssertionError(f"node {v} has no unique incoming under-strand")
            s0 = cand[0]
            over = [s for s in (s0 + 1, s0 + 3) if ("n", v, s % 4) in arrives_at]
            if len(over) != 1:
                raise AssertionError(f"node {v} has no unique incoming over-strand")
            over_in_slots.append((over[0] - s0) % 4)
            crossings.append(tuple(
                edge_no[self.port_wire[("n", v, (s0 + k) % 4)]] for k in range(4)
            ))
        d = LinkDiagram(crossings, self.free_loops, outer=outer)
        # a two-edge component crossing only as the over-strand leaves its
        # orientation unwritten; relabel so the parser default recovers it
        bad_blocks = set()
        for v, intended in enumerate(over_in_slots):
            if d.over_in[v] != intended:
                block = next(b for b in d.blocks
                             if b[0] <= d.crossings[v][1] <= b[1])
                if block[1] - block[0] != 1:
                    raise AssertionError("orientation mismatch on a long component")
                bad_blocks.add(block)
        if bad_blocks:
            swap = {}
            for lo, hi in bad_blocks:
                swap[lo], swap[hi] = hi, lo
            crossings = [tuple(swap.get(e, e) for e in x) for x in crossings]
            d = LinkDiagram(crossings, self.free_loops, outer=outer)
            for v, intended in enumerate(over_in_slots):
                if d.over_in[v] != intended:
                    raise AssertionError("orientation relabeling failed")
        return d

    def emit_tangle_parts(self, endpoint_ports: dict[str, Port]):
        """Number edges of an open assembly.

        Returns (crossings, endpoint edge map, free loop count); crossing
        tuples start at an under-axis slot but carry no orientation.
        """
        for v in self.under_axis:
            for s in range(4):
                if ("n", v, s) not in self.port_wire:
                    raise AssertionError(f"node {v} slot {s} is unwired")
        edge_no: dict[int, int] = {}
        nxt = 1
        seen: set[int] = set()
        for name in ("NW", "NE", "SW", "SE"):
            p = endpoint_ports[name]
            if self.port_wire[p] in seen:
                continue
            for w, _ in self._walk_open(p):
                edge_no[w] = nxt
                seen.add(w)
                nxt += 1
        for w0 in sorted(self.wires, key=lambda w: self.key[w]):
            if w0 in seen:
                continue
            for w, _ in self._walk_strand(w0, 0):
                edge_no[w] = nxt
                seen.add(w)
                nxt += 1
        crossings = []
        for v in sorted(self.under_axis):
            u = self.under_axis[v]
            e_u = (edge_no[self.port_wire[("n", v, u)]],
                   edge_no[self.port_wire[("n", v, u + 2)]])
            s0 = u if e_u[0] <= e_u[1] else u + 2
            crossings.append(tuple(
                edge_no[self.port_wire[("n", v, (s0 + k) % 4)]] for k in range(4)
            ))
        ends = {name: edge_no[self.port_wire[p]] for name, p in endpoint_ports.items()}
        return crossings, ends, self.free_loops
