"""2-tangle calculus: bracket vectors and the Hopf satellite pairing.

A tangle is a diagram fragment with four strand ends NW, NE, SW, SE on the
boundary of a disk. Resolving every crossing leaves two boundary arcs
whose connectivity is either horizontal (NW-NE and SW-SE, the [0] pattern)
or vertical (NW-SW and NE-SE, the [infinity] pattern), plus closed loops.
Collecting A**(a-b) * delta**loops by connectivity type gives the bracket
vector (alpha, beta):  <T> = alpha <[0]> + beta <[inf]>.

Closures, sums and the two-crossing clasp joining two tangle numerators
into the Hopf-link satellite H(T,U) are all wire surgery. The pairing
matrix M with <H(T,U)> = br(T)^t M br(U) is always derived from the basis
tangles, never transcribed, as is the matrix of any surgery pattern.

Tangle text format: the PD crossing tokens (position 0 and 2 are the
under-strand; no orientation implied) plus endpoint declarations
``NW=e NE=e SW=e SE=e``. Pattern files add one ``HOLE[nw,ne,sw,se]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ._assembly import Assembly
from .bracket import bracket, crossing_cap
from .diagram import LinkDiagram, _DSU, _trace_orbits
from .errors import (
    DanglingEdge,
    InvalidPattern,
    NonPlanarError,
    PDSyntaxError,
    SingularOmega,
    TooLarge,
)
from .laurent import LaurentPoly

END_NAMES = ("NW", "NE", "SW", "SE")
DELTA = LaurentPoly({8: -1, -8: -1})


class TangleDiagram:
    """Unoriented tangle: crossings, four endpoint edges, free loops."""

    def __init__(self, crossings, endpoints: dict[str, int], free_loops: int = 0):
        self.crossings = tuple(tuple(int(e) for e in x) for x in crossings)
        self.endpoints = {k: int(endpoints[k]) for k in END_NAMES}
        self.free_loops = int(free_loops)
        self.n = len(self.crossings)
        self.n_edges = 2 * self.n + 2
        self._validate()

    def _validate(self) -> None:
        count: dict[int, int] = {}
        occ: dict[int, list] = {}
        for v, x in enumerate(self.crossings):
            if len(x) != 4:
                raise PDSyntaxError(f"crossing {x} does not have 4 edges")
            for pos, e in enumerate(x):
                count[e] = count.get(e, 0) + 1
                occ.setdefault(e, []).append(("n", v, pos))
        for k, name in enumerate(END_NAMES):
            e = self.endpoints[name]
            count[e] = count.get(e, 0) + 1
            occ.setdefault(e, []).append(("b", k))
        for e, c in sorted(count.items()):
            if c != 2:
                raise DanglingEdge(f"edge {e} appears {c} times (expected 2)")
        if set(count) != set(range(1, self.n_edges + 1)):
            raise DanglingEdge(f"edge numbering is not 1..{self.n_edges}")
        self.occurrences = occ
        self._check_planar()

    def _check_planar(self) -> None:
        """Euler check on the map augmented with one boundary vertex."""
        n = self.n
        n_darts = 4 * n + 4
        # boundary vertex darts in counterclockwise order NW, NE, SE, SW
        b_slot = {"NW": 0, "NE": 1, "SE": 2, "SW": 3}
        alpha = [0] * n_darts

        def dart(port) -> int:
            if port[0] == "n":
                return 4 * port[1] + port[2]
            return 4 * n + b_slot[END_NAMES[port[1]]]

        for e, ports in self.occurrences.items():
            d1, d2 = dart(ports[0]), dart(ports[1])
            alpha[d1], alpha[d2] = d2, d1
        orbits = _trace_orbits(
            n_darts, lambda d: 4 * (alpha[d] // 4) + (alpha[d] % 4 - 1) % 4
        )
        dsu = _DSU(n + 1)
        for ports in self.occurrences.values():
            vs = [p[1] if p[0] == "n" else n for p in ports]
            dsu.union(vs[0], vs[1])
        comps = len({dsu.find(v) for v in range(n + 1)})
        if len(orbits) != n + 2 + comps:
            raise NonPlanarError(
                f"tangle face count {len(orbits)} != {n + 2 + comps}"
            )

    def to_text(self) -> str:
        parts = [f"{name}={self.endpoints[name]}" for name in END_NAMES]
        parts.extend(f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings)
        parts.extend(["unknot"] * self.free_loops)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TangleDiagram({self.to_text()!r})"


_TOKEN_X = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]$")
_TOKEN_END = re.compile(r"(NW|NE|SW|SE)=(\d+)$")
_TOKEN_HOLE = re.compile(r"HOLE\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]$")


def _parse_tangle_tokens(text: str, allow_hole: bool):
    from .diagram import _strip_comments

    crossings = []
    ends: dict[str, int] = {}
    hole = None
    free_loops = 0
    for token in _strip_comments(text).split():
        m = _TOKEN_X.match(token)
        if m:
            crossings.append(tuple(int(g) for g in m.groups()))
            continue
        m = _TOKEN_END.match(token)
        if m:
            name, e = m.group(1), int(m.group(2))
            if name in ends:
                raise PDSyntaxError(f"duplicate endpoint {name}")
            ends[name] = e
            continue
        m = _TOKEN_HOLE.match(token)
        if m and allow_hole:
            if hole is not None:
                raise InvalidPattern("pattern must have exactly one hole")
            hole = tuple(int(g) for g in m.groups())
            continue
        if token == "unknot":
            free_loops += 1
            continue
        raise PDSyntaxError(f"unrecognized token {token!r}")
    missing = [n for n in END_NAMES if n not in ends]
    if missing:
        raise PDSyntaxError(f"missing endpoint declarations: {missing}")
    return crossings, ends, hole, free_loops


def parse_tangle(text: str) -> TangleDiagram:
    crossings, ends, _, free_loops = _parse_tangle_tokens(text, allow_hole=False)
    return TangleDiagram(crossings, ends, free_loops)


def tangle_zero() -> TangleDiagram:
    return parse_tangle("NW=1 NE=1 SW=2 SE=2")


def tangle_infinity() -> TangleDiagram:
    return parse_tangle("NW=1 SW=1 NE=2 SE=2")


# -- bracket vector ---------------------------------------------------------------


@dataclass(frozen=True)
class BracketVector:
    alpha: LaurentPoly
    beta: LaurentPoly

    def __iter__(self):
        return iter((self.alpha, self.beta))


def tangle_bracket(t: TangleDiagram) -> BracketVector:
    """Sum the 2**N smoothings into the ([0], [inf]) basis."""
    if t.n > crossing_cap():
        raise TooLarge(f"{t.n} crossings exceeds the enumeration cap")
    delta_pow = [LaurentPoly.one()]
    for _ in range(t.n + t.free_loops + 2):
        delta_pow.append(delta_pow[-1] * DELTA)
    e_nw, e_ne, e_sw, e_se = (t.endpoints[n] for n in END_NAMES)
    alpha = LaurentPoly.zero()
    beta = LaurentPoly.zero()
    for mask in range(1 << t.n):
        dsu = _DSU(t.n_edges + 1)
        for v, x in enumerate(t.crossings):
            if (mask >> v) & 1:
                dsu.union(x[0], x[1])
                dsu.union(x[2], x[3])
            else:
                dsu.union(x[0], x[3])
                dsu.union(x[1], x[2])
        comps = {dsu.find(e) for e in range(1, t.n_edges + 1)}
        end_comps = {dsu.find(e) for e in (e_nw, e_ne, e_sw, e_se)}
        loops = len(comps) - len(end_comps) + t.free_loops
        horizontal = dsu.find(e_nw) == dsu.find(e_ne)
        if horizontal and dsu.find(e_sw) != dsu.find(e_se):
            raise AssertionError("inconsistent endpoint pairing")
        if not horizontal and dsu.find(e_nw) != dsu.find(e_sw):
            raise AssertionError("endpoint pairing is neither [0] nor [inf]")
        n_a = bin(mask).count("1")
        term = LaurentPoly.monomial(1, 4 * (2 * n_a - t.n)) * delta_pow[loops]
        if horizontal:
            alpha = alpha + term
        else:
            beta = beta + term
    return BracketVector(alpha, beta)


# -- assembly builders --------------------------------------------------------------


def _tangle_assembly(t: TangleDiagram, prefix: str = "") -> tuple[Assembly, dict[str, tuple]]:
    asm = Assembly()
    asm.free_loops = t.free_loops
    for _ in range(t.n):
        asm.add_node(0)
    ports_of_edge: dict[int, list] = {}
    for v, x in enumerate(t.crossings):
        for pos, e in enumerate(x):
            ports_of_edge.setdefault(e, []).append(("n", v, pos))
    end_ports = {}
    for name in END_NAMES:
        port = ("e", prefix + name)
        ports_of_edge.setdefault(t.endpoints[name], []).append(port)
        end_ports[name] = port
    for e in sorted(ports_of_edge):
        pa, pb = ports_of_edge[e]
        asm.add_wire(pa, pb, key=(0, e))
    return asm, end_ports


def emit_tangle(asm: Assembly, end_ports: dict[str, tuple]) -> TangleDiagram:
    crossings, ends, free_loops = asm.emit_tangle_parts(end_ports)
    return TangleDiagram(crossings, ends, free_loops)


def closure(t: TangleDiagram, kind: str) -> LinkDiagram:
    """Numerator joins NW-NE and SW-SE; denominator joins NW-SW and NE-SE."""
    asm, ends = _tangle_assembly(t)
    if kind == "numerator":
        asm.fuse(ends["NW"], ends["NE"])
        asm.fuse(ends["SW"], ends["SE"])
    elif kind == "denominator":
        asm.fuse(ends["NW"], ends["SW"])
        asm.fuse(ends["NE"], ends["SE"])
    else:
        raise ValueError(f"closure kind must be numerator or denominator, got {kind!r}")
    return asm.emit()


def tangle_sum(t: TangleDiagram, s: TangleDiagram) -> TangleDiagram:
    """Horizontal sum: NE/SE of the first joined to NW/SW of the second."""
    asm = Assembly()
    left = asm.absorb(_tangle_assembly(t)[0], {n: "L" + n for n in END_NAMES})
    right = asm.absorb(_tangle_assembly(s)[0], {n: "R" + n for n in END_NAMES})
    asm.fuse(left["end"]["NE"], right["end"]["NW"])
    asm.fuse(left["end"]["SE"], right["end"]["SW"])
    return emit_tangle(asm, {
        "NW": left["end"]["NW"], "SW": left["end"]["SW"],
        "NE": right["end"]["NE"], "SE": right["end"]["SE"],
    })


def twist_tangle(k: int) -> TangleDiagram:
    """Vertical stack of |k| crossings, all of the sign of k; k = 0 is [0]...

    k positive stacks crossings whose numerator closure is the (2, k) torus
    link with positive crossings.
    """
    if k == 0:
        return tangle_infinity()
    asm = Assembly()
    # node slots counterclockwise: 0=NE, 1=NW, 2=SW, 3=SE
    # under axis 0 puts the NE-SW strand under, axis 1 the NW-SE strand
    nodes = [asm.add_node(0 if k > 0 else 1) for _ in range(abs(k))]
    top_left, top_right = ("e", "NW"), ("e", "NE")
    for z in nodes:
        asm.add_wire(top_left, ("n", z, 1))
        asm.add_wire(top_right, ("n", z, 0))
        top_left, top_right = ("n", z, 2), ("n", z, 3)
    asm.add_wire(top_left, ("e", "SW"))
    asm.add_wire(top_right, ("e", "SE"))
    return emit_tangle(asm, {n: ("e", n) for n in END_NAMES})


# -- Hopf satellite pairing ------------------------------------------------------------


def hopf_diagram(t: TangleDiagram, u: TangleDiagram) -> LinkDiagram:
    """Clasp the numerator closures of two tangles into H(T,U).

    The top closure arcs of T and U thread a two-crossing clasp (T's arc
    over at the first crossing, under at the second); bottom arcs close
    directly, so H([0],[0]) is a Hopf link plus two split circles.
    """
    asm = Assembly()
    left = asm.absorb(_tangle_assembly(t)[0], {n: "T" + n for n in END_NAMES})
    right = asm.absorb(_tangle_assembly(u)[0], {n: "U" + n for n in END_NAMES})
    k1 = asm.add_node(0)  # B-strand under: slots 0,2
    k2 = asm.add_node(0)  # A-strand under: slots 0,2
    # k1 counterclockwise slots: (b_in, a_in, b_mid, a_mid)
    # k2 counterclockwise slots: (a_mid, b_mid, a_out, b_out)
    asm.reattach(left["end"]["NE"], ("n", k1, 1))
    asm.reattach(right["end"]["NW"], ("n", k1, 0))
    asm.add_wire(("n", k1, 3), ("n", k2, 0))
    asm.add_wire(("n", k1, 2), ("n", k2, 1))
    asm.reattach(left["end"]["NW"], ("n", k2, 2))
    asm.reattach(right["end"]["NE"], ("n", k2, 3))
    asm.fuse(left["end"]["SW"], left["end"]["SE"])
    asm.fuse(right["end"]["SW"], right["end"]["SE"])
    return asm.emit()


_PAIRING_MATRIX: list[list[LaurentPoly]] | None = None


def pairing_matrix() -> list[list[LaurentPoly]]:
    """M[i][j] = <H(basis_i, basis_j)>, derived from the basis tangles."""
    global _PAIRING_MATRIX
    if _PAIRING_MATRIX is None:
        basis = (tangle_zero(), tangle_infinity())
        _PAIRING_MATRIX = [
            [bracket(hopf_diagram(bi, bj)) for bj in basis] for bi in basis
        ]
    return _PAIRING_MATRIX


def hopf_pairing(t: TangleDiagram, u: TangleDiagram) -> tuple[LinkDiagram, LaurentPoly]:
    """The link H(T,U) and its bracket via br(T)^t M br(U)."""
    diagram = hopf_diagram(t, u)
    m = pairing_matrix()
    bt, bu = tangle_bracket(t), tangle_bracket(u)
    value = LaurentPoly.zero()
    for i, ti in enumerate((bt.alpha, bt.beta)):
        for j, uj in enumerate((bu.alpha, bu.beta)):
            value = value + ti * m[i][j] * uj
    return diagram, value


# -- surgery patterns ---------------------------------------------------------------


class SurgeryPattern:
    """A tangle with one hole; inserting a tangle applies the surgery.

    HOLE[nw,ne,sw,se] names the edges meeting the hole's four corners.
    """

    def __init__(self, crossings, endpoints, hole, free_loops=0):
        self.crossings = tuple(tuple(int(e) for e in x) for x in crossings)
        self.endpoints = {k: int(endpoints[k]) for k in END_NAMES}
        self.hole = tuple(int(e) for e in hole)
        self.free_loops = int(free_loops)
        self.n = len(self.crossings)
        count: dict[int, int] = {}
        for x in self.crossings:
            for e in x:
                count[e] = count.get(e, 0) + 1
        for e in self.endpoints.values():
            count[e] = count.get(e, 0) + 1
        for e in self.hole:
            count[e] = count.get(e, 0) + 1
        for e, c in sorted(count.items()):
            if c != 2:
                raise InvalidPattern(f"edge {e} appears {c} times (expected 2)")
        if set(count) != set(range(1, 2 * self.n + 5)):
            raise InvalidPattern("pattern edges must be numbered consecutively")

    def mirrored(self) -> "SurgeryPattern":
        """Switch every crossing (the mirror-image recipe)."""
        return SurgeryPattern(
            [(b, c, d, a) for a, b, c, d in self.crossings],
            self.endpoints, self.hole, self.free_loops,
        )


def parse_pattern(text: str) -> SurgeryPattern:
    crossings, ends, hole, free_loops = _parse_tangle_tokens(text, allow_hole=True)
    if hole is None:
        raise InvalidPattern("pattern needs a HOLE[nw,ne,sw,se] token")
    return SurgeryPattern(crossings, ends, hole, free_loops)


IDENTITY_PATTERN = "NW=1 NE=2 SW=3 SE=4 HOLE[1,2,3,4]"


def omega_surgery(t: TangleDiagram, pattern: SurgeryPattern,
                  inverse: bool = False) -> TangleDiagram:
    """Insert the tangle into the pattern's hole (mirror recipe if inverse)."""
    pat = pattern.mirrored() if inverse else pattern
    asm = Assembly()
    asm.free_loops = pat.free_loops
    for _ in range(pat.n):
        asm.add_node(0)
    ports_of_edge: dict[int, list] = {}
    for v, x in enumerate(pat.crossings):
        for pos, e in enumerate(x):
            ports_of_edge.setdefault(e, []).append(("n", v, pos))
    for name in END_NAMES:
        ports_of_edge.setdefault(pat.endpoints[name], []).append(("e", "P" + name))
    for name, e in zip(END_NAMES, pat.hole):
        ports_of_edge.setdefault(e, []).append(("e", "H" + name))
    for e in sorted(ports_of_edge):
        pa, pb = ports_of_edge[e]
        asm.add_wire(pa, pb, key=(0, e))
    inner = asm.absorb(_tangle_assembly(t)[0], {n: "T" + n for n in END_NAMES})
    for name in END_NAMES:
        asm.fuse(("e", "H" + name), inner["end"][name])
    return emit_tangle(asm, {n: ("e", "P" + n) for n in END_NAMES})


def omega_matrix(pattern: SurgeryPattern, inverse: bool = False) -> list[list[LaurentPoly]]:
    """2x2 matrix of the induced action on bracket vectors (column per basis)."""
    cols = []
    for basis in (tangle_zero(), tangle_infinity()):
        bv = tangle_bracket(omega_surgery(basis, pattern, inverse))
        cols.append((bv.alpha, bv.beta))
    return [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]


def conservation_check(pattern: SurgeryPattern) -> bool:
    """Omega^t M Omega^{-1} == M, tested without fractions.

    Multiplying through by det(Omega) turns the identity into
    Omega^t M adj(Omega) == det(Omega) * M over the Laurent ring.
    """
    omega = omega_matrix(pattern)
    det = omega[0][0] * omega[1][1] - omega[0][1] * omega[1][0]
    if det.is_zero():
        raise SingularOmega("pattern action has zero determinant")
    adj = [[omega[1][1], -omega[0][1]], [-omega[1][0], omega[0][0]]]
    m = pairing_matrix()
    omega_t = [[omega[0][0], omega[1][0]], [omega[0][1], omega[1][1]]]

    def mat_mul(a, b):
        return [
            [a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)]
            for i in range(2)
        ]

    lhs = mat_mul(mat_mul(omega_t, m), adj)
    rhs = [[det * m[i][j] for j in range(2)] for i in range(2)]
    return lhs == rhs
