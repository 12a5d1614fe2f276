"""Bracket polynomial state sum, writhe normalization, and Jones polynomial.

The bracket of an N-crossing diagram is the exact sum over all 2**N
smoothings: <K> = sum_S A**(a(S)-b(S)) * delta**(loops(S)-1) with
delta = -A**2 - A**-2. An A-smoothing joins crossing positions (0,1) and
(2,3), a B-smoothing joins (0,3) and (1,2); orientation is ignored.

The sweep over smoothings only needs the integer histogram of
(A-count, loop-count) pairs, which is what the hot kernel computes; the
Laurent assembly on top is exact big-integer arithmetic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ._kernels import smoothing_histogram
from .diagram import LinkDiagram, _DSU
from .errors import NotACurl, SiteMismatch, TooLarge
from .laurent import LaurentPoly

DELTA = LaurentPoly({8: -1, -8: -1})  # -A^2 - A^-2
MINUS_A_CUBED = LaurentPoly({12: -1})
MINUS_A_MINUS_CUBED = LaurentPoly({-12: -1})


def crossing_cap() -> int:
    return int(os.environ.get("KNOT_MAX_CROSSINGS", "24"))


def _edge_table(d: LinkDiagram) -> np.ndarray:
    table = np.empty((d.n, 4), dtype=np.int64)
    for v, x in enumerate(d.crossings):
        for k in range(4):
            table[v, k] = x[k] - 1
    return table


def bracket(d: LinkDiagram) -> LaurentPoly:
    """Exact bracket polynomial in A."""
    if d.n > crossing_cap():
        raise TooLarge(
            f"{d.n} crossings exceeds the enumeration cap {crossing_cap()} "
            "(override with KNOT_MAX_CROSSINGS)"
        )
    counts = smoothing_histogram(d.n, _edge_table(d))
    max_loops = counts.shape[1] + d.free_loops
    delta_pow = [LaurentPoly.one()]
    for _ in range(max_loops):
        delta_pow.append(delta_pow[-1] * DELTA)
    total = LaurentPoly.zero()
    for n_a in range(counts.shape[0]):
        for loops in range(counts.shape[1]):
            c = int(counts[n_a, loops])
            if not c:
                continue
            weight = LaurentPoly.monomial(c, 4 * (2 * n_a - d.n))
            total = total + weight * delta_pow[loops + d.free_loops - 1]
    return total


@dataclass(frozen=True)
class SmoothingState:
    """One choice of smoothing per crossing; loops counts free loops too."""

    assignment: tuple[str, ...]
    loops: int

    @property
    def a_count(self) -> int:
        return sum(1 for s in self.assignment if s == "A")


def smoothing_state(d: LinkDiagram, mask: int) -> SmoothingState:
    """State for the bitmask (bit v set = A-smoothing at crossing v)."""
    return SmoothingState(
        tuple("A" if (mask >> v) & 1 else "B" for v in range(d.n)),
        len(loop_partition(d, mask)) + d.free_loops,
    )


def loop_partition(d: LinkDiagram, mask: int) -> list[frozenset[int]]:
    """Loops of a smoothing as edge sets (free loops excluded)."""
    if d.n == 0:
        return []
    dsu = _DSU(d.n_edges + 1)
    for v, x in enumerate(d.crossings):
        if (mask >> v) & 1:
            dsu.union(x[0], x[1])
            dsu.union(x[2], x[3])
        else:
            dsu.union(x[0], x[3])
            dsu.union(x[1], x[2])
    groups: dict[int, set[int]] = {}
    for e in range(1, d.n_edges + 1):
        groups.setdefault(dsu.find(e), set()).add(e)
    return [frozenset(g) for g in groups.values()]


def f_poly(d: LinkDiagram) -> LaurentPoly:
    """Ambient-isotopy normalization (-A^3)**(-writhe) * <K>."""
    w = d.writhe
    norm = LaurentPoly.monomial(-1 if w % 2 else 1, -12 * w)
    return norm * bracket(d)


def jones(d: LinkDiagram) -> LaurentPoly:
    """Jones polynomial in t: substitute A -> t**(-1/4) into f."""
    return f_poly(d).substitute(1, -1)


def curl_check(d: LinkDiagram, v: int) -> int:
    """Verify the curl factor at crossing v; returns the exponent +3 or -3.

    Checks bracket(d) == (-A**(+-3)) * bracket(d with the curl removed).
    """
    if not 0 <= v < d.n:
        raise NotACurl(f"no crossing {v}")
    x = d.crossings[v]
    if not any(x[p] == x[(p + 1) % 4] for p in range(4)):
        raise NotACurl(f"crossing {v} is not a curl")
    from .moves import apply_reidemeister

    factor = 3 * d.sign[v]
    removed = apply_reidemeister(d, "R1-undo", v)
    expected = LaurentPoly.monomial(-1, 4 * factor) * bracket(removed)
    if bracket(d) != expected:
        raise AssertionError("curl factor identity failed")
    return factor


def switching_check(chi: LinkDiagram, chibar: LinkDiagram, v: int) -> bool:
    """A<chi> - A^-1<chibar> == (A^2 - A^-2)<A-smoothing of chi>."""
    from .moves import same_diagram, smooth_crossing, switch_crossing

    if not 0 <= v < chi.n:
        raise SiteMismatch(f"no crossing {v}")
    if not same_diagram(switch_crossing(chi, v), chibar):
        raise SiteMismatch("second diagram is not the switch of the first at the site")
    lhs = (LaurentPoly.monomial(1, 4) * bracket(chi)
           - LaurentPoly.monomial(1, -4) * bracket(chibar))
    rhs = (LaurentPoly({8: 1, -8: -1})) * bracket(smooth_crossing(chi, v, "A"))
    return lhs == rhs
