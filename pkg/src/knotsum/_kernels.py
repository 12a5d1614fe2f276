"""Hot integer kernels behind the exact state sums.

Two kernels dominate runtime: the 2**N smoothing sweep that histograms
(A-count, loop-count) pairs for the bracket polynomial, and bit-packed
GF(2) row elimination for homology ranks. Both carry a numba @njit build
and a pure NumPy/Python build producing identical outputs; set
``KNOT_NO_JIT=1`` to force the fallback. Kernels only ever produce machine
integers (counts and ranks), so exactness of the polynomial assembly done
by the callers is unaffected.
"""

from __future__ import annotations

import os

import numpy as np


def jit_enabled() -> bool:
    return os.environ.get("KNOT_NO_JIT", "") not in ("1", "true", "yes")


_HAVE_NUMBA = False
if jit_enabled():
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _HAVE_NUMBA = False


def _smoothing_histogram_py(n: int, edge_at: np.ndarray) -> np.ndarray:
    """Count states by (number of A-smoothings, number of loops).

    edge_at[v, k] is the 0-based edge index at position k of crossing v.
    An A-smoothing joins positions (0,1) and (2,3); B joins (0,3) and (1,2).
    Loops are the components of the resulting 2-regular pairing on edges.
    """
    m = 2 * n
    counts = np.zeros((n + 1, m + 2), dtype=np.int64)
    if n == 0:
        counts[0, 0] = 1
        return counts
    parent = np.empty(m, dtype=np.int64)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mask in range(1 << n):
        parent[:] = np.arange(m)
        n_a = 0
        for v in range(n):
            e0, e1, e2, e3 = edge_at[v]
            if (mask >> v) & 1:
                n_a += 1
                pairs = ((e0, e1), (e2, e3))
            else:
                pairs = ((e0, e3), (e1, e2))
            for a, b in pairs:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
        loops = 0
        for x in range(m):
            if parent[x] == x:
                loops += 1
        counts[n_a, loops] += 1
    return counts


if _HAVE_NUMBA:

    @njit(cache=True)
    def _smoothing_histogram_jit(n, edge_at):  # pragma: no cover - jitted
        m = 2 * n
        counts = np.zeros((n + 1, m + 2), dtype=np.int64)
        if n == 0:
            counts[0, 0] = 1
            return counts
        parent = np.empty(m, dtype=np.int64)
        for mask in range(1 << n):
            for x in range(m):
                parent[x] = x
            n_a = 0
            for v in range(n):
                if (mask >> v) & 1:
                    n_a += 1
                    p0, p1, p2, p3 = 0, 1, 2, 3
                else:
                    p0, p1, p2, p3 = 0, 3, 1, 2
                for a, b in ((edge_at[v, p0], edge_at[v, p1]),
                             (edge_at[v, p2], edge_at[v, p3])):
                    ra = a
                    while parent[ra] != ra:
                        parent[ra] = parent[parent[ra]]
                        ra = parent[ra]
                    rb = b
                    while parent[rb] != rb:
                        parent[rb] = parent[parent[rb]]
                        rb = parent[rb]
                    if ra != rb:
                        parent[rb] = ra
            loops = 0
            for x in range(m):
                r = x
                while parent[r] != r:
                    parent[r] = parent[parent[r]]
                    r = parent[r]
                if r == x:
                    loops += 1
            counts[n_a, loops] += 1
        return counts


def smoothing_histogram(n: int, edge_at: np.ndarray) -> np.ndarray:
    """Dispatch to the jitted sweep when enabled, else the pure build."""
    if _HAVE_NUMBA:
        return _smoothing_histogram_jit(n, np.ascontiguousarray(edge_at, dtype=np.int64))
    return _smoothing_histogram_py(n, np.asarray(edge_at, dtype=np.int64))


# -- GF(2) rank ---------------------------------------------------------------


def _gf2_rank_py(rows: list[int]) -> int:
    """Rank over GF(2) of rows given as Python-int bitsets."""
    basis: list[int] = []
    rank = 0
    for row in rows:
        x = row
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
            basis.sort(reverse=True)
            rank += 1
    return rank


if _HAVE_NUMBA:

    @njit(cache=True)
    def _gf2_rank_jit(mat):  # pragma: no cover - jitted
        n_rows, n_words = mat.shape
        rank = 0
        for col in range(64 * n_words):
            w, b = col // 64, np.uint64(col % 64)
            pivot = -1
            for r in range(rank, n_rows):
                if (mat[r, w] >> b) & np.uint64(1):
                    pivot = r
                    break
            if pivot < 0:
                continue
            for k in range(n_words):
                tmp = mat[rank, k]
                mat[rank, k] = mat[pivot, k]
                mat[pivot, k] = tmp
            for r in range(n_rows):
                if r != rank and ((mat[r, w] >> b) & np.uint64(1)):
                    for k in range(n_words):
                        mat[r, k] ^= mat[rank, k]
            rank += 1
            if rank == n_rows:
                break
        return rank


def gf2_rank(rows: list[int], n_cols: int) -> int:
    """Rank of a GF(2) matrix; rows are int bitsets over n_cols columns."""
    if not rows or n_cols == 0:
        return 0
    if _HAVE_NUMBA and n_cols > 64:
        n_words = (n_cols + 63) // 64
        mat = np.zeros((len(rows), n_words), dtype=np.uint64)
        mask = (1 << 64) - 1
        for i, row in enumerate(rows):
            for w in range(n_words):
                mat[i, w] = (row >> (64 * w)) & mask
        return int(_gf2_rank_jit(mat))
    return _gf2_rank_py(rows)
