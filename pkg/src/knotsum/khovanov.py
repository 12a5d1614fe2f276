"""Cube-of-smoothings chain complex over the two-dimensional Frobenius algebra.

Each smoothing state contributes a tensor power of the algebra with basis
{1, X}, one factor per loop. Flipping one crossing from its A-smoothing to
its B-smoothing either merges two loops (apply the product m) or splits a
loop (apply the coproduct):

    m:  1*1 -> 1,  1*X, X*1 -> X,  X*X -> 0
    coproduct:  1 -> 1(x)X + X(x)1,  X -> X(x)X

Gradings follow the writhe-aware convention: with r = number of
B-smoothings and n+, n- the positive/negative crossing counts, a generator
sits in homological degree i = r - n- and quantum degree
j = (#1 - #X) + r + n+ - 2 n-. Over the rationals the edge flipping
coordinate k carries the sign (-1)**(B-smoothings among coordinates < k);
over Z/2 signs vanish. The differential raises r by one and preserves j.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from ._kernels import gf2_rank
from .bracket import jones, loop_partition
from .diagram import LinkDiagram
from .errors import TooLarge
from .laurent import LaurentPoly
from .linalg import int_rank

FIELDS = ("Q", "F2")


class FrobeniusAlgebra:
    """The algebra {1, X} with X**2 = 0 and the loop-splitting coproduct.

    Basis elements are 0 (the unit) and 1 (X). Tensor words are tuples.
    """

    basis = (0, 1)

    @staticmethod
    def product(a: int, b: int) -> list[tuple[int, int]]:
        """m(a (x) b) as a list of (coeff, basis) terms."""
        if a == 0:
            return [(1, b)]
        if b == 0:
            return [(1, a)]
        return []  # X * X = 0

    @staticmethod
    def coproduct(a: int) -> list[tuple[int, int, int]]:
        """Delta(a) as (coeff, left, right) terms."""
        if a == 0:
            return [(1, 0, 1), (1, 1, 0)]
        return [(1, 1, 1)]

    @classmethod
    def _tensor_map(cls, fn, dim_in: int, dim_out: int):
        mat = [[0] * dim_in for _ in range(dim_out)]
        for col in range(dim_in):
            for coeff, row in fn(col):
                mat[row][col] += coeff
        return mat

    @classmethod
    def composite_f(cls):
        """Delta after m, as a 4x4 matrix on A (x) A."""
        def fn(col):
            a, b = col >> 1, col & 1
            out = []
            for c1, prod in cls.product(a, b):
                for c2, left, right in cls.coproduct(prod):
                    out.append((c1 * c2, (left << 1) | right))
            return out
        return cls._tensor_map(fn, 4, 4)

    @classmethod
    def composite_g(cls):
        """(m (x) 1) after (1 (x) Delta)."""
        def fn(col):
            a, b = col >> 1, col & 1
            out = []
            for c1, left, right in cls.coproduct(b):
                for c2, prod in cls.product(a, left):
                    out.append((c1 * c2, (prod << 1) | right))
            return out
        return cls._tensor_map(fn, 4, 4)

    @classmethod
    def composite_h(cls):
        """(1 (x) m) after (Delta (x) 1)."""
        def fn(col):
            a, b = col >> 1, col & 1
            out = []
            for c1, left, right in cls.coproduct(a):
                for c2, prod in cls.product(right, b):
                    out.append((c1 * c2, (left << 1) | prod))
            return out
        return cls._tensor_map(fn, 4, 4)


def complex_cap() -> int:
    return int(os.environ.get("KNOT_MAX_CROSSINGS", "12"))


@dataclass(frozen=True)
class Generator:
    mask: int        # bit v set = A-smoothing at crossing v
    labels: int      # bit k set = X on the k-th loop (canonical loop order)


class CubeComplex:
    """Chain groups indexed by (homological, quantum) degree with the
    differential stored per bidegree."""

    def __init__(self, d: LinkDiagram, field: str = "Q", signed: bool = True):
        if field not in FIELDS:
            raise ValueError(f"field must be one of {FIELDS}")
        if d.n > complex_cap():
            raise TooLarge(
                f"{d.n} crossings exceeds the complex cap {complex_cap()} "
                "(override with KNOT_MAX_CROSSINGS)"
            )
        self.diagram = d
        self.field = field
        self.signed = signed and field == "Q"
        self.n_plus = sum(1 for s in d.sign if s > 0)
        self.n_minus = d.n - self.n_plus
        self._loops: dict[int, list[frozenset]] = {}
        self.gens: dict[tuple[int, int], list[Generator]] = {}
        self.index: dict[tuple[int, int], dict[Generator, int]] = {}
        self._build_generators()
        self.diff: dict[tuple[int, int], list[list[int]]] = {}
        self._build_differential()

    # loop lists are canonical: crossing loops by smallest edge, then free loops
    def loops_of(self, mask: int) -> list[frozenset]:
        cached = self._loops.get(mask)
        if cached is None:
            parts = sorted(loop_partition(self.diagram, mask), key=min)
            parts.extend(frozenset([("free", k)])
                         for k in range(self.diagram.free_loops))
            self._loops[mask] = parts
            cached = parts
        return cached

    def degrees(self, mask: int, labels: int) -> tuple[int, int]:
        n = self.diagram.n
        r = n - bin(mask).count("1")
        n_loops = len(self.loops_of(mask))
        alg = n_loops - 2 * bin(labels).count("1")
        i = r - self.n_minus
        j = alg + r + self.n_plus - 2 * self.n_minus
        return i, j

    def _build_generators(self) -> None:
        n = self.diagram.n
        for mask in range(1 << n):
            loops = self.loops_of(mask)
            for labels in range(1 << len(loops)):
                g = Generator(mask, labels)
                key = self.degrees(mask, labels)
                self.gens.setdefault(key, []).append(g)
        for key, gen_list in self.gens.items():
            self.index[key] = {g: k for k, g in enumerate(gen_list)}

    def _edge_sign(self, mask: int, v: int) -> int:
        if not self.signed:
            return 1
        below = mask & ((1 << v) - 1)
        b_count = v - bin(below).count("1")
        return -1 if b_count % 2 else 1

    def _image_terms(self, g: Generator, v: int) -> list[tuple[int, Generator]]:
        """Flip crossing v (set in g.mask) from A to B; merge or split."""
        src_loops = self.loops_of(g.mask)
        tgt_mask = g.mask & ~(1 << v)
        tgt_loops = self.loops_of(tgt_mask)
        src_label = {loop: (g.labels >> k) & 1 for k, loop in enumerate(src_loops)}
        tgt_index = {loop: k for k, loop in enumerate(tgt_loops)}
        changed_src = [loop for loop in src_loops if loop not in tgt_index]
        changed_tgt = [loop for loop in tgt_loops if loop not in src_label]
        sign = self._edge_sign(g.mask, v)
        out: list[tuple[int, Generator]] = []

        def build(base_terms, assign):
            for coeff, parts in base_terms:
                bits = 0
                for loop, val in assign(parts).items():
                    if val:
                        bits |= 1 << tgt_index[loop]
                for loop in tgt_loops:
                    if loop in src_label and src_label[loop]:
                        bits |= 1 << tgt_index[loop]
                out.append((sign * coeff, Generator(tgt_mask, bits)))

        if len(changed_src) == 2 and len(changed_tgt) == 1:
            a, b = src_label[changed_src[0]], src_label[changed_src[1]]
            terms = [(c, (p,)) for c, p in FrobeniusAlgebra.product(a, b)]
            build(terms, lambda parts: {changed_tgt[0]: parts[0]})
        elif len(changed_src) == 1 and len(changed_tgt) == 2:
            a = src_label[changed_src[0]]
            terms = [(c, (l, r)) for c, l, r in FrobeniusAlgebra.coproduct(a)]
            build(terms, lambda parts: {changed_tgt[0]: parts[0],
                                        changed_tgt[1]: parts[1]})
        else:
            raise AssertionError("resmoothing must merge or split exactly one pair")
        return out

    def _build_differential(self) -> None:
        mod2 = self.field == "F2"
        for (i, j), gen_list in self.gens.items():
            tgt_key = (i + 1, j)
            tgt = self.index.get(tgt_key)
            if tgt is None:
                continue
            mat = [[0] * len(gen_list) for _ in range(len(tgt))]
            for col, g in enumerate(gen_list):
                for v in range(self.diagram.n):
                    if not (g.mask >> v) & 1:
                        continue
                    for coeff, h in self._image_terms(g, v):
                        row = tgt[h]
                        mat[row][col] += coeff
            if mod2:
                mat = [[x & 1 for x in row] for row in mat]
            self.diff[(i, j)] = mat

    def chain_rank(self, i: int, j: int) -> int:
        return len(self.gens.get((i, j), ()))

    def bidegrees(self):
        return sorted(self.gens)


def build_complex(d: LinkDiagram, field: str = "Q", signed: bool = True) -> CubeComplex:
    return CubeComplex(d, field, signed)


def verify_d2(c: CubeComplex) -> bool:
    """Check that consecutive differentials compose to zero."""
    mod = 2 if c.field == "F2" else 0
    for (i, j), m1 in c.diff.items():
        m2 = c.diff.get((i + 1, j))
        if m2 is None or not m1 or not m2 or not m1[0]:
            continue
        rows2, cols2 = len(m2), len(m2[0])
        cols1 = len(m1[0])
        for r in range(rows2):
            for col in range(cols1):
                s = sum(m2[r][k] * m1[k][col] for k in range(cols2))
                if mod:
                    s %= mod
                if s:
                    return False
    return True


class HomologyTable:
    """Ranks of the homology per (homological, quantum) bidegree."""

    def __init__(self, ranks: dict[tuple[int, int], int], field: str):
        self.ranks = {k: v for k, v in ranks.items() if v}
        self.field = field

    def rank(self, i: int, j: int) -> int:
        return self.ranks.get((i, j), 0)

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def items(self):
        return sorted(self.ranks.items())

    def __eq__(self, other):
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return self.ranks == other.ranks

    def __repr__(self) -> str:
        inner = ", ".join(f"({i},{j}): {r}" for (i, j), r in self.items())
        return f"HomologyTable({{{inner}}})"


def _matrix_rank(mat: list[list[int]], field: str) -> int:
    if not mat or not mat[0]:
        return 0
    if field == "F2":
        n_cols = len(mat[0])
        rows = []
        for row in mat:
            bits = 0
            for k, x in enumerate(row):
                if x & 1:
                    bits |= 1 << k
            rows.append(bits)
        return gf2_rank(rows, n_cols)
    return int_rank(mat)


def homology(c: CubeComplex) -> HomologyTable:
    """Bidegree ranks ker/im via exact elimination over the chosen field."""
    ranks: dict[tuple[int, int], int] = {}
    degrees = c.bidegrees()
    rank_out: dict[tuple[int, int], int] = {}
    for key in degrees:
        rank_out[key] = _matrix_rank(c.diff.get(key, []), c.field)
    for (i, j) in degrees:
        dim = c.chain_rank(i, j)
        r_out = rank_out.get((i, j), 0)
        r_in = rank_out.get((i - 1, j), 0)
        ranks[(i, j)] = dim - r_out - r_in
        if ranks[(i, j)] < 0:
            raise AssertionError("negative homology rank; differential is broken")
    return HomologyTable(ranks, c.field)


def graded_euler(h: HomologyTable) -> LaurentPoly:
    """Sum of (-1)**i q**j over the table."""
    total = LaurentPoly.zero()
    for (i, j), r in h.ranks.items():
        total = total + LaurentPoly.monomial((-1) ** i * r, 4 * j)
    return total


def chain_euler(c: CubeComplex) -> LaurentPoly:
    total = LaurentPoly.zero()
    for (i, j) in c.bidegrees():
        total = total + LaurentPoly.monomial((-1) ** i * c.chain_rank(i, j), 4 * j)
    return total


def jones_calibrated(d: LinkDiagram) -> LaurentPoly:
    """(q + 1/q) * V_K under the substitution t = q**2, sqrt(t) = -q."""
    v = jones(d)
    j = v.substitute(1, 8).substitute(-1, 4)
    return LaurentPoly({4: 1, -4: 1}) * j
