"""Alexander's region matrix and the determinant form of his polynomial.

At each crossing the two quadrants left of the under-strand are dotted; the
dotted quadrant the under-strand points into gets coefficient +x, then
proceeding counterclockwise -x, +1, -1. In the compass frame (under-strand
entering south, leaving north) that is:

    quadrant 2 (NW): +x    quadrant 3 (SW): -x
    quadrant 0 (SE): +1    quadrant 1 (NE): -1

Rows of the matrix are crossings, columns are faces; a face meeting a
crossing in several quadrants sums its labels. Deleting two adjacent
starred columns and taking the determinant gives the polynomial, defined
up to sign and a power of x.
"""

from __future__ import annotations

from .diagram import LinkDiagram
from .errors import NonAdjacentStars
from .laurent import LaurentPoly

X = LaurentPoly.var(1)
QUADRANT_LABELS = (
    LaurentPoly.one(),        # position 0, SE
    -LaurentPoly.one(),       # position 1, NE
    X,                        # position 2, NW (top dot)
    -X,                       # position 3, SW (bottom dot)
)


class AlexanderMatrix:
    """Region/crossing matrix with two starred (deleted) adjacent faces."""

    def __init__(self, d: LinkDiagram, starred: tuple[int, int]):
        d.require_connected()
        f1, f2 = starred
        n_faces = d.face_count
        if not (0 <= f1 < n_faces and 0 <= f2 < n_faces) or f1 == f2:
            raise NonAdjacentStars(f"bad star pair {starred}")
        if not d.faces_adjacent(f1, f2):
            raise NonAdjacentStars(f"faces {f1} and {f2} do not share an edge")
        self.diagram = d
        self.starred = (f1, f2)
        rows = []
        for v in range(d.n):
            row = [LaurentPoly.zero()] * n_faces
            for q in range(4):
                f = d.quadrant_face(v, q)
                row[f] = row[f] + QUADRANT_LABELS[q]
            rows.append(row)
        self.full_rows = rows
        keep = [f for f in range(n_faces) if f not in (f1, f2)]
        self.columns = keep
        self.rows = [[row[f] for f in keep] for row in rows]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def determinant(self) -> LaurentPoly:
        return laurent_det(self.rows)


def default_stars(d: LinkDiagram) -> tuple[int, int]:
    """Lexicographically first adjacent face pair."""
    n_faces = d.face_count
    for f1 in range(n_faces):
        for f2 in range(f1 + 1, n_faces):
            if d.faces_adjacent(f1, f2):
                return (f1, f2)
    raise NonAdjacentStars("no adjacent face pair exists")


def alexander_matrix(d: LinkDiagram, starred: tuple[int, int] | None = None) -> AlexanderMatrix:
    if starred is None:
        starred = default_stars(d)
    return AlexanderMatrix(d, starred)


def alexander_poly(d: LinkDiagram, starred: tuple[int, int] | None = None) -> LaurentPoly:
    """Alexander polynomial, canonicalized so the lowest exponent is 0 and
    the top coefficient is positive."""
    d.require_connected()
    if d.n == 0:
        return LaurentPoly.one()
    return alexander_matrix(d, starred).determinant().dot_normal()


def knot_determinant(d: LinkDiagram) -> int:
    """|Delta(-1)|; independent of the dot-equality representative."""
    value = alexander_poly(d).evaluate(-1)
    assert value.denominator == 1
    return abs(int(value))


# -- determinants over the Laurent ring ---------------------------------------------


def laurent_det(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free Bareiss elimination; exact over the Laurent ring."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.one()
    a = [row[:] for row in rows]
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = LaurentPoly.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.divide_exact(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def laurent_det_cofactor(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    """Cofactor expansion; independent cross-check for small matrices."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return rows[0][0]
    total = LaurentPoly.zero()
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = rows[0][j] * laurent_det_cofactor(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total
