"""Exact single-variable Laurent polynomials with quarter-integer exponents.

Exponents are stored as integers counting quarter units: a stored exponent
``e`` stands for ``v**(e/4)``. Every pipeline except the Jones substitution
uses only multiples of 4 (honest integral exponents); the quarter grid
exists so that ``f(t**(-1/4))`` stays exact. Coefficients are Python ints,
so determinants of large diagrams never overflow.

A polynomial is a map exponent -> nonzero coefficient; two values are equal
iff the maps are identical. All operations return new objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from .errors import NonIntegralExponent, NonIntegralSignPower

QUARTER = 1  # exponent grid unit: v**(1/4)
UNIT = 4     # stored exponent of v**1


class LaurentPoly:
    """Immutable Laurent polynomial over Z with exponents in (1/4)Z."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, int] | Iterable[tuple[int, int]] = ()):
        data: dict[int, int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            if c:
                data[int(e)] = data.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in data.items() if c}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, quarters: int) -> "LaurentPoly":
        """coeff * v**(quarters/4)."""
        return cls({quarters: coeff})

    @classmethod
    def var(cls, power: int = 1) -> "LaurentPoly":
        """v**power for integer power."""
        return cls({UNIT * power: 1})

    @classmethod
    def from_int(cls, n: int) -> "LaurentPoly":
        return cls({0: n})

    # -- inspection ------------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def min_exponent(self) -> int:
        """Lowest stored exponent (quarter units). Raises on zero."""
        return min(self._terms)

    def max_exponent(self) -> int:
        return max(self._terms)

    def coeff(self, quarters: int) -> int:
        return self._terms.get(quarters, 0)

    def is_integral(self) -> bool:
        """True when every exponent is a multiple of a whole unit."""
        return all(e % UNIT == 0 for e in self._terms)

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: -c for e, c in self._terms.items()}
        return res

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            res = LaurentPoly.__new__(LaurentPoly)
            res._terms = {e: c * other for e, c in self._terms.items()}
            return res
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: c for e, c in out.items() if c}
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            # only unit monomials are invertible in the Laurent ring
            if len(self._terms) == 1:
                ((e, c),) = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({e * k: c if k % 2 else 1})
            raise ValueError(f"{self!r} has no inverse in the Laurent ring")
        res = LaurentPoly.one()
        base = self
        n = k
        while n:
            if n & 1:
                res = res * base
            base = base * base
            n >>= 1
        return res

    def shifted(self, quarters: int) -> "LaurentPoly":
        """Multiply by v**(quarters/4)."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e + quarters: c for e, c in self._terms.items()}
        return res

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "LaurentPoly(0)"
        bits = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e % UNIT == 0:
                bits.append(f"{c}*v^{e // UNIT}")
            else:
                bits.append(f"{c}*v^({e}/4)")
        return "LaurentPoly(" + " + ".join(bits) + ")"

    # -- substitution and evaluation ------------------------------------------------

    def substitute(self, sign: int, k_quarters: int) -> "LaurentPoly":
        """Monomial substitution v -> sign * v**(k_quarters/4).

        A term c*v**(e/4) maps to c * sign**(e/4) * v**(e*k_quarters/16);
        sign**(e/4) requires an integral exponent when sign == -1, and the
        new exponent must land back on the quarter grid.
        """
        if sign not in (1, -1):
            raise ValueError("substitution sign must be +1 or -1")
        if k_quarters == 0:
            raise ValueError("substitution power must be nonzero")
        out: dict[int, int] = {}
        for e, c in self._terms.items():
            if sign == -1:
                if e % UNIT != 0:
                    raise NonIntegralSignPower(
                        f"(-1)**({e}/4) is not defined for exponent {e} quarter units"
                    )
                if (e // UNIT) % 2:
                    c = -c
            num = e * k_quarters
            if num % UNIT != 0:
                raise NonIntegralExponent(
                    f"substitution sends exponent {e}/4 off the quarter grid"
                )
            ne = num // UNIT
            out[ne] = out.get(ne, 0) + c
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: c for e, c in out.items() if c}
        return res

    def evaluate(self, value) -> Fraction:
        """Exact evaluation at a nonzero rational; exponents must be integral."""
        v = Fraction(value)
        if v == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at 0")
        total = Fraction(0)
        for e, c in self._terms.items():
            if e % UNIT != 0:
                raise NonIntegralExponent(f"exponent {e}/4 is not an integer")
            total += c * v ** (e // UNIT)
        return total

    # -- dot equality ----------------------------------------------------------------

    def dot_equals(self, other: "LaurentPoly") -> tuple[bool, int, int]:
        """Test self == sign * v**n * other for integral n.

        Returns (found, sign, n_quarters); n_quarters is a multiple of 4.
        Zero is dot-equal only to zero (witness (+1, 0)).
        """
        if not self._terms or not other._terms:
            return (self._terms == other._terms, 1, 0)
        shift = self.min_exponent() - other.min_exponent()
        if shift % UNIT != 0:
            return (False, 1, 0)
        if self.max_exponent() - other.max_exponent() != shift:
            return (False, 1, 0)
        lo = self.min_exponent()
        ratio = self._terms[lo] // other._terms[lo - shift] if other._terms[lo - shift] else 0
        if ratio not in (1, -1):
            return (False, 1, 0)
        for e, c in other._terms.items():
            if self._terms.get(e + shift, 0) != ratio * c:
                return (False, 1, 0)
        if len(self._terms) != len(other._terms):
            return (False, 1, 0)
        return (True, ratio, shift)

    def dot_normal(self) -> "LaurentPoly":
        """Canonical dot-equality representative.

        Lowest exponent shifted to 0 and the top-degree coefficient made
        positive; the zero polynomial stays zero.
        """
        if not self._terms:
            return self
        p = self.shifted(-self.min_exponent())
        if p._terms[p.max_exponent()] < 0:
            p = -p
        return p

    # -- exact division (Bareiss support) -----------------------------------------------

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / divisor in the Laurent ring.

        Raises ArithmeticError when the division is not exact; used by the
        fraction-free determinant where exactness is guaranteed.
        """
        if not divisor._terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._terms:
            return LaurentPoly()
        rem = dict(self._terms)
        d_hi = divisor.max_exponent()
        d_lead = divisor._terms[d_hi]
        out: dict[int, int] = {}
        while rem:
            r_hi = max(rem)
            q_exp = r_hi - d_hi
            q_coeff, frac = divmod(rem[r_hi], d_lead)
            if frac:
                raise ArithmeticError("non-exact Laurent division")
            out[q_exp] = q_coeff
            for e, c in divisor._terms.items():
                ne = e + q_exp
                s = rem.get(ne, 0) - c * q_coeff
                if s:
                    rem[ne] = s
                else:
                    rem.pop(ne, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: c for e, c in out.items() if c}
        return res


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()


def dot_equal(p: LaurentPoly, q: LaurentPoly) -> bool:
    """Convenience wrapper for the boolean part of p.dot_equals(q)."""
    return p.dot_equals(q)[0]
