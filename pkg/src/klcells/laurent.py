"""Exact Laurent polynomials in q over the integers.

Every scalar in this package lives in the ring A = Z[q, q^-1].  The *bar
involution* is the ring automorphism of A fixing Z and sending q to q^-1;
it extends to the Hecke algebra in :mod:`klcells.hecke`.

LaurentInt values are immutable and hashable.  All arithmetic is exact;
there is deliberately no numeric specialization of q anywhere in the
package, because ranks and ideal memberships can drop at roots of unity.

>>> p = Q - QINV
>>> p * p
q^2 - 2 + q^-2
>>> p.bar()
-q + q^-1
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Union


class LaurentInt:
    """A Laurent polynomial ``sum_e c_e q^e`` with integer coefficients.

    Internally a map exponent -> coefficient with no zero entries; the zero
    polynomial has an empty table.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, data: Union[int, Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        if isinstance(data, int):
            coeffs = {0: data} if data else {}
        elif isinstance(data, Mapping):
            coeffs = {int(e): int(c) for e, c in data.items() if c}
        else:
            coeffs = {}
            for e, c in data:
                if c:
                    coeffs[int(e)] = coeffs.get(int(e), 0) + int(c)
            coeffs = {e: c for e, c in coeffs.items() if c}
        self._c = coeffs
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: dict[int, int]) -> "LaurentInt":
        # trusted, already-normalized dict; skips copying
        p = object.__new__(cls)
        p._c = coeffs
        p._hash = None
        return p

    @classmethod
    def term(cls, exponent: int, coefficient: int = 1) -> "LaurentInt":
        return cls._raw({exponent: coefficient} if coefficient else {})

    # -- container-ish views -------------------------------------------------

    def items(self) -> tuple[tuple[int, int], ...]:
        """(exponent, coefficient) pairs, exponents ascending."""
        return tuple(sorted(self._c.items()))

    to_pairs = items

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentInt":
        return cls((int(e), int(c)) for e, c in pairs)

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def constant_term(self) -> int:
        return self._c.get(0, 0)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no valuation")
        return min(self._c)

    def degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    # -- ring structure ------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentInt):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __neg__(self) -> "LaurentInt":
        return LaurentInt._raw({e: -c for e, c in self._c.items()})

    def __add__(self, other: Union["LaurentInt", int]) -> "LaurentInt":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for e, c in other._c.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentInt._raw(out)

    __radd__ = __add__

    def __sub__(self, other: Union["LaurentInt", int]) -> "LaurentInt":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union["LaurentInt", int]) -> "LaurentInt":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Union["LaurentInt", int]) -> "LaurentInt":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentInt._raw({e: c * other for e, c in self._c.items()})
        if not isinstance(other, LaurentInt):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentInt._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentInt":
        if n < 0:
            raise ValueError("negative powers are not defined in Z[q, q^-1]")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- involution and exponent plumbing ------------------------------------

    def bar(self) -> "LaurentInt":
        """The involution q -> q^-1."""
        return LaurentInt._raw({-e: c for e, c in self._c.items()})

    def scale_exponents(self, k: int) -> "LaurentInt":
        """Substitute q -> q^k (k a positive integer)."""
        if k <= 0:
            raise ValueError("exponent scale must be positive")
        return LaurentInt._raw({e * k: c for e, c in self._c.items()})

    def positive_part(self) -> "LaurentInt":
        """The terms with strictly positive exponent."""
        return LaurentInt._raw({e: c for e, c in self._c.items() if e > 0})

    def is_polynomial(self) -> bool:
        """True iff all exponents are >= 0 (element of Z[q])."""
        return all(e >= 0 for e in self._c)

    def content(self) -> int:
        """Positive gcd of the integer coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._c.values():
            g = gcd(g, c)
        return g

    def exact_div(self, divisor: "LaurentInt") -> "LaurentInt":
        """Exact division in Z[q, q^-1]; raises ValueError when not divisible."""
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._c:
            return ZERO
        num = dict(self._c)
        den = divisor._c
        dtop = max(den)
        dlead = den[dtop]
        out: dict[int, int] = {}
        while num:
            ntop = max(num)
            c, r = divmod(num[ntop], dlead)
            if r:
                raise ValueError("not divisible")
            e = ntop - dtop
            out[e] = c
            for de, dc in den.items():
                k = de + e
                s = num.get(k, 0) - dc * c
                if s:
                    num[k] = s
                else:
                    num.pop(k, None)
            if ntop in num:
                raise ValueError("not divisible")
        return LaurentInt._raw(out)

    # -- display -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            if e == 0:
                body = str(abs(c))
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


def _coerce(value: Union["LaurentInt", int]) -> "LaurentInt":
    if isinstance(value, LaurentInt):
        return value
    if isinstance(value, int):
        return LaurentInt._raw({0: value} if value else {})
    return NotImplemented


def q_power(exponent: int, coefficient: int = 1) -> LaurentInt:
    return LaurentInt.term(exponent, coefficient)


ZERO = LaurentInt.term(0, 0)
ONE = LaurentInt.term(0, 1)
Q = LaurentInt.term(1)
QINV = LaurentInt.term(-1)
