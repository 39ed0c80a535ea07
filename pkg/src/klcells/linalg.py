"""Exact linear algebra over the fraction field of Z[q, q^-1].

Vectors are sparse dicts column -> LaurentInt.  Everything is fraction-free:
elimination uses cross-multiplication (new = pivot*new - coeff*row) followed
by content stripping, so no rational-function arithmetic is ever needed and
no specialization of q can silently change a rank.
"""

from __future__ import annotations

from bisect import insort
from math import gcd
from typing import Iterable, Mapping, Sequence

from .laurent import ONE, ZERO, LaurentInt

Vec = dict[int, LaurentInt]


def strip_content(vec: Vec) -> Vec:
    """Divide out the integer content and the common power of q; normalize
    the sign of the leading (largest-column) entry's top coefficient."""
    if not vec:
        return {}
    g = 0
    vmin = None
    for entry in vec.values():
        g = gcd(g, entry.content())
        v = entry.valuation()
        vmin = v if vmin is None else min(vmin, v)
    lead = vec[max(vec)]
    if lead.coeff(lead.degree()) < 0:
        g = -g
    if g == 1 and vmin == 0:
        return dict(vec)
    return {col: LaurentInt._raw({e - vmin: c // g for e, c in entry._c.items()})
            for col, entry in vec.items()}


class ExactSpan:
    """An incrementally built row space over Frac(Z[q, q^-1]).

    Pivots are the largest nonzero columns, so the stored rows form a
    staircase and one reduction pass settles membership.
    """

    def __init__(self, vectors: Iterable[Mapping[int, LaurentInt]] = ()):
        self._rows: list[tuple[int, Vec]] = []  # (-pivot, row), kept sorted
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping[int, LaurentInt]) -> Vec:
        v: Vec = {k: c for k, c in vec.items() if c}
        for negp, row in self._rows:
            pivot = -negp
            c = v.get(pivot)
            if not c:
                continue
            p = row[pivot]
            out: Vec = {}
            for k, a in v.items():
                if k != pivot:
                    out[k] = a * p
            for k, a in row.items():
                if k == pivot:
                    continue
                cur = out.get(k, ZERO) - c * a
                if cur:
                    out[k] = cur
                else:
                    out.pop(k, None)
            v = strip_content(out)
        return v

    def add(self, vec: Mapping[int, LaurentInt]) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        r = strip_content(r)
        insort(self._rows, (-max(r), r), key=lambda t: t[0])
        return True

    def contains(self, vec: Mapping[int, LaurentInt]) -> bool:
        return not self.reduce(vec)


def rank_of(vectors: Iterable[Mapping[int, LaurentInt]]) -> int:
    return ExactSpan(vectors).rank


def leading_unit_expand(target: Mapping[int, LaurentInt],
                        basis: Sequence[tuple[int, Mapping[int, LaurentInt]]]) -> Vec:
    """Coordinates of `target` over a unitriangular family.

    `basis` is a list of (leading column, vector) with distinct leading
    columns, sorted so that later vectors cannot reintroduce earlier leads
    (descending leads).  Leading coefficients must divide exactly (they are
    units in practice).  Raises ValueError when the target is not in the span.
    """
    t: Vec = {k: c for k, c in target.items() if c}
    coeffs: Vec = {}
    for lead, vec in basis:
        c = t.get(lead)
        if not c:
            continue
        r = c.exact_div(vec[lead])
        coeffs[lead] = r
        for k, a in vec.items():
            cur = t.get(k, ZERO) - r * a
            if cur:
                t[k] = cur
            else:
                t.pop(k, None)
    if t:
        raise ValueError("target is not in the span of the triangular family")
    return coeffs


def solve_bar_unitriangular(order: Sequence[int],
                            r_cols: Mapping[int, Mapping[int, LaurentInt]]
                            ) -> dict[int, dict[int, LaurentInt]]:
    """Solve for the unique bar-invariant unitriangular family.

    `r_cols[y][x]` expresses the bar image of basis vector y over the basis
    (unitriangular with respect to `order`).  Returns columns P[w][y] with
    P[w][w] = 1, off-diagonal entries with zero constant term, and
    sum_y P[w][y] * bar-action(y) = sum_y P[w][y] * y.

    This is the degree-by-degree solver used as an independent oracle
    against the recursions.
    """
    out: dict[int, dict[int, LaurentInt]] = {}
    seq = list(order)
    for wi, w in enumerate(seq):
        col: dict[int, LaurentInt] = {w: ONE}
        for x in reversed(seq[:wi]):
            g = ZERO
            for y, p in col.items():
                r = r_cols.get(y, {}).get(x)
                if r:
                    g = g + r * p.bar()
            if g:
                if g.bar() != -g:
                    raise ArithmeticError(
                        "bar-invariance system is inconsistent (not antisymmetric)")
                f = g.positive_part()
                if f:
                    col[x] = f
        out[w] = col
    return out
