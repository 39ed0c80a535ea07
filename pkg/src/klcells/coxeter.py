"""Finite Coxeter groups from a Coxeter matrix.

A group is enumerated once, breadth-first in ShortLex order, and frozen into
index tables: elements are plain integer handles 0..|W|-1 (0 is the identity),
sorted by (length, ShortLex word).  All downstream algebra works on these
handles with O(1) generator actions, lengths and descent queries.

Element equality during enumeration uses the reflection representation: the
generator s acts on the basis (alpha_t) by

    s(alpha_t) = alpha_t + 2cos(pi/m(s,t)) alpha_s   (t != s),
    s(alpha_s) = -alpha_s.

The matrix entries live in the exact ring Z[theta] with theta = 2cos(2pi/L),
L = lcm of the 2*m(s,t); the minimal polynomial of theta is computed from the
L-th cyclotomic polynomial, so non-crystallographic inputs (I2(m), H3) are
handled exactly, with no floating point anywhere.

>>> W = build_group(CoxeterSpec.named("A2"))
>>> W.order, W.length(W.w0)
(6, 3)
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Sequence

from .errors import InfiniteOrTooLarge, InvalidMatrix

DEFAULT_CAP = 50_000

GroupElement = int  # index into CoxeterGroup.words


# ---------------------------------------------------------------------------
# exact arithmetic in Z[2cos(2pi/L)]
# ---------------------------------------------------------------------------

def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    dlead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c, r = divmod(num[k + len(den) - 1], dlead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c
        for i, dc in enumerate(den):
            num[k + i] -= dc * c
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def _cyclotomic(n: int, _memo: dict[int, list[int]] = {}) -> list[int]:
    """The n-th cyclotomic polynomial, ascending integer coefficients."""
    if n in _memo:
        return _memo[n]
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact(poly, _cyclotomic(d))
    _memo[n] = poly
    return poly


def _minpoly_two_cos(L: int) -> list[int]:
    """Minimal polynomial of 2cos(2pi/L) over Q, monic, ascending."""
    if L == 1:
        return [-2, 1]
    if L == 2:
        return [2, 1]
    phi = _cyclotomic(L)
    e = (len(phi) - 1) // 2
    assert phi == phi[::-1] and len(phi) == 2 * e + 1, "cyclotomic not palindromic"
    # write x^-e Phi(x) in the basis p_j = x^j + x^-j, p_j = p_j(y) with y = x + 1/x
    p_prev = [2]
    p_cur = [0, 1]
    out = [0] * (e + 1)
    out[0] = phi[e]
    for j in range(1, e + 1):
        for i, c in enumerate(p_cur):
            out[i] += phi[e + j] * c
        if j < e:
            nxt = [0] + p_cur  # y * p_j
            for i, c in enumerate(p_prev):
                nxt[i] -= c
            p_prev, p_cur = p_cur, nxt
    assert out[-1] == 1, "folded minimal polynomial not monic"
    return out


class _Cyclo:
    """The order Z[theta], theta = 2cos(2pi/L); elements are int tuples."""

    __slots__ = ("L", "deg", "red", "zero", "one", "theta")

    def __init__(self, L: int):
        minpoly = _minpoly_two_cos(L)
        self.L = L
        self.deg = len(minpoly) - 1
        self.red = tuple(-c for c in minpoly[:-1])  # x^deg = sum red[i] x^i
        self.zero = (0,) * self.deg
        self.one = (1,) + (0,) * (self.deg - 1)
        if self.deg == 1:
            self.theta = (self.red[0],)
        else:
            self.theta = (0, 1) + (0,) * (self.deg - 2)

    def from_int(self, n: int) -> tuple[int, ...]:
        return (n,) + (0,) * (self.deg - 1)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.deg
        buf = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    buf[i + j] += x * y
        red = self.red
        for k in range(2 * d - 2, d - 1, -1):
            c = buf[k]
            if c:
                buf[k] = 0
                base = k - d
                for i, rc in enumerate(red):
                    buf[base + i] += c * rc
        return tuple(buf[:d])

    def two_cos_pi_over(self, m: int) -> tuple[int, ...]:
        """2cos(pi/m) as an element of Z[theta]; requires 2m | L for m >= 3."""
        if m == 2:
            return self.zero
        j, r = divmod(self.L, 2 * m)
        assert r == 0, "field does not contain 2cos(pi/m)"
        p_prev, p_cur = self.from_int(2), self.theta
        for _ in range(j - 1):
            p_prev, p_cur = p_cur, self.add(self.mul(self.theta, p_cur), self.neg(p_prev))
        return p_cur if j >= 1 else p_prev


# ---------------------------------------------------------------------------
# Coxeter matrix specification
# ---------------------------------------------------------------------------

_NAME_RE = re.compile(r"([ABD])(\d+)|H3|F4|I2\((\d+)\)")


def _named_matrix(name: str) -> tuple[tuple[int, ...], ...]:
    def chain(n: int, bonds: dict[tuple[int, int], int] = {}) -> tuple[tuple[int, ...], ...]:
        mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for i in range(n - 1):
            mat[i][i + 1] = mat[i + 1][i] = 3
        for (i, j), m in bonds.items():
            mat[i][j] = mat[j][i] = m
        return tuple(tuple(row) for row in mat)

    m = _NAME_RE.fullmatch(name)
    if not m:
        raise InvalidMatrix(f"unknown named Coxeter type {name!r}")
    if name == "H3":
        return ((1, 5, 2), (5, 1, 3), (2, 3, 1))
    if name == "F4":
        return chain(4, {(1, 2): 4})
    if m.group(3) is not None:
        order = int(m.group(3))
        if order < 2:
            raise InvalidMatrix("I2(m) needs m >= 2")
        return ((1, order), (order, 1))
    family, n = m.group(1), int(m.group(2))
    if family == "A":
        if n < 1:
            raise InvalidMatrix("A<n> needs n >= 1")
        return chain(n)
    if family == "B":
        if n < 2:
            raise InvalidMatrix("B<n> needs n >= 2")
        return chain(n, {(n - 2, n - 1): 4})
    # D: fork at node n-3 (0-based); D2 degenerates to A1 x A1, D3 to A3
    if n < 2:
        raise InvalidMatrix("D<n> needs n >= 2")
    if n == 2:
        return ((1, 2), (2, 1))
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n - 3):
        mat[i][i + 1] = mat[i + 1][i] = 3
    mat[n - 3][n - 2] = mat[n - 2][n - 3] = 3
    mat[n - 3][n - 1] = mat[n - 1][n - 3] = 3
    return tuple(tuple(row) for row in mat)


@dataclass(frozen=True)
class CoxeterSpec:
    """A Coxeter matrix, optionally carrying a named-type tag."""

    rank: int
    matrix: tuple[tuple[int, ...], ...]
    name: str | None = None

    def __post_init__(self):
        if self.rank < 0 or len(self.matrix) != self.rank:
            raise InvalidMatrix("matrix size does not match rank")
        for i, row in enumerate(self.matrix):
            if len(row) != self.rank:
                raise InvalidMatrix("matrix is not square")
            for j, m in enumerate(row):
                if not isinstance(m, int):
                    raise InvalidMatrix("matrix entries must be integers")
                if i == j and m != 1:
                    raise InvalidMatrix("diagonal entries must be 1")
                if i != j and m < 2:
                    raise InvalidMatrix("off-diagonal entries must be >= 2")
                if m != self.matrix[j][i]:
                    raise InvalidMatrix("matrix must be symmetric")

    @classmethod
    def named(cls, name: str) -> "CoxeterSpec":
        name = name.strip()
        matrix = _named_matrix(name)
        return cls(len(matrix), matrix, name)

    @classmethod
    def from_matrix(cls, rows: Iterable[Iterable[int]], name: str | None = None) -> "CoxeterSpec":
        matrix = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(len(matrix), matrix, name)

    @classmethod
    def from_text(cls, text: str) -> "CoxeterSpec":
        """Parse the matrix file format: rank on the first line, then the rows."""
        tokens = text.split()
        if not tokens:
            raise InvalidMatrix("empty matrix file")
        try:
            rank = int(tokens[0])
            values = [int(t) for t in tokens[1:]]
        except ValueError as exc:
            raise InvalidMatrix(f"non-integer entry in matrix file: {exc}") from exc
        if rank < 1:
            raise InvalidMatrix("rank must be a positive integer")
        if len(values) != rank * rank:
            raise InvalidMatrix(f"expected {rank}x{rank} entries, got {len(values)}")
        rows = [values[i * rank:(i + 1) * rank] for i in range(rank)]
        return cls.from_matrix(rows)

    def canonical_text(self) -> str:
        lines = [str(self.rank)]
        lines += [" ".join(str(m) for m in row) for row in self.matrix]
        return "\n".join(lines) + "\n"

    def matrix_hash(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()

    def describe(self) -> str:
        return self.name or f"rank-{self.rank} Coxeter matrix"


def coxeter_spec(arg: str) -> CoxeterSpec:
    """Accept either a named type or the text of a matrix file."""
    if "\n" in arg or arg.split() and arg.split()[0].isdigit():
        return CoxeterSpec.from_text(arg)
    return CoxeterSpec.named(arg)


# ---------------------------------------------------------------------------
# the enumerated group
# ---------------------------------------------------------------------------

class CoxeterGroup:
    """A fully enumerated finite Coxeter group.

    Elements are integers indexing ShortLex-sorted normal forms; index 0 is
    the identity.  The instance is immutable after construction and safe for
    concurrent readers; `cache` is a scratch dict used by other modules to
    memoize derived tables (bar images, cells, ...).
    """

    def __init__(self, spec: CoxeterSpec, words: list[tuple[int, ...]],
                 right_table: list[list[int]], left_table: list[list[int]],
                 inverse_table: list[int]):
        self.spec = spec
        self.rank = spec.rank
        self.generators = tuple(range(spec.rank))
        self.words = tuple(words)
        self.order = len(words)
        self.lengths = tuple(len(w) for w in words)
        self.right_table = tuple(tuple(r) for r in right_table)
        self.left_table = tuple(tuple(r) for r in left_table)
        self.inverse_table = tuple(inverse_table)
        self.e = 0
        self.w0 = self.order - 1
        if self.order > 1 and self.lengths[-1] == self.lengths[-2]:
            raise AssertionError("longest element is not unique")
        ldm, rdm = [], []
        for w in range(self.order):
            lw = self.lengths[w]
            ldm.append(sum(1 << s for s in self.generators
                           if self.lengths[self.left_table[w][s]] < lw))
            rdm.append(sum(1 << s for s in self.generators
                           if self.lengths[self.right_table[w][s]] < lw))
        self._ldesc = tuple(ldm)
        self._rdesc = tuple(rdm)
        self._bruhat: list[int] | None = None
        self.cache: dict = {}

    # -- basic queries -------------------------------------------------------

    def length(self, w: GroupElement) -> int:
        return self.lengths[w]

    def word(self, w: GroupElement) -> tuple[int, ...]:
        """ShortLex-least reduced word, 0-based generator indices."""
        return self.words[w]

    def sign(self, w: GroupElement) -> int:
        return -1 if self.lengths[w] & 1 else 1

    def left_mul(self, s: int, w: GroupElement) -> GroupElement:
        return self.left_table[w][s]

    def right_mul(self, w: GroupElement, s: int) -> GroupElement:
        return self.right_table[w][s]

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        if not (0 <= g < self.order and 0 <= h < self.order):
            raise IndexError("element handle out of range for this group")
        rt = self.right_table
        for s in self.words[h]:
            g = rt[g][s]
        return g

    def inverse(self, w: GroupElement) -> GroupElement:
        return self.inverse_table[w]

    def element_from_word(self, word: Iterable[int]) -> GroupElement:
        g = 0
        rt = self.right_table
        for s in word:
            g = rt[g][s]
        return g

    def is_left_descent(self, s: int, w: GroupElement) -> bool:
        return bool(self._ldesc[w] >> s & 1)

    def is_right_descent(self, s: int, w: GroupElement) -> bool:
        return bool(self._rdesc[w] >> s & 1)

    def left_descents(self, w: GroupElement) -> frozenset[int]:
        return _mask_to_set(self._ldesc[w])

    def right_descents(self, w: GroupElement) -> frozenset[int]:
        return _mask_to_set(self._rdesc[w])

    def descents(self, w: GroupElement, side: str = "left") -> frozenset[int]:
        if side == "left":
            return self.left_descents(w)
        if side == "right":
            return self.right_descents(w)
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def right_descent_mask(self, w: GroupElement) -> int:
        return self._rdesc[w]

    # -- orders --------------------------------------------------------------

    def bruhat_leq(self, x: GroupElement, y: GroupElement) -> bool:
        """Bruhat-Chevalley order, via the subword/lifting recursion."""
        if self._bruhat is None:
            self._build_bruhat()
        return bool(self._bruhat[y] >> x & 1)

    def _build_bruhat(self) -> None:
        n = self.order
        rt = self.right_table
        # per-generator right-descent bitmask over all elements
        desc_s = [0] * self.rank
        for w in range(n):
            mask = self._rdesc[w]
            while mask:
                low = mask & -mask
                desc_s[low.bit_length() - 1] |= 1 << w
                mask ^= low
        masks = [0] * n
        masks[0] = 1
        for y in range(1, n):
            s = self.words[y][-1]
            below = masks[rt[y][s]]
            img = 0
            mm = below
            while mm:
                low = mm & -mm
                img |= 1 << rt[low.bit_length() - 1][s]
                mm ^= low
            masks[y] = (img & desc_s[s]) | (below & ~desc_s[s])
        self._bruhat = masks

    def weak_left_leq(self, x: GroupElement, y: GroupElement) -> bool:
        """x is a prefix of y: y = w.x with lengths adding."""
        return self.lengths[self.multiply(y, self.inverse_table[x])] \
            == self.lengths[y] - self.lengths[x]

    # -- parabolic helpers -----------------------------------------------------

    def longest_element(self, J: Iterable[int]) -> GroupElement:
        J = sorted(set(J))
        w = 0
        rt = self.right_table
        while True:
            for s in J:
                ws = rt[w][s]
                if self.lengths[ws] > self.lengths[w]:
                    w = ws
                    break
            else:
                return w

    def parabolic_elements(self, J: Iterable[int]) -> tuple[GroupElement, ...]:
        """All elements of the standard parabolic subgroup <J>, sorted."""
        J = sorted(set(J))
        rt = self.right_table
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for s in J:
                    ws = rt[w][s]
                    if ws not in seen:
                        seen.add(ws)
                        nxt.append(ws)
            frontier = nxt
        return tuple(sorted(seen))

    def poincare(self) -> tuple[int, ...]:
        """Element counts by length (coefficients of the Poincare polynomial)."""
        counts = [0] * (self.lengths[-1] + 1)
        for l in self.lengths:
            counts[l] += 1
        return tuple(counts)

    def describe(self) -> str:
        return self.spec.describe()

    def __repr__(self) -> str:
        return f"<CoxeterGroup {self.describe()} of order {self.order}>"


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def build_group(spec: CoxeterSpec, cap: int = DEFAULT_CAP) -> CoxeterGroup:
    """Enumerate the group of `spec` breadth-first in ShortLex order.

    Raises InfiniteOrTooLarge once more than `cap` elements appear, which in
    particular catches infinite Coxeter matrices.
    """
    rank = spec.rank
    if rank == 0:
        return CoxeterGroup(spec, [()], [[]], [[]], [0])

    ms = {m for row in spec.matrix for m in row if m >= 3}
    L = lcm(*(2 * m for m in ms)) if ms else 2
    F = _Cyclo(L)
    gammas = {m: F.two_cos_pi_over(m) for m in ms | {2}}

    gens = []
    for s in range(rank):
        mat = [[F.one if i == j else F.zero for j in range(rank)] for i in range(rank)]
        mat[s][s] = F.from_int(-1)
        for t in range(rank):
            if t != s:
                mat[s][t] = gammas[spec.matrix[s][t]]
        gens.append(tuple(tuple(row) for row in mat))

    def mat_mul(a, b):
        n = rank
        out = []
        for i in range(n):
            row = []
            arow = a[i]
            for j in range(n):
                acc = F.zero
                for k in range(n):
                    x = arow[k]
                    if x != F.zero:
                        acc = F.add(acc, F.mul(x, b[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    identity = tuple(tuple(F.one if i == j else F.zero for j in range(rank))
                     for i in range(rank))
    mats = [identity]
    words: list[tuple[int, ...]] = [()]
    index = {identity: 0}
    right_table: list[list[int]] = []
    i = 0
    while i < len(mats):
        row = []
        for s in range(rank):
            prod = mat_mul(mats[i], gens[s])
            j = index.get(prod)
            if j is None:
                if len(mats) >= cap:
                    raise InfiniteOrTooLarge(
                        f"enumeration of {spec.describe()} exceeded the cap of "
                        f"{cap} elements (group is infinite or cap too small)")
                j = len(mats)
                index[prod] = j
                mats.append(prod)
                words.append(words[i] + (s,))
            row.append(j)
        right_table.append(row)
        i += 1

    # BFS with ordered children emits ShortLex normal forms in order
    for a, b in zip(words, words[1:]):
        assert (len(a), a) < (len(b), b), "enumeration broke ShortLex order"

    def walk(start: int, word: tuple[int, ...]) -> int:
        g = start
        for s in word:
            g = right_table[g][s]
        return g

    left_table = [[walk(right_table[0][s], words[w]) for s in range(rank)]
                  for w in range(len(mats))]
    inverse_table = [walk(0, words[w][::-1]) for w in range(len(mats))]
    return CoxeterGroup(spec, words, right_table, left_table, inverse_table)
