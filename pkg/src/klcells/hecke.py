"""The one-parameter Hecke algebra of a finite Coxeter group, in its T-basis.

Conventions (fixed throughout the package):

    T_s^2 = 1 + (q - q^-1) T_s,
    T_s T_w = T_{sw}                      if l(sw) > l(w),
    T_s T_w = T_{sw} + (q - q^-1) T_w     if l(sw) < l(w),

over A = Z[q, q^-1].  The bar involution sends q -> q^-1 and T_w -> the
inverse of T_{w^-1}; the star map is the A-linear anti-involution
T_w -> T_{w^-1}.

The Kazhdan-Lusztig basis used here is the one normalized by
bar(C_w) = C_w and C_w = T_w + sum_{y<w} p_{y,w} T_y with p_{y,w} in qZ[q];
p relates to the classical polynomials P_{y,w} by
p_{y,w}(q) = (-q)^{l(w)-l(y)} bar(P_{y,w}(q^2)) (see convert_kl_convention).
mu(y, w) is the coefficient of q in -p_{y,w}.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping, Union

from .coxeter import CoxeterGroup, GroupElement
from .errors import MixedGroups
from .laurent import ONE, Q, QINV, ZERO, LaurentInt, q_power

_DELTA = Q - QINV          # q - q^-1
_DELTA_BAR = QINV - Q      # q^-1 - q
_MINUS_Q = -Q
_MINUS_QINV = -QINV

CACHE_FORMAT_VERSION = 1

Coords = dict[int, LaurentInt]


def _dadd(out: Coords, key: int, val: LaurentInt) -> None:
    cur = out.get(key)
    if cur is None:
        if val:
            out[key] = val
    else:
        cur = cur + val
        if cur:
            out[key] = cur
        else:
            del out[key]


class HeckeVector:
    """A finite A-linear combination of T-basis elements of one group."""

    __slots__ = ("group", "_c")

    def __init__(self, group: CoxeterGroup,
                 coords: Union[Mapping[int, LaurentInt], Iterable[tuple[int, LaurentInt]]] = ()):
        items = coords.items() if isinstance(coords, Mapping) else coords
        clean: Coords = {}
        for w, a in items:
            if not isinstance(a, LaurentInt):
                a = LaurentInt(a)
            if a:
                _dadd(clean, w, a)
        self.group = group
        self._c = clean

    @classmethod
    def _raw(cls, group: CoxeterGroup, coords: Coords) -> "HeckeVector":
        h = object.__new__(cls)
        h.group = group
        h._c = coords
        return h

    @classmethod
    def zero(cls, group: CoxeterGroup) -> "HeckeVector":
        return cls._raw(group, {})

    def items(self) -> tuple[tuple[int, LaurentInt], ...]:
        return tuple(sorted(self._c.items()))

    def coords(self) -> Coords:
        return dict(self._c)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._c))

    def __getitem__(self, w: int) -> LaurentInt:
        return self._c.get(w, ZERO)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeVector):
            return NotImplemented
        return self.group is other.group and self._c == other._c

    def __hash__(self):
        raise TypeError("HeckeVector is not hashable")

    def _check_same(self, other: "HeckeVector") -> None:
        if self.group is not other.group:
            raise MixedGroups("operands live in different Coxeter groups")

    def __add__(self, other: "HeckeVector") -> "HeckeVector":
        self._check_same(other)
        out = dict(self._c)
        for w, a in other._c.items():
            _dadd(out, w, a)
        return HeckeVector._raw(self.group, out)

    def __sub__(self, other: "HeckeVector") -> "HeckeVector":
        self._check_same(other)
        out = dict(self._c)
        for w, a in other._c.items():
            _dadd(out, w, -a)
        return HeckeVector._raw(self.group, out)

    def __neg__(self) -> "HeckeVector":
        return HeckeVector._raw(self.group, {w: -a for w, a in self._c.items()})

    def __mul__(self, scalar: Union[LaurentInt, int]) -> "HeckeVector":
        if isinstance(scalar, int):
            scalar = LaurentInt(scalar)
        if not isinstance(scalar, LaurentInt):
            return NotImplemented
        if not scalar:
            return HeckeVector.zero(self.group)
        return HeckeVector._raw(self.group, {w: a * scalar for w, a in self._c.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for w, a in self.items():
            word = "".join(str(s + 1) for s in self.group.words[w]) or "e"
            parts.append(f"({a})*T[{word}]")
        return " + ".join(parts)


def t_basis(group: CoxeterGroup, w: GroupElement) -> HeckeVector:
    return HeckeVector._raw(group, {w: ONE})


def _gen_mul_left(group: CoxeterGroup, s: int, coords: Coords) -> Coords:
    lt = group.left_table
    lengths = group.lengths
    out: Coords = {}
    for w, a in coords.items():
        sw = lt[w][s]
        _dadd(out, sw, a)
        if lengths[sw] < lengths[w]:
            _dadd(out, w, a * _DELTA)
    return out


def _gen_mul_right(group: CoxeterGroup, s: int, coords: Coords) -> Coords:
    rt = group.right_table
    lengths = group.lengths
    out: Coords = {}
    for w, a in coords.items():
        ws = rt[w][s]
        _dadd(out, ws, a)
        if lengths[ws] < lengths[w]:
            _dadd(out, w, a * _DELTA)
    return out


def t_mul_generator(s: int, h: HeckeVector, side: str = "left") -> HeckeVector:
    """T_s . h (side='left') or h . T_s (side='right')."""
    if side == "left":
        return HeckeVector._raw(h.group, _gen_mul_left(h.group, s, h._c))
    if side == "right":
        return HeckeVector._raw(h.group, _gen_mul_right(h.group, s, h._c))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def t_mul(h1: HeckeVector, h2: HeckeVector) -> HeckeVector:
    """The product in the Hecke algebra."""
    if h1.group is not h2.group:
        raise MixedGroups("cannot multiply Hecke elements over different groups")
    group = h1.group
    out: Coords = {}
    for w, a in h1._c.items():
        cur = h2._c
        for s in reversed(group.words[w]):
            cur = _gen_mul_left(group, s, cur)
        for y, c in cur.items():
            _dadd(out, y, a * c)
    return HeckeVector._raw(group, out)


def _bar_t(group: CoxeterGroup, w: GroupElement) -> Coords:
    """T-coordinates of bar(T_w) = (T_{w^-1})^-1, memoized per group."""
    memo: dict[int, Coords] = group.cache.setdefault("bar_t", {0: {0: ONE}})
    missing = []
    v = w
    while v not in memo:
        missing.append(v)
        v = group.left_table[v][group.words[v][0]]
    for u in reversed(missing):
        s = group.words[u][0]
        base = memo[group.left_table[u][s]]
        # multiply by T_s^-1 = T_s + (q^-1 - q) on the left
        out = _gen_mul_left(group, s, base)
        for k, a in base.items():
            _dadd(out, k, a * _DELTA_BAR)
        memo[u] = out
    return memo[w]


def bar(h: HeckeVector) -> HeckeVector:
    """The bar involution: coefficients barred, T_w -> (T_{w^-1})^-1."""
    group = h.group
    out: Coords = {}
    for w, a in h._c.items():
        ab = a.bar()
        for y, c in _bar_t(group, w).items():
            _dadd(out, y, ab * c)
    return HeckeVector._raw(group, out)


def star(h: HeckeVector) -> HeckeVector:
    """The A-linear anti-involution T_w -> T_{w^-1}."""
    inv = h.group.inverse_table
    return HeckeVector._raw(h.group, {inv[w]: a for w, a in h._c.items()})


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig basis
# ---------------------------------------------------------------------------

class KLTable:
    """All polynomials p_{y,w} and integers mu(y,w) for one group.

    Columns are stored per w and include the diagonal coefficient 1, so
    `column(w)` is literally the T-expansion of C_w.
    """

    def __init__(self, group: CoxeterGroup, columns: list[Coords]):
        self.group = group
        self._cols = columns
        self._mu = [{y: -a.coeff(1) for y, a in col.items() if y != w and a.coeff(1)}
                    for w, col in enumerate(columns)]

    def column(self, w: GroupElement) -> Coords:
        return dict(self._cols[w])

    def c(self, w: GroupElement) -> HeckeVector:
        """The basis element C_w as a T-basis vector."""
        return HeckeVector._raw(self.group, dict(self._cols[w]))

    def p(self, y: GroupElement, w: GroupElement) -> LaurentInt:
        return self._cols[w].get(y, ZERO)

    def mu(self, y: GroupElement, w: GroupElement) -> int:
        """mu(y, w) for y < w; 0 when incomparable or p has no linear term."""
        if y == w:
            raise ValueError("mu(y, w) requires y != w")
        return self._mu[w].get(y, 0)

    def mu_col(self, w: GroupElement) -> dict[int, int]:
        return dict(self._mu[w])

    def to_payload(self) -> dict:
        cols = []
        for w, col in enumerate(self._cols):
            entries = [[y, [list(t) for t in p.to_pairs()]]
                       for y, p in sorted(col.items()) if y != w]
            cols.append([w, entries])
        return {
            "format_version": CACHE_FORMAT_VERSION,
            "kind": "kl-table",
            "matrix_hash": self.group.spec.matrix_hash(),
            "order": self.group.order,
            "columns": cols,
        }

    @classmethod
    def from_payload(cls, group: CoxeterGroup, payload: dict) -> "KLTable":
        cols: list[Coords] = [{} for _ in range(group.order)]
        for w, entries in payload["columns"]:
            col = {int(y): LaurentInt.from_pairs(pairs) for y, pairs in entries}
            col[int(w)] = ONE
            cols[int(w)] = col
        return cls(group, cols)


def mu(table: KLTable, y: GroupElement, w: GroupElement) -> int:
    return table.mu(y, w)


def _compute_kl_columns(group: CoxeterGroup) -> list[Coords]:
    n = group.order
    lengths = group.lengths
    lt = group.left_table
    cols: list[Coords] = [{} for _ in range(n)]
    mus: list[dict[int, int]] = [{} for _ in range(n)]
    cols[0] = {0: ONE}
    for w in range(1, n):
        s = min(group.left_descents(w))
        v = lt[w][s]
        # C_w = (T_s - q) C_v - sum over z < v with sz < z of mu(z, v) C_z
        col = _gen_mul_left(group, s, cols[v])
        for y, a in cols[v].items():
            _dadd(col, y, a * _MINUS_Q)
        for z, m in mus[v].items():
            if lengths[lt[z][s]] < lengths[z]:
                for y, a in cols[z].items():
                    _dadd(col, y, a * (-m))
        if col.get(w) != ONE:
            raise AssertionError("KL recursion lost unitriangularity")
        cols[w] = col
        mus[w] = {y: -a.coeff(1) for y, a in col.items() if y != w and a.coeff(1)}
    return cols


def kl_basis(group: CoxeterGroup, cache_dir: str | Path | None = None) -> KLTable:
    """The table of all p_{y,w}, computed by the descent recursion.

    When `cache_dir` is given, a JSON cache keyed by the Coxeter-matrix hash
    is consulted and refreshed; stale or malformed caches are recomputed.
    """
    if cache_dir is not None:
        cached = load_kl_cache(group, cache_dir)
        if cached is not None:
            return cached
    table = KLTable(group, _compute_kl_columns(group))
    if cache_dir is not None:
        save_kl_cache(table, cache_dir)
    return table


def kl_basis_by_bar_solve(group: CoxeterGroup) -> KLTable:
    """Independent construction of the C-basis: solve bar-invariance plus
    triangularity with zero constant terms, degree by degree.

    Used as an oracle against the recursion in `kl_basis`.
    """
    from .linalg import solve_bar_unitriangular
    r_cols = {w: _bar_t(group, w) for w in range(group.order)}
    cols = solve_bar_unitriangular(range(group.order), r_cols)
    return KLTable(group, [cols[w] for w in range(group.order)])


def c_mul_generator(table: KLTable, s: int, w: GroupElement) -> Coords:
    """T_s . C_w expressed in the C-basis (element -> coefficient)."""
    group = table.group
    lengths = group.lengths
    lt = group.left_table
    sw = lt[w][s]
    if lengths[sw] < lengths[w]:
        return {w: _MINUS_QINV}
    out: Coords = {w: Q, sw: ONE}
    for z, m in table.mu_col(w).items():
        if lengths[lt[z][s]] < lengths[z]:
            out[z] = LaurentInt(m)
    return out


def convert_kl_convention(P: LaurentInt, length_diff: int) -> LaurentInt:
    """Translate a classical Kazhdan-Lusztig polynomial P_{y,w} to p_{y,w}:
    substitute q -> q^2, bar, then multiply by (-q)^(l(w)-l(y))."""
    if length_diff < 0:
        raise ValueError("length difference must be nonnegative")
    if not P.is_polynomial():
        raise ValueError("classical KL polynomials live in Z[q]")
    sign = -1 if length_diff % 2 else 1
    return P.scale_exponents(2).bar() * q_power(length_diff, sign)


# ---------------------------------------------------------------------------
# on-disk cache
# ---------------------------------------------------------------------------

def kl_cache_path(cache_dir: str | Path, group: CoxeterGroup) -> Path:
    return Path(cache_dir) / f"kl-{group.spec.matrix_hash()[:16]}.json"


def save_kl_cache(table: KLTable, cache_dir: str | Path) -> Path:
    path = kl_cache_path(cache_dir, table.group)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(table.to_payload(), sort_keys=True) + "\n", encoding="utf-8")
    return path


def load_kl_cache(group: CoxeterGroup, cache_dir: str | Path) -> KLTable | None:
    """Load a cached table; returns None on a missing, stale or malformed file.

    Value-level corruption of a structurally valid file is not detectable
    here by design; the `verify` suites re-check bar-invariance and catch it.
    """
    path = kl_cache_path(cache_dir, group)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        if payload.get("format_version") != CACHE_FORMAT_VERSION:
            return None
        if payload.get("kind") != "kl-table":
            return None
        if payload.get("matrix_hash") != group.spec.matrix_hash():
            return None
        if payload.get("order") != group.order:
            return None
        return KLTable.from_payload(group, payload)
    except (OSError, ValueError, KeyError, TypeError):
        return None
