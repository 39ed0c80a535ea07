"""Type A: partitions, standard tableaux, Robinson-Schensted insertion, the
Murphy family, Specht modules of the symmetric group Hecke algebra, and the
transition between the Murphy and W-graph bases.

Symmetric group conventions.  W = S_n acts on {1..n} with generators
s_i = (i, i+1); group elements compose as functions, and the one-line form
of w is (w(1), ..., w(n)).  Right multiplication by s_i swaps positions
i, i+1 of the one-line form; left multiplication swaps the values i, i+1.

Tableau conventions.  A partition shape is filled with 1..n; t_super(shape)
reads 1..n along rows, t_sub(shape) down columns.  For a standard tableau:

    I(t)  = { i : i+1 is in a strictly lower row than i },
    I0(t) = { i in I(t) : i+1 is strictly left of i },
    I1(t) = { i in I(t) : i+1 is directly below i },

and each generator index lands in exactly one of I0(t), I1(t), I0(t'),
I1(t') (t' the transposed tableau), which reproduces the four-way E_J
classification for J = J(shape), the row stabilizer generators of t_super.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from math import factorial

from .cellular import CellularDatum, murphy_element
from .coxeter import CoxeterGroup, CoxeterSpec, GroupElement, build_group
from .errors import NotRowStandard, SizeMismatch, TooLarge
from .hecke import Coords, HeckeVector
from .laurent import ONE, ZERO, LaurentInt
from .linalg import ExactSpan
from .parabolic import MINUS, PLUS, ZERO_MINUS, ZERO_PLUS, ParabolicSystem
from .specht import RelativeKLTable, SpechtModuleJ, relative_kl
from .wgraph import Matrix, WGraphDatum, build_wgraph, mat_mul, tau_columns

Partition = tuple[int, ...]
Tableau = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, reverse-lexicographic: (n) first, (1,...,1) last."""
    if n < 1:
        raise ValueError("partitions(n) needs n >= 1")

    def gen(rest: int, maxpart: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(n, n))


def is_partition(shape) -> bool:
    return (all(isinstance(p, int) and p > 0 for p in shape)
            and all(a >= b for a, b in zip(shape, shape[1:])))


def conjugate_partition(shape: Partition) -> Partition:
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p > c) for c in range(shape[0]))


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """True iff mu dominates lam: every prefix sum of lam is <= that of mu."""
    if sum(lam) != sum(mu):
        raise SizeMismatch(f"{lam} and {mu} partition different integers")
    acc_l = acc_m = 0
    for i in range(max(len(lam), len(mu))):
        acc_l += lam[i] if i < len(lam) else 0
        acc_m += mu[i] if i < len(mu) else 0
        if acc_l > acc_m:
            return False
    return True


# ---------------------------------------------------------------------------
# tableaux
# ---------------------------------------------------------------------------

def t_super(shape: Partition) -> Tableau:
    """Row-reading filling: 1..n left to right along successive rows."""
    out, nxt = [], 1
    for part in shape:
        out.append(tuple(range(nxt, nxt + part)))
        nxt += part
    return tuple(out)


def t_sub(shape: Partition) -> Tableau:
    """Column-reading filling: 1..n down successive columns."""
    conj = conjugate_partition(shape)
    out = [[0] * part for part in shape]
    nxt = 1
    for c, height in enumerate(conj):
        for r in range(height):
            out[r][c] = nxt
            nxt += 1
    return tuple(tuple(row) for row in out)


def tableau_shape(t: Tableau) -> Partition:
    return tuple(len(row) for row in t)


def is_row_standard(t: Tableau) -> bool:
    n = sum(len(row) for row in t)
    entries = sorted(x for row in t for x in row)
    if entries != list(range(1, n + 1)) or not is_partition(tableau_shape(t)):
        return False
    return all(all(a < b for a, b in zip(row, row[1:])) for row in t)


def is_standard(t: Tableau) -> bool:
    if not is_row_standard(t):
        return False
    for r in range(1, len(t)):
        if any(t[r][c] <= t[r - 1][c] for c in range(len(t[r]))):
            return False
    return True


def conjugate_tableau(t: Tableau) -> Tableau:
    shape = tableau_shape(t)
    conj = conjugate_partition(shape)
    return tuple(tuple(t[r][c] for r in range(height)) for c, height in enumerate(conj))


def standard_tableaux(shape: Partition) -> tuple[Tableau, ...]:
    """All standard tableaux of the shape, in a deterministic order
    (values placed in increasing order, earlier rows first)."""
    if not is_partition(shape):
        raise ValueError(f"{shape} is not a partition")
    n = sum(shape)
    rows = len(shape)
    fill = [len(row) for row in ()] or [0] * rows
    out: list[Tableau] = []
    cells: list[list[int]] = [[] for _ in range(rows)]

    def place(value: int):
        if value > n:
            out.append(tuple(tuple(row) for row in cells))
            return
        for r in range(rows):
            c = fill[r]
            if c < shape[r] and (r == 0 or fill[r - 1] > c):
                cells[r].append(value)
                fill[r] += 1
                place(value + 1)
                fill[r] -= 1
                cells[r].pop()
        return

    place(1)
    return tuple(out)


def tableau_descents(t: Tableau) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """(I, I0, I1) of a standard tableau, as sets of 1-based indices i
    (referring to the pair of entries i, i+1 and the generator s_i)."""
    n = sum(len(row) for row in t)
    position = {}
    for r, row in enumerate(t):
        for c, v in enumerate(row):
            position[v] = (r, c)
    I, I0, I1 = set(), set(), set()
    for i in range(1, n):
        r1, c1 = position[i]
        r2, c2 = position[i + 1]
        if r2 > r1:
            I.add(i)
            if c2 == c1 and r2 == r1 + 1:
                I1.add(i)
            elif c2 < c1:
                I0.add(i)
            else:
                raise AssertionError("descent neither left nor directly below")
    return frozenset(I), frozenset(I0), frozenset(I1)


def row_reading(t: Tableau) -> tuple[int, ...]:
    return tuple(x for row in t for x in row)


# ---------------------------------------------------------------------------
# permutations and Robinson-Schensted
# ---------------------------------------------------------------------------

def oneline(group: CoxeterGroup, w: GroupElement) -> tuple[int, ...]:
    """One-line form (w(1), ..., w(n)) of an element of the type-A group."""
    perm = list(range(1, group.rank + 2))
    for s in group.words[w]:
        perm[s], perm[s + 1] = perm[s + 1], perm[s]
    return tuple(perm)


def element_from_oneline(group: CoxeterGroup, perm) -> GroupElement:
    """Inverse of `oneline`, by sorting with adjacent position swaps."""
    p = list(perm)
    if sorted(p) != list(range(1, group.rank + 2)):
        raise ValueError(f"{perm} is not a permutation of 1..{group.rank + 1}")
    letters = []
    done = False
    while not done:
        done = True
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                letters.append(i)
                done = False
    return group.element_from_word(reversed(letters))


def rs_insert(w, group: CoxeterGroup | None = None) -> tuple[Tableau, Tableau]:
    """Robinson-Schensted row insertion.

    `w` is a one-line permutation of 1..n (or a group element when `group`
    is given).  Returns the pair (P, Q) of standard tableaux of equal shape;
    Q records insertion order, so Q(w) = P(w^-1).
    """
    if group is not None and isinstance(w, int):
        word = oneline(group, w)
    else:
        word = tuple(w)
    rows: list[list[int]] = []
    qrows: list[list[int]] = []
    for step, value in enumerate(word, start=1):
        cur = value
        r = 0
        while True:
            if r == len(rows):
                rows.append([cur])
                qrows.append([step])
                break
            idx = bisect_right(rows[r], cur)
            if idx == len(rows[r]):
                rows[r].append(cur)
                qrows[r].append(step)
                break
            rows[r][idx], cur = cur, rows[r][idx]
            r += 1
    return tuple(tuple(r) for r in rows), tuple(tuple(r) for r in qrows)


# ---------------------------------------------------------------------------
# the type-A context
# ---------------------------------------------------------------------------

class TypeAContext:
    """S_n with all of its per-shape parabolic and Specht data, built lazily
    and shared (one CellularDatum per context)."""

    def __init__(self, n: int, validate_drops: bool = True):
        if n < 1:
            raise ValueError("TypeAContext needs n >= 1")
        self.n = n
        if n == 1:
            self.group = build_group(CoxeterSpec(0, ()))
        else:
            self.group = build_group(CoxeterSpec.named(f"A{n - 1}"))
        self.datum = CellularDatum(self.group)
        self.validate_drops = validate_drops
        self._modules: dict[Partition, SpechtModuleJ] = {}
        self._tables: dict[Partition, RelativeKLTable] = {}
        self._graphs: dict[Partition, WGraphDatum] = {}
        self._tableaux: dict[Partition, tuple[Tableau, ...]] = {}
        self._cells: dict[Partition, tuple[GroupElement, ...]] = {}

    def check_shape(self, shape) -> Partition:
        shape = tuple(shape)
        if not is_partition(shape) or sum(shape) != self.n:
            raise ValueError(f"{shape} is not a partition of {self.n}")
        return shape

    def J_lambda(self, shape: Partition) -> tuple[int, ...]:
        """Generators of the row stabilizer of t_super(shape), 0-based."""
        shape = self.check_shape(shape)
        J, start = [], 1
        for part in shape:
            J.extend(i - 1 for i in range(start, start + part - 1))
            start += part
        return tuple(J)

    def w_J(self, shape: Partition) -> GroupElement:
        return self.system(shape).wJ

    def system(self, shape: Partition) -> ParabolicSystem:
        return self.datum.system(self.J_lambda(shape))

    def module(self, shape: Partition) -> SpechtModuleJ:
        shape = self.check_shape(shape)
        mod = self._modules.get(shape)
        if mod is None:
            mod = SpechtModuleJ(self.system(shape), datum=self.datum,
                                validate_drops=self.validate_drops)
            self._modules[shape] = mod
        return mod

    def rel_table(self, shape: Partition) -> RelativeKLTable:
        shape = self.check_shape(shape)
        table = self._tables.get(shape)
        if table is None:
            table = self._tables[shape] = relative_kl(self.module(shape))
        return table

    def wgraph(self, shape: Partition) -> WGraphDatum:
        shape = self.check_shape(shape)
        graph = self._graphs.get(shape)
        if graph is None:
            graph = self._graphs[shape] = build_wgraph(self.module(shape),
                                                       self.rel_table(shape))
        return graph

    def coset_word(self, t: Tableau) -> GroupElement:
        """d(t): the minimal coset representative with d(t) . t_super = t."""
        t = tuple(tuple(row) for row in t)
        if not is_row_standard(t):
            raise NotRowStandard(f"{t} is not row standard")
        d = element_from_oneline(self.group, row_reading(t))
        jmask = sum(1 << s for s in self.J_lambda(tableau_shape(t)))
        assert self.group.right_descent_mask(d) & jmask == 0, \
            "coset word of a row-standard tableau left D_J"
        return d

    def w_lambda(self, shape: Partition) -> GroupElement:
        """The element with t_sub = w_lambda . t_super, i.e. d(t_sub)."""
        return self.coset_word(t_sub(self.check_shape(shape)))

    def tableaux(self, shape: Partition) -> tuple[Tableau, ...]:
        """Standard tableaux sorted by (length of d(t), ShortLex of d(t))."""
        shape = self.check_shape(shape)
        cached = self._tableaux.get(shape)
        if cached is None:
            cached = tuple(sorted(standard_tableaux(shape), key=self.coset_word))
            self._tableaux[shape] = cached
        return cached

    def basis_element(self, t: Tableau) -> GroupElement:
        """The E_J element d(t) . w_J attached to a standard tableau."""
        shape = tableau_shape(t)
        return self.group.multiply(self.coset_word(t), self.w_J(shape))

    def specht_cell(self, shape: Partition) -> tuple[GroupElement, ...]:
        """The left cell of w_J inside E_{J(shape)}: exactly the tableau
        images d(t).w_J.  For n <= 4 this is all of E_J; from n = 5 on the
        descent class E_J can be a union of several cells (e.g. shape (3,2):
        |E_J| = 9 versus 5 standard tableaux) and the Specht module is the
        w_J-cell block.  Verified against the module W-graph's own cell
        decomposition."""
        shape = self.check_shape(shape)
        cached = self._cells.get(shape)
        if cached is None:
            from .wgraph import kl_cells
            elems = tuple(sorted(self.basis_element(t) for t in self.tableaux(shape)))
            module = self.module(shape)
            decomposition = kl_cells(self.wgraph(shape))
            wj_pos = module.pos[self.w_J(shape)]
            for cell in decomposition.cells:
                if wj_pos in cell:
                    cell_elems = tuple(sorted(module.basis[i] for i in cell))
                    break
            if cell_elems != elems:
                raise AssertionError(
                    f"tableau images do not form the w_J cell for shape {shape}")
            self._cells[shape] = cached = elems
        return cached


def ej_lambda(ctx: TypeAContext, shape: Partition) -> tuple[GroupElement, ...]:
    """The prefix set {d . w_J : d a prefix of w_lambda}.

    This is the left cell of w_J and is in bijection with the standard
    tableaux via t -> d(t).w_J (both facts checked here).  It is contained
    in the descent class E_{J(shape)} and equals it for n <= 4; from n = 5
    on the containment can be strict (ej_lambda_matches_descent_class
    reports which), in which case the Specht module is the cell block of
    the E_J module.
    """
    shape = ctx.check_shape(shape)
    group = ctx.group
    wl = ctx.w_lambda(shape)
    wj = ctx.w_J(shape)
    elems = tuple(sorted(group.multiply(d, wj) for d in range(group.order)
                         if group.weak_left_leq(d, wl)))
    if not set(elems) <= set(ctx.system(shape).EJ):
        raise AssertionError("prefix set escaped the descent class E_J")
    if elems != ctx.specht_cell(shape):
        raise AssertionError("prefix set is not the w_J cell")
    tab_elems = sorted(ctx.basis_element(t) for t in ctx.tableaux(shape))
    if tab_elems != list(elems):
        raise AssertionError("tableaux do not biject onto the prefix set")
    return elems


def ej_lambda_matches_descent_class(ctx: TypeAContext, shape: Partition) -> bool:
    """Whether the prefix set is *all* of E_{J(shape)} (true for n <= 4;
    fails for example at shape (3,2) of 5, where |E_J| = 9 > 5)."""
    return ej_lambda(ctx, shape) == ctx.system(ctx.check_shape(shape)).EJ


def ej_classification_by_tableaux(ctx: TypeAContext, shape: Partition,
                                  s: int) -> dict[str, list[GroupElement]]:
    """The four classes of E_{J(shape)} under s (0-based generator), read off
    the tableau descent data: minus <-> s+1 in I0(t'), plus <-> I0(t),
    zeroMinus <-> I1(t'), zeroPlus <-> I1(t)."""
    shape = ctx.check_shape(shape)
    i = s + 1
    out: dict[str, list[GroupElement]] = {MINUS: [], PLUS: [], ZERO_MINUS: [], ZERO_PLUS: []}
    for t in ctx.tableaux(shape):
        _, i0, i1 = tableau_descents(t)
        _, i0c, i1c = tableau_descents(conjugate_tableau(t))
        if i in i0c:
            cls = MINUS
        elif i in i0:
            cls = PLUS
        elif i in i1c:
            cls = ZERO_MINUS
        elif i in i1:
            cls = ZERO_PLUS
        else:
            raise AssertionError("generator escaped the four tableau classes")
        out[cls].append(ctx.basis_element(t))
    return out


# ---------------------------------------------------------------------------
# Murphy family and Specht module matrices
# ---------------------------------------------------------------------------

def murphy_basis(ctx: TypeAContext, cap: int = 6
                 ) -> list[tuple[Partition, Tableau, Tableau, HeckeVector]]:
    """All m_{st} = T_{d(s)} C_{w_J} T_{d(t)^{-1}} over pairs of standard
    tableaux of equal shape; sum over shapes of (count)^2 = n!."""
    if ctx.n > cap:
        raise TooLarge(f"murphy_basis is capped at n = {cap}")
    out = []
    for shape in partitions(ctx.n):
        system = ctx.system(shape)
        tabs = ctx.tableaux(shape)
        for s_tab in tabs:
            ds = ctx.coset_word(s_tab)
            for t_tab in tabs:
                dt = ctx.coset_word(t_tab)
                out.append((shape, s_tab, t_tab, murphy_element(system, ds, dt)))
    return out


def murphy_rank(ctx: TypeAContext, cap: int = 5) -> int:
    """Exact rank of the Murphy family over Frac(Z[q, q^-1])."""
    if ctx.n > cap:
        raise TooLarge(f"murphy_rank full elimination is capped at n = {cap}")
    span = ExactSpan()
    for _shape, _s, _t, vec in murphy_basis(ctx):
        span.add(vec.coords())
    return span.rank


@dataclass
class TransitionData:
    """Transition between the Murphy basis {m_t} and the W-graph basis of one
    Specht module: columns of P (C in terms of m) and of its inverse, over
    the tableau order."""

    shape: Partition
    tableaux: tuple[Tableau, ...]
    P: Matrix
    P_inv: Matrix


def transition_matrices(ctx: TypeAContext, shape: Partition) -> TransitionData:
    shape = ctx.check_shape(shape)
    table = ctx.rel_table(shape)
    module = table.module
    tabs = ctx.tableaux(shape)
    elems = [ctx.basis_element(t) for t in tabs]
    pos = {x: i for i, x in enumerate(elems)}
    P: Matrix = []
    P_inv: Matrix = []
    for x in elems:
        P.append({pos[y]: a for y, a in table.P[x].items()})
        inv_col: Coords = {pos[x]: ONE}
        for y, a in table.q_cols()[x].items():
            inv_col[pos[y]] = a
        P_inv.append(inv_col)
    return TransitionData(shape, tabs, P, P_inv)


def specht_action_typea(ctx: TypeAContext, shape: Partition, s: int) -> Matrix:
    """The matrix of T_s on the Specht module in the Murphy basis {m_t},
    columns over the tableau order: conjugate the W-graph action by the
    transition matrix, so the unspecified lower coefficients of the
    q*m_t case come out exact."""
    shape = ctx.check_shape(shape)
    trans = transition_matrices(ctx, shape)
    graph = ctx.wgraph(shape)
    module = ctx.module(shape)
    # permute tau from module order to tableau order
    elems = [ctx.basis_element(t) for t in trans.tableaux]
    to_tab = {module.pos[x]: i for i, x in enumerate(elems)}
    tau = tau_columns(graph, s)
    tau_tab: Matrix = [
        {to_tab[i]: a for i, a in tau[module.pos[x]].items()} for x in elems
    ]
    return mat_mul(mat_mul(trans.P, tau_tab), trans.P_inv)
