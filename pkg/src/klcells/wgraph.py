"""W-graphs, the Kazhdan-Lusztig preorder, cells, and cell modules.

A W-graph datum is a vertex set with descent sets I and integer edge weights
mu; it induces operators

    tau_s(v) = -q^-1 v                          if s in I_v,
    tau_s(v) = q v + sum_{u: s in I_u} mu(u,v) u    otherwise,

which must satisfy (tau_s + q^-1)(tau_s - q) = 0 and the braid relations.
Edge weights are stored on unordered pairs (the shorter-to-longer weight is
symmetrized; verify_wgraph surfaces any resulting axiom failure as a hard
error rather than accepting it).

The preorder is generated by u <= v whenever mu(u,v) != 0 and I_u is not
contained in I_v; cells are its strongly connected components (Tarjan).
The regular W-graph of a group (vertices all of W, weights from the
Kazhdan-Lusztig table) yields the left cells of W, and cell_module gives
the exact T_s matrices on a union of left cells.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import CoxeterGroup, GroupElement
from .errors import NotCellClosed
from .hecke import Coords, KLTable, _dadd, c_mul_generator
from .laurent import ONE, Q, QINV, ZERO, LaurentInt
from .specht import RelativeKLTable, SpechtModuleJ

Matrix = list[Coords]  # columns: position -> coefficient


@dataclass
class WGraphDatum:
    """Vertices with labels (group elements), descent sets and edge weights."""

    group: CoxeterGroup
    labels: tuple[GroupElement, ...]
    descents: tuple[frozenset[int], ...]
    mu: dict[tuple[int, int], int]  # key (i, j) with i < j, vertex positions
    J: tuple[int, ...] | None = None

    def __post_init__(self):
        for (i, j), m in self.mu.items():
            if not (0 <= i < j < len(self.labels)):
                raise ValueError("edge endpoints out of range or unordered")
            if m == 0:
                raise ValueError("zero edge weights must be omitted")

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def mu_sym(self, i: int, j: int) -> int:
        """Symmetrized edge weight between vertex positions i and j."""
        if i == j:
            return 0
        key = (i, j) if i < j else (j, i)
        return self.mu.get(key, 0)

    def edges(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((i, j, m) for (i, j), m in sorted(self.mu.items()))


def build_wgraph(module: SpechtModuleJ, table: RelativeKLTable) -> WGraphDatum:
    """The W-graph of the generic Specht module: vertices E_J with their
    left descent sets, weights mu(y, w) from the relative table."""
    group = module.group
    labels = module.basis
    pos = module.pos
    descents = tuple(group.left_descents(x) for x in labels)
    mu: dict[tuple[int, int], int] = {}
    for w, col in table.mu.items():
        for y, m in col.items():
            mu[(pos[y], pos[w])] = m
    return WGraphDatum(group, labels, descents, mu, J=module.system.J)


def regular_wgraph(group: CoxeterGroup, table: KLTable) -> WGraphDatum:
    """The W-graph of the regular module: vertices all of W."""
    labels = tuple(range(group.order))
    descents = tuple(group.left_descents(w) for w in labels)
    mu: dict[tuple[int, int], int] = {}
    for w in range(group.order):
        for y, m in table.mu_col(w).items():
            mu[(y, w)] = m
    return WGraphDatum(group, labels, descents, mu)


def tau_columns(graph: WGraphDatum, s: int) -> Matrix:
    """The matrix of tau_s in the vertex basis (columns over positions)."""
    n = graph.n_vertices
    with_s = [i for i in range(n) if s in graph.descents[i]]
    cols: Matrix = []
    for j in range(n):
        if s in graph.descents[j]:
            cols.append({j: -QINV})
        else:
            col: Coords = {j: Q}
            for i in with_s:
                m = graph.mu_sym(i, j)
                if m:
                    col[i] = LaurentInt(m)
            cols.append(col)
    return cols


# -- exact matrix helpers ----------------------------------------------------

def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    out: Matrix = []
    for bcol in B:
        acc: Coords = {}
        for i, c in bcol.items():
            for k, a in A[i].items():
                _dadd(acc, k, c * a)
        out.append(acc)
    return out


def mat_add_diag(A: Matrix, c: LaurentInt) -> Matrix:
    out = []
    for j, col in enumerate(A):
        col = dict(col)
        _dadd(col, j, c)
        out.append(col)
    return out


def mat_is_zero(A: Matrix) -> bool:
    return all(not col for col in A)


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return A == B


@dataclass
class WGraphReport:
    ok: bool
    failures: tuple[str, ...]


def verify_wgraph(graph: WGraphDatum, group: CoxeterGroup | None = None) -> WGraphReport:
    """Exact checks of the defining relations for the tau operators:
    the quadratic relation for every generator, the braid relation of
    length m(s,t) for every pair."""
    group = group or graph.group
    failures = []
    taus = {s: tau_columns(graph, s) for s in group.generators}
    for s in group.generators:
        prod = mat_mul(mat_add_diag(taus[s], -Q), mat_add_diag(taus[s], QINV))
        if not mat_is_zero(prod):
            failures.append(f"quadratic relation fails for s{s + 1}")
    for s in group.generators:
        for t in group.generators:
            if s >= t:
                continue
            m = group.spec.matrix[s][t]
            left = right = None
            for k in range(m):
                a = taus[s] if k % 2 == 0 else taus[t]
                b = taus[t] if k % 2 == 0 else taus[s]
                left = a if left is None else mat_mul(left, a)
                right = b if right is None else mat_mul(right, b)
            if not mat_eq(left, right):
                failures.append(f"braid relation of order {m} fails for (s{s + 1}, s{t + 1})")
    return WGraphReport(not failures, tuple(failures))


# -- cells -------------------------------------------------------------------

@dataclass
class CellDecomposition:
    """Cells (sorted vertex-position tuples) and the induced component DAG;
    a DAG edge (a, b) means cell b lies strictly below cell a in the
    Kazhdan-Lusztig preorder."""

    cells: tuple[tuple[int, ...], ...]
    dag: tuple[tuple[int, int], ...]


def _tarjan(n: int, succ: list[list[int]]) -> list[tuple[int, ...]]:
    counter = 0
    idx = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    for root in range(n):
        if idx[root] != -1:
            continue
        work = [(root, iter(succ[root]))]
        idx[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if idx[w] == -1:
                    idx[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    if idx[w] < low[v]:
                        low[v] = idx[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == idx[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    return comps


def kl_cells(graph: WGraphDatum) -> CellDecomposition:
    """Cells of the Kazhdan-Lusztig preorder on the graph, with the DAG of
    strongly connected components."""
    n = graph.n_vertices
    succ: list[list[int]] = [[] for _ in range(n)]
    for (i, j), m in sorted(graph.mu.items()):
        # one preorder step u <= v needs mu(u, v) != 0 and I_u not within I_v
        if not graph.descents[i] <= graph.descents[j]:
            succ[j].append(i)
        if not graph.descents[j] <= graph.descents[i]:
            succ[i].append(j)
    for lst in succ:
        lst.sort()
    comps = _tarjan(n, succ)
    cells = tuple(sorted(comps, key=lambda c: c[0]))
    comp_of = {}
    for ci, cell in enumerate(cells):
        for v in cell:
            comp_of[v] = ci
    dag = set()
    for v in range(n):
        for u in succ[v]:
            if comp_of[u] != comp_of[v]:
                dag.add((comp_of[v], comp_of[u]))
    return CellDecomposition(cells, tuple(sorted(dag)))


def full_group_cells(group: CoxeterGroup, table: KLTable) -> tuple[tuple[int, ...], ...]:
    """The left-cell partition of W (cells as sorted element tuples)."""
    cached = group.cache.get("full_cells")
    if cached is None:
        graph = regular_wgraph(group, table)
        cached = kl_cells(graph).cells  # labels are the elements themselves
        group.cache["full_cells"] = cached
    return cached


def cell_module(group: CoxeterGroup, table: KLTable,
                cell_union) -> dict[int, Matrix]:
    """T_s matrices on the quotient basis {C_w : w in cell_union}.

    cell_union must be a union of left cells (checked); everything the
    multiplication produces outside the union lies strictly below it in the
    preorder and is discarded by the quotient.
    """
    union = sorted(set(cell_union))
    union_set = set(union)
    for cell in full_group_cells(group, table):
        inside = union_set.intersection(cell)
        if inside and len(inside) != len(cell):
            raise NotCellClosed(f"cell {cell} is split by the requested union")
    pos = {w: i for i, w in enumerate(union)}
    out: dict[int, Matrix] = {}
    for s in group.generators:
        cols: Matrix = []
        for w in union:
            expansion = c_mul_generator(table, s, w)
            cols.append({pos[z]: a for z, a in expansion.items() if z in union_set})
        out[s] = cols
    return out


# -- serialization -----------------------------------------------------------

def _word_list(group: CoxeterGroup, w: GroupElement) -> list[int]:
    return [s + 1 for s in group.words[w]]


def _word_str(group: CoxeterGroup, w: GroupElement) -> str:
    return "".join(str(s + 1) for s in group.words[w]) or "e"


def wgraph_to_json(graph: WGraphDatum) -> dict:
    cells = kl_cells(graph)
    return {
        "J": [s + 1 for s in graph.J] if graph.J is not None else None,
        "vertices": [
            {"word": _word_list(graph.group, w),
             "descents": sorted(s + 1 for s in graph.descents[i])}
            for i, w in enumerate(graph.labels)
        ],
        "edges": [{"a": i, "b": j, "mu": m} for i, j, m in graph.edges()],
        "cells": [list(cell) for cell in cells.cells],
    }


def wgraph_to_dot(graph: WGraphDatum) -> str:
    lines = ["graph wgraph {"]
    for i, w in enumerate(graph.labels):
        word = _word_str(graph.group, w)
        desc = ",".join(str(s + 1) for s in sorted(graph.descents[i]))
        lines.append(f'  v{i} [label="{word}|{{{desc}}}"];')
    for i, j, m in graph.edges():
        lines.append(f'  v{i} -- v{j} [label="{m}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
