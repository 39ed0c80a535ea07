"""The cellular family m_{xy} = T_x C_{w_J} T_y^*, layer decompositions,
layer ideals, and exact rank diagnostics.

All m's are computed from minimal representatives: for u in E_K the stored
vector is T_{u.w_K} C_{w_K} (leading T-term exactly T_u with coefficient 1),
and m_{uv} = T_{u.w_K} C_{w_K} T_{(v.w_K)^{-1}}.  Because DJbar is the
disjoint union of the E_K over K containing J, the family

    { T_{u.w_K} C_{w_K} : J <= K, u in E_K }

is unitriangular against the T-basis and gives both the layer decomposition
of any T_d C_{w_J} and the honest reduction of M^J modulo the layer ideal.

Rank and membership computations run over the fraction field of Z[q, q^-1]
via fraction-free elimination (never by specializing q).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .coxeter import CoxeterGroup, GroupElement
from .errors import NotInCosetSet, NotInDJbar, TooLarge
from .hecke import Coords, HeckeVector, _gen_mul_right
from .laurent import ONE, Q, LaurentInt
from .linalg import ExactSpan, leading_unit_expand
from .parabolic import ParabolicSystem, build_parabolic


def subsets_lex(generators: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All subsets of the generator set, totally ordered lexicographically
    as sorted index tuples."""
    subs = []
    for r in range(len(generators) + 1):
        subs.extend(combinations(generators, r))
    return tuple(sorted(subs))


class CellularDatum:
    """Per-group bundle of parabolic systems, layer bases and layer ideals."""

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self.omega_lex = subsets_lex(group.generators)
        self._systems: dict[tuple[int, ...], ParabolicSystem] = {}
        self._layered: dict[tuple[int, ...], list[tuple[int, tuple[int, ...], Coords]]] = {}
        self._ideals: dict[tuple[int, ...], ExactSpan] = {}

    def system(self, J) -> ParabolicSystem:
        J = tuple(sorted(set(J)))
        sys = self._systems.get(J)
        if sys is None:
            sys = self._systems[J] = build_parabolic(self.group, J)
        return sys

    def layered_basis(self, J) -> list[tuple[int, tuple[int, ...], Coords]]:
        """(leading element u, layer K, T-coordinates of T_{u.w_K} C_{w_K})
        over all K containing J, sorted by descending leading element."""
        J = tuple(sorted(set(J)))
        cached = self._layered.get(J)
        if cached is None:
            jset = set(J)
            entries = []
            for K in self.omega_lex:
                if jset <= set(K):
                    sysK = self.system(K)
                    for u in sysK.EJ:
                        entries.append((u, K, sysK.basis_coords(sysK.minimal_rep(u))))
            entries.sort(key=lambda t: -t[0])
            assert len(entries) == len(self.system(J).DJbar)
            self._layered[J] = cached = entries
        return cached

    def ideal_span(self, J) -> ExactSpan:
        """Row space of the layer ideal: span of all m_{uv}, u, v in E_K,
        J strictly contained in K."""
        J = tuple(sorted(set(J)))
        span = self._ideals.get(J)
        if span is None:
            span = ExactSpan()
            for h in self.layer_ideal_vectors(J):
                span.add(h.coords())
            self._ideals[J] = span
        return span

    def layer_ideal_vectors(self, J) -> list[HeckeVector]:
        jset = set(J)
        out = []
        for K in self.omega_lex:
            if jset < set(K):
                sysK = self.system(K)
                for u in sysK.EJ:
                    for v in sysK.EJ:
                        out.append(murphy_element(sysK, u, v))
        return out


def murphy_element(system: ParabolicSystem, x: GroupElement, y: GroupElement) -> HeckeVector:
    """m_{xy} = T_{d_x} C_{w_J} T_{d_y^{-1}} with d_x, d_y the minimal forms.

    x and y may be given as minimal (D_J) or maximal (DJbar) representatives.
    """
    group = system.group

    def minimal(z: GroupElement) -> GroupElement:
        mask = group.right_descent_mask(z)
        jmask = sum(1 << s for s in system.J)
        if mask & jmask == 0:
            return z
        if mask & jmask == jmask:
            return system.minimal_rep(z)
        raise NotInCosetSet(
            f"element {z} is in neither D_J nor its w_J-translate for J={system.J}")

    dx, dy = minimal(x), minimal(y)
    cur = dict(system.basis_coords(dx))
    for s in reversed(group.words[dy]):
        cur = _gen_mul_right(group, s, cur)
    return HeckeVector._raw(group, cur)


@dataclass
class LayerDecomposition:
    """T_{x.w_J} C_{w_J} = sum over E_J + strictly higher layers."""

    J: tuple[int, ...]
    x: GroupElement
    ej_part: dict[GroupElement, LaurentInt]
    higher: dict[tuple[tuple[int, ...], GroupElement], LaurentInt]


def decompose_layer(datum: CellularDatum, J, x: GroupElement) -> LayerDecomposition:
    """Decompose T_{x.w_J} C_{w_J} (x in DJbar) over the layered basis;
    re-expanding the output reproduces the input exactly over A."""
    J = tuple(sorted(set(J)))
    system = datum.system(J)
    if x not in set(system.DJbar):
        raise NotInDJbar(f"element {x} is not a maximal representative for J={J}")
    target = system.basis_coords(system.minimal_rep(x))
    basis = [(u, vec) for u, _K, vec in datum.layered_basis(J)]
    coeffs = leading_unit_expand(target, basis)
    layer_of = {u: K for u, K, _vec in datum.layered_basis(J)}
    ej = set(system.EJ)
    ej_part, higher = {}, {}
    for u, a in coeffs.items():
        if u in ej:
            ej_part[u] = a
        else:
            higher[(layer_of[u], u)] = a
    return LayerDecomposition(J, x, ej_part, higher)


def reduce_to_ej(datum: CellularDatum, J, h: HeckeVector | Coords) -> dict[GroupElement, LaurentInt]:
    """Honest reduction of an element of M^J modulo the layer ideal,
    as coordinates over {T_{x.w_J} C_{w_J} : x in E_J}.

    Raises ValueError when h does not lie in M^J.
    """
    J = tuple(sorted(set(J)))
    coords = h.coords() if isinstance(h, HeckeVector) else dict(h)
    basis = [(u, vec) for u, _K, vec in datum.layered_basis(J)]
    coeffs = leading_unit_expand(coords, basis)
    ej = set(datum.system(J).EJ)
    return {u: a for u, a in coeffs.items() if u in ej}


def layer_ideal_basis(datum: CellularDatum, J) -> tuple[list[HeckeVector], ExactSpan]:
    """The spanning family of the layer ideal and its exact row space."""
    J = tuple(sorted(set(J)))
    return datum.layer_ideal_vectors(J), datum.ideal_span(J)


def in_layer_ideal(datum: CellularDatum, J, h: HeckeVector | Coords) -> bool:
    """Membership of h in the layer ideal span, over Frac(Z[q, q^-1])."""
    coords = h.coords() if isinstance(h, HeckeVector) else h
    return datum.ideal_span(tuple(sorted(set(J)))).contains(coords)


def cellular_rank_report(datum: CellularDatum, cap: int = 200) -> dict:
    """|W|, sum over J of |E_J|^2, and the exact rank of the span of all
    m_{uv}.  The report never asserts that the three quantities agree; when
    the square count differs from the rank the family is linearly dependent
    and the note says so.
    """
    group = datum.group
    if group.order > cap:
        raise TooLarge(
            f"group of order {group.order} exceeds the exact-rank cap of {cap}")
    span = ExactSpan()
    sum_of_squares = 0
    per_layer = []
    for K in datum.omega_lex:
        sysK = datum.system(K)
        n = len(sysK.EJ)
        sum_of_squares += n * n
        per_layer.append({"J": [s + 1 for s in K], "sizeEJ": n})
        for u in sysK.EJ:
            for v in sysK.EJ:
                span.add(murphy_element(sysK, u, v).coords())
    rank = span.rank
    if sum_of_squares == rank == group.order:
        note = "the E-indexed family has full rank and the square count matches"
    else:
        note = (f"sumOfSquares {sum_of_squares} != rank {rank} "
                f"(group order {group.order}): the E-indexed family is "
                f"linearly dependent over Frac(Z[q,q^-1]); no basis claim is made")
    return {
        "groupOrder": group.order,
        "sumOfSquares": sum_of_squares,
        "rank": rank,
        "perLayer": per_layer,
        "note": note,
    }
