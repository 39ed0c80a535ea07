"""The generic Specht module S^J and its relative Kazhdan-Lusztig data.

S^J is free over A with basis b_x indexed by x in E_J; b_x is the class of
T_{x.w_J} C_{w_J} (minimal-representative normalization, which is what makes
the diagonal relative polynomials literally 1) modulo the layer ideal.

Generator action in the b-basis, governed by the four-way classification of
x under left multiplication by s:

    '-'  : b_{sx} + (q - q^-1) b_x
    '+'  : b_{sx}
    '0-' : -q^-1 b_x
    '0+' :  q    b_x   plus a companion term supported above the layer

specht_action realizes exactly these four rules (the companion dropped), per
the module contract.  The recursions below cannot afford to drop blindly:
the companion's image in S^J is usually zero but not always (B3 at J = {s1}
is the smallest counterexample found by this code), so they expand the '0+'
case honestly as q b_x + zero_plus_correction(s, x), where the correction is
the E_J-part of the layer decomposition of T_{s.d} C_{w_J}.  Whatever the
decomposition discards consists of higher-layer vectors T_u C_{w_K}, which
are unit multiples of m_{u, w_K} and hence lie in the layer ideal by
construction; with validate_drops on, that membership is re-verified through
the independent fraction-free elimination (in_layer_ideal) and a failure
raises QuotientDropError.

The R-polynomials express the bar involution over the b-basis; the relative
polynomials P_{y,w} are produced by a descent recursion and characterized as
the unique unitriangular bar-invariant family with zero constant terms
(`relative_kl_by_bar_solve` recomputes them from that characterization and
is the independent oracle).  Q inverts P.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cellular import CellularDatum, in_layer_ideal, reduce_to_ej
from .coxeter import GroupElement
from .errors import NotInEJ, QuotientDropError, RecursionStuck
from .hecke import Coords, HeckeVector, _dadd
from .laurent import ONE, Q, QINV, ZERO, LaurentInt
from .parabolic import MINUS, PLUS, ZERO_MINUS, ZERO_PLUS, ParabolicSystem

_MINUS_Q_MINUS_QINV = -(Q + QINV)


class SpechtModuleJ:
    """The generic Specht module attached to one parabolic system."""

    def __init__(self, system: ParabolicSystem, datum: CellularDatum | None = None,
                 validate_drops: bool = True):
        self.system = system
        self.group = system.group
        self.basis = system.EJ  # ascending (length, ShortLex)
        self.pos = {x: i for i, x in enumerate(self.basis)}
        self.validate_drops = validate_drops
        self._datum = datum
        self._corrections: dict[tuple[int, int], Coords] = {}
        self._R: dict[int, Coords] | None = None
        self._weak: dict[tuple[int, int], bool] = {}

    @property
    def datum(self) -> CellularDatum:
        if self._datum is None:
            self._datum = CellularDatum(self.group)
        return self._datum

    def weak_leq(self, x: GroupElement, y: GroupElement) -> bool:
        key = (x, y)
        cached = self._weak.get(key)
        if cached is None:
            cached = self._weak[key] = self.group.weak_left_leq(x, y)
        return cached

    def classify(self, s: int, x: GroupElement) -> str:
        return self.system.ej_class[s][x][0]

    def embed(self, coords: Coords) -> HeckeVector:
        """Lift b-coordinates to the Hecke algebra (a section of the quotient)."""
        out: Coords = {}
        system = self.system
        for x, a in coords.items():
            for w, c in system.basis_coords(system.minimal_rep(x)).items():
                _dadd(out, w, a * c)
        return HeckeVector._raw(self.group, out)

    def action_matrix(self, s: int) -> list[Coords]:
        """Columns (position -> coefficient) of the four-rule T_s action."""
        cols = []
        for x in self.basis:
            vec = specht_action(self, s, x)
            cols.append({self.pos[y]: a for y, a in vec.items()})
        return cols

    def companion_coords(self, s: int, x: GroupElement) -> Coords:
        """T-coordinates of the '0+' companion T_s T_d C_{w_J} - q T_d C_{w_J}
        (d the minimal form of x); a unit multiple of T_x C_{t.w_J}."""
        system = self.system
        d = system.minimal_rep(x)
        sd = self.group.left_table[d][s]
        out = dict(system.basis_coords(sd))
        for w, a in system.basis_coords(d).items():
            _dadd(out, w, a * -Q)
        return out

    def zero_plus_correction(self, s: int, x: GroupElement) -> Coords:
        """E_J-part of the companion: the exact image of T_s b_x in S^J is
        q b_x + this correction.  Empty whenever the companion lies in the
        layer ideal, which is the common case."""
        key = (s, x)
        cached = self._corrections.get(key)
        if cached is None:
            system = self.system
            d = system.minimal_rep(x)
            sd = self.group.left_table[d][s]
            full = reduce_to_ej(self.datum, system.J, system.basis_coords(sd))
            corr = dict(full)
            _dadd(corr, x, -Q)
            if self.validate_drops:
                self._check_discard(s, x, full)
            self._corrections[key] = cached = corr
        return cached

    def _check_discard(self, s: int, x: GroupElement, full: Coords) -> None:
        """Verify, by the independent elimination, that what the layer
        decomposition discarded really lies in the layer ideal."""
        system = self.system
        d = system.minimal_rep(x)
        sd = self.group.left_table[d][s]
        discarded = dict(system.basis_coords(sd))
        for u, a in full.items():
            for w, c in system.basis_coords(system.minimal_rep(u)).items():
                _dadd(discarded, w, -(a * c))
        if discarded and not in_layer_ideal(self.datum, system.J, discarded):
            word = "".join(str(g + 1) for g in self.group.words[x]) or "e"
            raise QuotientDropError(
                f"discarded companion part escaped the layer ideal: "
                f"J={tuple(g + 1 for g in self.system.J)}, s=s{s + 1}, x={word}")


def specht_action(module: SpechtModuleJ, s: int, x: GroupElement) -> Coords:
    """T_s . b_x by the four case rules (element -> coefficient)."""
    system = module.system
    try:
        cls, _ = system.ej_class[s][x]
    except KeyError:
        raise NotInEJ(f"element {x} is not in E_J for J={system.J}") from None
    sx = module.group.left_table[x][s]
    if cls == MINUS:
        return {sx: ONE, x: Q - QINV}
    if cls == PLUS:
        return {sx: ONE}
    if cls == ZERO_MINUS:
        return {x: -QINV}
    return {x: Q}


def r_polynomials(module: SpechtModuleJ) -> dict[int, Coords]:
    """Columns R[y] = {x: R_{x,y}} expressing bar(b_y) = sum_x R_{x,y} b_x.

    Along a pivot s with sy < y and sy in E_J, push bar(T_s) = T_s + q^-1 - q
    through the column of sy; the net per-case contributions are

        '-'  : R_{x,sy} lands on sx
        '+'  : R_{x,sy} lands on sx, (q^-1 - q) R_{x,sy} stays on x
        '0-' : -q   R_{x,sy} stays on x
        '0+' :  q^-1 R_{x,sy} stays on x, plus R_{x,sy} * correction.
    """
    if module._R is not None:
        return module._R
    system = module.system
    group = module.group
    lt = group.left_table
    basis = module.basis
    if basis[0] != system.wJ:
        raise AssertionError("minimum of E_J is not w_J")
    R: dict[int, Coords] = {basis[0]: {basis[0]: ONE}}
    delta_bar = QINV - Q
    for y in basis[1:]:
        s = _pivot(module, y)
        prev = R[lt[y][s]]
        col: Coords = {}
        for x, r in prev.items():
            cls = module.classify(s, x)
            if cls == MINUS:
                _dadd(col, lt[x][s], r)
            elif cls == PLUS:
                _dadd(col, lt[x][s], r)
                _dadd(col, x, r * delta_bar)
            elif cls == ZERO_MINUS:
                _dadd(col, x, r * -Q)
            else:
                _dadd(col, x, r * QINV)
                for z, c in module.zero_plus_correction(s, x).items():
                    _dadd(col, z, r * c)
        R[y] = col
    module._R = R
    return R


def _pivot(module: SpechtModuleJ, w: GroupElement) -> int:
    """Least generator with sw < w and sw still in E_J."""
    for s in module.group.generators:
        if module.classify(s, w) == MINUS:
            return s
    word = "".join(str(g + 1) for g in module.group.words[w]) or "e"
    raise RecursionStuck(
        f"no descent of {word} stays inside E_J for J={module.system.J}")


@dataclass
class RelativeKLTable:
    """Relative Kazhdan-Lusztig data over E_J.

    P[w] = {y: P_{y,w}} (diagonal 1 included), mu[w] = {y: mu(y,w) != 0},
    R as in r_polynomials; Q is computed on first use.
    """

    module: SpechtModuleJ
    P: dict[int, Coords]
    mu: dict[int, dict[int, int]]
    R: dict[int, Coords]
    _Q: dict[int, Coords] | None = field(default=None, repr=False)

    def p(self, y: GroupElement, w: GroupElement) -> LaurentInt:
        return self.P[w].get(y, ZERO)

    def mu_val(self, y: GroupElement, w: GroupElement) -> int:
        return self.mu[w].get(y, 0)

    def q(self, y: GroupElement, w: GroupElement) -> LaurentInt:
        return self.q_cols()[w].get(y, ZERO)

    def q_cols(self) -> dict[int, Coords]:
        if self._Q is None:
            self._Q = q_polynomials(self)
        return self._Q

    def c_rel(self, w: GroupElement) -> Coords:
        """b-coordinates of the bar-invariant basis element attached to w."""
        return dict(self.P[w])

    def c_rel_embedded(self, w: GroupElement) -> HeckeVector:
        return self.module.embed(self.P[w])


def relative_kl(module: SpechtModuleJ) -> RelativeKLTable:
    """The relative Kazhdan-Lusztig table, by the descent recursion

        C_w = (T_s - q) C_v - sum_{z: mu(z,v) != 0, sz < z} mu(z, v) C_z

    with w = sv, both in E_J.  Diagonals are 1 and off-diagonal entries are
    polynomials with zero constant term; violations raise immediately.
    """
    R = r_polynomials(module)
    system = module.system
    group = module.group
    lt = group.left_table
    minus_q = -Q
    minus_qinv = -QINV
    P: dict[int, Coords] = {}
    mu: dict[int, dict[int, int]] = {}
    for w in module.basis:
        if w == system.wJ:
            P[w] = {w: ONE}
            mu[w] = {}
            continue
        s = _pivot(module, w)
        v = lt[w][s]
        col: Coords = {}
        for y, pv in P[v].items():
            cls = module.classify(s, y)
            if cls == PLUS:
                _dadd(col, lt[y][s], pv)
                _dadd(col, y, pv * minus_q)
            elif cls == MINUS:
                _dadd(col, lt[y][s], pv)
                _dadd(col, y, pv * minus_qinv)
            elif cls == ZERO_MINUS:
                _dadd(col, y, pv * _MINUS_Q_MINUS_QINV)
            else:  # '0+': the q and -q diagonal parts cancel
                for z, c in module.zero_plus_correction(s, y).items():
                    _dadd(col, z, pv * c)
        for z, m in mu[v].items():
            if group.is_left_descent(s, z):
                for y, a in P[z].items():
                    _dadd(col, y, a * -m)
        if col.get(w) != ONE:
            raise AssertionError("relative recursion lost unitriangularity")
        for y, a in col.items():
            if y != w and (a.constant_term() or not a.is_polynomial()):
                raise AssertionError("relative polynomial violates qZ[q]")
        P[w] = col
        mu[w] = {y: -a.coeff(1) for y, a in col.items() if y != w and a.coeff(1)}
    return RelativeKLTable(module, P, mu, R)


def relative_kl_by_bar_solve(module: SpechtModuleJ) -> dict[int, Coords]:
    """Oracle: recompute the P columns by solving bar-invariance plus
    triangularity degree by degree from the R table alone."""
    from .linalg import solve_bar_unitriangular
    return solve_bar_unitriangular(module.basis, r_polynomials(module))


def q_polynomials(table: RelativeKLTable) -> dict[int, Coords]:
    """Q table inverting P:  Q_{y,w} = -P_{y,w} - sum_{y<z<w} Q_{y,z} P_{z,w},
    the intermediate z running over the (length, ShortLex) order, which is the
    triangular structure both tables actually have."""
    module = table.module
    basis = module.basis
    Q_cols: dict[int, Coords] = {}
    for wi, w in enumerate(basis):
        col: Coords = {}
        for yi in range(wi - 1, -1, -1):
            y = basis[yi]
            val = -table.P[w].get(y, ZERO)
            for zi in range(yi + 1, wi):
                z = basis[zi]
                qyz = Q_cols[z].get(y)
                if qyz:
                    p = table.P[w].get(z)
                    if p:
                        val = val - qyz * p
            if val:
                col[y] = val
        Q_cols[w] = col
    return Q_cols
