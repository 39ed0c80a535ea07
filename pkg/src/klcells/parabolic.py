"""Parabolic coset systems and the module M^J = H . C_{w_J}.

For J a subset of the generators, D_J is the set of minimal coset
representatives of W/W_J (everything in J ascends on the right), DJbar =
D_J . w_J the maximal ones (everything in J descends), and E_J the elements
whose right descent set is exactly J, so DJbar is the disjoint union of the
E_K over K containing J.

Left multiplication by a generator s splits each of these sets into classes
(Deodhar's lemma and its E_J refinement):

    D_J:  '-', '+', '0'          with s.d = d.t, t in J, in the '0' case;
    E_J:  '-', '+', '0-', '0+'   with s.x = x.t and t in J ('0-') or in the
                                  complement of J ('0+').

M^J is free over A with basis T_d C_{w_J}, d in D_J; mj_apply implements
T_s on that basis ('-' and '+' move the index, '0' scales by -q^-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .coxeter import CoxeterGroup, GroupElement
from .errors import NotInDJ, NotInDJbar, NotInEJ
from .hecke import Coords, HeckeVector, _dadd, _gen_mul_left, t_basis
from .laurent import ONE, Q, QINV, ZERO, LaurentInt, q_power

MINUS = "-"
PLUS = "+"
ZERO_CLASS = "0"
ZERO_MINUS = "0-"
ZERO_PLUS = "0+"


@dataclass
class ParabolicSystem:
    """Frozen coset data for one subset J of the generators."""

    group: CoxeterGroup
    J: tuple[int, ...]
    wJ: GroupElement
    WJ: tuple[GroupElement, ...]
    DJ: tuple[GroupElement, ...]
    DJbar: tuple[GroupElement, ...]
    EJ: tuple[GroupElement, ...]
    # per generator: element -> (class, witness generator or None)
    dj_class: tuple[dict[int, tuple[str, int | None]], ...]
    djbar_class: tuple[dict[int, tuple[str, int | None]], ...]
    ej_class: tuple[dict[int, tuple[str, int | None]], ...]
    _tdc: dict[int, Coords] = field(default_factory=dict, repr=False)
    _cwj: Coords | None = field(default=None, repr=False)

    @property
    def J_complement(self) -> tuple[int, ...]:
        return tuple(s for s in self.group.generators if s not in self.J)

    def minimal_rep(self, x: GroupElement) -> GroupElement:
        """d = x . w_J, the minimal representative paired with x in DJbar."""
        return self.group.multiply(x, self.wJ)

    def cwj_coords(self) -> Coords:
        if self._cwj is None:
            group = self.group
            sign_wj = group.sign(self.wJ)
            lwj = group.lengths[self.wJ]
            self._cwj = {
                w: q_power(lwj - group.lengths[w], sign_wj * group.sign(w))
                for w in self.WJ
            }
        return self._cwj

    def basis_coords(self, d: GroupElement) -> Coords:
        """T-coordinates of T_d C_{w_J} for d in D_J (cached)."""
        cached = self._tdc.get(d)
        if cached is None:
            cur = self.cwj_coords()
            for s in reversed(self.group.words[d]):
                cur = _gen_mul_left(self.group, s, cur)
            self._tdc[d] = cached = cur
        return cached


def _witness(group: CoxeterGroup, s: int, x: GroupElement,
             allowed: Iterable[int]) -> int:
    """The generator t with s.x = x.t, verified to lie in `allowed`."""
    s_elt = group.right_table[0][s]
    t_elt = group.multiply(group.multiply(group.inverse(x), s_elt), x)
    if group.lengths[t_elt] != 1:
        raise AssertionError("conjugate of a generator is not a generator")
    t = group.words[t_elt][0]
    if t not in set(allowed):
        raise AssertionError("witness generator lies in the wrong subset")
    return t


def build_parabolic(group: CoxeterGroup, J: Iterable[int]) -> ParabolicSystem:
    """Enumerate D_J, DJbar, E_J (sorted by length, ShortLex) and classify
    every (generator, element) pair, with witnesses for the zero classes."""
    J = tuple(sorted(set(J)))
    if any(s not in group.generators for s in J):
        raise ValueError(f"J must be a subset of the generators, got {J}")
    jmask = sum(1 << s for s in J)
    wJ = group.longest_element(J)
    WJ = group.parabolic_elements(J)
    dj, djbar, ej = [], [], []
    for w in range(group.order):
        mask = group.right_descent_mask(w)
        if mask & jmask == 0:
            dj.append(w)
        if mask & jmask == jmask:
            djbar.append(w)
            if mask == jmask:
                ej.append(w)

    dj_set, djbar_set, ej_set = set(dj), set(djbar), set(ej)
    lengths = group.lengths
    lt = group.left_table
    jhat = tuple(s for s in group.generators if s not in J)

    dj_class, djbar_class, ej_class = [], [], []
    for s in group.generators:
        dcls: dict[int, tuple[str, int | None]] = {}
        for d in dj:
            sd = lt[d][s]
            if lengths[sd] < lengths[d]:
                dcls[d] = (MINUS, None)
            elif sd in dj_set:
                dcls[d] = (PLUS, None)
            else:
                dcls[d] = (ZERO_CLASS, _witness(group, s, d, J))
        dj_class.append(dcls)

        bcls: dict[int, tuple[str, int | None]] = {}
        for d in djbar:
            sd = lt[d][s]
            if sd in djbar_set:
                bcls[d] = (MINUS if lengths[sd] < lengths[d] else PLUS, None)
            else:
                bcls[d] = (ZERO_CLASS, _witness(group, s, d, J))
        djbar_class.append(bcls)

        ecls: dict[int, tuple[str, int | None]] = {}
        for x in ej:
            sx = lt[x][s]
            shorter = lengths[sx] < lengths[x]
            if sx in ej_set:
                ecls[x] = (MINUS if shorter else PLUS, None)
            elif shorter:
                ecls[x] = (ZERO_MINUS, _witness(group, s, x, J))
            else:
                ecls[x] = (ZERO_PLUS, _witness(group, s, x, jhat))
        ej_class.append(ecls)

    return ParabolicSystem(group, J, wJ, WJ, tuple(dj), tuple(djbar), tuple(ej),
                           tuple(dj_class), tuple(djbar_class), tuple(ej_class))


def classify_dj(system: ParabolicSystem, s: int, d: GroupElement) -> tuple[str, int | None]:
    try:
        return system.dj_class[s][d]
    except KeyError:
        raise NotInDJ(f"element {d} is not a minimal representative for J={system.J}") from None


def classify_djbar(system: ParabolicSystem, s: int, d: GroupElement) -> tuple[str, int | None]:
    try:
        return system.djbar_class[s][d]
    except KeyError:
        raise NotInDJbar(f"element {d} is not a maximal representative for J={system.J}") from None


def classify_ej(system: ParabolicSystem, s: int, x: GroupElement) -> tuple[str, int | None]:
    try:
        return system.ej_class[s][x]
    except KeyError:
        raise NotInEJ(f"element {x} does not have right descent set {system.J}") from None


def c_wj(system: ParabolicSystem) -> HeckeVector:
    """C_{w_J} = eps_{w_J} q^{l(w_J)} sum_{w in W_J} eps_w q^{-l(w)} T_w."""
    return HeckeVector._raw(system.group, dict(system.cwj_coords()))


@dataclass
class MJElement:
    """An element of M^J in the basis T_d C_{w_J}, d in D_J."""

    system: ParabolicSystem
    coords: dict[int, LaurentInt]

    def __post_init__(self):
        dj = set(self.system.DJ)
        clean = {}
        for d, a in self.coords.items():
            if d not in dj:
                raise NotInDJ(f"coordinate index {d} is not in D_J")
            if not isinstance(a, LaurentInt):
                a = LaurentInt(a)
            if a:
                clean[d] = a
        self.coords = clean

    def items(self):
        return tuple(sorted(self.coords.items()))

    def __eq__(self, other):
        return (isinstance(other, MJElement) and self.system is other.system
                and self.coords == other.coords)


def mj_apply(system: ParabolicSystem, s: int, m: MJElement) -> MJElement:
    """T_s acting on M^J in D_J coordinates."""
    out: Coords = {}
    lt = system.group.left_table
    delta = Q - QINV
    for d, a in m.coords.items():
        cls, _ = system.dj_class[s][d]
        if cls == MINUS:
            _dadd(out, lt[d][s], a)
            _dadd(out, d, a * delta)
        elif cls == PLUS:
            _dadd(out, lt[d][s], a)
        else:  # zero: T_s T_d C_{w_J} = -q^-1 T_d C_{w_J}
            _dadd(out, d, a * -QINV)
    return MJElement(system, out)


def mj_embed(system: ParabolicSystem, m: MJElement) -> HeckeVector:
    """Expand into the T-basis of the Hecke algebra."""
    out: Coords = {}
    for d, a in m.coords.items():
        for w, c in system.basis_coords(d).items():
            _dadd(out, w, a * c)
    return HeckeVector._raw(system.group, out)


def mj_coords(system: ParabolicSystem, h: HeckeVector) -> MJElement:
    """Inverse of mj_embed; raises ValueError when h is not in M^J.

    T_d C_{w_J} has leading T-term at d.w_J with coefficient 1, so the
    expansion is a triangular solve against leading elements.
    """
    from .linalg import leading_unit_expand
    group = system.group
    basis = sorted(((group.multiply(d, system.wJ), d) for d in system.DJ), reverse=True)
    coeffs = leading_unit_expand(
        h.coords(), [(lead, system.basis_coords(d)) for lead, d in basis])
    lead_to_d = dict(basis)
    return MJElement(system, {lead_to_d[lead]: a for lead, a in coeffs.items()})


def system_to_json(system: ParabolicSystem) -> dict:
    """JSON payload: J, w_J and the three coset lists as 1-based words,
    plus the classification tables with witnesses."""
    group = system.group

    def word(w: int) -> list[int]:
        return [s + 1 for s in group.words[w]]

    def table(classes) -> dict:
        out = {}
        for s in group.generators:
            out[str(s + 1)] = [
                {"word": word(d), "class": cls,
                 **({"witness": t + 1} if t is not None else {})}
                for d, (cls, t) in sorted(classes[s].items())
            ]
        return out

    return {
        "J": [s + 1 for s in system.J],
        "wJ": word(system.wJ),
        "DJ": [word(d) for d in system.DJ],
        "DJbar": [word(d) for d in system.DJbar],
        "EJ": [word(d) for d in system.EJ],
        "classification": {
            "DJ": table(system.dj_class),
            "DJbar": table(system.djbar_class),
            "EJ": table(system.ej_class),
        },
    }
