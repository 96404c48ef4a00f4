"""Finite groups given by multiplication tables, and their actions on ice
quivers by signed quiver automorphisms.

An action sends vertices to vertices and each arrow to a signed arrow
(coefficient +1 or -1), preserving the frozen data, sources and targets,
and degrees. Orbits are keyed by their least member; unfrozen orbits are
listed before frozen ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NotAdmissible, NotInvariant, NotWellDefined, ValidationError
from .quiver import Cycle, IceQuiver, Potential, canonical_cycle


class FiniteGroup:
    """A finite group presented by its multiplication table.

    Elements are strings. ``table[(g, h)]`` is the product ``g * h``.
    """

    def __init__(self, elements: Sequence[str], table: Mapping[tuple[str, str], str], identity: str):
        self.elements = tuple(elements)
        self.table = dict(table)
        self.identity = identity
        self._validate()
        self.inverse = {g: self._find_inverse(g) for g in self.elements}

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        els = [f"g{k}" for k in range(n)]
        table = {(f"g{a}", f"g{b}"): f"g{(a + b) % n}" for a in range(n) for b in range(n)}
        return cls(els, table, "g0")

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls.cyclic(1)

    def _validate(self):
        es = set(self.elements)
        if len(es) != len(self.elements):
            raise ValidationError("duplicate group elements")
        if self.identity not in es:
            raise ValidationError("identity not an element")
        for g in self.elements:
            for h in self.elements:
                p = self.table.get((g, h))
                if p not in es:
                    raise ValidationError(f"table incomplete or out of range at ({g},{h})")
            if self.table[(g, self.identity)] != g or self.table[(self.identity, g)] != g:
                raise ValidationError(f"{self.identity} is not an identity for {g}")
        for g in self.elements:
            for h in self.elements:
                for k in self.elements:
                    if self.table[(self.table[(g, h)], k)] != self.table[(g, self.table[(h, k)])]:
                        raise ValidationError("multiplication not associative")

    def _find_inverse(self, g: str) -> str:
        for h in self.elements:
            if self.table[(g, h)] == self.identity and self.table[(h, g)] == self.identity:
                return h
        raise ValidationError(f"no inverse for {g}")

    def mul(self, g: str, h: str) -> str:
        return self.table[(g, h)]

    def inv(self, g: str) -> str:
        return self.inverse[g]

    def order(self) -> int:
        return len(self.elements)

    def element_order(self, g: str) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(g) for g in self.elements))

    def is_abelian(self) -> bool:
        return all(
            self.table[(g, h)] == self.table[(h, g)]
            for g in self.elements
            for h in self.elements
        )

    def subgroup_elements(self, gens: Iterable[str]) -> tuple[str, ...]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return tuple(e for e in self.elements if e in seen)

    def __repr__(self):
        return f"FiniteGroup(order={self.order()})"


@dataclass(frozen=True)
class Orbit:
    """Orbit of vertices, keyed by the least member."""

    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    @property
    def key(self) -> str:
        return f"[{self.members[0]}]"

    @property
    def least(self) -> int:
        return self.members[0]

    def __len__(self):
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members


class GroupAction:
    """Action of a finite group on an ice quiver by signed automorphisms.

    ``vertex_map[g][v]`` is the image vertex; ``arrow_map[g][a]`` is a pair
    ``(sign, arrow_id)`` with sign +1 or -1.
    """

    def __init__(
        self,
        group: FiniteGroup,
        quiver: IceQuiver,
        vertex_map: Mapping[str, Mapping[int, int]],
        arrow_map: Mapping[str, Mapping[str, tuple[int, str]]],
    ):
        self.group = group
        self.quiver = quiver
        self.vertex_map = {g: dict(vertex_map[g]) for g in group.elements}
        self.arrow_map = {g: dict(arrow_map[g]) for g in group.elements}
        self._validate()

    def _validate(self):
        q, G = self.quiver, self.group
        vids = set(q.vertex_ids)
        for g in G.elements:
            vm = self.vertex_map.get(g)
            am = self.arrow_map.get(g)
            if vm is None or am is None:
                raise NotWellDefined(f"missing maps for group element {g}")
            if set(vm) != vids or set(vm.values()) != vids:
                raise NotWellDefined(f"{g} is not a vertex bijection")
            if {vm[v] for v in q.frozen_vertices} != set(q.frozen_vertices):
                raise NotWellDefined(f"{g} does not preserve the frozen vertices")
            imgs = set()
            for a in q.arrows:
                sgn, bid = am[a.id]
                if sgn not in (1, -1):
                    raise NotWellDefined(f"sign of {g}.{a.id} must be +/-1")
                b = q.arrow(bid)
                imgs.add(bid)
                if b.source != vm[a.source] or b.target != vm[a.target]:
                    raise NotWellDefined(f"{g}.{a.id} has wrong endpoints")
                if b.degree != a.degree:
                    raise NotWellDefined(f"{g}.{a.id} changes degree")
                if (a.id in q.frozen_arrows) != (bid in q.frozen_arrows):
                    raise NotWellDefined(f"{g} does not preserve the frozen arrows")
            if imgs != {a.id for a in q.arrows}:
                raise NotWellDefined(f"{g} is not an arrow bijection")
        # identity acts trivially
        e = G.identity
        if any(self.vertex_map[e][v] != v for v in vids) or any(
            self.arrow_map[e][a.id] != (1, a.id) for a in q.arrows
        ):
            raise NotWellDefined("identity does not act trivially")
        # compatibility with multiplication: (gh).x == g.(h.x)
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                for v in vids:
                    if self.vertex_map[gh][v] != self.vertex_map[g][self.vertex_map[h][v]]:
                        raise NotWellDefined(f"vertex action not a homomorphism at ({g},{h})")
                for a in q.arrows:
                    s1, b = self.arrow_map[h][a.id]
                    s2, c = self.arrow_map[g][b]
                    if self.arrow_map[gh][a.id] != (s1 * s2, c):
                        raise NotWellDefined(f"arrow action not a homomorphism at ({g},{h})")

    # -- applying the action -----------------------------------------------

    def act_vertex(self, g: str, v: int) -> int:
        return self.vertex_map[g][v]

    def act_arrow(self, g: str, aid: str) -> tuple[int, str]:
        return self.arrow_map[g][aid]

    def act_path(self, g: str, path: Sequence[str]) -> tuple[int, tuple[str, ...]]:
        sign = 1
        out = []
        for aid in path:
            s, b = self.arrow_map[g][aid]
            sign *= s
            out.append(b)
        return sign, tuple(out)

    def act_potential(self, g: str, w: Potential) -> Potential:
        terms = []
        for c, cyc in w.terms:
            sgn, path = self.act_path(g, cyc.arrows)
            terms.append((c * sgn, path))
        return Potential(terms, self.quiver)

    def stabilizer(self, v: int) -> tuple[str, ...]:
        return tuple(g for g in self.group.elements if self.vertex_map[g][v] == v)

    # -- orbits --------------------------------------------------------------

    def vertex_orbit(self, v: int) -> Orbit:
        return Orbit(tuple({self.vertex_map[g][v] for g in self.group.elements}))

    def orbits(self) -> tuple[Orbit, ...]:
        """All vertex orbits: unfrozen ones first, each block sorted by least member."""
        seen: set[int] = set()
        unfrozen, frozen = [], []
        for v in self.quiver.vertex_ids:
            if v in seen:
                continue
            orb = self.vertex_orbit(v)
            seen.update(orb.members)
            (frozen if v in self.quiver.frozen_vertices else unfrozen).append(orb)
        unfrozen.sort(key=lambda o: o.least)
        frozen.sort(key=lambda o: o.least)
        return tuple(unfrozen + frozen)

    def unfrozen_orbits(self) -> tuple[Orbit, ...]:
        return tuple(o for o in self.orbits() if o.least not in self.quiver.frozen_vertices)

    def orbit_of(self, v: int) -> Orbit:
        return self.vertex_orbit(v)


def check_action(action: GroupAction) -> None:
    """Raises NotWellDefined if the data is not a signed action; construction
    already performs this check, so this is a re-entry point for loaded data."""
    action._validate()


def potential_invariant(action: GroupAction, w: Potential) -> None:
    for g in action.group.elements:
        wg = action.act_potential(g, w)
        if wg != w:
            raise NotInvariant(f"potential moved by {g}: {wg} != {w}")


def is_admissible(action: GroupAction) -> tuple[bool, str]:
    """Whether no arrow connects two vertices in the same unfrozen orbit.

    Returns (ok, witness); witness names the offending arrow when not ok.
    """
    q = action.quiver
    orb_of = {}
    for orb in action.orbits():
        for v in orb.members:
            orb_of[v] = orb
    unfrozen = set(q.unfrozen_vertices)
    for a in q.arrows:
        if a.source in unfrozen and a.target in unfrozen and orb_of[a.source] is orb_of[a.target]:
            if orb_of[a.source] == orb_of[a.target]:
                return False, f"arrow {a.id}: {a.source} -> {a.target} joins one unfrozen orbit"
    return True, ""


def require_admissible(action: GroupAction) -> None:
    ok, witness = is_admissible(action)
    if not ok:
        raise NotAdmissible(witness)
