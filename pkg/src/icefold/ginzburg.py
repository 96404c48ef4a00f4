"""Differential graded quivers: the relative completion of an ice quiver with
potential, the boundary dg quiver of the frozen part, and the comparison
functor between them.

Conventions are cohomological: the differential raises degree by one and acts
as a derivation with the sign (-1)^deg on the left factor. For an ice quiver
whose arrows sit in degree 0 and a potential of length-0 degree, the added
generators are

* a dual ``a^`` of degree ``2 - n`` for each unfrozen arrow ``a``, with
  ``d(a^)`` the cyclic derivative of the potential,
* a loop ``t{i}`` of degree ``1 - n`` at each unfrozen vertex, killing the
  sum of commutators ``[a, a^]`` at that vertex.

The boundary dg quiver of the frozen subquiver instead adds a reversed arrow
``a~`` of degree ``3 - n`` per frozen arrow and a loop ``r{i}`` of degree
``2 - n`` per frozen vertex.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import ChainMapFailure, DegreeMismatch, ValidationError
from .quiver import GradedArrow, IceQuiver, PathSum, Potential, cyclic_derivative


Combo = dict[tuple[str, ...], Fraction]


class DgQuiver:
    """A graded quiver carrying a square-zero degree +1 differential.

    ``differential`` maps arrow ids to path sums with matching endpoints;
    absent ids have zero differential.
    """

    def __init__(self, quiver: IceQuiver, differential: Mapping[str, PathSum]):
        self.quiver = quiver
        self.differential = dict(differential)
        self._validate()

    def _validate(self):
        q = self.quiver
        for aid, ps in self.differential.items():
            a = q.arrow(aid)
            if not ps.is_zero() and (ps.source, ps.target) != (a.source, a.target):
                raise ValidationError(
                    f"d({aid}) runs {ps.source}->{ps.target}, expected "
                    f"{a.source}->{a.target}"
                )
            for _, path in ps.terms:
                deg = sum(q.arrow(x).degree for x in path)
                if deg != a.degree + 1:
                    raise DegreeMismatch(
                        f"d({aid}) has a term of degree {deg}, expected {a.degree + 1}"
                    )

    def d_arrow(self, aid: str) -> Combo:
        ps = self.differential.get(aid)
        if ps is None:
            return {}
        return {p: c for c, p in ps.terms}

    def d_combo(self, combo: Combo) -> Combo:
        """Extend the differential to path combinations as a derivation."""
        q = self.quiver
        out: Combo = {}
        for path, coeff in combo.items():
            prefix_deg = 0
            for k, aid in enumerate(path):
                da = self.d_arrow(aid)
                if da:
                    sign = -1 if prefix_deg % 2 else 1
                    for sub, c in da.items():
                        new = path[:k] + sub + path[k + 1 :]
                        out[new] = out.get(new, Fraction(0)) + coeff * c * sign
                prefix_deg += q.arrow(aid).degree
        return {k: v for k, v in out.items() if v != 0}

    def check_square_zero(self) -> None:
        for aid in self.differential:
            res = self.d_combo(self.d_arrow(aid))
            if res:
                raise ChainMapFailure(aid, res)

    def generators_by_degree(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for a in self.quiver.arrows:
            out.setdefault(a.degree, []).append(a.id)
        return out

    def __repr__(self):
        return f"DgQuiver({self.quiver!r}, {len(self.differential)} nonzero differentials)"


def _fresh(name: str, taken: set[str]) -> str:
    if name in taken:
        raise ValidationError(f"generator name {name!r} collides with an arrow id")
    taken.add(name)
    return name


def _vertex_commutator_sum(
    q: IceQuiver, i: int, pairs: list[tuple[str, str]]
) -> PathSum:
    """e_i (sum of [a, b] over the given (a, b) pairs) e_i, where each b runs
    opposite to a; only the loop components based at i survive."""
    acc: Combo = {}
    for aid, bid in pairs:
        a = q.arrow(aid)
        if a.source == i:
            key = (aid, bid)
            acc[key] = acc.get(key, Fraction(0)) + 1
        if a.target == i:
            key = (bid, aid)
            acc[key] = acc.get(key, Fraction(0)) - 1
    return PathSum(acc, i, i, q)


def relative_ginzburg(quiver: IceQuiver, w: Potential, n: int = 3) -> DgQuiver:
    """The relative differential graded completion of an ice quiver with
    potential, in Calabi-Yau dimension ``n``."""
    if any(a.degree != 0 for a in quiver.arrows):
        raise ValidationError("base arrows must sit in degree 0")
    taken = {a.id for a in quiver.arrows}
    arrows = list(quiver.arrows)
    dual_of: dict[str, str] = {}
    for a in quiver.unfrozen_arrows:
        did = _fresh(f"{a.id}^", taken)
        dual_of[a.id] = did
        arrows.append(GradedArrow(did, a.target, a.source, 2 - n))
    loop_of: dict[int, str] = {}
    for i in quiver.unfrozen_vertices:
        tid = _fresh(f"t{i}", taken)
        loop_of[i] = tid
        arrows.append(GradedArrow(tid, i, i, 1 - n))
    big = IceQuiver(quiver.vertices, arrows, quiver.frozen_vertices, quiver.frozen_arrows)

    w_big = Potential([(c, cyc.arrows) for c, cyc in w.terms], big)
    diff: dict[str, PathSum] = {}
    for aid, did in dual_of.items():
        ps = cyclic_derivative(w_big, aid)
        if not ps.is_zero():
            diff[did] = ps
    pairs = [(aid, did) for aid, did in dual_of.items()]
    for i, tid in loop_of.items():
        ps = _vertex_commutator_sum(big, i, pairs)
        if not ps.is_zero():
            diff[tid] = ps
    dg = DgQuiver(big, diff)
    dg.check_square_zero()
    return dg


def boundary_dg_quiver(frozen: IceQuiver, n: int = 3) -> DgQuiver:
    """The dg quiver attached to the frozen subquiver: reversed arrows of
    degree ``3 - n`` and loops of degree ``2 - n``, with the loop
    differential the commutator sum of each arrow with its reversal."""
    if any(a.degree != 0 for a in frozen.arrows):
        raise ValidationError("base arrows must sit in degree 0")
    if set(frozen.frozen_vertices) != set(frozen.vertex_ids):
        raise ValidationError("the boundary construction expects a fully frozen quiver")
    taken = {a.id for a in frozen.arrows}
    arrows = list(frozen.arrows)
    rev_of: dict[str, str] = {}
    for a in frozen.arrows:
        rid = _fresh(f"{a.id}~", taken)
        rev_of[a.id] = rid
        arrows.append(GradedArrow(rid, a.target, a.source, 3 - n))
    loop_of: dict[int, str] = {}
    for i in frozen.vertex_ids:
        rid = _fresh(f"r{i}", taken)
        loop_of[i] = rid
        arrows.append(GradedArrow(rid, i, i, 2 - n))
    big = IceQuiver(frozen.vertices, arrows, frozen.frozen_vertices, frozen.frozen_arrows)
    diff: dict[str, PathSum] = {}
    pairs = [(aid, rid) for aid, rid in rev_of.items()]
    for i, rid in loop_of.items():
        ps = _vertex_commutator_sum(big, i, pairs)
        if not ps.is_zero():
            diff[rid] = ps
    dg = DgQuiver(big, diff)
    dg.check_square_zero()
    return dg


class DgFunctor:
    """A dg functor between dg quivers sharing vertex ids on the source side.

    ``vertex_map`` sends source vertices into target vertices; ``arrow_map``
    sends each source generator to a path sum in the target.
    """

    def __init__(
        self,
        source: DgQuiver,
        target: DgQuiver,
        vertex_map: Mapping[int, int],
        arrow_map: Mapping[str, PathSum],
    ):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.arrow_map = dict(arrow_map)
        self._validate()

    def _validate(self):
        sq, tq = self.source.quiver, self.target.quiver
        for v in sq.vertex_ids:
            if v not in self.vertex_map or not tq.has_vertex(self.vertex_map[v]):
                raise ValidationError(f"vertex {v} has no image")
        for a in sq.arrows:
            ps = self.arrow_map.get(a.id)
            if ps is None:
                raise ValidationError(f"generator {a.id} has no image")
            if not ps.is_zero():
                want = (self.vertex_map[a.source], self.vertex_map[a.target])
                if (ps.source, ps.target) != want:
                    raise ValidationError(f"image of {a.id} has wrong endpoints")
                for _, path in ps.terms:
                    deg = sum(tq.arrow(x).degree for x in path)
                    if deg != a.degree:
                        raise DegreeMismatch(
                            f"image of {a.id} has a term of degree {deg}, "
                            f"expected {a.degree}"
                        )

    def apply_combo(self, combo: Combo) -> Combo:
        out: Combo = {}
        for path, coeff in combo.items():
            images = [dict((p, c) for c, p in self.arrow_map[aid].terms) for aid in path]
            acc: Combo = {(): coeff}
            for img in images:
                nxt: Combo = {}
                for p1, c1 in acc.items():
                    for p2, c2 in img.items():
                        key = p1 + p2
                        nxt[key] = nxt.get(key, Fraction(0)) + c1 * c2
                acc = nxt
            for p, c in acc.items():
                out[p] = out.get(p, Fraction(0)) + c
        return {k: v for k, v in out.items() if v != 0}

    def check_chain_map(self) -> None:
        """d_target(F(a)) must equal F(d_source(a)) on every generator."""
        for a in self.source.quiver.arrows:
            lhs = self.target.d_combo(
                dict((p, c) for c, p in self.arrow_map[a.id].terms)
            )
            rhs = self.apply_combo(self.source.d_arrow(a.id))
            residual = dict(lhs)
            for p, c in rhs.items():
                residual[p] = residual.get(p, Fraction(0)) - c
            residual = {k: v for k, v in residual.items() if v != 0}
            if residual:
                raise ChainMapFailure(a.id, residual)


def ginzburg_functor(quiver: IceQuiver, w: Potential, n: int = 3) -> DgFunctor:
    """The comparison functor from the boundary dg quiver of the frozen part
    into the relative completion: frozen arrows map to themselves, reversed
    arrows to minus the cyclic derivative of the potential, boundary loops to
    the commutator sum of the unfrozen arrows with their duals."""
    gamma = relative_ginzburg(quiver, w, n)
    pi = boundary_dg_quiver(quiver.frozen_subquiver(), n)
    gq = gamma.quiver
    w_big = Potential([(c, cyc.arrows) for c, cyc in w.terms], gq)

    arrow_map: dict[str, PathSum] = {}
    for a in quiver.arrows:
        if a.id in quiver.frozen_arrows:
            arrow_map[a.id] = PathSum({(a.id,): Fraction(1)}, a.source, a.target, gq)
    for a in quiver.arrows:
        if a.id not in quiver.frozen_arrows:
            continue
        rid = f"{a.id}~"
        ps = cyclic_derivative(w_big, a.id)
        arrow_map[rid] = -ps if not ps.is_zero() else PathSum.zero(a.target, a.source, gq)
    dual_pairs = [
        (a.id, f"{a.id}^") for a in quiver.unfrozen_arrows
    ]
    for i in quiver.frozen_vertices:
        rid = f"r{i}"
        arrow_map[rid] = _vertex_commutator_sum(gq, i, dual_pairs)
    functor = DgFunctor(pi, gamma, {v: v for v in pi.quiver.vertex_ids}, arrow_map)
    functor.check_chain_map()
    return functor
