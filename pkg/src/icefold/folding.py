"""Folding an ice quiver with potential along a finite abelian group action.

The folded quiver has vertices (i, rho) for i an orbit representative and rho
an irreducible character of the vertex stabilizer; arrow multiplicities are
character-theoretic and computed exactly in a cyclotomic field. The folded
potential is obtained inside the skew group algebra: the invariant potential
is transported into the corner algebra cut out by the idempotents of the
chosen representatives, then expressed over products of chosen arrow-basis
elements modulo commutators.

All vertex stabilizers must be abelian; only 1-dimensional characters occur.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import Cyclotomic
from .errors import (
    NonAbelianStabilizer,
    NotInvariant,
    ValidationError,
)
from .groups import FiniteGroup, GroupAction, Orbit, potential_invariant, require_admissible
from .quiver import Cycle, GradedArrow, IceQuiver, Potential, Vertex, canonical_cycle


# ---------------------------------------------------------------------------
# characters of abelian subgroups


def subgroup_characters(
    group: FiniteGroup, elements: Sequence[str], m: int
) -> list[dict[str, int]]:
    """All irreducible characters of an abelian subgroup.

    Each character is a dict mapping subgroup elements to exponents k with
    value zeta_m ** k, where m is the exponent of the ambient group. Raises
    NonAbelianStabilizer when the subgroup is not abelian.
    """
    H = tuple(elements)
    hs = set(H)
    for g in H:
        for h in H:
            if group.mul(g, h) != group.mul(h, g):
                raise NonAbelianStabilizer(f"{g} and {h} do not commute")
    if len(H) == 1:
        return [{group.identity: 0}]
    # greedy generating set
    gens: list[str] = []
    generated = {group.identity}
    while len(generated) < len(H):
        cand = max(
            (g for g in H if g not in generated),
            key=lambda g: group.element_order(g),
        )
        gens.append(cand)
        generated = set(group.subgroup_elements(gens))
    orders = [group.element_order(g) for g in gens]
    chars: list[dict[str, int]] = []
    seen: set[tuple[int, ...]] = set()
    for ts in itertools.product(*(range(d) for d in orders)):
        gen_val = {g: (m // d) * t for g, d, t in zip(gens, orders, ts)}
        chi = {group.identity: 0}
        frontier = [group.identity]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g in gens:
                y = group.mul(x, g)
                val = (chi[x] + gen_val[g]) % m
                if y in chi:
                    if chi[y] != val:
                        ok = False
                        break
                else:
                    chi[y] = val
                    frontier.append(y)
        if not ok or set(chi) != hs:
            continue
        if any(chi[group.mul(g, h)] != (chi[g] + chi[h]) % m for g in H for h in H):
            continue
        key = tuple(chi[g] for g in H)
        if key not in seen:
            seen.add(key)
            chars.append(chi)
    if len(chars) != len(H):
        raise ValidationError(
            f"found {len(chars)} characters for a subgroup of order {len(H)}"
        )
    chars.sort(key=lambda chi: tuple(chi[g] for g in H))
    return chars


def character_name(chars: Sequence[dict[str, int]], idx: int, subgroup: Sequence[str]) -> str:
    """Display names: K for the trivial stabilizer, +/- for order two,
    r0, r1, ... otherwise (r0 trivial)."""
    if len(chars) == 1:
        return "K"
    if len(chars) == 2:
        trivial = all(chars[idx][g] == 0 for g in subgroup)
        return "+" if trivial else "-"
    return f"r{idx}"


# ---------------------------------------------------------------------------
# skew group algebra


class SkewElement:
    """Element of the skew group algebra of a path algebra.

    Monomials are (source vertex, traversal-order path, group element); the
    empty path is the lazy path at the source vertex. Coefficients live in
    Q(zeta_m) for m the exponent of the group.
    """

    __slots__ = ("action", "m", "terms")

    def __init__(self, action: GroupAction, m: int, terms=None):
        self.action = action
        self.m = m
        self.terms: dict[tuple[int, tuple[str, ...], str], Cyclotomic] = {}
        if terms:
            for key, c in dict(terms).items():
                if not c.is_zero():
                    self.terms[key] = c

    @classmethod
    def zero(cls, action: GroupAction, m: int) -> "SkewElement":
        return cls(action, m)

    @classmethod
    def monomial(
        cls, action: GroupAction, m: int, src: int, path: Sequence[str], g: str, coeff=None
    ) -> "SkewElement":
        coeff = coeff if coeff is not None else Cyclotomic.one(m)
        return cls(action, m, {(src, tuple(path), g): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def _endpoint(self, key) -> int:
        src, path, _ = key
        if not path:
            return src
        return self.action.quiver.arrow(path[-1]).target

    def __add__(self, other: "SkewElement") -> "SkewElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Cyclotomic.zero(self.m)) + c
        return SkewElement(self.action, self.m, out)

    def __neg__(self) -> "SkewElement":
        return SkewElement(self.action, self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SkewElement":
        if isinstance(c, (int, Fraction)):
            c = Cyclotomic.rational(self.m, c)
        return SkewElement(self.action, self.m, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "SkewElement") -> "SkewElement":
        act = self.action
        out: dict[tuple[int, tuple[str, ...], str], Cyclotomic] = {}
        for (s1, p1, g), c1 in self.terms.items():
            t1 = s1 if not p1 else act.quiver.arrow(p1[-1]).target
            for (s2, p2, h), c2 in other.terms.items():
                s2g = act.act_vertex(g, s2)
                if t1 != s2g:
                    continue
                sign, p2g = act.act_path(g, p2)
                key = (s1, p1 + p2g, act.group.mul(g, h))
                c = c1 * c2 * sign
                out[key] = out.get(key, Cyclotomic.zero(self.m)) + c
        return SkewElement(self.action, self.m, out)

    def __eq__(self, other):
        return isinstance(other, SkewElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "SkewElement(0)"
        bits = []
        for (s, p, g), c in sorted(self.terms.items(), key=lambda kv: kv[0]):
            word = ".".join(p) if p else f"e{s}"
            bits.append(f"({c})*{word}*{g}")
        return "SkewElement(" + " + ".join(bits) + ")"


def group_element_in_algebra(
    action: GroupAction, m: int, kg: Iterable[tuple[Cyclotomic, str]], vertex: int
) -> SkewElement:
    """e_v * (sum of group terms) as a skew element."""
    terms = {}
    for c, g in kg:
        key = (vertex, (), g)
        terms[key] = terms.get(key, Cyclotomic.zero(m)) + c
    return SkewElement(action, m, terms)


def character_idempotent(
    action: GroupAction, m: int, vertex: int, subgroup: Sequence[str], chi: dict[str, int]
) -> SkewElement:
    """e_vertex * P_chi with P_chi the primitive idempotent of the character."""
    G = action.group
    scale = Fraction(1, len(subgroup))
    kg = [
        (Cyclotomic.root_of_unity(m, -chi[h]) * scale, h)
        for h in subgroup
    ]
    return group_element_in_algebra(action, m, kg, vertex)


# ---------------------------------------------------------------------------
# M-spaces and arrow multiplicities


def coset_representatives(action: GroupAction, j: int) -> dict[int, str]:
    """For each vertex in the orbit of j, the first group element carrying j there."""
    reps: dict[int, str] = {}
    for g in action.group.elements:
        w = action.act_vertex(g, j)
        reps.setdefault(w, g)
    return reps


def m_space_basis(
    action: GroupAction, i: int, j: int, frozen_only: bool = False
) -> list[tuple[str, str]]:
    """Basis (y, arrow) of the bimodule spanned by arrows out of i into the
    orbit of j, indexed over coset representatives y."""
    q = action.quiver
    reps = coset_representatives(action, j)
    basis = []
    for w in sorted(reps):
        y = reps[w]
        for a in q.arrows:
            if a.source == i and a.target == w:
                if frozen_only and a.id not in q.frozen_arrows:
                    continue
                basis.append((y, a.id))
    return basis


def m_space_character(
    action: GroupAction,
    m: int,
    i: int,
    j: int,
    tau: dict[str, int],
    frozen_only: bool = False,
) -> dict[str, Cyclotomic]:
    """Character of the stabilizer of i on the M-space twisted by tau."""
    G = action.group
    reps = coset_representatives(action, j)
    rep_of = {w: y for w, y in reps.items()}
    basis = m_space_basis(action, i, j, frozen_only)
    stab_i = action.stabilizer(i)
    out: dict[str, Cyclotomic] = {}
    for h in stab_i:
        total = Cyclotomic.zero(m)
        for y, aid in basis:
            sign, a2 = action.act_arrow(h, aid)
            hy = G.mul(h, y)
            w2 = action.act_vertex(hy, j)
            y2 = rep_of[w2]
            if (y2, a2) != (y, aid):
                continue
            gprime = G.mul(G.inv(y2), hy)
            total = total + Cyclotomic.root_of_unity(m, tau[gprime]) * sign
        out[h] = total
    return out


def multiplicity(
    group: FiniteGroup,
    m: int,
    stab: Sequence[str],
    rho: dict[str, int],
    chi_m: dict[str, Cyclotomic],
) -> int:
    """Multiplicity of the character rho inside a stabilizer representation."""
    total = Cyclotomic.zero(m)
    for h in stab:
        total = total + Cyclotomic.root_of_unity(m, -rho[h]) * chi_m[h]
    val = total / len(stab)
    q = val.as_rational()
    if q.denominator != 1 or q < 0:
        raise ValidationError(f"multiplicity {q} is not a nonnegative integer")
    return int(q)


# ---------------------------------------------------------------------------
# folded quiver


@dataclass
class FoldedVertex:
    id: int
    orbit_rep: int
    char_index: int
    char_name: str

    @property
    def label(self) -> str:
        return f"({self.orbit_rep},{self.char_name})"


@dataclass
class FoldedArrowInfo:
    id: str
    source: int
    target: int
    frozen: bool


class FoldedQuiver:
    """The folded ice quiver together with the data needed to fold potentials.

    Attributes: ``quiver`` (the folded IceQuiver), ``vertices`` (FoldedVertex
    list), ``chars`` (orbit rep -> character list), ``stabs`` (orbit rep ->
    stabilizer elements), ``m`` (cyclotomic order), ``action`` (the input).
    """

    def __init__(self, action: GroupAction):
        require_admissible(action)
        self.action = action
        G = action.group
        if not G.is_abelian():
            # abelian stabilizers suffice, but all our groups are abelian
            for v in action.quiver.vertex_ids:
                subgroup_characters(G, action.stabilizer(v), G.exponent())
        self.m = G.exponent()
        q = action.quiver
        orbits = action.orbits()
        self.orbits = orbits
        self.stabs: dict[int, tuple[str, ...]] = {}
        self.chars: dict[int, list[dict[str, int]]] = {}
        self.vertices: list[FoldedVertex] = []
        vid = 0
        self._vid_of: dict[tuple[int, int], int] = {}
        for orb in orbits:
            i = orb.least
            stab = action.stabilizer(i)
            self.stabs[i] = stab
            chars = subgroup_characters(G, stab, self.m)
            self.chars[i] = chars
            for k in range(len(chars)):
                vid += 1
                name = character_name(chars, k, stab)
                self.vertices.append(FoldedVertex(vid, i, k, name))
                self._vid_of[(i, k)] = vid
        frozen_reps = {o.least for o in orbits if o.least in q.frozen_vertices}
        frozen_vids = {v.id for v in self.vertices if v.orbit_rep in frozen_reps}

        arrows: list[GradedArrow] = []
        frozen_arrow_ids: list[str] = []
        self.arrow_pairs: dict[str, tuple[FoldedVertex, FoldedVertex]] = {}
        used_ids: set[str] = set()
        for vs in self.vertices:
            for vt in self.vertices:
                i, j = vs.orbit_rep, vt.orbit_rep
                rho = self.chars[i][vs.char_index]
                tau = self.chars[j][vt.char_index]
                chi_m = m_space_character(action, self.m, i, j, tau)
                n = multiplicity(G, self.m, self.stabs[i], rho, chi_m)
                if n == 0:
                    continue
                nf = 0
                if i in frozen_reps and j in frozen_reps:
                    chi_f = m_space_character(action, self.m, i, j, tau, frozen_only=True)
                    nf = multiplicity(G, self.m, self.stabs[i], rho, chi_f)
                for k in range(n):
                    aid = self._arrow_name(vs, vt, k, used_ids)
                    used_ids.add(aid)
                    arrows.append(GradedArrow(aid, vs.id, vt.id))
                    self.arrow_pairs[aid] = (vs, vt)
                    if k < nf:
                        frozen_arrow_ids.append(aid)
        verts = [Vertex(v.id, v.label) for v in self.vertices]
        self.quiver = IceQuiver(verts, arrows, frozen_vids, frozen_arrow_ids)

    @staticmethod
    def _arrow_name(vs: FoldedVertex, vt: FoldedVertex, k: int, used: set[str]) -> str:
        base = f"x{vs.orbit_rep}{vt.orbit_rep}"
        stag = vs.char_name if vs.char_name != "K" else ""
        ttag = vt.char_name if vt.char_name != "K" else ""
        candidates = [base + t for t in (stag, ttag, stag + ttag) if t] + [base]
        for cand in candidates:
            name = cand if k == 0 else cand + "abcdefgh"[k]
            if name not in used:
                return name
        n = 0
        while f"{base}_{n}" in used:
            n += 1
        return f"{base}_{n}"

    def vertex_id(self, orbit_rep: int, char_index: int) -> int:
        return self._vid_of[(orbit_rep, char_index)]

    def idempotent(self, fv: FoldedVertex) -> SkewElement:
        chi = self.chars[fv.orbit_rep][fv.char_index]
        return character_idempotent(
            self.action, self.m, fv.orbit_rep, self.stabs[fv.orbit_rep], chi
        )


def fold_quiver(action: GroupAction) -> FoldedQuiver:
    return FoldedQuiver(action)


# ---------------------------------------------------------------------------
# dimension verification: corner dimensions against arrow counts


def _skew_vector(el: SkewElement, index: dict, m: int) -> list[Fraction]:
    vec = [Fraction(0)] * (len(index) * _phi_len(m))
    w = _phi_len(m)
    for key, c in el.terms.items():
        base = index[key] * w
        for t, coord in enumerate(c.coeffs):
            vec[base + t] = coord
    return vec


def _phi_len(m: int) -> int:
    from .cyclotomic import cyclotomic_polynomial

    return len(cyclotomic_polynomial(m)) - 1


def verify_gamma(folded: FoldedQuiver) -> dict[tuple[int, int], tuple[int, int]]:
    """Compare, for each folded vertex pair, the arrow count with the
    dimension of the matching corner of the degree-one component of the skew
    group algebra. The dimension is the trace of the idempotent sandwich
    operator. Returns {(source id, target id): (arrows, dimension)} and
    raises ValidationError on any mismatch.
    """
    action = folded.action
    q = action.quiver
    m = folded.m
    basis_keys = [
        (a.source, (a.id,), g) for a in q.arrows for g in action.group.elements
    ]
    idx = {k: n for n, k in enumerate(basis_keys)}
    out: dict[tuple[int, int], tuple[int, int]] = {}
    for vs in folded.vertices:
        eps_s = folded.idempotent(vs)
        for vt in folded.vertices:
            eps_t = folded.idempotent(vt)
            trace = Fraction(0)
            for key in basis_keys:
                mono = SkewElement.monomial(action, m, key[0], key[1], key[2])
                img = eps_s * mono * eps_t
                c = img.terms.get(key)
                if c is not None:
                    trace += c.as_rational() if c.is_rational() else _rational_part_strict(c)
            if trace.denominator != 1:
                raise ValidationError(
                    f"corner trace {trace} at ({vs.label},{vt.label}) is not an integer"
                )
            count = sum(
                1
                for a in folded.quiver.arrows
                if a.source == vs.id and a.target == vt.id
            )
            out[(vs.id, vt.id)] = (count, int(trace))
            if count != int(trace):
                raise ValidationError(
                    f"arrow count {count} != corner dimension {int(trace)} "
                    f"at ({vs.label},{vt.label})"
                )
    return out


def _rational_part_strict(c: Cyclotomic) -> Fraction:
    if not c.is_rational():
        raise ValidationError(f"expected a rational trace term, got {c!r}")
    return c.as_rational()


# ---------------------------------------------------------------------------
# folding the potential


def _corner_arrow_bases(folded: FoldedQuiver) -> dict[str, SkewElement]:
    """One skew-algebra element per folded arrow, spanning its corner space.

    The corner for a folded arrow (i,rho) -> (j,tau) is the idempotent
    sandwich of the degree-one component; a deterministic reduced basis is
    chosen and its vectors assigned to the arrows of that pair in id order.
    """
    action = folded.action
    q = action.quiver
    m = folded.m
    basis_keys = [
        (a.source, (a.id,), g) for a in q.arrows for g in action.group.elements
    ]
    idx = {k: n for n, k in enumerate(basis_keys)}
    result: dict[str, SkewElement] = {}
    pairs: dict[tuple[int, int], list[str]] = {}
    for aid, (vs, vt) in folded.arrow_pairs.items():
        pairs.setdefault((vs.id, vt.id), []).append(aid)
    fv_by_id = {v.id: v for v in folded.vertices}
    for (sid, tid), aids in pairs.items():
        aids.sort()
        eps_s = folded.idempotent(fv_by_id[sid])
        eps_t = folded.idempotent(fv_by_id[tid])
        spanning: list[tuple[list[Fraction], SkewElement]] = []
        for key in basis_keys:
            mono = SkewElement.monomial(action, m, key[0], key[1], key[2])
            img = eps_s * mono * eps_t
            if not img.is_zero():
                spanning.append((_skew_vector(img, idx, m), img))
        chosen = _independent_prefix(spanning, len(aids))
        if len(chosen) != len(aids):
            raise ValidationError(
                f"corner at ({sid},{tid}) has rank {len(chosen)}, expected {len(aids)}"
            )
        for aid, el in zip(aids, chosen):
            result[aid] = el
    return result


def _independent_prefix(spanning, want: int):
    """First linearly independent elements of a spanning list."""
    pivots: dict[int, list[Fraction]] = {}
    chosen = []
    for vec, el in spanning:
        vec = list(vec)
        for p, pv in pivots.items():
            if vec[p] != 0:
                c = vec[p]
                vec = [a - c * b for a, b in zip(vec, pv)]
        lead = next((n for n, x in enumerate(vec) if x != 0), None)
        if lead is None:
            continue
        c = vec[lead]
        pivots[lead] = [x / c for x in vec]
        chosen.append(el)
        if len(chosen) == want:
            break
    return chosen


def _cycles_of_length(q: IceQuiver, length: int) -> list[Cycle]:
    out: set[Cycle] = set()
    arrows = q.arrows

    def extend(path: list[str], start: int, at: int):
        if len(path) == length:
            if at == start:
                out.add(canonical_cycle(path, q))
            return
        for a in arrows:
            if a.source == at:
                extend(path + [a.id], start, a.target)

    for a in arrows:
        extend([a.id], a.source, a.target)
    return sorted(out, key=lambda c: c.arrows)


def _rref(rows: list[list[Fraction]]):
    """Row-reduce in place; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def fold_potential(folded: FoldedQuiver, w: Potential) -> Potential:
    """Transport an invariant potential to the folded quiver.

    The potential is moved into the corner algebra of the representative
    idempotents, then matched against the products of the chosen arrow-basis
    elements over the oriented cycles of the folded quiver, modulo the
    commutator subspace of the relevant length component. Coefficients are
    afterwards rescaled arrow-by-arrow towards unit magnitude when an exact
    rescaling exists.
    """
    action = folded.action
    G = action.group
    q = action.quiver
    m = folded.m
    potential_invariant(action, w)
    if w.is_zero():
        return Potential.zero(folded.quiver)
    lengths = {len(cyc) for _, cyc in w.terms}
    if len(lengths) != 1:
        raise ValidationError("potential terms must have one common length")
    (length,) = lengths

    w_alg = SkewElement.zero(action, m)
    for c, cyc in w.terms:
        src = q.arrow(cyc.arrows[0]).source
        w_alg = w_alg + SkewElement.monomial(
            action, m, src, cyc.arrows, G.identity, Cyclotomic.rational(m, c)
        )

    # transport into the corner of the representative idempotents
    w_rep = SkewElement.zero(action, m)
    for orb in folded.orbits:
        i = orb.least
        stab = folded.stabs[i]
        for chi in folded.chars[i]:
            for v in orb.members:
                y = coset_representatives(action, i)[v]
                p_chi = [
                    (Cyclotomic.root_of_unity(m, -chi[h]) * Fraction(1, len(stab)), h)
                    for h in stab
                ]
                left = group_element_in_algebra(
                    action, m,
                    [(c, G.mul(h, G.inv(y))) for c, h in p_chi],
                    i,
                )
                right = group_element_in_algebra(
                    action, m,
                    [(c, G.mul(y, h)) for c, h in p_chi],
                    v,
                )
                w_rep = w_rep + left * w_alg * right

    arrow_basis = _corner_arrow_bases(folded)
    cycles = _cycles_of_length(folded.quiver, length)
    if not cycles:
        raise ValidationError("no candidate cycles in the folded quiver")
    products: list[tuple[Cycle, SkewElement]] = []
    for cyc in cycles:
        el = arrow_basis[cyc.arrows[0]]
        for aid in cyc.arrows[1:]:
            el = el * arrow_basis[aid]
        products.append((cyc, el))

    # index all length-`length` monomials that occur
    keys: dict[tuple, int] = {}

    def note(el: SkewElement):
        for k in el.terms:
            keys.setdefault(k, len(keys))

    note(w_rep)
    for _, el in products:
        note(el)

    def monomials(n: int):
        if n == 0:
            for v in q.vertex_ids:
                for g in G.elements:
                    yield SkewElement.monomial(action, m, v, (), g)
            return
        def extend(path, at):
            if len(path) == n:
                src = q.arrow(path[0]).source
                for g in G.elements:
                    yield SkewElement.monomial(action, m, src, tuple(path), g)
                return
            for a in q.arrows:
                if a.source == at:
                    yield from extend(path + [a.id], a.target)
        for a in q.arrows:
            yield from extend([a.id], a.target)

    commutators: list[SkewElement] = []
    for k in (0, 1):
        for u in monomials(k):
            for v in monomials(length - k):
                c = u * v - v * u
                if not c.is_zero():
                    commutators.append(c)
                    note(c)

    width = _phi_len(m)

    def vec(el: SkewElement) -> list[Fraction]:
        out = [Fraction(0)] * (len(keys) * width)
        for k, c in el.terms.items():
            base = keys[k] * width
            for t, coord in enumerate(c.coeffs):
                out[base + t] = coord
        return out

    comm_rows, comm_pivots = _rref([vec(c) for c in commutators]) if commutators else ([], [])

    def reduce(v: list[Fraction]) -> list[Fraction]:
        v = list(v)
        for row, p in zip(comm_rows, comm_pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    cols = [reduce(vec(el)) for _, el in products]
    target = reduce(vec(w_rep))
    lam = _solve_rational(cols, target)
    if lam is None:
        raise ValidationError("folded potential is not a combination of folded cycles")

    terms = [(lam[n], cycles[n]) for n in range(len(cycles)) if lam[n] != 0]
    terms = _rescale_to_unit(terms, folded.quiver)
    return Potential(terms, folded.quiver)


def _solve_rational(cols: list[list[Fraction]], target: list[Fraction]):
    """Solve sum_n lam_n cols[n] = target exactly; None when inconsistent.
    Free variables are set to zero."""
    n = len(cols)
    if n == 0:
        return [] if all(x == 0 for x in target) else None
    rows = len(cols[0])
    aug = [[cols[c][r] for c in range(n)] + [target[r]] for r in range(rows)]
    red, pivots = _rref(aug)
    lam = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        if p == n:
            return None
        lam[p] = row[n]
    # verify (guards against free-variable choices breaking consistency)
    for r in range(rows):
        if sum(cols[c][r] * lam[c] for c in range(n)) != target[r]:
            return None
    return lam


def _rescale_to_unit(terms, quiver: IceQuiver):
    """Rescale arrow variables by positive rationals so that, when possible,
    every cycle coefficient has magnitude one. Works prime by prime on the
    multiplicative linear system given by cycle-arrow incidence."""
    if not terms:
        return terms
    arrows = sorted({a for _, cyc in terms for a in cyc.arrows})
    apos = {a: i for i, a in enumerate(arrows)}

    def factor(x: int) -> dict[int, int]:
        out: dict[int, int] = {}
        x = abs(x)
        d = 2
        while d * d <= x:
            while x % d == 0:
                out[d] = out.get(d, 0) + 1
                x //= d
            d += 1
        if x > 1:
            out[x] = out.get(x, 0) + 1
        return out

    primes: set[int] = set()
    exps = []
    for c, cyc in terms:
        e: dict[int, int] = {}
        for p, k in factor(c.numerator).items():
            e[p] = e.get(p, 0) + k
        for p, k in factor(c.denominator).items():
            e[p] = e.get(p, 0) - k
        exps.append(e)
        primes.update(e)
    if not primes:
        return terms
    incidence = []
    for _, cyc in terms:
        row = [Fraction(0)] * len(arrows)
        for a in cyc.arrows:
            row[apos[a]] += 1
        incidence.append(row)
    scale_exp = {a: {} for a in arrows}
    for p in sorted(primes):
        tgt = [Fraction(-exps[t].get(p, 0)) for t in range(len(terms))]
        cols = [[incidence[t][ai] for t in range(len(terms))] for ai in range(len(arrows))]
        sol = _solve_rational(cols, tgt)
        if sol is None:
            return terms
        for a, s in zip(arrows, sol):
            if s != 0:
                scale_exp[a][p] = s
    new_terms = []
    for (c, cyc), e in zip(terms, exps):
        f = Fraction(1)
        for a in cyc.arrows:
            for p, s in scale_exp[a].items():
                if s.denominator != 1:
                    return terms
                f *= Fraction(p) ** int(s)
        new_terms.append((c * f, cyc))
    return new_terms
