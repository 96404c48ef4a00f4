"""Cluster characters of quiver representations.

A representation of an acyclic ice quiver assigns a rational vector space to
each vertex and a matrix to each degree-0 arrow. Its character is

    x^(-index) * sum over e of euler(Gr_e) * x^(Btilde e)

where the index is the class [P0] - [P1] of a minimal projective
presentation over the path algebra of the full ice quiver, Gr_e is the
variety of submodules with dimension vector e, and its Euler characteristic
is obtained by counting points over several prime fields and evaluating the
interpolated counting polynomial at 1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NonPolynomialCount, ValidationError
from .laurent import Laurent
from .quiver import ExchangeMatrix, IceQuiver, exchange_matrix

Matrix = tuple[tuple[Fraction, ...], ...]


def _as_matrix(rows, nrows: int, ncols: int) -> Matrix:
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if len(m) != nrows or any(len(r) != ncols for r in m):
        raise ValidationError(f"matrix must be {nrows} x {ncols}")
    return m


class QuiverRepresentation:
    """Finite-dimensional representation with maps along the arrow direction.

    ``maps[a]`` is a (dim target) x (dim source) matrix acting on column
    vectors of the source space.
    """

    def __init__(
        self,
        quiver: IceQuiver,
        dims: Mapping[int, int],
        maps: Mapping[str, Sequence[Sequence]] | None = None,
    ):
        self.quiver = quiver
        self.dims = {v: int(dims.get(v, 0)) for v in quiver.vertex_ids}
        if any(d < 0 for d in self.dims.values()):
            raise ValidationError("negative dimension")
        self.maps: dict[str, Matrix] = {}
        maps = maps or {}
        for a in quiver.arrows:
            nr, nc = self.dims[a.target], self.dims[a.source]
            given = maps.get(a.id)
            if given is None:
                self.maps[a.id] = tuple(tuple(Fraction(0) for _ in range(nc)) for _ in range(nr))
            else:
                self.maps[a.id] = _as_matrix(given, nr, nc)

    @classmethod
    def simple(cls, quiver: IceQuiver, vertex: int) -> "QuiverRepresentation":
        return cls(quiver, {vertex: 1})

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dimension_vector(self) -> dict[int, int]:
        return dict(self.dims)

    def __repr__(self):
        nz = {v: d for v, d in self.dims.items() if d}
        return f"QuiverRepresentation({nz})"


# ---------------------------------------------------------------------------
# point counts over prime fields


def _rref_mod(rows: list[list[int]], q: int):
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [(x * inv) % q for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] % q:
                f = rows[k][c]
                rows[k] = [(a - f * b) % q for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _subspaces(d: int, k: int, q: int):
    """All k-dimensional subspaces of F_q^d as RREF row bases."""
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(d), k):
        free_cols = [
            [c for c in range(pivots[r] + 1, d) if c not in pivots]
            for r in range(k)
        ]
        slots = [(r, c) for r in range(k) for c in free_cols[r]]
        for vals in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * d for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


def _denominator_lcm(rep: QuiverRepresentation) -> int:
    from math import lcm

    out = 1
    for m in rep.maps.values():
        for row in m:
            for x in row:
                out = lcm(out, x.denominator)
    return out


def _maps_mod(rep: QuiverRepresentation, q: int) -> dict[str, list[list[int]]]:
    out = {}
    for aid, m in rep.maps.items():
        out[aid] = [
            [(x.numerator * pow(x.denominator, -1, q)) % q for x in row] for row in m
        ]
    return out


def _in_span(vec: list[int], basis_rref: list[list[int]], pivots: list[int], q: int) -> bool:
    v = vec[:]
    for row, p in zip(basis_rref, pivots):
        if v[p] % q:
            f = v[p]
            v = [(a - f * b) % q for a, b in zip(v, row)]
    return all(x % q == 0 for x in v)


def count_submodules(
    rep: QuiverRepresentation, e: Mapping[int, int], q: int
) -> int:
    """Number of subrepresentations with dimension vector e over F_q."""
    verts = [v for v in rep.quiver.vertex_ids if rep.dims[v] or e.get(v, 0)]
    for v in verts:
        if e.get(v, 0) > rep.dims[v]:
            return 0
    maps = _maps_mod(rep, q)
    choices = []
    for v in verts:
        choices.append(list(_subspaces(rep.dims[v], e.get(v, 0), q)))
    active = [v for v in verts if rep.dims[v]]
    arrows = [
        a for a in rep.quiver.arrows if rep.dims[a.source] and rep.dims[a.target]
    ]
    count = 0
    for combo in itertools.product(*choices):
        sub = dict(zip(verts, combo))
        ok = True
        for a in arrows:
            rows = [list(r) for r in sub[a.target]]
            red, piv = _rref_mod(rows, q) if rows else ([], [])
            m = maps[a.id]
            for uvec in sub[a.source]:
                img = [
                    sum(m[i][j] * uvec[j] for j in range(len(uvec))) % q
                    for i in range(rep.dims[a.target])
                ]
                if any(img) and not _in_span(img, red, piv, q):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def grassmannian_euler(rep: QuiverRepresentation, e: Mapping[int, int]) -> int:
    """Euler characteristic of the submodule Grassmannian at e.

    Counts points over prime fields, interpolates the counting polynomial of
    the expected degree, validates it on extra primes, and evaluates at 1.
    """
    deg = sum(
        e.get(v, 0) * (rep.dims[v] - e.get(v, 0)) for v in rep.quiver.vertex_ids
    )
    den = _denominator_lcm(rep)
    primes = [p for p in _PRIMES if den % p][: deg + 3]
    if len(primes) < deg + 3:
        raise NonPolynomialCount("not enough usable primes for interpolation")
    points = [(p, count_submodules(rep, e, p)) for p in primes]
    poly = _lagrange(points[: deg + 1])
    for p, n in points[deg + 1 :]:
        if _eval_poly(poly, Fraction(p)) != n:
            raise NonPolynomialCount(
                f"point counts are not polynomial of degree {deg} at e={dict(e)}"
            )
    val = _eval_poly(poly, Fraction(1))
    if val.denominator != 1:
        raise NonPolynomialCount(f"non-integer value {val} at q=1")
    return int(val)


def _lagrange(points):
    """Coefficient list (low first) of the interpolating polynomial."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
            denom *= Fraction(xi - xj)
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    return coeffs


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _eval_poly(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def submodule_dimension_vectors(rep: QuiverRepresentation) -> list[dict[int, int]]:
    verts = rep.quiver.vertex_ids
    ranges = [range(rep.dims[v] + 1) for v in verts]
    return [dict(zip(verts, combo)) for combo in itertools.product(*ranges)]


# ---------------------------------------------------------------------------
# projective presentations and the index


def _check_acyclic(q: IceQuiver):
    indeg = {v: 0 for v in q.vertex_ids}
    for a in q.arrows:
        indeg[a.target] += 1
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for a in q.arrows:
            if a.source == v:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
    if seen != len(q.vertex_ids):
        raise ValidationError("index computation needs an acyclic quiver")


def _paths_from(q: IceQuiver, start: int) -> list[tuple[str, ...]]:
    out = [()]
    frontier = [((), start)]
    while frontier:
        path, at = frontier.pop()
        for a in q.arrows:
            if a.source == at:
                np = path + (a.id,)
                out.append(np)
                frontier.append((np, a.target))
    return out


def projective_representation(q: IceQuiver, vertex: int) -> QuiverRepresentation:
    """The projective at a vertex: basis the paths out of it, arrows acting
    by concatenation."""
    _check_acyclic(q)
    paths = _paths_from(q, vertex)
    at: dict[int, list[tuple[str, ...]]] = {v: [] for v in q.vertex_ids}
    for p in paths:
        end = vertex if not p else q.arrow(p[-1]).target
        at[end].append(p)
    for v in at:
        at[v].sort()
    dims = {v: len(at[v]) for v in q.vertex_ids}
    maps = {}
    for a in q.arrows:
        src, tgt = at[a.source], at[a.target]
        pos = {p: i for i, p in enumerate(tgt)}
        m = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
        for j, p in enumerate(src):
            m[pos[p + (a.id,)]][j] = Fraction(1)
        maps[a.id] = m
    return QuiverRepresentation(q, dims, maps)


def _rref_q(rows: list[list[Fraction]]):
    rows = [r[:] for r in rows]
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
    return rows[:r], pivots


def radical_dims(rep: QuiverRepresentation) -> dict[int, int]:
    out = {}
    for v in rep.quiver.vertex_ids:
        rows: list[list[Fraction]] = []
        for a in rep.quiver.arrows:
            if a.target == v and rep.dims[a.source]:
                m = rep.maps[a.id]
                for j in range(rep.dims[a.source]):
                    rows.append([m[i][j] for i in range(rep.dims[v])])
        red, piv = _rref_q(rows) if rows else ([], [])
        out[v] = len(piv)
    return out


def top_dims(rep: QuiverRepresentation) -> dict[int, int]:
    rad = radical_dims(rep)
    return {v: rep.dims[v] - rad[v] for v in rep.quiver.vertex_ids}


def _direct_sum(q: IceQuiver, parts: list[QuiverRepresentation]) -> QuiverRepresentation:
    dims = {v: sum(p.dims[v] for p in parts) for v in q.vertex_ids}
    maps = {}
    for a in q.arrows:
        m = [[Fraction(0)] * dims[a.source] for _ in range(dims[a.target])]
        ro = co = 0
        for p in parts:
            pm = p.maps[a.id]
            for i in range(p.dims[a.target]):
                for j in range(p.dims[a.source]):
                    m[ro + i][co + j] = pm[i][j]
            ro += p.dims[a.target]
            co += p.dims[a.source]
        maps[a.id] = m
    return QuiverRepresentation(q, dims, maps)


class _Morphism:
    """Vertex-wise matrices commuting with the arrow maps (not checked)."""

    def __init__(self, src: QuiverRepresentation, dst: QuiverRepresentation, blocks):
        self.src = src
        self.dst = dst
        self.blocks = blocks  # vertex -> (dst dim) x (src dim)


def _cover(q: IceQuiver, rep: QuiverRepresentation):
    """Projective cover P -> rep: returns (multiplicities, P, morphism)."""
    rad = radical_dims(rep)
    mult = {v: rep.dims[v] - rad[v] for v in q.vertex_ids}
    parts = []
    part_vertex = []
    for v in q.vertex_ids:
        for _ in range(mult[v]):
            parts.append(projective_representation(q, v))
            part_vertex.append(v)
    cover = _direct_sum(q, parts) if parts else QuiverRepresentation(q, {})
    # pick top lifts: complement of the radical at each vertex
    lifts: dict[int, list[list[Fraction]]] = {v: [] for v in q.vertex_ids}
    for v in q.vertex_ids:
        rows = []
        for a in q.arrows:
            if a.target == v and rep.dims[a.source]:
                m = rep.maps[a.id]
                for j in range(rep.dims[a.source]):
                    rows.append([m[i][j] for i in range(rep.dims[v])])
        red, piv = _rref_q(rows) if rows else ([], [])
        pivset = set(piv)
        for c in range(rep.dims[v]):
            if c not in pivset and len(lifts[v]) < mult[v]:
                vec = [Fraction(0)] * rep.dims[v]
                vec[c] = Fraction(1)
                lifts[v].append(vec)
    # the morphism sends the generator path () of each summand to its lift
    # and each basis path to the image of the lift along the path
    blocks = {v: [[Fraction(0)] * cover.dims[v] for _ in range(rep.dims[v])] for v in q.vertex_ids}
    col_offset: dict[int, int] = {v: 0 for v in q.vertex_ids}
    used = {v: 0 for v in q.vertex_ids}
    offset_at = {v: 0 for v in q.vertex_ids}
    running = {v: 0 for v in q.vertex_ids}
    for part, gen_v in zip(parts, part_vertex):
        gen_vec = lifts[gen_v][used[gen_v]]
        used[gen_v] += 1
        # basis of the summand at each vertex is the sorted list of paths
        paths_at: dict[int, list[tuple[str, ...]]] = {v: [] for v in q.vertex_ids}
        for p in _paths_from(q, gen_v):
            end = gen_v if not p else q.arrow(p[-1]).target
            paths_at[end].append(p)
        for v in paths_at:
            paths_at[v].sort()
        for v in q.vertex_ids:
            for j, p in enumerate(paths_at[v]):
                vec = gen_vec
                at = gen_v
                for aid in p:
                    a = q.arrow(aid)
                    m = rep.maps[aid]
                    vec = [
                        sum(m[i][k] * vec[k] for k in range(rep.dims[at]))
                        for i in range(rep.dims[a.target])
                    ]
                    at = a.target
                for i in range(rep.dims[v]):
                    blocks[v][i][running[v] + j] = vec[i]
            running[v] += len(paths_at[v])
    return mult, cover, _Morphism(cover, rep, blocks)


def _kernel_rep(q: IceQuiver, mor: _Morphism) -> QuiverRepresentation:
    src, dst = mor.src, mor.dst
    bases: dict[int, list[list[Fraction]]] = {}
    for v in q.vertex_ids:
        m = mor.blocks[v]
        n = src.dims[v]
        rows = [[m[i][j] for i in range(dst.dims[v])] + _unit(j, n) for j in range(n)]
        red, piv = _rref_q(rows) if rows else ([], [])
        ker = [r[dst.dims[v]:] for r in red if all(x == 0 for x in r[: dst.dims[v]])]
        bases[v] = ker
    dims = {v: len(bases[v]) for v in q.vertex_ids}
    maps = {}
    for a in q.arrows:
        kb_s, kb_t = bases[a.source], bases[a.target]
        m = src.maps[a.id]
        red, piv = _rref_q([r[:] for r in kb_t]) if kb_t else ([], [])
        out = [[Fraction(0)] * len(kb_s) for _ in range(len(kb_t))]
        for j, vec in enumerate(kb_s):
            img = [
                sum(m[i][k] * vec[k] for k in range(src.dims[a.source]))
                for i in range(src.dims[a.target])
            ]
            coeffs = _solve_in_basis(img, kb_t)
            for i, c in enumerate(coeffs):
                out[i][j] = c
        maps[a.id] = out
    return QuiverRepresentation(q, dims, maps)


def _unit(j: int, n: int) -> list[Fraction]:
    row = [Fraction(0)] * n
    row[j] = Fraction(1)
    return row


def _solve_in_basis(vec: list[Fraction], basis: list[list[Fraction]]) -> list[Fraction]:
    if not basis:
        if any(x != 0 for x in vec):
            raise ValidationError("vector outside the kernel basis span")
        return []
    n = len(vec)
    aug = [[basis[b][r] for b in range(len(basis))] + [vec[r]] for r in range(n)]
    red, piv = _rref_q(aug)
    out = [Fraction(0)] * len(basis)
    for row, p in zip(red, piv):
        if p == len(basis):
            raise ValidationError("vector outside the kernel basis span")
        out[p] = row[len(basis)]
    return out


def index_vector(rep: QuiverRepresentation) -> dict[int, int]:
    """[P0] - [P1] for a minimal projective presentation, per vertex."""
    q = rep.quiver
    _check_acyclic(q)
    m0, p0, mor = _cover(q, rep)
    ker = _kernel_rep(q, mor)
    m1 = top_dims(ker)
    return {v: m0[v] - m1[v] for v in q.vertex_ids}


# ---------------------------------------------------------------------------
# characters


def cluster_character(rep: QuiverRepresentation) -> Laurent:
    """The Laurent polynomial attached to a representation supported on the
    unfrozen vertices."""
    q = rep.quiver
    unfrozen = set(q.unfrozen_vertices)
    if any(d and v not in unfrozen for v, d in rep.dims.items()):
        raise ValidationError("representation must be supported on unfrozen vertices")
    btilde = exchange_matrix(q)
    verts = q.vertex_ids
    vpos = {v: k for k, v in enumerate(verts)}
    n = len(verts)
    ind = index_vector(rep)
    out = Laurent.zero(n)
    for e in submodule_dimension_vectors(rep):
        chi = grassmannian_euler(rep, e)
        if chi == 0:
            continue
        exps = [-ind[v] for v in verts]
        for j in q.unfrozen_vertices:
            ej = e.get(j, 0)
            if ej:
                for i in verts:
                    exps[vpos[i]] += btilde.entry(str(i), str(j)) * ej
        out = out + Laurent.monomial(exps, chi)
    return out


def initial_character(q: IceQuiver, vertex: int) -> Laurent:
    """Character of the shifted-projective datum at a vertex: the variable."""
    verts = q.vertex_ids
    return Laurent.variable(verts.index(vertex), len(verts))


def rigid_character(q: IceQuiver, t0: Mapping[int, int], t1: Mapping[int, int]) -> Laurent:
    """Character of a rigid presentation datum (T0, T1): the monomial with
    exponent [T0] - [T1]."""
    verts = q.vertex_ids
    exps = [int(t0.get(v, 0)) - int(t1.get(v, 0)) for v in verts]
    return Laurent.monomial(exps)


def projected_character(
    p: Laurent, q: IceQuiver, orbits, folded_rows: Sequence[str]
) -> Laurent:
    """Push a character along the orbit identification of variables."""
    from .laurent import project_exponents

    pos = {k: n for n, k in enumerate(folded_rows)}
    key_of = {}
    for o in orbits:
        for v in o.members:
            key_of[v] = o.key
    vm = [pos[key_of[v]] for v in q.vertex_ids]
    return project_exponents(p, vm, len(folded_rows))
