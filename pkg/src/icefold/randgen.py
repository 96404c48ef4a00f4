"""Random instances for property testing: skew-symmetrizable matrices,
equivariant exchange matrices with a cyclic action, and random potentials.

Everything takes an explicit random.Random so runs are reproducible from a
seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .groups import Orbit
from .quiver import ExchangeMatrix, GradedArrow, IceQuiver, Potential, Vertex


def random_skew_symmetrizable(rng: random.Random, n: int, max_t: int = 2):
    """A random n x n integer skew-symmetrizable matrix with its symmetrizer.

    Entries come from b_ij = t d_j / g, b_ji = -t d_i / g with g = gcd(d_i,
    d_j), which keeps diag(d) * B skew-symmetric for d_i in {1, 2, 3}.
    """
    d = [rng.choice((1, 2, 3)) for _ in range(n)]
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            t = rng.randint(-max_t, max_t)
            g = gcd(d[i], d[j])
            b[i][j] = t * d[j] // g
            b[j][i] = -t * d[i] // g
    return b, d


def is_skew_symmetrizable(b, d) -> bool:
    n = len(b)
    return all(d[i] * b[i][j] == -d[j] * b[j][i] for i in range(n) for j in range(n))


def random_equivariant_matrix(rng: random.Random, max_vertices: int = 8):
    """A full exchange matrix with a cyclic symmetry and admissible orbits.

    Returns (matrix, orbits). Vertices are grouped into rotation orbits of a
    cyclic group of order at most 4; entries are constant along the diagonal
    action and vanish inside each unfrozen orbit. Roughly the last quarter of
    the orbits is frozen.
    """
    m = rng.choice((2, 2, 3, 4))
    sizes = []
    total = 0
    while total < max_vertices - 1:
        s = rng.choice([k for k in (1, 2, 3, 4) if m % k == 0])
        if total + s > max_vertices:
            break
        sizes.append(s)
        total += s
        if len(sizes) >= 4 and rng.random() < 0.5:
            break
    if len(sizes) < 2:
        sizes = [1, m]
    # vertex ids 1..total, orbits are consecutive blocks
    blocks = []
    v = 1
    for s in sizes:
        blocks.append(tuple(range(v, v + s)))
        v += s
    nfrozen = max(1, len(blocks) // 4) if len(blocks) > 2 else 0
    frozen_blocks = blocks[len(blocks) - nfrozen :] if nfrozen else []
    unfrozen_blocks = blocks[: len(blocks) - nfrozen] if nfrozen else blocks

    def rot(vv: int, k: int) -> int:
        for blk in blocks:
            if vv in blk:
                return blk[(blk.index(vv) + k) % len(blk)]
        raise AssertionError

    n = sum(sizes)
    b = [[0] * n for _ in range(n)]
    assigned = [[False] * n for _ in range(n)]
    order = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i < j]
    for i, j in order:
        if assigned[i - 1][j - 1]:
            continue
        same = next(blk for blk in blocks if i in blk) is next(
            blk for blk in blocks if j in blk
        )
        val = 0 if same else rng.randint(-1, 1)
        conflict = False
        pairs = []
        for k in range(m):
            a, c = rot(i, k), rot(j, k)
            pairs.append((a, c))
        for a, c in pairs:
            if assigned[a - 1][c - 1] and b[a - 1][c - 1] != val:
                conflict = True
            if assigned[c - 1][a - 1] and b[c - 1][a - 1] != -val:
                conflict = True
        if conflict:
            val = 0
        for a, c in pairs:
            b[a - 1][c - 1] = val
            b[c - 1][a - 1] = -val
            assigned[a - 1][c - 1] = assigned[c - 1][a - 1] = True
    frozen = {v for blk in frozen_blocks for v in blk}
    rows = [str(v) for v in range(1, n + 1)]
    cols = [str(v) for v in range(1, n + 1) if v not in frozen]
    entries = [
        [b[i - 1][j - 1] for j in range(1, n + 1) if j not in frozen]
        for i in range(1, n + 1)
    ]
    matrix = ExchangeMatrix(rows, cols, entries)
    orbits = [Orbit(blk) for blk in unfrozen_blocks] + [Orbit(blk) for blk in frozen_blocks]
    return matrix, orbits


def random_quiver_with_potential(rng: random.Random, max_cycles: int = 3):
    """A small quiver built from oriented triangles glued at vertices, with a
    random potential supported on those triangles."""
    ncyc = rng.randint(1, max_cycles)
    verts: list[int] = []
    arrows: list[GradedArrow] = []
    terms = []
    next_v = 1
    aid = 0
    for c in range(ncyc):
        if verts and rng.random() < 0.5:
            shared = rng.choice(verts)
        else:
            shared = next_v
            verts.append(next_v)
            next_v += 1
        tri = [shared]
        for _ in range(2):
            tri.append(next_v)
            verts.append(next_v)
            next_v += 1
        ids = []
        for k in range(3):
            aid += 1
            arrows.append(GradedArrow(f"w{aid}", tri[k], tri[(k + 1) % 3]))
            ids.append(f"w{aid}")
        coeff = rng.choice((-2, -1, 1, 2))
        terms.append((Fraction(coeff), tuple(ids)))
    q = IceQuiver([Vertex(v) for v in sorted(set(verts))], arrows)
    return q, Potential(terms, q)
