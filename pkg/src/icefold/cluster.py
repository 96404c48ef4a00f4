"""Seeds, exchange-relation mutation of cluster variables, exchange graph
enumeration, and the comparison between folded variables and projected
unfolded variables.

A seed pairs an exchange matrix with one Laurent polynomial per row key.
Frozen variables are plain generators and are never inverted or replaced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, OrderDependent, ValidationError
from .groups import GroupAction, Orbit
from .laurent import Laurent, project_exponents
from .mutation import FoldedExchangeMatrix, fold_matrix
from .quiver import ExchangeMatrix, IceQuiver, exchange_matrix


class Seed:
    """An exchange matrix together with cluster variables indexed by its rows."""

    def __init__(self, matrix: ExchangeMatrix, variables: Sequence[Laurent]):
        self.matrix = matrix
        self.variables = tuple(variables)
        if len(self.variables) != len(matrix.row_index):
            raise ValidationError("one variable per row key")
        n = len(matrix.row_index)
        if any(v.nvars != n for v in self.variables):
            raise ValidationError("variables must live in the ambient field of the seed")

    @classmethod
    def initial(cls, matrix: ExchangeMatrix) -> "Seed":
        n = len(matrix.row_index)
        return cls(matrix, [Laurent.variable(k, n) for k in range(n)])

    def variable(self, key: str) -> Laurent:
        return self.variables[self.matrix.row_index.index(key)]

    def unfrozen_variables(self) -> tuple[Laurent, ...]:
        return tuple(self.variable(k) for k in self.matrix.col_index)

    def mutate(self, key: str) -> "Seed":
        from .mutation import fz_mutate

        m = self.matrix
        if key not in m.col_index:
            raise ValidationError(f"cannot mutate at non-mutable key {key!r}")
        n = len(m.row_index)
        kpos = m.row_index.index(key)
        col = m.column(key)
        plus = Laurent.one(n)
        minus = Laurent.one(n)
        for i, b in enumerate(col):
            if b > 0:
                plus = plus * _power(self.variables[i], b)
            elif b < 0:
                minus = minus * _power(self.variables[i], -b)
        new_var = (plus + minus) / self.variables[kpos]
        variables = list(self.variables)
        variables[kpos] = new_var
        return Seed(fz_mutate(m, key), variables)

    def canonical_key(self):
        """Seed identity up to permutation of the unfrozen positions."""
        m = self.matrix
        order = sorted(
            range(len(m.col_index)),
            key=lambda j: str(self.variable(m.col_index[j])),
        )
        cols = [m.col_index[j] for j in order]
        frozen_rows = [k for k in m.row_index if k not in set(m.col_index)]
        rows = cols + frozen_rows
        entries = tuple(
            tuple(m.entry(r, c) for c in cols) for r in rows
        )
        variables = tuple(str(self.variable(k)) for k in rows)
        return (variables, entries)

    def cluster_key(self):
        return tuple(sorted(str(v) for v in self.unfrozen_variables()))

    def __eq__(self, other):
        return (
            isinstance(other, Seed)
            and self.matrix == other.matrix
            and self.variables == other.variables
        )

    def __repr__(self):
        return f"Seed(cols={self.matrix.col_index})"


def _power(p: Laurent, k: int) -> Laurent:
    out = Laurent.one(p.nvars)
    for _ in range(k):
        out = out * p
    return out


def seed_from_quiver(q: IceQuiver) -> Seed:
    return Seed.initial(exchange_matrix(q))


def seed_from_folded(folded: FoldedExchangeMatrix) -> Seed:
    m = ExchangeMatrix(folded.row_index, folded.col_index, folded.int_entries())
    return Seed.initial(m)


@dataclass
class ExchangeGraph:
    """Exchange graph up to seed equivalence.

    ``seeds`` holds one representative per node; ``edges`` are pairs of node
    indices; ``variables`` is the set of unfrozen variable strings met.
    """

    seeds: list[Seed]
    edges: list[tuple[int, int]]
    variables: set[str]

    @property
    def clusters(self) -> set[tuple[str, ...]]:
        return {s.cluster_key() for s in self.seeds}


def enumerate_exchange_graph(seed: Seed, budget: int = 2000) -> ExchangeGraph:
    """Breadth-first closure of a seed under mutation at every unfrozen key.

    Raises BudgetExceeded when more than ``budget`` distinct seeds appear, so
    infinite-type inputs fail loudly instead of running away.
    """
    index: dict = {seed.canonical_key(): 0}
    seeds = [seed]
    edges: set[tuple[int, int]] = set()
    variables: set[str] = {str(v) for v in seed.unfrozen_variables()}
    frontier = [0]
    while frontier:
        nxt = []
        for si in frontier:
            s = seeds[si]
            for key in s.matrix.col_index:
                t = s.mutate(key)
                ck = t.canonical_key()
                ti = index.get(ck)
                if ti is None:
                    if len(seeds) >= budget:
                        raise BudgetExceeded(
                            f"more than {budget} seeds; raise the budget for "
                            "infinite or large types"
                        )
                    ti = len(seeds)
                    index[ck] = ti
                    seeds.append(t)
                    variables.update(str(v) for v in t.unfrozen_variables())
                    nxt.append(ti)
                edges.add((min(si, ti), max(si, ti)))
        frontier = nxt
    return ExchangeGraph(seeds, sorted(edges), variables)


# ---------------------------------------------------------------------------
# orbit mutation of seeds and the fold/project comparison


def orbit_mutate_seed(seed: Seed, orbit: Orbit) -> Seed:
    """Mutate an unfolded seed at every vertex of an unfrozen orbit, checking
    the result does not depend on the order."""
    fwd = seed
    for v in orbit.members:
        fwd = fwd.mutate(str(v))
    bwd = seed
    for v in reversed(orbit.members):
        bwd = bwd.mutate(str(v))
    if fwd.matrix != bwd.matrix or fwd.variables != bwd.variables:
        raise OrderDependent(f"seed mutations inside orbit {orbit.key} do not commute")
    return fwd


def orbit_variable_map(
    matrix: ExchangeMatrix, orbits: Sequence[Orbit], folded_rows: Sequence[str]
) -> list[int]:
    """Position map sending each unfolded row to the folded row of its orbit."""
    pos = {k: n for n, k in enumerate(folded_rows)}
    key_of = {}
    for o in orbits:
        for v in o.members:
            key_of[str(v)] = o.key
    return [pos[key_of[k]] for k in matrix.row_index]


def project_variable(
    var: Laurent, matrix: ExchangeMatrix, orbits: Sequence[Orbit], folded_rows: Sequence[str]
) -> Laurent:
    """Identify the variables inside each orbit; exponents add up."""
    vm = orbit_variable_map(matrix, orbits, folded_rows)
    return project_exponents(var, vm, len(folded_rows))


def check_fold_variables(
    quiver: IceQuiver, action: GroupAction, keys: Sequence[str]
) -> dict[str, tuple[Laurent, Laurent]]:
    """Compare folded cluster variables with projected unfolded ones along a
    sequence of orbit keys.

    Returns {orbit key: (folded variable, projected variable)} after the
    sequence; raises ValidationError on any mismatch.
    """
    orbits = action.orbits()
    folded = fold_matrix(quiver, action)
    fseed = seed_from_folded(folded)
    useed = seed_from_quiver(quiver)
    by_key = {o.key: o for o in orbits}
    for k in keys:
        if k not in by_key:
            raise ValidationError(f"unknown orbit key {k!r}")
        fseed = fseed.mutate(k)
        useed = orbit_mutate_seed(useed, by_key[k])
    out: dict[str, tuple[Laurent, Laurent]] = {}
    for o in orbits:
        proj = {
            project_variable(useed.variable(str(v)), useed.matrix, orbits, folded.row_index)
            for v in o.members
        }
        if len(proj) != 1:
            raise ValidationError(
                f"members of orbit {o.key} project to different variables"
            )
        got = proj.pop()
        want = fseed.variable(o.key)
        out[o.key] = (want, got)
        if want != got:
            raise ValidationError(
                f"folded variable at {o.key} differs from the projected one: "
                f"{want} vs {got}"
            )
    return out
