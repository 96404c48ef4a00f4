"""Folding of exchange matrices along vertex orbits, Fomin-Zelevinsky matrix
mutation, orbit mutation, and the commutation check between the two.

Folded entries are exact rationals (they are integers for the examples here,
but the defining formula divides by an orbit size). The symmetrizer reported
with a folded matrix is the tuple of unfrozen orbit sizes ``d``; the product
``B * diag(d)`` of the principal part with it on the right is skew-symmetric.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotAdmissible, OrderDependent, ValidationError
from .groups import GroupAction, Orbit
from .quiver import ExchangeMatrix, IceQuiver, exchange_matrix


class FoldedExchangeMatrix:
    """Rational matrix indexed by orbits, with the unfrozen orbit sizes kept
    as the symmetrizing weights."""

    def __init__(
        self,
        row_index: Sequence[str],
        col_index: Sequence[str],
        entries: Sequence[Sequence[Fraction]],
        symmetrizer: Sequence[int],
    ):
        self.row_index = tuple(row_index)
        self.col_index = tuple(col_index)
        self.entries = tuple(tuple(Fraction(x) for x in row) for row in entries)
        self.symmetrizer = tuple(int(d) for d in symmetrizer)
        if not set(self.col_index) <= set(self.row_index):
            raise ValidationError("col_index must be a subset of row_index")
        if len(self.entries) != len(self.row_index) or any(
            len(r) != len(self.col_index) for r in self.entries
        ):
            raise ValidationError("entry shape does not match the indices")
        if len(self.symmetrizer) != len(self.col_index):
            raise ValidationError("one symmetrizer weight per unfrozen orbit")
        self._rpos = {k: i for i, k in enumerate(self.row_index)}
        self._cpos = {k: j for j, k in enumerate(self.col_index)}

    def entry(self, rkey: str, ckey: str) -> Fraction:
        return self.entries[self._rpos[rkey]][self._cpos[ckey]]

    def principal_part(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(
            tuple(self.entries[self._rpos[k]][j] for j in range(len(self.col_index)))
            for k in self.col_index
        )

    def is_skew_symmetrizable(self) -> bool:
        p = self.principal_part()
        d = self.symmetrizer
        n = len(p)
        return all(p[i][j] * d[j] == -p[j][i] * d[i] for i in range(n) for j in range(n))

    def int_entries(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for row in self.entries:
            r = []
            for x in row:
                if x.denominator != 1:
                    raise ValidationError(f"non-integer entry {x}")
                r.append(int(x))
            out.append(tuple(r))
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, FoldedExchangeMatrix)
            and self.row_index == other.row_index
            and self.col_index == other.col_index
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.row_index, self.col_index, self.entries))

    def __repr__(self):
        return f"FoldedExchangeMatrix(rows={self.row_index}, cols={self.col_index})"

    def to_text(self) -> str:
        lines = ["cols: " + " ".join(self.col_index)]
        strs = [[str(x) for x in row] for row in self.entries]
        width = max((len(s) for row in strs for s in row), default=1)
        for key, row in zip(self.row_index, strs):
            lines.append(f"{key:>5} [" + " ".join(f"{s:>{width}}" for s in row) + "]")
        lines.append("symmetrizer: (" + ", ".join(str(d) for d in self.symmetrizer) + ")")
        return "\n".join(lines)


def fold_matrix_entries(
    btilde: ExchangeMatrix, orbits: Sequence[Orbit]
) -> FoldedExchangeMatrix:
    """Fold a full exchange matrix along vertex orbits.

    The folded entry for orbits (I, J) is the column sum over I of the
    unfolded column at any fixed representative of J; a consistency pass
    checks the choice of representative does not matter.
    """
    unfrozen_cols = set(btilde.col_index)
    col_orbits = [o for o in orbits if str(o.least) in unfrozen_cols]
    rows = [o.key for o in orbits]
    cols = [o.key for o in col_orbits]
    entries: list[list[Fraction]] = []
    for oi in orbits:
        row = []
        for oj in col_orbits:
            vals = set()
            for j in oj.members:
                vals.add(sum(Fraction(btilde.entry(str(k), str(j))) for k in oi.members))
            if len(vals) > 1:
                raise ValidationError(
                    f"folded entry ({oi.key},{oj.key}) depends on the representative: {sorted(vals)}"
                )
            row.append(vals.pop())
        entries.append(row)
    sym = [len(o) for o in col_orbits]
    return FoldedExchangeMatrix(rows, cols, entries, sym)


def fold_matrix(quiver: IceQuiver, action: GroupAction) -> FoldedExchangeMatrix:
    """Folded exchange matrix of an admissible action, cross-checked against
    the direct arrow-count formula ``(#(I -> J) - #(J -> I)) / #J``."""
    from .groups import require_admissible

    require_admissible(action)
    btilde = exchange_matrix(quiver)
    orbits = action.orbits()
    folded = fold_matrix_entries(btilde, orbits)
    for oi in orbits:
        for oj in [o for o in orbits if o.key in folded.col_index]:
            fwd = sum(
                1 for a in quiver.arrows if a.source in oi and a.target in oj
            )
            bwd = sum(
                1 for a in quiver.arrows if a.source in oj and a.target in oi
            )
            direct = Fraction(fwd - bwd, len(oj))
            if direct != folded.entry(oi.key, oj.key):
                raise ValidationError(
                    f"column-sum and arrow-count folds disagree at ({oi.key},{oj.key}): "
                    f"{folded.entry(oi.key, oj.key)} vs {direct}"
                )
    return folded


def _pos(x):
    return x if x > 0 else 0


def _mutate_entries(entries, row_index, col_index, key: str):
    """One mutation step on a rectangular matrix whose columns are a subset
    of its rows, at a mutable (column) key."""
    rpos = {k: i for i, k in enumerate(row_index)}
    cpos = {k: j for j, k in enumerate(col_index)}
    if key not in cpos:
        raise ValidationError(f"cannot mutate at non-mutable key {key!r}")
    ci = cpos[key]
    ri = rpos[key]
    out = []
    for i, rk in enumerate(row_index):
        row = []
        for j, ck in enumerate(col_index):
            b = entries[i][j]
            if rk == key or ck == key:
                row.append(-b)
            else:
                bik = entries[i][ci]
                bkj = entries[ri][j]
                row.append(b + _pos(bik) * _pos(bkj) - _pos(-bik) * _pos(-bkj))
        out.append(row)
    return out


def fz_mutate(matrix: ExchangeMatrix, key: str) -> ExchangeMatrix:
    """Fomin-Zelevinsky mutation of an integer exchange matrix at an unfrozen key."""
    ent = _mutate_entries(matrix.entries, matrix.row_index, matrix.col_index, key)
    return ExchangeMatrix(matrix.row_index, matrix.col_index, ent)


def fz_mutate_folded(matrix: FoldedExchangeMatrix, key: str) -> FoldedExchangeMatrix:
    ent = _mutate_entries(matrix.entries, matrix.row_index, matrix.col_index, key)
    return FoldedExchangeMatrix(matrix.row_index, matrix.col_index, ent, matrix.symmetrizer)


def matrix_is_admissible(btilde: ExchangeMatrix, orbits: Sequence[Orbit]) -> tuple[bool, str]:
    """Admissibility at the matrix level: entries between distinct members of
    one unfrozen orbit must all vanish."""
    unfrozen_cols = set(btilde.col_index)
    for o in orbits:
        if str(o.least) not in unfrozen_cols:
            continue
        for i in o.members:
            for j in o.members:
                if i != j and btilde.entry(str(i), str(j)) != 0:
                    return False, f"nonzero entry ({i},{j}) inside unfrozen orbit {o.key}"
    return True, ""


def blocks_sign_coherent(btilde: ExchangeMatrix, orbits: Sequence[Orbit]) -> tuple[bool, str]:
    """Whether every orbit-pair block of the full matrix has one sign.

    A mixed-sign block means the quotient has a 2-cycle between the two
    orbits; the folded mutation then no longer tracks the orbit mutation,
    because positive parts do not commute with the column sums.
    """
    unfrozen_cols = set(btilde.col_index)
    col_orbits = [o for o in orbits if str(o.least) in unfrozen_cols]
    for oi in orbits:
        for oj in col_orbits:
            vals = [
                btilde.entry(str(k), str(j)) for k in oi.members for j in oj.members
            ]
            if any(v > 0 for v in vals) and any(v < 0 for v in vals):
                return False, f"mixed signs in block ({oi.key},{oj.key})"
    return True, ""


def fully_admissible(btilde: ExchangeMatrix, orbits: Sequence[Orbit]) -> tuple[bool, str]:
    """Admissibility plus sign coherence: the precondition under which
    folding commutes with orbit mutation."""
    ok, witness = matrix_is_admissible(btilde, orbits)
    if not ok:
        return ok, witness
    return blocks_sign_coherent(btilde, orbits)


def orbit_mutate(
    btilde: ExchangeMatrix, orbit: Orbit, orbits: Sequence[Orbit]
) -> ExchangeMatrix:
    """Mutate the unfolded matrix at every vertex of one unfrozen orbit.

    The action must stay admissible at the matrix level before the step, and
    the result must not depend on the order in which the orbit's vertices are
    mutated; both conditions are checked, the latter by recomputation in
    reversed order.
    """
    ok, witness = matrix_is_admissible(btilde, orbits)
    if not ok:
        raise NotAdmissible(witness)
    if str(orbit.least) not in set(btilde.col_index):
        raise ValidationError(f"orbit {orbit.key} is not mutable")
    fwd = btilde
    for v in orbit.members:
        fwd = fz_mutate(fwd, str(v))
    bwd = btilde
    for v in reversed(orbit.members):
        bwd = fz_mutate(bwd, str(v))
    if fwd != bwd:
        raise OrderDependent(
            f"mutations inside orbit {orbit.key} do not commute"
        )
    return fwd


def orbit_mutation_sequence(
    btilde: ExchangeMatrix, keys: Sequence[str], orbits: Sequence[Orbit]
) -> ExchangeMatrix:
    """Apply orbit mutations named by orbit keys, re-checking admissibility
    before every step."""
    by_key = {o.key: o for o in orbits}
    m = btilde
    for k in keys:
        if k not in by_key:
            raise ValidationError(f"unknown orbit key {k!r}")
        m = orbit_mutate(m, by_key[k], orbits)
    return m


def check_fold_commutes(
    quiver: IceQuiver, action: GroupAction, keys: Sequence[str]
) -> tuple[FoldedExchangeMatrix, FoldedExchangeMatrix]:
    """Fold then mutate versus orbit-mutate then fold, along one key sequence.

    Full admissibility (sign-coherent blocks included) is required before
    every step, since that is the hypothesis of the commutation statement.
    Returns the two folded matrices; raises ValidationError when they differ.
    """
    orbits = action.orbits()
    by_key = {o.key: o for o in orbits}
    folded = fold_matrix(quiver, action)
    unfolded = exchange_matrix(quiver)
    for k in keys:
        if k not in by_key:
            raise ValidationError(f"unknown orbit key {k!r}")
        ok, witness = fully_admissible(unfolded, orbits)
        if not ok:
            raise NotAdmissible(witness)
        folded = fz_mutate_folded(folded, k)
        unfolded = orbit_mutate(unfolded, by_key[k], orbits)
        refolded = fold_matrix_entries(unfolded, orbits)
        if folded.entries != refolded.entries:
            raise ValidationError(
                "folding does not commute with mutation along " + ",".join(keys)
            )
    return folded, refolded
