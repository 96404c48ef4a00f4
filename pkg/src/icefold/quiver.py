"""Graded ice quivers, potentials up to cyclic equivalence, cyclic derivatives,
and the unfolded exchange matrix.

Paths are stored in traversal order: a path ``(a, b)`` means "first traverse
``a``, then ``b``", so composability requires ``target(a) == source(b)``.
Coefficients are exact :class:`fractions.Fraction` values everywhere.

The cluster-layer scope is degree 0, where the Koszul signs of cyclic
permutation are trivial; nonzero arrow degrees only occur in the dg quivers
emitted by :mod:`icefold.ginzburg`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    HasLoops,
    HasTwoCycles,
    NotClosed,
    NotComposable,
    UnknownArrow,
    UnknownVertex,
    ValidationError,
)


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str = ""

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", str(self.id))


@dataclass(frozen=True)
class GradedArrow:
    id: str
    source: int
    target: int
    degree: int = 0


class IceQuiver:
    """A finite graded quiver with a distinguished frozen subquiver.

    The frozen arrows must have both endpoints frozen, so that the frozen
    data (F0, F1) is itself a (not necessarily full) subquiver.
    """

    def __init__(
        self,
        vertices: Iterable[Vertex],
        arrows: Iterable[GradedArrow],
        frozen_vertices: Iterable[int] = (),
        frozen_arrows: Iterable[str] = (),
    ):
        self.vertices = tuple(sorted(vertices, key=lambda v: v.id))
        self.arrows = tuple(sorted(arrows, key=lambda a: a.id))
        self.frozen_vertices = frozenset(frozen_vertices)
        self.frozen_arrows = frozenset(frozen_arrows)
        self._by_id = {a.id: a for a in self.arrows}
        self._vids = {v.id for v in self.vertices}
        self._validate()

    def _validate(self):
        if len(self._vids) != len(self.vertices):
            raise ValidationError("duplicate vertex ids")
        if len(self._by_id) != len(self.arrows):
            raise ValidationError("duplicate arrow ids")
        for a in self.arrows:
            if a.source not in self._vids or a.target not in self._vids:
                raise UnknownVertex(f"arrow {a.id} has endpoint outside the quiver")
        unknown = self.frozen_vertices - self._vids
        if unknown:
            raise UnknownVertex(f"frozen vertices {sorted(unknown)} not in the quiver")
        for aid in self.frozen_arrows:
            a = self._by_id.get(aid)
            if a is None:
                raise UnknownArrow(f"frozen arrow {aid!r} not in the quiver")
            if a.source not in self.frozen_vertices or a.target not in self.frozen_vertices:
                raise ValidationError(
                    f"frozen arrow {aid!r} must have frozen endpoints"
                )

    # -- basic accessors ---------------------------------------------------

    def arrow(self, aid: str) -> GradedArrow:
        try:
            return self._by_id[aid]
        except KeyError:
            raise UnknownArrow(f"unknown arrow {aid!r}") from None

    def has_arrow(self, aid: str) -> bool:
        return aid in self._by_id

    def has_vertex(self, vid: int) -> bool:
        return vid in self._vids

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    @property
    def unfrozen_vertices(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices if v.id not in self.frozen_vertices)

    @property
    def unfrozen_arrows(self) -> tuple[GradedArrow, ...]:
        return tuple(a for a in self.arrows if a.id not in self.frozen_arrows)

    def frozen_subquiver(self) -> "IceQuiver":
        verts = [v for v in self.vertices if v.id in self.frozen_vertices]
        arrs = [a for a in self.arrows if a.id in self.frozen_arrows]
        return IceQuiver(verts, arrs, self.frozen_vertices, self.frozen_arrows)

    def has_loops(self, unfrozen_only: bool = False) -> bool:
        for a in self.arrows:
            if a.source == a.target:
                if not unfrozen_only or a.source not in self.frozen_vertices:
                    return True
        return False

    def two_cycle_witness(self):
        """A pair of arrows forming a 2-cycle, or None."""
        seen = {}
        for a in self.arrows:
            if (a.target, a.source) in seen:
                return (seen[(a.target, a.source)], a.id)
            seen.setdefault((a.source, a.target), a.id)
        return None

    def path_endpoints(self, path: Sequence[str]) -> tuple[int, int]:
        """(source, target) of a composable traversal-order path."""
        if not path:
            raise NotComposable("empty path has no endpoints")
        arrs = [self.arrow(aid) for aid in path]
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise NotComposable(f"{x.id} -> {y.id} not composable")
        return arrs[0].source, arrs[-1].target

    def __eq__(self, other):
        return (
            isinstance(other, IceQuiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
            and self.frozen_vertices == other.frozen_vertices
            and self.frozen_arrows == other.frozen_arrows
        )

    def __repr__(self):
        return (
            f"IceQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows, "
            f"frozen={sorted(self.frozen_vertices)})"
        )


@dataclass(frozen=True)
class Cycle:
    """An oriented cycle stored as the lexicographically least rotation of its
    traversal-order arrow-id sequence."""

    arrows: tuple[str, ...]

    def rotations(self) -> list[tuple[str, ...]]:
        n = len(self.arrows)
        return [self.arrows[k:] + self.arrows[:k] for k in range(n)]

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return ".".join(self.arrows)


def canonical_cycle(arrows: Sequence[str], quiver: IceQuiver) -> Cycle:
    """Canonical rotation of a closed composable arrow sequence.

    Two rotations of the same cycle yield identical output; the canonical
    representative is the lexicographically least rotation.
    """
    if not arrows:
        raise NotClosed("empty cycle")
    src, tgt = quiver.path_endpoints(arrows)
    if src != tgt:
        raise NotClosed(f"path {'.'.join(arrows)} runs {src} -> {tgt}")
    seq = tuple(arrows)
    best = min(seq[k:] + seq[:k] for k in range(len(seq)))
    return Cycle(best)


class Potential:
    """Rational linear combination of cycles, each up to cyclic permutation.

    Terms are canonicalized on construction: cycles rotated to canonical
    form, like terms merged, zero coefficients dropped.
    """

    def __init__(self, terms: Iterable[tuple[Fraction, Sequence[str] | Cycle]], quiver: IceQuiver):
        acc: dict[Cycle, Fraction] = {}
        for coeff, cyc in terms:
            coeff = Fraction(coeff)
            if isinstance(cyc, Cycle):
                cyc = canonical_cycle(cyc.arrows, quiver)
            else:
                cyc = canonical_cycle(cyc, quiver)
            acc[cyc] = acc.get(cyc, Fraction(0)) + coeff
        self.quiver = quiver
        self.terms: tuple[tuple[Fraction, Cycle], ...] = tuple(
            (c, cyc) for cyc, c in sorted(acc.items(), key=lambda kv: kv[0].arrows) if c != 0
        )

    @classmethod
    def zero(cls, quiver: IceQuiver) -> "Potential":
        return cls([], quiver)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Total degree if homogeneous, else raises."""
        degs = {
            sum(self.quiver.arrow(a).degree for a in cyc.arrows) for _, cyc in self.terms
        }
        if not degs:
            return None
        if len(degs) > 1:
            raise ValidationError(f"potential not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def __add__(self, other: "Potential") -> "Potential":
        return Potential(list(self.terms) + list(other.terms), self.quiver)

    def __neg__(self) -> "Potential":
        return Potential([(-c, cyc) for c, cyc in self.terms], self.quiver)

    def __sub__(self, other: "Potential") -> "Potential":
        return self + (-other)

    def scale(self, k: Fraction) -> "Potential":
        return Potential([(Fraction(k) * c, cyc) for c, cyc in self.terms], self.quiver)

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for c, cyc in self.terms:
            s = str(cyc)
            bits.append(f"{c}*{s}")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"Potential({self})"


class PathSum:
    """Rational linear combination of composable paths sharing source and target.

    The empty path at a vertex is the lazy path, represented by ``()``.
    """

    def __init__(
        self,
        terms: Mapping[tuple[str, ...], Fraction] | Iterable[tuple[Fraction, Sequence[str]]],
        source: int,
        target: int,
        quiver: IceQuiver,
    ):
        acc: dict[tuple[str, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((p, c) for c, p in terms)
        if isinstance(terms, Mapping):
            items = [(tuple(p), Fraction(c)) for p, c in terms.items()]
        else:
            items = [(tuple(p), Fraction(c)) for c, p in terms]
        for path, coeff in items:
            if path:
                s, t = quiver.path_endpoints(path)
                if (s, t) != (source, target):
                    raise NotComposable(
                        f"path {'.'.join(path)} runs {s}->{t}, expected {source}->{target}"
                    )
            acc[path] = acc.get(path, Fraction(0)) + coeff
        self.quiver = quiver
        self.source = source
        self.target = target
        self.terms: tuple[tuple[Fraction, tuple[str, ...]], ...] = tuple(
            (c, p) for p, c in sorted(acc.items()) if c != 0
        )

    @classmethod
    def zero(cls, source: int, target: int, quiver: IceQuiver) -> "PathSum":
        return cls({}, source, target, quiver)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PathSum") -> "PathSum":
        if (self.source, self.target) != (other.source, other.target):
            raise NotComposable("PathSum endpoints differ")
        merged = dict((p, c) for c, p in self.terms)
        for c, p in other.terms:
            merged[p] = merged.get(p, Fraction(0)) + c
        return PathSum(merged, self.source, self.target, self.quiver)

    def __neg__(self) -> "PathSum":
        return PathSum({p: -c for c, p in self.terms}, self.source, self.target, self.quiver)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "PathSum":
        return PathSum({p: Fraction(k) * c for c, p in self.terms}, self.source, self.target, self.quiver)

    def __eq__(self, other):
        return (
            isinstance(other, PathSum)
            and self.terms == other.terms
            and self.source == other.source
            and self.target == other.target
        )

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for c, p in self.terms:
            word = ".".join(p) if p else f"e{self.source}"
            bits.append(f"{c}*{word}")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"PathSum({self} : {self.source}->{self.target})"


def combo_mul(
    x: Mapping[tuple[str, ...], Fraction],
    y: Mapping[tuple[str, ...], Fraction],
    quiver: IceQuiver,
    lazy_at: Mapping[tuple[str, ...], int] = (),
) -> dict[tuple[str, ...], Fraction]:
    """Product of two free path combinations, dropping non-composable pairs.

    A "combo" is a dict path -> coefficient with arbitrary mixed endpoints,
    used internally where supercommutator sums mix base points. Lazy paths
    are not supported here; all keys must be non-empty.
    """
    out: dict[tuple[str, ...], Fraction] = {}
    for p, cp in x.items():
        _, tp = quiver.path_endpoints(p)
        for q, cq in y.items():
            sq, _ = quiver.path_endpoints(q)
            if tp == sq:
                key = p + q
                out[key] = out.get(key, Fraction(0)) + cp * cq
    return {k: v for k, v in out.items() if v != 0}


def cyclic_derivative(w: Potential, aid: str) -> PathSum:
    """Cyclic derivative of a degree-0 potential with respect to one arrow.

    Each cyclic occurrence of the arrow in a cycle contributes the path that
    remains after cutting the cycle there, read from the arrow's target back
    around to its source.
    """
    q = w.quiver
    a = q.arrow(aid)
    acc: dict[tuple[str, ...], Fraction] = {}
    for coeff, cyc in w.terms:
        seq = cyc.arrows
        n = len(seq)
        for k in range(n):
            if seq[k] == aid:
                rest = seq[k + 1 :] + seq[:k]
                acc[rest] = acc.get(rest, Fraction(0)) + coeff
    return PathSum(acc, a.target, a.source, q)


def potential_commutator_residual(w: Potential) -> dict[tuple[str, ...], Fraction]:
    """The combination sum_a (a . dW/da  -  dW/da . a); identically zero.

    This is the identity that makes the Ginzburg differential square to zero.
    Returned as a raw combo so a test can assert it is literally empty.
    """
    q = w.quiver
    acc: dict[tuple[str, ...], Fraction] = {}
    for arr in q.arrows:
        d = cyclic_derivative(w, arr.id)
        for c, p in d.terms:
            left = (arr.id,) + p
            acc[left] = acc.get(left, Fraction(0)) + c
            right = p + (arr.id,)
            acc[right] = acc.get(right, Fraction(0)) - c
    return {k: v for k, v in acc.items() if v != 0}


class ExchangeMatrix:
    """Integer matrix with rows over all keys and columns over the unfrozen ones.

    Keys are strings; vertex keys are decimal ids, orbit keys are bracketed
    least members like ``[1]``. Entries are plain Python ints.
    """

    def __init__(self, row_index: Sequence[str], col_index: Sequence[str], entries: Sequence[Sequence[int]]):
        self.row_index = tuple(row_index)
        self.col_index = tuple(col_index)
        if not set(self.col_index) <= set(self.row_index):
            raise ValidationError("col_index must be a subset of row_index")
        self.entries = tuple(tuple(int(x) for x in row) for row in entries)
        if len(self.entries) != len(self.row_index) or any(
            len(r) != len(self.col_index) for r in self.entries
        ):
            raise ValidationError("entry shape does not match the indices")
        self._rpos = {k: i for i, k in enumerate(self.row_index)}
        self._cpos = {k: j for j, k in enumerate(self.col_index)}

    def entry(self, rkey: str, ckey: str) -> int:
        return self.entries[self._rpos[rkey]][self._cpos[ckey]]

    def column(self, ckey: str) -> tuple[int, ...]:
        j = self._cpos[ckey]
        return tuple(row[j] for row in self.entries)

    def principal_part(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self.entries[self._rpos[k]][j] for j in range(len(self.col_index)))
            for k in self.col_index
        )

    def is_skew_symmetric_principal(self) -> bool:
        p = self.principal_part()
        n = len(p)
        return all(p[i][j] == -p[j][i] for i in range(n) for j in range(n))

    def __eq__(self, other):
        return (
            isinstance(other, ExchangeMatrix)
            and self.row_index == other.row_index
            and self.col_index == other.col_index
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.row_index, self.col_index, self.entries))

    def __repr__(self):
        return f"ExchangeMatrix(rows={self.row_index}, cols={self.col_index})"

    def to_text(self) -> str:
        lines = ["cols: " + " ".join(self.col_index)]
        width = max(
            (len(str(x)) for row in self.entries for x in row), default=1
        )
        for key, row in zip(self.row_index, self.entries):
            lines.append(
                f"{key:>4} [" + " ".join(f"{x:>{width}}" for x in row) + "]"
            )
        return "\n".join(lines)


def exchange_matrix(q: IceQuiver) -> ExchangeMatrix:
    """Signed arrow counts: rows over all vertices, columns over unfrozen ones."""
    unfrozen = set(q.unfrozen_vertices)
    for a in q.arrows:
        if a.source == a.target:
            raise HasLoops(f"loop {a.id} at vertex {a.source}")
    w = q.two_cycle_witness()
    if w is not None:
        a0, a1 = q.arrow(w[0]), q.arrow(w[1])
        if {a0.source, a0.target} & unfrozen:
            raise HasTwoCycles(f"2-cycle between {a0.source} and {a0.target}: {w}")
    rows = [str(v) for v in q.vertex_ids]
    cols = [str(v) for v in q.unfrozen_vertices]
    count: dict[tuple[int, int], int] = {}
    for a in q.arrows:
        count[(a.source, a.target)] = count.get((a.source, a.target), 0) + 1
    entries = []
    for i in q.vertex_ids:
        row = []
        for j in q.unfrozen_vertices:
            row.append(count.get((i, j), 0) - count.get((j, i), 0))
        entries.append(row)
    return ExchangeMatrix(rows, cols, entries)
