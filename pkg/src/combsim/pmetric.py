"""Pseudometrics on finite sets with exact rational distances."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Sequence

from .errors import (
    GroundMismatchError,
    InvalidPseudometricError,
    NotABijectionError,
    NotEquivalenceError,
)
from .mapkit import SymMapping, fiber_partition
from .relcore import (
    BinaryRelation,
    Partition,
    is_equivalence,
    partition_from_equivalence,
    sym_tensor_s1,
)
from .verdict import Verdict

ZERO = Fraction(0)


def to_fraction(value) -> Fraction:
    """Exact conversion of ints, Fractions and ``"p/q"`` / decimal strings."""
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, (int, Fraction, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"distances must be exact rationals, got {type(value).__name__}")


def check_pseudometric(dist: Sequence[Sequence]) -> Verdict:
    """Check the pseudometric axioms exactly.

    Order: shape, negativity, diagonal, symmetry, triangle. The triangle
    witness is the path ``(x, z, y)`` with ``d(x, y) > d(x, z) + d(z, y)``,
    first in lexicographic ``(x, y, z)`` order.
    """
    n = len(dist)
    if n == 0 or any(len(row) != n for row in dist):
        return Verdict.no("shape")
    m = [[to_fraction(v) for v in row] for row in dist]
    for x, y in product(range(n), repeat=2):
        if m[x][y] < 0:
            return Verdict.no("negativity", (x, y))
    for x in range(n):
        if m[x][x] != 0:
            return Verdict.no("diagonal", (x,))
    for x in range(n):
        for y in range(x + 1, n):
            if m[x][y] != m[y][x]:
                return Verdict.no("symmetry", (x, y))
    for x, y, z in product(range(n), repeat=3):
        if m[x][y] > m[x][z] + m[z][y]:
            return Verdict.no("triangle", (x, z, y))
    return Verdict.yes()


@dataclass(frozen=True)
class Pseudometric:
    n: int
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.dist) != self.n:
            raise ValueError("matrix size does not match n")
        verdict = check_pseudometric(self.dist)
        if not verdict:
            raise InvalidPseudometricError(
                f"not a pseudometric: {verdict.reason} fails at {verdict.witness}",
                verdict.reason,
                verdict.witness,
            )
        exact = tuple(tuple(to_fraction(v) for v in row) for row in self.dist)
        object.__setattr__(self, "dist", exact)

    def __call__(self, x: int, y: int) -> Fraction:
        return self.dist[x][y]

    def values(self) -> set[Fraction]:
        return {v for row in self.dist for v in row}

    def as_mapping(self) -> SymMapping:
        return SymMapping.from_table(self.dist)

    def scaled(self, r) -> "Pseudometric":
        r = to_fraction(r)
        return Pseudometric(self.n, tuple(tuple(r * v for v in row) for row in self.dist))

    def relabel(self, g: Sequence[int]) -> "Pseudometric":
        """``(x, y) -> d(g[x], g[y])``."""
        return Pseudometric(len(g), tuple(tuple(self.dist[a][b] for b in g) for a in g))


def validate(dist: Sequence[Sequence]) -> Pseudometric:
    """Build a :class:`Pseudometric`, raising ``InvalidPseudometricError`` on the first violated axiom."""
    return Pseudometric(len(dist), tuple(tuple(row) for row in dist))


def zero_pseudometric(n: int) -> Pseudometric:
    return Pseudometric(n, tuple((ZERO,) * n for _ in range(n)))


def zero_relation(d: Pseudometric) -> BinaryRelation:
    return BinaryRelation.from_matrix([[v == 0 for v in row] for row in d.dist])


def zero_partition(d: Pseudometric) -> Partition:
    return partition_from_equivalence(zero_relation(d))


@dataclass(frozen=True)
class MetricIdentification:
    source: Pseudometric
    quotient_partition: Partition
    quotient_metric: Pseudometric
    projection: tuple[int, ...]


def metric_identification(d: Pseudometric) -> MetricIdentification:
    p = zero_partition(d)
    k = len(p)
    rows = []
    for bi in p.blocks:
        row = []
        for bj in p.blocks:
            vals = {d.dist[x][y] for x in bi for y in bj}
            if len(vals) != 1:
                raise AssertionError("distance is not constant on a pair of zero classes")
            row.append(vals.pop())
        rows.append(tuple(row))
    quotient = Pseudometric(k, tuple(rows))
    if zero_relation(quotient) != BinaryRelation.diagonal(k):
        raise AssertionError("metric identification is not a metric")
    return MetricIdentification(d, p, quotient, p.block_of)


def is_metric(d: Pseudometric) -> bool:
    return zero_relation(d) == BinaryRelation.diagonal(d.n)


def is_discrete(d: Pseudometric) -> bool:
    return len(d.values()) <= 2


def is_ptolemaic(d: Pseudometric) -> Verdict:
    """Exact Ptolemy inequality over all quadruples ``(x, y, z, t)``."""
    m = d.dist
    r = range(d.n)
    for x, y, z, t in product(r, r, r, r):
        if m[x][z] * m[y][t] + m[x][t] * m[y][z] < m[x][y] * m[z][t]:
            return Verdict.no("ptolemy", (x, y, z, t))
    return Verdict.yes()


def is_pseudoultrametric(d: Pseudometric) -> Verdict:
    """Diagnostic only: the strong triangle inequality."""
    m = d.dist
    for x, y, z in product(range(d.n), repeat=3):
        if m[x][y] > max(m[x][z], m[z][y]):
            return Verdict.no("ultrametric", (x, z, y))
    return Verdict.yes()


def strongly_rigid_by_definition(d: Pseudometric) -> Verdict:
    """Equal nonzero distances force the pairs to agree up to zero classes and swap.

    Witness: first quadruple ``(x, y, u, v)`` in lexicographic order with
    ``d(x, y) == d(u, v) != 0`` and the pairs not matched.
    """
    m = d.dist
    cls = zero_partition(d).block_of
    r = range(d.n)
    for x, y, u, v in product(r, r, r, r):
        if m[x][y] != 0 and m[x][y] == m[u][v]:
            same = cls[x] == cls[u] and cls[y] == cls[v]
            swapped = cls[x] == cls[v] and cls[y] == cls[u]
            if not (same or swapped):
                return Verdict.no("rigidity", (x, y, u, v))
    return Verdict.yes()


def strongly_rigid_by_tensor(d: Pseudometric) -> bool:
    """The fiber partition of ``d`` equals the symmetric tensor of its zero classes."""
    return fiber_partition(d.as_mapping()) == sym_tensor_s1(zero_partition(d))


def is_strongly_rigid(d: Pseudometric, cross_check: bool = True) -> Verdict:
    verdict = strongly_rigid_by_definition(d)
    if cross_check and bool(verdict) != strongly_rigid_by_tensor(d):
        raise AssertionError("definition and tensor characterizations of rigidity disagree")
    return verdict


def discrete_from_equivalence(r: BinaryRelation) -> Pseudometric:
    verdict = is_equivalence(r)
    if not verdict:
        raise NotEquivalenceError(
            f"relation is not an equivalence: {verdict.reason} fails at {verdict.witness}",
            verdict,
        )
    one = Fraction(1)
    return Pseudometric(
        r.n, tuple(tuple(ZERO if (x, y) in r else one for y in range(r.n)) for x in range(r.n))
    )


def check_bijection(g: Sequence[int], n: int) -> tuple[int, ...]:
    g = tuple(g)
    if len(g) != n:
        raise GroundMismatchError(f"bijection has {len(g)} entries, expected {n}")
    if sorted(g) != list(range(n)):
        raise NotABijectionError(f"{list(g)} is not a permutation of range({n})")
    return g


@dataclass(frozen=True)
class HierarchyFlags:
    """Which rung of isometry / similarity / weak / combinatorial similarity ``g`` reaches."""

    isometry: bool
    similarity: bool
    ratio: Fraction | None
    weak_similarity: bool
    scaling: dict | None
    combinatorial_similarity: bool
    value_map: dict | None


def hierarchy_check(d: Pseudometric, rho: Pseudometric, g: Sequence[int]) -> HierarchyFlags:
    """Classify ``g: Y -> X`` relating ``rho`` on Y to ``d`` on X.

    The value map sends each ``rho(x, y)`` to ``d(g(x), g(y))``; it is
    induced from the pairs rather than searched for.
    """
    if d.n != rho.n:
        raise GroundMismatchError(f"ground sets of size {d.n} and {rho.n}")
    g = check_bijection(g, d.n)
    pairs = [(rho.dist[x][y], d.dist[g[x]][g[y]]) for x, y in product(range(d.n), repeat=2)]

    isometry = all(a == b for a, b in pairs)

    ratio = None
    nonzero = [(a, b) for a, b in pairs if b != 0]
    if not nonzero:
        if all(a == 0 for a, _ in pairs):
            ratio = Fraction(1)
    elif nonzero[0][0] != 0:
        r = nonzero[0][0] / nonzero[0][1]
        if all(a == r * b for a, b in pairs):
            ratio = r
    similarity = ratio is not None

    value_map: dict | None = {}
    for a, b in pairs:
        if value_map.setdefault(a, b) != b:
            value_map = None
            break
    combinatorial = value_map is not None and len(set(value_map.values())) == len(value_map)
    weak = False
    if combinatorial:
        keys = sorted(value_map)
        weak = all(value_map[a] < value_map[b] for a, b in zip(keys, keys[1:]))
    return HierarchyFlags(
        isometry=isometry,
        similarity=similarity,
        ratio=ratio,
        weak_similarity=weak,
        scaling=value_map if weak else None,
        combinatorial_similarity=combinatorial,
        value_map=value_map if combinatorial else None,
    )
