"""Finite mappings on X x X, their fibers, and coherence."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Hashable, Sequence

from .errors import NotAGroupError, NotAHomomorphismError, UnknownSymbolError
from .relcore import (
    BinaryRelation,
    SquarePartition,
    is_equivalence,
    partition_from_equivalence,
)
from .verdict import Verdict


@dataclass(frozen=True)
class SymMapping:
    """A total mapping ``X x X -> A`` with ``A`` equal to its image.

    ``table[x][y]`` is an index into ``alphabet``. The alphabet order is
    the canonical symbol order; ``from_table`` uses order of first
    occurrence in a row-major scan.
    """

    n: int
    alphabet: tuple[Hashable, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must be nonempty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet has duplicate symbols")
        if len(self.table) != self.n or any(len(row) != self.n for row in self.table):
            raise ValueError("table must be n x n")
        used = {i for row in self.table for i in row}
        if used != set(range(len(self.alphabet))):
            raise ValueError("alphabet must equal the image of the mapping")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[Hashable]]) -> "SymMapping":
        n = len(table)
        index: dict = {}
        rows = []
        for row in table:
            if len(row) != n:
                raise ValueError("table must be square")
            rows.append(tuple(index.setdefault(a, len(index)) for a in row))
        return cls(n, tuple(index), tuple(rows))

    @classmethod
    def from_function(cls, n: int, fn) -> "SymMapping":
        return cls.from_table([[fn(x, y) for y in range(n)] for x in range(n)])

    @classmethod
    def from_square_partition(cls, q: SquarePartition) -> "SymMapping":
        """The natural projection of X x X onto the blocks of ``q``; symbols are block indices."""
        labels = [[None] * q.n for _ in range(q.n)]
        for i, block in enumerate(q.blocks):
            for x, y in block:
                labels[x][y] = i
        return cls.from_table(labels)

    def __call__(self, x: int, y: int) -> Hashable:
        return self.alphabet[self.table[x][y]]

    def symbol_index(self, a: Hashable) -> int:
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise UnknownSymbolError(f"symbol {a!r} is not in the image of the mapping") from None

    def fiber(self, a: Hashable) -> BinaryRelation:
        k = self.symbol_index(a)
        return BinaryRelation(
            self.n,
            tuple(sum(1 << y for y, v in enumerate(row) if v == k) for row in self.table),
        )

    def to_table(self) -> list[list[Hashable]]:
        return [[self.alphabet[i] for i in row] for row in self.table]

    def relabel(self, g: Sequence[int], f: dict | None = None) -> "SymMapping":
        """``(x, y) -> f(self(g[x], g[y]))``; ``g`` maps the new ground set into this one."""
        f = f or {}
        return SymMapping.from_table(
            [[f.get(self(gx, gy), self(gx, gy)) for gy in g] for gx in g]
        )


def fibers(phi: SymMapping) -> dict[Hashable, BinaryRelation]:
    """Fiber of every symbol, in alphabet order."""
    return {a: phi.fiber(a) for a in phi.alphabet}


def fiber_partition(phi: SymMapping) -> SquarePartition:
    return SquarePartition.from_blocks(phi.n, fibers(phi).values())


def is_symmetric(phi: SymMapping) -> Verdict:
    t = phi.table
    for x in range(phi.n):
        for y in range(x + 1, phi.n):
            if t[x][y] != t[y][x]:
                return Verdict.no("asymmetric", (x, y))
    return Verdict.yes()


def is_coherent(phi: SymMapping, a0: Hashable) -> Verdict:
    """Decide whether ``phi`` is ``a0``-coherent.

    Reasons on failure: ``("equivalence", axiom)`` when the fiber of ``a0``
    is not an equivalence (witness from :func:`is_equivalence`), or
    ``"implication"`` with the lexicographically first quadruple
    ``(x1, x2, x3, x4)`` where ``x1 ~ x2``, ``x3 ~ x4`` and
    ``phi(x1, x3) != phi(x2, x4)``.
    """
    rel = phi.fiber(a0)
    eq = is_equivalence(rel)
    if not eq:
        return Verdict.no(("equivalence", eq.reason), eq.witness)
    t = phi.table
    blocks = partition_from_equivalence(rel).blocks
    # constancy on every product of two classes is equivalent to the implication
    constant = all(
        len({t[x][y] for x in bi for y in bj}) == 1 for bi in blocks for bj in blocks
    )
    if constant:
        return Verdict.yes()
    classes = [list(_row_bits(rel.rows[x])) for x in range(phi.n)]
    for x1 in range(phi.n):
        for x2 in classes[x1]:
            for x3 in range(phi.n):
                for x4 in classes[x3]:
                    if t[x1][x3] != t[x2][x4]:
                        return Verdict.no("implication", (x1, x2, x3, x4))
    raise AssertionError("nonconstant class product without a violating quadruple")


def _row_bits(mask: int):
    y = 0
    while mask:
        if mask & 1:
            yield y
        mask >>= 1
        y += 1


def coherence_point(phi: SymMapping) -> Hashable | None:
    """The unique symbol at which ``phi`` is coherent, or None."""
    points = [a for a in phi.alphabet if is_coherent(phi, a)]
    if len(points) > 1:
        raise AssertionError(f"mapping is coherent at several symbols: {points}")
    return points[0] if points else None


# groups


def _check_group(table: Sequence[Sequence[int]], name: str) -> tuple[int, list[int]]:
    k = len(table)
    if k == 0 or any(len(row) != k for row in table):
        raise NotAGroupError(f"{name}: Cayley table must be square and nonempty")
    if any(not 0 <= v < k for row in table for v in row):
        raise NotAGroupError(f"{name}: table entries out of range")
    for a, b, c in product(range(k), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroupError(f"{name}: not associative at {(a, b, c)}")
    ids = [e for e in range(k) if all(table[e][x] == x == table[x][e] for x in range(k))]
    if not ids:
        raise NotAGroupError(f"{name}: no identity element")
    e = ids[0]
    inverse = []
    for x in range(k):
        inv = [y for y in range(k) if table[x][y] == e]
        if not inv or table[inv[0]][x] != e:
            raise NotAGroupError(f"{name}: element {x} has no inverse")
        inverse.append(inv[0])
    return e, inverse


def group_identity(table: Sequence[Sequence[int]]) -> int:
    return _check_group(table, "group")[0]


def from_group_hom(
    g_table: Sequence[Sequence[int]],
    h_table: Sequence[Sequence[int]],
    f: Sequence[int],
) -> SymMapping:
    """``(x, y) -> f(x^-1 * y)`` on ``G x G`` for a homomorphism ``f: G -> H``.

    The result is coherent at the identity of ``H``.
    """
    _, inverse = _check_group(g_table, "G")
    _check_group(h_table, "H")
    if len(f) != len(g_table) or any(not 0 <= v < len(h_table) for v in f):
        raise NotAHomomorphismError("f must map every element of G into H")
    for a, b in product(range(len(g_table)), repeat=2):
        if f[g_table[a][b]] != h_table[f[a]][f[b]]:
            raise NotAHomomorphismError(f"f(a*b) != f(a)f(b) at {(a, b)}")
    k = len(g_table)
    return SymMapping.from_table(
        [[f[g_table[inverse[x]][y]] for y in range(k)] for x in range(k)]
    )


def cyclic_group(k: int) -> list[list[int]]:
    return [[(a + b) % k for b in range(k)] for a in range(k)]
