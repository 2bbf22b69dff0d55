"""Finite binary relations, partitions of X and of X x X.

Ground sets are ``range(n)``. A relation is stored as one integer bit mask
per row: bit ``y`` of ``rows[x]`` is set iff ``(x, y)`` belongs to the
relation. Composition is then a boolean matrix product done with ORs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import GroundMismatchError, NotEquivalenceError
from .verdict import Verdict


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"ground set size must be a positive integer, got {n!r}")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class BinaryRelation:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        _check_n(self.n)
        if len(self.rows) != self.n:
            raise ValueError("row count does not match ground set size")
        top = 1 << self.n
        if any(r < 0 or r >= top for r in self.rows):
            raise ValueError("row mask has bits outside the ground set")

    # constructors

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "BinaryRelation":
        _check_n(n)
        rows = [0] * n
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"pair {(x, y)} outside ground set of size {n}")
            rows[x] |= 1 << y
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "BinaryRelation":
        n = len(matrix)
        rows = []
        for row in matrix:
            if len(row) != n:
                raise ValueError("relation matrix must be square")
            rows.append(sum(1 << y for y, v in enumerate(row) if v))
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "BinaryRelation":
        return cls(n, (0,) * n)

    @classmethod
    def diagonal(cls, n: int) -> "BinaryRelation":
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def full(cls, n: int) -> "BinaryRelation":
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def rectangle(cls, n: int, left: Iterable[int], right: Iterable[int]) -> "BinaryRelation":
        """The product ``left x right``."""
        mask = 0
        for y in right:
            mask |= 1 << y
        rows = [0] * n
        for x in left:
            rows[x] = mask
        return cls(n, tuple(rows))

    # set semantics

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.rows[x] >> y & 1)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for x, row in enumerate(self.rows):
            for y in _bits(row):
                yield (x, y)

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def pairs(self) -> list[tuple[int, int]]:
        return list(self)

    def _same_ground(self, other: "BinaryRelation") -> None:
        if self.n != other.n:
            raise GroundMismatchError(
                f"relations over ground sets of size {self.n} and {other.n}"
            )

    def __or__(self, other):
        self._same_ground(other)
        return BinaryRelation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other):
        self._same_ground(other)
        return BinaryRelation(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other) -> bool:
        self._same_ground(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def complement(self) -> "BinaryRelation":
        full = (1 << self.n) - 1
        return BinaryRelation(self.n, tuple(full & ~r for r in self.rows))

    def __matmul__(self, other):
        return compose(self, other)

    def transpose(self) -> "BinaryRelation":
        rows = [0] * self.n
        for x, y in self:
            rows[y] |= 1 << x
        return BinaryRelation(self.n, tuple(rows))

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def least_pair(self) -> tuple[int, int] | None:
        """Smallest member in row-major order, or None for the empty relation."""
        for x, row in enumerate(self.rows):
            if row:
                return (x, (row & -row).bit_length() - 1)
        return None

    def image(self, mapping, target_n: int | None = None) -> "BinaryRelation":
        """Push the relation through ``mapping`` applied to both coordinates.

        ``mapping`` is a sequence indexed by this ground set. The target
        ground set defaults to one of the same size.
        """
        m = self.n if target_n is None else target_n
        return BinaryRelation.from_pairs(m, ((mapping[x], mapping[y]) for x, y in self))

    def to_matrix(self) -> list[list[int]]:
        return [[(row >> y) & 1 for y in range(self.n)] for row in self.rows]

    def __repr__(self) -> str:
        return f"BinaryRelation(n={self.n}, pairs={self.pairs()})"


def compose(r: BinaryRelation, s: BinaryRelation) -> BinaryRelation:
    """``r o s``: pairs (x, y) with some z such that (x, z) in r and (z, y) in s."""
    r._same_ground(s)
    srows = s.rows
    out = []
    for row in r.rows:
        acc = 0
        while row:
            low = row & -row
            acc |= srows[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return BinaryRelation(r.n, tuple(out))


def is_equivalence(r: BinaryRelation) -> Verdict:
    """Check reflexivity, symmetry and transitivity, in that order.

    On failure the reason is the first violated axiom and the witness is
    the lexicographically first offending tuple.
    """
    n = r.n
    for x in range(n):
        if not (r.rows[x] >> x) & 1:
            return Verdict.no("reflexivity", (x,))
    for x, y in r:
        if not (r.rows[y] >> x) & 1:
            return Verdict.no("symmetry", (x, y))
    for x in range(n):
        for y in _bits(r.rows[x]):
            missing = r.rows[y] & ~r.rows[x]
            if missing:
                z = (missing & -missing).bit_length() - 1
                return Verdict.no("transitivity", (x, y, z))
    return Verdict.yes()


@dataclass(frozen=True)
class Partition:
    """A partition of ``range(n)`` in canonical form.

    Blocks are sorted tuples, ordered by least element; ``block_of[x]`` is
    the index of the block holding ``x``.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        _check_n(n)
        seen = [False] * n
        normalized = []
        for block in blocks:
            b = tuple(sorted(set(block)))
            if not b:
                raise ValueError("partition blocks must be nonempty")
            for x in b:
                if not 0 <= x < n:
                    raise ValueError(f"element {x} outside ground set of size {n}")
                if seen[x]:
                    raise ValueError(f"element {x} occurs in two blocks")
                seen[x] = True
            normalized.append(b)
        if not all(seen):
            raise ValueError(f"blocks do not cover element {seen.index(False)}")
        normalized.sort()
        block_of = [0] * n
        for j, b in enumerate(normalized):
            for x in b:
                block_of[x] = j
        return cls(n, tuple(normalized), tuple(block_of))

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Partition whose blocks are the level sets of ``labels``."""
        groups: dict = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls.from_blocks(len(labels), groups.values())

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls.from_blocks(n, ([x] for x in range(n)))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls.from_blocks(n, [range(n)])

    def __len__(self) -> int:
        return len(self.blocks)

    def sizes(self) -> tuple[int, ...]:
        """Block sizes in weakly decreasing order (an integer partition of n)."""
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))


def partition_from_equivalence(r: BinaryRelation) -> Partition:
    verdict = is_equivalence(r)
    if not verdict:
        raise NotEquivalenceError(
            f"relation is not an equivalence: {verdict.reason} fails at {verdict.witness}",
            verdict,
        )
    blocks = []
    assigned = 0
    for a in range(r.n):
        if not (assigned >> a) & 1:
            # [a] = {x : (x, a) in r}; by symmetry this is row a
            blocks.append(list(_bits(r.rows[a])))
            assigned |= r.rows[a]
    return Partition.from_blocks(r.n, blocks)


def equivalence_from_partition(p: Partition) -> BinaryRelation:
    rows = [0] * p.n
    for block in p.blocks:
        mask = sum(1 << x for x in block)
        for x in block:
            rows[x] = mask
    return BinaryRelation(p.n, tuple(rows))


@dataclass(frozen=True)
class SquarePartition:
    """A partition of ``X x X`` into relations, ordered by least pair."""

    n: int
    blocks: tuple[BinaryRelation, ...]

    def __post_init__(self):
        acc = [0] * self.n
        for b in self.blocks:
            if b.n != self.n:
                raise GroundMismatchError("block over a different ground set")
            if not any(b.rows):
                raise ValueError("square partition blocks must be nonempty")
            for x, row in enumerate(b.rows):
                if acc[x] & row:
                    raise ValueError("square partition blocks overlap")
                acc[x] |= row
        full = (1 << self.n) - 1
        if any(a != full for a in acc):
            raise ValueError("square partition blocks do not cover X x X")
        keys = [b.least_pair() for b in self.blocks]
        if keys != sorted(keys):
            raise ValueError("square partition blocks are not in canonical order")

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[BinaryRelation]) -> "SquarePartition":
        return cls(n, tuple(sorted(blocks, key=BinaryRelation.least_pair)))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __contains__(self, rel) -> bool:
        return rel in self.blocks


def sym_tensor_s1(p: Partition) -> SquarePartition:
    """Union of block squares plus one symmetrized rectangle per pair of blocks."""
    n = p.n
    blocks = [equivalence_from_partition(p)]
    for b1, b2 in combinations(p.blocks, 2):
        blocks.append(BinaryRelation.rectangle(n, b1, b2) | BinaryRelation.rectangle(n, b2, b1))
    return SquarePartition.from_blocks(n, blocks)


def rect_tensor(p: Partition) -> SquarePartition:
    """All rectangles ``X_i x X_j``."""
    return SquarePartition.from_blocks(
        p.n, [BinaryRelation.rectangle(p.n, bi, bj) for bi in p.blocks for bj in p.blocks]
    )


def is_symmetric_square_partition(q: SquarePartition) -> Verdict:
    for i, block in enumerate(q.blocks):
        if not block.is_symmetric():
            for x, y in block:
                if (y, x) not in block:
                    return Verdict.no("asymmetric-block", (i, (x, y)))
    return Verdict.yes()


def set_partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``range(n)`` via restricted growth strings."""
    _check_n(n)
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield Partition.from_labels(labels)
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    labels[0] = 0
    yield from rec(1, 0)
