"""Combinatorial similarity decisions and pseudometric witnesses."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable

from .errors import CapExceededError
from .mapkit import (
    SymMapping,
    coherence_point,
    fiber_partition,
    fibers,
    is_symmetric,
)
from .pmetric import (
    Pseudometric,
    is_discrete,
    is_metric,
    is_ptolemaic,
    is_strongly_rigid,
)
from .relcore import BinaryRelation, is_equivalence, partition_from_equivalence, sym_tensor_s1
from .verdict import Verdict

DEFAULT_MAX_NODES = 10**7


@dataclass(frozen=True)
class SimilarityWitness:
    """Bijections ``g: Y -> X`` and ``f: phi(X^2) -> psi(Y^2)`` with ``psi = f o phi o (g x g)``."""

    g: tuple[int, ...]
    f: dict = field(hash=False)


def verify_similarity(phi: SymMapping, psi: SymMapping, w: SimilarityWitness) -> bool:
    n = psi.n
    if phi.n != n or sorted(w.g) != list(range(n)):
        return False
    if set(w.f) != set(phi.alphabet) or set(w.f.values()) != set(psi.alphabet):
        return False
    if len(set(w.f.values())) != len(w.f):
        return False
    g = w.g
    return all(psi(x, y) == w.f[phi(g[x], g[y])] for x in range(n) for y in range(n))


def _profiles(phi: SymMapping) -> list[tuple]:
    """Label-free per-element invariant: multiset of (row count, column count, diagonal flag)."""
    n, t = phi.n, phi.table
    out = []
    for x in range(n):
        row = Counter(t[x])
        col = Counter(t[y][x] for y in range(n))
        diag = t[x][x]
        prof = sorted(
            (row[a], col[a], a == diag) for a in range(len(phi.alphabet)) if row[a] or col[a]
        )
        out.append(tuple(prof))
    return out


def _fiber_sizes(phi: SymMapping) -> list[int]:
    return sorted(Counter(i for row in phi.table for i in row).values())


def decide_comb_similar(
    phi: SymMapping, psi: SymMapping, max_nodes: int = DEFAULT_MAX_NODES
) -> Verdict:
    """Search for ``(g, f)`` making ``psi`` a relabeling of ``phi``.

    Returns ``Verdict.yes(SimilarityWitness)`` for the lexicographically
    first ``g``, or a refutation naming the invariant that differs.
    Raises ``CapExceededError`` once more than ``max_nodes`` partial
    assignments have been tried.
    """
    if phi.n != psi.n:
        return Verdict.no("ground-size-mismatch", (phi.n, psi.n))
    if len(phi.alphabet) != len(psi.alphabet):
        return Verdict.no("alphabet-size-mismatch", (len(phi.alphabet), len(psi.alphabet)))
    if _fiber_sizes(phi) != _fiber_sizes(psi):
        return Verdict.no("fiber-size-multiset-mismatch", (_fiber_sizes(phi), _fiber_sizes(psi)))
    prof_x, prof_y = _profiles(phi), _profiles(psi)
    if sorted(prof_x) != sorted(prof_y):
        return Verdict.no("profile-multiset-mismatch")

    n = phi.n
    tx, ty = phi.table, psi.table
    candidates = [[x for x in range(n) if prof_x[x] == prof_y[y]] for y in range(n)]
    g = [-1] * n
    used = [False] * n
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    nodes = 0

    def bind(a, b, added):
        fa = fwd.get(a)
        if fa is None:
            if b in bwd:
                return False
            fwd[a] = b
            bwd[b] = a
            added.append(a)
            return True
        return fa == b

    def extend(y):
        nonlocal nodes
        if y == n:
            return True
        for x in candidates[y]:
            if used[x]:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise CapExceededError(f"similarity search exceeded {max_nodes} nodes", max_nodes)
            g[y] = x
            added: list[int] = []
            ok = bind(tx[x][x], ty[y][y], added)
            for yp in range(y):
                if not ok:
                    break
                xp = g[yp]
                ok = bind(tx[x][xp], ty[y][yp], added) and bind(tx[xp][x], ty[yp][y], added)
            if ok:
                used[x] = True
                if extend(y + 1):
                    return True
                used[x] = False
            for a in added:
                del bwd[fwd.pop(a)]
            g[y] = -1
        return False

    if not extend(0):
        return Verdict.no("exhausted")
    f = {phi.alphabet[a]: psi.alphabet[b] for a, b in fwd.items()}
    witness = SimilarityWitness(tuple(g), f)
    if not verify_similarity(phi, psi, witness):
        raise AssertionError("similarity search produced an invalid witness")
    return Verdict.yes(witness)


def invert_witness(w: SimilarityWitness) -> SimilarityWitness:
    """Witness for ``psi ~ phi`` from one for ``phi ~ psi``."""
    ginv = [0] * len(w.g)
    for y, x in enumerate(w.g):
        ginv[x] = y
    return SimilarityWitness(tuple(ginv), {b: a for a, b in w.f.items()})


def compose_witnesses(w1: SimilarityWitness, w2: SimilarityWitness) -> SimilarityWitness:
    """From ``phi ~ psi`` (w1) and ``psi ~ chi`` (w2), a witness for ``phi ~ chi``."""
    g = tuple(w1.g[w2.g[z]] for z in range(len(w2.g)))
    return SimilarityWitness(g, {a: w2.f[b] for a, b in w1.f.items()})


# pseudometric witnesses


@dataclass(frozen=True)
class PseudometricWitness:
    """A pseudometric ``d = f o phi`` on the same ground set as ``phi``."""

    d: Pseudometric
    f: dict = field(hash=False)
    cls: str = "general"


def witness_values(m: int) -> list[Fraction]:
    """``m`` distinct rationals spread over ``[1, 4/3]``, starting at 1."""
    if m <= 1:
        return [Fraction(1)] * m
    return [1 + Fraction(i, 3 * (m - 1)) for i in range(m)]


def _build_witness(phi: SymMapping, a0: Hashable, cls: str) -> PseudometricWitness:
    others = [a for a in phi.alphabet if a != a0]
    f = {a0: Fraction(0)}
    f.update(zip(others, witness_values(len(others))))
    d = Pseudometric(phi.n, tuple(tuple(f[phi(x, y)] for y in range(phi.n)) for x in range(phi.n)))
    # every witness is re-checked; a failure here is a bug, not a refutation
    if not is_ptolemaic(d):
        raise AssertionError("witness pseudometric is not Ptolemaic")
    if d.as_mapping().to_table() != [[f[a] for a in row] for row in phi.to_table()]:
        raise AssertionError("witness does not commute with the mapping")
    if cls in ("strongly_rigid", "strongly_rigid_metric") and not is_strongly_rigid(d):
        raise AssertionError("witness is not strongly rigid")
    if cls in ("metric", "strongly_rigid_metric") and not is_metric(d):
        raise AssertionError("witness is not a metric")
    if cls == "discrete" and not is_discrete(d):
        raise AssertionError("witness is not discrete")
    return PseudometricWitness(d, f, cls)


def verify_pseudometric_witness(phi: SymMapping, w: PseudometricWitness) -> bool:
    """Independent re-check: axioms (by construction), Ptolemy, and the commuting diagram."""
    if w.d.n != phi.n or len(set(w.f.values())) != len(w.f):
        return False
    identity = SimilarityWitness(tuple(range(phi.n)), dict(w.f))
    return bool(is_ptolemaic(w.d)) and verify_similarity(phi, w.d.as_mapping(), identity)


# Every finite alphabet has at most continuum many symbols, so that
# cardinality hypothesis is omitted from the decisions below.


def pseudometric_similar(phi: SymMapping) -> Verdict:
    sym = is_symmetric(phi)
    if not sym:
        return Verdict.no("not-symmetric", sym.witness)
    a0 = coherence_point(phi)
    if a0 is None:
        return Verdict.no("no-coherence-point")
    return Verdict.yes(_build_witness(phi, a0, "general"))


def _diagonal_symbol(phi: SymMapping) -> Hashable | None:
    diag = BinaryRelation.diagonal(phi.n)
    for a, rel in fibers(phi).items():
        if rel == diag:
            return a
    return None


def metric_similar(phi: SymMapping) -> Verdict:
    sym = is_symmetric(phi)
    if not sym:
        return Verdict.no("not-symmetric", sym.witness)
    a0 = _diagonal_symbol(phi)
    if a0 is None:
        return Verdict.no("no-diagonal-fiber")
    return Verdict.yes(_build_witness(phi, a0, "metric"))


def discrete_similar(phi: SymMapping) -> Verdict:
    if len(phi.alphabet) > 2:
        return Verdict.no("too-many-values", len(phi.alphabet))
    a0 = next((a for a, rel in fibers(phi).items() if is_equivalence(rel)), None)
    if a0 is None:
        return Verdict.no("no-equivalence-fiber")
    if not is_symmetric(phi):
        raise AssertionError("two-valued mapping with an equivalence fiber must be symmetric")
    return Verdict.yes(_build_witness(phi, a0, "discrete"))


def strongly_rigid_similar(phi: SymMapping, metric: bool = False) -> Verdict:
    """Accept iff the fibers are exactly the symmetric tensor of the diagonal fiber's classes.

    With ``metric=True`` the diagonal fiber must also be the diagonal itself.
    """
    diag = BinaryRelation.diagonal(phi.n)
    a0 = next((a for a, rel in fibers(phi).items() if diag <= rel), None)
    if a0 is None:
        return Verdict.no("no-fiber-contains-diagonal")
    rel = phi.fiber(a0)
    eq = is_equivalence(rel)
    if not eq:
        return Verdict.no("diagonal-fiber-not-equivalence", (eq.reason, eq.witness))
    if metric and rel != diag:
        return Verdict.no("diagonal-fiber-not-diagonal")
    tensor = sym_tensor_s1(partition_from_equivalence(rel))
    actual = fiber_partition(phi)
    if tensor != actual:
        return Verdict.no("fibers-differ-from-symmetric-tensor", (len(tensor), len(actual)))
    cls = "strongly_rigid_metric" if metric else "strongly_rigid"
    return Verdict.yes(_build_witness(phi, a0, cls))
