"""Semigroups of binary relations and abstract finite semigroups.

Covers closure under composition, identity/zero/idempotent structure,
isomorphism search, membership in the class H1 of rectangle-like
semigroups with its reconstruction, the shape classification of
semigroups coming from discrete pseudometrics, and the
band-with-core verifier for strongly rigid pseudometrics.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Hashable, Sequence

import numpy as np

from .errors import CapExceededError, NotABijectionError, NotASemigroupError, PreconditionError
from .mapkit import SymMapping, fibers, is_coherent
from .pmetric import Pseudometric, metric_identification
from .relcore import BinaryRelation, Partition, compose, rect_tensor
from .verdict import Verdict

log = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTS = 100_000
# dense k x k tables beyond this order are refused rather than allocated
MAX_TABLE_ORDER = 4096


@dataclass(frozen=True, eq=False)
class RelationSemigroup:
    """Subsemigroup of all relations on ``range(n)`` generated by ``generators``.

    ``elements`` lists generators first, then products in discovery
    order. ``right[i][j]`` is the index of ``elements[i] o gens[j]``.
    """

    n: int
    elements: tuple[BinaryRelation, ...]
    generators: tuple[int, ...]
    right: tuple[tuple[int, ...], ...] = field(repr=False)
    parent: tuple[tuple[int, int] | None, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[BinaryRelation, int]:
        return {rel: i for i, rel in enumerate(self.elements)}

    @cached_property
    def cayley(self) -> np.ndarray:
        """Full multiplication table, filled from the right action without new compositions."""
        k = len(self.elements)
        if k > MAX_TABLE_ORDER:
            raise CapExceededError(
                f"Cayley table of order {k} exceeds {MAX_TABLE_ORDER}", MAX_TABLE_ORDER
            )
        ngen = len(self.generators)
        right = np.array(self.right, dtype=np.int64).reshape(k, ngen)
        table = np.empty((k, k), dtype=np.int64)
        for c in range(k):
            par = self.parent[c]
            if par is None:
                table[:, c] = right[:, c]
            else:
                p, j = par
                table[:, c] = right[table[:, p], j]
        table.setflags(write=False)
        return table

    def element_set(self) -> frozenset[BinaryRelation]:
        return frozenset(self.elements)

    def to_finite(self) -> "FiniteSemigroup":
        # composition is associative, so the eager check is skipped
        return FiniteSemigroup(self.cayley, labels=self.elements, check=False)


def generate(rels: Sequence[BinaryRelation], max_elements: int = DEFAULT_MAX_ELEMENTS) -> RelationSemigroup:
    """Close ``rels`` under composition, breadth first.

    Raises ``CapExceededError`` when the closure passes ``max_elements``.
    """
    if not rels:
        raise ValueError("need at least one generator")
    n = rels[0].n
    gens: list[BinaryRelation] = []
    for r in rels:
        if r.n != n:
            raise ValueError("generators over different ground sets")
        if r not in gens:
            gens.append(r)
    elements = list(gens)
    index = {r: i for i, r in enumerate(elements)}
    parent: list[tuple[int, int] | None] = [None] * len(gens)
    right: list[tuple[int, ...]] = []
    i = 0
    while i < len(elements):
        row = []
        for j, g in enumerate(gens):
            p = compose(elements[i], g)
            k = index.get(p)
            if k is None:
                if len(elements) >= max_elements:
                    raise CapExceededError(
                        f"closure exceeds {max_elements} elements", max_elements
                    )
                k = len(elements)
                index[p] = k
                elements.append(p)
                parent.append((i, j))
            row.append(k)
        right.append(tuple(row))
        i += 1
    sg = RelationSemigroup(n, tuple(elements), tuple(range(len(gens))), tuple(right), tuple(parent))
    sg.__dict__["index"] = index
    return sg


def fiber_semigroup(phi: SymMapping, max_elements: int = DEFAULT_MAX_ELEMENTS) -> RelationSemigroup:
    """The semigroup generated by the fibers of ``phi``; generator i is the fiber of ``phi.alphabet[i]``."""
    return generate(list(fibers(phi).values()), max_elements)


def relation_semigroup_from_elements(
    elements: Sequence[BinaryRelation], generators: Sequence[int] = ()
) -> tuple[tuple[BinaryRelation, ...], np.ndarray]:
    """Cayley table of an explicit set of relations by direct composition.

    Raises ``NotASemigroupError`` if the set is not closed.
    """
    elements = tuple(elements)
    index = {r: i for i, r in enumerate(elements)}
    if len(index) != len(elements):
        raise ValueError("duplicate elements")
    k = len(elements)
    table = np.empty((k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            c = index.get(compose(elements[a], elements[b]))
            if c is None:
                raise NotASemigroupError(f"product of elements {a} and {b} leaves the set")
            table[a, b] = c
    return elements, table


# abstract semigroups


class FiniteSemigroup:
    """A Cayley table on ``range(order)``; associativity is checked on construction."""

    def __init__(self, cayley, labels: Sequence[Hashable] | None = None, check: bool = True):
        table = np.array(cayley, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise NotASemigroupError("Cayley table must be a nonempty square")
        k = table.shape[0]
        if table.min() < 0 or table.max() >= k:
            raise NotASemigroupError("Cayley table entries out of range")
        if check:
            for a in range(k):
                lhs = table[table[a]]  # (a*b)*c over all b, c
                rhs = table[a][table]  # a*(b*c)
                bad = np.argwhere(lhs != rhs)
                if len(bad):
                    b, c = bad[0]
                    raise NotASemigroupError(f"not associative at {(a, int(b), int(c))}")
        table.setflags(write=False)
        self.cayley = table
        self.labels = tuple(labels) if labels is not None else None

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def __repr__(self) -> str:
        return f"FiniteSemigroup(order={self.order})"

    def restrict(self, subset: Sequence[int]) -> "FiniteSemigroup":
        """Subsemigroup on ``subset`` (in the given order); raises if not closed."""
        subset = list(subset)
        pos = {x: i for i, x in enumerate(subset)}
        sub = self.cayley[np.ix_(subset, subset)]
        try:
            table = [[pos[int(v)] for v in row] for row in sub]
        except KeyError:
            raise NotASemigroupError("subset is not closed under multiplication") from None
        labels = [self.labels[x] for x in subset] if self.labels is not None else list(subset)
        return FiniteSemigroup(table, labels, check=False)


def as_finite(s) -> FiniteSemigroup:
    if isinstance(s, FiniteSemigroup):
        return s
    if isinstance(s, RelationSemigroup):
        return s.to_finite()
    return FiniteSemigroup(s)


def identity_of(s: FiniteSemigroup) -> int | None:
    t = s.cayley
    ar = np.arange(s.order)
    for e in range(s.order):
        if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar):
            return e
    return None


def zero_of(s: FiniteSemigroup) -> int | None:
    """Zero element; by convention a one-element semigroup has an identity and no zero."""
    if s.order < 2:
        return None
    t = s.cayley
    for z in range(s.order):
        if (t[z] == z).all() and (t[:, z] == z).all():
            return z
    return None


def idempotents(s: FiniteSemigroup) -> list[int]:
    d = np.diagonal(s.cayley)
    return [i for i in range(s.order) if d[i] == i]


def nontrivial_idempotents(s: FiniteSemigroup) -> list[int]:
    trivial = {identity_of(s), zero_of(s)}
    return [i for i in idempotents(s) if i not in trivial]


def adjoin_identity(s: FiniteSemigroup) -> tuple[FiniteSemigroup, int]:
    """``S`` itself if it has an identity, else ``S`` plus a fresh identity (last index)."""
    e = identity_of(s)
    if e is not None:
        return s, e
    k = s.order
    table = np.empty((k + 1, k + 1), dtype=np.int64)
    table[:k, :k] = s.cayley
    table[k, :] = np.arange(k + 1)
    table[:, k] = np.arange(k + 1)
    labels = list(s.labels) + ["e"] if s.labels is not None else None
    return FiniteSemigroup(table, labels, check=False), k


@dataclass(frozen=True)
class BandCore:
    core: tuple[int, ...]
    groups: tuple[tuple[int, int], ...]  # (x, x*x) with x*x the group identity


@dataclass(frozen=True)
class StructureReport:
    identity: int | None
    zero: int | None
    idempotents: tuple[int, ...]
    nontrivial_idempotents: tuple[int, ...]
    h1: Verdict
    band_core: BandCore | None


def structure(s) -> StructureReport:
    s = as_finite(s)
    e = identity_of(s)
    band = None
    if e is not None:
        hat = [x for x in range(s.order) if x != e]
        band = _band_candidate(s, hat)
    return StructureReport(
        identity=e,
        zero=zero_of(s),
        idempotents=tuple(idempotents(s)),
        nontrivial_idempotents=tuple(nontrivial_idempotents(s)),
        h1=h1_check(s),
        band_core=band,
    )


# coherence vs. monoid


@dataclass(frozen=True)
class CoherenceMonoidCheck:
    def_route: Verdict
    monoid_route: bool
    closure_size: int

    @property
    def agree(self) -> bool:
        return bool(self.def_route) == self.monoid_route


def is_identity_element(sg: RelationSemigroup, e: BinaryRelation) -> bool:
    """Whether ``e`` belongs to ``sg`` and is a two-sided identity for every element."""
    if e not in sg.index:
        return False
    return all(compose(e, x) == x and compose(x, e) == x for x in sg.elements)


def coherence_monoid_check(
    phi: SymMapping,
    a0: Hashable,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    closure: RelationSemigroup | None = None,
) -> CoherenceMonoidCheck:
    """Coherence at ``a0`` decided by definition and by the generated closure.

    The two routes must agree; a disagreement is logged as a library bug.
    """
    def_route = is_coherent(phi, a0)
    sg = closure if closure is not None else fiber_semigroup(phi, max_elements)
    monoid_route = is_identity_element(sg, phi.fiber(a0))
    out = CoherenceMonoidCheck(def_route, monoid_route, len(sg))
    if not out.agree:
        log.error("coherence routes disagree for symbol %r: this is a bug", a0)
    return out


# isomorphism


def _powers(t: np.ndarray, x: int) -> tuple[int, int]:
    """(index, period) of the monogenic subsemigroup generated by ``x``."""
    seen = {}
    p, step = x, 1
    while p not in seen:
        seen[p] = step
        p = int(t[p, x])
        step += 1
    return seen[p], step - seen[p]


def _fingerprints(s: FiniteSemigroup) -> list[tuple]:
    t = s.cayley
    ar = np.arange(s.order)
    e, z = identity_of(s), zero_of(s)
    out = []
    for x in range(s.order):
        row, col = t[x], t[:, x]
        out.append((
            int(t[x, x]) == x,
            x == e,
            x == z,
            _powers(t, x),
            len(set(row.tolist())),
            len(set(col.tolist())),
            int((row == ar).sum()),
            int((col == ar).sum()),
            int((row == x).sum()),
            int((col == x).sum()),
            int((row == col).sum()),
        ))
    return out


def iso(s1, s2, max_nodes: int = 10**6) -> Verdict:
    """Find an isomorphism ``s1 -> s2``, as a tuple ``F`` with ``F[a]`` in ``s2``.

    Invariants are compared first; the search propagates forced images
    through products of already-mapped elements.
    """
    s1, s2 = as_finite(s1), as_finite(s2)
    if s1.order != s2.order:
        return Verdict.no("order-mismatch", (s1.order, s2.order))
    if (identity_of(s1) is None) != (identity_of(s2) is None):
        return Verdict.no("identity-presence-mismatch")
    if (zero_of(s1) is None) != (zero_of(s2) is None):
        return Verdict.no("zero-presence-mismatch")
    if len(idempotents(s1)) != len(idempotents(s2)):
        return Verdict.no("idempotent-count-mismatch")
    fp1, fp2 = _fingerprints(s1), _fingerprints(s2)
    if sorted(fp1) != sorted(fp2):
        return Verdict.no("fingerprint-mismatch")

    k = s1.order
    t1, t2 = s1.cayley.tolist(), s2.cayley.tolist()
    cand = [[b for b in range(k) if fp2[b] == fp1[a]] for a in range(k)]
    order = sorted(range(k), key=lambda a: (len(cand[a]), a))
    fwd = [-1] * k
    bwd = [-1] * k
    mapped: list[int] = []
    nodes = 0

    def assign(a, b, trail) -> bool:
        """Map a -> b and propagate; on conflict the caller unwinds ``trail``."""
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            if fwd[a] != -1:
                if fwd[a] != b:
                    return False
                continue
            if bwd[b] != -1 or fp1[a] != fp2[b]:
                return False
            fwd[a], bwd[b] = b, a
            trail.append(a)
            mapped.append(a)
            for c in list(mapped):
                d = fwd[c]
                queue.append((t1[a][c], t2[b][d]))
                queue.append((t1[c][a], t2[d][b]))
        return True

    def undo(trail):
        for a in reversed(trail):
            bwd[fwd[a]] = -1
            fwd[a] = -1
            mapped.pop()

    def search(pos) -> bool:
        nonlocal nodes
        while pos < k and fwd[order[pos]] != -1:
            pos += 1
        if pos == k:
            return True
        a = order[pos]
        for b in cand[a]:
            if bwd[b] != -1:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise CapExceededError(f"isomorphism search exceeded {max_nodes} nodes", max_nodes)
            trail: list[int] = []
            if assign(a, b, trail) and search(pos + 1):
                return True
            undo(trail)
        return False

    if not search(0):
        return Verdict.no("exhausted")
    F = tuple(fwd)
    if not is_isomorphism(s1, s2, F):
        raise AssertionError("isomorphism search returned a non-isomorphism")
    return Verdict.yes(F)


def is_isomorphism(s1, s2, F: Sequence[int]) -> bool:
    s1, s2 = as_finite(s1), as_finite(s2)
    F = np.asarray(F, dtype=np.int64)
    if s1.order != s2.order or len(F) != s1.order:
        return False
    if sorted(F.tolist()) != list(range(s2.order)):
        return False
    # F(a*b) == F(a)*F(b) for all a, b
    return bool((F[s1.cayley] == s2.cayley[np.ix_(F, F)]).all())


# induced isomorphisms


@dataclass(frozen=True)
class InducedIso:
    source: object
    target: object
    mapping: tuple[int, ...]  # source index -> target index


def certify_generated_hom(
    source: RelationSemigroup, target: RelationSemigroup, mapping: Sequence[int]
) -> Verdict:
    """Check that ``mapping`` is a bijection with ``F(x o g) = F(x) o F(g)`` for every generator ``g``.

    Every element is a product of generators, so this is equivalent to
    being an isomorphism and avoids the full Cayley table.
    """
    k = len(source)
    if len(target) != k or len(mapping) != k or sorted(mapping) != list(range(k)):
        return Verdict.no("not-a-bijection")
    tgt_gen = {g: j for j, g in enumerate(target.generators)}
    for j, g in enumerate(source.generators):
        fg = mapping[g]
        jt = tgt_gen.get(fg)
        for x in range(k):
            fx = mapping[x]
            if jt is not None:
                prod = target.right[fx][jt]
            else:
                prod = target.index[compose(target.elements[fx], target.elements[fg])]
            if mapping[source.right[x][j]] != prod:
                return Verdict.no("not-a-homomorphism", (x, g))
    return Verdict.yes()


def pushforward_iso(
    g: Sequence[int], s_y: RelationSemigroup, s_x: RelationSemigroup | None = None
) -> InducedIso:
    """Carry every relation of ``s_y`` through ``(x, y) -> (g[x], g[y])``.

    Without ``s_x`` the images of the generators are closed up afresh
    and become the target; with ``s_x`` the images must be exactly its
    elements. The induced map is then certified as an isomorphism.
    """
    g = tuple(g)
    if sorted(g) != list(range(s_y.n)):
        raise NotABijectionError(f"{list(g)} is not a permutation of range({s_y.n})")
    images = [rel.image(g) for rel in s_y.elements]
    if s_x is None:
        s_x = generate([images[i] for i in s_y.generators], max_elements=max(len(s_y), 1))
    if set(images) != s_x.element_set() or len(s_x) != len(images):
        raise AssertionError("pushforward image differs from the target semigroup")
    mapping = tuple(s_x.index[rel] for rel in images)
    cert = certify_generated_hom(s_y, s_x, mapping)
    if not cert:
        raise AssertionError(f"pushforward is not an isomorphism: {cert.reason} at {cert.witness}")
    return InducedIso(s_y, s_x, mapping)


def quotient_iso(d: Pseudometric, max_elements: int = DEFAULT_MAX_ELEMENTS) -> InducedIso:
    """Collapse-to-zero-classes map from the fiber semigroup of ``d`` to that of its identification."""
    mi = metric_identification(d)
    k = len(mi.quotient_partition)
    s_x = fiber_semigroup(d.as_mapping(), max_elements)
    s_y = fiber_semigroup(mi.quotient_metric.as_mapping(), max_elements)
    mapping = []
    for rel in s_x.elements:
        img = rel.image(mi.projection, k)
        if img not in s_y.index:
            raise AssertionError("collapsed relation is outside the quotient semigroup")
        mapping.append(s_y.index[img])
    mapping = tuple(mapping)
    cert = certify_generated_hom(s_x, s_y, mapping)
    if not cert:
        raise AssertionError(f"collapse map is not an isomorphism: {cert.reason} at {cert.witness}")
    return InducedIso(s_x, s_y, mapping)


# class H1


def h1_conditions(s) -> dict[int, Verdict]:
    """Each of the five defining conditions of H1, evaluated independently.

    A one-element semigroup is a member outright and all five report yes.
    """
    s = as_finite(s)
    if s.order == 1:
        return {c: Verdict.yes() for c in range(1, 6)}
    t = s.cayley.tolist()
    theta = zero_of(s)
    idem = idempotents(s)
    nti = nontrivial_idempotents(s)
    nonzero = [a for a in range(s.order) if a != theta]
    out: dict[int, Verdict] = {}

    out[1] = Verdict.yes(theta) if theta is not None else Verdict.no(1)

    out[2] = Verdict.yes()
    for x, y in product(idem, repeat=2):
        if x != y and t[x][y] != theta:
            out[2] = Verdict.no(2, (x, y))
            break

    def framed(a):
        return [(l, r) for l in nti for r in nti if t[t[l][a]][r] == a]

    out[3] = Verdict.yes()
    for l, r in product(nti, repeat=2):
        hits = [a for a in nonzero if t[t[l][a]][r] == a]
        if len(hits) != 1:
            out[3] = Verdict.no(3, (l, r, hits))
            break

    frames = {a: framed(a) for a in nonzero}
    out[4] = Verdict.yes()
    for a in nonzero:
        if len(frames[a]) != 1:
            out[4] = Verdict.no(4, (a, frames[a]))
            break

    out[5] = Verdict.yes()
    for a, b in product(nonzero, repeat=2):
        composable = any(ra == lb for _, ra in frames[a] for lb, _ in frames[b])
        if composable and t[a][b] == theta:
            out[5] = Verdict.no(5, (a, b))
            break
    return out


def h1_check(s) -> Verdict:
    """Membership in H1; on failure, the first failing condition number and its witness."""
    for c, v in h1_conditions(s).items():
        if not v:
            return Verdict.no(c, v.witness)
    return Verdict.yes()


@dataclass(frozen=True)
class H1Reconstruction:
    partition: Partition
    semigroup: RelationSemigroup
    mapping: tuple[int, ...]  # index in semigroup -> element of the input


def h1_reconstruct(s) -> H1Reconstruction:
    """Rebuild an H1 semigroup as the closure of all one-point relations on its nontrivial idempotents."""
    s = as_finite(s)
    verdict = h1_check(s)
    if not verdict:
        raise PreconditionError(f"semigroup is not in H1: condition {verdict.reason} fails")
    if s.order == 1:
        p = Partition.singletons(1)
        sg = generate(list(rect_tensor(p).blocks))
        return H1Reconstruction(p, sg, (0,))
    t = s.cayley.tolist()
    theta = zero_of(s)
    E = nontrivial_idempotents(s)
    p = Partition.singletons(len(E))
    sg = generate(list(rect_tensor(p).blocks))
    mapping = []
    for rel in sg.elements:
        pairs = rel.pairs()
        if not pairs:
            mapping.append(theta)
            continue
        ((i1, i2),) = pairs
        l, r = E[i1], E[i2]
        (x,) = [a for a in range(s.order) if a != theta and t[t[l][a]][r] == a]
        mapping.append(x)
    mapping = tuple(mapping)
    if not is_isomorphism(sg.to_finite(), s, mapping):
        raise AssertionError("reconstruction map is not an isomorphism")
    return H1Reconstruction(p, sg, mapping)


# discrete classification


def classify_discrete(s) -> str:
    """One of ``trivial_group``, ``group_of_order_2``, ``null2_plus_identity``, ``other``."""
    s = as_finite(s)
    t = s.cayley
    e = identity_of(s)
    if s.order == 1:
        return "trivial_group"
    if e is None:
        return "other"
    rest = [x for x in range(s.order) if x != e]
    if s.order == 2:
        (x,) = rest
        return "group_of_order_2" if t[x, x] == e else "other"
    if s.order == 3:
        for z in rest:
            if all(t[a, b] == z for a in rest for b in rest):
                return "null2_plus_identity"
    return "other"


# band of subsemigroups with core


def _band_candidate(s: FiniteSemigroup, hat: Sequence[int]) -> BandCore:
    """Order-2 group candidates ``{x, x*x}`` inside ``hat`` and the remaining core."""
    t = s.cayley
    hat_set = set(hat)
    groups = {}
    for x in hat:
        x2 = int(t[x, x])
        if x2 != x and x2 in hat_set and int(t[x2, x]) == x:
            groups.setdefault(frozenset((x, x2)), (x, x2))
    pairs = tuple(sorted(groups.values(), key=min))
    covered = {y for pr in pairs for y in pr}
    core = tuple(x for x in hat if x not in covered)
    return BandCore(core, pairs)


@dataclass(frozen=True)
class RigidStructureReport:
    identity: int
    band: BandCore
    conditions: dict = field(hash=False)

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    @property
    def omega(self) -> int:
        return len(self.band.groups)


def rigid_structure_check(s) -> RigidStructureReport:
    """Verify the band-with-core description on ``s`` minus its identity.

    Conditions are reported under keys ``adjoined`` (removing the identity
    leaves a subsemigroup) and ``ii1`` ... ``ii5``. The cardinality upper
    bound on the number of groups is vacuous for finite input.
    """
    s = as_finite(s)
    e = identity_of(s)
    if e is None:
        raise PreconditionError("semigroup has no identity element")
    t = s.cayley.tolist()
    hat = [x for x in range(s.order) if x != e]
    hat_set = set(hat)
    band = _band_candidate(s, hat)
    core, groups = list(band.core), band.groups
    core_set = set(core)
    cond: dict[str, Verdict] = {}

    bad = next(((a, b) for a in hat for b in hat if t[a][b] not in hat_set), None)
    cond["adjoined"] = Verdict.yes() if bad is None and hat else Verdict.no("not-closed", bad)

    E_hat = [x for x in hat if t[x][x] == x]
    cond["ii1"] = _check_band_with_core(s, t, hat, core, core_set, groups)
    cond["ii2"] = Verdict.yes(len(groups)) if len(groups) >= 3 else Verdict.no("omega<3", len(groups))

    ii3 = Verdict.yes()
    for a, b in product(E_hat, repeat=2):
        if t[a][b] != t[b][a] or t[t[a][b]][t[a][b]] != t[a][b]:
            ii3 = Verdict.no("not-commutative-band", (a, b))
            break
    cond["ii3"] = ii3

    c_sg = s.restrict(core) if core and all(t[a][b] in core_set for a in core for b in core) else None
    theta = None
    c_nti: list[int] = []
    if c_sg is not None:
        z = zero_of(c_sg)
        theta = core[z] if z is not None else None
        c_nti = [core[i] for i in nontrivial_idempotents(c_sg)]
    outer = [x for x in E_hat if x not in core_set]

    ii4 = Verdict.yes() if c_sg is not None else Verdict.no("core-not-semigroup")
    if ii4:
        for e1, e2 in combinations(c_nti, 2):
            hits = [x for x in outer if t[e1][x] == e1 and t[e2][x] == e2]
            if len(hits) != 1:
                ii4 = Verdict.no("pair-not-uniquely-joined", (e1, e2, hits))
                break
    if ii4:
        for x in outer:
            below = [y for y in c_nti if t[y][x] == y]
            if len(below) != 2:
                ii4 = Verdict.no("outer-idempotent-not-over-two", (x, below))
                break
    cond["ii4"] = ii4

    ii5 = Verdict.yes() if theta is not None else Verdict.no("core-has-no-zero")
    if ii5:
        non_idem = [y for y in hat if t[y][y] != y]
        for x in E_hat:
            if x not in core_set:
                continue
            for y in non_idem:
                for p in (t[x][y], t[y][x]):
                    if (p == theta) != (t[p][p] == p):
                        ii5 = Verdict.no("zero-vs-idempotent", (x, y))
                        break
                if not ii5:
                    break
            if not ii5:
                break
    cond["ii5"] = ii5
    return RigidStructureReport(e, band, cond)


def _check_band_with_core(s, t, hat, core, core_set, groups) -> Verdict:
    if not core:
        return Verdict.no("empty-core")
    if not groups:
        return Verdict.no("core-equals-whole")
    for c in core:
        for h in hat:
            if t[c][h] not in core_set or t[h][c] not in core_set:
                return Verdict.no("core-not-ideal", (c, h))
    seen: set[int] = set()
    for x, x2 in groups:
        if x in seen or x2 in seen:
            return Verdict.no("groups-overlap", (x, x2))
        seen.update((x, x2))
        # x2 is the identity, x the generator, of an order-2 group
        if not (t[x][x] == x2 and t[x2][x2] == x2 and t[x2][x] == x == t[x][x2]):
            return Verdict.no("not-group-of-order-2", (x, x2))
    for (a1, a2), (b1, b2) in combinations(groups, 2):
        for u, v in product((a1, a2), (b1, b2)):
            if t[u][v] not in core_set or t[v][u] not in core_set:
                return Verdict.no("cross-product-outside-core", (u, v))
    c_sg = s.restrict(core)
    h1 = h1_check(c_sg)
    if not h1:
        return Verdict.no(("core-not-in-H1", h1.reason), h1.witness)
    return Verdict.yes()
