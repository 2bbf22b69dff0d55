from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from combsim.errors import CapExceededError
from combsim.mapkit import SymMapping, coherence_point, is_coherent, is_symmetric
from combsim.pmetric import (
    discrete_from_equivalence,
    is_strongly_rigid,
    validate,
    zero_pseudometric,
)
from combsim.relcore import (
    BinaryRelation,
    Partition,
    equivalence_from_partition,
    is_equivalence,
    sym_tensor_s1,
)
from combsim.simdec import (
    SimilarityWitness,
    compose_witnesses,
    decide_comb_similar,
    discrete_similar,
    invert_witness,
    metric_similar,
    pseudometric_similar,
    strongly_rigid_similar,
    verify_pseudometric_witness,
    verify_similarity,
    witness_values,
)

from .oracles import comb_similar_brute, pseudometric_ok, ptolemaic
from .strategies import mappings, partitions, pseudometrics
from .test_mapkit import NONREFLEXIVE, NO_COHERENCE_POINT, SPLIT_CLASS


def discrete_mapping(blocks, n):
    p = Partition.from_blocks(n, blocks)
    return discrete_from_equivalence(equivalence_from_partition(p)).as_mapping()


@st.composite
def relabeled_pairs(draw, base=mappings(max_n=5)):
    phi = draw(base)
    g = tuple(draw(st.permutations(range(phi.n))))
    names = draw(st.permutations([f"t{i}" for i in range(len(phi.alphabet))]))
    f = dict(zip(phi.alphabet, names))
    return phi, phi.relabel(g, f)


class TestCombSimilar:
    def test_reflexive_identity_witness(self):
        v = decide_comb_similar(SPLIT_CLASS, SPLIT_CLASS)
        assert v and v.witness.g == (0, 1, 2)

    def test_class_sizes_refute(self):
        a = discrete_mapping([[0, 1], [2, 3]], 4)
        b = discrete_mapping([[0, 1, 2], [3]], 4)
        v = decide_comb_similar(a, b)
        assert not v and v.reason == "fiber-size-multiset-mismatch"

    def test_swapped_labels(self):
        phi = SymMapping.from_table([["d", "o"], ["o", "d"]])
        psi = SymMapping.from_table([["o", "d"], ["d", "o"]])
        v = decide_comb_similar(phi, psi)
        assert v and v.witness.g == (0, 1) and v.witness.f == {"d": "o", "o": "d"}

    def test_transposition_needed(self):
        phi = SymMapping.from_table([["x", "y"], ["z", "z"]])
        psi = SymMapping.from_table([["z", "z"], ["y", "x"]])
        v = decide_comb_similar(phi, psi)
        assert v and v.witness.g == (1, 0)

    def test_size_refutations(self):
        assert decide_comb_similar(NO_COHERENCE_POINT, SPLIT_CLASS).reason == "ground-size-mismatch"
        two = SymMapping.from_table([["a", "b"], ["b", "b"]])
        assert decide_comb_similar(NO_COHERENCE_POINT, two).reason == "alphabet-size-mismatch"

    def test_cap(self):
        phi = discrete_mapping([[x] for x in range(7)], 7)
        psi = phi.relabel(tuple(reversed(range(7))))
        with pytest.raises(CapExceededError):
            decide_comb_similar(phi, psi, max_nodes=2)

    @given(relabeled_pairs())
    def test_relabeling_is_found(self, pair):
        phi, psi = pair
        v = decide_comb_similar(phi, psi)
        assert v and verify_similarity(phi, psi, v.witness)

    @given(mappings(max_n=4, max_symbols=3), mappings(max_n=4, max_symbols=3))
    def test_matches_brute_force(self, phi, psi):
        expected = comb_similar_brute(phi.to_table(), psi.to_table())
        assert bool(decide_comb_similar(phi, psi)) == expected

    @given(relabeled_pairs())
    def test_symmetric_via_inverse(self, pair):
        phi, psi = pair
        w = decide_comb_similar(phi, psi).witness
        assert verify_similarity(psi, phi, invert_witness(w))

    @given(st.data())
    def test_transitive_via_composition(self, data):
        phi, psi = data.draw(relabeled_pairs())
        g = tuple(data.draw(st.permutations(range(psi.n))))
        chi = psi.relabel(g)
        w1 = decide_comb_similar(phi, psi).witness
        w2 = decide_comb_similar(psi, chi).witness
        assert verify_similarity(phi, chi, compose_witnesses(w1, w2))

    @given(relabeled_pairs())
    def test_coherence_transported(self, pair):
        phi, psi = pair
        w = decide_comb_similar(phi, psi).witness
        for a in phi.alphabet:
            if is_coherent(phi, a):
                assert is_coherent(psi, w.f[a])

    def test_verify_rejects_bad_witness(self):
        assert not verify_similarity(NO_COHERENCE_POINT, NO_COHERENCE_POINT, SimilarityWitness((0, 0), {}))


class TestWitnessValues:
    def test_range_and_injectivity(self):
        for m in range(1, 12):
            vals = witness_values(m)
            assert len(set(vals)) == m and vals[0] == 1 and max(vals) <= Q(4, 3)

    def test_three_values(self):
        assert witness_values(3) == [1, Q(7, 6), Q(4, 3)]


class TestPseudometricSimilar:
    @given(pseudometrics())
    def test_pseudometric_tables_accepted(self, d):
        v = pseudometric_similar(d.as_mapping())
        assert v and verify_pseudometric_witness(d.as_mapping(), v.witness)

    def test_asymmetric_rejected(self):
        v = pseudometric_similar(SPLIT_CLASS)
        assert not v and v.reason == "not-symmetric"

    def test_no_coherence_point(self):
        v = pseudometric_similar(NO_COHERENCE_POINT)
        assert not v and v.reason == "no-coherence-point"

    @given(mappings(max_n=3, max_symbols=3))
    def test_matches_conjunction(self, phi):
        expected = bool(is_symmetric(phi)) and coherence_point(phi) is not None
        assert bool(pseudometric_similar(phi)) == expected

    @given(mappings(max_n=4, max_symbols=4, symmetric=True))
    def test_witness_is_ptolemaic_pseudometric(self, phi):
        v = pseudometric_similar(phi)
        if v:
            d = v.witness.d
            assert pseudometric_ok(d.dist) and ptolemaic(d.dist)
            assert all(d(x, y) == v.witness.f[phi(x, y)] for x in range(phi.n) for y in range(phi.n))


class TestMetricSimilar:
    def test_no_diagonal_fiber(self):
        assert metric_similar(NO_COHERENCE_POINT).reason == "no-diagonal-fiber"

    def test_diagonal_and_rest(self):
        phi = SymMapping.from_function(3, lambda x, y: "eq" if x == y else "ne")
        v = metric_similar(phi)
        assert v and v.witness.d.values() == {0, 1}

    def test_zero_table_rejected(self):
        assert not metric_similar(zero_pseudometric(2).as_mapping())


class TestDiscreteSimilar:
    def test_constant(self):
        v = discrete_similar(SymMapping.from_function(3, lambda x, y: "k"))
        assert v and v.witness.d == zero_pseudometric(3)

    def test_loop_fiber(self):
        assert discrete_similar(NONREFLEXIVE).reason == "no-equivalence-fiber"

    def test_pair_class(self):
        assert discrete_similar(discrete_mapping([[0, 1], [2]], 3))

    def test_too_many_values(self):
        assert discrete_similar(NO_COHERENCE_POINT).reason == "too-many-values"

    @given(mappings(max_n=4, max_symbols=2))
    def test_three_conditions_agree(self, phi):
        by_equivalence = any(is_equivalence(phi.fiber(a)) for a in phi.alphabet)
        by_coherence = any(is_coherent(phi, a) for a in phi.alphabet)
        assert bool(discrete_similar(phi)) == by_equivalence == by_coherence


class TestStronglyRigidSimilar:
    def test_tensor_of_singletons(self):
        phi = SymMapping.from_square_partition(sym_tensor_s1(Partition.singletons(3)))
        v = strongly_rigid_similar(phi)
        assert v and v.witness.d.values() == {0, 1, Q(7, 6), Q(4, 3)}

    def test_equilateral_rejected(self):
        phi = validate([[0, 1, 1], [1, 0, 1], [1, 1, 0]]).as_mapping()
        v = strongly_rigid_similar(phi)
        assert not v and v.reason == "fibers-differ-from-symmetric-tensor" and v.witness == (4, 2)

    def test_zero_accepted(self):
        assert strongly_rigid_similar(zero_pseudometric(3).as_mapping())

    def test_metric_variant(self):
        phi = validate([[0, 0, 1], [0, 0, 1], [1, 1, 0]]).as_mapping()
        assert strongly_rigid_similar(phi)
        assert strongly_rigid_similar(phi, metric=True).reason == "diagonal-fiber-not-diagonal"
        assert strongly_rigid_similar(validate([[0, 1, 2], [1, 0, 3], [2, 3, 0]]).as_mapping(), metric=True)

    @given(pseudometrics(max_n=6))
    def test_agrees_with_rigidity(self, d):
        assert bool(strongly_rigid_similar(d.as_mapping())) == bool(is_strongly_rigid(d))

    @given(partitions())
    def test_every_tensor_accepted(self, p):
        v = strongly_rigid_similar(SymMapping.from_square_partition(sym_tensor_s1(p)))
        assert v and is_strongly_rigid(v.witness.d)
