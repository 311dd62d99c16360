import itertools

import numpy as np
import pytest

from framekit import (
    EquivalenceWitness,
    InvalidWitness,
    TooLarge,
    classify,
    gram_matrix,
    harmonic_frame,
    kolmogorov_factorize,
    permutation_symmetries,
    phase_equivalence,
    rotation_equivalence_demo,
)
from framekit.symmetry import witness_residual

from conftest import ROOTS4, oracle_first_equivalence, oracle_symmetries, structured_kernel, transport

N3_GRAM = gram_matrix(harmonic_frame(3))


class TestPermutationSymmetries:
    def test_harmonic3_full_symmetric_group(self):
        syms = permutation_symmetries(N3_GRAM)
        assert sorted(syms) == sorted(itertools.permutations(range(3)))
        assert syms == oracle_symmetries(N3_GRAM)

    def test_identity_kernel(self):
        assert len(permutation_symmetries(np.eye(5))) == 120

    def test_distinct_diagonal(self):
        assert permutation_symmetries(np.diag([1.0, 2.0, 3.0])) == [(0, 1, 2)]

    def test_harmonic_n_is_dihedral(self):
        # the n-gon Gram depends on (s - t) mod n through a cosine: dihedral group
        for n in range(3, 8):
            assert len(permutation_symmetries(gram_matrix(harmonic_frame(n)))) == (6 if n == 3 else 2 * n)

    def test_group_axioms(self, rng):
        for _ in range(10):
            K = structured_kernel(rng, 5)
            syms = set(permutation_symmetries(K))
            assert tuple(range(5)) in syms
            for a in syms:
                inv = tuple(np.argsort(a))
                assert inv in syms
                for b in syms:
                    assert tuple(a[b[i]] for i in range(5)) in syms

    def test_too_large(self):
        with pytest.raises(TooLarge):
            permutation_symmetries(np.eye(9))
        assert len(permutation_symmetries(np.diag(np.arange(9.0)), max_size=9)) == 1

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_matches_oracle(self, rng, n):
        for _ in range(8):
            K = structured_kernel(rng, n)
            assert permutation_symmetries(K) == oracle_symmetries(K)


class TestPhaseEquivalence:
    def test_self(self, rng):
        K = structured_kernel(rng, 4)
        for phases in (False, True):
            assert phase_equivalence(K, K, allow_phases=phases).is_identity()

    def test_sign_flip_pair(self):
        K1 = np.array([[1, 0.5], [0.5, 1]])
        K2 = np.array([[1, -0.5], [-0.5, 1]])
        w = phase_equivalence(K1, K2, allow_phases=True)
        assert w.permutation == (0, 1)
        np.testing.assert_allclose(w.phases, [1, -1])
        assert phase_equivalence(K1, K2, allow_phases=False) is None

    def test_size_mismatch(self):
        K4 = gram_matrix(harmonic_frame(4))
        assert phase_equivalence(N3_GRAM, K4, allow_phases=True) is None
        assert phase_equivalence(N3_GRAM, K4, allow_phases=False) is None

    def test_complex_phases_recovered(self, rng):
        frame = kolmogorov_factorize(structured_kernel(rng, 4) + 6 * np.eye(4))
        K1 = gram_matrix(frame)
        lam = np.exp(2j * np.pi * rng.uniform(size=4))
        perm = (2, 0, 3, 1)
        K2 = transport(K1, perm, lam)
        w = phase_equivalence(K1, K2, allow_phases=True)
        assert w is not None
        assert witness_residual(K1, K2, w) <= 1e-9

    def test_disconnected_components_get_unit_root(self):
        K1 = np.diag([1.0, 1.0]).astype(complex)
        w = phase_equivalence(K1, K1, allow_phases=True)
        np.testing.assert_array_equal(w.phases, [1, 1])

    def test_too_large(self):
        with pytest.raises(TooLarge):
            phase_equivalence(np.eye(9), np.eye(9))

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("phases", [False, True])
    def test_matches_oracle(self, rng, n, phases):
        trials = 4 if n == 6 and phases else 8
        for trial in range(trials):
            K1 = structured_kernel(rng, n)
            if trial % 2 == 0:
                lam = rng.choice(ROOTS4, size=n) if phases else np.ones(n)
                K2 = transport(K1, tuple(rng.permutation(n)), lam)
            else:
                K2 = structured_kernel(rng, n)
            w = phase_equivalence(K1, K2, allow_phases=phases)
            expected = oracle_first_equivalence(K1, K2, phases)
            if expected is None:
                assert w is None
            else:
                assert w is not None and w.permutation == expected
                assert witness_residual(K1, K2, w) <= 1e-9

    def test_bounds_transported(self, rng):
        frame1 = kolmogorov_factorize(structured_kernel(rng, 4) + 6 * np.eye(4))
        K1 = gram_matrix(frame1)
        K2 = transport(K1, (1, 3, 0, 2), rng.choice(ROOTS4, size=4))
        frame2 = kolmogorov_factorize(K2)
        assert phase_equivalence(K1, K2) is not None
        b1, b2 = classify(frame1).bounds, classify(frame2).bounds
        assert b1.lower == pytest.approx(b2.lower, abs=1e-9)
        assert b1.upper == pytest.approx(b2.upper, abs=1e-9)


class TestWitness:
    def test_rejects_non_permutation(self):
        with pytest.raises(InvalidWitness):
            EquivalenceWitness((0, 0, 1))

    def test_rejects_non_unimodular(self):
        with pytest.raises(InvalidWitness):
            EquivalenceWitness((0, 1), [1, 2])

    def test_label_mapping(self):
        w = EquivalenceWitness((1, 0))
        assert w.label_mapping(("a", "b"), ("x", "y")) == {"a": "y", "b": "x"}


class TestRotationDemo:
    def test_identity_witness(self):
        for n, theta in ((3, 0.7), (3, 0.0), (5, 2.1)):
            assert rotation_equivalence_demo(n, theta).is_identity()

    def test_quarter_turn_square(self):
        w = rotation_equivalence_demo(4, np.pi / 2)
        assert w.is_identity()
        # the cyclic shift is also a symmetry of the square's Gram
        K = gram_matrix(harmonic_frame(4))
        assert (1, 2, 3, 0) in permutation_symmetries(K)
