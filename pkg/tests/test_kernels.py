import numpy as np
import pytest

from framekit import (
    Classification,
    FrameSystem,
    KernelMatrix,
    NotHermitian,
    NotPSD,
    NotTight,
    classify,
    gram_matrix,
    harmonic_frame,
    is_positive_semidefinite,
    kolmogorov_factorize,
    pointwise_bound_check,
    verify_gram_projection,
)

from conftest import random_complex, random_frame, random_psd, random_tight_kernel, unit_vectors

N3_GRAM = gram_matrix(harmonic_frame(3))


class TestPsd:
    def test_identity(self):
        assert is_positive_semidefinite(np.eye(3))

    def test_indefinite_with_witness(self):
        cert = is_positive_semidefinite([[1, 2], [2, 1]])
        assert not cert
        assert cert.min_eigenvalue == pytest.approx(-1.0)
        np.testing.assert_allclose(cert.witness, np.array([1, -1]) / np.sqrt(2), atol=1e-12)
        xi = cert.witness
        # the witness violates positivity: sum conj(xi_s) k(s,t) xi_t < 0
        assert np.vdot(xi, np.array([[1, 2], [2, 1]]) @ xi).real == pytest.approx(-1.0)

    def test_harmonic_gram(self):
        cert = is_positive_semidefinite(KernelMatrix.from_array(N3_GRAM))
        assert cert and cert.min_eigenvalue == pytest.approx(0, abs=1e-12)

    def test_gram_of_any_frame(self, rng):
        for _ in range(20):
            frame = random_frame(rng, int(rng.integers(1, 5)), int(rng.integers(1, 8)))
            assert is_positive_semidefinite(gram_matrix(frame))

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            is_positive_semidefinite([[1, 1], [0, 1]])


class TestFactorize:
    def test_identity_gives_onb(self):
        frame = kolmogorov_factorize(KernelMatrix.from_array(np.eye(3), ["a", "b", "c"]))
        assert frame.labels == ("a", "b", "c")
        assert classify(frame).classification is Classification.ONB

    def test_rank_one(self):
        frame = kolmogorov_factorize(np.ones((2, 2)))
        assert frame.space_dim == 1
        np.testing.assert_allclose(np.abs(frame.vectors), 1.0)
        assert frame.vectors[0, 0] == pytest.approx(frame.vectors[1, 0])

    def test_harmonic_gram(self):
        frame = kolmogorov_factorize(N3_GRAM)
        report = classify(frame)
        assert frame.space_dim == 2
        assert report.classification is Classification.TIGHT
        assert report.tight_constant == pytest.approx(2 / 3, abs=1e-10)

    def test_roundtrip_complex(self, rng):
        for n in range(2, 9):
            for rank in {1, n // 2 or 1, n}:
                K = random_psd(rng, n, rank)
                frame = kolmogorov_factorize(K)
                assert frame.space_dim == rank
                assert np.max(np.abs(gram_matrix(frame) - K)) <= 1e-10 * np.max(np.abs(K))

    def test_not_psd(self):
        with pytest.raises(NotPSD):
            kolmogorov_factorize([[1, 2], [2, 1]])

    def test_zero_kernel(self):
        frame = kolmogorov_factorize(np.zeros((2, 2)))
        np.testing.assert_array_equal(gram_matrix(frame), np.zeros((2, 2)))


class TestGramProjection:
    def test_harmonic(self):
        for n in range(3, 9):
            check = verify_gram_projection(gram_matrix(harmonic_frame(n)), 2 / n)
            assert check and check.residual < 1e-12

    def test_identity(self):
        assert verify_gram_projection(np.eye(4), 1.0)

    def test_wrong_constant(self):
        check = verify_gram_projection(N3_GRAM, 1.0)
        assert not check
        assert check.residual == pytest.approx(0.5)

    def test_agrees_with_factorized_classification(self, rng):
        # both directions of the projection criterion
        for _ in range(10):
            c = float(rng.uniform(0.2, 3))
            K = random_tight_kernel(rng, 6, 3, c)
            assert verify_gram_projection(K, c)
            report = classify(kolmogorov_factorize(K))
            assert report.classification.is_tight
            assert report.tight_constant == pytest.approx(c, rel=1e-9)
        for _ in range(10):
            K = random_psd(rng, 5, 3)
            frame = kolmogorov_factorize(K)
            c = 1 / classify(frame).bounds.upper
            assert not classify(frame).classification.is_tight
            assert not verify_gram_projection(K, c)


class TestPointwiseBound:
    def test_onb(self):
        check = pointwise_bound_check(unit_vectors(3), [1, 0, 0])
        assert check
        np.testing.assert_allclose(check.margins, [0, 1, 1])

    def test_harmonic(self):
        check = pointwise_bound_check(harmonic_frame(3), [1, 0])
        assert check
        np.testing.assert_allclose(check.margins, [0.5, 0.5, 0.0], atol=1e-15)

    def test_schwarz_case(self):
        frame = harmonic_frame(5)
        for t in frame.labels:
            assert pointwise_bound_check(frame, frame.vector(t))

    def test_random_tight(self, rng):
        frame = kolmogorov_factorize(random_tight_kernel(rng, 6, 3, 0.4))
        for _ in range(20):
            assert pointwise_bound_check(frame, random_complex(rng, 3))

    def test_requires_tight(self):
        with pytest.raises(NotTight):
            pointwise_bound_check(FrameSystem.from_vectors([[1, 0], [1, 0], [0, 1]]), [1, 0])
