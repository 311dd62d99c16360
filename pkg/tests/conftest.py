import itertools

import numpy as np
import pytest

from framekit import FrameSystem, KernelMatrix, ToleranceProfile


@pytest.fixture
def tol():
    return ToleranceProfile()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_frame(rng, dim, count):
    return FrameSystem.from_vectors(random_complex(rng, count, dim))


def random_psd(rng, n, rank=None):
    B = random_complex(rng, rank or n, n)
    return B.conj().T @ B


def random_tight_kernel(rng, n, rank, c):
    """Gram of a tight frame with constant ``c``: ``K = P / c`` for a rank-``rank`` projection."""
    Q, _ = np.linalg.qr(random_complex(rng, n, rank))
    return KernelMatrix.from_array(Q @ Q.conj().T / c)


def unit_vectors(dim):
    return FrameSystem.from_vectors(np.eye(dim), [f"e{i + 1}" for i in range(dim)])


def central_block_rayleigh(frame, spec):
    """Rayleigh quotients of the interior translates ``e_n``, ``|n| <= extent // 3``.

    Oracle: eigendecompose the central block of the frame operator, built
    directly from the vectors, and read ``<e_n, S e_n>`` off the eigenpairs.
    """
    half, w = spec.extent // 3, spec.window
    idx = np.arange(w - half, w + half + 1)
    V = frame.vectors[:, idx]
    C = V.T @ V.conj()  # S[n, m] = sum_s v_n(s) conj(v_m(s))
    lam, U = np.linalg.eigh((C + C.conj().T) / 2)
    return (np.abs(U) ** 2) @ lam


# ---------------------------------------------------------------------------
# symmetry oracles

ROOTS4 = np.array([1, 1j, -1, -1j])


def oracle_symmetries(K, atol=1e-9):
    n = len(K)
    out = []
    for p in itertools.permutations(range(n)):
        if all(abs(K[p[s]][p[t]] - K[s][t]) <= atol for s in range(n) for t in range(n)):
            out.append(p)
    return out


def oracle_first_equivalence(K1, K2, phases, atol=1e-9):
    """First permutation (lexicographic) admitting a witness; phases on the 4th-root grid."""
    n = len(K1)
    grid = np.array(list(itertools.product(ROOTS4, repeat=n))) if phases else np.ones((1, n))
    for p in itertools.permutations(range(n)):
        Bp = K2[np.ix_(p, p)]
        transported = np.conj(grid)[:, :, None] * grid[:, None, :] * Bp[None]
        ok = (np.abs(transported - K1[None]) <= atol).all(axis=(1, 2))
        if ok.any():
            return p
    return None


def structured_kernel(rng, n):
    """Hermitian kernel with entries in {0, +-1/2, +-1} and repeated diagonal values."""
    A = rng.choice([0.0, 0.5, -0.5, 1.0], size=(n, n))
    K = np.triu(A, 1)
    K = K + K.T
    np.fill_diagonal(K, rng.choice([1.0, 2.0], size=n))
    return K.astype(complex)


def transport(K, perm, lam):
    """Kernel K2 with conj(lam_s) lam_t K2[perm s, perm t] = K[s, t]."""
    n = len(K)
    K2 = np.empty_like(K)
    for s in range(n):
        for t in range(n):
            K2[perm[s], perm[t]] = lam[s] * np.conj(lam[t]) * K[s, t]
    return K2


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    number, title = marker.args
    passed = call.excinfo is None
    results = item.config._criteria
    results[number] = (title, results.get(number, (title, True))[1] and passed)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {title}")
