"""Dense Hermitian spectral computations and matrix functions.

Every other module goes through :func:`hermitian_eigendecomposition` so that
rank decisions and eigenvector phases are made in exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import EmptyMatrix, NotHermitian, NotPSD

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class ToleranceProfile:
    """Tolerances used for equality, numerical rank and PSD certification.

    Parameters
    ----------
    eq_tol : float
        Absolute tolerance for scalar/matrix equality.
    rank_tol_factor : float, optional
        Eigenvalues at or below ``rank_tol_factor * lambda_max`` count as zero.
        ``None`` means ``dim * machine_epsilon`` for a ``dim x dim`` matrix.
    psd_slack : float, optional
        Allowed magnitude of negative eigenvalues when certifying PSD.
        ``None`` means ``max(1e-10 * lambda_max, 1e-12)``.
    """

    eq_tol: float = 1e-9
    rank_tol_factor: Optional[float] = None
    psd_slack: Optional[float] = None

    def __post_init__(self):
        for name in ("eq_tol", "rank_tol_factor", "psd_slack"):
            value = getattr(self, name)
            if value is not None and not (value > 0 and np.isfinite(value)):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    def rank_threshold(self, lambda_max: float, dim: int) -> float:
        factor = self.rank_tol_factor if self.rank_tol_factor is not None else dim * EPS
        return factor * max(lambda_max, 0.0)

    def psd_threshold(self, lambda_max: float) -> float:
        if self.psd_slack is not None:
            return self.psd_slack
        return max(1e-10 * abs(lambda_max), 1e-12)

    def as_dict(self) -> dict:
        return {
            "eq_tol": self.eq_tol,
            "rank_tol_factor": self.rank_tol_factor,
            "psd_slack": self.psd_slack,
        }


DEFAULT_TOL = ToleranceProfile()


@dataclass(frozen=True)
class HermitianSpectrum:
    """Ascending eigenvalues with the matching unitary eigenvector matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    def rank_threshold(self, tol: ToleranceProfile = DEFAULT_TOL) -> float:
        return tol.rank_threshold(self.lambda_max, len(self.eigenvalues))

    def rank(self, tol: ToleranceProfile = DEFAULT_TOL) -> int:
        return int(np.count_nonzero(self.eigenvalues > self.rank_threshold(tol)))

    def nonzero(self, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
        """Eigenvalues strictly above the rank threshold, ascending."""
        return self.eigenvalues[self.eigenvalues > self.rank_threshold(tol)]

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def _as_square(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] == 0:
        raise EmptyMatrix("0x0 matrix has no spectrum")
    return A


def hermitian_defect(M) -> float:
    """Largest entrywise deviation ``max|M - M*|``."""
    A = np.asarray(M, dtype=np.complex128)
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(A - A.conj().T)))


def check_hermitian(A: np.ndarray, tol: ToleranceProfile) -> None:
    scale = float(np.max(np.abs(A)))
    defect = hermitian_defect(A)
    if defect > tol.eq_tol * scale:
        raise NotHermitian(
            f"max|M - M*| = {defect:.3e} exceeds {tol.eq_tol:.1e} relative to max|M| = {scale:.3e}"
        )


def _fix_phases(U: np.ndarray, tol: ToleranceProfile) -> np.ndarray:
    # make the first non-negligible component of each column real positive
    U = U.copy()
    mags = np.abs(U)
    for j in range(U.shape[1]):
        idx = int(np.argmax(mags[:, j] > tol.eq_tol))
        u = U[idx, j]
        U[:, j] *= np.conj(u) / abs(u)
        U[idx, j] = abs(u)
    return U


def hermitian_eigendecomposition(M, tol: ToleranceProfile = DEFAULT_TOL) -> HermitianSpectrum:
    """Eigendecompose a Hermitian matrix with a deterministic phase convention.

    The input is symmetrized as ``(M + M*) / 2`` before LAPACK ``eigh`` is
    called. Each eigenvector is rotated so its first component with modulus
    above ``tol.eq_tol`` is real and positive.

    Raises
    ------
    NotHermitian
        If ``max|M - M*|`` exceeds ``tol.eq_tol`` relative to ``max|M|``.
    EmptyMatrix
        For a 0x0 input.
    """
    A = _as_square(M)
    check_hermitian(A, tol)
    H = (A + A.conj().T) / 2
    w, U = np.linalg.eigh(H)
    return HermitianSpectrum(eigenvalues=w, eigenvectors=_fix_phases(U, tol))


def _spectral_function(M, fn: Callable[[np.ndarray], np.ndarray], tol: ToleranceProfile) -> np.ndarray:
    spec = hermitian_eigendecomposition(M, tol)
    w = spec.eigenvalues
    lam_max = float(np.max(np.abs(w)))
    if w[0] < -tol.psd_threshold(lam_max):
        raise NotPSD(f"eigenvalue {w[0]:.6e} below -psd_slack")
    keep = w > spec.rank_threshold(tol)
    mapped = np.zeros_like(w)
    mapped[keep] = fn(w[keep])
    U = spec.eigenvectors
    out = (U * mapped) @ U.conj().T
    return (out + out.conj().T) / 2


def psd_inverse_sqrt(M, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse square root of a PSD matrix.

    Eigenvalues above the rank threshold map to ``lambda**-0.5``; the rest map
    to zero, so ``R @ M @ R`` is the orthogonal projection onto ``range(M)``.
    """
    return _spectral_function(M, lambda w: 1.0 / np.sqrt(w), tol)


def pseudo_sqrt(M, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """PSD square root with sub-threshold eigenvalues sent to zero."""
    return _spectral_function(M, np.sqrt, tol)


def range_projection(M, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projection onto the numerical range of a Hermitian matrix."""
    spec = hermitian_eigendecomposition(M, tol)
    U = spec.eigenvectors[:, spec.eigenvalues > spec.rank_threshold(tol)]
    return U @ U.conj().T
