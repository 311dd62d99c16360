"""Positive semidefinite kernels: certification, factorization, projection tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NotPSD, NotTight
from .frames import FrameSystem, _check_labels, _frozen, _require_dim, classify, gram_matrix
from .numerics import DEFAULT_TOL, ToleranceProfile, check_hermitian, hermitian_eigendecomposition


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """A labelled square matrix ``k(s, t)``.

    Hermitian symmetry is checked by the operations that need it, not here,
    so malformed kernels can still be represented and reported on.
    """

    labels: tuple
    entries: np.ndarray

    def __post_init__(self):
        labels = _check_labels(self.labels)
        K = np.asarray(self.entries, dtype=np.complex128)
        if K.ndim != 2 or K.shape[0] != K.shape[1] or K.shape[0] != len(labels):
            raise DimensionMismatch(f"{len(labels)} labels but entries have shape {K.shape}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", _frozen(K))

    @classmethod
    def from_array(cls, entries, labels=None) -> "KernelMatrix":
        K = np.asarray(entries, dtype=np.complex128)
        if labels is None:
            labels = [str(i) for i in range(K.shape[0])]
        return cls(tuple(labels), K)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries))) if self.entries.size else 0.0


def _entries(K) -> np.ndarray:
    return K.entries if isinstance(K, KernelMatrix) else np.asarray(K, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class PsdCertificate:
    """Outcome of a PSD test.

    On failure ``witness`` is a unit vector ``xi`` with
    ``sum conj(xi_s) k(s,t) xi_t = min_eigenvalue < 0``.
    """

    is_psd: bool
    min_eigenvalue: float
    witness: Optional[np.ndarray] = None

    def __bool__(self) -> bool:
        return self.is_psd


def is_positive_semidefinite(K, tol: ToleranceProfile = DEFAULT_TOL) -> PsdCertificate:
    spec = hermitian_eigendecomposition(_entries(K), tol)
    w = spec.eigenvalues
    slack = tol.psd_threshold(float(np.max(np.abs(w))))
    lam = float(w[0])
    if lam >= -slack:
        return PsdCertificate(True, lam)
    return PsdCertificate(False, lam, spec.eigenvectors[:, 0].copy())


def kolmogorov_factorize(K, tol: ToleranceProfile = DEFAULT_TOL) -> FrameSystem:
    """Vectors ``v(s)`` in ``C^r`` with ``<v(s) | v(t)> = k(s, t)``, ``r = rank K``.

    With ``K = U diag(lam) U*`` the vector for row ``s`` has components
    ``conj(U[s, i]) * sqrt(lam_i)`` over the eigenvalues above the rank
    threshold; the conjugate is what makes the first-slot-conjugate inner
    product reproduce ``K`` rather than its transpose.
    """
    entries = _entries(K)
    labels = K.labels if isinstance(K, KernelMatrix) else tuple(str(i) for i in range(entries.shape[0]))
    spec = hermitian_eigendecomposition(entries, tol)
    w = spec.eigenvalues
    if w[0] < -tol.psd_threshold(float(np.max(np.abs(w)))):
        raise NotPSD(f"kernel has eigenvalue {w[0]:.6e}")
    keep = w > spec.rank_threshold(tol)
    if not keep.any():
        return FrameSystem(1, labels, np.zeros((len(labels), 1)))
    # largest eigenvalue first so the leading coordinate carries the most energy
    idx = np.flatnonzero(keep)[::-1]
    vecs = spec.eigenvectors[:, idx].conj() * np.sqrt(w[idx])
    return FrameSystem(vecs.shape[1], labels, vecs)


@dataclass(frozen=True)
class ProjectionCheck:
    ok: bool
    residual: float

    def __bool__(self) -> bool:
        return self.ok


def verify_gram_projection(K, c: float, tol: ToleranceProfile = DEFAULT_TOL) -> ProjectionCheck:
    """Test ``K @ K == K / c``, i.e. that ``c K`` is an orthogonal projection."""
    A = _entries(K)
    check_hermitian(A, tol)
    residual = float(np.max(np.abs(A @ A - A / c))) if A.size else 0.0
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    return ProjectionCheck(residual <= tol.eq_tol * scale / c, residual)


@dataclass(frozen=True, eq=False)
class PointwiseBound:
    """Per-label margins ``k(s,s)^{1/2} ||f|| - |<v(s)|f>|``."""

    ok: bool
    labels: tuple
    margins: np.ndarray

    def __bool__(self) -> bool:
        return self.ok


def pointwise_bound_check(frame: FrameSystem, f, tol: ToleranceProfile = DEFAULT_TOL) -> PointwiseBound:
    """Check ``|f(s)| <= k(s,s)^{1/2} ||f||`` with ``f(s) = <v(s) | f>``."""
    f = _require_dim(frame, f)
    report = classify(frame, tol)
    if not report.classification.is_tight:
        raise NotTight(f"frame classifies as {report.classification.value}, not tight")
    values = np.abs(frame.analysis_matrix() @ f)
    diag = np.real(np.diag(gram_matrix(frame))).clip(min=0.0)
    margins = np.sqrt(diag) * np.linalg.norm(f) - values
    return PointwiseBound(bool(np.all(margins >= -tol.eq_tol)), frame.labels, margins)
