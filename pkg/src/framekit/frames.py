"""Frame data model and the analysis/synthesis operator calculus.

Inner products are conjugate-linear in the first argument:
``<u | w> = sum(conj(u) * w)``.

Two constant conventions coexist. Frame bounds ``A1 <= A2`` bound the frame
operator ``V*V`` (``A1 ||f||^2 <= sum |<v(s)|f>|^2 <= A2 ||f||^2``), while the
tight-frame constant ``c`` scales the other way, ``||f||^2 = c sum |<v(s)|f>|^2``.
For a tight frame ``c = 1 / A1 = 1 / A2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, DuplicateLabel, LabelMismatch, NotTight
from .numerics import (
    DEFAULT_TOL,
    HermitianSpectrum,
    ToleranceProfile,
    hermitian_eigendecomposition,
    psd_inverse_sqrt,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


def _check_labels(labels) -> tuple:
    labels = tuple(str(s) for s in labels)
    if len(set(labels)) != len(labels):
        seen = set()
        dup = next(s for s in labels if s in seen or seen.add(s))
        raise DuplicateLabel(f"label {dup!r} appears more than once")
    return labels


@dataclass(frozen=True, eq=False)
class FrameSystem:
    """A finite indexed family of vectors in ``C^space_dim``.

    ``vectors`` has shape ``(len(labels), space_dim)``; row ``i`` is the
    vector carrying ``labels[i]``.
    """

    space_dim: int
    labels: tuple
    vectors: np.ndarray

    def __post_init__(self):
        labels = _check_labels(self.labels)
        vecs = np.asarray(self.vectors, dtype=np.complex128)
        if int(self.space_dim) < 1:
            raise DimensionMismatch(f"space_dim must be positive, got {self.space_dim}")
        if len(labels) < 1:
            raise DimensionMismatch("a frame needs at least one vector")
        if vecs.ndim != 2 or vecs.shape[0] != len(labels):
            raise DimensionMismatch(
                f"{len(labels)} labels but vectors have shape {vecs.shape}"
            )
        if vecs.shape[1] != self.space_dim:
            raise DimensionMismatch(
                f"vectors have {vecs.shape[1]} components, space_dim is {self.space_dim}"
            )
        object.__setattr__(self, "space_dim", int(self.space_dim))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "vectors", _frozen(vecs))

    @classmethod
    def from_vectors(cls, vectors, labels: Optional[Sequence[str]] = None) -> "FrameSystem":
        vecs = np.atleast_2d(np.asarray(vectors, dtype=np.complex128))
        if labels is None:
            labels = [str(i) for i in range(vecs.shape[0])]
        return cls(vecs.shape[1], tuple(labels), vecs)

    def __len__(self) -> int:
        return len(self.labels)

    def vector(self, label: str) -> np.ndarray:
        return self.vectors[self.labels.index(label)]

    def analysis_matrix(self) -> np.ndarray:
        """Matrix of ``V``: ``(V f)_s = <v(s) | f>``."""
        return self.vectors.conj()


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """A finitely supported element of ``l2(S)`` keyed by frame labels."""

    labels: tuple
    values: np.ndarray

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        vals = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if len(labels) != vals.shape[0]:
            raise DimensionMismatch(f"{len(labels)} labels but {vals.shape[0]} values")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", _frozen(vals))

    def __getitem__(self, label: str) -> complex:
        return complex(self.values[self.labels.index(label)])

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper):
            raise ValueError(f"invalid frame bounds ({self.lower}, {self.upper})")


class Classification(str, enum.Enum):
    ONB = "ONB"
    PARSEVAL = "PARSEVAL"
    TIGHT = "TIGHT"
    FRAME = "FRAME"
    FRAME_ON_SPAN = "FRAME_ON_SPAN"
    # never produced for finite systems; kept for truncated infinite ones
    BESSEL_ONLY = "BESSEL_ONLY"

    @property
    def is_tight(self) -> bool:
        return self in (Classification.ONB, Classification.PARSEVAL, Classification.TIGHT)

    @property
    def spans_space(self) -> bool:
        return self.is_tight or self is Classification.FRAME


@dataclass(frozen=True, eq=False)
class FrameReport:
    """Classification of a frame with the spectra it was decided from.

    ``bounds`` are in the frame-operator convention; ``tight_constant`` is the
    reciprocal ``c = 1 / upper`` and is only set for tight classifications.
    """

    bounds: FrameBounds
    classification: Classification
    tight_constant: Optional[float]
    rank: int
    frame_operator_spectrum: np.ndarray
    gram_spectrum: np.ndarray
    tolerances: ToleranceProfile = field(default=DEFAULT_TOL)
    space_dim: int = 0
    count: int = 0


def _require_dim(frame: FrameSystem, f) -> np.ndarray:
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    if f.shape[0] != frame.space_dim:
        raise DimensionMismatch(f"vector has length {f.shape[0]}, space_dim is {frame.space_dim}")
    return f


def analysis(frame: FrameSystem, f) -> CoefficientSequence:
    """Coefficients ``<v(s) | f>`` for every label ``s``."""
    f = _require_dim(frame, f)
    return CoefficientSequence(frame.labels, frame.analysis_matrix() @ f)


def synthesis(frame: FrameSystem, xi: CoefficientSequence) -> np.ndarray:
    """``sum_s xi_s v(s)``, the adjoint of :func:`analysis`."""
    if tuple(xi.labels) != frame.labels:
        raise LabelMismatch("coefficient labels do not match the frame labels")
    return frame.vectors.T @ xi.values


def frame_operator(frame: FrameSystem) -> np.ndarray:
    V = frame.analysis_matrix()
    S = V.conj().T @ V
    return (S + S.conj().T) / 2


def gram_matrix(frame: FrameSystem) -> np.ndarray:
    """Entry ``(s, t)`` is ``<v(s) | v(t)>``."""
    V = frame.vectors
    G = V.conj() @ V.T
    return (G + G.conj().T) / 2


def gram(frame: FrameSystem):
    """Gram matrix as a labelled :class:`~framekit.kernels.KernelMatrix`."""
    from .kernels import KernelMatrix

    return KernelMatrix(frame.labels, gram_matrix(frame))


def _operator_spectrum(frame: FrameSystem, tol: ToleranceProfile) -> HermitianSpectrum:
    return hermitian_eigendecomposition(frame_operator(frame), tol)


def _bounds_from_spectrum(spec: HermitianSpectrum, tol: ToleranceProfile) -> FrameBounds:
    upper = max(spec.lambda_max, 0.0)
    nonzero = spec.nonzero(tol)
    lower = float(nonzero[0]) if nonzero.size else 0.0
    return FrameBounds(min(lower, upper), upper)


def frame_bounds(frame: FrameSystem, tol: ToleranceProfile = DEFAULT_TOL) -> FrameBounds:
    """Optimal frame bounds on the span of the vectors.

    ``upper`` is the largest eigenvalue of ``V*V`` and ``lower`` the smallest
    one above the rank threshold.
    """
    return _bounds_from_spectrum(_operator_spectrum(frame, tol), tol)


def classify(frame: FrameSystem, tol: ToleranceProfile = DEFAULT_TOL) -> FrameReport:
    spec = _operator_spectrum(frame, tol)
    bounds = _bounds_from_spectrum(spec, tol)
    rank = spec.rank(tol)
    gram_w = hermitian_eigendecomposition(gram_matrix(frame), tol).eigenvalues

    full = rank == frame.space_dim
    tight = full and bounds.upper > 0 and (bounds.upper - bounds.lower) <= tol.eq_tol * bounds.upper
    if tight:
        if abs(bounds.upper - 1.0) <= tol.eq_tol:
            cls = Classification.ONB if len(frame) == frame.space_dim else Classification.PARSEVAL
        else:
            cls = Classification.TIGHT
    elif full and bounds.lower > 0:
        cls = Classification.FRAME
    else:
        cls = Classification.FRAME_ON_SPAN

    return FrameReport(
        bounds=bounds,
        classification=cls,
        tight_constant=1.0 / bounds.upper if tight else None,
        rank=rank,
        frame_operator_spectrum=spec.eigenvalues,
        gram_spectrum=gram_w,
        tolerances=tol,
        space_dim=frame.space_dim,
        count=len(frame),
    )


def reconstruct(frame: FrameSystem, f, c: float) -> tuple[np.ndarray, float]:
    """Return ``g = c V*V f`` and ``||g - f||``."""
    f = _require_dim(frame, f)
    g = c * (frame_operator(frame) @ f)
    return g, float(np.linalg.norm(g - f))


def coefficient_excess(
    frame: FrameSystem, xi: CoefficientSequence, c: float, tol: ToleranceProfile = DEFAULT_TOL
) -> float:
    """``sum |xi_s|^2 - sum |<v(s)|f>|^2`` where ``f = c sum_s xi_s v(s)``.

    Nonnegative for a tight frame with constant ``c``: the analysis
    coefficients are the minimal-norm representation of ``f``.
    """
    report = classify(frame, tol)
    if not report.classification.is_tight:
        raise NotTight(f"frame classifies as {report.classification.value}, not tight")
    if abs(report.tight_constant - c) > tol.eq_tol * max(1.0, c):
        raise NotTight(f"frame constant is {report.tight_constant!r}, not {c!r}")
    f = c * synthesis(frame, xi)
    return xi.norm_squared() - analysis(frame, f).norm_squared()


def canonical_parseval(frame: FrameSystem, tol: ToleranceProfile = DEFAULT_TOL) -> FrameSystem:
    """Canonical Parseval frame ``w(s) = (V*V)^{-1/2} v(s)`` on the span."""
    R = psd_inverse_sqrt(frame_operator(frame), tol)
    return FrameSystem(frame.space_dim, frame.labels, frame.vectors @ R.T)


def tensor(a: FrameSystem, b: FrameSystem) -> FrameSystem:
    """Kronecker products ``v_a(s1) (x) v_b(s2)``, first factor varying slowest."""
    labels = tuple(f"({s1},{s2})" for s1 in a.labels for s2 in b.labels)
    vecs = a.vectors[:, None, :, None] * b.vectors[None, :, None, :]
    n = len(a) * len(b)
    return FrameSystem(a.space_dim * b.space_dim, labels, vecs.reshape(n, -1))
