"""Unitary symmetries and equivalences of frames, detected on Gram matrices.

A bijection ``pi`` with unimodular phases ``lam`` realizes an equivalence of
kernel ``k1`` onto ``k2`` when

    conj(lam[s]) * lam[t] * k2[pi(s), pi(t)] == k1[s, t]   for all s, t.

Without phases this reduces to ``k2[pi(s), pi(t)] == k1[s, t]``. Permutations
are tuples of indices, ``perm[i] = pi(i)``, and are enumerated in
lexicographic order so the first witness is reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _accel
from .errors import InvalidWitness, TooLarge
from .kernels import _entries
from .numerics import DEFAULT_TOL, ToleranceProfile

DEFAULT_MAX_SIZE = 8


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """Permutation ``pi`` (as indices) and optional phases ``lam`` indexed by source label."""

    permutation: tuple
    phases: Optional[np.ndarray] = None

    def __post_init__(self):
        perm = tuple(int(i) for i in self.permutation)
        if sorted(perm) != list(range(len(perm))):
            raise InvalidWitness(f"{perm} is not a permutation")
        object.__setattr__(self, "permutation", perm)
        if self.phases is not None:
            lam = np.asarray(self.phases, dtype=np.complex128).reshape(-1)
            if lam.shape[0] != len(perm):
                raise InvalidWitness("phases and permutation have different lengths")
            if np.any(np.abs(np.abs(lam) - 1.0) > 1e-9):
                raise InvalidWitness("phases must have modulus one")
            lam = lam.copy()
            lam.setflags(write=False)
            object.__setattr__(self, "phases", lam)

    def __len__(self) -> int:
        return len(self.permutation)

    def phase_vector(self) -> np.ndarray:
        if self.phases is None:
            return np.ones(len(self.permutation), dtype=np.complex128)
        return np.asarray(self.phases)

    def is_identity(self) -> bool:
        return self.permutation == tuple(range(len(self.permutation))) and bool(
            np.allclose(self.phase_vector(), 1.0)
        )

    def label_mapping(self, source_labels, target_labels) -> dict:
        return {source_labels[i]: target_labels[j] for i, j in enumerate(self.permutation)}


def witness_residual(K1, K2, witness: EquivalenceWitness) -> float:
    """``max |conj(lam_s) lam_t k2[pi s, pi t] - k1[s, t]|``."""
    A, B = _entries(K1), _entries(K2)
    if A.shape != B.shape or A.shape[0] != len(witness):
        raise InvalidWitness("witness size does not match the kernels")
    p = np.asarray(witness.permutation)
    lam = witness.phase_vector()
    transported = np.conj(lam)[:, None] * lam[None, :] * B[np.ix_(p, p)]
    return float(np.max(np.abs(transported - A))) if A.size else 0.0


def _scaled_tol(A: np.ndarray, B: np.ndarray, tol: ToleranceProfile) -> float:
    scale = max(float(np.max(np.abs(A))), float(np.max(np.abs(B))), 1.0)
    return tol.eq_tol * scale


def _candidate_mask(A: np.ndarray, B: np.ndarray, atol: float) -> np.ndarray:
    # necessary conditions for pi(s) = t: equal diagonal entry and equal
    # multiset of row moduli
    rows_a = np.sort(np.abs(A), axis=1)
    rows_b = np.sort(np.abs(B), axis=1)
    diag_ok = np.abs(np.diag(A)[:, None] - np.diag(B)[None, :]) <= atol
    rows_ok = (np.abs(rows_a[:, None, :] - rows_b[None, :, :]) <= atol).all(axis=2)
    return diag_ok & rows_ok


def _check_size(n: int, max_size: int) -> None:
    if n > max_size:
        raise TooLarge(f"{n} labels exceeds exhaustive-search limit {max_size}")


def permutation_symmetries(
    K, max_size: int = DEFAULT_MAX_SIZE, tol: ToleranceProfile = DEFAULT_TOL
) -> list[tuple]:
    """All permutations ``pi`` with ``k(pi s, pi t) = k(s, t)``, lexicographic order."""
    A = _entries(K)
    n = A.shape[0]
    _check_size(n, max_size)
    atol = _scaled_tol(A, A, tol)
    allowed = _candidate_mask(A, A, atol)
    perms = _accel.match_permutations(A, A, allowed, atol, False)
    return [tuple(int(i) for i in row) for row in perms]


def _solve_phases(A: np.ndarray, Bp: np.ndarray, atol: float) -> np.ndarray:
    """Spanning-tree propagation of ``lam`` on the graph of nonzero ``|k1|``.

    ``Bp`` is ``k2`` already permuted, ``Bp[s, t] = k2[pi s, pi t]``. Each
    connected component's root gets phase 1.
    """
    n = A.shape[0]
    lam = np.ones(n, dtype=np.complex128)
    seen = np.zeros(n, dtype=bool)
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for t in range(n):
                if seen[t] or t == s or abs(A[s, t]) <= atol:
                    continue
                # conj(lam_s) lam_t Bp[s,t] = A[s,t]  =>  lam_t = lam_s A[s,t] / Bp[s,t]
                z = lam[s] * A[s, t] / Bp[s, t]
                lam[t] = z / abs(z)
                seen[t] = True
                queue.append(t)
    return lam


def phase_equivalence(
    K1,
    K2,
    allow_phases: bool = True,
    max_size: int = DEFAULT_MAX_SIZE,
    tol: ToleranceProfile = DEFAULT_TOL,
) -> Optional[EquivalenceWitness]:
    """First witness (lexicographic in ``pi``) carrying ``K1`` onto ``K2``, or ``None``.

    Kernels of different sizes are never equivalent and give ``None``.
    """
    A, B = _entries(K1), _entries(K2)
    _check_size(A.shape[0], max_size)
    _check_size(B.shape[0], max_size)
    if A.shape != B.shape:
        return None
    atol = _scaled_tol(A, B, tol)

    if not allow_phases:
        allowed = _candidate_mask(A, B, atol)
        perms = _accel.match_permutations(A, B, allowed, atol, True)
        return EquivalenceWitness(tuple(int(i) for i in perms[0])) if len(perms) else None

    absA, absB = np.abs(A), np.abs(B)
    allowed = _candidate_mask(A, B, atol)
    candidates = _accel.match_permutations(absA, absB, allowed, atol, False)
    for row in candidates:
        Bp = B[np.ix_(row, row)]
        lam = _solve_phases(A, Bp, atol)
        transported = np.conj(lam)[:, None] * lam[None, :] * Bp
        if np.max(np.abs(transported - A)) <= atol:
            return EquivalenceWitness(tuple(int(i) for i in row), lam)
    return None


def rotation_equivalence_demo(
    n: int, theta: float, max_size: int = DEFAULT_MAX_SIZE, tol: ToleranceProfile = DEFAULT_TOL
) -> Optional[EquivalenceWitness]:
    """Compare ``harmonic_frame(n)`` with its ``theta``-rotated copy through their Grams."""
    from .frames import gram_matrix
    from .generators import harmonic_frame

    K1 = gram_matrix(harmonic_frame(n))
    K2 = gram_matrix(harmonic_frame(n, theta))
    return phase_equivalence(K1, K2, allow_phases=False, max_size=max_size, tol=tol)


__all__ = [
    "EquivalenceWitness",
    "permutation_symmetries",
    "phase_equivalence",
    "rotation_equivalence_demo",
    "witness_residual",
]
