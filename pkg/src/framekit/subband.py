"""Two-band quadrature operator towers and subdivided frames.

A tower stores, for each level ``l = 1..L``, a pair ``(F0, F1)`` of
``2^(l-1) x 2^l`` matrices mapping the level-``l`` space down one level. In
this graded form the quadrature relations

    F_i F_j* = delta_ij I,      F0* F0 + F1* F1 = I

hold exactly between spaces of doubling dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DepthExceeded, InvalidWitness, ShapeMismatch
from .frames import FrameSystem, gram_matrix
from .numerics import DEFAULT_TOL, ToleranceProfile
from .symmetry import EquivalenceWitness, witness_residual


@dataclass(frozen=True, eq=False)
class OperatorTower:
    levels: tuple

    def __post_init__(self):
        pairs = []
        for l, pair in enumerate(self.levels, start=1):
            if len(pair) != 2:
                raise ShapeMismatch(f"level {l} must hold exactly two operators")
            F0, F1 = (np.array(F, dtype=np.complex128) for F in pair)
            want = (2 ** (l - 1), 2**l)
            if F0.shape != want or F1.shape != want:
                raise ShapeMismatch(f"level {l} operators must be {want}, got {F0.shape}, {F1.shape}")
            F0.setflags(write=False)
            F1.setflags(write=False)
            pairs.append((F0, F1))
        if not pairs:
            raise ShapeMismatch("a tower needs at least one level")
        object.__setattr__(self, "levels", tuple(pairs))

    @property
    def top(self) -> int:
        return len(self.levels)

    def pair(self, level: int) -> tuple:
        if not 1 <= level <= self.top:
            raise DepthExceeded(f"level {level} outside 1..{self.top}")
        return self.levels[level - 1]

    def scaled(self, factor: float) -> "OperatorTower":
        return OperatorTower(tuple((factor * F0, factor * F1) for F0, F1 in self.levels))


@dataclass(frozen=True)
class LevelResiduals:
    level: int
    orthogonality: float  # max over i, j of |F_i F_j* - delta_ij I|
    completeness: float  # |F0* F0 + F1* F1 - I|


@dataclass(frozen=True)
class QuadratureCheck:
    ok: bool
    residuals: tuple

    def __bool__(self) -> bool:
        return self.ok


def verify_quadrature(tower: OperatorTower, tol: ToleranceProfile = DEFAULT_TOL) -> QuadratureCheck:
    out = []
    for l, (F0, F1) in enumerate(tower.levels, start=1):
        n = F0.shape[0]
        ops = (F0, F1)
        orth = 0.0
        for i in range(2):
            for j in range(2):
                target = np.eye(n) if i == j else np.zeros((n, n))
                orth = max(orth, float(np.max(np.abs(ops[i] @ ops[j].conj().T - target))))
        comp = float(np.max(np.abs(F0.conj().T @ F0 + F1.conj().T @ F1 - np.eye(2 * n))))
        out.append(LevelResiduals(l, orth, comp))
    ok = all(r.orthogonality <= tol.eq_tol and r.completeness <= tol.eq_tol for r in out)
    return QuadratureCheck(ok, tuple(out))


def _lowpass_power(tower: OperatorTower, top_level: int, k: int) -> np.ndarray:
    """Matrix of ``F0^k`` from level ``top_level`` down to ``top_level - k``."""
    M = np.eye(2**top_level, dtype=np.complex128)
    for l in range(top_level, top_level - k, -1):
        M = tower.pair(l)[0] @ M
    return M


def nested_projections(tower: OperatorTower, top_level: int, K: int) -> list:
    """``P_k = F0*^k F0^k`` on the level-``top_level`` space for ``k = 0..K``."""
    if top_level > tower.top or top_level < 0:
        raise DepthExceeded(f"top_level {top_level} outside 0..{tower.top}")
    if K > top_level or K < 0:
        raise DepthExceeded(f"depth {K} exceeds top_level {top_level}")
    out = []
    for k in range(K + 1):
        D = _lowpass_power(tower, top_level, k)
        out.append(D.conj().T @ D)
    return out


@dataclass(frozen=True, eq=False)
class SubdividedFrame:
    """Refined family ``v(k, s)``, labels ``"(k,s)"`` with ``k`` outermost.

    ``vectors`` is ``None`` when ``depth == 0`` (the family is empty).
    """

    base: FrameSystem
    depth: int
    vectors: Optional[FrameSystem]
    base_level: int

    def gram(self) -> np.ndarray:
        if self.vectors is None:
            return np.zeros((0, 0), dtype=np.complex128)
        return gram_matrix(self.vectors)


def _level_of(dim: int) -> int:
    level = int(dim).bit_length() - 1
    if 2**level != dim:
        raise ShapeMismatch(f"space dimension {dim} is not a power of two")
    return level


def _lift(tower: OperatorTower, x: np.ndarray, level: int, op: int) -> np.ndarray:
    # apply F_op* of level+1, moving x from level to level+1
    return tower.pair(level + 1)[op].conj().T @ x


def subdivide(base: FrameSystem, tower: OperatorTower, K: int) -> SubdividedFrame:
    """Build ``v(k, s) = F0*^k F1* v(s)`` for ``k = 0..K-1`` in the level ``l0 + K`` space.

    ``v(s)`` sits at level ``l0`` (``space_dim = 2^l0``). All ``K`` vectors for a
    label must land in the same space, so before the high-pass step ``v(s)`` is
    carried up ``K - 1 - k`` levels by ``F0*``; being an isometry this leaves
    inner products unchanged. Every application of ``F0*`` or ``F1*`` moves one
    level up.
    """
    l0 = _level_of(base.space_dim)
    if K < 0:
        raise DepthExceeded(f"depth must be nonnegative, got {K}")
    if l0 + K > tower.top:
        raise DepthExceeded(f"base level {l0} + depth {K} exceeds tower top {tower.top}")
    if K == 0:
        return SubdividedFrame(base, 0, None, l0)

    labels = []
    rows = []
    for k in range(K):
        for s, v in zip(base.labels, base.vectors):
            x = np.asarray(v)
            level = l0
            for _ in range(K - 1 - k):
                x = _lift(tower, x, level, 0)
                level += 1
            x = _lift(tower, x, level, 1)
            level += 1
            for _ in range(k):
                x = _lift(tower, x, level, 0)
                level += 1
            labels.append(f"({k},{s})")
            rows.append(x)
    vecs = FrameSystem(2 ** (l0 + K), tuple(labels), np.array(rows))
    return SubdividedFrame(base, K, vecs, l0)


def lift_witness(witness: EquivalenceWitness, K: int) -> EquivalenceWitness:
    """Act by the witness on ``s`` and trivially on ``k`` in ``"(k,s)"`` ordering."""
    n = len(witness)
    perm = [k * n + witness.permutation[i] for k in range(K) for i in range(n)]
    phases = None if witness.phases is None else np.tile(witness.phase_vector(), K)
    return EquivalenceWitness(tuple(perm), phases)


def equivalence_transport_check(
    base1: FrameSystem,
    base2: FrameSystem,
    tower: OperatorTower,
    K: int,
    witness: EquivalenceWitness,
    tol: ToleranceProfile = DEFAULT_TOL,
) -> bool:
    """Whether the lifted witness carries the Gram of one refined frame onto the other.

    A witness of the wrong size raises :class:`InvalidWitness`; a well-formed
    witness that does not realize an equivalence simply yields ``False``.
    """
    if len(witness) != len(base1) or len(base1) != len(base2):
        raise InvalidWitness("witness size does not match the base frames")
    sub1 = subdivide(base1, tower, K)
    sub2 = subdivide(base2, tower, K)
    if K == 0:
        return True  # both refined families are empty
    G1, G2 = sub1.gram(), sub2.gram()
    scale = max(1.0, float(np.max(np.abs(G1))))
    return witness_residual(G1, G2, lift_witness(witness, K)) <= tol.eq_tol * scale
