"""Constructors for example frames and test systems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import BadParameter
from .frames import FrameSystem


def harmonic_frame(n: int, theta: float = 0.0) -> FrameSystem:
    """Roots-of-unity frame ``v(s) = (cos(2 pi s/n + theta), sin(2 pi s/n + theta))``.

    Labels are ``"1" .. "n"``. Tight with constant ``c = 2/n`` for every
    ``n >= 3`` and every rotation ``theta``.
    """
    if int(n) != n or n < 3:
        raise BadParameter(f"harmonic frame needs n >= 3, got {n}")
    n = int(n)
    s = np.arange(1, n + 1)
    angle = 2 * np.pi * s / n + theta
    vecs = np.stack([np.cos(angle), np.sin(angle)], axis=1)
    return FrameSystem(2, tuple(str(k) for k in s), vecs)


@dataclass(frozen=True)
class SincFrameSpec:
    """Truncated Shannon frame on the lattice ``(1/p) Z``.

    Coordinates live on the integer-translate basis indices ``-window..window``;
    samples are the points ``m/p`` with ``|m/p| <= extent``.
    """

    p: int
    window: int
    extent: int

    def __post_init__(self):
        for name in ("p", "window", "extent"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise BadParameter(f"{name} must be a positive integer, got {value!r}")
        if self.extent > self.window:
            raise BadParameter(f"extent {self.extent} exceeds window {self.window}")

    @property
    def sample_numerators(self) -> np.ndarray:
        return np.arange(-self.extent * self.p, self.extent * self.p + 1, dtype=np.int64)

    def coordinate_index(self) -> np.ndarray:
        return np.arange(-self.window, self.window + 1)


def sinc_frame(spec: SincFrameSpec) -> FrameSystem:
    """Sampling vectors ``v(m/p)`` in coordinates of the integer-translate ONB.

    Component ``n`` of ``v(s)`` is ``sin(pi (n - s)) / (pi (n - s))`` (1 at 0).
    Labels are the unreduced rationals ``"m/p"``.
    """
    ms = spec.sample_numerators
    coords = _accel.sinc_coordinates(ms, spec.p, spec.window)
    labels = tuple(f"{m}/{spec.p}" for m in ms)
    return FrameSystem(2 * spec.window + 1, labels, coords)


def random_bessel(dim: int, count: int, seed: int) -> FrameSystem:
    """Reproducible random complex vectors.

    Entries come from the SplitMix64 stream for ``seed``: draw ``k`` (counting
    from 0) is mixed from ``seed + (k + 1) * 0x9E3779B97F4A7C15 mod 2**64``,
    its top 53 bits give ``u`` in ``[0, 1)``, and the value is ``2u - 1``.
    Draws fill vector by vector, component by component, real part first.
    """
    if dim < 1 or count < 1:
        raise BadParameter(f"need dim >= 1 and count >= 1, got dim={dim}, count={count}")
    u = _accel.splitmix64_uniform(seed, 2 * dim * count).reshape(count, dim, 2)
    vecs = u[..., 0] + 1j * u[..., 1]
    return FrameSystem(dim, tuple(str(i) for i in range(count)), vecs)


def haar_tower(levels: int):
    """Haar quadrature pair at each level ``l = 1..levels``.

    ``F0 f(j) = (f(2j) + f(2j+1)) / sqrt 2`` and
    ``F1 f(j) = (f(2j) - f(2j+1)) / sqrt 2``, both ``2^(l-1) x 2^l``.
    """
    from .subband import OperatorTower

    if int(levels) != levels or levels < 1:
        raise BadParameter(f"levels must be a positive integer, got {levels!r}")
    pairs = []
    r = 1 / np.sqrt(2)
    for l in range(1, int(levels) + 1):
        half = 2 ** (l - 1)
        F0 = np.zeros((half, 2 * half))
        F1 = np.zeros((half, 2 * half))
        j = np.arange(half)
        F0[j, 2 * j] = r
        F0[j, 2 * j + 1] = r
        F1[j, 2 * j] = r
        F1[j, 2 * j + 1] = -r
        pairs.append((F0, F1))
    return OperatorTower(tuple(pairs))
