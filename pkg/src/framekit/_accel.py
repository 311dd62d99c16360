"""Hot inner loops, compiled with numba when available.

Each kernel has a numba implementation (``*_numba``) and a pure-numpy
implementation (``*_numpy``) with identical results. The public names
(``match_permutations``, ``sinc_coordinates``, ``splitmix64_uniform``) are
bound at import time: numba is used unless it is missing or the environment
variable ``FRAMEKIT_DISABLE_NUMBA`` is set to a non-empty value other than
``0``.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional
    numba = None
    HAVE_NUMBA = False

_flag = os.environ.get("FRAMEKIT_DISABLE_NUMBA", "")
USE_NUMBA = HAVE_NUMBA and _flag in ("", "0")

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _njit(fn):
    if not HAVE_NUMBA:
        return None
    return numba.njit(cache=True)(fn)


# ---------------------------------------------------------------------------
# permutation matching: all pi with |B[pi(s), pi(t)] - A[s, t]| <= tol


def _match_permutations_py(A, B, allowed, tol, first_only):
    n = A.shape[0]
    cap = 16
    out = np.empty((cap, n), dtype=np.int64)
    found = 0
    cand = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    level = 0
    while level >= 0:
        prev = cand[level]
        if prev >= 0:
            used[prev] = False
        c = prev + 1
        while c < n:
            if not used[c] and allowed[level, c]:
                ok = abs(B[c, c] - A[level, level]) <= tol
                j = 0
                while ok and j < level:
                    pj = cand[j]
                    if abs(B[pj, c] - A[j, level]) > tol or abs(B[c, pj] - A[level, j]) > tol:
                        ok = False
                    j += 1
                if ok:
                    break
            c += 1
        if c == n:
            cand[level] = -1
            level -= 1
            continue
        cand[level] = c
        used[c] = True
        if level == n - 1:
            if found == cap:
                grown = np.empty((2 * cap, n), dtype=np.int64)
                grown[:cap] = out
                out = grown
                cap *= 2
            out[found] = cand
            found += 1
            if first_only:
                break
        else:
            level += 1
            cand[level] = -1
    return out[:found].copy()


_match_permutations_jit = _njit(_match_permutations_py)


def match_permutations_numba(A, B, allowed, tol, first_only=False):
    if _match_permutations_jit is None:
        raise RuntimeError("numba is not installed")
    return _match_permutations_jit(
        np.ascontiguousarray(A, dtype=np.complex128),
        np.ascontiguousarray(B, dtype=np.complex128),
        np.ascontiguousarray(allowed, dtype=np.bool_),
        float(tol),
        bool(first_only),
    )


def match_permutations_numpy(A, B, allowed, tol, first_only=False, chunk=8192):
    """Vectorized brute force over ``itertools.permutations`` in lexicographic order."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    allowed = np.asarray(allowed, dtype=bool)
    n = A.shape[0]
    rows = np.arange(n)
    hits = []
    perms = itertools.permutations(range(n))
    while True:
        block = np.array(list(itertools.islice(perms, chunk)), dtype=np.int64).reshape(-1, n)
        if block.shape[0] == 0:
            break
        block = block[allowed[rows, block].all(axis=1)]
        if block.shape[0]:
            permuted = B[block[:, :, None], block[:, None, :]]
            good = (np.abs(permuted - A) <= tol).all(axis=(1, 2))
            block = block[good]
            if block.shape[0]:
                if first_only:
                    return block[:1].copy()
                hits.append(block)
    if not hits:
        return np.empty((0, n), dtype=np.int64)
    return np.concatenate(hits)


# ---------------------------------------------------------------------------
# sinc coordinates: out[i, j] = sinc(n_j - m_i / p), n_j = -window + j


def _sinc_coordinates_py(ms, p, window):
    out = np.empty((ms.shape[0], 2 * window + 1), dtype=np.float64)
    for i in range(ms.shape[0]):
        m = ms[i]
        for j in range(2 * window + 1):
            q = (j - window) * p - m
            if q == 0:
                out[i, j] = 1.0
            elif q % p == 0:
                out[i, j] = 0.0
            else:
                # sin(pi q / p) has period 2p in q; reduce before evaluating
                r = q % (2 * p)
                out[i, j] = np.sin(np.pi * r / p) / (np.pi * q / p)
    return out


_sinc_coordinates_jit = _njit(_sinc_coordinates_py)


def sinc_coordinates_numba(ms, p, window):
    if _sinc_coordinates_jit is None:
        raise RuntimeError("numba is not installed")
    return _sinc_coordinates_jit(np.ascontiguousarray(ms, dtype=np.int64), int(p), int(window))


def sinc_coordinates_numpy(ms, p, window):
    ms = np.asarray(ms, dtype=np.int64)
    n = np.arange(-window, window + 1, dtype=np.int64)
    q = n[None, :] * p - ms[:, None]
    r = np.mod(q, 2 * p)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin(np.pi * r / p) / (np.pi * q / p)
    out[q % p == 0] = 0.0
    out[q == 0] = 1.0
    return out


# ---------------------------------------------------------------------------
# SplitMix64 counter stream mapped to uniform doubles on [-1, 1)


def _splitmix64_uniform_py(seed, count):
    out = np.empty(count, dtype=np.float64)
    golden = np.uint64(0x9E3779B97F4A7C15)
    m1 = np.uint64(0xBF58476D1CE4E5B9)
    m2 = np.uint64(0x94D049BB133111EB)
    for k in range(count):
        z = seed + np.uint64(k + 1) * golden
        z = (z ^ (z >> np.uint64(30))) * m1
        z = (z ^ (z >> np.uint64(27))) * m2
        z = z ^ (z >> np.uint64(31))
        out[k] = 2.0 * (float(z >> np.uint64(11)) * 2.0**-53) - 1.0
    return out


_splitmix64_uniform_jit = _njit(_splitmix64_uniform_py)


def _seed_u64(seed: int) -> np.uint64:
    return np.uint64(int(seed) % (1 << 64))


def splitmix64_uniform_numba(seed, count):
    if _splitmix64_uniform_jit is None:
        raise RuntimeError("numba is not installed")
    return _splitmix64_uniform_jit(_seed_u64(seed), int(count))


def splitmix64_uniform_numpy(seed, count):
    k = np.arange(1, count + 1, dtype=np.uint64)
    z = _seed_u64(seed) + k * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return 2.0 * ((z >> np.uint64(11)).astype(np.float64) * 2.0**-53) - 1.0


if USE_NUMBA:
    match_permutations = match_permutations_numba
    sinc_coordinates = sinc_coordinates_numba
    splitmix64_uniform = splitmix64_uniform_numba
else:
    match_permutations = match_permutations_numpy
    sinc_coordinates = sinc_coordinates_numpy
    splitmix64_uniform = splitmix64_uniform_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
