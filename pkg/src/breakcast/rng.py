"""Counter-based random streams (Philox4x32-10), vectorized over trials.

Every draw is a pure function of ``(seed, trial, purpose, slot)``, so a
trial's randomness never depends on which other trials were generated,
in what order, or by which worker.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

PHILOX_M0 = np.uint64(0xD2511F53)
PHILOX_M1 = np.uint64(0xCD9E8D57)
PHILOX_W0 = 0x9E3779B9
PHILOX_W1 = 0xBB67AE85
MASK32 = np.uint64(0xFFFFFFFF)
ROUNDS = 10

# counter word 2 tags what a block of draws is used for
PURPOSE_MODEL = 0
PURPOSE_INNOVATION = 1


def philox4x32(counter: np.ndarray, key: tuple[int, int], rounds: int = ROUNDS) -> np.ndarray:
    """Philox4x32 block function.

    Parameters
    ----------
    counter : ndarray of shape (..., 4)
        32-bit counter words (any integer dtype; values must fit in 32 bits).
    key : tuple of two ints
        32-bit key words.

    Returns
    -------
    ndarray of uint64, shape (..., 4), each entry < 2**32.
    """
    c = np.asarray(counter, dtype=np.uint64)
    c0, c1, c2, c3 = (c[..., i] for i in range(4))
    k0, k1 = int(key[0]), int(key[1])
    shift = np.uint64(32)
    for i in range(rounds):
        if i:
            k0 = (k0 + PHILOX_W0) & 0xFFFFFFFF
            k1 = (k1 + PHILOX_W1) & 0xFFFFFFFF
        p0 = PHILOX_M0 * c0
        p1 = PHILOX_M1 * c2
        hi0, lo0 = p0 >> shift, p0 & MASK32
        hi1, lo1 = p1 >> shift, p1 & MASK32
        c0, c1, c2, c3 = hi1 ^ c1 ^ np.uint64(k0), lo1, hi0 ^ c3 ^ np.uint64(k1), lo0
    return np.stack([c0, c1, c2, c3], axis=-1)


def split_seed(seed: int) -> tuple[int, int]:
    """64-bit master seed as two 32-bit key words."""
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed & 0xFFFFFFFF, seed >> 32


def uniforms(seed: int, trials: np.ndarray, purpose: int, n_slots: int) -> np.ndarray:
    """Open-interval uniforms, shape ``(len(trials), n_slots)``.

    Each Philox block yields two 53-bit doubles; slot ``j`` lives in block
    ``j // 2``.  Values are ``(k + 0.5) / 2**53`` so 0 and 1 never occur.
    """
    trials = np.asarray(trials, dtype=np.uint64)
    n_blocks = (n_slots + 1) // 2
    counter = np.empty((trials.size, n_blocks, 4), dtype=np.uint64)
    counter[..., 0] = (trials & MASK32)[:, None]
    counter[..., 1] = (trials >> np.uint64(32))[:, None]
    counter[..., 2] = purpose
    counter[..., 3] = np.arange(n_blocks, dtype=np.uint64)[None, :]
    words = philox4x32(counter, split_seed(seed))
    hi = words[..., 0::2] >> np.uint64(5)
    lo = words[..., 1::2] >> np.uint64(6)
    k = (hi << np.uint64(26)) | lo
    u = (k.astype(np.float64) + 0.5) * 2.0**-53
    return u.reshape(trials.size, 2 * n_blocks)[:, :n_slots]


def normals(seed: int, trials: np.ndarray, purpose: int, n_slots: int) -> np.ndarray:
    """Standard normals by inverse-CDF transform of :func:`uniforms`."""
    return ndtri(uniforms(seed, trials, purpose, n_slots))
