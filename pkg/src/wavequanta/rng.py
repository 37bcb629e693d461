"""Counter-based uniform deviates (Philox4x32-10).

Every deviate is a pure function of ``(seed, index, draw, stream)``, so
results never depend on evaluation order or on how the work is split across
threads.
"""

from __future__ import annotations

import numpy as np

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = np.uint64(0x9E3779B9)
_W1 = np.uint64(0xBB67AE85)
_MASK32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)
_ROUNDS = 10

# stream identifiers, kept distinct so no two consumers share a counter
STREAM_POSITION = 0
STREAM_EXCITATION = 1
STREAM_STEP = 2
STREAM_MISC = 3


def philox4x32(counter, key) -> np.ndarray:
    """Apply Philox4x32-10 to a batch of counters.

    ``counter`` has shape (..., 4) and ``key`` shape (2,) (or broadcastable
    to (..., 2)), all values 32-bit. Returns uint32 words of shape (..., 4).
    """
    ctr = np.asarray(counter, dtype=np.uint64) & _MASK32
    k = np.asarray(key, dtype=np.uint64) & _MASK32
    c0, c1, c2, c3 = (ctr[..., i] for i in range(4))
    k0, k1 = k[..., 0], k[..., 1]
    for rnd in range(_ROUNDS):
        if rnd:
            k0 = (k0 + _W0) & _MASK32
            k1 = (k1 + _W1) & _MASK32
        p0 = _M0 * c0
        p1 = _M1 * c2
        hi0, lo0 = p0 >> _SHIFT32, p0 & _MASK32
        hi1, lo1 = p1 >> _SHIFT32, p1 & _MASK32
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
    return np.stack([c0, c1, c2, c3], axis=-1).astype(np.uint32)


def _seed_key(seed: int) -> np.ndarray:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.array([seed & 0xFFFFFFFF, seed >> 32], dtype=np.uint64)


def _words_to_unit(hi: np.ndarray, lo: np.ndarray) -> np.ndarray:
    # 53 random bits, offset by half an ulp so the result lies strictly in (0, 1)
    a = hi.astype(np.uint64) >> np.uint64(5)
    b = lo.astype(np.uint64) >> np.uint64(6)
    k = a * np.uint64(67108864) + b
    return (k.astype(np.float64) + 0.5) / 9007199254740992.0


def uniform_pair(seed: int, index, draw: int | np.ndarray = 0, stream: int = STREAM_MISC):
    """Two independent uniforms in (0, 1) per ``index``.

    ``index`` may be any integer array (< 2**64); ``draw`` broadcasts against it.
    """
    index = np.asarray(index, dtype=np.uint64)
    draw = np.broadcast_to(np.asarray(draw, dtype=np.uint64), index.shape)
    ctr = np.stack(
        [
            index & _MASK32,
            index >> _SHIFT32,
            draw & _MASK32,
            np.full(index.shape, stream, dtype=np.uint64),
        ],
        axis=-1,
    )
    words = philox4x32(ctr, _seed_key(seed))
    u0 = _words_to_unit(words[..., 0], words[..., 1])
    u1 = _words_to_unit(words[..., 2], words[..., 3])
    return u0, u1


def uniform(seed: int, index, draw: int | np.ndarray = 0, stream: int = STREAM_MISC) -> np.ndarray:
    return uniform_pair(seed, index, draw, stream)[0]
