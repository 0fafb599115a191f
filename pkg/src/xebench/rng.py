"""Counter-based pseudo-random primitives.

Every random draw in this package comes from one generator: the splitmix64
output function applied to a 64-bit counter. Value k (k >= 0) of the stream
owned by ``seed`` is ``mix64((seed + (k + 1) * GOLDEN_GAMMA) mod 2**64)``.
Streams are stateless, so any element can be computed independently of the
others; that is what makes batch sampling order-independent and safe to
split across workers.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """Scalar splitmix64 finalizer (Stafford variant 13)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & MASK64
    return (z ^ (z >> 31)) & MASK64


def substream(seed: int, k: int) -> int:
    """Seed of the k-th child stream of ``seed`` (also stream value k)."""
    if k < 0:
        raise ValueError(f"stream index must be >= 0, got {k}")
    return mix64((seed + (k + 1) * GOLDEN_GAMMA) & MASK64)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`mix64` over a uint64 array, bit-identical to the scalar form."""
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX_A)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX_B)
    z ^= z >> np.uint64(31)
    return z


def stream_values(seed: int, start: int, count: int) -> np.ndarray:
    """Values ``start .. start + count - 1`` of the stream for ``seed``, as uint64."""
    if start < 0 or count < 0:
        raise ValueError("start and count must be >= 0")
    ks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    return mix64_array(np.uint64(seed & MASK64) + ks * np.uint64(GOLDEN_GAMMA))


def unit_open(bits: np.ndarray) -> np.ndarray:
    """Map uint64 words to doubles in the open interval (0, 1).

    Uses 52 bits so that k + 0.5 is always exactly representable; the result
    lies in [2**-53, 1 - 2**-53].
    """
    return ((bits >> np.uint64(12)).astype(np.float64) + 0.5) * 2.0**-52


def unit_halfopen(bits: np.ndarray) -> np.ndarray:
    """Map uint64 words to doubles in [0, 1)."""
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53
