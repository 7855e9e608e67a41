"""Counter-based, splittable 64-bit random number generator.

Every draw is a pure function of (master_seed, stream_id, counter), so
parallel Monte Carlo trials can each open their own stream (stream_id =
trial index) and reproduce byte-identical results on any platform and
with any worker count.  The mixing function is the SplitMix64 finalizer;
test vectors are frozen in tests/test_rng.py.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_PHI = 0x9E3779B97F4A7C15
_STREAM_SALT = 0x1F123BB5159A55E5


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit mixer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class RngStream:
    """One stream of a keyed counter-based generator.

    The stream key is derived from (master_seed, stream_id); output i is
    mix64(key + (i+1)*PHI).  Streams with distinct ids are statistically
    independent for practical purposes.
    """

    __slots__ = ("master_seed", "stream_id", "key", "counter")

    def __init__(self, master_seed: int, stream_id: int = 0):
        self.master_seed = master_seed & _MASK
        self.stream_id = stream_id & _MASK
        self.key = mix64(self.master_seed) ^ mix64((self.stream_id + _STREAM_SALT) & _MASK)
        self.counter = 0

    def child(self, stream_id: int) -> "RngStream":
        """Derive a new stream keyed off this stream's identity."""
        return RngStream(self.key, stream_id)

    def next_u64(self) -> int:
        self.counter += 1
        return mix64((self.key + self.counter * _PHI) & _MASK)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        threshold = ((_MASK + 1) // n) * n
        while True:
            v = self.next_u64()
            if v < threshold:
                return v % n

    def randint(self, a: int, b: int) -> int:
        """Uniform integer in [a, b] inclusive."""
        return a + self.randrange(b - a + 1)

    def bernoulli(self, p: float) -> bool:
        return self.random() < p

    def permutation(self, n: int) -> list[int]:
        """Fisher-Yates permutation of range(n)."""
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.randrange(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm

    def sample_without_replacement(self, n: int, k: int) -> list[int]:
        """k distinct values from range(n), order discarded (sorted)."""
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
        # partial Fisher-Yates on a sparse representation
        picked = {}
        out = []
        for i in range(k):
            j = i + self.randrange(n - i)
            out.append(picked.get(j, j))
            picked[j] = picked.get(i, i)
        out.sort()
        return out


def round_half_up(x: float) -> int:
    """Nearest integer, ties rounded up (schedule sizes like N*rho)."""
    import math

    return math.floor(x + 0.5)
