"""Reproducible random streams: splitmix64 seeding a xoshiro256** state.

Both generators follow their published reference algorithms, so any
language reproduces the same 64-bit output sequence for a given seed.
Stream objects are stateful and must not be shared across threads.
"""

from collections.abc import MutableSequence, Sequence
from typing import TypeVar

from src.core.exceptions import UnknownStreamError

MASK64 = 0xFFFFFFFFFFFFFFFF
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3

# Purposes a generator stream may be derived for
STREAM_TAGS = frozenset({"depot", "positions", "clusters", "demands", "route_size"})

T = TypeVar("T")


def rotl(value: int, shift: int) -> int:
    """Rotate a 64-bit word left."""
    return ((value << shift) | (value >> (64 - shift))) & MASK64


class SplitMix64:
    """splitmix64 generator, used only to expand a seed into xoshiro state."""

    def __init__(self, seed: int) -> None:
        self._state = seed & MASK64

    def next(self) -> int:
        """Return the next 64-bit output."""
        self._state = (self._state + SPLITMIX_GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    value = FNV_OFFSET
    for byte in data:
        value ^= byte
        value = (value * FNV_PRIME) & MASK64
    return value


class RandomStream:
    """xoshiro256** stream with the sampling helpers the toolkit needs."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int) -> None:
        """Seed the four state words from a splitmix64 sequence.

        Args:
            seed: Any integer; reduced modulo 2^64.
        """
        mixer = SplitMix64(seed)
        self._s0 = mixer.next()
        self._s1 = mixer.next()
        self._s2 = mixer.next()
        self._s3 = mixer.next()

    def next_u64(self) -> int:
        """Return the next 64-bit output."""
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, rotl(s3, 45)
        return result

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def uniform(self, low: float, high: float) -> float:
        """Uniform float in [low, high]."""
        return low + (high - low) * self.random()

    def randint(self, low: int, high: int) -> int:
        """Unbiased integer in [low, high] by rejection sampling."""
        if high < low:
            raise ValueError(f"empty range [{low}, {high}]")
        span = high - low + 1
        limit = (MASK64 + 1) - ((MASK64 + 1) % span)
        while True:
            value = self.next_u64()
            if value < limit:
                return low + value % span

    def bernoulli(self, probability: float) -> bool:
        """True with the given probability."""
        return self.random() < probability

    def choice(self, items: Sequence[T]) -> T:
        """Uniformly chosen element of a non-empty sequence."""
        return items[self.randint(0, len(items) - 1)]

    def shuffle(self, items: MutableSequence[T]) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]


def derive_stream(master_seed: int, purpose: str) -> RandomStream:
    """Derive the independent stream for one generation purpose.

    The splitmix64 seed is ``master_seed XOR fnv1a_64(purpose)``, so every
    tag gets its own reproducible sequence.

    Args:
        master_seed: 64-bit master seed of the instance.
        purpose: One of depot, positions, clusters, demands, route_size.

    Returns:
        A fresh RandomStream.

    Raises:
        UnknownStreamError: If the tag is not in the documented set.
    """
    if purpose not in STREAM_TAGS:
        raise UnknownStreamError(
            f"unknown stream tag {purpose!r}",
            details={"allowed": sorted(STREAM_TAGS)},
        )
    return RandomStream((master_seed & MASK64) ^ fnv1a_64(purpose.encode("utf-8")))
