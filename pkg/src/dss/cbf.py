"""Counting Bloom filter with saturating 8-bit counters.

The membership indicator each datastore exposes: insertions bump
``num_hashes`` counters, removals decrement them, and a query answers yes
iff all of them are positive. Present items are never denied (no false
negatives); absent items may be confirmed with the usual Bloom false
positive rate. A counter that climbs to 255 turns sticky and is never
decremented again, trading a little extra false-positive mass for overflow
safety.

Hashing is double hashing: a single keyed 128-bit digest per item supplies
two 64-bit halves h1, h2 and index i is (h1 + i*h2) mod m. The digest is
keyed by the filter seed (blake2b), so placements are reproducible across
processes regardless of interpreter hash randomization.
"""

from __future__ import annotations

import hashlib
import math

_MASK64 = (1 << 64) - 1


def _item_bytes(item) -> bytes:
    if isinstance(item, bytes):
        return item
    if isinstance(item, int):
        return item.to_bytes(16, "little", signed=True)
    return str(item).encode("utf-8")


def size_for_target_fpr(capacity: int, target_fpr: float, num_hashes: int = 5) -> int:
    """Smallest counter count m with (1 - exp(-num_hashes*capacity/m))**num_hashes
    at or below the target false positive rate."""
    if capacity < 1:
        raise ValueError(f"capacity must be >= 1, got {capacity}")
    if not (0.0 < target_fpr < 1.0):
        raise ValueError(f"target_fpr must lie in (0, 1), got {target_fpr}")
    if num_hashes < 1:
        raise ValueError(f"num_hashes must be >= 1, got {num_hashes}")

    def ok(m: int) -> bool:
        return expected_fpr(capacity, m, num_hashes) <= target_fpr

    hi = 1
    while not ok(hi):
        hi *= 2
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def expected_fpr(capacity: int, num_counters: int, num_hashes: int) -> float:
    """Nominal false positive rate at the given fill level."""
    return (1.0 - math.exp(-num_hashes * capacity / num_counters)) ** num_hashes


class CountingBloomFilter:
    """Seeded counting Bloom filter over opaque item ids."""

    __slots__ = ("num_counters", "num_hashes", "seed", "counters", "sticky", "_key", "_pairs")

    def __init__(self, num_counters: int, num_hashes: int = 5, seed: int = 0):
        if num_counters < 1:
            raise ValueError(f"num_counters must be >= 1, got {num_counters}")
        if num_hashes < 1:
            raise ValueError(f"num_hashes must be >= 1, got {num_hashes}")
        self.num_counters = num_counters
        self.num_hashes = num_hashes
        self.seed = seed & _MASK64
        self.counters = bytearray(num_counters)
        self.sticky: set[int] = set()
        self._key = self.seed.to_bytes(8, "little")
        self._pairs: dict = {}  # item -> (h1, h2); static per item, so cacheable

    def _hash_pair(self, item) -> tuple[int, int]:
        pair = self._pairs.get(item)
        if pair is None:
            digest = hashlib.blake2b(
                _item_bytes(item), digest_size=16, key=self._key
            ).digest()
            h1 = int.from_bytes(digest[:8], "little")
            # Odd stride so double hashing never collapses to one index.
            h2 = int.from_bytes(digest[8:], "little") | 1
            pair = (h1, h2)
            self._pairs[item] = pair
        return pair

    def _indexes(self, item) -> list[int]:
        h1, h2 = self._hash_pair(item)
        m = self.num_counters
        return [(h1 + i * h2) % m for i in range(self.num_hashes)]

    def insert(self, item) -> None:
        counters = self.counters
        for idx in self._indexes(item):
            if idx in self.sticky:
                continue
            value = counters[idx]
            if value >= 254:
                counters[idx] = 255
                self.sticky.add(idx)
            else:
                counters[idx] = value + 1

    def remove(self, item) -> None:
        """Undo one prior insert of this item. Removing an item that was
        never inserted corrupts the filter; the underflow assert catches the
        cheap-to-detect case."""
        counters = self.counters
        for idx in self._indexes(item):
            if idx in self.sticky:
                continue
            assert counters[idx] > 0, "counter underflow: remove without insert"
            counters[idx] -= 1

    def query(self, item) -> bool:
        counters = self.counters
        for idx in self._indexes(item):
            if counters[idx] == 0:
                return False
        return True

    def __contains__(self, item) -> bool:
        return self.query(item)
