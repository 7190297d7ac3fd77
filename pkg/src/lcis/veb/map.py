from __future__ import annotations

import math
from typing import Iterator, NamedTuple, Optional

from . import _kernels as K


class VebEntry(NamedTuple):
    key: int
    payload: int


class VebMap:
    """Integer-keyed successor map over ``1..universe`` with int payloads.

    Deterministic van Emde Boas recursion truncated at ``K = log2(universe)**c``:
    sub-universes of at most ``K*K`` keys are ordinary balanced dictionaries.

    ``next``/``prev`` accept the boundary query points ``0`` and
    ``universe + 1``.  Deleting an absent key raises ``KeyError``.
    """

    def __init__(self, universe: int, c: int = 2, pool=None):
        if universe < 1:
            raise ValueError(f"universe must be >= 1, got {universe}")
        if c < 1:
            raise ValueError(f"threshold exponent c must be >= 1, got {c}")
        self.universe = int(universe)
        self.c = int(c)
        self.pool = K.new_pool() if pool is None else pool
        self.root = K.new_map(self.pool, self.universe, self.c)
        self._count = 0

    @property
    def threshold(self) -> int:
        """The recursion cut-off K."""
        return K.threshold_k(self.universe, self.c)

    def _check(self, key: int) -> int:
        key = int(key)
        if not 1 <= key <= self.universe:
            raise KeyError(f"key {key} outside universe 1..{self.universe}")
        return key

    def __len__(self) -> int:
        return self._count

    def __contains__(self, key) -> bool:
        key = int(key)
        if not 1 <= key <= self.universe:
            return False
        return bool(K.veb_find(self.pool, self.root, key)[0])

    def insert(self, key: int, payload: int = 0) -> None:
        key = self._check(key)
        self._count += int(K.veb_insert(self.pool, self.root, key, int(payload)))

    def delete(self, key: int) -> None:
        key = self._check(key)
        if not K.veb_delete(self.pool, self.root, key):
            raise KeyError(f"key {key} not present")
        self._count -= 1

    def find(self, key: int) -> Optional[int]:
        key = int(key)
        if not 1 <= key <= self.universe:
            return None
        found, pay = K.veb_find(self.pool, self.root, key)
        return int(pay) if found else None

    def next(self, key: int) -> Optional[VebEntry]:
        key = int(key)
        if not 0 <= key <= self.universe:
            raise ValueError(f"next() query point {key} outside 0..{self.universe}")
        k, pay = K.veb_next(self.pool, self.root, key)
        return VebEntry(int(k), int(pay)) if k >= 0 else None

    def prev(self, key: int) -> Optional[VebEntry]:
        key = int(key)
        if not 1 <= key <= self.universe + 1:
            raise ValueError(f"prev() query point {key} outside 1..{self.universe + 1}")
        k, pay = K.veb_prev(self.pool, self.root, key)
        return VebEntry(int(k), int(pay)) if k >= 0 else None

    def min(self) -> Optional[VebEntry]:
        return self.next(0)

    def max(self) -> Optional[VebEntry]:
        return self.prev(self.universe + 1)

    def items(self) -> list[VebEntry]:
        return [VebEntry(int(k), int(v)) for k, v in K.veb_items(self.pool, self.root)]

    def __iter__(self) -> Iterator[int]:
        return (e.key for e in self.items())

    # -- instrumentation -------------------------------------------------

    @property
    def h_bits(self) -> int:
        """Bits held by all allocated H arrays."""
        return int(self.pool.h_bits)

    def h_bits_full(self) -> int:
        """H bits if every cluster of every level were allocated."""
        bits = 1
        while (1 << bits) <= self.universe:
            bits += 1
        k2 = self.threshold ** 2
        memo: dict[int, int] = {}

        def full(b: int) -> int:
            if b <= 1 or (1 << b) <= k2:
                return 0
            if b not in memo:
                lo = b // 2
                hi = b - lo
                memo[b] = (1 << hi) + (1 << hi) * full(lo) + full(hi)
            return memo[b]

        return full(bits)

    def resident_words(self) -> int:
        return int(K.pool_cost(self.pool))

    def space_ratio(self) -> float:
        """resident words / (count + universe / K)."""
        return self.resident_words() / (self._count + self.universe / self.threshold)

    def reset_counters(self) -> None:
        K.reset_counters(self.pool)

    @property
    def descents(self) -> int:
        return int(self.pool.descents)

    @property
    def dict_steps(self) -> int:
        return int(self.pool.dict_steps)

    def depth_bound(self) -> float:
        """log2 log2 universe, the nominal recursion depth."""
        return math.log2(max(2.0, math.log2(max(2, self.universe))))

    def __repr__(self) -> str:
        return f"VebMap(universe={self.universe}, c={self.c}, count={self._count})"
