"""Instance generators: the recursive dense family, prefix padding, uniform random."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import SeqLike, Sequence, as_array

BASE_MAX_K = 20
PADDED_MAX_K = 12
VARIANTS = ("printed", "amended")


def inflate(s: SeqLike) -> np.ndarray:
    """x -> (2x, 2x+1), elementwise."""
    a = as_array(s)
    return (np.repeat(2 * a, 2) + np.tile(np.array([0, 1], np.int64), a.size)).astype(np.int64)


def base_length(k: int) -> int:
    return 2**k + 3 * k * 2**k // 2


def _step(seq, ends, s, even_tail, odd_block):
    """One doubling: even blocks are inflated old blocks plus a tail, odd blocks are fixed pairs."""
    grown = inflate(seq)
    at = np.repeat(2 * ends, 3)
    vals = np.tile(np.array([even_tail, *odd_block], np.int64), ends.size)
    out = np.insert(grown, at, vals)
    shift = 3 * np.arange(ends.size, dtype=np.int64)
    new_ends = np.empty(2 * ends.size, np.int64)
    new_ends[0::2] = 2 * ends + shift + 1
    new_ends[1::2] = 2 * ends + shift + 3
    return out, new_ends


def _check(k, cap, variant):
    if not 0 <= k <= cap:
        raise ValueError(f"k must be in 0..{cap}, got {k}")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def build_base(k: int, variant: str = "printed") -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, int]:
    """(A_k, B_k, block ends of A, block ends of B, s_k).

    Block ends are prefix lengths; block i (0-based) of A is
    ``A[ends[i-1]:ends[i]]``.

    ``variant="printed"`` is the published recursion. Its block prefixes do
    not reach ``i + j + 2^k`` (already at k=1, i=1, j=0 the value is 2).
    ``variant="amended"`` swaps in tails and odd blocks for which both that
    identity and the tau-pair certification hold.
    """
    _check(k, BASE_MAX_K, variant)
    A = np.array([1], np.int64)
    B = np.array([1], np.int64)
    ea = np.array([1], np.int64)
    eb = np.array([1], np.int64)
    s = 1
    for _ in range(k):
        if variant == "printed":
            A, ea = _step(A, ea, s, 2 * s + 2, (2 * s + 1, 2 * s + 3))
            B, eb = _step(B, eb, s, 2 * s + 1, (2 * s + 2, 2 * s + 3))
        else:
            A, ea = _step(A, ea, s, 2 * s + 2, (2 * s + 2, 2 * s + 3))
            B, eb = _step(B, eb, s, 2 * s + 3, (2 * s + 2, 2 * s + 3))
        s = 2 * s + 3
    return A, B, ea, eb, s


@dataclass(frozen=True)
class AdversarialInstance:
    k: int
    A: Sequence
    B: Sequence
    tau: tuple[int, ...]
    block_ends_A: np.ndarray
    block_ends_B: np.ndarray
    s_k: int

    @property
    def certified_tau_pairs(self) -> int:
        """k * 4^k: every tau pair is significant."""
        return self.k * 4**self.k

    def tau_pairs(self) -> Iterator[tuple[int, int, int, int, int]]:
        """(x, y, r, i, j) for the tau_r pair joining A-block i and B-block j."""
        k = self.k
        for i, ex in enumerate(self.block_ends_A.tolist()):
            for j, ey in enumerate(self.block_ends_B.tolist()):
                for r in range(1, k + 1):
                    # each block ends with tau_k, ..., tau_1
                    yield ex - r + 1, ey - r + 1, r, i, j

    def expected_lcisto(self, i: int, j: int) -> int:
        return i + j + 2**self.k + 1


def _append_run(seq, ends, run):
    out = np.insert(seq, np.repeat(ends, len(run)), np.tile(run, ends.size))
    return out, ends + len(run) * np.arange(1, ends.size + 1, dtype=np.int64)


def build_padded(k: int, variant: str = "printed") -> AdversarialInstance:
    """Base instance with (tau_k, ..., tau_1) appended to every block, tau_r = s_k + r."""
    _check(k, PADDED_MAX_K, variant)
    A, B, ea, eb, s = build_base(k, variant)
    tau = tuple(s + r for r in range(1, k + 1))
    run = np.array(tau[::-1], np.int64)
    A2, ea2 = _append_run(A, ea, run)
    B2, eb2 = _append_run(B, eb, run)
    return AdversarialInstance(k, Sequence(A2), Sequence(B2), tau, ea2, eb2, s)


def pad_prefix(A: SeqLike, B: SeqLike, n: Optional[int] = None) -> tuple[Sequence, Sequence]:
    """Prefix both sequences with 1..2n after shifting their symbols up by 2n.

    Old pairs (x, y) become (x + 2n, y + 2n) with lcisto raised by 2n.
    """
    a, b = as_array(A), as_array(B)
    if n is None:
        n = max(len(a), len(b), 1)
    if n < 1 or len(a) > n or len(b) > n:
        raise ValueError(f"need n >= max(|A|, |B|) and n >= 1, got n={n}")
    if (a.size and a.min() < 1) or (b.size and b.min() < 1):
        raise ValueError("symbols must be positive")
    pre = np.arange(1, 2 * n + 1, dtype=np.int64)
    return Sequence(np.concatenate([pre, a + 2 * n])), Sequence(np.concatenate([pre, b + 2 * n]))


def gen_random(n: int, alphabet: int, seed=None) -> tuple[Sequence, Sequence]:
    """Two i.i.d. uniform sequences over 1..alphabet; deterministic in seed."""
    if n < 0 or alphabet < 1:
        raise ValueError("need n >= 0 and alphabet >= 1")
    rng = np.random.default_rng(seed)
    return Sequence(rng.integers(1, alphabet + 1, n)), Sequence(rng.integers(1, alphabet + 1, n))
