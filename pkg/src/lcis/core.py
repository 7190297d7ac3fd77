"""Sequences, symbol compression, matching pairs and the two pair orders.

Positions are 1-based everywhere in the public API (``x`` indexes ``A``,
``y`` indexes ``B``); position 0 is reserved for the sentinel pair ``(0, 0)``.
Sequences keep their symbols in a 0-indexed numpy array.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Optional, Union

import numpy as np


@dataclass(frozen=True, eq=False)
class Sequence:
    """Compressed integer sequence (symbol ids >= 1) plus the raw values it came from."""

    elems: np.ndarray
    original: Optional[np.ndarray] = None

    def __post_init__(self):
        elems = np.ascontiguousarray(self.elems, dtype=np.int64)
        if elems.ndim != 1:
            raise ValueError("a sequence is one-dimensional")
        if elems.size and elems.min() < 1:
            raise ValueError("symbol ids must be >= 1")
        if self.original is not None and len(self.original) != len(elems):
            raise ValueError("original values must match the sequence length")
        elems.setflags(write=False)
        object.__setattr__(self, "elems", elems)
        if self.original is not None:
            orig = np.array(self.original, dtype=np.int64)
            orig.setflags(write=False)
            object.__setattr__(self, "original", orig)

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator[int]:
        return (int(v) for v in self.elems)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        return np.array_equal(self.elems, other.elems)

    def at(self, x: int) -> int:
        """Symbol at 1-based position ``x``."""
        if not 1 <= x <= len(self.elems):
            raise IndexError(x)
        return int(self.elems[x - 1])

    def __repr__(self) -> str:
        return f"Sequence({self.elems.tolist()})"


SeqLike = Union[Sequence, Iterable[int], np.ndarray]


def as_array(s: SeqLike) -> np.ndarray:
    if isinstance(s, Sequence):
        return s.elems
    if not isinstance(s, np.ndarray):
        s = list(s)
    return np.ascontiguousarray(np.asarray(s, dtype=np.int64).reshape(-1))


class MatchingPair(NamedTuple):
    x: int
    y: int
    symbol: int


def compress(A: SeqLike, B: SeqLike) -> tuple[Sequence, Sequence]:
    """Rename values to dense ranks ``1..d`` shared across both sequences.

    The raw values are kept in ``original`` (carried over unchanged when the
    inputs are already compressed sequences).
    """
    a, b = as_array(A), as_array(B)
    values = np.unique(np.concatenate([a, b]))
    ra = np.searchsorted(values, a) + 1
    rb = np.searchsorted(values, b) + 1

    def raw(src, arr):
        if isinstance(src, Sequence) and src.original is not None:
            return src.original
        return arr

    return Sequence(ra, raw(A, a)), Sequence(rb, raw(B, b))


def pair_leq(p, q) -> bool:
    """Componentwise order on positions."""
    return p[0] <= q[0] and p[1] <= q[1]


def pair_prec(p: MatchingPair, q: MatchingPair) -> bool:
    """Strict order usable as consecutive elements of a common increasing subsequence."""
    return p.x < q.x and p.y < q.y and p.symbol < q.symbol


def occurrences(s: SeqLike, n_symbols: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """CSR layout of 1-based positions per symbol: ``pos[start[v]:start[v+1]]``."""
    a = as_array(s)
    if n_symbols is None:
        n_symbols = int(a.max()) if a.size else 0
    counts = np.bincount(a, minlength=n_symbols + 1)[: n_symbols + 1]
    start = np.zeros(n_symbols + 2, dtype=np.int64)
    np.cumsum(counts, out=start[1:])
    pos = np.argsort(a, kind="stable").astype(np.int64) + 1
    return start, pos


def matching_pair_count(A: SeqLike, B: SeqLike) -> int:
    a, b = as_array(A), as_array(B)
    if not a.size or not b.size:
        return 0
    m = int(max(a.max(), b.max()))
    ca = np.bincount(a, minlength=m + 1)
    cb = np.bincount(b, minlength=m + 1)
    return int(np.dot(ca.astype(np.int64), cb.astype(np.int64)))


def matching_pairs(A: SeqLike, B: SeqLike) -> Iterator[MatchingPair]:
    """All pairs with ``A[x] == B[y]``, grouped by symbol, then x, then y."""
    a, b = as_array(A), as_array(B)
    if not a.size or not b.size:
        return
    m = int(max(a.max(), b.max()))
    sa, pa = occurrences(a, m)
    sb, pb = occurrences(b, m)
    for v in range(1, m + 1):
        ys = pb[sb[v] : sb[v + 1]].tolist()
        if not ys:
            continue
        for x in pa[sa[v] : sa[v + 1]].tolist():
            for y in ys:
                yield MatchingPair(x, y, v)


# ------------------------------------------------------------ text format


def parse_sequence(text: str) -> list[int]:
    """Whitespace-separated signed decimal integers."""
    out = []
    for tok in text.split():
        try:
            out.append(int(tok, 10))
        except ValueError:
            raise ValueError(f"not a decimal integer: {tok!r}") from None
    return out


def read_sequence(path: Union[str, Path]) -> list[int]:
    return parse_sequence(Path(path).read_text(encoding="ascii"))


def format_sequence(values: Iterable[int]) -> str:
    body = " ".join(str(int(v)) for v in values)
    return body + "\n" if body else ""


def write_sequence(path: Union[str, Path], values: Iterable[int]) -> None:
    Path(path).write_text(format_sequence(values), encoding="ascii", newline="\n")
