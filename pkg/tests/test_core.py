import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcis.core import (
    MatchingPair,
    Sequence,
    compress,
    format_sequence,
    matching_pair_count,
    matching_pairs,
    occurrences,
    pair_leq,
    pair_prec,
    parse_sequence,
    read_sequence,
    write_sequence,
)

ints = st.lists(st.integers(-50, 50), max_size=30)


def test_sequence_rejects_nonpositive():
    with pytest.raises(ValueError):
        Sequence(np.array([1, 0]))


def test_sequence_is_read_only_and_one_based():
    s = Sequence([4, 2, 7])
    assert s.at(1) == 4 and s.at(3) == 7
    with pytest.raises(IndexError):
        s.at(0)
    with pytest.raises(ValueError):
        s.elems[0] = 9


def test_compress_keeps_order_and_raw_values():
    a, b = compress([10, -3, 10], [7, -3])
    assert a.elems.tolist() == [3, 1, 3]
    assert b.elems.tolist() == [2, 1]
    assert a.original.tolist() == [10, -3, 10]


@given(ints, ints)
def test_compress_is_order_isomorphic(a, b):
    ca, cb = compress(a, b)
    raw = a + b
    comp = ca.elems.tolist() + cb.elems.tolist()
    for i in range(len(raw)):
        for j in range(len(raw)):
            assert (raw[i] < raw[j]) == (comp[i] < comp[j])
    if comp:
        assert sorted(set(comp)) == list(range(1, max(comp) + 1))


def test_pair_orders():
    p = MatchingPair(1, 1, 1)
    q = MatchingPair(4, 2, 2)
    assert pair_prec(p, q) and not pair_prec(q, p)
    assert pair_leq((1, 1), (4, 2)) and not pair_leq((4, 2), (1, 3))
    # same coordinates order but equal symbols: not usable consecutively
    assert not pair_prec(MatchingPair(1, 1, 2), MatchingPair(2, 2, 2))


@given(st.lists(st.integers(1, 5), max_size=15), st.lists(st.integers(1, 5), max_size=15))
def test_matching_pairs_agree_with_count(a, b):
    pairs = list(matching_pairs(a, b))
    assert len(pairs) == matching_pair_count(a, b)
    assert all(a[p.x - 1] == b[p.y - 1] == p.symbol for p in pairs)
    assert len(set(pairs)) == len(pairs)


def test_occurrences_csr():
    start, pos = occurrences([2, 1, 2, 3], 3)
    assert pos[start[2] : start[3]].tolist() == [1, 3]
    assert pos[start[1] : start[2]].tolist() == [2]


def test_text_format_roundtrip(tmp_path):
    path = tmp_path / "s.txt"
    write_sequence(path, [3, -1, 12])
    assert path.read_bytes() == b"3 -1 12\n"
    assert read_sequence(path) == [3, -1, 12]
    assert parse_sequence(" 1\n\t2  -3 ") == [1, 2, -3]
    assert format_sequence([]) == ""
    with pytest.raises(ValueError):
        parse_sequence("1 2.5")
