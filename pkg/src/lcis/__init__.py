"""Longest common increasing subsequence via significant pairs."""
from ._jit import BACKEND
from .core import MatchingPair, Sequence, compress, matching_pair_count, matching_pairs, pair_leq, pair_prec
from .fast import QueueFamily, choose_t, lcis_fast, lcis_fast_run
from .genlb import build_base, build_padded, gen_random, inflate, pad_prefix
from .oracle import (
    LcisTable,
    SignificantPairSet,
    kth_predecessor,
    lcis_bruteforce,
    lcis_dp,
    predecessor,
    significant_count,
    significant_pairs,
)
from .veb import VebMap

__all__ = [
    "BACKEND",
    "MatchingPair",
    "Sequence",
    "compress",
    "matching_pair_count",
    "matching_pairs",
    "pair_leq",
    "pair_prec",
    "QueueFamily",
    "choose_t",
    "lcis_fast",
    "lcis_fast_run",
    "build_base",
    "build_padded",
    "gen_random",
    "inflate",
    "pad_prefix",
    "LcisTable",
    "SignificantPairSet",
    "kth_predecessor",
    "lcis_bruteforce",
    "lcis_dp",
    "predecessor",
    "significant_count",
    "significant_pairs",
    "VebMap",
]
