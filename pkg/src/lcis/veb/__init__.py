"""Deterministic truncated van Emde Boas successor maps."""
from ._kernels import VebPool, new_pool, threshold_k
from .map import VebEntry, VebMap

__all__ = ["VebMap", "VebEntry", "VebPool", "new_pool", "threshold_k"]
