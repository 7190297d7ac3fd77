"""Shared fixtures data for the test modules."""
import numpy as np

# the running example: seven labelled pairs, LCIS 4
FIG_A = (1, 3, 5, 2, 5, 4, 5)
FIG_B = (1, 2, 5, 3, 5, 4, 5)
FIG_LCISTO = {(1, 1): 1, (4, 2): 2, (2, 4): 2, (3, 5): 3, (5, 5): 3, (6, 6): 3, (7, 7): 4}
FIG_SIG5 = {(3, 3): 2, (5, 3): 3, (3, 5): 3, (7, 7): 4}


def random_pair(rng, n_max, alphabet=None):
    n = int(rng.integers(0, n_max + 1))
    m = int(rng.integers(0, n_max + 1))
    al = alphabet or int(rng.integers(1, max(2, n + m) + 1))
    return rng.integers(1, al + 1, n), rng.integers(1, al + 1, m)


def minimal_elements(pairs):
    """Pairs not >= (componentwise) another pair of the set."""
    return {p for p in pairs if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pairs)}
