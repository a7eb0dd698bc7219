"""Slow, obviously-correct reference implementations used by the tests,
the acceptance suite and ``--oracle`` on the command line.

None of this shares code with the fast paths it checks.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np


def _descending(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=64)
def partitions_by_length(n):
    """Every partition of ``n`` (largest part first), grouped by length."""
    groups = {}
    for s in _descending(n, n):
        groups.setdefault(len(s), []).append(s)
    return groups


def all_partitions(n, N):
    """Partitions of ``n`` into ``N`` parts in canonical form: each sorted
    ascending, the list sorted lexicographically."""
    return sorted(tuple(reversed(s)) for s in partitions_by_length(n).get(N, ()))


def subset_sum_counts(parts):
    """{(size, sum): count} over all nonempty subsets, by enumeration."""
    out = {}
    for mask in range(1, 1 << len(parts)):
        chosen = [x for i, x in enumerate(parts) if mask >> i & 1]
        key = (len(chosen), sum(chosen))
        out[key] = out.get(key, 0) + 1
    return out


def brute_failure(parts, n, k, p):
    """Sum over all 2^N up/down patterns of the sites; exact when ``p`` is.

    Patterns are enumerated as the rows of a 0/1 matrix, so this stays
    usable up to N around 20.
    """
    N = len(parts)
    masks = np.arange(1 << N, dtype=np.int64)
    down = (masks[:, None] >> np.arange(N)) & 1
    lost = down @ np.asarray(parts, dtype=np.int64)
    sizes = down.sum(axis=1)
    failing = np.bincount(sizes[n - lost < k], minlength=N + 1)
    exact = not isinstance(p, float)
    p = Fraction(p)
    total = sum(int(c) * p**i * (1 - p)**(N - i) for i, c in enumerate(failing) if c)
    total = Fraction(total)
    return total if exact else float(total)


def brute_optimum(n, k, N, p):
    """Minimum over every partition, ties to the lexicographically smallest."""
    best = None
    for parts in all_partitions(n, N):
        exact = brute_failure(parts, n, k, Fraction(p))
        if best is None or exact < best[1]:
            best = (parts, exact)
    parts, exact = best
    return parts, (exact if not isinstance(p, float) else float(exact))
