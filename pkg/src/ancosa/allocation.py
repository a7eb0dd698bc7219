"""Optimal placement of n coded parts over N failure-prone storage sites.

Any k of the n parts recover the data.  Each site fails independently with
probability p; an allocation fails when the parts on the failed sites
add up to more than n - k, i.e. fewer than k parts survive.

The search space is every partition of n into N positive parts.  Partitions
are built bottom-up from

    P(i, j) = {S + {1} : S in P(i-1, j-1)}  u  {S + 1 : S in P(i-j, j)}

where ``S + 1`` adds one to every part.  Each candidate is scored by a
table of subset sums split by subset size, so the failure probability is

    sum over subsets A with sum(A) > n-k of  p^|A| (1-p)^(N-|A|).

Probabilities are exact rationals internally.  A float ``p`` is converted
exactly with ``Fraction(p)`` and the answer is rounded once at the end, so
ties and orderings between allocations are decided without rounding noise.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import AllocationLimitError, ConfigError, NoValidAllocation

DEFAULT_CAP = 10**7
ALLOCATION_HEADER = ["n", "k", "N", "p", "P_even", "P_osa", "allocation"]


@dataclass(frozen=True, order=True)
class Allocation:
    """Parts per site, stored sorted non-descending."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted(int(x) for x in self.parts))
        if not parts:
            raise ConfigError("an allocation needs at least one site")
        if parts[0] <= 0:
            raise ConfigError(f"every site must hold at least one part, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self):
        return sum(self.parts)

    @property
    def N(self):
        return len(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


def _check_sizes(n, N):
    if not (isinstance(n, int) and isinstance(N, int)):
        raise ConfigError("n and N must be integers")
    if n <= 0 or N <= 0:
        raise ConfigError(f"n and N must be positive, got n={n}, N={N}")
    if N > n:
        raise NoValidAllocation(f"no valid allocation: N={N} sites but only n={n} parts")


@dataclass(frozen=True)
class StorageParams:
    n: int
    k: int
    N: int
    p: object

    def __post_init__(self):
        _check_sizes(self.n, self.N)
        if not isinstance(self.k, int) or not 1 <= self.k <= self.n:
            raise ConfigError(f"k must satisfy 1 <= k <= n, got k={self.k}")
        if not 0 <= self.p <= 1:
            raise ConfigError(f"p must lie in [0, 1], got {self.p}")

    @property
    def exact(self):
        return isinstance(self.p, Rational)

    @property
    def threshold(self):
        """Failed parts beyond this many lose the data."""
        return self.n - self.k


# -- stage I: partitions ---------------------------------------------------

def count_partitions(n, N):
    """P(n, N), the number of partitions of n into exactly N positive parts."""
    if N > n or n <= 0 or N <= 0:
        return 0
    table = [[0] * (N + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, min(i, N) + 1):
            table[i][j] = table[i - 1][j - 1] + table[i - j][j]
    return table[n][N]


def _needed_cells(n, N):
    need = set()
    stack = [(n, N)]
    while stack:
        i, j = stack.pop()
        if (i, j) in need or j <= 0 or j > i:
            continue
        need.add((i, j))
        stack.append((i - 1, j - 1))
        stack.append((i - j, j))
    return need


def partition_table(n, N):
    """Bottom-up table of every cell the recurrence needs for (n, N).

    Only cells reachable from (n, N) are filled; each of them is no larger
    than the final cell, so memory stays within the enumeration size.
    """
    cells = {(0, 0): [()]}
    for i, j in sorted(_needed_cells(n, N)):
        with_one = [(1,) + s for s in cells.get((i - 1, j - 1), ())]
        bumped = [tuple(x + 1 for x in s) for s in cells.get((i - j, j), ())]
        cells[(i, j)] = with_one + bumped
    return cells


def enumerate_allocations(n, N, cap=DEFAULT_CAP):
    """All partitions of n into N positive parts, lexicographic order."""
    _check_sizes(n, N)
    total = count_partitions(n, N)
    if total > cap:
        raise AllocationLimitError(
            f"P({n},{N}) = {total} exceeds the cap of {cap}; use iter_allocations")
    parts = partition_table(n, N)[(n, N)]
    return [Allocation(s) for s in sorted(parts)]


def iter_allocations(n, N):
    """Stream the same allocations without materialising them."""
    _check_sizes(n, N)

    def rec(remaining, slots, smallest):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(smallest, remaining // slots + 1):
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest

    for parts in rec(n, N, 1):
        yield Allocation(parts)


def even_allocation(n, N):
    _check_sizes(n, N)
    q, extra = divmod(n, N)
    return Allocation((q,) * (N - extra) + (q + 1,) * extra)


# -- stage II: subset sums by cardinality ----------------------------------

class SumCountTable:
    """Distinct subset sums of an allocation, with how many subsets of each
    size reach each sum.

    ``values`` is strictly ascending; ``counts[l][j]`` is the number of
    l-element subsets summing to ``values[j]`` (row 0 is all zeros because
    the empty subset is not part of the table).  ``work`` counts the
    per-cardinality counter updates made while building it.
    """

    def __init__(self, values, counts, N, work=0):
        self.values = values
        self.counts = counts
        self.N = N
        self.work = work

    def count(self, size, value):
        try:
            j = self.values.index(value)
        except ValueError:
            return 0
        return self.counts[size][j]

    def total(self):
        return sum(map(sum, self.counts))

    def tail_counts(self, threshold):
        """Per-size number of subsets whose sum exceeds ``threshold``."""
        out = [0] * (self.N + 1)
        for j, v in enumerate(self.values):
            if v > threshold:
                for size in range(1, self.N + 1):
                    out[size] += self.counts[size][j]
        return out


def build_sum_count_table(alloc):
    """Merge-based construction over the sorted parts.

    The running list starts with only the empty subset (sum 0).  For each
    part x it is merged with a copy of itself shifted by x, where every
    shifted subset gains one element; equal sums combine their counts.
    """
    if not isinstance(alloc, Allocation):
        alloc = Allocation(alloc)
    N = alloc.N
    entries = [(0, [1] + [0] * N)]
    work = 0
    for i, x in enumerate(alloc.parts, start=1):
        shifted = [(v + x, [0] + c[:-1]) for v, c in entries]
        merged = []
        a = b = 0
        while a < len(entries) or b < len(shifted):
            if b == len(shifted) or (a < len(entries) and entries[a][0] < shifted[b][0]):
                merged.append(entries[a])
                a += 1
            elif a == len(entries) or shifted[b][0] < entries[a][0]:
                merged.append(shifted[b])
                b += 1
            else:
                v, left = entries[a]
                right = shifted[b][1]
                # only sizes 0..i can be nonzero after i parts
                merged.append((v, [left[l] + right[l] if l <= i else 0
                                   for l in range(N + 1)]))
                work += i + 1
                a += 1
                b += 1
        entries = merged
        work += len(entries)
    entries = entries[1:]  # drop the empty-subset sentinel
    values = [v for v, _ in entries]
    counts = [[c[l] if l else 0 for _, c in entries] for l in range(N + 1)]
    return SumCountTable(values, counts, N, work)


def _weights(p, N):
    """p^l (1-p)^(N-l) for l = 0..N as exact rationals."""
    p = Fraction(p)
    q = 1 - p
    return [p**l * q**(N - l) for l in range(N + 1)]


def _finish(value, params):
    return value if params.exact else float(value)


def _exact_failure(table, threshold, weights):
    tail = table.tail_counts(threshold)
    return sum(c * w for c, w in zip(tail, weights) if c)


def failure_probability(alloc, params):
    """Probability that the failed sites hold more than n - k parts."""
    if not isinstance(alloc, Allocation):
        alloc = Allocation(alloc)
    if alloc.n != params.n or alloc.N != params.N:
        raise ConfigError(
            f"allocation {alloc} (n={alloc.n}, N={alloc.N}) does not match "
            f"n={params.n}, N={params.N}")
    table = build_sum_count_table(alloc)
    exact = _exact_failure(table, params.threshold, _weights(params.p, params.N))
    return _finish(exact, params)


def _candidates(n, N, cap):
    if count_partitions(n, N) > cap:
        return iter_allocations(n, N)
    return enumerate_allocations(n, N, cap)


def _best_per_k(n, N, p, ks, cap=DEFAULT_CAP):
    """One pass over the allocations, keeping the optimum for every k.

    Ties go to the lexicographically smallest parts, which is also the
    enumeration order, so a strict ``<`` suffices.
    """
    weights = _weights(p, N)
    best = {k: None for k in ks}
    for alloc in _candidates(n, N, cap):
        table = build_sum_count_table(alloc)
        for k in ks:
            value = _exact_failure(table, n - k, weights)
            if best[k] is None or value < best[k][1]:
                best[k] = (alloc, value)
    return best


def optimal_allocation(params, cap=DEFAULT_CAP):
    """Allocation with the lowest failure probability, and that probability."""
    alloc, value = _best_per_k(params.n, params.N, params.p, [params.k], cap)[params.k]
    return alloc, _finish(value, params)


# -- sweeps ----------------------------------------------------------------

def expand_grid(grid):
    """Cartesian product of a mapping of lists, or a list of cells as is."""
    if isinstance(grid, dict):
        keys = ["n", "k", "N", "p"]
        missing = [key for key in keys if key not in grid]
        if missing:
            raise ConfigError(f"grid is missing {missing[0]!r}")
        lists = [grid[key] if isinstance(grid[key], (list, tuple, range)) else [grid[key]]
                 for key in keys]
        return [dict(zip(keys, combo)) for combo in itertools.product(*lists)]
    return [c if isinstance(c, dict) else {"n": c.n, "k": c.k, "N": c.N, "p": c.p}
            for c in grid]


def sweep_reliability(grid, cap=DEFAULT_CAP):
    """Rows of (n, k, N, p, P_even, P_osa, allocation), one per cell.

    Cells sharing (n, N, p) share one pass over the allocations.  A cell
    that fails validation gets an ``error`` entry and the sweep goes on.
    """
    cells = expand_grid(grid)
    if not cells:
        raise ConfigError("reliability grid is empty")
    rows = [None] * len(cells)
    groups = {}
    for idx, cell in enumerate(cells):
        try:
            params = StorageParams(cell["n"], cell["k"], cell["N"], cell["p"])
        except Exception as exc:
            rows[idx] = {**cell, "P_even": None, "P_osa": None, "allocation": None,
                         "error": f"{type(exc).__name__}: {exc}"}
            continue
        groups.setdefault((params.n, params.N, params.p), []).append((idx, params))
    for (n, N, p), members in groups.items():
        ks = sorted({params.k for _, params in members})
        try:
            best = _best_per_k(n, N, p, ks, cap)
        except Exception as exc:
            for idx, params in members:
                rows[idx] = {**cells[idx], "P_even": None, "P_osa": None,
                             "allocation": None, "error": f"{type(exc).__name__}: {exc}"}
            continue
        even = even_allocation(n, N)
        for idx, params in members:
            alloc, value = best[params.k]
            rows[idx] = {
                "n": n, "k": params.k, "N": N, "p": p,
                "P_even": failure_probability(even, params),
                "P_osa": _finish(value, params),
                "allocation": str(alloc),
            }
    return rows


def format_probability(value):
    """Scientific notation with 12 digits after the point and a bare
    exponent, e.g. ``1.000000000000e-4``."""
    mantissa, exp = f"{float(value):.12e}".split("e")
    return f"{mantissa}e{int(exp)}"


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, Fraction) and value.denominator != 1:
        return repr(float(value))
    if isinstance(value, float) and not value.is_integer():
        return repr(value)
    return str(value)


def write_rows(rows, fh):
    import csv

    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(ALLOCATION_HEADER)
    for row in rows:
        out = []
        for key in ALLOCATION_HEADER:
            value = row.get(key)
            if key.startswith("P_") and value is not None:
                out.append(format_probability(value))
            else:
                out.append(_fmt(value))
        writer.writerow(out)
