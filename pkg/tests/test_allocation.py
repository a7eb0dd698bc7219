import io
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ancosa import allocation, oracles
from ancosa.allocation import (
    Allocation,
    StorageParams,
    build_sum_count_table,
    count_partitions,
    enumerate_allocations,
    even_allocation,
    failure_probability,
    iter_allocations,
    optimal_allocation,
    sweep_reliability,
)
from ancosa.errors import AllocationLimitError, ConfigError, NoValidAllocation


def test_seven_into_three():
    got = [str(a) for a in enumerate_allocations(7, 3)]
    assert got == ["1+1+5", "1+2+4", "1+3+3", "2+2+3"]


def test_single_site():
    assert enumerate_allocations(9, 1) == [Allocation((9,))]


def test_forty_five_into_nine_matches_oracle():
    dp = [a.parts for a in enumerate_allocations(45, 9)]
    assert dp == oracles.all_partitions(45, 9)
    assert len(dp) == count_partitions(45, 9) == 7657


def test_streaming_matches_materialised():
    for n, N in [(20, 4), (30, 7), (12, 12)]:
        assert list(iter_allocations(n, N)) == enumerate_allocations(n, N)


def test_size_errors():
    with pytest.raises(NoValidAllocation):
        enumerate_allocations(3, 4)
    with pytest.raises(ConfigError):
        enumerate_allocations(0, 1)
    with pytest.raises(ConfigError):
        enumerate_allocations(5, -1)
    with pytest.raises(NoValidAllocation):
        even_allocation(2, 3)


def test_cap_is_an_error_not_a_truncation():
    with pytest.raises(AllocationLimitError):
        enumerate_allocations(45, 9, cap=100)
    params = StorageParams(20, 8, 5, 0.1)
    assert optimal_allocation(params, cap=10) == optimal_allocation(params)


@pytest.mark.parametrize("parts,want", [((3, 1), 0.01), ((2, 2), 0.0001)])
def test_small_example(parts, want):
    got = failure_probability(Allocation(parts), StorageParams(4, 2, 2, 0.01))
    assert abs(got - want) <= 1e-12


def test_rational_input_stays_exact():
    params = StorageParams(4, 2, 2, Fraction(1, 100))
    assert failure_probability(Allocation((2, 2)), params) == Fraction(1, 10000)
    assert optimal_allocation(params) == (Allocation((2, 2)), Fraction(1, 10000))


def test_degenerate_probabilities():
    alloc = Allocation((1, 2, 4))
    assert failure_probability(alloc, StorageParams(7, 3, 3, 0)) == 0
    assert failure_probability(alloc, StorageParams(7, 3, 3, 1)) == 1


def test_inconsistent_allocation():
    with pytest.raises(ConfigError):
        failure_probability(Allocation((2, 2)), StorageParams(5, 2, 2, 0.1))
    with pytest.raises(ConfigError):
        Allocation((0, 3))


@pytest.mark.parametrize("kwargs", [
    dict(n=4, k=5, N=2, p=0.1), dict(n=4, k=0, N=2, p=0.1), dict(n=4, k=2, N=2, p=1.5),
])
def test_bad_params(kwargs):
    with pytest.raises(ConfigError):
        StorageParams(**kwargs)


def test_fig7_style_table():
    t = build_sum_count_table(Allocation((1, 2, 2)))
    assert t.values == [1, 2, 3, 4, 5]
    assert t.count(2, 3) == 2
    assert t.count(1, 2) == 2
    assert t.count(3, 5) == 1
    assert t.count(1, 9) == 0


def test_single_part_table():
    t = build_sum_count_table(Allocation((7,)))
    assert t.values == [7] and t.count(1, 7) == 1


@settings(max_examples=200)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=12))
def test_table_matches_subset_enumeration(parts):
    t = build_sum_count_table(Allocation(parts))
    want = oracles.subset_sum_counts(sorted(parts))
    got = {(l, v): t.counts[l][j] for l in range(len(parts) + 1)
           for j, v in enumerate(t.values) if t.counts[l][j]}
    assert got == want
    assert t.total() == 2 ** len(parts) - 1
    assert t.values == sorted(set(t.values))


@settings(max_examples=100)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=10), st.fractions(0, 1))
def test_failure_patterns_sum_to_one(parts, p):
    t = build_sum_count_table(Allocation(parts))
    N = len(parts)
    total = (1 - p) ** N + sum(t.counts[l][j] * p**l * (1 - p) ** (N - l)
                               for l in range(N + 1) for j in range(len(t.values)))
    assert total == 1


@settings(max_examples=100)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=10), st.fractions(0, 1), st.data())
def test_monotone_in_k(parts, p, data):
    n, N = sum(parts), len(parts)
    k1 = data.draw(st.integers(1, n))
    k2 = data.draw(st.integers(k1, n))
    alloc = Allocation(parts)
    assert (failure_probability(alloc, StorageParams(n, k1, N, p))
            <= failure_probability(alloc, StorageParams(n, k2, N, p)))


def test_forced_all_ones():
    alloc, prob = optimal_allocation(StorageParams(5, 2, 5, Fraction(1, 2)))
    assert alloc.parts == (1,) * 5
    # lost iff at least n-k+1 = 4 of 5 sites fail
    assert prob == Fraction(5 + 1, 32)


def test_matches_exhaustive_oracle():
    alloc, prob = optimal_allocation(StorageParams(12, 5, 4, 0.1))
    parts, want = oracles.brute_optimum(12, 5, 4, 0.1)
    assert alloc.parts == parts
    assert abs(prob - want) <= 1e-12


def test_optimum_is_certified_and_ties_go_lexicographic():
    params = StorageParams(16, 6, 5, Fraction(1, 5))
    best, value = optimal_allocation(params)
    scores = [(failure_probability(a, params), a.parts) for a in enumerate_allocations(16, 5)]
    assert value == min(s for s, _ in scores)
    assert best.parts == min(parts for s, parts in scores if s == value)
    # with p = 0 every allocation ties at zero
    assert optimal_allocation(StorageParams(16, 6, 5, 0))[0].parts == (1, 1, 1, 1, 12)


def test_even_allocation():
    assert even_allocation(45, 9).parts == (5,) * 9
    assert even_allocation(7, 3).parts == (2, 2, 3)


def test_even_never_beats_optimum():
    rng = random.Random(12)
    for _ in range(200):
        n = rng.randint(2, 22)
        N = rng.randint(1, min(n, 7))
        params = StorageParams(n, rng.randint(1, n), N, Fraction(rng.randint(0, 50), 100))
        _, best = optimal_allocation(params)
        assert failure_probability(even_allocation(n, N), params) >= best


def test_work_grows_like_n_times_n_squared():
    rng = random.Random(0)
    ratios = []
    for n in range(20, 201, 30):
        for N in range(4, 21, 4):
            parts = [1] * N
            for _ in range(n - N):
                parts[rng.randrange(N)] += 1
            t = build_sum_count_table(Allocation(parts))
            ratios.append(t.work / (n * N * N))
    assert max(ratios) <= 4


def test_sweep_rows():
    rows = sweep_reliability({"n": 12, "k": [5, 6], "N": 4, "p": 0.1})
    assert [r["k"] for r in rows] == [5, 6]
    assert rows[0]["allocation"] == "2+3+3+4"
    assert sweep_reliability([StorageParams(4, 2, 2, 0.01)])[0]["allocation"] == "2+2"


def test_sweep_keeps_going_after_bad_cell():
    rows = sweep_reliability({"n": 4, "k": 2, "N": [2, 9], "p": 0.01})
    assert rows[0]["allocation"] == "2+2"
    assert "no valid allocation" in rows[1]["error"]
    with pytest.raises(ConfigError):
        sweep_reliability([])


def test_csv_format():
    rows = sweep_reliability({"n": 4, "k": 2, "N": 2, "p": 0.01})
    buf = io.StringIO()
    allocation.write_rows(rows, buf)
    assert buf.getvalue() == (
        "n,k,N,p,P_even,P_osa,allocation\n"
        "4,2,2,0.01,1.000000000000e-4,1.000000000000e-4,2+2\n")


def test_format_probability():
    assert allocation.format_probability(0.0001) == "1.000000000000e-4"
    assert allocation.format_probability(Fraction(1, 3)) == "3.333333333333e-1"
    assert allocation.format_probability(0) == "0.000000000000e0"
