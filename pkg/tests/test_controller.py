from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ancosa.controller import NodeReport, RateController, compute_rate, update_epoch
from ancosa.errors import ConfigError, StaleReport


def test_rate_is_sent_over_best_receipt():
    d = compute_rate(NodeReport("a", 10, {"b": 8}))
    assert d.rate == Fraction(5, 4) and d.node_id == "a" and not d.total_loss


def test_lossless_period_gives_one():
    assert compute_rate(NodeReport("a", 10, {"b": 10, "c": 7})).rate == 1


def test_clamped_to_upper_bound():
    d = compute_rate(NodeReport("a", 10, {"b": 2, "c": 0}), bounds=(1, 4))
    assert d.rate == 4


def test_clamped_to_lower_bound():
    # duplicates can make a successor count exceed what was sent
    assert compute_rate(NodeReport("a", 5, {"b": 9})).rate == 1


def test_total_loss_returns_upper_bound_with_flag():
    d = compute_rate(NodeReport("a", 10, {"b": 0, "c": 0}), bounds=(1, 3))
    assert d.rate == 3 and d.total_loss


def test_bad_reports():
    with pytest.raises(ConfigError):
        compute_rate(NodeReport("a", 10, {}))
    with pytest.raises(ConfigError):
        compute_rate(NodeReport("a", 0, {"b": 0}))
    with pytest.raises(ConfigError):
        compute_rate(NodeReport("a", 3, {"b": 1}), bounds=(2, 1))
    with pytest.raises(ConfigError):
        compute_rate(NodeReport("a", 3, {"b": 1}), aggregate="mean")


def test_min_aggregate_protects_worst_successor():
    report = NodeReport("a", 12, {"b": 10, "c": 6})
    assert compute_rate(report, aggregate="max").rate == Fraction(6, 5)
    assert compute_rate(report, aggregate="min").rate == 2


def test_update_epoch_all_lossless():
    reports = [NodeReport(v, 20, {"x": 20}) for v in "abc"]
    out = update_epoch(reports, "abc")
    assert {v: d.rate for v, d in out.items()} == {"a": 1, "b": 1, "c": 1}


def test_missing_report_names_the_node():
    with pytest.raises(StaleReport) as info:
        update_epoch([NodeReport("a", 1, {"x": 1})], ["a", "b"])
    assert info.value.node == "b"
    with pytest.raises(StaleReport):
        update_epoch([], ["a"])


def test_controller_checks_successor_sets():
    ctl = RateController({"a": ["b", "c"]})
    with pytest.raises(ConfigError):
        ctl.update([NodeReport("a", 4, {"b": 4})])
    assert ctl.update([NodeReport("a", 4, {"b": 4, "c": 2})])["a"].rate == 1
    with pytest.raises(ConfigError):
        RateController({"a": []})


@pytest.mark.parametrize("p", [0.1, 0.3, 0.5])
def test_chain_rate_converges_to_inverse_delivery(p):
    # expected receipts are sent * (1 - p), so the rate settles at 1 / (1 - p)
    rng = np.random.default_rng(int(p * 100))
    ctl = RateController({"a": ["b"]})
    rate = ctl.initial_rate
    history = []
    for _ in range(50):
        sent = int(np.ceil(float(rate) * 2000))
        received = int(rng.binomial(sent, 1 - p))
        rate = ctl.update([NodeReport("a", sent, {"b": received})])["a"].rate
        history.append(float(rate))
    assert abs(np.mean(history[10:]) - 1 / (1 - p)) < 0.01 / (1 - p)


counts = st.integers(0, 1000)


@given(st.integers(1, 1000), counts, counts)
def test_monotone_in_best_receipt(sent, r1, r2):
    lo, hi = sorted((r1, r2))
    a = compute_rate(NodeReport("a", sent, {"b": lo})).rate
    b = compute_rate(NodeReport("a", sent, {"b": hi})).rate
    assert b <= a


@given(st.integers(1, 1000), st.lists(counts, min_size=1, max_size=5))
def test_bounds_and_idempotence(sent, receipts):
    report = NodeReport("a", sent, {f"s{i}": r for i, r in enumerate(receipts)})
    first = compute_rate(report, bounds=(1, 4))
    assert 1 <= first.rate <= 4
    assert compute_rate(report, bounds=(1, 4)) == first
