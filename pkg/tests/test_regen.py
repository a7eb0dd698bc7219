from fractions import Fraction

import pytest

from ancosa.errors import ConfigError
from ancosa.regen import cutset_bound_ok, cutset_sum, regen_points


def test_small_code_parameters():
    msr, mbr = regen_points(4, 2, 3)
    assert (msr.alpha, msr.gamma) == (2, 3)
    assert msr.beta(3) == 1
    assert (mbr.alpha, mbr.gamma) == (Fraction(12, 5), Fraction(12, 5))


def test_d_equals_k():
    # one symbol stored and one fetched from each of the d helpers
    msr, _ = regen_points(5, 5, 5)
    assert (msr.alpha, msr.beta(5), msr.gamma) == (1, 1, 5)
    msr, _ = regen_points(1, 1, 1)
    assert (msr.alpha, msr.gamma) == (1, 1)


@pytest.mark.parametrize("B,k,d", [(100, 4, 7), (9, 3, 3), (17, 5, 9)])
def test_both_points_meet_the_cut_bound_with_equality(B, k, d):
    for point in regen_points(B, k, d):
        assert cutset_sum(k, d, point.alpha, point.beta(d)) == B
        assert cutset_bound_ok(B, k, d, point.alpha, point.beta(d))


def test_mbr_stores_more_but_repairs_cheaper():
    msr, mbr = regen_points(100, 4, 7)
    assert mbr.alpha >= msr.alpha and mbr.gamma <= msr.gamma


def test_cut_bound():
    assert cutset_sum(2, 3, 2, 1) == 4
    assert cutset_bound_ok(4, 2, 3, 2, 1)
    assert not cutset_bound_ok(5, 2, 3, 2, 1)
    assert cutset_bound_ok(4, 2, 3, 10**6, 10**6)


def test_errors():
    with pytest.raises(ConfigError):
        regen_points(4, 3, 2)
    with pytest.raises(ConfigError):
        regen_points(0, 1, 1)
    with pytest.raises(ConfigError):
        cutset_bound_ok(4, 2, 3, 0, 1)
