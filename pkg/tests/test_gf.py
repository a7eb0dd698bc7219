import numpy as np
import pytest
from hypothesis import given, strategies as st

from ancosa.errors import ConfigError, InversionOfZero
from ancosa.gf import GF, GF256, field_for, shift_reduce_mul

elements = st.integers(0, 255)
nonzero = st.integers(1, 255)


def test_known_products():
    # 0x11B: x * x^7 wraps around to x^4+x^3+x+1
    assert GF256.mul(2, 0x80) == 0x1B
    assert GF256.mul(0x57, 0x83) == 0xC1
    assert GF256.mul(2, 0x8D) == 1
    assert GF256.inv(2) == 0x8D


def test_generator_for_0x11b_is_not_x():
    assert GF256.generator == 3
    assert field_for(16).generator == 2


def test_inverse_of_zero():
    with pytest.raises(InversionOfZero):
        GF256.inv(0)
    with pytest.raises(ZeroDivisionError):
        GF256.div(5, 0)


@given(elements, elements)
def test_add_is_xor(a, b):
    assert GF256.add(a, b) == a ^ b == GF256.sub(a, b)


@given(nonzero, nonzero)
def test_div_undoes_mul(a, b):
    assert GF256.div(GF256.mul(a, b), b) == a


@given(nonzero, st.integers(0, 600))
def test_pow_matches_repeated_mul(a, e):
    want = 1
    for _ in range(e):
        want = GF256.mul(want, a)
    assert GF256.pow(a, e) == want


def test_pow_of_zero():
    assert GF256.pow(0, 0) == 1
    assert GF256.pow(0, 3) == 0


def test_gf16_matches_shift_reduce_sample():
    gf = field_for(16)
    rng = np.random.default_rng(0)
    a = rng.integers(0, 1 << 16, 2000)
    b = rng.integers(0, 1 << 16, 2000)
    got = gf.mul_array(a, b)
    want = [shift_reduce_mul(int(x), int(y), 16, 0x1100B) for x, y in zip(a, b)]
    assert got.tolist() == want
    assert got.dtype == np.uint16
    for x in rng.integers(1, 1 << 16, 200):
        assert gf.mul(int(x), gf.inv(int(x))) == 1


def test_small_field_with_custom_polynomial():
    gf = GF(4, 0b10011)  # x^4 + x + 1
    for a in range(16):
        for b in range(16):
            assert gf.mul(a, b) == shift_reduce_mul(a, b, 4, 0b10011)
    assert gf.mul_array(np.arange(16)[:, None], np.arange(16)[None, :])[3, 7] == gf.mul(3, 7)


def test_rejects_reducible_polynomial():
    with pytest.raises(ConfigError):
        GF(8, 0x100)  # x^8 is not irreducible
    with pytest.raises(ConfigError):
        GF(12)


def test_random_element_is_uniform():
    # chi-square with 255 degrees of freedom; 99.9% quantile is about 330.5
    rng = np.random.default_rng(42)
    draws = [GF256.random_element(rng) for _ in range(256 * 200)]
    counts = np.bincount(draws, minlength=256)
    expected = len(draws) / 256
    chi2 = ((counts - expected) ** 2 / expected).sum()
    assert chi2 < 330.5


def test_matmul_and_combine_agree_with_scalar_loop():
    rng = np.random.default_rng(1)
    a = GF256.random_array(rng, (5, 4))
    b = GF256.random_array(rng, (4, 7))
    out = GF256.matmul(a, b)
    for i in range(5):
        for j in range(7):
            acc = 0
            for t in range(4):
                acc ^= GF256.mul(int(a[i, t]), int(b[t, j]))
            assert out[i, j] == acc
    assert np.array_equal(GF256.combine(a[0], b), out[0])
    with pytest.raises(ValueError):
        GF256.matmul(a, a)


def test_field_equality_and_pickle():
    import pickle

    assert GF(8) == GF256
    assert pickle.loads(pickle.dumps(GF256)) == GF256
    assert field_for(8) is GF256
