"""Arithmetic in GF(2^m).

Elements are plain integers in ``[0, 2**m)``; the array helpers accept and
return numpy integer arrays so packets can be combined a row at a time.

The irreducible polynomial is a convention, not something the coding
scheme fixes: two implementations only interoperate on the wire if they
agree on it.  Defaults are x^8+x^4+x^3+x+1 (0x11B) and
x^16+x^12+x^3+x+1 (0x1100B).
"""

import numpy as np

from .errors import ConfigError, InversionOfZero

DEFAULT_POLYNOMIALS = {8: 0x11B, 16: 0x1100B}


def shift_reduce_mul(a, b, m, poly):
    """Multiply by shift-and-add with reduction modulo ``poly``.

    Slow, table-free reference used to build the log tables and to check them.
    """
    result = 0
    top = 1 << m
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return result


class GF:
    """The field GF(2^m) for m <= 16, backed by log/antilog tables."""

    def __init__(self, m=8, poly=None):
        if m not in DEFAULT_POLYNOMIALS and poly is None:
            raise ConfigError(f"no default polynomial for m={m}; pass poly")
        if not 1 <= m <= 16:
            raise ConfigError("table-based field supports 1 <= m <= 16")
        self.m = m
        self.poly = DEFAULT_POLYNOMIALS[m] if poly is None else poly
        if self.poly >> m != 1:
            raise ConfigError(f"polynomial {self.poly:#x} is not of degree {m}")
        self.order = 1 << m
        self.dtype = np.uint8 if m <= 8 else np.uint16
        self.symbol_bytes = (m + 7) // 8
        self._build_tables()

    def _build_tables(self):
        q = self.order
        # x itself is not primitive for every irreducible polynomial (it is
        # not for 0x11B), so search for the smallest generator.
        for g in range(2, q):
            exp = [1] * (q - 1)
            x = 1
            for i in range(1, q - 1):
                x = shift_reduce_mul(x, g, self.m, self.poly)
                if x == 1:
                    break
                exp[i] = x
            else:
                if shift_reduce_mul(x, g, self.m, self.poly) == 1:
                    break
        else:
            raise ConfigError(f"polynomial {self.poly:#x} is not irreducible")
        self.generator = g
        exp_table = np.array(exp + exp, dtype=np.int64)
        log_table = np.zeros(q, dtype=np.int64)
        log_table[exp_table[: q - 1]] = np.arange(q - 1)
        exp_table.setflags(write=False)
        log_table.setflags(write=False)
        self._exp = exp_table
        self._log = log_table
        self._exp_list = exp + exp
        self._log_list = log_table.tolist()
        self._table = None
        if self.m <= 8:
            # full product table: one fancy-index per array multiply
            idx = np.arange(q)
            prod = exp_table[log_table[idx][:, None] + log_table[idx][None, :]]
            prod[0, :] = 0
            prod[:, 0] = 0
            table = prod.astype(self.dtype)
            table.setflags(write=False)
            self._table = table
            self._flat = table.ravel()

    def __repr__(self):
        return f"GF(2^{self.m}, poly={self.poly:#x})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.m, self.poly) == (other.m, other.poly)

    def __hash__(self):
        return hash((self.m, self.poly))

    def __reduce__(self):
        return (GF, (self.m, self.poly))

    # scalar operations

    def add(self, a, b):
        return a ^ b

    sub = add

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a):
        if a == 0:
            raise InversionOfZero("zero has no multiplicative inverse")
        return self._exp_list[(self.order - 1 - self._log_list[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            return 0 if e else 1
        return self._exp_list[(self._log_list[a] * e) % (self.order - 1)]

    def random_element(self, rng):
        return int(rng.integers(0, self.order))

    def valid(self, a):
        return 0 <= a < self.order

    # array operations

    def random_array(self, rng, shape):
        return rng.integers(0, self.order, size=shape).astype(self.dtype)

    def mul_array(self, a, b):
        """Elementwise product with numpy broadcasting."""
        a = np.asarray(a)
        b = np.asarray(b)
        if self._table is not None:
            if a.ndim == 2 and b.ndim == 2 and a.shape[1] == 1 and b.shape[0] == 1:
                return self._table[a[:, 0]][:, b[0]]  # outer product, cheapest path
            return self._flat[(a.astype(np.intp) << self.m) | b]
        prod = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, prod).astype(self.dtype)

    def scale(self, c, row):
        if c == 0:
            return np.zeros_like(row, dtype=self.dtype)
        if c == 1:
            return np.array(row, dtype=self.dtype)
        return self.mul_array(c, row)

    def matmul(self, a, b):
        """Matrix product over the field; ``a`` is (k, j) and ``b`` is (j, w)."""
        a = np.asarray(a)
        b = np.asarray(b)
        if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
        out = np.zeros((a.shape[0], b.shape[1]), dtype=self.dtype)
        for j in range(a.shape[1]):
            out ^= self.mul_array(a[:, j, None], b[None, j, :])
        return out

    def combine(self, coeffs, rows):
        """Linear combination ``sum_j coeffs[j] * rows[j]`` of a stack of rows."""
        coeffs = np.asarray(coeffs)
        rows = np.asarray(rows)
        if len(coeffs) == 0:
            return np.zeros(rows.shape[1:], dtype=self.dtype)
        terms = self.mul_array(coeffs[:, None], rows)
        return np.bitwise_xor.reduce(terms, axis=0).astype(self.dtype)


GF256 = GF(8)


_FIELDS = {(8, 0x11B): GF256}


def field_for(m, poly=None):
    """Shared field instance for ``m`` (tables are built once per process)."""
    key = (m, DEFAULT_POLYNOMIALS.get(m) if poly is None else poly)
    if key not in _FIELDS:
        _FIELDS[key] = GF(m, poly)
    return _FIELDS[key]
