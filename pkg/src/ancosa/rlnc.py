"""Random linear network coding over a single coding group.

A coded packet is an encoding vector (one coefficient per original packet)
followed by the payload it describes.  The source draws fresh coefficient
vectors, relays re-combine whatever fresh packets they buffered, and sinks
feed every arrival into a :class:`Decoder`, which keeps its basis in reduced
row-echelon form so freshness tests and the final solve are both cheap.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigError,
    DegenerateRandomness,
    EmptyBuffer,
    GroupMismatch,
    InsufficientRank,
    MalformedPacket,
)
from .gf import GF256, field_for

RETRY_CAP = 100


def packet_count(rate, n):
    """``ceil(rate * n)`` without float noise pushing exact products up by one."""
    if rate <= 0:
        raise ConfigError(f"code rate must be positive, got {rate}")
    return math.ceil(round(rate * n, 9))


class CodedPacket:
    """Immutable ``[vector || payload]`` pair."""

    __slots__ = ("vector", "payload")

    def __init__(self, vector, payload, field=GF256):
        vector = np.array(vector, dtype=field.dtype)
        payload = np.array(payload, dtype=field.dtype)
        if vector.ndim != 1 or payload.ndim != 1:
            raise ValueError("vector and payload must be one-dimensional")
        vector.setflags(write=False)
        payload.setflags(write=False)
        object.__setattr__(self, "vector", vector)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("CodedPacket is immutable")

    @property
    def n(self):
        return len(self.vector)

    @property
    def L(self):
        return len(self.payload)

    def row(self):
        return np.concatenate([self.vector, self.payload])

    def __eq__(self, other):
        if not isinstance(other, CodedPacket):
            return NotImplemented
        return (np.array_equal(self.vector, other.vector)
                and np.array_equal(self.payload, other.payload))

    def __hash__(self):
        return hash((self.vector.tobytes(), self.payload.tobytes()))

    def __repr__(self):
        return f"CodedPacket(vector={self.vector.tolist()}, payload={self.payload.tolist()})"


def _from_row(row, n, field):
    return CodedPacket(row[:n], row[n:], field)


@dataclass
class CodingGroup:
    """``n`` original payloads of ``L`` symbols each."""

    payloads: np.ndarray
    field: object = GF256

    def __post_init__(self):
        raw = np.asarray(self.payloads)
        if raw.ndim != 2 or raw.shape[0] < 1:
            raise ConfigError("a coding group needs at least one payload row")
        if raw.size and (raw.min() < 0 or raw.max() >= self.field.order):
            raise ConfigError("payload symbol outside the field")
        self.payloads = raw.astype(self.field.dtype)

    @property
    def n(self):
        return self.payloads.shape[0]

    @property
    def L(self):
        return self.payloads.shape[1]

    @property
    def m(self):
        return self.field.m

    @classmethod
    def random(cls, n, L, rng, field=GF256):
        return cls(field.random_array(rng, (n, L)), field)

    @classmethod
    def from_bytes(cls, data, n, field=GF256):
        """Fragment ``data`` into ``n`` equal payloads, zero-padding the tail.

        Returns ``(group, original_length)``.
        """
        sb = field.symbol_bytes
        per_packet = -(-len(data) // (n * sb)) or 1
        padded = bytes(data) + bytes(n * per_packet * sb - len(data))
        symbols = np.frombuffer(padded, dtype=f">u{sb}").astype(field.dtype)
        return cls(symbols.reshape(n, per_packet), field), len(data)

    def to_bytes(self, length=None):
        sb = self.field.symbol_bytes
        raw = self.payloads.astype(f">u{sb}").tobytes()
        return raw if length is None else raw[:length]


class Decoder:
    """Incremental Gauss-Jordan elimination over received coded packets.

    The basis is kept in reduced row-echelon form: each stored row has a 1 in
    its pivot column and zeros in every other row's pivot column.
    """

    def __init__(self, n, L=0, field=GF256):
        if n < 1:
            raise ConfigError("group size must be at least 1")
        self.n = n
        self.L = L
        self.field = field
        self._rows = np.zeros((0, n + L), dtype=field.dtype)
        self._pivots = []

    @property
    def rank(self):
        return len(self._pivots)

    @property
    def complete(self):
        return self.rank == self.n

    def copy(self):
        other = Decoder(self.n, self.L, self.field)
        other._rows = self._rows.copy()
        other._pivots = list(self._pivots)
        return other

    def _reduce(self, row):
        if self._pivots:
            coeffs = row[self._pivots]
            if coeffs.any():
                row = row ^ self.field.combine(coeffs, self._rows)
        return row

    def is_innovative(self, vector):
        vector = np.asarray(vector, dtype=self.field.dtype)
        if len(vector) != self.n:
            raise GroupMismatch(f"vector length {len(vector)} != group size {self.n}")
        if not self._pivots:
            return bool(vector.any())
        coeffs = vector[self._pivots]
        reduced = vector ^ self.field.combine(coeffs, self._rows[:, : self.n])
        return bool(reduced.any())

    def accept(self, packet):
        """Insert ``packet``; return True iff it was fresh (raised the rank)."""
        if packet.n != self.n:
            raise GroupMismatch(f"vector length {packet.n} != group size {self.n}")
        if packet.L != self.L:
            if self.L == 0 and self.rank == 0:
                self.L = packet.L
                self._rows = np.zeros((0, self.n + self.L), dtype=self.field.dtype)
            else:
                raise GroupMismatch(f"payload length {packet.L} != {self.L}")
        return self._insert(packet.row())

    def accept_vector(self, vector):
        """Freshness bookkeeping without a payload (only valid when ``L == 0``)."""
        if self.L:
            raise GroupMismatch("decoder carries payloads; use accept()")
        vector = np.asarray(vector, dtype=self.field.dtype)
        if len(vector) != self.n:
            raise GroupMismatch(f"vector length {len(vector)} != group size {self.n}")
        return self._insert(vector)

    def _insert(self, row):
        row = self._reduce(np.array(row, dtype=self.field.dtype))
        nz = np.flatnonzero(row[: self.n])
        if len(nz) == 0:
            return False
        col = int(nz[0])
        lead = int(row[col])
        if lead != 1:
            row = self.field.scale(self.field.inv(lead), row)
        if self._pivots:
            above = self._rows[:, col]
            if above.any():
                self._rows = self._rows ^ self.field.mul_array(above[:, None], row[None, :])
        self._rows = np.vstack([self._rows, row])
        self._pivots.append(col)
        return True

    def basis_packets(self):
        return [_from_row(r, self.n, self.field) for r in self._rows]

    def basis_vectors(self):
        return self._rows[:, : self.n].copy()

    def union_rank(self, other):
        """Rank of the span of this basis together with ``other``'s vectors."""
        merged = Decoder(self.n, 0, self.field)
        merged._rows = self._rows[:, : self.n].copy()
        merged._pivots = list(self._pivots)
        for vec in other._rows[:, : other.n]:
            merged._insert(vec)
        return merged.rank

    def decode(self):
        """Return the ``(n, L)`` array of original payloads."""
        if not self.complete:
            raise InsufficientRank(self.rank, self.n)
        order = np.argsort(self._pivots)
        return self._rows[order, self.n:].copy()


def accept(state, packet):
    return state.accept(packet)


def decode(state):
    return state.decode()


def _independent_rows(count, width, rng, field):
    """Random ``count x width`` coefficient matrix whose first
    ``min(count, width)`` rows are linearly independent."""
    rows = np.empty((count, width), dtype=field.dtype)
    tracker = Decoder(width, 0, field)
    for i in range(count):
        if i < width:
            for _ in range(RETRY_CAP):
                cand = field.random_array(rng, width)
                if tracker.accept_vector(cand):
                    break
            else:
                raise DegenerateRandomness(
                    f"no independent vector after {RETRY_CAP} draws (row {i})")
        else:
            cand = field.random_array(rng, width)
        rows[i] = cand
    return rows


class SourceEncoder:
    """Emits coded packets for one group; the first ``n`` vectors it ever
    emits are mutually independent, later ones are unconstrained."""

    def __init__(self, group, rng):
        self.group = group
        self.rng = rng
        self.emitted = 0
        self._tracker = Decoder(group.n, 0, group.field)

    def _next_vector(self):
        field = self.group.field
        n = self.group.n
        if self.emitted < n:
            for _ in range(RETRY_CAP):
                cand = field.random_array(self.rng, n)
                if self._tracker.accept_vector(cand):
                    return cand
            raise DegenerateRandomness(
                f"no independent encoding vector after {RETRY_CAP} draws")
        return field.random_array(self.rng, n)

    def emit(self, count):
        field = self.group.field
        vectors = []
        for _ in range(count):
            vectors.append(self._next_vector())
            self.emitted += 1
        if not vectors:
            return []
        vectors = np.array(vectors, dtype=field.dtype)
        payloads = field.matmul(vectors, self.group.payloads)
        return [CodedPacket(v, g, field) for v, g in zip(vectors, payloads)]


def source_encode(group, r, rng):
    """Encode ``group`` into ``ceil(r * n)`` coded packets."""
    return SourceEncoder(group, rng).emit(packet_count(r, group.n))


def recode(fresh, r, rng, count=None, field=GF256):
    """Re-combine buffered packets into ``ceil(r * len(fresh))`` new packets.

    The same coefficient row multiplies both the encoding vectors and the
    payloads.  ``count`` overrides the rate-derived output count.
    """
    fresh = list(fresh)
    if not fresh:
        raise EmptyBuffer("recode needs at least one buffered packet")
    n, L = fresh[0].n, fresh[0].L
    if any(p.n != n or p.L != L for p in fresh):
        raise GroupMismatch("buffered packets come from different groups")
    if count is None:
        count = packet_count(r, len(fresh))
    if count == 0:
        return []
    stacked = np.array([p.row() for p in fresh], dtype=field.dtype)
    coeffs = _independent_rows(count, len(fresh), rng, field)
    out = field.matmul(coeffs, stacked)
    return [_from_row(row, n, field) for row in out]


def serialize(packet, field=GF256):
    """Vector symbols then payload symbols, each big-endian in ceil(m/8) bytes."""
    fmt = f">u{field.symbol_bytes}"
    return packet.vector.astype(fmt).tobytes() + packet.payload.astype(fmt).tobytes()


def deserialize(buf, n, m, L, field=None):
    if field is None:
        field = field_for(m)
    sb = field.symbol_bytes
    expected = (n + L) * sb
    if len(buf) != expected:
        raise MalformedPacket(f"expected {expected} bytes, got {len(buf)}")
    symbols = np.frombuffer(bytes(buf), dtype=f">u{sb}")
    if symbols.max(initial=0) >= field.order:
        raise MalformedPacket("symbol outside the field")
    return CodedPacket(symbols[:n], symbols[n:], field)

