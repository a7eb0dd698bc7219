"""Centralised code-rate controller.

Every reporting epoch each coding node reports how many packets it sent and
how many of them each of its successors received.  The new rate for the
node is its send count divided by the best successor's receive count,
clamped to configured bounds.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, StaleReport

DEFAULT_BOUNDS = (Fraction(1), Fraction(4))
DEFAULT_INITIAL_RATE = Fraction(6, 5)
AGGREGATES = {"max": max, "min": min}


@dataclass(frozen=True)
class NodeReport:
    node_id: str
    sent: int
    received: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RateDirective:
    node_id: str
    rate: Fraction
    total_loss: bool = False


def _check_bounds(bounds):
    r_min, r_max = (Fraction(b) for b in bounds)
    if not 0 < r_min <= r_max:
        raise ConfigError(f"rate bounds must satisfy 0 < r_min <= r_max, got {bounds}")
    return r_min, r_max


def compute_rate(report, bounds=DEFAULT_BOUNDS, aggregate="max"):
    """Rate for one node from one epoch of counters.

    A node whose successors received nothing at all gets ``r_max`` and the
    directive is flagged ``total_loss`` instead of dividing by zero.
    """
    r_min, r_max = _check_bounds(bounds)
    if aggregate not in AGGREGATES:
        raise ConfigError(f"successor_aggregate must be 'max' or 'min', got {aggregate!r}")
    if not report.received:
        raise ConfigError(f"node {report.node_id!r} has no successors")
    if report.sent < 1:
        raise ConfigError(f"node {report.node_id!r} reported {report.sent} packets sent")
    best = AGGREGATES[aggregate](report.received.values())
    if best == 0:
        return RateDirective(report.node_id, r_max, total_loss=True)
    rate = min(max(Fraction(report.sent, best), r_min), r_max)
    return RateDirective(report.node_id, rate)


def update_epoch(reports, nodes, bounds=DEFAULT_BOUNDS, aggregate="max"):
    """Directives for every node in ``nodes``; each must have a report."""
    by_node = {r.node_id: r for r in reports}
    directives = {}
    for node in nodes:
        if node not in by_node:
            raise StaleReport(node)
        directives[node] = compute_rate(by_node[node], bounds, aggregate)
    return directives


@dataclass
class RateController:
    """Controller configuration: successor sets plus rate policy.

    Holds no state between epochs; ``update`` is a pure function of the
    reports it is given.
    """

    successors: dict
    bounds: tuple = DEFAULT_BOUNDS
    aggregate: str = "max"
    initial_rate: Fraction = DEFAULT_INITIAL_RATE

    def __post_init__(self):
        self.bounds = _check_bounds(self.bounds)
        self.initial_rate = Fraction(self.initial_rate)
        if self.aggregate not in AGGREGATES:
            raise ConfigError(f"successor_aggregate must be 'max' or 'min', got {self.aggregate!r}")
        for node, succ in self.successors.items():
            if not succ:
                raise ConfigError(f"coding node {node!r} has no successors")

    def update(self, reports, nodes=None):
        nodes = list(self.successors) if nodes is None else list(nodes)
        for r in reports:
            expected = set(self.successors.get(r.node_id, ()))
            if set(r.received) != expected:
                raise ConfigError(
                    f"report from {r.node_id!r} covers {sorted(r.received)}, "
                    f"expected successors {sorted(expected)}")
        return update_epoch(reports, nodes, self.bounds, self.aggregate)
