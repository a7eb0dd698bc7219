"""Storage/repair-bandwidth extremes of regenerating codes.

A file of B symbols is spread so that any k nodes rebuild it, and a lost
node is regenerated by downloading beta symbols from each of d helpers
(gamma = d * beta in total).  Everything is exact: inputs may be ints or
Fractions and so are the results.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError


@dataclass(frozen=True)
class RegenPoint:
    alpha: Fraction  # symbols stored per node
    gamma: Fraction  # symbols downloaded to repair one node

    def beta(self, d):
        return self.gamma / d


def _check(B, k, d):
    if min(B, k, d) <= 0:
        raise ConfigError(f"B, k and d must be positive, got B={B}, k={k}, d={d}")
    if k > d:
        raise ConfigError(f"need k <= d, got k={k}, d={d}")


def regen_points(B, k, d):
    """(MSR, MBR) operating points for a file of ``B`` symbols."""
    _check(B, k, d)
    B = Fraction(B)
    msr = RegenPoint(B / k, B * d / (k * (d - k + 1)))
    mbr_value = 2 * B * d / (2 * k * d - k * k + k)
    mbr = RegenPoint(mbr_value, mbr_value)
    return msr, mbr


def cutset_sum(k, d, alpha, beta):
    return sum(min(Fraction(alpha), (d - i) * Fraction(beta)) for i in range(k))


def cutset_bound_ok(B, k, d, alpha, beta):
    """True when a file of ``B`` symbols fits through every repair cut."""
    _check(B, k, d)
    if alpha <= 0 or beta <= 0:
        raise ConfigError("alpha and beta must be positive")
    return Fraction(B) <= cutset_sum(k, d, alpha, beta)
