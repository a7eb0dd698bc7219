"""Adaptive random linear network coding over lossy multi-hop networks, and
optimal placement of coded parts across unreliable storage sites."""

from .allocation import (
    Allocation,
    StorageParams,
    SumCountTable,
    build_sum_count_table,
    count_partitions,
    enumerate_allocations,
    even_allocation,
    failure_probability,
    iter_allocations,
    optimal_allocation,
    sweep_reliability,
)
from .controller import NodeReport, RateController, RateDirective, compute_rate, update_epoch
from .errors import *  # noqa: F401,F403
from .gf import GF, GF256, field_for
from .netsim import (
    Link,
    RunConfig,
    RunResult,
    Topology,
    reference_topology,
    run,
    sweep,
    transmission_efficiency,
)
from .regen import RegenPoint, cutset_bound_ok, regen_points
from .rlnc import (
    CodedPacket,
    CodingGroup,
    Decoder,
    SourceEncoder,
    decode,
    deserialize,
    recode,
    serialize,
    source_encode,
)

__version__ = "0.1.0"
