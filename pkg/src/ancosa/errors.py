"""Exception hierarchy shared by all ancosa modules."""


class AncosaError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(AncosaError, ValueError):
    """Invalid parameters, topology or configuration."""


class InversionOfZero(AncosaError, ZeroDivisionError):
    pass


class DegenerateRandomness(AncosaError):
    """Rejection sampling could not find an independent vector within the retry cap."""


class EmptyBuffer(AncosaError, ValueError):
    pass


class GroupMismatch(AncosaError, ValueError):
    pass


class InsufficientRank(AncosaError):
    def __init__(self, rank, n):
        super().__init__(f"decoder rank {rank} < group size {n}")
        self.rank = rank
        self.n = n


class MalformedPacket(AncosaError, ValueError):
    pass


class StaleReport(AncosaError):
    def __init__(self, node):
        super().__init__(f"no report received from node {node!r}")
        self.node = node


class Undefined(AncosaError):
    """Transmission efficiency requested for a run where no sink decoded."""


class IntegrityError(AncosaError):
    """A sink decoded data that differs from the source's original payloads."""


class NoValidAllocation(AncosaError, ValueError):
    pass


class AllocationLimitError(AncosaError):
    """Materialising the allocation list would exceed the configured cap."""
