"""Runtime failures that are not argument errors."""


class ComputationError(RuntimeError):
    """A simulation failed mid-flight (as opposed to bad inputs)."""


class ZeroProbabilityError(ComputationError):
    """A forced measurement outcome has no support."""


class NormalizationError(ComputationError):
    """A probability vector or state norm drifted past tolerance."""
