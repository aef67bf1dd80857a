"""Exception hierarchy shared across the package."""


class MdnetError(Exception):
    """Base class for all mdnet errors."""


class InputError(MdnetError):
    """Malformed input data or invalid configuration supplied by the caller."""


class SolverError(MdnetError):
    """A solver refused the instance (size limits, missing prerequisites)."""


class InfeasiblePartition(MdnetError):
    """A partition cannot be represented inside the model's variable bounds."""
