"""Exception hierarchy shared by all frustra modules."""


class FrustraError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(FrustraError, ValueError):
    """Invalid or inconsistent input values (bad L, parity mismatch, q out of range)."""


class DomainError(FrustraError, ValueError):
    """Operation requested outside its mathematical domain (e.g. negative gap product)."""


class CapacityError(FrustraError, RuntimeError):
    """Problem size exceeds a hard cap (full enumeration, dense eigensolve)."""


class SingularLoopError(FrustraError, RuntimeError):
    """The Bloch loop passes through the origin; winding/normalization undefined."""


class ConsistencyError(FrustraError, RuntimeError):
    """An internal cross-check failed (sector leakage, eigensolver breakdown)."""
