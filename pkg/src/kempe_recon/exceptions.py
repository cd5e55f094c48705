"""Exception hierarchy shared by every kempe_recon module."""

from typing import Optional


class KempeReconError(Exception):
    """Base class for all library errors."""


class GraphInputError(KempeReconError, ValueError):
    """Raised when a graph, coloring or list assignment is malformed at construction time."""


class ContractError(KempeReconError, ValueError):
    """Raised when an operation is called with arguments that violate its precondition."""


class InstanceParseError(KempeReconError, ValueError):
    """Raised when an instance file cannot be parsed.

    Text formats report the 1-based ``line``; token formats report the 0-based token ``offset``.
    """

    def __init__(self, message: str, line: Optional[int] = None, offset: Optional[int] = None):
        self.line = line
        self.offset = offset
        if line is not None:
            message = f"line {line}: {message}"
        elif offset is not None:
            message = f"token {offset}: {message}"
        super().__init__(message)


class CapExceededError(KempeReconError):
    """Raised by the brute-force oracle when a request exceeds its enumeration caps."""

    def __init__(self, message: str, estimate: Optional[int] = None):
        self.estimate = estimate
        if estimate is not None:
            message = f"{message} (estimated search space {estimate})"
        super().__init__(message)


class ReplayError(KempeReconError):
    """Raised when a Kempe-exchange cannot be applied at its position in a plan."""

    def __init__(self, message: str, step: int):
        self.step = step
        super().__init__(f"step {step}: {message}")
