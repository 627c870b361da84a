"""
Custom exception hierarchy for ladderlcu.

Every package-specific error inherits from :class:`LadderLcuError` so callers
can catch all simulation errors with a single ``except LadderLcuError`` clause
while still being able to handle individual error types.
"""

from typing import Optional

__all__ = [
    "LadderLcuError",
    "ValidationError",
    "DimensionMismatchError",
    "RegisterOverlapError",
    "NonUnitaryError",
    "ZeroPurityError",
    "SpecFormatError",
    "ZeroProbabilityError",
    "UnphysicalStateWarning",
]


class LadderLcuError(Exception):
    """Base error class for all ladderlcu errors."""

    def __init__(self, message: str = "An error occurred in ladderlcu.") -> None:
        super().__init__(message)
        self.message = message


class ValidationError(LadderLcuError):
    """Raised when an input violates a documented precondition."""

    def __init__(self, message: str = "Validation failed. Invalid input.") -> None:
        super().__init__(message)


class DimensionMismatchError(ValidationError):
    """Raised when vector, matrix, or register sizes do not agree."""

    def __init__(self, message: str = "Dimension mismatch.") -> None:
        super().__init__(message)


class RegisterOverlapError(ValidationError):
    """Raised when control and target registers share a qubit."""

    def __init__(self, message: str = "Control and target registers overlap.") -> None:
        super().__init__(message)


class NonUnitaryError(ValidationError):
    """Raised when a gate matrix fails the unitarity tolerance."""

    def __init__(self, message: str = "Gate matrix is not unitary.") -> None:
        super().__init__(message)


class ZeroPurityError(ValidationError):
    """Raised when Tr(rho^2) vanishes and the overlap fidelity is undefined."""

    def __init__(self, message: str = "Fidelity undefined for a zero-purity matrix.") -> None:
        super().__init__(message)


class SpecFormatError(ValidationError):
    """Raised when a state, density, or distribution file is malformed."""

    def __init__(self, message: str = "Malformed input file.") -> None:
        super().__init__(message)


class ZeroProbabilityError(LadderLcuError):
    """Raised when post-selection targets a branch with vanishing probability.

    Attributes:
        step: Zero-based index of the failing step, when known.
        pattern: Ancilla pattern that was post-selected.
    """

    def __init__(
        self,
        message: str = "Post-selected branch has zero probability.",
        *,
        step: Optional[int] = None,
        pattern: Optional[str] = None,
    ) -> None:
        super().__init__(message)
        self.step = step
        self.pattern = pattern


class UnphysicalStateWarning(UserWarning):
    """Emitted when a reconstructed density matrix is not positive semidefinite."""
