"""
Operator kinds, shift directions, scenario names, and default numerical
tolerances used across the ladderlcu package.

Centralised constant management for maintainability.
"""

from enum import Enum
from typing import Dict, Tuple

__all__ = [
    "OperatorKind",
    "ShiftDirection",
    "ChainStep",
    "LadderMode",
    "Scenario",
    "BRANCH_OPERATORS",
    "CHAIN_BRANCHES",
    "ANCILLA_QUBITS",
    "DEFAULT_PROB_FLOOR",
    "DEFAULT_NORMALIZATION_TOLERANCE",
    "DEFAULT_UNITARITY_TOLERANCE",
    "NORM_TOLERANCE",
    "HERMITIAN_TOLERANCE",
    "PSD_TOLERANCE",
    "DEFAULT_WALKER_QUBITS",
    "DEFAULT_WALK_STEPS",
    "DEFAULT_COIN_ANGLE_DEG",
    "DEFAULT_WALK_START",
    "DEFAULT_PPS_POLARIZATION",
    "REPORTED_PROBABILITIES",
    "REPORTED_FIDELITIES",
]


class OperatorKind(str, Enum):
    """Ladder operators available as dense matrices."""

    ADD = "add"
    """Amplitude-free increment K† = sum |i+1><i|."""

    SUB = "sub"
    """Amplitude-free decrement K = sum |i-1><i|."""

    ADD_BOUNDARY = "add_boundary"
    """Wrap term J† = |0><N|."""

    SUB_BOUNDARY = "sub_boundary"
    """Wrap term J = |N><0|."""

    BOSONIC_CREATE = "bosonic_create"
    """Creation operator with sqrt(i+1) amplitudes."""

    BOSONIC_ANNIHILATE = "bosonic_annihilate"
    """Annihilation operator, adjoint of the creation operator."""


class ShiftDirection(str, Enum):
    """Direction of a cyclic basis shift."""

    UP = "up"
    DOWN = "down"


class ChainStep(str, Enum):
    """Single steps accepted by ``LadderResource.chain_apply``."""

    ADD = "add"
    SUB = "sub"


class LadderMode(str, Enum):
    """Execution modes of the ``ladder`` command."""

    CIRCUIT = "circuit"
    ORACLE = "oracle"


class Scenario(str, Enum):
    """Named reproduction scenarios of the ``reproduce`` command."""

    TABLE1 = "table1"
    TABLE2 = "table2"
    FIG7 = "fig7"
    FIG8 = "fig8"


# ---------------------------------------------------------------------------
# Circuit layout
# ---------------------------------------------------------------------------

ANCILLA_QUBITS: Tuple[int, int] = (0, 1)
"""Ancilla register of the LCU circuit; the work register follows it."""

BRANCH_OPERATORS: Dict[str, OperatorKind] = {
    "00": OperatorKind.ADD,
    "01": OperatorKind.ADD_BOUNDARY,
    "10": OperatorKind.SUB,
    "11": OperatorKind.SUB_BOUNDARY,
}
"""Operator realised on the work register for each ancilla readout."""

CHAIN_BRANCHES: Dict[ChainStep, str] = {
    ChainStep.ADD: "00",
    ChainStep.SUB: "10",
}
"""Ancilla pattern post-selected for each chain step."""


# ---------------------------------------------------------------------------
# Default configuration values
# ---------------------------------------------------------------------------

DEFAULT_PROB_FLOOR: float = 1e-14
"""Outcomes below this probability carry no post-measurement state."""

DEFAULT_NORMALIZATION_TOLERANCE: float = 1e-9
"""Accepted norm deviation for user-supplied amplitude lists."""

DEFAULT_UNITARITY_TOLERANCE: float = 1e-12
"""Accepted deviation of U U^dagger from the identity for gate matrices."""

NORM_TOLERANCE: float = 1e-12
"""Norm deviation tolerated on states tagged as normalized."""

HERMITIAN_TOLERANCE: float = 1e-10
"""Hermiticity and trace tolerance for density matrices."""

PSD_TOLERANCE: float = 1e-9
"""Most negative eigenvalue accepted for a physical density matrix."""

DEFAULT_WALKER_QUBITS: int = 8
DEFAULT_WALK_STEPS: int = 128
DEFAULT_COIN_ANGLE_DEG: float = 45.0
DEFAULT_WALK_START: int = 128

DEFAULT_PPS_POLARIZATION: float = 1e-5
"""Typical liquid-state NMR polarization of a pseudo-pure state."""


# ---------------------------------------------------------------------------
# Reported NMR results (noise-laden, shown beside the ideal values)
# ---------------------------------------------------------------------------

REPORTED_PROBABILITIES: Dict[Scenario, Dict[str, float]] = {
    Scenario.TABLE1: {"00": 0.4956, "10": 0.4951, "01+11": 0.0093},
    Scenario.TABLE2: {"00": 0.4884, "10": 0.4979, "01+11": 0.0138},
}

REPORTED_FIDELITIES: Dict[Scenario, Dict[str, float]] = {
    Scenario.TABLE1: {"00": 0.988, "10": 0.983},
    Scenario.TABLE2: {"00": 0.963, "10": 0.970},
}
