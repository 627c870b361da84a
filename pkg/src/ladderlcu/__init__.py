"""
ladderlcu: exact simulation of ladder operators built from a linear
combination of unitaries.

Addition ``K†`` and subtraction ``K`` on a truncated ``N + 1`` level space are
realised by a two-qubit ancilla circuit with post-selection.  The package also
provides density-matrix fidelities, pseudo-pure state and tomography
emulation, and a coined discrete-time quantum walk that reuses the same
cyclic shifts.

Example:
    >>> from ladderlcu import Simulator, basis_state
    >>>
    >>> sim = Simulator()
    >>> result = sim.ladder.lcu_circuit(basis_state(2, 1))
    >>> round(result.probability("00"), 12)
    0.5
    >>> chain = sim.ladder.chain_apply(basis_state(2, 1), ["add", "sub"])
    >>> round(chain.probability, 12)
    0.25
"""

from ladderlcu.core.constants import (
    ANCILLA_QUBITS,
    BRANCH_OPERATORS,
    DEFAULT_NORMALIZATION_TOLERANCE,
    DEFAULT_PROB_FLOOR,
    ChainStep,
    LadderMode,
    OperatorKind,
    Scenario,
    ShiftDirection,
)
from ladderlcu.core.exceptions import (
    DimensionMismatchError,
    LadderLcuError,
    NonUnitaryError,
    RegisterOverlapError,
    SpecFormatError,
    UnphysicalStateWarning,
    ValidationError,
    ZeroProbabilityError,
    ZeroPurityError,
)
from ladderlcu.core.statevec import basis_state, from_amplitudes
from ladderlcu.resources.ladder import ladder_matrix
from ladderlcu.resources.qrw import make_walk_config
from ladderlcu.simulator import Simulator
from ladderlcu.types import (
    ChainResult,
    ControlSpec,
    DensityMatrix,
    LadderOperator,
    LcuResult,
    OutcomeRecord,
    PauliExpectations,
    PermutationPhaseUnitary,
    PositionDistribution,
    RegisterSlice,
    RunReport,
    SimulatorConfig,
    SingleQubitGate,
    StateVector,
    WalkConfig,
    WalkStatistics,
)

__version__ = "0.1.0"

__all__ = [
    # Main entry point
    "Simulator",
    # Helpers
    "basis_state",
    "from_amplitudes",
    "ladder_matrix",
    "make_walk_config",
    # Types
    "SimulatorConfig",
    "StateVector",
    "RegisterSlice",
    "OutcomeRecord",
    "SingleQubitGate",
    "PermutationPhaseUnitary",
    "ControlSpec",
    "LadderOperator",
    "LcuResult",
    "ChainResult",
    "DensityMatrix",
    "PauliExpectations",
    "WalkConfig",
    "PositionDistribution",
    "WalkStatistics",
    "RunReport",
    # Constants
    "OperatorKind",
    "ShiftDirection",
    "ChainStep",
    "LadderMode",
    "Scenario",
    "ANCILLA_QUBITS",
    "BRANCH_OPERATORS",
    "DEFAULT_PROB_FLOOR",
    "DEFAULT_NORMALIZATION_TOLERANCE",
    # Exceptions
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
