"""
Type definitions for ladderlcu.

Uses frozen :mod:`dataclasses` for every value type.  Each type validates its
invariants on construction, stores numpy arrays read-only, and is therefore
safe to share between threads.  All types are fully annotated for static
analysis with mypy / pyright.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ladderlcu.core.constants import (
    BRANCH_OPERATORS,
    DEFAULT_NORMALIZATION_TOLERANCE,
    DEFAULT_PROB_FLOOR,
    DEFAULT_UNITARITY_TOLERANCE,
    HERMITIAN_TOLERANCE,
    NORM_TOLERANCE,
    OperatorKind,
)
from ladderlcu.core.exceptions import (
    DimensionMismatchError,
    NonUnitaryError,
    ValidationError,
)

__all__ = [
    "ComplexArray",
    "RealArray",
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
]

ComplexArray = NDArray[np.complex128]
RealArray = NDArray[np.float64]


def _frozen(array: NDArray[Any]) -> NDArray[Any]:
    array.setflags(write=False)
    return array


def _require_finite(array: NDArray[Any], what: str) -> None:
    if not np.isfinite(array).all():
        raise ValidationError(f"{what} contains NaN or infinite entries.")


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimulatorConfig:
    """Numerical configuration shared by all resources.

    Attributes:
        prob_floor: Outcomes with probability below this value report no
            post-measurement state.
        normalization_tolerance: Accepted norm deviation for user-supplied
            amplitude lists before exact renormalisation.
    """

    prob_floor: float = DEFAULT_PROB_FLOOR
    normalization_tolerance: float = DEFAULT_NORMALIZATION_TOLERANCE


# ---------------------------------------------------------------------------
# State vectors and measurement
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes of an n-qubit register in the computational basis.

    Qubit 0 is the most significant bit of the basis index, so the ket
    ``|b0 b1 ... b(n-1)>`` sits at index ``sum(b_k * 2**(n-1-k))``.

    Attributes:
        num_qubits: Register size, at least 1.
        amplitudes: Complex amplitudes of length ``2**num_qubits`` (read-only).
        normalized: ``True`` for unit-norm states.  Unnormalised branch
            outputs carry ``False`` and may have any norm up to 1.
    """

    num_qubits: int
    amplitudes: ComplexArray = field(repr=False)
    normalized: bool = True

    def __post_init__(self) -> None:
        if not isinstance(self.num_qubits, (int, np.integer)) or self.num_qubits < 1:
            raise ValidationError(
                f"num_qubits must be a positive integer. Received: {self.num_qubits!r}"
            )
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape != (1 << int(self.num_qubits),):
            raise DimensionMismatchError(
                f"Expected {1 << int(self.num_qubits)} amplitudes for "
                f"{self.num_qubits} qubits, got {amps.size}."
            )
        _require_finite(amps, "State amplitudes")
        norm = float(np.linalg.norm(amps))
        if self.normalized and abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValidationError(f"State tagged normalized has norm {norm!r}.")
        if not self.normalized and norm > 1.0 + NORM_TOLERANCE:
            raise ValidationError(f"Unnormalized branch state has norm {norm!r} > 1.")
        object.__setattr__(self, "num_qubits", int(self.num_qubits))
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        """Hilbert-space dimension ``2**num_qubits``."""
        return 1 << self.num_qubits

    def __len__(self) -> int:
        return self.dim


@dataclass(frozen=True)
class RegisterSlice:
    """Ordered selection of distinct qubits.

    The first listed qubit supplies the most significant bit of the register
    sub-index.
    """

    qubit_indices: Tuple[int, ...]

    def __post_init__(self) -> None:
        indices = tuple(int(q) for q in self.qubit_indices)
        if not indices:
            raise ValidationError("A register must contain at least one qubit.")
        if any(q < 0 for q in indices):
            raise ValidationError(f"Qubit indices must be non-negative: {indices}")
        if len(set(indices)) != len(indices):
            raise ValidationError(f"Qubit indices must be distinct: {indices}")
        object.__setattr__(self, "qubit_indices", indices)

    @classmethod
    def span(cls, start: int, stop: int) -> "RegisterSlice":
        """Contiguous register ``start, start+1, ..., stop-1``."""
        return cls(tuple(range(start, stop)))

    @property
    def size(self) -> int:
        return len(self.qubit_indices)

    def validate_for(self, num_qubits: int) -> None:
        """Raise :class:`ValidationError` unless every index is below *num_qubits*."""
        if max(self.qubit_indices) >= num_qubits:
            raise ValidationError(
                f"Register {self.qubit_indices} out of range for {num_qubits} qubits."
            )

    def disjoint(self, other: "RegisterSlice") -> bool:
        return not set(self.qubit_indices) & set(other.qubit_indices)


@dataclass(frozen=True)
class OutcomeRecord:
    """One branch of a projective measurement of a register.

    Attributes:
        outcome_bits: Bit string read on the measured register.
        probability: Probability of the outcome.
        post_state: Normalised state of the unmeasured qubits, or ``None``
            when the probability is below the floor or no qubit is left.
        branch: Unnormalised restriction of the input to this outcome, or
            ``None`` when every qubit was measured.
    """

    outcome_bits: str
    probability: float
    post_state: Optional[StateVector] = None
    branch: Optional[StateVector] = None

    def __post_init__(self) -> None:
        if not -NORM_TOLERANCE <= self.probability <= 1.0 + NORM_TOLERANCE:
            raise ValidationError(f"Probability out of range: {self.probability!r}")
        if self.post_state is not None and not self.post_state.normalized:
            raise ValidationError("post_state must be a normalized state.")


# ---------------------------------------------------------------------------
# Gates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SingleQubitGate:
    """A 2x2 unitary, rejected eagerly when not unitary within 1e-12."""

    matrix: ComplexArray
    name: str = ""

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise DimensionMismatchError(f"Single-qubit gate must be 2x2, got {m.shape}.")
        deviation = float(np.max(np.abs(m @ m.conj().T - np.eye(2))))
        if not deviation <= DEFAULT_UNITARITY_TOLERANCE:
            raise NonUnitaryError(
                f"Gate {self.name or '<unnamed>'} deviates from unitarity by {deviation:.3e}."
            )
        object.__setattr__(self, "matrix", _frozen(m))


@dataclass(frozen=True, eq=False)
class PermutationPhaseUnitary:
    """Sparse unitary ``|target_of[i]><i| * phase_of[i]`` summed over ``i``.

    Attributes:
        dim: Dimension of the space acted on, at least 2.
        target_of: Destination basis index for each source index.
        phase_of: Unit-modulus phase picked up by each source index.
    """

    dim: int
    target_of: NDArray[np.int64]
    phase_of: ComplexArray
    name: str = ""

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise ValidationError(f"dim must be at least 2. Received: {self.dim}")
        target = np.array(self.target_of, dtype=np.int64).reshape(-1)
        phase = np.array(self.phase_of, dtype=np.complex128).reshape(-1)
        if target.shape != (self.dim,) or phase.shape != (self.dim,):
            raise DimensionMismatchError(
                f"target_of and phase_of must both have length {self.dim}."
            )
        if not np.array_equal(np.sort(target), np.arange(self.dim)):
            raise ValidationError("target_of is not a permutation of range(dim).")
        if not float(np.max(np.abs(np.abs(phase) - 1.0))) <= DEFAULT_UNITARITY_TOLERANCE:
            raise NonUnitaryError("Every phase_of entry must have unit modulus.")
        object.__setattr__(self, "target_of", _frozen(target))
        object.__setattr__(self, "phase_of", _frozen(phase))


@dataclass(frozen=True)
class ControlSpec:
    """Control register and the bit pattern that activates an operation."""

    control_qubits: RegisterSlice
    control_pattern: str

    def __post_init__(self) -> None:
        if len(self.control_pattern) != self.control_qubits.size:
            raise ValidationError(
                f"Control pattern {self.control_pattern!r} does not match "
                f"{self.control_qubits.size} control qubits."
            )
        if set(self.control_pattern) - {"0", "1"}:
            raise ValidationError(f"Control pattern must be a bit string: {self.control_pattern!r}")


# ---------------------------------------------------------------------------
# Ladder operators and LCU results
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LadderOperator:
    """Dense truncated ladder operator of dimension ``N + 1``."""

    dim: int
    kind: OperatorKind
    matrix: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatchError(f"Operator matrix must be {self.dim}x{self.dim}.")
        object.__setattr__(self, "kind", OperatorKind(self.kind))
        object.__setattr__(self, "matrix", _frozen(m))


@dataclass(frozen=True)
class LcuResult:
    """The four ancilla branches of one LCU circuit run.

    ``branches`` is keyed by ancilla pattern: ``00`` carries K†, ``01`` J†,
    ``10`` K and ``11`` J.
    """

    branches: Dict[str, OutcomeRecord]

    def __post_init__(self) -> None:
        if set(self.branches) != set(BRANCH_OPERATORS):
            raise ValidationError(
                f"LCU result needs branches {sorted(BRANCH_OPERATORS)}, "
                f"got {sorted(self.branches)}."
            )

    def __getitem__(self, pattern: str) -> OutcomeRecord:
        return self.branches[pattern]

    def probability(self, pattern: str) -> float:
        return self.branches[pattern].probability

    @property
    def total_probability(self) -> float:
        return sum(record.probability for record in self.branches.values())


@dataclass(frozen=True)
class ChainResult:
    """Outcome of a post-selected sequence of ladder steps.

    Attributes:
        state: Normalised work state after the last step.
        probability: Product of the post-selected branch probabilities.
        step_probabilities: Probability of each individual step.
    """

    state: StateVector
    probability: float
    step_probabilities: Tuple[float, ...] = ()


# ---------------------------------------------------------------------------
# Density matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian matrix with unit trace, or zero trace for deviation matrices.

    Positivity is checked by the operations that ingest external data, not on
    construction, because tomography output may be slightly unphysical.
    """

    dim: int
    entries: ComplexArray = field(repr=False)
    deviation: bool = False

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=np.complex128)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"Density matrix must be {self.dim}x{self.dim}, got {m.shape}."
            )
        _require_finite(m, "Density matrix")
        if float(np.max(np.abs(m - m.conj().T))) > HERMITIAN_TOLERANCE:
            raise ValidationError("Density matrix is not Hermitian.")
        trace = complex(np.trace(m))
        expected = 0.0 if self.deviation else 1.0
        if abs(trace - expected) > HERMITIAN_TOLERANCE:
            raise ValidationError(f"Density matrix trace {trace!r} != {expected}.")
        object.__setattr__(self, "entries", _frozen(m))

    @property
    def num_qubits(self) -> int:
        k = self.dim.bit_length() - 1
        if 1 << k != self.dim:
            raise DimensionMismatchError(f"Dimension {self.dim} is not a power of two.")
        return k

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])


@dataclass(frozen=True, eq=False)
class PauliExpectations:
    """Expectation values Tr(rho P) over all k-qubit Pauli strings.

    Strings are ordered lexicographically over ``I, X, Y, Z`` with qubit 0
    leftmost, so index 0 is the all-identity string.
    """

    num_qubits: int
    values: RealArray = field(repr=False)

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=np.float64).reshape(-1)
        if v.shape != (4**self.num_qubits,):
            raise DimensionMismatchError(
                f"Expected {4 ** self.num_qubits} expectation values, got {v.size}."
            )
        if not abs(v[0] - 1.0) <= HERMITIAN_TOLERANCE:
            raise ValidationError(f"Identity expectation must be 1, got {v[0]!r}.")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def labels(self) -> List[str]:
        return ["".join(p) for p in itertools.product("IXYZ", repeat=self.num_qubits)]

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.labels, (float(x) for x in self.values)))


# ---------------------------------------------------------------------------
# Quantum walks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of a coined discrete-time walk on a cycle of ``2**w`` sites.

    Attributes:
        walker_qubits: Walker register size ``w``.
        steps: Number of coin-and-shift steps.
        coin_angle_deg: Rotation angle of the coin, in degrees.
        initial_walker: Normalised walker state over ``w`` qubits.
        initial_coin: Normalised single-qubit coin state.
    """

    walker_qubits: int
    steps: int
    coin_angle_deg: float
    initial_walker: StateVector
    initial_coin: StateVector

    def __post_init__(self) -> None:
        if self.walker_qubits < 1:
            raise ValidationError("walker_qubits must be at least 1.")
        if self.steps < 0:
            raise ValidationError(f"steps must be non-negative. Received: {self.steps}")
        if self.initial_walker.num_qubits != self.walker_qubits:
            raise DimensionMismatchError(
                f"initial_walker has {self.initial_walker.num_qubits} qubits, "
                f"expected {self.walker_qubits}."
            )
        if self.initial_coin.num_qubits != 1:
            raise DimensionMismatchError("initial_coin must be a single-qubit state.")
        if not (self.initial_walker.normalized and self.initial_coin.normalized):
            raise ValidationError("Walk initial states must be normalized.")


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    """Walker position probabilities with the coin traced out."""

    probabilities: RealArray = field(repr=False)

    def __post_init__(self) -> None:
        p = np.array(self.probabilities, dtype=np.float64).reshape(-1)
        size = p.size
        if size < 2 or size & (size - 1):
            raise DimensionMismatchError(f"Distribution length {size} is not a power of two.")
        _require_finite(p, "Distribution")
        if float(np.min(p)) < -1e-14:
            raise ValidationError("Distribution has negative entries.")
        if abs(float(np.sum(p)) - 1.0) > HERMITIAN_TOLERANCE:
            raise ValidationError(f"Distribution sums to {float(np.sum(p))!r}, not 1.")
        object.__setattr__(self, "probabilities", _frozen(p))

    @property
    def size(self) -> int:
        return int(self.probabilities.size)

    @property
    def walker_qubits(self) -> int:
        return self.size.bit_length() - 1


@dataclass(frozen=True)
class WalkStatistics:
    """Cyclic-aware moments of the displacement from a reference site."""

    mean: float
    stddev: float


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunReport:
    """Everything one CLI command produced, ready for JSON export.

    Attributes:
        command: Sub-command name.
        config: Echo of the effective parameters.
        outcomes: Measurement table; may be empty for commands without one.
        fidelities: Named fidelity values.
        details: Command-specific extra content.
        version: Package version that produced the report.
    """

    command: str
    config: Dict[str, Any]
    version: str
    outcomes: List[OutcomeRecord] = field(default_factory=list)
    fidelities: Dict[str, float] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.outcomes:
            total = sum(o.probability for o in self.outcomes)
            if not abs(total - 1.0) <= HERMITIAN_TOLERANCE:
                raise ValidationError(f"Outcome probabilities sum to {total!r}, not 1.")
