"""
Resource class for the ladder operators and their LCU circuit.

The addition and subtraction operators are non-unitary, so the circuit
realises them probabilistically: a two-qubit ancilla is prepared with
``V = H (x) H``, selects one of the cyclic shifts ``U0..U3`` on the work
register, is unprepared with ``W = I (x) H`` and is then measured.  Reading
``00`` leaves ``K†|psi>`` on the work register, ``10`` leaves ``K|psi>``,
and ``01`` / ``11`` carry the boundary terms ``J†`` / ``J``.  Every branch
vector is ``(1/sqrt 2) Op|psi>``, which the oracle check verifies against
the dense matrices built by :func:`ladder_matrix`.
"""

from __future__ import annotations

import logging
import math
from typing import List, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike

from ladderlcu.core import gates, statevec
from ladderlcu.core.constants import (
    ANCILLA_QUBITS,
    BRANCH_OPERATORS,
    CHAIN_BRANCHES,
    ChainStep,
    OperatorKind,
)
from ladderlcu.core.exceptions import (
    DimensionMismatchError,
    ValidationError,
    ZeroProbabilityError,
)
from ladderlcu.types import (
    ChainResult,
    ComplexArray,
    ControlSpec,
    LadderOperator,
    LcuResult,
    RegisterSlice,
    SimulatorConfig,
    StateVector,
)

__all__ = [
    "LadderResource",
    "ladder_matrix",
    "apply_operator",
    "branch_operator",
    "prepare_superposition_input",
]

logger = logging.getLogger(__name__)

_SELECT_PATTERNS = ("00", "01", "10", "11")


def ladder_matrix(dim: int, kind: Union[OperatorKind, str]) -> LadderOperator:
    """Dense truncated operator of dimension ``dim = N + 1``.

    Raises:
        ValidationError: When ``dim < 2`` or *kind* is unknown.
    """
    if dim < 2:
        raise ValidationError(f"Operator dimension must be at least 2. Received: {dim}")
    try:
        kind = OperatorKind(kind)
    except ValueError as exc:
        raise ValidationError(f"Unknown operator kind: {kind!r}") from exc

    m = np.zeros((dim, dim), dtype=np.complex128)
    if kind is OperatorKind.ADD:
        m = np.eye(dim, k=-1, dtype=np.complex128)
    elif kind is OperatorKind.SUB:
        m = np.eye(dim, k=1, dtype=np.complex128)
    elif kind is OperatorKind.ADD_BOUNDARY:
        m[0, dim - 1] = 1.0
    elif kind is OperatorKind.SUB_BOUNDARY:
        m[dim - 1, 0] = 1.0
    elif kind is OperatorKind.BOSONIC_CREATE:
        m = np.diag(np.sqrt(np.arange(1, dim)), k=-1).astype(np.complex128)
    else:
        m = np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(np.complex128)
    return LadderOperator(dim=dim, kind=kind, matrix=m)


def apply_operator(op: LadderOperator, psi: Union[StateVector, ArrayLike]) -> ComplexArray:
    """Plain matrix-vector product ``op |psi>``; the result is not renormalised.

    Raises:
        DimensionMismatchError: When the vector length differs from ``op.dim``.
    """
    vec = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi, dtype=np.complex128)
    if vec.shape != (op.dim,):
        raise DimensionMismatchError(
            f"Operator of dimension {op.dim} cannot act on a vector of shape {vec.shape}."
        )
    result: ComplexArray = op.matrix @ vec
    return result


def branch_operator(pattern: str) -> OperatorKind:
    """Operator realised on the work register when the ancilla reads *pattern*."""
    try:
        return BRANCH_OPERATORS[pattern]
    except KeyError as exc:
        raise ValidationError(f"Unknown ancilla pattern: {pattern!r}") from exc


def prepare_superposition_input() -> StateVector:
    """``(|01> + |10>)/sqrt 2`` built from ``|00>`` with H, X and a CNOT."""
    s = statevec.basis_state(2, 0)
    s = gates.apply_single(s, gates.hadamard(), 0)
    s = gates.apply_single(s, gates.pauli_x(), 1)
    cnot = ControlSpec(RegisterSlice((0,)), "1")
    return gates.apply_controlled_single(s, gates.pauli_x(), 1, cnot)


class LadderResource:
    """Resource for running the LCU circuit and checking it against the matrices.

    Parameters:
        config: Shared :class:`~ladderlcu.types.SimulatorConfig`.
    """

    def __init__(self, config: SimulatorConfig) -> None:
        self._config = config

    # ------------------------------------------------------------------
    # Circuit
    # ------------------------------------------------------------------

    def lcu_circuit(self, work: StateVector) -> LcuResult:
        """Run prepare, select, unprepare and measure the ancilla.

        Args:
            work: Work register state; the operators act on all ``2**w``
                basis states.

        Returns:
            An :class:`~ladderlcu.types.LcuResult` with the four branches.

        Example::

            result = simulator.ladder.lcu_circuit(basis_state(2, 1))
            result["00"].post_state   # |10>
            result.probability("10")  # 0.5
        """
        composite = statevec.tensor(statevec.basis_state(len(ANCILLA_QUBITS), 0), work)
        final = self._apply_stages(composite)
        records = statevec.measure_register(
            final, RegisterSlice(ANCILLA_QUBITS), self._config.prob_floor
        )
        result = LcuResult({record.outcome_bits: record for record in records})
        logger.debug(
            "LCU on %d work qubits: p00=%.15g p01=%.15g p10=%.15g p11=%.15g",
            work.num_qubits,
            *(result.probability(p) for p in _SELECT_PATTERNS),
        )
        return result

    def lcu_vs_oracle_check(self, work: StateVector) -> float:
        """Largest elementwise gap between each branch and ``(1/sqrt 2) Op|work>``."""
        result = self.lcu_circuit(work)
        dim = work.dim
        deviation = 0.0
        for pattern, record in result.branches.items():
            expected = apply_operator(ladder_matrix(dim, branch_operator(pattern)), work)
            expected = expected / math.sqrt(2.0)
            actual = record.branch.amplitudes if record.branch is not None else 0.0
            gap = float(np.max(np.abs(actual - expected)))
            deviation = max(deviation, gap)
        return deviation

    def chain_apply(
        self,
        work: StateVector,
        program: Sequence[Union[ChainStep, str]],
    ) -> ChainResult:
        """Apply a sequence of post-selected additions and subtractions.

        Each step reruns the circuit on the previous post-state and keeps the
        ``00`` branch for ``add`` or the ``10`` branch for ``sub``.

        Raises:
            ValidationError: When *program* is empty or names an unknown step.
            ZeroProbabilityError: When a step selects an empty branch.
        """
        if not program:
            raise ValidationError("program must contain at least one step.")
        try:
            steps = [ChainStep(step) for step in program]
        except ValueError as exc:
            raise ValidationError(f"Unknown chain step in {list(program)!r}") from exc

        state = work
        total = 1.0
        step_probs: List[float] = []
        for i, step in enumerate(steps):
            pattern = CHAIN_BRANCHES[step]
            record = self.lcu_circuit(state)[pattern]
            if record.post_state is None:
                raise ZeroProbabilityError(
                    f"Step {i} ({step.value}) selects branch {pattern} "
                    f"with probability {record.probability:.3e}.",
                    step=i,
                    pattern=pattern,
                )
            state = record.post_state
            total *= record.probability
            step_probs.append(record.probability)
        return ChainResult(state=state, probability=total, step_probabilities=tuple(step_probs))

    def circuit_unitary(self, work_qubits: int) -> ComplexArray:
        """Dense matrix of the full circuit on ancilla (x) work, before measurement.

        Built column by column from the kernels, so it is only practical for
        small registers.
        """
        if work_qubits < 1:
            raise ValidationError(f"work_qubits must be at least 1. Received: {work_qubits}")
        n = work_qubits + len(ANCILLA_QUBITS)
        columns = [
            self._apply_stages(statevec.basis_state(n, j)).amplitudes for j in range(1 << n)
        ]
        return np.column_stack(columns)

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------

    @staticmethod
    def _apply_stages(composite: StateVector) -> StateVector:
        """V, the four controlled shifts, then W on an ancilla (x) work state."""
        n = composite.num_qubits
        ancilla = RegisterSlice(ANCILLA_QUBITS)
        work = RegisterSlice.span(len(ANCILLA_QUBITS), n)
        h = gates.hadamard()

        s = composite
        for q in ANCILLA_QUBITS:
            s = gates.apply_single(s, h, q)
        for pattern, u in zip(_SELECT_PATTERNS, gates.lcu_unitaries(1 << work.size)):
            s = gates.apply_perm_unitary(s, u, work, ControlSpec(ancilla, pattern))
        return gates.apply_single(s, h, ANCILLA_QUBITS[1])
