"""
Unitary building blocks and their state-vector kernels.

Single-qubit gates are applied by contracting the 2x2 matrix against one axis
of the amplitude array viewed as ``(2**target, 2, 2**rest)``.  The cyclic
shifts that make up the LCU select stage are stored as a permutation plus a
per-source phase and applied as an index remap; control conditions mask basis
indices against the control pattern.  No dense controlled matrix is ever built.
"""

from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ladderlcu.core.constants import ShiftDirection
from ladderlcu.core.exceptions import (
    DimensionMismatchError,
    RegisterOverlapError,
    ValidationError,
)
from ladderlcu.types import (
    ComplexArray,
    ControlSpec,
    PermutationPhaseUnitary,
    RegisterSlice,
    SingleQubitGate,
    StateVector,
)

__all__ = [
    "identity",
    "hadamard",
    "pauli_x",
    "pauli_y",
    "pauli_z",
    "coin_gate",
    "cyclic_shift",
    "lcu_unitaries",
    "to_dense",
    "apply_single",
    "apply_controlled_single",
    "apply_perm_unitary",
]

logger = logging.getLogger(__name__)

_SQRT_HALF = 1.0 / math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Gate constructors
# ---------------------------------------------------------------------------


def identity() -> SingleQubitGate:
    return SingleQubitGate(np.eye(2), name="I")


def hadamard() -> SingleQubitGate:
    """``(1/sqrt 2) [[1, 1], [1, -1]]``."""
    return SingleQubitGate(_SQRT_HALF * np.array([[1, 1], [1, -1]]), name="H")


def pauli_x() -> SingleQubitGate:
    return SingleQubitGate(np.array([[0, 1], [1, 0]]), name="X")


def pauli_y() -> SingleQubitGate:
    return SingleQubitGate(np.array([[0, -1j], [1j, 0]]), name="Y")


def pauli_z() -> SingleQubitGate:
    return SingleQubitGate(np.array([[1, 0], [0, -1]]), name="Z")


def coin_gate(phi: float) -> SingleQubitGate:
    """Real rotation ``[[cos phi, -sin phi], [sin phi, cos phi]]``, *phi* in degrees."""
    rad = math.radians(phi)
    c, s = math.cos(rad), math.sin(rad)
    return SingleQubitGate(np.array([[c, -s], [s, c]]), name=f"S_c({phi:g})")


def cyclic_shift(
    dim: int,
    direction: ShiftDirection,
    wrap_sign: int = 1,
) -> PermutationPhaseUnitary:
    """Cyclic increment or decrement on ``dim`` basis states.

    ``up`` sends ``i -> i+1`` and ``dim-1 -> 0``; ``down`` sends ``i -> i-1``
    and ``0 -> dim-1``.  Only the wrapped source picks up *wrap_sign*.

    Raises:
        ValidationError: When ``dim < 2`` or *wrap_sign* is not +1 or -1.
    """
    if dim < 2:
        raise ValidationError(f"Cyclic shift needs dim >= 2. Received: {dim}")
    if wrap_sign not in (1, -1):
        raise ValidationError(f"wrap_sign must be +1 or -1. Received: {wrap_sign}")
    direction = ShiftDirection(direction)
    source = np.arange(dim, dtype=np.int64)
    phase = np.ones(dim, dtype=np.complex128)
    if direction is ShiftDirection.UP:
        target = (source + 1) % dim
        phase[dim - 1] = wrap_sign
    else:
        target = (source - 1) % dim
        phase[0] = wrap_sign
    sign = "+" if wrap_sign > 0 else "-"
    return PermutationPhaseUnitary(dim, target, phase, name=f"shift_{direction.value}{sign}")


def lcu_unitaries(
    dim: int,
) -> Tuple[
    PermutationPhaseUnitary,
    PermutationPhaseUnitary,
    PermutationPhaseUnitary,
    PermutationPhaseUnitary,
]:
    """``(U0, U1, U2, U3)``: up/+1, up/-1, down/+1, down/-1 cyclic shifts."""
    return (
        cyclic_shift(dim, ShiftDirection.UP, 1),
        cyclic_shift(dim, ShiftDirection.UP, -1),
        cyclic_shift(dim, ShiftDirection.DOWN, 1),
        cyclic_shift(dim, ShiftDirection.DOWN, -1),
    )


def to_dense(u: PermutationPhaseUnitary) -> ComplexArray:
    """Dense ``dim x dim`` expansion of a permutation-phase unitary."""
    m = np.zeros((u.dim, u.dim), dtype=np.complex128)
    m[u.target_of, np.arange(u.dim)] = u.phase_of
    return m


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


def _check_target(s: StateVector, target: int) -> None:
    if not 0 <= target < s.num_qubits:
        raise ValidationError(f"Target qubit {target} out of range for {s.num_qubits} qubits.")


def _contract(s: StateVector, g: SingleQubitGate, target: int) -> ComplexArray:
    view = s.amplitudes.reshape(1 << target, 2, -1)
    out: ComplexArray = np.einsum("ij,ajb->aib", g.matrix, view).reshape(-1)
    return out


def _control_mask(num_qubits: int, c: ControlSpec) -> NDArray[np.bool_]:
    mask = 0
    value = 0
    for q, bit in zip(c.control_qubits.qubit_indices, c.control_pattern):
        shift = num_qubits - 1 - q
        mask |= 1 << shift
        value |= int(bit) << shift
    idx = np.arange(1 << num_qubits, dtype=np.int64)
    match: NDArray[np.bool_] = (idx & mask) == value
    return match


def apply_single(s: StateVector, g: SingleQubitGate, target: int) -> StateVector:
    """Apply *g* to qubit *target*, identity elsewhere."""
    _check_target(s, target)
    return StateVector(s.num_qubits, _contract(s, g, target), normalized=s.normalized)


def apply_controlled_single(
    s: StateVector,
    g: SingleQubitGate,
    target: int,
    c: ControlSpec,
) -> StateVector:
    """Apply *g* to *target* on the basis states whose controls match.

    A CNOT is ``apply_controlled_single(s, pauli_x(), t, ControlSpec(...,"1"))``.
    """
    _check_target(s, target)
    c.control_qubits.validate_for(s.num_qubits)
    if target in c.control_qubits.qubit_indices:
        raise RegisterOverlapError(f"Target qubit {target} is also a control.")
    # Amplitude pairs coupled by g differ only on the target, so they share controls.
    match = _control_mask(s.num_qubits, c)
    out = np.where(match, _contract(s, g, target), s.amplitudes)
    return StateVector(s.num_qubits, out, normalized=s.normalized)


def _register_indices(
    num_qubits: int, r: RegisterSlice
) -> Tuple[NDArray[np.int64], NDArray[np.int64], NDArray[np.int64]]:
    """Return ``(idx, sub, cleared)`` for every basis index.

    ``sub`` is the register sub-index and ``cleared`` the index with the
    register bits zeroed.
    """
    idx = np.arange(1 << num_qubits, dtype=np.int64)
    qubits = r.qubit_indices
    m = len(qubits)
    if qubits == tuple(range(qubits[0], qubits[0] + m)):
        low = num_qubits - qubits[-1] - 1
        field_mask = ((1 << m) - 1) << low
        return idx, (idx & field_mask) >> low, idx & ~field_mask
    sub = np.zeros_like(idx)
    cleared = idx.copy()
    for k, q in enumerate(qubits):
        shift = num_qubits - 1 - q
        bit = (idx >> shift) & 1
        sub |= bit << (m - 1 - k)
        cleared &= ~(1 << shift)
    return idx, sub, cleared


def _deposit(
    num_qubits: int, r: RegisterSlice, cleared: NDArray[np.int64], sub: NDArray[np.int64]
) -> NDArray[np.int64]:
    qubits = r.qubit_indices
    m = len(qubits)
    if qubits == tuple(range(qubits[0], qubits[0] + m)):
        result: NDArray[np.int64] = cleared | (sub << (num_qubits - qubits[-1] - 1))
        return result
    dest = cleared.copy()
    for k, q in enumerate(qubits):
        dest |= ((sub >> (m - 1 - k)) & 1) << (num_qubits - 1 - q)
    return dest


def apply_perm_unitary(
    s: StateVector,
    u: PermutationPhaseUnitary,
    r: RegisterSlice,
    c: Optional[ControlSpec] = None,
) -> StateVector:
    """Apply *u* on register *r*, optionally controlled by *c*.

    On each basis state whose control bits match (all states when *c* is
    ``None``) the register sub-index ``i`` becomes ``u.target_of[i]`` and the
    amplitude is multiplied by ``u.phase_of[i]``.

    Raises:
        DimensionMismatchError: When ``2**|r| != u.dim``.
        RegisterOverlapError: When *r* and the control register share qubits.
    """
    r.validate_for(s.num_qubits)
    if 1 << r.size != u.dim:
        raise DimensionMismatchError(
            f"Register of {r.size} qubits cannot carry a {u.dim}-dimensional unitary."
        )
    n = s.num_qubits
    amps = s.amplitudes
    out = amps.copy()

    if c is None:
        qubits = r.qubit_indices
        if qubits == tuple(range(qubits[0], qubits[0] + r.size)):
            src = amps.reshape(1 << qubits[0], u.dim, -1)
            dst = out.reshape(1 << qubits[0], u.dim, -1)
            dst[:, u.target_of, :] = src * u.phase_of[None, :, None]
            return StateVector(n, out, normalized=s.normalized)
        _, sub, cleared = _register_indices(n, r)
        out[_deposit(n, r, cleared, u.target_of[sub])] = amps * u.phase_of[sub]
        return StateVector(n, out, normalized=s.normalized)

    c.control_qubits.validate_for(n)
    if not r.disjoint(c.control_qubits):
        raise RegisterOverlapError(
            f"Target register {r.qubit_indices} overlaps controls {c.control_qubits.qubit_indices}."
        )
    match = _control_mask(n, c)
    idx, sub, cleared = _register_indices(n, r)
    sub_m = sub[match]
    dest = _deposit(n, r, cleared[match], u.target_of[sub_m])
    # Controls are untouched, so destinations of matching states also match.
    out[dest] = amps[idx[match]] * u.phase_of[sub_m]
    return StateVector(n, out, normalized=s.normalized)
