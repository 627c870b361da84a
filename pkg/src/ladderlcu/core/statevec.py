"""
State-vector kernels: construction, inner products, composition, and
projective measurement of registers.

All functions are pure.  They return fresh :class:`~ladderlcu.types.StateVector`
values and never mutate their inputs.  Register extraction works by viewing
the amplitude array as an ``n``-axis tensor with one axis per qubit, moving
the measured axes to the front, and flattening back into a
``(2**|r|, 2**rest)`` matrix whose rows are the measurement branches.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from ladderlcu.core.constants import (
    DEFAULT_NORMALIZATION_TOLERANCE,
    DEFAULT_PROB_FLOOR,
    NORM_TOLERANCE,
)
from ladderlcu.core.exceptions import (
    DimensionMismatchError,
    ValidationError,
    ZeroProbabilityError,
)
from ladderlcu.types import (
    ComplexArray,
    OutcomeRecord,
    RealArray,
    RegisterSlice,
    StateVector,
)

__all__ = [
    "basis_state",
    "from_amplitudes",
    "inner_product",
    "tensor",
    "measure_register",
    "marginal_distribution",
    "probabilities",
    "norm",
    "normalize",
    "global_phase",
    "bits_of",
    "register",
]

logger = logging.getLogger(__name__)


def bits_of(index: int, width: int) -> str:
    """Big-endian bit string of *index* with *width* digits."""
    return format(index, f"0{width}b")


def basis_state(num_qubits: int, index: int) -> StateVector:
    """Computational basis ket ``|index>`` on *num_qubits* qubits.

    Raises:
        ValidationError: When *index* is outside ``[0, 2**num_qubits)``.
    """
    if num_qubits < 1:
        raise ValidationError(f"num_qubits must be at least 1. Received: {num_qubits}")
    dim = 1 << num_qubits
    if not 0 <= index < dim:
        raise ValidationError(f"Basis index {index} out of range for {num_qubits} qubits.")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def from_amplitudes(
    num_qubits: int,
    amps: ArrayLike,
    require_normalized: bool = True,
    *,
    tolerance: float = DEFAULT_NORMALIZATION_TOLERANCE,
) -> StateVector:
    """Build a state from an explicit amplitude list.

    With *require_normalized* the norm must lie within *tolerance* of 1 and
    the amplitudes are then rescaled to unit norm exactly.  Without it the
    result is tagged normalized only when it already is.

    Raises:
        DimensionMismatchError: When the length is not ``2**num_qubits``.
        ValidationError: When the norm check fails.
    """
    vec = np.asarray(amps, dtype=np.complex128).reshape(-1)
    if vec.size != 1 << num_qubits:
        raise DimensionMismatchError(
            f"Expected {1 << num_qubits} amplitudes for {num_qubits} qubits, got {vec.size}."
        )
    if not np.isfinite(vec).all():
        raise ValidationError("Amplitudes contain NaN or infinite entries.")
    length = float(np.linalg.norm(vec))
    if require_normalized:
        if not abs(length - 1.0) <= tolerance:
            raise ValidationError(
                f"Amplitudes have norm {length!r}; expected 1 within {tolerance}."
            )
        return StateVector(num_qubits, vec / length)
    return StateVector(num_qubits, vec, normalized=abs(length - 1.0) <= NORM_TOLERANCE)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugating *a*."""
    if a.num_qubits != b.num_qubits:
        raise DimensionMismatchError(
            f"Cannot take inner product of {a.num_qubits}- and {b.num_qubits}-qubit states."
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """``|a>|b>`` with *a* on the more significant qubits."""
    return StateVector(
        a.num_qubits + b.num_qubits,
        np.kron(a.amplitudes, b.amplitudes),
        normalized=a.normalized and b.normalized,
    )


def probabilities(s: StateVector) -> RealArray:
    """Born probabilities ``|amplitude|**2`` for every basis state."""
    return np.abs(s.amplitudes) ** 2


def norm(s: StateVector) -> float:
    return float(np.linalg.norm(s.amplitudes))


def normalize(s: StateVector) -> StateVector:
    """Unit-norm copy of *s*.

    Raises:
        ZeroProbabilityError: When *s* is the zero vector.
    """
    length = norm(s)
    if length == 0.0:
        raise ZeroProbabilityError("Cannot normalize the zero vector.")
    return StateVector(s.num_qubits, s.amplitudes / length)


def global_phase(s: StateVector, theta: float) -> StateVector:
    """``exp(i theta) |s>``."""
    return StateVector(s.num_qubits, s.amplitudes * np.exp(1j * theta), normalized=s.normalized)


# ---------------------------------------------------------------------------
# Measurement
# ---------------------------------------------------------------------------


def _split(s: StateVector, r: RegisterSlice) -> Tuple[ComplexArray, Tuple[int, ...]]:
    r.validate_for(s.num_qubits)
    measured = r.qubit_indices
    rest = tuple(q for q in range(s.num_qubits) if q not in measured)
    block = (
        s.amplitudes.reshape((2,) * s.num_qubits)
        .transpose(measured + rest)
        .reshape(1 << len(measured), -1)
    )
    return block, rest


def measure_register(
    s: StateVector,
    r: RegisterSlice,
    prob_floor: float = DEFAULT_PROB_FLOOR,
) -> List[OutcomeRecord]:
    """Exact projective measurement of register *r*.

    Returns one record per bit pattern of *r*, in ascending pattern order.
    Each record carries the outcome probability, the renormalised state of the
    remaining qubits (``None`` below *prob_floor* or when nothing remains),
    and the raw unnormalised branch.
    """
    block, rest = _split(s, r)
    branch_probs = np.sum(np.abs(block) ** 2, axis=1)
    records: List[OutcomeRecord] = []
    for k, row in enumerate(block):
        p = float(branch_probs[k])
        post = None
        branch = None
        if rest:
            branch = StateVector(len(rest), row, normalized=False)
            if p >= prob_floor:
                post = StateVector(len(rest), row / np.sqrt(p))
        records.append(
            OutcomeRecord(
                outcome_bits=bits_of(k, r.size),
                probability=p,
                post_state=post,
                branch=branch,
            )
        )
    logger.debug(
        "Measured qubits %s: %s",
        r.qubit_indices,
        {rec.outcome_bits: round(rec.probability, 15) for rec in records},
    )
    return records


def marginal_distribution(s: StateVector, r: RegisterSlice) -> RealArray:
    """Probability of each bit pattern on *r*, indexed by pattern value."""
    block, _ = _split(s, r)
    result: RealArray = np.sum(np.abs(block) ** 2, axis=1)
    return result


def register(indices: Sequence[int]) -> RegisterSlice:
    """Shorthand for ``RegisterSlice(tuple(indices))``."""
    return RegisterSlice(tuple(indices))
