"""
Resource class for density-matrix work: the normalised-overlap fidelity,
pseudo-pure states, deviation matrices and Pauli-basis tomography.

The fidelity implemented here is ``|Tr(rho sigma)| / sqrt(Tr(rho^2) Tr(sigma^2))``.
It equals ``|<psi|phi>|^2`` on pure states but is *not* the Uhlmann fidelity
on mixed states; it is kept because it is the quantity reported for the NMR
runs.  Tomography is emulated at the level of ideal expectation values.
"""

from __future__ import annotations

import functools
import itertools
import logging
import warnings
from typing import Dict, List, Tuple

import numpy as np
from numpy.typing import NDArray

from ladderlcu.core.constants import ANCILLA_QUBITS, PSD_TOLERANCE
from ladderlcu.core.exceptions import (
    DimensionMismatchError,
    UnphysicalStateWarning,
    ValidationError,
    ZeroProbabilityError,
    ZeroPurityError,
)
from ladderlcu.resources.ladder import LadderResource
from ladderlcu.types import (
    ComplexArray,
    DensityMatrix,
    PauliExpectations,
    RegisterSlice,
    SimulatorConfig,
    StateVector,
)

__all__ = ["DensityResource", "pauli_labels", "pauli_operator"]

logger = logging.getLogger(__name__)

_PAULI: Dict[str, ComplexArray] = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _purity_floor(dim: int) -> float:
    # Squared roundoff scale of a unit-trace matrix.
    return float((dim * np.finfo(np.float64).eps) ** 2)


def pauli_labels(num_qubits: int) -> List[str]:
    """Pauli strings over ``IXYZ`` in lexicographic order, qubit 0 leftmost."""
    return ["".join(p) for p in itertools.product("IXYZ", repeat=num_qubits)]


@functools.lru_cache(maxsize=None)
def _pauli_cached(label: str) -> ComplexArray:
    matrix = functools.reduce(np.kron, (_PAULI[c] for c in label))
    matrix.setflags(write=False)
    return matrix


def pauli_operator(label: str) -> ComplexArray:
    """Dense matrix of a Pauli string; the first letter acts on qubit 0."""
    if not label or set(label) - set(_PAULI):
        raise ValidationError(f"Invalid Pauli string: {label!r}")
    return _pauli_cached(label)


def _trace_product(a: ComplexArray, b: ComplexArray) -> complex:
    return complex(np.einsum("ij,ji->", a, b))


class DensityResource:
    """Resource for density matrices, fidelities and tomography emulation.

    Parameters:
        config: Shared :class:`~ladderlcu.types.SimulatorConfig`.
        ladder: Ladder resource used to build the circuit for PPS emulation.
    """

    def __init__(self, config: SimulatorConfig, ladder: LadderResource) -> None:
        self._config = config
        self._ladder = ladder

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @staticmethod
    def from_pure(s: StateVector) -> DensityMatrix:
        """``|s><s|``.

        Raises:
            ValidationError: When *s* is not normalized.
        """
        if not s.normalized:
            raise ValidationError("from_pure requires a normalized state.")
        return DensityMatrix(s.dim, np.outer(s.amplitudes, s.amplitudes.conj()))

    @staticmethod
    def from_entries(entries: NDArray[np.complex128]) -> DensityMatrix:
        """Validate an externally supplied matrix, including positivity.

        Raises:
            ValidationError: When the matrix is not a physical density matrix.
        """
        m = np.asarray(entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"Density matrix must be square, got {m.shape}.")
        rho = DensityMatrix(m.shape[0], m)
        if rho.min_eigenvalue() < -PSD_TOLERANCE:
            raise ValidationError(
                f"Density matrix has eigenvalue {rho.min_eigenvalue():.3e} below zero."
            )
        return rho

    @staticmethod
    def pps(num_qubits: int, epsilon: float) -> DensityMatrix:
        """Pseudo-pure state ``(1-eps) I/2**n + eps |0..0><0..0|``.

        Raises:
            ValidationError: When *epsilon* is outside ``[0, 1]``.
        """
        if not 0.0 <= epsilon <= 1.0:
            raise ValidationError(f"epsilon must lie in [0, 1]. Received: {epsilon}")
        if num_qubits < 1:
            raise ValidationError(f"num_qubits must be at least 1. Received: {num_qubits}")
        dim = 1 << num_qubits
        m = np.eye(dim, dtype=np.complex128) * ((1.0 - epsilon) / dim)
        m[0, 0] += epsilon
        return DensityMatrix(dim, m)

    @staticmethod
    def deviation(rho: DensityMatrix) -> DensityMatrix:
        """Traceless part ``rho - Tr(rho)/dim * I``."""
        shift = np.trace(rho.entries) / rho.dim
        return DensityMatrix(
            rho.dim, rho.entries - shift * np.eye(rho.dim), deviation=True
        )

    # ------------------------------------------------------------------
    # Fidelity
    # ------------------------------------------------------------------

    @staticmethod
    def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
        """Normalised overlap ``|Tr(rho sigma)| / sqrt(Tr(rho^2) Tr(sigma^2))``.

        Raises:
            DimensionMismatchError: When the dimensions differ.
            ZeroPurityError: When either purity vanishes.
        """
        if rho.dim != sigma.dim:
            raise DimensionMismatchError(
                f"Cannot compare {rho.dim}- and {sigma.dim}-dimensional matrices."
            )
        purity_rho = _trace_product(rho.entries, rho.entries).real
        purity_sigma = _trace_product(sigma.entries, sigma.entries).real
        floor = _purity_floor(rho.dim)
        if purity_rho <= floor or purity_sigma <= floor:
            raise ZeroPurityError()
        overlap = abs(_trace_product(rho.entries, sigma.entries))
        return float(overlap / np.sqrt(purity_rho * purity_sigma))

    def deviation_fidelity(self, rho: DensityMatrix, sigma: DensityMatrix) -> float:
        """The same overlap fidelity evaluated on the deviation matrices."""
        return self.fidelity(self.deviation(rho), self.deviation(sigma))

    # ------------------------------------------------------------------
    # Tomography emulation
    # ------------------------------------------------------------------

    @staticmethod
    def pauli_expectations(rho: DensityMatrix) -> PauliExpectations:
        """Ideal readout ``Tr(rho P)`` for every Pauli string.

        Raises:
            DimensionMismatchError: When ``rho.dim`` is not a power of two.
            ValidationError: When *rho* is a deviation matrix.
        """
        k = rho.num_qubits
        if rho.deviation:
            raise ValidationError("Tomography readout needs a unit-trace density matrix.")
        values = np.empty(4**k, dtype=np.float64)
        for i, label in enumerate(pauli_labels(k)):
            expectation = _trace_product(rho.entries, pauli_operator(label))
            if abs(expectation.imag) > 1e-10:
                raise ValidationError(f"<{label}> has imaginary part {expectation.imag:.3e}.")
            values[i] = expectation.real
        return PauliExpectations(k, values)

    @staticmethod
    def reconstruct(e: PauliExpectations) -> DensityMatrix:
        """Linear inversion ``rho = sum_P <P> P / 2**k``.

        A reconstruction that is not positive semidefinite within tolerance
        is returned anyway with an :class:`UnphysicalStateWarning`.
        """
        dim = 1 << e.num_qubits
        m = np.zeros((dim, dim), dtype=np.complex128)
        for value, label in zip(e.values, e.labels):
            if value != 0.0:
                m += value * pauli_operator(label)
        rho = DensityMatrix(dim, m / dim)
        smallest = rho.min_eigenvalue()
        if smallest < -PSD_TOLERANCE:
            warnings.warn(
                f"Reconstructed density matrix has eigenvalue {smallest:.3e} < 0.",
                UnphysicalStateWarning,
                stacklevel=2,
            )
        return rho

    # ------------------------------------------------------------------
    # Mixed-state evolution and post-selection
    # ------------------------------------------------------------------

    @staticmethod
    def evolve(rho: DensityMatrix, unitary: ComplexArray) -> DensityMatrix:
        """``U rho U^dagger``."""
        u = np.asarray(unitary, dtype=np.complex128)
        if u.shape != (rho.dim, rho.dim):
            raise DimensionMismatchError(
                f"Unitary of shape {u.shape} cannot act on a {rho.dim}-dimensional matrix."
            )
        return DensityMatrix(rho.dim, u @ rho.entries @ u.conj().T, deviation=rho.deviation)

    def postselect(
        self,
        rho: DensityMatrix,
        qubits: RegisterSlice,
        pattern: str,
    ) -> Tuple[float, DensityMatrix]:
        """Project *qubits* onto *pattern* and return the conditional state.

        Returns:
            ``(probability, rho_conditional)`` where the conditional state
            lives on the remaining qubits in ascending order.

        Raises:
            ZeroProbabilityError: When the pattern has probability below the floor.
        """
        if rho.deviation:
            raise ValidationError("Post-selection needs a unit-trace density matrix.")
        n = rho.num_qubits
        qubits.validate_for(n)
        if len(pattern) != qubits.size or set(pattern) - {"0", "1"}:
            raise ValidationError(
                f"Pattern {pattern!r} does not fit register {qubits.qubit_indices}."
            )
        measured = qubits.qubit_indices
        rest = tuple(q for q in range(n) if q not in measured)
        if not rest:
            raise ValidationError("Post-selection must leave at least one qubit unmeasured.")

        order = measured + rest
        tensor = rho.entries.reshape((2,) * (2 * n)).transpose(order + tuple(n + q for q in order))
        m, r = 1 << len(measured), 1 << len(rest)
        k = int(pattern, 2)
        block = tensor.reshape(m, r, m, r)[k, :, k, :]
        probability = float(np.trace(block).real)
        if probability < self._config.prob_floor:
            raise ZeroProbabilityError(
                f"Pattern {pattern} has probability {probability:.3e}.", pattern=pattern
            )
        return probability, DensityMatrix(r, block / probability)

    def pps_experiment(
        self,
        work: StateVector,
        epsilon: float,
        pattern: str,
    ) -> Tuple[float, DensityMatrix]:
        """Run the LCU circuit on a pseudo-pure input and post-select *pattern*.

        The input is ``(1-eps) I/d + eps |00><00| (x) |work><work|``, which is
        what a PPS followed by a unitary preparation of *work* produces.  The
        deviation part of the conditional state is proportional to that of
        the ideal pure post-state.
        """
        if not 0.0 <= epsilon <= 1.0:
            raise ValidationError(f"epsilon must lie in [0, 1]. Received: {epsilon}")
        n = work.num_qubits + len(ANCILLA_QUBITS)
        dim = 1 << n
        pure = np.zeros(dim, dtype=np.complex128)
        pure[: work.dim] = work.amplitudes
        entries = (1.0 - epsilon) * np.eye(dim, dtype=np.complex128) / dim
        entries += epsilon * np.outer(pure, pure.conj())
        circuit = self._ladder.circuit_unitary(work.num_qubits)
        rho = self.evolve(DensityMatrix(dim, entries), circuit)
        probability, conditional = self.postselect(rho, RegisterSlice(ANCILLA_QUBITS), pattern)
        logger.debug("PPS branch %s: probability %.6g at eps=%g", pattern, probability, epsilon)
        return probability, conditional

    def tomography_round_trip(self, rho: DensityMatrix) -> float:
        """Fidelity between *rho* and its readout-then-reconstruct image."""
        return self.fidelity(rho, self.reconstruct(self.pauli_expectations(rho)))
