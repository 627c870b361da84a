"""Tests for gate constructors and the state-vector kernels."""

import math
import time

import numpy as np
import pytest

from ladderlcu.core import gates, statevec
from ladderlcu.core.constants import ShiftDirection
from ladderlcu.core.exceptions import (
    DimensionMismatchError,
    NonUnitaryError,
    RegisterOverlapError,
    ValidationError,
)
from ladderlcu.types import (
    ControlSpec,
    PermutationPhaseUnitary,
    RegisterSlice,
    SingleQubitGate,
    StateVector,
)

SQRT_HALF = 1.0 / math.sqrt(2.0)
ANCILLA = RegisterSlice((0, 1))
WORK = RegisterSlice((2, 3))


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


def random_state(rng: np.random.Generator, num_qubits: int) -> StateVector:
    amps = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return statevec.from_amplitudes(num_qubits, amps / np.linalg.norm(amps))


def dense_on(n: int, gate: np.ndarray, target: int) -> np.ndarray:
    """Kronecker expansion of a single-qubit gate, qubit 0 leftmost."""
    factors = [gate if q == target else np.eye(2) for q in range(n)]
    result = factors[0]
    for f in factors[1:]:
        result = np.kron(result, f)
    return result


class TestSingleQubitGates:
    def test_hadamard_on_zero(self) -> None:
        s = gates.apply_single(statevec.basis_state(1, 0), gates.hadamard(), 0)
        assert s.amplitudes == pytest.approx([SQRT_HALF, SQRT_HALF])

    def test_hadamard_on_one(self) -> None:
        s = gates.apply_single(statevec.basis_state(1, 1), gates.hadamard(), 0)
        assert s.amplitudes == pytest.approx([SQRT_HALF, -SQRT_HALF])

    def test_hadamard_is_involution(self) -> None:
        h = gates.hadamard().matrix
        np.testing.assert_allclose(h @ h, np.eye(2), atol=1e-14)

    def test_coin_zero_is_identity(self) -> None:
        np.testing.assert_allclose(gates.coin_gate(0).matrix, np.eye(2), atol=1e-15)

    def test_coin_45(self) -> None:
        expected = SQRT_HALF * np.array([[1, -1], [1, 1]])
        np.testing.assert_allclose(gates.coin_gate(45).matrix, expected, atol=1e-15)

    def test_coin_90(self) -> None:
        np.testing.assert_allclose(gates.coin_gate(90).matrix, [[0, -1], [1, 0]], atol=1e-15)

    def test_paulis_are_unitary(self) -> None:
        for g in (gates.identity(), gates.pauli_x(), gates.pauli_y(), gates.pauli_z()):
            np.testing.assert_allclose(g.matrix @ g.matrix.conj().T, np.eye(2), atol=1e-15)

    def test_rejects_non_unitary(self) -> None:
        with pytest.raises(NonUnitaryError, match="unitarity"):
            SingleQubitGate(np.array([[1, 0], [0, 0.5]]), name="bad")

    def test_rejects_wrong_shape(self) -> None:
        with pytest.raises(DimensionMismatchError):
            SingleQubitGate(np.eye(3))


class TestApplySingle:
    def test_target_qubit_zero_is_msb(self) -> None:
        s = gates.apply_single(statevec.basis_state(2, 0), gates.hadamard(), 0)
        assert s.amplitudes == pytest.approx([SQRT_HALF, 0, SQRT_HALF, 0])

    def test_target_qubit_one(self) -> None:
        s = gates.apply_single(statevec.basis_state(2, 0), gates.hadamard(), 1)
        assert s.amplitudes == pytest.approx([SQRT_HALF, SQRT_HALF, 0, 0])

    def test_prepare_stage_on_ancilla(self) -> None:
        s = statevec.basis_state(2, 0)
        for q in (0, 1):
            s = gates.apply_single(s, gates.hadamard(), q)
        assert s.amplitudes == pytest.approx([0.5] * 4)

    def test_matches_dense_kronecker(self, rng: np.random.Generator) -> None:
        s = random_state(rng, 4)
        g = gates.coin_gate(30)
        for target in range(4):
            out = gates.apply_single(s, g, target)
            expected = dense_on(4, g.matrix, target) @ s.amplitudes
            np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)

    def test_preserves_norm(self, rng: np.random.Generator) -> None:
        s = random_state(rng, 5)
        out = gates.apply_single(s, gates.pauli_y(), 3)
        assert statevec.norm(out) == pytest.approx(1.0, abs=1e-12)

    def test_target_out_of_range(self) -> None:
        with pytest.raises(ValidationError, match="out of range"):
            gates.apply_single(statevec.basis_state(2, 0), gates.hadamard(), 2)


class TestControlledSingle:
    def test_cnot_fires_on_one(self) -> None:
        cnot = ControlSpec(RegisterSlice((0,)), "1")
        s = gates.apply_controlled_single(statevec.basis_state(2, 0b10), gates.pauli_x(), 1, cnot)
        assert s.amplitudes.tolist() == [0, 0, 0, 1]

    def test_cnot_idle_on_zero(self) -> None:
        cnot = ControlSpec(RegisterSlice((0,)), "1")
        s = gates.apply_controlled_single(statevec.basis_state(2, 0b01), gates.pauli_x(), 1, cnot)
        assert s.amplitudes.tolist() == [0, 1, 0, 0]

    def test_target_in_controls(self) -> None:
        with pytest.raises(RegisterOverlapError):
            gates.apply_controlled_single(
                statevec.basis_state(2, 0),
                gates.pauli_x(),
                0,
                ControlSpec(RegisterSlice((0,)), "1"),
            )

    def test_pattern_length_checked(self) -> None:
        with pytest.raises(ValidationError, match="does not match"):
            ControlSpec(RegisterSlice((0, 1)), "1")


class TestCyclicShift:
    """Index remaps for U0..U3."""

    def test_up_wraps_with_plus(self) -> None:
        u = gates.cyclic_shift(4, ShiftDirection.UP, 1)
        out = gates.apply_perm_unitary(statevec.basis_state(2, 3), u, RegisterSlice.span(0, 2))
        assert out.amplitudes.tolist() == [1, 0, 0, 0]

    def test_up_wraps_with_minus(self) -> None:
        u = gates.cyclic_shift(4, ShiftDirection.UP, -1)
        out = gates.apply_perm_unitary(statevec.basis_state(2, 3), u, RegisterSlice.span(0, 2))
        assert out.amplitudes.tolist() == [-1, 0, 0, 0]

    def test_down_interior(self) -> None:
        u = gates.cyclic_shift(4, ShiftDirection.DOWN, 1)
        out = gates.apply_perm_unitary(statevec.basis_state(2, 2), u, RegisterSlice.span(0, 2))
        assert out.amplitudes.tolist() == [0, 1, 0, 0]

    def test_accepts_string_direction(self) -> None:
        u = gates.cyclic_shift(2, "down")  # type: ignore[arg-type]
        assert u.target_of.tolist() == [1, 0]

    def test_dim_too_small(self) -> None:
        with pytest.raises(ValidationError, match="dim >= 2"):
            gates.cyclic_shift(1, ShiftDirection.UP)

    def test_bad_wrap_sign(self) -> None:
        with pytest.raises(ValidationError, match="wrap_sign"):
            gates.cyclic_shift(4, ShiftDirection.UP, 2)

    @pytest.mark.parametrize("dim", [2, 4, 8, 16])
    def test_dense_expansions_are_unitary(self, dim: int) -> None:
        for u in gates.lcu_unitaries(dim):
            m = gates.to_dense(u)
            np.testing.assert_allclose(m.conj().T @ m, np.eye(dim), atol=1e-12)

    def test_rejects_non_permutation(self) -> None:
        with pytest.raises(ValidationError, match="permutation"):
            PermutationPhaseUnitary(2, np.array([0, 0]), np.ones(2))

    def test_rejects_non_unit_phase(self) -> None:
        with pytest.raises(NonUnitaryError):
            PermutationPhaseUnitary(2, np.array([1, 0]), np.array([1, 0.5]))


class TestApplyPermUnitary:
    """Controlled and uncontrolled remaps on a register of a larger state."""

    def test_controlled_u0_wraps(self) -> None:
        u0 = gates.lcu_unitaries(4)[0]
        s = statevec.tensor(statevec.basis_state(2, 0b00), statevec.basis_state(2, 0b11))
        out = gates.apply_perm_unitary(s, u0, WORK, ControlSpec(ANCILLA, "00"))
        assert np.argmax(np.abs(out.amplitudes)) == 0b0000
        assert out.amplitudes[0] == 1

    def test_control_mismatch_leaves_state(self) -> None:
        u0 = gates.lcu_unitaries(4)[0]
        s = statevec.tensor(statevec.basis_state(2, 0b10), statevec.basis_state(2, 0b11))
        out = gates.apply_perm_unitary(s, u0, WORK, ControlSpec(ANCILLA, "00"))
        np.testing.assert_array_equal(out.amplitudes, s.amplitudes)

    def test_controlled_u1_picks_up_sign(self) -> None:
        u1 = gates.lcu_unitaries(4)[1]
        s = statevec.tensor(statevec.basis_state(2, 0b01), statevec.basis_state(2, 0b11))
        out = gates.apply_perm_unitary(s, u1, WORK, ControlSpec(ANCILLA, "01"))
        assert out.amplitudes[0b0100] == -1

    def test_matches_dense_without_control(self, rng: np.random.Generator) -> None:
        s = random_state(rng, 3)
        for u in gates.lcu_unitaries(8):
            out = gates.apply_perm_unitary(s, u, RegisterSlice.span(0, 3))
            np.testing.assert_allclose(out.amplitudes, gates.to_dense(u) @ s.amplitudes, atol=1e-12)

    def test_trailing_register_matches_kronecker(self, rng: np.random.Generator) -> None:
        s = random_state(rng, 4)
        u = gates.lcu_unitaries(4)[3]
        out = gates.apply_perm_unitary(s, u, WORK)
        expected = np.kron(np.eye(4), gates.to_dense(u)) @ s.amplitudes
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)

    def test_non_contiguous_register(self, rng: np.random.Generator) -> None:
        s = random_state(rng, 3)
        u = gates.lcu_unitaries(4)[0]
        out = gates.apply_perm_unitary(s, u, RegisterSlice((0, 2)))
        # Move qubit 2 next to qubit 0, apply, and move it back.
        tensor = s.amplitudes.reshape(2, 2, 2).transpose(0, 2, 1).reshape(4, 2)
        expected = (gates.to_dense(u) @ tensor).reshape(2, 2, 2).transpose(0, 2, 1).reshape(-1)
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)

    def test_preserves_norm(self, rng: np.random.Generator) -> None:
        s = random_state(rng, 6)
        out = gates.apply_perm_unitary(
            s, gates.lcu_unitaries(16)[2], RegisterSlice.span(2, 6), ControlSpec(ANCILLA, "10")
        )
        assert statevec.norm(out) == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(DimensionMismatchError):
            gates.apply_perm_unitary(
                statevec.basis_state(3, 0), gates.lcu_unitaries(8)[0], RegisterSlice.span(0, 2)
            )

    def test_overlapping_registers(self) -> None:
        with pytest.raises(RegisterOverlapError):
            gates.apply_perm_unitary(
                statevec.basis_state(4, 0),
                gates.lcu_unitaries(4)[0],
                RegisterSlice((1, 2)),
                ControlSpec(ANCILLA, "00"),
            )

    def test_twenty_qubit_shift_is_fast(self) -> None:
        n = 20
        s = statevec.basis_state(n, (1 << n) - 1)
        u = gates.cyclic_shift(1 << n, ShiftDirection.UP)
        r = RegisterSlice.span(0, n)
        gates.apply_perm_unitary(s, u, r)
        best = math.inf
        for _ in range(3):
            start = time.perf_counter()
            out = gates.apply_perm_unitary(s, u, r)
            best = min(best, time.perf_counter() - start)
        assert out.amplitudes[0] == 1
        assert best < 0.1

    def test_input_not_mutated(self) -> None:
        s = statevec.basis_state(2, 1)
        gates.apply_perm_unitary(s, gates.lcu_unitaries(4)[0], RegisterSlice.span(0, 2))
        assert s.amplitudes.tolist() == [0, 1, 0, 0]
