"""
Resource class for the coined discrete-time quantum walk on a cycle.

The walker occupies the leading ``w`` qubits and the coin the last one.  One
step tosses the coin with ``S_c(phi)`` and then shifts the walker: up by one
when the coin reads 1, down by one when it reads 0.  The shifts are the
cyclic ``U0`` / ``U2`` permutations used by the LCU select stage, so the walk
never leaves the ``2**w`` sites.  The coin is never measured between steps.
"""

from __future__ import annotations

import logging
import math
from typing import List

import numpy as np

from ladderlcu.core import gates, statevec
from ladderlcu.core.constants import ShiftDirection
from ladderlcu.core.exceptions import ValidationError
from ladderlcu.types import (
    ControlSpec,
    PositionDistribution,
    RegisterSlice,
    SimulatorConfig,
    StateVector,
    WalkConfig,
    WalkStatistics,
)

__all__ = ["WalkResource", "make_walk_config", "superposed_walker", "parity_mass"]

logger = logging.getLogger(__name__)


def make_walk_config(
    walker_qubits: int,
    steps: int,
    coin_angle_deg: float,
    start: int,
    coin: int = 0,
) -> WalkConfig:
    """Walk configuration starting from the basis site *start* and coin ``|coin>``."""
    return WalkConfig(
        walker_qubits=walker_qubits,
        steps=steps,
        coin_angle_deg=coin_angle_deg,
        initial_walker=statevec.basis_state(walker_qubits, start),
        initial_coin=statevec.basis_state(1, coin),
    )


def superposed_walker(walker_qubits: int, start: int) -> StateVector:
    """``(|start> + |start+1 mod 2**w>)/sqrt 2``."""
    size = 1 << walker_qubits
    if not 0 <= start < size:
        raise ValidationError(f"Start site {start} out of range for {walker_qubits} qubits.")
    amps = np.zeros(size, dtype=np.complex128)
    amps[start] = amps[(start + 1) % size] = 1.0 / math.sqrt(2.0)
    return StateVector(walker_qubits, amps)


def parity_mass(d: PositionDistribution, parity: int) -> float:
    """Total probability on sites with ``x % 2 == parity``."""
    return float(np.sum(d.probabilities[parity % 2 :: 2]))


class _Stepper:
    """Precomputed gates and registers for one walker size and coin angle."""

    def __init__(self, walker_qubits: int, coin_angle_deg: float) -> None:
        dim = 1 << walker_qubits
        self.coin_qubit = walker_qubits
        self.coin = gates.coin_gate(coin_angle_deg)
        self.walker = RegisterSlice.span(0, walker_qubits)
        self.up = gates.cyclic_shift(dim, ShiftDirection.UP, 1)
        self.down = gates.cyclic_shift(dim, ShiftDirection.DOWN, 1)
        coin_register = RegisterSlice((walker_qubits,))
        self.on_heads = ControlSpec(coin_register, "1")
        self.on_tails = ControlSpec(coin_register, "0")

    def __call__(self, s: StateVector) -> StateVector:
        s = gates.apply_single(s, self.coin, self.coin_qubit)
        s = gates.apply_perm_unitary(s, self.up, self.walker, self.on_heads)
        return gates.apply_perm_unitary(s, self.down, self.walker, self.on_tails)


class WalkResource:
    """Resource for quantum-walk runs and their statistics.

    Parameters:
        config: Shared :class:`~ladderlcu.types.SimulatorConfig`.
    """

    def __init__(self, config: SimulatorConfig) -> None:
        self._config = config

    def walk_step(self, s: StateVector, coin_angle_deg: float) -> StateVector:
        """One coin toss followed by the coin-controlled cyclic shift.

        Raises:
            ValidationError: When *s* has fewer than two qubits.
        """
        if s.num_qubits < 2:
            raise ValidationError(
                f"A walk state needs walker and coin qubits; got {s.num_qubits} qubit(s)."
            )
        return _Stepper(s.num_qubits - 1, coin_angle_deg)(s)

    def run_walk(self, cfg: WalkConfig) -> PositionDistribution:
        """Evolve walker (x) coin for ``cfg.steps`` steps and trace out the coin."""
        state = self._evolve(cfg)
        probs = statevec.marginal_distribution(state, RegisterSlice.span(0, cfg.walker_qubits))
        return PositionDistribution(probs)

    def run_walk_superposed(self, cfg: WalkConfig) -> PositionDistribution:
        """Run a walk whose walker starts in ``(|x0> + |x0+1>)/sqrt 2``.

        The even and odd components occupy disjoint parity sectors at every
        step, so the result is the average of the two single-site walks, the
        second one shifted by one site.
        """
        support = np.flatnonzero(np.abs(cfg.initial_walker.amplitudes) > 0)
        logger.debug("Superposed walk from sites %s", support.tolist())
        return self.run_walk(cfg)

    def walk_trajectory(self, cfg: WalkConfig) -> List[float]:
        """Total probability after each step, for unitarity monitoring."""
        stepper = _Stepper(cfg.walker_qubits, cfg.coin_angle_deg)
        state = statevec.tensor(cfg.initial_walker, cfg.initial_coin)
        norms: List[float] = []
        for _ in range(cfg.steps):
            state = stepper(state)
            norms.append(statevec.norm(state) ** 2)
        return norms

    @staticmethod
    def walk_statistics(d: PositionDistribution, center: int) -> WalkStatistics:
        """Mean and standard deviation of the displacement from *center*.

        Positions are unwrapped into ``(-2**(w-1), 2**(w-1)]`` around
        *center*, which is unambiguous while the spread stays well inside
        half the cycle.
        """
        size = d.size
        half = size // 2
        displacement = (np.arange(size) - center) % size
        displacement = np.where(displacement > half, displacement - size, displacement)
        p = d.probabilities
        mean = float(np.dot(p, displacement))
        variance = float(np.dot(p, (displacement - mean) ** 2))
        return WalkStatistics(mean=mean, stddev=math.sqrt(max(variance, 0.0)))

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------

    @staticmethod
    def _evolve(cfg: WalkConfig) -> StateVector:
        stepper = _Stepper(cfg.walker_qubits, cfg.coin_angle_deg)
        state = statevec.tensor(cfg.initial_walker, cfg.initial_coin)
        for step in range(cfg.steps):
            state = stepper(state)
            if step % 32 == 31:
                logger.debug("Walk step %d/%d", step + 1, cfg.steps)
        return state
