"""
ladderlcu: main entry point for the ladder-operator simulations.

Example::

    from ladderlcu import Simulator, basis_state

    sim = Simulator()

    # Addition and subtraction by post-selection on |01>
    result = sim.ladder.lcu_circuit(basis_state(2, 1))
    result["00"].post_state      # |10>
    result.probability("10")     # 0.5

    # Quantum walk from site 128
    cfg = make_walk_config(8, 128, 45.0, start=128)
    dist = sim.walk.run_walk(cfg)
"""

from __future__ import annotations

from ladderlcu.core.constants import (
    DEFAULT_NORMALIZATION_TOLERANCE,
    DEFAULT_PROB_FLOOR,
)
from ladderlcu.resources.densmat import DensityResource
from ladderlcu.resources.ladder import LadderResource
from ladderlcu.resources.qrw import WalkResource
from ladderlcu.types import SimulatorConfig

__all__ = ["Simulator"]


class Simulator:
    """Facade over the ladder, density-matrix and walk resources.

    Parameters:
        prob_floor: Outcomes below this probability report no post-state.
        normalization_tolerance: Accepted norm deviation for amplitude lists
            loaded from files.

    Raises:
        ValueError: When configuration parameters are invalid.

    Example::

        sim = Simulator(prob_floor=1e-12)
        sim.ladder.chain_apply(basis_state(2, 1), ["add", "sub"])
    """

    def __init__(
        self,
        *,
        prob_floor: float = DEFAULT_PROB_FLOOR,
        normalization_tolerance: float = DEFAULT_NORMALIZATION_TOLERANCE,
    ) -> None:
        self._validate_config(
            prob_floor=prob_floor,
            normalization_tolerance=normalization_tolerance,
        )
        self.config = SimulatorConfig(
            prob_floor=prob_floor,
            normalization_tolerance=normalization_tolerance,
        )

        # Resources share one configuration
        self.ladder = LadderResource(self.config)
        """Resource for the LCU circuit and ladder matrices."""

        self.density = DensityResource(self.config, self.ladder)
        """Resource for fidelities, PPS and tomography emulation."""

        self.walk = WalkResource(self.config)
        """Resource for discrete-time quantum walks."""

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    @staticmethod
    def _validate_config(*, prob_floor: float, normalization_tolerance: float) -> None:
        """Validate numerical configuration.

        Raises:
            ValueError: When any configuration parameter is invalid.
        """
        if not isinstance(prob_floor, (int, float)) or not 0.0 <= prob_floor < 1.0:
            raise ValueError(
                "Invalid configuration: prob_floor must be a number in [0, 1)."
            )

        if (
            not isinstance(normalization_tolerance, (int, float))
            or not 0.0 < normalization_tolerance < 1.0
        ):
            raise ValueError(
                "Invalid configuration: normalization_tolerance must be a number in (0, 1)."
            )

    def __repr__(self) -> str:
        return (
            f"<Simulator(prob_floor={self.config.prob_floor!r}, "
            f"normalization_tolerance={self.config.normalization_tolerance!r})>"
        )
