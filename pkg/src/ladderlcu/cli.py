"""
Command-line interface for ladderlcu.

Sub-commands::

    ladderlcu ladder --input psi.json [--mode circuit|oracle] [--kind add]
                     [--reference 00=ref.json ...] [--output report.json]
    ladderlcu qrw --output dist.csv [--walker-qubits 8] [--steps 128]
                  [--coin-angle 45] [--start 128 | --start-spec walker.json]
    ladderlcu fidelity a.json b.json [--deviation]
    ladderlcu reproduce table1|table2|fig7|fig8 [--output-dir out/]

Exit status is 0 on success, 1 on usage errors and 2 when an input fails
validation.
"""

from __future__ import annotations

import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import click
import numpy as np

from ladderlcu import __version__
from ladderlcu.core import statevec
from ladderlcu.core.constants import (
    DEFAULT_COIN_ANGLE_DEG,
    DEFAULT_PPS_POLARIZATION,
    DEFAULT_PROB_FLOOR,
    DEFAULT_WALK_START,
    DEFAULT_WALK_STEPS,
    DEFAULT_WALKER_QUBITS,
    REPORTED_FIDELITIES,
    REPORTED_PROBABILITIES,
    LadderMode,
    OperatorKind,
    Scenario,
)
from ladderlcu.core.exceptions import LadderLcuError
from ladderlcu.resources.ladder import (
    apply_operator,
    ladder_matrix,
    prepare_superposition_input,
)
from ladderlcu.resources.qrw import make_walk_config, parity_mass, superposed_walker
from ladderlcu.serialization import (
    load_operand,
    load_state,
    report_to_dict,
    write_distribution_csv,
    write_report,
)
from ladderlcu.simulator import Simulator
from ladderlcu.types import DensityMatrix, RunReport, StateVector, WalkConfig

__all__ = ["cli", "main", "run"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2

_SQRT_HALF = 1.0 / math.sqrt(2.0)


def _as_density(sim: Simulator, operand: Union[StateVector, DensityMatrix]) -> DensityMatrix:
    if isinstance(operand, StateVector):
        return sim.density.from_pure(operand)
    return sim.density.from_entries(operand.entries)


def _parse_references(
    ctx: click.Context, param: click.Parameter, values: Tuple[str, ...]
) -> Dict[str, Path]:
    references: Dict[str, Path] = {}
    for item in values:
        pattern, sep, path = item.partition("=")
        if not sep or pattern not in ("00", "01", "10", "11") or not path:
            raise click.BadParameter(f"expected PATTERN=PATH with a two-bit pattern, got {item!r}")
        references[pattern] = Path(path)
    return references


def _emit(report: RunReport, output: Optional[Path]) -> None:
    if output is None:
        click.echo(json.dumps(report_to_dict(report), indent=2))
    else:
        write_report(report, output)
        click.echo(f"Report written to {output}")


# ---------------------------------------------------------------------------
# Report builders shared by the commands and the reproduction scenarios
# ---------------------------------------------------------------------------


def _circuit_report(
    sim: Simulator,
    work: StateVector,
    references: Dict[str, DensityMatrix],
    config: Dict[str, Any],
    command: str = "ladder",
) -> RunReport:
    result = sim.ladder.lcu_circuit(work)
    fidelities: Dict[str, float] = {}
    undefined: List[str] = []
    for pattern, reference in sorted(references.items()):
        post = result[pattern].post_state
        if post is None:
            logger.warning("Branch %s is empty; its fidelity is undefined.", pattern)
            undefined.append(pattern)
            continue
        rho = sim.density.from_pure(post)
        fidelities[pattern] = sim.density.fidelity(rho, reference)
        fidelities[f"{pattern}/deviation"] = sim.density.deviation_fidelity(rho, reference)
    details: Dict[str, Any] = {"oracle_deviation": sim.ladder.lcu_vs_oracle_check(work)}
    if undefined:
        details["undefined_fidelities"] = undefined
    return RunReport(
        command=command,
        config=config,
        version=__version__,
        outcomes=[result[p] for p in sorted(result.branches)],
        fidelities=fidelities,
        details=details,
    )


def _oracle_report(work: StateVector, kind: OperatorKind, config: Dict[str, Any]) -> RunReport:
    vec = apply_operator(ladder_matrix(work.dim, kind), work)
    return RunReport(
        command="ladder",
        config=config,
        version=__version__,
        details={
            "kind": kind.value,
            "result": [[float(z.real), float(z.imag)] for z in vec],
            "norm": float(np.linalg.norm(vec)),
        },
    )


def _walk_report(
    sim: Simulator,
    cfg: WalkConfig,
    center: int,
    csv_path: Path,
    config: Dict[str, Any],
    command: str = "qrw",
) -> RunReport:
    superposed = np.count_nonzero(cfg.initial_walker.amplitudes) > 1
    dist = sim.walk.run_walk_superposed(cfg) if superposed else sim.walk.run_walk(cfg)
    write_distribution_csv(dist, csv_path)
    stats = sim.walk.walk_statistics(dist, center)
    return RunReport(
        command=command,
        config=config,
        version=__version__,
        details={
            "distribution_csv": str(csv_path),
            "statistics": {"center": center, "mean": stats.mean, "stddev": stats.stddev},
            "even_mass": parity_mass(dist, 0),
            "odd_mass": parity_mass(dist, 1),
        },
    )


def _print_outcomes(report: RunReport) -> None:
    click.echo("pattern  probability")
    for record in report.outcomes:
        click.echo(f"{record.outcome_bits:>7}  {record.probability:.12f}")
    for name, value in report.fidelities.items():
        click.echo(f"fidelity[{name}] = {value:.12f}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="ladderlcu")
@click.option("-v", "--verbose", is_flag=True, help="Log circuit stages at DEBUG level.")
@click.option(
    "--prob-floor",
    type=float,
    default=DEFAULT_PROB_FLOOR,
    show_default=True,
    help="Outcomes below this probability carry no post-state.",
)
@click.pass_context
def cli(ctx: click.Context, verbose: bool, prob_floor: float) -> None:
    """Exact simulation of LCU addition/subtraction operators and quantum walks."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        ctx.obj = Simulator(prob_floor=prob_floor)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--prob-floor") from exc


@cli.command()
@click.option(
    "--input",
    "input_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option(
    "--mode",
    type=click.Choice([m.value for m in LadderMode]),
    default=LadderMode.CIRCUIT.value,
    show_default=True,
)
@click.option(
    "--kind",
    type=click.Choice([k.value for k in OperatorKind]),
    default=OperatorKind.ADD.value,
    show_default=True,
    help="Operator applied in oracle mode.",
)
@click.option(
    "--reference",
    multiple=True,
    callback=_parse_references,
    metavar="PATTERN=PATH",
    help="Reference state or density file for a branch (circuit mode).",
)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_obj
def ladder(
    sim: Simulator,
    input_path: Path,
    mode: str,
    kind: str,
    reference: Dict[str, Path],
    output: Optional[Path],
) -> None:
    """Apply the ladder operators to a work state."""
    work = load_state(input_path, sim.config.normalization_tolerance)
    config: Dict[str, Any] = {"input": str(input_path), "mode": mode}
    if LadderMode(mode) is LadderMode.ORACLE:
        config["kind"] = kind
        _emit(_oracle_report(work, OperatorKind(kind), config), output)
        return

    references = {
        pattern: _as_density(sim, load_operand(path, sim.config.normalization_tolerance))
        for pattern, path in reference.items()
    }
    config["references"] = {p: str(path) for p, path in reference.items()}
    report = _circuit_report(sim, work, references, config)
    _emit(report, output)
    if output is not None:
        _print_outcomes(report)


@cli.command()
@click.option(
    "--walker-qubits", type=click.IntRange(min=1), default=DEFAULT_WALKER_QUBITS, show_default=True
)
@click.option("--steps", type=click.IntRange(min=0), default=DEFAULT_WALK_STEPS, show_default=True)
@click.option(
    "--coin-angle", type=float, default=DEFAULT_COIN_ANGLE_DEG, show_default=True, help="Degrees."
)
@click.option(
    "--start", type=int, default=DEFAULT_WALK_START, show_default=True, help="Start site."
)
@click.option(
    "--start-spec",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Walker state file; overrides --start.",
)
@click.option("--coin-init", type=click.Choice(["0", "1"]), default="0", show_default=True)
@click.option("--center", type=int, default=None, help="Reference site for statistics.")
@click.option("--output", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--report", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_obj
def qrw(
    sim: Simulator,
    walker_qubits: int,
    steps: int,
    coin_angle: float,
    start: int,
    start_spec: Optional[Path],
    coin_init: str,
    center: Optional[int],
    output: Path,
    report: Optional[Path],
) -> None:
    """Run a coined quantum walk and write its position distribution as CSV."""
    if start_spec is not None:
        cfg = WalkConfig(
            walker_qubits=walker_qubits,
            steps=steps,
            coin_angle_deg=coin_angle,
            initial_walker=load_state(start_spec, sim.config.normalization_tolerance),
            initial_coin=statevec.basis_state(1, int(coin_init)),
        )
    else:
        cfg = make_walk_config(walker_qubits, steps, coin_angle, start, int(coin_init))
    config: Dict[str, Any] = {
        "walker_qubits": walker_qubits,
        "steps": steps,
        "coin_angle_deg": coin_angle,
        "start": str(start_spec) if start_spec is not None else start,
        "coin_init": int(coin_init),
    }
    run_report = _walk_report(sim, cfg, start if center is None else center, output, config)
    click.echo(f"Distribution written to {output}")
    if report is not None:
        write_report(run_report, report)
        click.echo(f"Report written to {report}")
    stats = run_report.details["statistics"]
    click.echo(f"mean displacement = {stats['mean']:.12f}, stddev = {stats['stddev']:.12f}")


@cli.command()
@click.argument("a", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("b", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--deviation", is_flag=True, help="Compare deviation matrices instead.")
@click.pass_obj
def fidelity(sim: Simulator, a: Path, b: Path, deviation: bool) -> None:
    """Print the normalised-overlap fidelity of two state or density files."""
    tol = sim.config.normalization_tolerance
    rho = _as_density(sim, load_operand(a, tol))
    sigma = _as_density(sim, load_operand(b, tol))
    measure = sim.density.deviation_fidelity if deviation else sim.density.fidelity
    value = measure(rho, sigma)
    click.echo(f"{value:.12f}")


@cli.command()
@click.argument("scenario", type=click.Choice([s.value for s in Scenario]))
@click.option(
    "--output-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("."),
    show_default=True,
)
@click.pass_obj
def reproduce(sim: Simulator, scenario: str, output_dir: Path) -> None:
    """Run a named scenario at its ideal (noise-free) limit."""
    chosen = Scenario(scenario)
    output_dir.mkdir(parents=True, exist_ok=True)
    if chosen in (Scenario.TABLE1, Scenario.TABLE2):
        _reproduce_table(sim, chosen, output_dir)
    else:
        _reproduce_walk(sim, chosen, output_dir)


def _table_inputs(scenario: Scenario) -> Tuple[StateVector, Dict[str, StateVector]]:
    if scenario is Scenario.TABLE1:
        return statevec.basis_state(2, 1), {
            "00": statevec.basis_state(2, 2),
            "10": statevec.basis_state(2, 0),
        }
    return prepare_superposition_input(), {
        "00": statevec.from_amplitudes(2, [0, 0, _SQRT_HALF, _SQRT_HALF]),
        "10": statevec.from_amplitudes(2, [_SQRT_HALF, _SQRT_HALF, 0, 0]),
    }


def _reproduce_table(sim: Simulator, scenario: Scenario, output_dir: Path) -> None:
    work, targets = _table_inputs(scenario)
    references = {p: sim.density.from_pure(s) for p, s in targets.items()}
    config = {"scenario": scenario.value, "pps_polarization": DEFAULT_PPS_POLARIZATION}
    report = _circuit_report(sim, work, references, config, command="reproduce")

    for pattern, reference in references.items():
        post = report.outcomes[int(pattern, 2)].post_state
        if post is not None:
            rho = sim.density.from_pure(post)
            round_trip = sim.density.tomography_round_trip(rho)
            report.details[f"tomography_round_trip/{pattern}"] = round_trip
        _, conditional = sim.density.pps_experiment(work, DEFAULT_PPS_POLARIZATION, pattern)
        report.details[f"pps/{pattern}/fidelity"] = sim.density.fidelity(conditional, reference)
        report.details[f"pps/{pattern}/deviation_fidelity"] = sim.density.deviation_fidelity(
            conditional, reference
        )

    path = output_dir / f"{scenario.value}.json"
    write_report(report, path)

    probs = {r.outcome_bits: r.probability for r in report.outcomes}
    ideal = {"00": probs["00"], "10": probs["10"], "01+11": probs["01"] + probs["11"]}
    reported = REPORTED_PROBABILITIES[scenario]
    click.echo(f"{scenario.value}: ideal simulation vs reported NMR experiment")
    click.echo("outcome     ideal  experiment")
    for key, value in ideal.items():
        click.echo(f"{key:>7}  {value:8.4%}  {reported[key]:8.2%}")
    for pattern, measured in REPORTED_FIDELITIES[scenario].items():
        click.echo(f"fidelity[{pattern}]  {report.fidelities[pattern]:.6f}  {measured:.3f}")
    click.echo(f"Report written to {path}")


def _reproduce_walk(sim: Simulator, scenario: Scenario, output_dir: Path) -> None:
    w, steps, phi, start = (
        DEFAULT_WALKER_QUBITS,
        DEFAULT_WALK_STEPS,
        DEFAULT_COIN_ANGLE_DEG,
        DEFAULT_WALK_START,
    )
    if scenario is Scenario.FIG7:
        cfg = make_walk_config(w, steps, phi, start)
    else:
        cfg = WalkConfig(w, steps, phi, superposed_walker(w, start), statevec.basis_state(1, 0))
    config = {"scenario": scenario.value, "walker_qubits": w, "steps": steps, "coin_angle_deg": phi}
    csv_path = output_dir / f"{scenario.value}.csv"
    report = _walk_report(sim, cfg, start, csv_path, config, command="reproduce")
    write_report(report, output_dir / f"{scenario.value}.json")
    click.echo(f"{scenario.value}: distribution written to {csv_path}")
    click.echo(f"even-site mass = {report.details['even_mass']:.12f}")
    click.echo(f"odd-site mass  = {report.details['odd_mass']:.12f}")


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit status instead of exiting."""
    try:
        rv = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="ladderlcu",
            standalone_mode=False,
        )
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except LadderLcuError as exc:
        click.echo(f"Error: {exc.message}", err=True)
        return EXIT_VALIDATION
    return rv if isinstance(rv, int) else EXIT_OK


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())
