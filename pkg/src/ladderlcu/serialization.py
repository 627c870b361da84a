"""
File formats: JSON state specs, density-matrix files and run reports, plus
CSV position distributions.

State specs come in two shapes::

    {"kind": "basis", "num_qubits": 2, "index": 1}
    {"kind": "amplitudes", "num_qubits": 1, "amps": [[0.6, 0.0], [0.0, 0.8]]}

Density files use ``{"kind": "density", "dim": d, "entries": [[[re, im], ...], ...]}``.
JSON floats are written with ``repr`` and CSV floats with 17 significant
digits, both of which round-trip IEEE doubles exactly.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

import numpy as np

from ladderlcu.core import statevec
from ladderlcu.core.constants import DEFAULT_NORMALIZATION_TOLERANCE
from ladderlcu.core.exceptions import SpecFormatError
from ladderlcu.types import (
    ComplexArray,
    DensityMatrix,
    OutcomeRecord,
    PositionDistribution,
    RunReport,
    StateVector,
)

__all__ = [
    "state_from_spec",
    "state_to_spec",
    "density_from_spec",
    "density_to_spec",
    "load_json",
    "load_state",
    "load_operand",
    "report_to_dict",
    "write_report",
    "write_distribution_csv",
    "read_distribution_csv",
]

PathLike = Union[str, Path]


def _pairs(values: ComplexArray) -> List[List[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


def _complex(pairs: Any, what: str) -> ComplexArray:
    try:
        arr = np.asarray(pairs, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise SpecFormatError(f"{what} must be a list of [re, im] pairs.") from exc
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise SpecFormatError(f"{what} must be a list of [re, im] pairs.")
    return arr[..., 0] + 1j * arr[..., 1]


def _require(data: Mapping[str, Any], key: str) -> Any:
    if key not in data:
        raise SpecFormatError(f"Missing required field {key!r}.")
    return data[key]


def _integer(data: Mapping[str, Any], key: str) -> int:
    value = _require(data, key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecFormatError(f"Field {key!r} must be an integer.")
    return value


# ---------------------------------------------------------------------------
# State specs
# ---------------------------------------------------------------------------


def state_from_spec(
    data: Mapping[str, Any],
    tolerance: float = DEFAULT_NORMALIZATION_TOLERANCE,
) -> StateVector:
    """Build a normalised state from a parsed StateSpec.

    Raises:
        SpecFormatError: When the state spec is structurally invalid.
        ValidationError: When the index or norm violates its precondition.
    """
    if not isinstance(data, Mapping):
        raise SpecFormatError("A state spec must be a JSON object.")
    kind = _require(data, "kind")
    num_qubits = _integer(data, "num_qubits")
    if num_qubits < 1:
        raise SpecFormatError("num_qubits must be at least 1.")
    if kind == "basis":
        return statevec.basis_state(num_qubits, _integer(data, "index"))
    if kind == "amplitudes":
        amps = _complex(_require(data, "amps"), "amps")
        if amps.ndim != 1:
            raise SpecFormatError("amps must be a flat list of [re, im] pairs.")
        return statevec.from_amplitudes(num_qubits, amps, True, tolerance=tolerance)
    raise SpecFormatError(f"Unknown state spec kind: {kind!r}")


def state_to_spec(s: StateVector) -> Dict[str, Any]:
    """Amplitude-form StateSpec of *s*."""
    return {"kind": "amplitudes", "num_qubits": s.num_qubits, "amps": _pairs(s.amplitudes)}


def density_from_spec(data: Mapping[str, Any]) -> DensityMatrix:
    """Build a density matrix from ``{"kind": "density", ...}``."""
    if _require(data, "kind") != "density":
        raise SpecFormatError("Density spec must have kind 'density'.")
    dim = _integer(data, "dim")
    entries = _complex(_require(data, "entries"), "entries")
    if entries.shape != (dim, dim):
        raise SpecFormatError(f"entries must be a {dim}x{dim} grid of [re, im] pairs.")
    return DensityMatrix(dim, entries)


def density_to_spec(rho: DensityMatrix) -> Dict[str, Any]:
    return {
        "kind": "density",
        "dim": rho.dim,
        "entries": [_pairs(row) for row in rho.entries],
    }


def load_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path}: invalid JSON ({exc.msg}).") from exc
    except OSError as exc:
        raise SpecFormatError(f"{path}: cannot read file ({exc.strerror}).") from exc


def load_state(path: PathLike, tolerance: float = DEFAULT_NORMALIZATION_TOLERANCE) -> StateVector:
    return state_from_spec(load_json(path), tolerance)


def load_operand(
    path: PathLike,
    tolerance: float = DEFAULT_NORMALIZATION_TOLERANCE,
) -> Union[StateVector, DensityMatrix]:
    """Load either a state spec or a density file, dispatching on ``kind``."""
    data = load_json(path)
    if isinstance(data, Mapping) and data.get("kind") == "density":
        return density_from_spec(data)
    return state_from_spec(data, tolerance)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _outcome_to_dict(record: OutcomeRecord) -> Dict[str, Any]:
    return {
        "pattern": record.outcome_bits,
        "probability": record.probability,
        "post_state": None if record.post_state is None else state_to_spec(record.post_state),
    }


def report_to_dict(report: RunReport) -> Dict[str, Any]:
    return {
        "tool": "ladderlcu",
        "version": report.version,
        "command": report.command,
        "config": report.config,
        "outcomes": [_outcome_to_dict(o) for o in report.outcomes],
        "fidelities": report.fidelities,
        "details": report.details,
    }


def write_report(report: RunReport, path: PathLike) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------


def write_distribution_csv(d: PositionDistribution, path: PathLike) -> None:
    """Write ``position,probability`` rows, one per site."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["position", "probability"])
        for x, p in enumerate(d.probabilities):
            writer.writerow([x, format(float(p), ".17g")])


def read_distribution_csv(path: PathLike) -> PositionDistribution:
    """Parse a file written by :func:`write_distribution_csv`.

    Raises:
        SpecFormatError: When the header or rows are malformed.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["position", "probability"]:
        raise SpecFormatError(f"{path}: expected header 'position,probability'.")
    try:
        pairs = [(int(x), float(p)) for x, p in rows[1:]]
    except ValueError as exc:
        raise SpecFormatError(f"{path}: malformed row ({exc}).") from exc
    if [x for x, _ in pairs] != list(range(len(pairs))):
        raise SpecFormatError(f"{path}: positions must run 0, 1, 2, ... in order.")
    return PositionDistribution(np.array([p for _, p in pairs]))
