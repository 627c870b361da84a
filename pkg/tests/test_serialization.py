"""Tests for state specs, density files, reports and distribution CSVs."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from ladderlcu import Simulator
from ladderlcu.core import statevec
from ladderlcu.core.exceptions import DimensionMismatchError, SpecFormatError, ValidationError
from ladderlcu.resources.qrw import make_walk_config
from ladderlcu.serialization import (
    density_from_spec,
    density_to_spec,
    load_operand,
    load_state,
    read_distribution_csv,
    report_to_dict,
    state_from_spec,
    state_to_spec,
    write_distribution_csv,
    write_report,
)
from ladderlcu.types import DensityMatrix, RunReport, StateVector


class TestStateSpec:
    def test_basis_form(self) -> None:
        s = state_from_spec({"kind": "basis", "num_qubits": 2, "index": 1})
        assert s.amplitudes.tolist() == [0, 1, 0, 0]

    def test_amplitude_form(self) -> None:
        s = state_from_spec(
            {"kind": "amplitudes", "num_qubits": 1, "amps": [[0.6, 0.0], [0.0, 0.8]]}
        )
        assert s.amplitudes == pytest.approx([0.6, 0.8j])

    def test_round_trip(self) -> None:
        h = 1 / math.sqrt(2)
        original = statevec.from_amplitudes(2, [0, h, 1j * h, 0])
        restored = state_from_spec(json.loads(json.dumps(state_to_spec(original))))
        np.testing.assert_allclose(restored.amplitudes, original.amplitudes, atol=1e-15)

    def test_unknown_kind(self) -> None:
        with pytest.raises(SpecFormatError, match="Unknown state spec kind"):
            state_from_spec({"kind": "ghz", "num_qubits": 2})

    def test_missing_field(self) -> None:
        with pytest.raises(SpecFormatError, match="'index'"):
            state_from_spec({"kind": "basis", "num_qubits": 2})

    def test_non_integer_qubits(self) -> None:
        with pytest.raises(SpecFormatError, match="integer"):
            state_from_spec({"kind": "basis", "num_qubits": "2", "index": 0})

    def test_malformed_pairs(self) -> None:
        with pytest.raises(SpecFormatError, match=r"\[re, im\]"):
            state_from_spec({"kind": "amplitudes", "num_qubits": 1, "amps": [1, 0]})

    def test_wrong_length(self) -> None:
        with pytest.raises(DimensionMismatchError):
            state_from_spec({"kind": "amplitudes", "num_qubits": 2, "amps": [[1, 0], [0, 0]]})

    def test_unnormalized(self) -> None:
        with pytest.raises(ValidationError, match="norm"):
            state_from_spec({"kind": "amplitudes", "num_qubits": 1, "amps": [[1, 0], [1, 0]]})

    def test_nan_literal_rejected(self, tmp_path: Path) -> None:
        path = tmp_path / "nan.json"
        path.write_text('{"kind": "amplitudes", "num_qubits": 1, "amps": [[NaN, 0], [1, 0]]}')
        with pytest.raises(ValidationError, match="NaN or infinite"):
            load_state(path)

    def test_non_finite_density_rejected(self) -> None:
        entries = [[[math.nan, 0], [0, 0]], [[0, 0], [1, 0]]]
        with pytest.raises(ValidationError, match="NaN or infinite"):
            density_from_spec({"kind": "density", "dim": 2, "entries": entries})

    def test_not_an_object(self) -> None:
        with pytest.raises(SpecFormatError, match="JSON object"):
            state_from_spec([1, 2])  # type: ignore[arg-type]


class TestFiles:
    def test_density_round_trip(self) -> None:
        rho = DensityMatrix(2, np.array([[0.75, 0.25j], [-0.25j, 0.25]]))
        restored = density_from_spec(json.loads(json.dumps(density_to_spec(rho))))
        np.testing.assert_array_equal(restored.entries, rho.entries)

    def test_density_shape_checked(self) -> None:
        with pytest.raises(SpecFormatError, match="2x2"):
            density_from_spec({"kind": "density", "dim": 2, "entries": [[[1, 0]]]})

    def test_load_operand_dispatches(self, tmp_path: Path) -> None:
        state_file = tmp_path / "psi.json"
        state_file.write_text(json.dumps({"kind": "basis", "num_qubits": 1, "index": 0}))
        density_file = tmp_path / "rho.json"
        entries = [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]
        density_file.write_text(json.dumps({"kind": "density", "dim": 2, "entries": entries}))
        assert isinstance(load_operand(state_file), StateVector)
        assert isinstance(load_operand(density_file), DensityMatrix)

    def test_invalid_json(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(SpecFormatError, match="invalid JSON"):
            load_state(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(SpecFormatError, match="cannot read"):
            load_state(tmp_path / "absent.json")


class TestReports:
    def test_report_fields(self, tmp_path: Path) -> None:
        result = Simulator().ladder.lcu_circuit(statevec.basis_state(2, 1))
        report = RunReport(
            command="ladder",
            config={"mode": "circuit"},
            version="0.1.0",
            outcomes=[result[p] for p in ("00", "01", "10", "11")],
            fidelities={"00": 1.0},
        )
        path = tmp_path / "out" / "report.json"
        write_report(report, path)
        data = json.loads(path.read_text())

        assert data["tool"] == "ladderlcu"
        assert data["version"] == "0.1.0"
        assert [o["pattern"] for o in data["outcomes"]] == ["00", "01", "10", "11"]
        assert data["outcomes"][0]["probability"] == pytest.approx(0.5)
        assert data["outcomes"][1]["post_state"] is None
        assert data["outcomes"][0]["post_state"]["kind"] == "amplitudes"
        assert data == report_to_dict(report)

    def test_outcomes_must_sum_to_one(self) -> None:
        result = Simulator().ladder.lcu_circuit(statevec.basis_state(2, 1))
        with pytest.raises(ValidationError, match="sum to"):
            RunReport(command="ladder", config={}, version="0", outcomes=[result["00"]])


class TestDistributionCsv:
    def test_round_trip_is_exact(self, tmp_path: Path) -> None:
        dist = Simulator().walk.run_walk(make_walk_config(4, 7, 45.0, 8))
        path = tmp_path / "dist.csv"
        write_distribution_csv(dist, path)
        restored = read_distribution_csv(path)
        np.testing.assert_array_equal(restored.probabilities, dist.probabilities)

    def test_header(self, tmp_path: Path) -> None:
        dist = Simulator().walk.run_walk(make_walk_config(2, 0, 45.0, 1))
        path = tmp_path / "dist.csv"
        write_distribution_csv(dist, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "position,probability"
        assert lines[1:] == ["0,0", "1,1", "2,0", "3,0"]

    def test_bad_header(self, tmp_path: Path) -> None:
        path = tmp_path / "dist.csv"
        path.write_text("x,p\n0,1\n1,0\n")
        with pytest.raises(SpecFormatError, match="header"):
            read_distribution_csv(path)

    def test_nan_probability_rejected(self, tmp_path: Path) -> None:
        path = tmp_path / "dist.csv"
        path.write_text("position,probability\n0,nan\n1,1\n")
        with pytest.raises(ValidationError):
            read_distribution_csv(path)

    def test_out_of_order_positions(self, tmp_path: Path) -> None:
        path = tmp_path / "dist.csv"
        path.write_text("position,probability\n1,0.5\n0,0.5\n")
        with pytest.raises(SpecFormatError, match="in order"):
            read_distribution_csv(path)
