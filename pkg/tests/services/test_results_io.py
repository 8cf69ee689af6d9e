import json
import math

import numpy as np
import pandas as pd
import pytest

from entbound.core.constants import SWEEP_COLUMNS
from entbound.core.errors import ResultsFormatError
from entbound.models.base import Boundary, Preset
from entbound.models.states import ThermalEnsembleSpec
from entbound.models.sweep import SweepRow, SweepSummary, SweepTiming
from entbound.services.evolution import evolution_trace
from entbound.services.plotting import plot_sweep, plot_trace
from entbound.services.quantum_states import random_pure_thermal_state
from entbound.services.results_io import (
    header_line,
    read_csv,
    read_sweep_csv,
    write_csv,
    write_summary,
    write_sweep_csv,
    write_sweep_json,
)


def row(L, beta=0.01, preset=Preset.NONINTEGRABLE, error="", mean=None):
    bound = math.log({8: 10, 9: 11, 10: 12}[L])
    if error:
        return SweepRow(
            L=L, M=4, n=3, beta=beta, preset=preset, boundary=Boundary.OPEN,
            bound_nats=bound, seeds=2, error=error, wall_time_s=0.1,
        )
    mean = bound - 0.01 if mean is None else mean
    return SweepRow(
        L=L, M=4, n=3, beta=beta, preset=preset, boundary=Boundary.OPEN,
        mean_max_entropy_nats=mean, std_dev=0.004, bound_nats=bound, mean_nA_at_max=1.5,
        seeds=2, per_seed_maxima=[mean - 0.003, mean + 0.003], wall_time_s=1.25,
    )


@pytest.fixture
def rows():
    # deliberately out of order
    return [row(10), row(8, beta=2.0, mean=1.9), row(9), row(8), row(9, error="DiagonalizationError: boom")]


class TestSweepCsv:
    def test_header_and_column_order(self, rows, tmp_path):
        path = write_sweep_csv(rows, tmp_path / "sweep.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "# entbound sweep schema=1"
        assert lines[1].split(",") == SWEEP_COLUMNS

    def test_rows_sorted_by_L_then_beta_then_preset(self, rows, tmp_path):
        frame = read_sweep_csv(write_sweep_csv(rows, tmp_path / "sweep.csv"))
        assert list(zip(frame["L"], frame["beta"])) == [(8, 0.01), (8, 2.0), (9, 0.01), (9, 0.01), (10, 0.01)]

    def test_values_survive_the_file(self, rows, tmp_path):
        frame = read_sweep_csv(write_sweep_csv(rows, tmp_path / "sweep.csv"))
        first = frame.iloc[0]
        assert first["preset"] == "nonintegrable"
        assert first["boundary"] == "open"
        assert first["mean_max_entropy_nats"] == pytest.approx(math.log(10) - 0.01, abs=1e-11)
        assert first["error"] == ""

    def test_failed_point_keeps_its_row(self, rows, tmp_path):
        frame = read_sweep_csv(write_sweep_csv(rows, tmp_path / "sweep.csv"))
        failed = frame[frame["error"] != ""]
        assert len(failed) == 1
        assert failed.iloc[0]["error"] == "DiagonalizationError: boom"
        assert np.isnan(failed.iloc[0]["mean_max_entropy_nats"])

    def test_input_order_does_not_matter(self, rows, tmp_path):
        rows = rows[:4]
        a = write_sweep_csv(rows, tmp_path / "a.csv").read_bytes()
        b = write_sweep_csv(list(reversed(rows)), tmp_path / "b.csv").read_bytes()
        assert a == b

    def test_twelve_significant_digits(self, tmp_path):
        path = write_csv(pd.DataFrame({"x": [math.pi]}), tmp_path / "x.csv", "test")
        assert path.read_text().splitlines()[2] == "3.14159265359"


class TestReadErrors:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ResultsFormatError, match="does not exist"):
            read_sweep_csv(tmp_path / "nope.csv")

    def test_foreign_header(self, tmp_path):
        path = tmp_path / "sweep.csv"
        path.write_text("L,M\n8,4\n")
        with pytest.raises(ResultsFormatError, match="not an entbound sweep file"):
            read_sweep_csv(path)

    def test_wrong_kind(self, tmp_path):
        path = write_csv(pd.DataFrame({"L": [8]}), tmp_path / "bound.csv", "bound")
        with pytest.raises(ResultsFormatError):
            read_csv(path, "sweep")

    def test_wrong_columns(self, tmp_path):
        path = tmp_path / "sweep.csv"
        path.write_text(header_line("sweep") + "L,M\n8,4\n")
        with pytest.raises(ResultsFormatError, match="columns"):
            read_sweep_csv(path)


def test_json_keeps_seed_detail_but_not_timing(rows, tmp_path):
    payload = json.loads(write_sweep_json(rows, tmp_path / "sweep.json").read_text())
    assert [p["L"] for p in payload] == [8, 8, 9, 9, 10]
    assert all("wall_time_s" not in p for p in payload)
    assert payload[0]["per_seed_maxima"] == pytest.approx([math.log(10) - 0.013, math.log(10) - 0.007])
    assert payload[0]["preset"] == "nonintegrable"


def test_summary_carries_the_timing(tmp_path):
    summary = SweepSummary(
        schema_version=1,
        master_seed=2024,
        points=[SweepTiming(L=8, beta=0.01, preset=Preset.NONINTEGRABLE, wall_time_s=1.25)],
        total_wall_time_s=1.5,
        failed_points=0,
        config={"L_values": [8]},
    )
    data = json.loads(write_summary(summary, tmp_path / "summary.json").read_text())
    assert data["points"][0]["wall_time_s"] == 1.25
    assert data["config"] == {"L_values": [8]}


class TestPlotting:
    def test_sweep_figure(self, rows, tmp_path):
        csv = write_sweep_csv(rows, tmp_path / "sweep.csv")
        svg = plot_sweep(csv, tmp_path / "sweep.svg")
        text = svg.read_text()
        assert text.lstrip().startswith("<?xml")
        assert "closed-system bound" in text

    def test_sweep_figure_is_reproducible(self, rows, tmp_path):
        csv = write_sweep_csv(rows, tmp_path / "sweep.csv")
        a = plot_sweep(csv, tmp_path / "a.svg").read_bytes()
        b = plot_sweep(csv, tmp_path / "b.svg").read_bytes()
        assert a == b

    def test_nothing_to_plot(self, tmp_path):
        csv = write_sweep_csv([row(8, error="ComputationError: x")], tmp_path / "sweep.csv")
        with pytest.raises(ResultsFormatError, match="no successful"):
            plot_sweep(csv, tmp_path / "sweep.svg")

    def test_trace_figure(self, spectral_632, tmp_path):
        state = random_pure_thermal_state(ThermalEnsembleSpec(beta=0.01, seed=0, spectral=spectral_632))
        frame = evolution_trace(state, spectral_632, np.linspace(0.0, 2.0, 5))
        svg = plot_trace(frame, tmp_path / "trace.svg")
        assert "S2 (Renyi)" in svg.read_text()


def test_evolution_trace_columns_and_invariants(spectral_632):
    state = random_pure_thermal_state(ThermalEnsembleSpec(beta=0.01, seed=3, spectral=spectral_632))
    frame = evolution_trace(state, spectral_632, np.arange(0.0, 3.0, 0.5))
    assert list(frame.columns) == ["tau", "S1_nats", "S2_nats", "bound_nats", "p_nA_0", "p_nA_1", "p_nA_2", "energy"]
    assert len(frame) == 6
    assert (frame["S2_nats"] <= frame["S1_nats"] + 1e-12).all()
    assert (frame["S1_nats"] <= frame["bound_nats"] + 1e-12).all()
    probs = frame[["p_nA_0", "p_nA_1", "p_nA_2"]].sum(axis=1)
    np.testing.assert_allclose(probs, 1.0, atol=1e-12)
    assert frame["energy"].max() - frame["energy"].min() < 1e-9
