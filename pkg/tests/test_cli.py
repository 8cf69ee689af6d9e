import json
import math

import pytest
from loguru import logger

from entbound.core.config import ExperimentConfig, Settings
from entbound.core.errors import DiagonalizationError
from entbound.main import main
from entbound.models.base import OutputFormat, Preset
from entbound.orchestrator import SWEEP_CSV, SWEEP_JSON, SWEEP_SUMMARY, SWEEP_SVG, SweepOrchestrator
from entbound.services.phase_maximizer import ProgressLogger
from entbound.services.results_io import read_csv, read_sweep_csv

SMALL_SWEEP = {
    "system": {"M": 3, "n": 2},
    "L_values": [6, 7],
    "betas": [0.01],
    "maximizer": {"rpts_seeds": 1, "restarts_per_seed": 1, "adaptive_restarts": False, "max_iterations": 1500},
}


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("ENTBOUND_OUTPUT_DIR", raising=False)


@pytest.fixture
def sweep_config(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(json.dumps(SMALL_SWEEP))
    return path


class TestBound:
    def test_vector_csv(self, tmp_path):
        out = tmp_path / "bound.csv"
        argv = ["bound", "--L", "10", "--n", "5", "--csv", str(out)]
        for M in range(1, 10):
            argv += ["--M", str(M)]
        assert main(argv) == 0
        frame = read_csv(out, "bound")
        assert [round(v, 1) for v in frame["closed_system_bound"]] == [0.7, 1.4, 2.1, 2.8, 3.5, 2.8, 2.1, 1.4, 0.7]
        assert set(frame["unit"]) == {"nats"}

    def test_bits(self, tmp_path):
        out = tmp_path / "bound.csv"
        assert main(["bound", "--L", "8", "--M", "4", "--n", "3", "--bits", "--csv", str(out)]) == 0
        row = read_csv(out, "bound").iloc[0]
        assert row["closed_system_bound"] == pytest.approx(math.log2(10), abs=1e-10)
        assert row["flattening_threshold"] == 10
        assert row["mean_nA"] == pytest.approx(1.5)

    def test_bosons_have_no_flattening(self, tmp_path):
        out = tmp_path / "bound.csv"
        assert main(["bound", "--L", "4", "--M", "2", "--n", "4", "--stats", "bosonic", "--csv", str(out)]) == 0
        row = read_csv(out, "bound").iloc[0]
        assert row["closed_system_bound"] == pytest.approx(math.log(9), abs=1e-10)
        assert math.isnan(row["flattened_bound"])

    @pytest.mark.parametrize("argv", [["--L", "4", "--M", "5", "--n", "1"], ["--L", "4", "--M", "2", "--n", "6"]])
    def test_invalid_spec_exits_2(self, argv):
        assert main(["bound", *argv]) == 2


def test_compare():
    assert main(["compare"]) == 0


def test_missing_subcommand():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


class TestMaxState:
    def test_saturates(self, tmp_path):
        out = tmp_path / "state.txt"
        assert main(["maxstate", "--L", "8", "--M", "4", "--n", "3", "--output", str(out)]) == 0
        assert out.read_text().splitlines()[0] == "# 8 4 3"

    def test_default_location_uses_settings(self, tmp_path):
        assert main(["maxstate", "--L", "6", "--M", "3", "--n", "2"]) == 0
        assert (tmp_path / "results" / "maxstate_L6_M3_n2.txt").is_file()

    def test_verbose_logs_every_sector(self, tmp_path, monkeypatch):
        monkeypatch.setattr("entbound.main.configure_logging", lambda level, log_dir: None)
        messages = []
        sink = logger.add(messages.append, level="INFO", format="{message}")
        try:
            assert main(["maxstate", "--L", "6", "--M", "3", "--n", "2", "-v", "--output", str(tmp_path / "s.txt")]) == 0
        finally:
            logger.remove(sink)
        assert sum(m.startswith("nA=") for m in messages) == 3


def test_evolve_writes_trace_and_figure(tmp_path):
    out = tmp_path / "trace.csv"
    argv = ["evolve", "--L", "6", "--M", "3", "--n", "2", "--tau-max", "1.0", "--tau-step", "0.5", "--output", str(out), "--plot"]
    assert main(argv) == 0
    frame = read_csv(out, "evolve")
    assert frame["tau"].tolist() == [0.0, 0.5, 1.0]
    assert (frame["S1_nats"] <= math.log(5) + 1e-12).all()
    assert out.with_suffix(".svg").is_file()


def test_evolve_rejects_bad_time_step(tmp_path):
    assert main(["evolve", "--L", "6", "--M", "3", "--n", "2", "--tau-step", "0", "--output", str(tmp_path / "t.csv")]) == 2


class TestSweep:
    def test_writes_every_artifact(self, tmp_path, sweep_config):
        out = tmp_path / "run"
        assert main(["sweep", "--config", str(sweep_config), "--output-dir", str(out)]) == 0
        frame = read_sweep_csv(out / SWEEP_CSV)
        assert frame["L"].tolist() == [6, 7]
        assert (frame["mean_max_entropy_nats"] <= frame["bound_nats"] + 1e-9).all()
        assert frame["bound_nats"].tolist() == pytest.approx([math.log(5), math.log(5)], abs=1e-11)
        payload = json.loads((out / SWEEP_JSON).read_text())
        assert all("wall_time_s" not in p and len(p["per_seed_maxima"]) == 1 for p in payload)
        summary = json.loads((out / SWEEP_SUMMARY).read_text())
        assert summary["failed_points"] == 0
        assert len(summary["points"]) == 2
        assert (out / SWEEP_SVG).is_file()

    def test_same_seed_same_bytes(self, tmp_path, sweep_config):
        for name in ("a", "b"):
            argv = ["sweep", "--config", str(sweep_config), "--output-dir", str(tmp_path / name), "--format", "csv"]
            assert main(argv) == 0
        assert (tmp_path / "a" / SWEEP_CSV).read_bytes() == (tmp_path / "b" / SWEEP_CSV).read_bytes()
        assert not (tmp_path / "a" / SWEEP_JSON).exists()

    def test_flags_override_the_file(self, tmp_path, sweep_config):
        out = tmp_path / "run"
        argv = ["sweep", "--config", str(sweep_config), "--L", "6", "--beta", "0.5", "--output-dir", str(out), "--format", "csv"]
        assert main(argv) == 0
        frame = read_sweep_csv(out / SWEEP_CSV)
        assert list(zip(frame["L"], frame["beta"])) == [(6, 0.5)]

    def test_rejects_lengths_beyond_the_desk_cap(self, sweep_config):
        assert main(["sweep", "--config", str(sweep_config), "--L", "12"]) == 2

    def test_custom_preset_without_couplings(self, sweep_config):
        assert main(["sweep", "--config", str(sweep_config), "--preset", "custom"]) == 2

    def test_verbose_reports_each_seed_of_each_point(self, tmp_path, sweep_config, monkeypatch):
        calls = []
        original = ProgressLogger.seed_done

        def recording(self, index, outcome):
            calls.append((self.label, index))
            original(self, index, outcome)

        monkeypatch.setattr(ProgressLogger, "seed_done", recording)
        out = tmp_path / "run"
        argv = ["sweep", "--config", str(sweep_config), "--output-dir", str(out), "--format", "csv", "--seeds", "2", "-v"]
        assert main(argv) == 0
        assert calls == [
            ("L=6 beta=0.01 nonintegrable", 0),
            ("L=6 beta=0.01 nonintegrable", 1),
            ("L=7 beta=0.01 nonintegrable", 0),
            ("L=7 beta=0.01 nonintegrable", 1),
        ]

    def test_quiet_sweep_builds_no_reporter(self, tmp_path, sweep_config, monkeypatch):
        calls = []
        monkeypatch.setattr(ProgressLogger, "seed_done", lambda self, i, o: calls.append(i))
        argv = ["sweep", "--config", str(sweep_config), "--output-dir", str(tmp_path / "run"), "--format", "csv"]
        assert main(argv) == 0
        assert calls == []

    def test_failed_point_is_recorded_and_exit_code_is_1(self, tmp_path, sweep_config, monkeypatch):
        def broken(H):
            raise DiagonalizationError("eigensolver failed", {"dim": H.dim})

        monkeypatch.setattr("entbound.orchestrator.diagonalize", broken)
        out = tmp_path / "run"
        assert main(["sweep", "--config", str(sweep_config), "--output-dir", str(out), "--format", "csv"]) == 1
        frame = read_sweep_csv(out / SWEEP_CSV)
        assert frame["error"].str.startswith("DiagonalizationError").all()
        assert json.loads((out / SWEEP_SUMMARY).read_text())["failed_points"] == 2


def test_plot_from_sweep_csv(tmp_path, sweep_config):
    out = tmp_path / "run"
    assert main(["sweep", "--config", str(sweep_config), "--output-dir", str(out), "--format", "csv"]) == 0
    assert main(["plot", "--csv", str(out / SWEEP_CSV), "--output", str(tmp_path / "fig.svg")]) == 0
    assert (tmp_path / "fig.svg").is_file()


def test_plot_missing_csv(tmp_path):
    assert main(["plot", "--csv", str(tmp_path / "missing.csv")]) == 2


def test_orchestrator_orders_points(tmp_path):
    config = ExperimentConfig(
        L_values=[9, 8],
        betas=[2.0, 0.01],
        hamiltonian={"presets": ["integrable", "nonintegrable"]},
        output={"directory": str(tmp_path), "formats": [OutputFormat.CSV]},
    )
    points = SweepOrchestrator(config, Settings()).points()
    assert [(p.L, p.beta, p.preset) for p in points[:4]] == [
        (8, 0.01, Preset.INTEGRABLE),
        (8, 0.01, Preset.NONINTEGRABLE),
        (8, 2.0, Preset.INTEGRABLE),
        (8, 2.0, Preset.NONINTEGRABLE),
    ]
    assert len(points) == 8
