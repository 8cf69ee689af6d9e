"""Runs saturation sweeps over (L, beta, preset) and writes their artifacts"""
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Callable, Dict, List, Optional

from loguru import logger

from entbound.core.config import ExperimentConfig, Settings
from entbound.core.constants import CSV_SCHEMA_VERSION
from entbound.core.logging import configure_logging
from entbound.models.base import OutputFormat
from entbound.models.hamiltonian import HamiltonianParams
from entbound.models.metrics import MaximizationConfig
from entbound.models.states import ThermalEnsembleSpec
from entbound.models.sweep import SweepPoint, SweepRow, SweepSummary, SweepTiming
from entbound.models.system import SystemSpec
from entbound.services import results_io
from entbound.services.fock_basis import build_basis
from entbound.services.lattice_hamiltonian import build_hamiltonian, diagonalize
from entbound.services.phase_maximizer import ProgressLogger, maximize_entropy
from entbound.services.plotting import plot_sweep
from entbound.services.sector_combinatorics import closed_system_bound

SWEEP_CSV = "sweep.csv"
SWEEP_JSON = "sweep_results.json"
SWEEP_SVG = "sweep.svg"
SWEEP_SUMMARY = "sweep_summary.json"


def run_point(
    point: SweepPoint,
    params: HamiltonianParams,
    maximizer: MaximizationConfig,
    master_seed: int,
    verbose: bool = False,
) -> SweepRow:
    """Basis, Hamiltonian, spectrum and phase maximization for one sweep point.

    Failures are returned as a row with ``error`` set instead of raised. ``verbose`` logs
    simplex progress and every finished seed.
    """
    reporter = ProgressLogger(point.label, maximizer.rpts_seeds) if verbose else None
    bound = closed_system_bound(SystemSpec(L=point.L, M=point.M, n=point.n))
    common = dict(
        L=point.L,
        M=point.M,
        n=point.n,
        beta=point.beta,
        preset=point.preset,
        boundary=point.boundary,
        bound_nats=bound,
        seeds=maximizer.rpts_seeds,
    )
    start = time.perf_counter()
    try:
        basis = build_basis(point.L, point.M, point.n)
        spectral = diagonalize(build_hamiltonian(basis, params))
        ensemble = ThermalEnsembleSpec(beta=point.beta, seed=master_seed, spectral=spectral)
        result = maximize_entropy(
            spectral,
            ensemble,
            maximizer,
            progress=reporter,
            on_seed=None if reporter is None else reporter.seed_done,
        )
    except Exception as e:
        elapsed = time.perf_counter() - start
        logger.error(f"Sweep point {point.label} failed: {e}")
        return SweepRow(**common, error=f"{type(e).__name__}: {e}", wall_time_s=elapsed)

    elapsed = time.perf_counter() - start
    logger.info(
        f"{point.label}: S_max={result.mean:.4f}+-{result.std_dev:.4f} "
        f"bound={bound:.4f} gap={result.gap:.4f} ({elapsed:.1f}s)"
    )
    return SweepRow(
        **common,
        mean_max_entropy_nats=result.mean,
        std_dev=result.std_dev,
        mean_nA_at_max=result.best_state_number_mean,
        per_seed_maxima=result.per_seed_maxima,
        wall_time_s=elapsed,
    )


class SweepOrchestrator:
    """Dispatches sweep points to a worker pool and collects rows in (L, beta, preset) order"""

    def __init__(
        self,
        config: ExperimentConfig,
        settings: Optional[Settings] = None,
        log_level: str = "INFO",
        verbose: bool = False,
    ):
        self.config = config
        self.settings = settings or Settings()
        self.log_level = log_level
        self.verbose = verbose
        self.output_dir = Path(config.output_directory(self.settings))
        logger.info(
            f"Sweep over L={config.L_values} beta={config.betas} "
            f"presets={[p.value for p in config.hamiltonian.presets]} "
            f"({len(self.points())} points, {config.output.jobs} job(s))"
        )

    def points(self) -> List[SweepPoint]:
        system = self.config.system
        points = [
            SweepPoint(L=L, M=system.M, n=system.n, beta=beta, preset=preset, boundary=system.boundary)
            for L in self.config.L_values
            for beta in self.config.betas
            for preset in self.config.hamiltonian.presets
        ]
        return sorted(points, key=lambda p: p.sort_key)

    def _params(self, point: SweepPoint) -> HamiltonianParams:
        return self.config.hamiltonian.params_for(point.preset, point.boundary)

    def run(self, on_row: Optional[Callable[[SweepRow], None]] = None) -> List[SweepRow]:
        points = self.points()
        rows: List[SweepRow] = []
        if self.config.output.jobs == 1:
            for point in points:
                row = run_point(
                    point, self._params(point), self.config.maximizer, self.config.master_seed, self.verbose
                )
                rows.append(row)
                if on_row is not None:
                    on_row(row)
        else:
            with ProcessPoolExecutor(
                max_workers=self.config.output.jobs,
                initializer=configure_logging,
                initargs=(self.log_level,),
            ) as pool:
                futures = {
                    pool.submit(
                        run_point,
                        point,
                        self._params(point),
                        self.config.maximizer,
                        self.config.master_seed,
                        self.verbose,
                    ): point
                    for point in points
                }
                for future in as_completed(futures):
                    row = future.result()
                    rows.append(row)
                    if on_row is not None:
                        on_row(row)
        failed = sum(row.failed for row in rows)
        if failed:
            logger.warning(f"{failed} of {len(rows)} sweep points failed; see the error column")
        return results_io.sort_rows(rows)

    def write_outputs(self, rows: List[SweepRow], total_wall_time_s: float) -> Dict[str, Path]:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        formats = set(self.config.output.formats)
        written: Dict[str, Path] = {}
        csv_path = self.output_dir / SWEEP_CSV
        # the figure is drawn from the CSV, so SVG output implies the CSV
        if OutputFormat.CSV in formats or OutputFormat.SVG in formats:
            written["csv"] = results_io.write_sweep_csv(rows, csv_path)
        if OutputFormat.JSON in formats:
            written["json"] = results_io.write_sweep_json(rows, self.output_dir / SWEEP_JSON)
        if OutputFormat.SVG in formats:
            if all(row.failed for row in rows):
                logger.warning("Every sweep point failed; skipping the figure")
            else:
                written["svg"] = plot_sweep(csv_path, self.output_dir / SWEEP_SVG)
        summary = SweepSummary(
            schema_version=CSV_SCHEMA_VERSION,
            master_seed=self.config.master_seed,
            points=[
                SweepTiming(L=r.L, beta=r.beta, preset=r.preset, wall_time_s=r.wall_time_s, error=r.error)
                for r in rows
            ],
            total_wall_time_s=total_wall_time_s,
            failed_points=sum(r.failed for r in rows),
            config=self.config.model_dump(mode="json"),
        )
        written["summary"] = results_io.write_summary(summary, self.output_dir / SWEEP_SUMMARY)
        return written

    def execute(self, on_row: Optional[Callable[[SweepRow], None]] = None) -> Dict[str, Path]:
        start = time.perf_counter()
        rows = self.run(on_row)
        written = self.write_outputs(rows, time.perf_counter() - start)
        logger.info(f"Sweep finished in {time.perf_counter() - start:.1f}s; outputs in {self.output_dir}")
        return written
