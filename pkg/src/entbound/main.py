"""entbound command line: bound tables, saturation sweeps and state inspection"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from entbound.core.config import ExperimentConfig, Settings
from entbound.core.errors import EntboundError, InvalidInputError
from entbound.core.logging import configure_logging
from entbound.models.base import Boundary, MaximizationMode, OutputFormat, Preset, Statistics, Verdict
from entbound.models.hamiltonian import HamiltonianParams
from entbound.models.states import ThermalEnsembleSpec
from entbound.orchestrator import SweepOrchestrator
from entbound.services import results_io
from entbound.services.entanglement_measures import (
    entanglement_entropy,
    max_entanglement_test,
    number_distribution,
    sector_schmidt,
)
from entbound.services.evolution import evolution_trace
from entbound.services.fock_basis import build_basis
from entbound.services.lattice_hamiltonian import build_hamiltonian, diagonalize
from entbound.services.phase_maximizer import time_grid
from entbound.services.plotting import plot_sweep, plot_trace
from entbound.services.quantum_states import dump_state, max_entangled_state, random_pure_thermal_state
from entbound.services.sector_combinatorics import PUBLISHED_COMPARISONS, bound_report, bound_vector
from entbound.services.selftest import run_selftest
from entbound.utils.metrics import to_bits
from entbound.utils.validation import describe_validation_error, validate_spec

console = Console()

SATURATION_TOL = 1e-10


def _format_distribution(probabilities) -> str:
    return " ".join(f"{n_a}:{p:.4f}" for n_a, p in probabilities)


def cmd_bound(args: argparse.Namespace, settings: Settings) -> int:
    unit = "bits" if args.bits else "nats"
    scale = to_bits if args.bits else (lambda v: v)
    reports = [bound_report(validate_spec(args.L, M, args.n, args.stats)) for M in args.M]

    table = Table(title=f"Entanglement bounds ({unit})")
    for column in ["L", "M", "n", "statistics", "closed", "general", "flattened", "L*", "mean nA", "p_nA"]:
        table.add_column(column, justify="left" if column in ("statistics", "p_nA") else "right")
    records = []
    for r in reports:
        flat = None if r.flattened_bound is None else scale(r.flattened_bound)
        table.add_row(
            str(r.spec.L),
            str(r.spec.M),
            str(r.spec.n),
            r.spec.statistics.value,
            f"{scale(r.closed_system_bound):.6f}",
            f"{scale(r.general_bound):.6f}",
            "n/a" if flat is None else f"{flat:.6f}",
            "n/a" if r.flattening_threshold is None else str(r.flattening_threshold),
            f"{r.distribution.mean:.6f}",
            _format_distribution(r.distribution.probabilities),
        )
        records.append(
            {
                "L": r.spec.L,
                "M": r.spec.M,
                "n": r.spec.n,
                "statistics": r.spec.statistics.value,
                "unit": unit,
                "closed_system_bound": scale(r.closed_system_bound),
                "general_bound": scale(r.general_bound),
                "flattened_bound": flat,
                "flattening_threshold": r.flattening_threshold,
                "mean_nA": r.distribution.mean,
                "p_nA": _format_distribution(r.distribution.probabilities),
                "conditional_entropy_lower_bound": scale(r.corollaries.conditional_entropy_lower_bound),
                "mutual_info_upper_bound": scale(r.corollaries.mutual_info_upper_bound),
            }
        )
    console.print(table)
    if len(reports) > 1:
        vector = ", ".join(f"{scale(r.closed_system_bound):.1f}" for r in reports)
        console.print(f"bound vector over M={args.M}: [{vector}]")
    if args.csv is not None:
        results_io.write_csv(pd.DataFrame.from_records(records), args.csv, "bound")
        logger.info(f"Bound table written to {args.csv}")
    return 0


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    table = Table(title="Published Renyi-2 readings against the closed-system bound (nats)")
    columns = ["statistics", "L", "n", "M", "measured S2", "published bound", "computed bound", "headroom", "agrees"]
    for column in columns:
        table.add_column(column)
    mismatches = 0
    for (stats, L, n), entry in PUBLISHED_COMPARISONS.items():
        computed = bound_vector(L, n, stats, entry["M"])
        rows = zip(entry["M"], entry["measured_renyi2"], entry["bound"], entry["decoherence"], computed)
        for M, measured, published, mixed, value in rows:
            agrees = abs(round(value, 1) - published) <= 0.05
            mismatches += not agrees
            headroom = f"{value - measured:+.2f}" + (" (decoherence)" if mixed else "")
            table.add_row(
                stats.value, str(L), str(n), str(M), f"{measured:.1f}", f"{published:.1f}", f"{value:.4f}",
                headroom, "yes" if agrees else "NO",
            )
    console.print(table)
    return 0 if mismatches == 0 else 1


def _sweep_overrides(args: argparse.Namespace) -> dict:
    return {
        "L_values": args.L,
        "betas": args.beta,
        "hamiltonian.presets": args.preset,
        "system.M": args.M,
        "system.n": args.n,
        "system.boundary": args.boundary,
        "master_seed": args.seed,
        "maximizer.rpts_seeds": args.seeds,
        "maximizer.restarts_per_seed": args.restarts,
        "maximizer.mode": args.mode,
        "maximizer.warm_start": args.warm_start,
        "output.jobs": args.jobs,
        "output.directory": None if args.output_dir is None else str(args.output_dir),
        "output.formats": args.format,
        "extended": args.extended,
    }


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    config = ExperimentConfig.from_json_file(args.config) if args.config else ExperimentConfig()
    config = config.with_overrides(_sweep_overrides(args))
    orchestrator = SweepOrchestrator(config, settings, log_level=args.log_level, verbose=args.verbose)
    failed: List[str] = []

    def on_row(row) -> None:
        if row.failed:
            failed.append(f"L={row.L} beta={row.beta} {row.preset.value}")

    written = orchestrator.execute(on_row)
    for kind, path in written.items():
        console.print(f"{kind}: {path}")
    if failed:
        logger.error(f"{len(failed)} sweep point(s) failed: {', '.join(failed)}")
        return 1
    return 0


def cmd_maxstate(args: argparse.Namespace, settings: Settings) -> int:
    spec = validate_spec(args.L, args.M, args.n, Statistics.FERMIONIC)
    basis = build_basis(spec.L, spec.M, spec.n)
    state = max_entangled_state(basis)
    report = bound_report(spec)
    entropy = entanglement_entropy(state)
    gap = entropy - report.closed_system_bound
    verdict = max_entanglement_test(state)
    observed = number_distribution(state)
    if args.verbose:
        for sector in sector_schmidt(state).sectors:
            logger.info(
                f"nA={sector.n_a}: weight={sector.weight:.6f} rank={len(sector.eigenvalues)} "
                f"lambda_max={max(sector.eigenvalues, default=0.0):.6f}"
            )

    out = Path(args.output) if args.output else settings.output_dir / f"maxstate_L{spec.L}_M{spec.M}_n{spec.n}.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    dump_state(state, out)

    table = Table(title=f"Maximally entangled state, {spec.label()}")
    table.add_column("quantity")
    table.add_column("value", justify="right")
    table.add_row("entropy (nats)", f"{entropy:.12f}")
    table.add_row("closed-system bound (nats)", f"{report.closed_system_bound:.12f}")
    table.add_row("entropy - bound", f"{gap:.3e}")
    table.add_row("nonzero amplitudes", str(int(np.count_nonzero(state.amplitudes))))
    table.add_row("p_nA observed", _format_distribution(observed.probabilities))
    table.add_row("p_nA predicted", _format_distribution(report.distribution.probabilities))
    table.add_row("number-statistics test", verdict.value)
    table.add_row("state file", str(out))
    console.print(table)

    if abs(gap) >= SATURATION_TOL or verdict != Verdict.POSSIBLE:
        logger.error(f"maximally entangled state misses the bound by {gap:.3e} ({verdict.value})")
        return 1
    return 0


def cmd_evolve(args: argparse.Namespace, settings: Settings) -> int:
    spec = validate_spec(args.L, args.M, args.n, Statistics.FERMIONIC)
    params = HamiltonianParams.from_preset(args.preset, Boundary(args.boundary))
    basis = build_basis(spec.L, spec.M, spec.n)
    spectral = diagonalize(build_hamiltonian(basis, params))
    state = random_pure_thermal_state(ThermalEnsembleSpec(beta=args.beta, seed=args.seed, spectral=spectral))
    frame = evolution_trace(state, spectral, time_grid(args.tau_max, args.tau_step))

    out = Path(args.output) if args.output else settings.output_dir / f"evolve_L{spec.L}_M{spec.M}_n{spec.n}.csv"
    results_io.write_csv(frame, out, "evolve")
    if args.plot:
        plot_trace(frame, out.with_suffix(".svg"))
    best = frame.loc[frame["S1_nats"].idxmax()]
    console.print(
        f"{len(frame)} time points written to {out}; "
        f"max S1={best['S1_nats']:.6f} at tau={best['tau']:g} (bound {best['bound_nats']:.6f}), "
        f"energy drift {frame['energy'].max() - frame['energy'].min():.2e}"
    )
    return 0


def cmd_selftest(args: argparse.Namespace, settings: Settings) -> int:
    checks = run_selftest()
    table = Table(title="Oracle self-test")
    table.add_column("check")
    table.add_column("result")
    table.add_column("detail")
    for check in checks:
        table.add_row(check.name, "PASS" if check.passed else "FAIL", check.detail)
    console.print(table)
    return 0 if all(check.passed for check in checks) else 1


def cmd_plot(args: argparse.Namespace, settings: Settings) -> int:
    svg = Path(args.output) if args.output else Path(args.csv).with_suffix(".svg")
    plot_sweep(args.csv, svg)
    console.print(f"svg: {svg}")
    return 0


def _add_system_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--L", type=int, required=True, help="Number of lattice sites")
    parser.add_argument("--M", type=int, required=True, help="Sites in subsystem A (the left M sites)")
    parser.add_argument("--n", type=int, required=True, help="Total particle number")


def _add_verbose_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log optimizer progress and per-sector detail"
    )


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entbound",
        description="Entanglement entropy bounds for particle-number-conserving lattices",
    )
    parser.add_argument("--log-level", default=settings.log_level, help="Console log level")
    parser.add_argument("--log-dir", type=Path, default=settings.log_dir, help="Directory for rotating log files")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="Closed-form bound table")
    p.add_argument("--L", type=int, required=True, help="Number of lattice sites")
    p.add_argument("--M", type=int, action="append", required=True, help="Subsystem size; repeat for a vector")
    p.add_argument("--n", type=int, required=True, help="Total particle number")
    p.add_argument("--stats", choices=[s.value for s in Statistics], default=Statistics.FERMIONIC.value)
    p.add_argument("--bits", action="store_true", help="Report entropies in bits instead of nats")
    p.add_argument("--csv", type=Path, help="Also write the table to this CSV file")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("compare", help="Published measurements next to recomputed bounds")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("sweep", help="Saturation sweep over L, beta and preset")
    p.add_argument("--config", type=Path, help="ExperimentConfig JSON file")
    p.add_argument("--L", type=int, nargs="+", help="Chain lengths")
    p.add_argument("--beta", type=float, nargs="+", help="Inverse temperatures")
    p.add_argument("--preset", choices=[x.value for x in Preset], nargs="+", help="Hamiltonian presets")
    p.add_argument("--M", type=int, help="Subsystem size")
    p.add_argument("--n", type=int, help="Particle number")
    p.add_argument("--boundary", choices=[b.value for b in Boundary])
    p.add_argument("--seed", type=int, help="Master seed")
    p.add_argument("--seeds", type=int, help="RPTS initial states per point")
    p.add_argument("--restarts", type=int, help="Nelder-Mead restarts per state")
    p.add_argument("--mode", choices=[m.value for m in MaximizationMode])
    p.add_argument("--warm-start", action="store_true", default=None, help="Seed the simplex from a time scan")
    p.add_argument("--jobs", type=int, help="Worker processes")
    p.add_argument("--output-dir", type=Path, help="Output directory (default: ENTBOUND_OUTPUT_DIR)")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], nargs="+", help="Artifacts to write")
    p.add_argument("--extended", action="store_true", default=None, help="Allow L up to 13")
    _add_verbose_flag(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("maxstate", help="Write and verify the canonical maximally entangled state")
    _add_system_flags(p)
    p.add_argument("--output", type=Path, help="State dump path")
    _add_verbose_flag(p)
    p.set_defaults(handler=cmd_maxstate)

    p = sub.add_parser("evolve", help="Entropy and number statistics of an RPTS along a time grid")
    _add_system_flags(p)
    p.add_argument("--preset", choices=[x.value for x in Preset if x != Preset.CUSTOM], default=Preset.NONINTEGRABLE.value)
    p.add_argument("--boundary", choices=[b.value for b in Boundary], default=Boundary.OPEN.value)
    p.add_argument("--beta", type=float, default=0.01, help="Inverse temperature of the initial state")
    p.add_argument("--seed", type=int, default=0, help="RPTS seed")
    p.add_argument("--tau-max", type=float, default=10.0)
    p.add_argument("--tau-step", type=float, default=0.1)
    p.add_argument("--output", type=Path, help="Trace CSV path")
    p.add_argument("--plot", action="store_true", help="Also write an SVG next to the CSV")
    p.set_defaults(handler=cmd_evolve)

    p = sub.add_parser("selftest", help="Run the oracle suites")
    p.set_defaults(handler=cmd_selftest)

    p = sub.add_parser("plot", help="Redraw the sweep figure from a sweep CSV")
    p.add_argument("--csv", type=Path, required=True)
    p.add_argument("--output", type=Path, help="SVG path (default: next to the CSV)")
    p.set_defaults(handler=cmd_plot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and dispatch; returns the process exit code"""
    settings = Settings()
    parser = build_parser(settings)
    args = parser.parse_args(argv)
    configure_logging(args.log_level, args.log_dir)
    try:
        return args.handler(args, settings)
    except InvalidInputError as e:
        logger.error(f"invalid input: {e}")
        return e.exit_code
    except ValidationError as e:
        logger.error(f"invalid input: {describe_validation_error(e)}")
        return 2
    except EntboundError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


def run():
    """Entry point for the ``entbound`` console script"""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Interrupted")
        sys.exit(130)


if __name__ == "__main__":
    run()
