"""CSV and JSON artifacts of the CLI.

Every CSV starts with a ``# entbound <kind> schema=<version>`` comment line and writes
floats at CSV_SIG_DIGITS significant digits, so identical inputs give identical bytes.
"""
import json
from pathlib import Path
from typing import Iterable, List, Union

import pandas as pd
from loguru import logger

from entbound.core.constants import CSV_SCHEMA_VERSION, CSV_SIG_DIGITS, SWEEP_COLUMNS
from entbound.core.errors import ResultsFormatError
from entbound.models.sweep import SweepRow, SweepSummary

FLOAT_FORMAT = f"%.{CSV_SIG_DIGITS}g"

PathLike = Union[str, Path]


def header_line(kind: str) -> str:
    return f"# entbound {kind} schema={CSV_SCHEMA_VERSION}\n"


def write_csv(frame: pd.DataFrame, path: PathLike, kind: str) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        fh.write(header_line(kind))
        frame.to_csv(fh, index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    logger.debug(f"Wrote {len(frame)} {kind} rows to {out}")
    return out


def read_csv(path: PathLike, kind: str) -> pd.DataFrame:
    src = Path(path)
    if not src.is_file():
        raise ResultsFormatError(f"{src} does not exist")
    with src.open() as fh:
        first = fh.readline()
    if first != header_line(kind):
        raise ResultsFormatError(
            f"{src} is not an entbound {kind} file of schema {CSV_SCHEMA_VERSION} "
            f"(first line {first.strip()!r})"
        )
    return pd.read_csv(src, skiprows=1)


def sort_rows(rows: Iterable[SweepRow]) -> List[SweepRow]:
    return sorted(rows, key=lambda r: (r.L, r.beta, r.preset.value))


def sweep_frame(rows: Iterable[SweepRow]) -> pd.DataFrame:
    records = []
    for row in sort_rows(rows):
        record = row.model_dump(include=set(SWEEP_COLUMNS))
        record["preset"] = row.preset.value
        record["boundary"] = row.boundary.value
        records.append(record)
    return pd.DataFrame.from_records(records, columns=SWEEP_COLUMNS)


def write_sweep_csv(rows: Iterable[SweepRow], path: PathLike) -> Path:
    frame = sweep_frame(rows)
    out = write_csv(frame, path, "sweep")
    logger.info(f"Sweep table ({len(frame)} points) written to {out}")
    return out


def read_sweep_csv(path: PathLike) -> pd.DataFrame:
    frame = read_csv(path, "sweep")
    if list(frame.columns) != SWEEP_COLUMNS:
        raise ResultsFormatError(f"{path} has columns {list(frame.columns)}, expected {SWEEP_COLUMNS}")
    frame["error"] = frame["error"].fillna("").astype(str)
    return frame


def write_sweep_json(rows: Iterable[SweepRow], path: PathLike) -> Path:
    """Rows with their per-seed maxima; timing stays in the summary"""
    out = Path(path)
    payload = [row.model_dump(mode="json", exclude={"wall_time_s"}) for row in sort_rows(rows)]
    out.write_text(json.dumps(payload, indent=2) + "\n")
    logger.info(f"Sweep results JSON written to {out}")
    return out


def write_summary(summary: SweepSummary, path: PathLike) -> Path:
    out = Path(path)
    out.write_text(summary.model_dump_json(indent=2) + "\n")
    logger.debug(f"Sweep summary written to {out}")
    return out
