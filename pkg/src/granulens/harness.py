"""Evaluation of externally trained model runs against an information table.

Runs arrive as CSV files (``object_index,predicted[,granule]``); the model
is never trained in-process. The model-induced partition comes from the
granule column when present, otherwise from grouping equal predictions.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import DataError, UniverseMismatchError
from .table import InformationTable, Partition
from .entropy import granular_entropy
from .rough import region_fractions

_DIRECTIVE = re.compile(r"#\s*run_id=(\S+)(?:\s+meta=(.*))?\s*$")


@dataclass(frozen=True)
class ModelRun:
    run_id: str
    predicted: list
    granule: list | None = None
    meta: str = ""


@dataclass(frozen=True)
class EvalReport:
    run_id: str
    accuracy: float
    model_conditional_bits: float
    model_boundary_fraction: float
    model_gamma: float
    block_count: int
    used_fallback_partition: bool


@dataclass(frozen=True)
class RankedRun:
    run_id: str
    accuracy: float
    boundary_fraction: float
    conditional_bits: float
    block_count: int
    candidate: bool


@dataclass(frozen=True)
class ComparisonVerdict:
    ranked: list[RankedRun]
    selected: str
    tolerance_used: float


def load_run(csv_data: bytes | str, table: InformationTable,
             run_id: str = "run") -> ModelRun:
    """Parse a model-run CSV and validate it covers the table's universe.

    An optional first line ``# run_id=<text> meta=<text>`` overrides the
    run id. object_index values must be exactly 0..n-1 in any order.
    """
    if isinstance(csv_data, bytes):
        csv_data = csv_data.decode("utf-8")
    meta = ""
    lines = csv_data.splitlines()
    if lines and lines[0].lstrip().startswith("#"):
        m = _DIRECTIVE.match(lines[0].strip())
        if m:
            run_id = m.group(1)
            meta = (m.group(2) or "").strip()
        lines = lines[1:]
    reader = csv.reader(io.StringIO("\n".join(lines)))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty run file") from None
    header = [h.strip() for h in header]
    if header[:2] != ["object_index", "predicted"]:
        raise DataError("run header must start with object_index,predicted")
    has_granule = len(header) > 2 and header[2] == "granule"

    n = table.n
    predicted: list = [None] * n
    granule: list = [None] * n
    seen = set()
    count = 0
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DataError(f"ragged run row at line {lineno}")
        try:
            idx = int(row[0])
        except ValueError:
            raise DataError(f"non-integer object_index {row[0]!r} at line {lineno}") from None
        if not 0 <= idx < n:
            raise DataError(f"object_index {idx} out of range 0..{n - 1}")
        if idx in seen:
            raise DataError(f"duplicate object_index {idx}")
        seen.add(idx)
        predicted[idx] = row[1]
        if has_granule:
            granule[idx] = row[2]
        count += 1
    if count != n:
        raise DataError(f"run row count {count} != universe size {n}")
    return ModelRun(run_id, predicted, granule if has_granule else None, meta)


def evaluate_run(table: InformationTable, run: ModelRun) -> EvalReport:
    """Accuracy plus entropy/rough-set metrics on the model-induced partition."""
    n = table.n
    if len(run.predicted) != n or (run.granule is not None and len(run.granule) != n):
        raise UniverseMismatchError("run does not cover the table's universe")
    truth = table.decision_labels
    correct = sum(1 for p, t in zip(run.predicted, truth) if str(p) == str(t))

    if run.granule is not None:
        part = Partition.from_labels(run.granule)
        fallback = False
    else:
        part = Partition.from_labels(run.predicted)
        fallback = True
    report = granular_entropy(part, truth)
    gamma, bf = region_fractions(part, truth)
    return EvalReport(run.run_id, correct / n, report.conditional_bits,
                      float(bf), float(gamma), part.block_count, fallback)


def compare_runs(reports: Sequence[EvalReport], tolerance: float = 0.005,
                 rank_by: str = "boundary-first") -> ComparisonVerdict:
    """Deterministic hyperparameter verdict over evaluated runs.

    Runs within ``tolerance`` of the best accuracy form the candidate band;
    candidates rank by (boundary_fraction, conditional_bits, block_count,
    run_id) ascending, or entropy before boundary with
    rank_by="entropy-first". Non-candidates follow, best accuracy first.
    """
    if not reports:
        raise DataError("no reports to compare")
    if rank_by not in ("boundary-first", "entropy-first"):
        raise DataError(f"unknown rank_by {rank_by!r}")
    best_acc = max(r.accuracy for r in reports)

    def cand_key(r: EvalReport):
        metrics = ((r.model_boundary_fraction, r.model_conditional_bits)
                   if rank_by == "boundary-first"
                   else (r.model_conditional_bits, r.model_boundary_fraction))
        return (*metrics, r.block_count, r.run_id)

    candidates = sorted((r for r in reports if r.accuracy >= best_acc - tolerance),
                        key=cand_key)
    others = sorted((r for r in reports if r.accuracy < best_acc - tolerance),
                    key=lambda r: (-r.accuracy, r.run_id))
    ranked = [RankedRun(r.run_id, r.accuracy, r.model_boundary_fraction,
                        r.model_conditional_bits, r.block_count, in_band)
              for group, in_band in ((candidates, True), (others, False))
              for r in group]
    return ComparisonVerdict(ranked, candidates[0].run_id, tolerance)
