"""Granularity sweeps: entropy and boundary trajectories over bit levels.

Each level b applies 2**b equal-width bins to every numeric attribute in
the swept subset; refinement guarantees both channels are non-increasing
as b grows. Once every object sits in its own block further levels repeat,
so the sweep stops early and flags the curve as saturated.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DataError
from .table import InformationTable, GranulationScheme, discretize, partition_by
from .entropy import granular_entropy
from .rough import region_fractions

MAX_BITS = 24


@dataclass(frozen=True)
class SweepPoint:
    bits_level: int
    block_count: int
    conditional_bits: float
    normalized_conditional: float
    boundary_fraction: float
    gamma: float


@dataclass(frozen=True)
class SweepCurve:
    points: list[SweepPoint]
    attrs: tuple[str, ...]
    table_id: str = ""
    saturated: bool = False


@dataclass(frozen=True)
class ConvergenceSummary:
    monotonicity_violations: int
    terminal_entropy: float
    terminal_boundary: float
    _boundaries: tuple = field(default=(), repr=False)

    def level_where_boundary_below(self, threshold: float) -> int | None:
        """First bits level whose boundary fraction is <= threshold, if any."""
        for bits, bf in self._boundaries:
            if bf <= threshold:
                return bits
        return None


def _point_at(table: InformationTable, attrs: Sequence[str], bits: int) -> SweepPoint:
    scheme = GranulationScheme.uniform(table, bits, attrs=list(attrs) or None)
    if attrs:
        part = partition_by(discretize(table, scheme), list(attrs))
    else:
        from .table import Partition
        part = Partition.single_block(table.n)
    report = granular_entropy(part, table.decision_labels)
    gamma, bf = region_fractions(part, table.decision_labels)
    return SweepPoint(bits, part.block_count, report.conditional_bits,
                      report.normalized_conditional, float(bf), float(gamma))


def sweep(table: InformationTable, attrs: Sequence[str],
          bits_from: int, bits_to: int, threads: int = 1) -> SweepCurve:
    """Evaluate one SweepPoint per bits level in [bits_from, bits_to].

    Levels are independent; with threads > 1 they are evaluated
    concurrently but assembled in bits order, so output is identical to the
    single-threaded run.
    """
    if not (0 <= bits_from <= bits_to <= MAX_BITS):
        raise DataError(f"invalid bits range {bits_from}..{bits_to} "
                        f"(need 0 <= from <= to <= {MAX_BITS})")
    for name in attrs:
        table.attribute(name)
        if name == table.decision:
            raise DataError("cannot sweep over the decision attribute")

    levels = list(range(bits_from, bits_to + 1))
    points: list[SweepPoint] = []
    saturated = False
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            computed = list(pool.map(lambda b: _point_at(table, attrs, b), levels))
        for pt in computed:
            points.append(pt)
            if pt.block_count == table.n:
                saturated = True
                break
    else:
        for b in levels:
            pt = _point_at(table, attrs, b)
            points.append(pt)
            if pt.block_count == table.n:
                saturated = True
                break
    return SweepCurve(points, tuple(attrs), table_id=table.table_id,
                      saturated=saturated)


def convergence_summary(curve: SweepCurve, tolerance: float = 1e-9) -> ConvergenceSummary:
    """Count monotonicity violations and report terminal values of a curve."""
    if not curve.points:
        raise DataError("empty curve")
    violations = 0
    for prev, cur in zip(curve.points, curve.points[1:]):
        if (cur.conditional_bits > prev.conditional_bits + tolerance
                or cur.boundary_fraction > prev.boundary_fraction + tolerance):
            violations += 1
    last = curve.points[-1]
    return ConvergenceSummary(
        monotonicity_violations=violations,
        terminal_entropy=last.conditional_bits,
        terminal_boundary=last.boundary_fraction,
        _boundaries=tuple((p.bits_level, p.boundary_fraction) for p in curve.points))
