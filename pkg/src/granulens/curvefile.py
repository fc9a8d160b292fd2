"""Reading and writing sweep curves as CSV files.

Values are printed with 9 decimal places (round-half-even, "." separator,
locale-independent), which is also the precision contract for round-trips.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile

from .errors import DataError
from .sweep import SweepCurve, SweepPoint

CURVE_HEADER = ["bits_level", "block_count", "conditional_bits",
                "normalized_conditional", "boundary_fraction", "gamma"]


def fmt(x: float) -> str:
    return f"{x:.9f}"


def write_atomic(path: str, data: str | bytes) -> None:
    """Write to a sibling temp file, then rename: no partial outputs."""
    directory = os.path.dirname(os.path.abspath(path))
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".granulens-tmp-")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def curve_to_csv(curve: SweepCurve) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for p in curve.points:
        writer.writerow([p.bits_level, p.block_count, fmt(p.conditional_bits),
                         fmt(p.normalized_conditional), fmt(p.boundary_fraction),
                         fmt(p.gamma)])
    return buf.getvalue()


def write_curve(curve: SweepCurve, path: str) -> None:
    write_atomic(path, curve_to_csv(curve))


def read_curve(csv_data: str, table_id: str = "") -> SweepCurve:
    reader = csv.reader(io.StringIO(csv_data))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty curve file") from None
    if header != CURVE_HEADER:
        raise DataError(f"unexpected curve header {header!r}")
    points = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(CURVE_HEADER):
            raise DataError("ragged curve row")
        points.append(SweepPoint(int(row[0]), int(row[1]), float(row[2]),
                                 float(row[3]), float(row[4]), float(row[5])))
    if not points:
        raise DataError("curve file has no points")
    levels = [p.bits_level for p in points]
    if levels != sorted(set(levels)):
        raise DataError("curve rows must be ordered by strictly increasing bits_level")
    return SweepCurve(points, attrs=(), table_id=table_id)
