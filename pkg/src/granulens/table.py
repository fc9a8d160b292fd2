"""Information tables, granulation schemes, discretization, and indiscernibility partitions.

An :class:`InformationTable` holds the universe U (rows 0..n-1), typed
attribute columns, and one designated categorical decision attribute.
Numeric attributes are granulated by equal-width binning over the observed
range at a chosen precision of ``b`` bits (2**b bins plus a missing bin);
categorical attributes always granulate by identity.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DataError


class _Missing:
    """Sentinel for a missing cell; a distinct category token for categoricals."""

    __slots__ = ()

    def __repr__(self):
        return "MISSING"


MISSING = _Missing()

#: tokens in a CSV cell that denote a missing value
_MISSING_TOKENS = ("", "?")


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    kind: str  # "categorical" | "numeric"
    observed_range: tuple[float, float] | None = None  # numeric only


@dataclass(frozen=True)
class GranulationScheme:
    """Per-attribute bit precision; numeric attribute with b bits gets 2**b bins."""

    bits: Mapping[str, int] = field(default_factory=dict)

    def bits_for(self, name: str) -> int:
        return self.bits.get(name, 0)

    @classmethod
    def uniform(cls, table: "InformationTable", bits: int,
                attrs: Sequence[str] | None = None) -> "GranulationScheme":
        """Apply one bits level to every numeric attribute (or the given subset)."""
        names = attrs if attrs is not None else [a.name for a in table.attributes]
        return cls({n: bits for n in names if table.attribute(n).kind == "numeric"})


class InformationTable:
    """Immutable universe of objects with condition attributes and one decision."""

    def __init__(self, attributes: Sequence[AttributeSpec],
                 columns: Mapping[str, Sequence], decision: str,
                 table_id: str = ""):
        names = [a.name for a in attributes]
        if len(set(names)) != len(names):
            raise DataError("duplicate attribute names")
        if decision not in names:
            raise DataError(f"missing decision column {decision!r}")
        self.attributes = list(attributes)
        self.decision = decision
        self.table_id = table_id
        self._spec_by_name = {a.name: a for a in self.attributes}

        lengths = {len(columns[n]) for n in names}
        if len(lengths) != 1:
            raise DataError("columns have unequal lengths")
        self.n = lengths.pop()
        if self.n < 1:
            raise DataError("empty table: need at least one object")

        self._columns: dict[str, object] = {}
        for spec in self.attributes:
            col = columns[spec.name]
            if spec.kind == "numeric":
                self._columns[spec.name] = np.asarray(
                    [np.nan if v is MISSING else float(v) for v in col], dtype=np.float64)
            else:
                self._columns[spec.name] = list(col)

        dec_spec = self._spec_by_name[decision]
        if dec_spec.kind != "categorical":
            raise DataError("decision attribute must be categorical")
        if any(v is MISSING for v in self._columns[decision]):
            raise DataError("decision column contains MISSING values")

    def attribute(self, name: str) -> AttributeSpec:
        try:
            return self._spec_by_name[name]
        except KeyError:
            raise DataError(f"unknown attribute {name!r}") from None

    def column(self, name: str):
        self.attribute(name)
        return self._columns[name]

    @property
    def condition_attributes(self) -> list[AttributeSpec]:
        return [a for a in self.attributes if a.name != self.decision]

    @property
    def decision_labels(self) -> list:
        return self._columns[self.decision]

    @classmethod
    def from_columns(cls, columns: Mapping[str, Sequence], decision: str,
                     kinds: Mapping[str, str] | None = None,
                     table_id: str = "") -> "InformationTable":
        """Build a table from in-memory columns, inferring kinds like the CSV loader."""
        kinds = dict(kinds or {})
        specs = []
        for name, col in columns.items():
            if name == decision:
                kind = "categorical"
            else:
                kind = kinds.get(name) or _infer_kind(col)
            rng = _observed_range(col) if kind == "numeric" else None
            specs.append(AttributeSpec(name, kind, rng))
        return cls(specs, columns, decision, table_id=table_id)


def _infer_kind(col: Sequence) -> str:
    saw_value = False
    for v in col:
        if v is MISSING:
            continue
        saw_value = True
        if isinstance(v, str):
            try:
                float(v)
            except ValueError:
                return "categorical"
        elif not isinstance(v, (int, float, np.floating, np.integer)):
            return "categorical"
    return "numeric" if saw_value else "categorical"


def _observed_range(col: Sequence) -> tuple[float, float] | None:
    vals = [float(v) for v in col if v is not MISSING]
    if not vals:
        return None
    return (min(vals), max(vals))


def load_table(csv_data: bytes | str, decision_name: str,
               schema_hints: Mapping[str, str] | None = None,
               table_id: str = "") -> InformationTable:
    """Parse a header-first CSV into an InformationTable.

    A column is numeric iff every non-missing cell parses as a real number,
    unless ``schema_hints`` overrides its kind. Empty cells and ``?`` are
    MISSING. The decision column must be total and is always categorical.
    """
    if isinstance(csv_data, bytes):
        csv_data = csv_data.decode("utf-8")
    reader = csv.reader(io.StringIO(csv_data))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty file") from None
    if len(set(header)) != len(header):
        raise DataError("duplicate column names in header")
    if decision_name not in header:
        raise DataError(f"missing decision column {decision_name!r}")

    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DataError(f"ragged row at line {lineno}: "
                            f"expected {len(header)} cells, got {len(row)}")
        rows.append(row)
    if not rows:
        raise DataError("empty file: no data rows")

    hints = dict(schema_hints or {})
    for name in hints:
        if name not in header:
            raise DataError(f"schema hint for unknown column {name!r}")

    columns: dict[str, list] = {name: [] for name in header}
    for row in rows:
        for name, cell in zip(header, row):
            cell = cell.strip()
            columns[name].append(MISSING if cell in _MISSING_TOKENS else cell)

    specs = []
    for name in header:
        col = columns[name]
        if name == decision_name:
            kind = "categorical"
        elif name in hints:
            kind = hints[name]
            if kind not in ("categorical", "numeric"):
                raise DataError(f"invalid kind {kind!r} for column {name!r}")
        else:
            kind = _infer_kind(col)
        if kind == "numeric":
            parsed = []
            for i, v in enumerate(col):
                if v is MISSING:
                    parsed.append(MISSING)
                    continue
                try:
                    parsed.append(float(v))
                except (TypeError, ValueError):
                    raise DataError(
                        f"column {name!r} declared numeric but row {i} "
                        f"has unparsable cell {v!r}") from None
            columns[name] = parsed
            specs.append(AttributeSpec(name, "numeric", _observed_range(parsed)))
        else:
            specs.append(AttributeSpec(name, "categorical"))
    return InformationTable(specs, columns, decision_name, table_id=table_id)


def factorize(tokens: Iterable) -> np.ndarray:
    """Integer codes for a token sequence, ordinals by first occurrence."""
    seen: dict = {}
    codes = []
    for t in tokens:
        code = seen.get(t)
        if code is None:
            code = seen[t] = len(seen)
        codes.append(code)
    return np.asarray(codes, dtype=np.int64)


@dataclass(frozen=True)
class DiscreteView:
    """Integer codes per (object, attribute) under one granulation scheme."""

    source: InformationTable
    scheme: GranulationScheme
    codes: np.ndarray  # shape (n, len(attributes)), int64
    _index: dict[str, int]

    def codes_for(self, name: str) -> np.ndarray:
        try:
            return self.codes[:, self._index[name]]
        except KeyError:
            raise DataError(f"unknown attribute {name!r}") from None

    @property
    def condition_names(self) -> list[str]:
        return [a.name for a in self.source.condition_attributes]


def discretize(table: InformationTable, scheme: GranulationScheme) -> DiscreteView:
    """Apply equal-width binning at the scheme's precision; see module docstring.

    Numeric value v with observed range [lo, hi] and b bits maps to
    floor((v-lo) / ((hi-lo)/2**b)), clamped to 2**b - 1 at the top edge;
    MISSING maps to the dedicated code 2**b. Categorical values map to
    first-occurrence ordinals regardless of bits.
    """
    for name, b in scheme.bits.items():
        spec = table.attribute(name)
        if spec.kind != "numeric":
            raise DataError(f"scheme references non-numeric attribute {name!r}")
        if b < 0:
            raise DataError(f"negative bits for attribute {name!r}")

    cols = []
    for spec in table.attributes:
        col = table.column(spec.name)
        if spec.kind == "numeric":
            cols.append(_bin_numeric(np.asarray(col), spec.observed_range,
                                     scheme.bits_for(spec.name)))
        else:
            cols.append(factorize(col))
    codes = np.column_stack(cols)
    index = {a.name: i for i, a in enumerate(table.attributes)}
    return DiscreteView(table, scheme, codes, index)


def _bin_numeric(values: np.ndarray, rng: tuple[float, float] | None,
                 bits: int) -> np.ndarray:
    nbins = 1 << bits
    out = np.full(values.shape, nbins, dtype=np.int64)  # missing bin by default
    mask = ~np.isnan(values)
    if rng is None or rng[0] == rng[1]:
        out[mask] = 0
        return out
    lo, hi = rng
    # t*2**b halves bin widths exactly as b grows (power-of-two scaling is
    # exact in binary floating point), which keeps levels nested.
    t = (values[mask] - lo) / (hi - lo)
    codes = np.floor(t * nbins).astype(np.int64)
    out[mask] = np.clip(codes, 0, nbins - 1)
    return out


class Partition:
    """Equivalence classes of U; block ids assigned by first occurrence."""

    def __init__(self, block_of: np.ndarray):
        self.block_of = np.asarray(block_of, dtype=np.int64)
        self.n = len(self.block_of)
        self.block_count = int(self.block_of.max()) + 1 if self.n else 0

    @cached_property
    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for i, b in enumerate(self.block_of.tolist()):
            out[b].append(i)
        return out

    def block_sizes(self) -> np.ndarray:
        return np.bincount(self.block_of, minlength=self.block_count)

    def refines(self, other: "Partition") -> bool:
        """True iff every block of self lies within a single block of other."""
        if self.n != other.n:
            return False
        owner = np.full(self.block_count, -1, dtype=np.int64)
        for i in range(self.n):
            b = self.block_of[i]
            if owner[b] == -1:
                owner[b] = other.block_of[i]
            elif owner[b] != other.block_of[i]:
                return False
        return True

    @classmethod
    def from_labels(cls, labels: Iterable) -> "Partition":
        return cls(factorize(labels))

    @classmethod
    def single_block(cls, n: int) -> "Partition":
        return cls(np.zeros(n, dtype=np.int64))


def _first_occurrence_ids(group_ids: np.ndarray) -> np.ndarray:
    """Relabel arbitrary group ids so ids follow first occurrence in object order."""
    n = len(group_ids)
    k = int(group_ids.max()) + 1 if n else 0
    first = np.full(k, n, dtype=np.int64)
    np.minimum.at(first, group_ids, np.arange(n))
    order = np.argsort(first, kind="stable")
    rank = np.empty(k, dtype=np.int64)
    rank[order] = np.arange(k)
    return rank[group_ids]


def partition_by(view: DiscreteView, attrs: Sequence[str]) -> Partition:
    """Group objects whose code tuples over ``attrs`` coincide.

    Empty ``attrs`` yields the single-block partition.
    """
    table = view.source
    for name in attrs:
        table.attribute(name)
        if name == table.decision:
            raise DataError("cannot partition by the decision attribute")
    if not attrs:
        return Partition.single_block(table.n)

    # Fold attributes in declaration order so the result is independent of
    # the order attrs were given in.
    decl = [a.name for a in table.attributes]
    ordered = sorted(set(attrs), key=decl.index)
    ids = np.zeros(table.n, dtype=np.int64)
    for name in ordered:
        col = view.codes_for(name)
        keys = ids * (int(col.max()) + 1) + col
        _, ids = np.unique(keys, return_inverse=True)
    return Partition(_first_occurrence_ids(ids))
