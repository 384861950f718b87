"""DMU input/output data: CSV loading, validation and serialization.

CSV layout::

    dmu,in:x1,in:x2,out:y
    DMU1,1,7,1
    # comment lines are ignored

Row numbers in error messages are physical line numbers (the header is row 1).
"""

from __future__ import annotations

import csv
import hashlib
import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Sequence

import numpy as np

__all__ = ["DMUDataset", "DatasetError", "dmu_column", "load_dataset", "load_dataset_path", "dump_dataset"]

_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")


class DatasetError(ValueError):
    """Malformed or invalid DMU data."""


@dataclass(frozen=True, eq=False)
class DMUDataset:
    """Names plus an ``m x n`` input matrix and an ``s x n`` output matrix (one column per DMU)."""

    names: tuple[str, ...]
    inputs: np.ndarray
    outputs: np.ndarray
    input_labels: tuple[str, ...] = ()
    output_labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        names = tuple(str(n) for n in self.names)
        X = np.array(self.inputs, dtype=float)
        Y = np.array(self.outputs, dtype=float)
        if X.ndim != 2 or Y.ndim != 2:
            raise DatasetError("inputs and outputs must be 2-D matrices")
        n = len(names)
        if n < 1:
            raise DatasetError("dataset needs at least one DMU")
        if X.shape[1] != n or Y.shape[1] != n:
            raise DatasetError(f"matrices must have one column per DMU ({n})")
        if X.shape[0] < 1 or Y.shape[0] < 1:
            raise DatasetError("dataset needs at least one input and one output")
        if len(set(names)) != n:
            dup = next(x for x in names if names.count(x) > 1)
            raise DatasetError(f"duplicate DMU name {dup!r}")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise DatasetError("data values must be finite")
        if np.any(X < 0) or np.any(Y < 0):
            raise DatasetError("data values must be nonnegative")
        for j, name in enumerate(names):
            if not np.any(X[:, j] > 0):
                raise DatasetError(f"DMU {name!r} has no positive input")
            if not np.any(Y[:, j] > 0):
                raise DatasetError(f"DMU {name!r} has no positive output")
        in_labels = tuple(self.input_labels) or tuple(f"x{i + 1}" for i in range(X.shape[0]))
        out_labels = tuple(self.output_labels) or tuple(f"y{r + 1}" for r in range(Y.shape[0]))
        if len(in_labels) != X.shape[0] or len(out_labels) != Y.shape[0]:
            raise DatasetError("label counts must match matrix rows")
        X.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "inputs", X)
        object.__setattr__(self, "outputs", Y)
        object.__setattr__(self, "input_labels", in_labels)
        object.__setattr__(self, "output_labels", out_labels)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return self.inputs.shape[0]

    @property
    def s(self) -> int:
        return self.outputs.shape[0]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown DMU {name!r}") from None

    def column(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        return self.inputs[:, j], self.outputs[:, j]

    @property
    def max_abs_value(self) -> float:
        return float(max(self.inputs.max(), self.outputs.max()))

    def digest(self) -> str:
        return hashlib.sha256(dump_dataset(self)).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DMUDataset):
            return NotImplemented
        return (
            self.names == other.names
            and self.input_labels == other.input_labels
            and self.output_labels == other.output_labels
            and np.array_equal(self.inputs, other.inputs)
            and np.array_equal(self.outputs, other.outputs)
        )

    __hash__ = None  # type: ignore[assignment]


def dmu_column(ds: DMUDataset, name: str) -> tuple[np.ndarray, np.ndarray]:
    """Input and output vectors of the DMU called ``name``."""
    return ds.column(ds.index(name))


def _parse_number(cell: str, row: int, column: str) -> float:
    text = cell.strip()
    if not _NUMBER.fullmatch(text):
        raise DatasetError(f"non-numeric value {cell!r} at row {row}, column {column}")
    value = float(text)
    if value < 0:
        raise DatasetError(f"negative value at row {row}, column {column}")
    if not np.isfinite(value):
        raise DatasetError(f"non-finite value at row {row}, column {column}")
    return value


def load_dataset(source: BinaryIO | bytes | str) -> DMUDataset:
    """Parse CSV text (bytes, a binary stream, or an already decoded string)."""
    if isinstance(source, bytes):
        raw = source
    elif isinstance(source, str):
        raw = source.encode("utf-8")
    else:
        raw = source.read()
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise DatasetError(f"input is not valid UTF-8: {exc}") from None

    lines = [(no, line) for no, line in enumerate(text.splitlines(), start=1)]
    lines = [(no, line) for no, line in lines if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise DatasetError("empty CSV: missing header row")
    try:
        parsed = list(csv.reader([line for _, line in lines], strict=True))
    except csv.Error as exc:
        raise DatasetError(f"malformed CSV: {exc}") from None

    header_no, header = lines[0][0], [h.strip() for h in parsed[0]]
    if not header or header[0] != "dmu":
        raise DatasetError(f"row {header_no}: first column must be named 'dmu'")
    in_cols = [k for k, h in enumerate(header) if h.startswith("in:")]
    out_cols = [k for k, h in enumerate(header) if h.startswith("out:")]
    for k, h in enumerate(header[1:], start=1):
        if not (h.startswith("in:") or h.startswith("out:")) or h in ("in:", "out:"):
            raise DatasetError(f"row {header_no}, column {k + 1}: bad header {h!r}; expected in:<label> or out:<label>")
    if not in_cols:
        raise DatasetError("missing in: columns")
    if not out_cols:
        raise DatasetError("missing out: columns")

    names: list[str] = []
    X: list[list[float]] = []
    Y: list[list[float]] = []
    seen: dict[str, int] = {}
    for (no, _), cells in zip(lines[1:], parsed[1:]):
        if len(cells) != len(header):
            raise DatasetError(f"row {no}: expected {len(header)} cells, found {len(cells)}")
        name = cells[0].strip()
        if not name:
            raise DatasetError(f"row {no}, column dmu: empty DMU name")
        if name in seen:
            raise DatasetError(f"row {no}, column dmu: duplicate DMU name {name!r} (first at row {seen[name]})")
        seen[name] = no
        x = [_parse_number(cells[k], no, header[k]) for k in in_cols]
        y = [_parse_number(cells[k], no, header[k]) for k in out_cols]
        if not any(v > 0 for v in x):
            raise DatasetError(f"row {no}: DMU {name!r} has no positive input")
        if not any(v > 0 for v in y):
            raise DatasetError(f"row {no}: DMU {name!r} has no positive output")
        names.append(name)
        X.append(x)
        Y.append(y)
    if not names:
        raise DatasetError("dataset has no DMU rows")
    return DMUDataset(
        names=tuple(names),
        inputs=np.array(X).T,
        outputs=np.array(Y).T,
        input_labels=tuple(header[k][3:] for k in in_cols),
        output_labels=tuple(header[k][4:] for k in out_cols),
    )


def load_dataset_path(path: str | Path) -> DMUDataset:
    with open(path, "rb") as fh:
        return load_dataset(fh)


def dump_dataset(ds: DMUDataset) -> bytes:
    """Serialize to CSV; ``repr`` keeps every float bit-exact on reload."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dmu", *(f"in:{h}" for h in ds.input_labels), *(f"out:{h}" for h in ds.output_labels)])
    for j, name in enumerate(ds.names):
        w.writerow([name, *(repr(float(v)) for v in ds.inputs[:, j]), *(repr(float(v)) for v in ds.outputs[:, j])])
    return buf.getvalue().encode("utf-8")


def from_columns(
    names: Sequence[str],
    columns: Sequence[tuple[Sequence[float], Sequence[float]]],
) -> DMUDataset:
    """Build a dataset from per-DMU ``(inputs, outputs)`` pairs."""
    X = np.array([c[0] for c in columns], dtype=float).T
    Y = np.array([c[1] for c in columns], dtype=float).T
    return DMUDataset(tuple(names), X, Y)
