"""Point clouds, distance matrices and the readers for their text formats."""

from __future__ import annotations

import io
import os
import re
from dataclasses import dataclass
from typing import IO, Iterator, Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

METRICS = {
    "euclidean": "euclidean",
    "manhattan": "cityblock",
    "chebyshev": "chebyshev",
}

Source = Union[str, bytes, "os.PathLike[str]", IO[str], IO[bytes]]

_SPLIT = re.compile(r"[,\s]+")


class ParseError(ValueError):
    """Malformed input text. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray  # shape (m, n), read-only

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, pts.shape[1] if pts.ndim == 2 else 0)
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "points", _frozen(pts))

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric, zero-diagonal, nonnegative matrix of pairwise distances.

    The triangle inequality is not checked; the Rips construction only ever
    compares single entries against a threshold.
    """

    values: np.ndarray  # shape (m, m), read-only

    def __post_init__(self):
        d = np.asarray(self.values, dtype=float)
        if d.size == 0:
            d = d.reshape(0, 0)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ValueError("distances must be finite")
        if np.any(d < 0):
            raise ValueError("distances must be nonnegative")
        if np.any(np.diagonal(d) != 0):
            raise ValueError("diagonal of a distance matrix must be zero")
        if not np.array_equal(d, d.T):
            raise ValueError("distance matrix must be symmetric")
        object.__setattr__(self, "values", _frozen(d))

    @classmethod
    def from_lower(cls, rows) -> "DistanceMatrix":
        """Build from rows ``k = 1..m-1`` holding ``d(k,0) .. d(k,k-1)``."""
        rows = [np.asarray(r, dtype=float).ravel() for r in rows]
        m = len(rows) + 1 if rows else 0
        d = np.zeros((m, m))
        for k, row in enumerate(rows, start=1):
            if row.shape[0] != k:
                raise ValueError(f"row {k} has {row.shape[0]} entries, expected {k}")
            d[k, :k] = row
        d = d + d.T
        return cls(d)

    def __len__(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, ij) -> float:
        return float(self.values[ij])

    def lower(self) -> list[np.ndarray]:
        return [self.values[k, :k].copy() for k in range(1, len(self))]


def pairwise_distances(cloud: PointCloud, metric: str = "euclidean") -> DistanceMatrix:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {sorted(METRICS)}")
    m = len(cloud)
    if m < 2:
        return DistanceMatrix(np.zeros((m, m)))
    return DistanceMatrix(squareform(pdist(cloud.points, METRICS[metric])))


def _open_text(source: Source) -> tuple[IO[str], bool]:
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8"), True
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8")), True
    if isinstance(source, io.TextIOBase):
        return source, False
    # binary stream
    return io.TextIOWrapper(source, encoding="utf-8"), False


def _data_lines(source: Source) -> Iterator[tuple[int, str]]:
    stream, owned = _open_text(source)
    try:
        for lineno, line in enumerate(stream, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            yield lineno, text
    finally:
        if owned:
            stream.close()


def _floats(lineno: int, tokens: list[str]) -> list[float]:
    out = []
    for tok in tokens:
        try:
            x = float(tok)
        except ValueError:
            raise ParseError(lineno, f"non-numeric token {tok!r}") from None
        if not np.isfinite(x):
            raise ParseError(lineno, f"non-finite value {tok!r}")
        out.append(x)
    return out


def load_point_cloud(source: Source, format: str = "csv-points") -> PointCloud:
    """Read one point per line, comma-separated coordinates.

    Lines starting with ``#`` are treated as headers/comments and skipped,
    as are blank lines. Row order becomes point index order.
    """
    if format not in ("csv-points", "csv"):
        raise ValueError(f"unsupported point format {format!r}")
    rows: list[list[float]] = []
    arity = None
    for lineno, text in _data_lines(source):
        row = _floats(lineno, [t.strip() for t in text.split(",")])
        if arity is None:
            arity = len(row)
        elif len(row) != arity:
            raise ParseError(lineno, f"expected {arity} coordinates, found {len(row)}")
        rows.append(row)
    if not rows:
        return PointCloud(np.zeros((0, 0)))
    return PointCloud(np.array(rows))


def load_distance_matrix(source: Source) -> DistanceMatrix:
    """Read the lower-triangular format: data line k holds d(k,0) .. d(k,k-1).

    Entries may be separated by commas or whitespace. An input with no data
    lines is the empty (0-point) matrix.
    """
    rows = []
    for lineno, text in _data_lines(source):
        k = len(rows) + 1
        row = _floats(lineno, [t for t in _SPLIT.split(text) if t])
        if len(row) != k:
            raise ParseError(lineno, f"expected {k} entries for point {k}, found {len(row)}")
        if any(x < 0 for x in row):
            raise ParseError(lineno, "negative distance")
        rows.append(row)
    return DistanceMatrix.from_lower(rows)


def write_distance_matrix(dm: DistanceMatrix, stream: IO[str]) -> None:
    for row in dm.lower():
        stream.write(",".join(f"{x:.17g}" for x in row) + "\n")
