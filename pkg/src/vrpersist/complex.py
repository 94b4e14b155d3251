"""Simplices, filtrations and the Vietoris-Rips builder."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional

import numpy as np

from .metric import DistanceMatrix


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True, order=False)
class Simplex:
    vertices: tuple[int, ...]
    value: float = 0.0

    def __post_init__(self):
        verts = tuple(int(v) for v in self.vertices)
        if not verts:
            raise ValueError("a simplex needs at least one vertex")
        if any(a >= b for a, b in zip(verts, verts[1:])) or verts[0] < 0:
            raise ValueError(f"vertices must be strictly increasing and nonnegative: {verts}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "value", float(self.value))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def sort_key(self):
        return (self.value, len(self.vertices), self.vertices)


def face_enumeration(simplex: Simplex | tuple[int, ...]) -> list[tuple[int, ...]]:
    """Codimension-1 faces; the i-th face drops the vertex at position i."""
    verts = simplex.vertices if isinstance(simplex, Simplex) else tuple(simplex)
    if len(verts) < 2:
        return []
    return [verts[:i] + verts[i + 1:] for i in range(len(verts))]


@dataclass(frozen=True, eq=False)
class Filtration:
    """Simplices in (value, dimension, lexicographic) order.

    Every prefix of ``simplices`` is a simplicial complex. ``max_dim`` is the
    dimension cap used when the filtration was built, or None when the
    complex was given explicitly and is not truncated.
    """

    simplices: tuple[Simplex, ...]
    max_dim: Optional[int] = None
    _index: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        simplices = tuple(self.simplices)
        object.__setattr__(self, "simplices", simplices)
        index = {s.vertices: j for j, s in enumerate(simplices)}
        if len(index) != len(simplices):
            raise FiltrationError("duplicate simplex in filtration")
        object.__setattr__(self, "_index", index)
        self._cache["values"] = [s.value for s in simplices]

    @classmethod
    def from_simplices(cls, simplices: Iterable, max_dim: Optional[int] = None) -> "Filtration":
        """Sort and validate an explicit complex.

        Items are Simplex objects or ``(vertices, value)`` pairs; bare vertex
        tuples get value 0.
        """
        items = []
        for s in simplices:
            if isinstance(s, Simplex):
                items.append(s)
            elif len(s) == 2 and isinstance(s[0], (tuple, list)):
                items.append(Simplex(tuple(sorted(s[0])), s[1]))
            else:
                items.append(Simplex(tuple(sorted(s)), 0.0))
        items.sort(key=Simplex.sort_key)
        filt = cls(tuple(items), max_dim)
        check_closure(filt)
        return filt

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __getitem__(self, j: int) -> Simplex:
        return self.simplices[j]

    def index(self, vertices: tuple[int, ...]) -> int:
        return self._index[tuple(vertices)]

    @property
    def values(self) -> list[float]:
        return self._cache["values"]

    @property
    def scales(self) -> tuple[float, ...]:
        if "scales" not in self._cache:
            self._cache["scales"] = tuple(sorted(set(self.values)))
        return self._cache["scales"]

    @property
    def top_dim(self) -> int:
        return max((s.dim for s in self.simplices), default=-1)

    def dims(self) -> np.ndarray:
        return np.fromiter((s.dim for s in self.simplices), dtype=int, count=len(self))

    def counts(self, prefix: Optional[int] = None) -> list[int]:
        """Number of k-simplices, k = 0..top_dim, within the first ``prefix``."""
        dims = self.dims()[: len(self) if prefix is None else prefix]
        return np.bincount(dims, minlength=self.top_dim + 1).tolist() if len(self) else []


def check_closure(filt: Filtration) -> None:
    """Raise FiltrationError unless every face precedes its coface with <= value."""
    prev = None
    for j, s in enumerate(filt.simplices):
        key = s.sort_key()
        if prev is not None and key < prev:
            raise FiltrationError(f"simplex {s.vertices} out of order at position {j}")
        prev = key
        for face in face_enumeration(s):
            i = filt._index.get(face)
            if i is None:
                raise FiltrationError(f"face {face} of {s.vertices} missing")
            if i >= j or filt.simplices[i].value > s.value:
                raise FiltrationError(f"face {face} does not precede {s.vertices}")


def build_vr_filtration(dm: DistanceMatrix, max_dim: int = 2, max_eps: float = math.inf) -> Filtration:
    """Vietoris-Rips filtration of ``dm`` up to dimension ``max_dim``.

    A vertex set spans a simplex at scale eps when all its pairwise distances
    are <= eps, so each simplex enters at its diameter. Cliques are grown from
    each vertex by adding lower-indexed common neighbours in the
    ``max_eps``-neighbourhood graph.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    d = dm.values
    m = d.shape[0]
    adj = (d <= max_eps)
    np.fill_diagonal(adj, False)
    lower = [set(np.flatnonzero(adj[v, :v]).tolist()) for v in range(m)]

    out: list[Simplex] = []

    def expand(verts: tuple[int, ...], value: float, cands: set[int]):
        out.append(Simplex(tuple(reversed(verts)), value))
        if len(verts) > max_dim:
            return
        for w in sorted(cands, reverse=True):
            dw = d[w]
            val = max(value, max(dw[v] for v in verts))
            expand(verts + (w,), float(val), cands & lower[w])

    for v in range(m):
        expand((v,), 0.0, lower[v])

    out.sort(key=Simplex.sort_key)
    return Filtration(tuple(out), max_dim)


def complex_at(filtration: Filtration, eps: float) -> int:
    """Length of the prefix holding every simplex with value <= eps."""
    return bisect.bisect_right(filtration.values, eps)


def dump_filtration(filtration: Filtration, stream: IO[str]) -> None:
    for s in filtration:
        stream.write(f"{s.value:.12g} {s.dim} " + " ".join(map(str, s.vertices)) + "\n")
