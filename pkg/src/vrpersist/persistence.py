"""Scale-valued persistence pairs, barcodes and persistence diagrams."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable, Optional

from .complex import Filtration, build_vr_filtration
from .homology import ReductionResult, reduction

INF = math.inf


@dataclass(frozen=True, order=True)
class PersistencePair:
    dim: int
    birth: float
    death: float = INF

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")
        if not self.birth <= self.death:
            raise ValueError(f"birth {self.birth} exceeds death {self.death}")

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    @property
    def essential(self) -> bool:
        return self.death == INF

    @property
    def zero_persistence(self) -> bool:
        return self.birth == self.death


def pairs_to_scales(result: ReductionResult, filtration: Filtration,
                    index_level: bool = False) -> list[PersistencePair]:
    """Map index pairs of a reduction onto filtration scales.

    Homology in the top dimension of a capped filtration is dropped: without
    the next dimension up its classes can never die. With ``index_level``
    births and deaths are 1-based positions in ``filtration.scales`` rather
    than scale values.
    """
    values = filtration.values
    if index_level:
        step = {v: n + 1 for n, v in enumerate(filtration.scales)}
        values = [float(step[v]) for v in values]
    dims = filtration.dims()
    limit = math.inf if filtration.max_dim is None else filtration.max_dim
    out = [PersistencePair(int(dims[b]), values[b], values[d])
           for b, d in result.pairs if dims[b] < limit]
    out += [PersistencePair(int(dims[b]), values[b]) for b in result.essential if dims[b] < limit]
    out.sort()
    return out


@dataclass(frozen=True)
class Barcode:
    bars: tuple[PersistencePair, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[PersistencePair]) -> "Barcode":
        return cls(tuple(sorted(pairs)))

    def __len__(self):
        return len(self.bars)

    def dimension(self, k: int) -> list[PersistencePair]:
        return [b for b in self.bars if b.dim == k]

    @property
    def dims(self) -> list[int]:
        return sorted({b.dim for b in self.bars})


@dataclass(frozen=True)
class DiagramPoint:
    birth: float
    death: float
    dim: int
    multiplicity: int = 1


@dataclass(frozen=True)
class PersistenceDiagram:
    points: tuple[DiagramPoint, ...]
    infinity_cap: Optional[float] = None

    def dimension(self, k: int) -> list[DiagramPoint]:
        return [q for q in self.points if q.dim == k]

    def total(self, k: Optional[int] = None) -> int:
        return sum(q.multiplicity for q in self.points if k is None or q.dim == k)


def build_diagram(pairs: Iterable[PersistencePair], drop_zero: bool = True,
                  infinity_cap: Optional[float] = None) -> PersistenceDiagram:
    """Collapse coincident pairs into diagram points carrying multiplicities."""
    pairs = list(pairs)
    if infinity_cap is not None:
        finite = [q.death for q in pairs if not q.essential]
        if finite and infinity_cap < max(finite):
            raise ValueError(f"infinity_cap {infinity_cap} is below the largest finite death {max(finite)}")
    mult = Counter((q.dim, q.birth, q.death) for q in pairs
                   if not (drop_zero and q.zero_persistence))
    points = tuple(DiagramPoint(b, d, k, n) for (k, b, d), n in sorted(mult.items()))
    return PersistenceDiagram(points, infinity_cap)


def top_features(pairs: Iterable[PersistencePair], n: int) -> list[PersistencePair]:
    """The ``n`` most persistent pairs; ties broken by (dimension, birth)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ranked = sorted(pairs, key=lambda q: (-q.persistence, q.dim, q.birth))
    return ranked[:n]


# --- pairs file -------------------------------------------------------------

def format_number(x: float) -> str:
    """12 significant digits, shortest form, locale independent."""
    s = f"{x:.12g}"
    return s if any(c in s for c in ".en") else s + ".0"


def pairs_to_records(pairs: Iterable[PersistencePair]) -> list[dict]:
    return [{"dim": q.dim, "birth": q.birth, "death": None if q.essential else q.death}
            for q in sorted(pairs)]


def dumps_pairs(pairs: Iterable[PersistencePair]) -> str:
    lines = []
    for r in pairs_to_records(pairs):
        death = "null" if r["death"] is None else format_number(r["death"])
        lines.append(f'  {{"dim": {r["dim"]}, "birth": {format_number(r["birth"])}, "death": {death}}}')
    if not lines:
        return "[]\n"
    return "[\n" + ",\n".join(lines) + "\n]\n"


def write_pairs(pairs: Iterable[PersistencePair], stream: IO[str]) -> None:
    stream.write(dumps_pairs(pairs))


class PairsFormatError(ValueError):
    pass


def loads_pairs(text: str) -> list[PersistencePair]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PairsFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise PairsFormatError("pairs file must hold a JSON array")
    out = []
    for n, rec in enumerate(data):
        if not isinstance(rec, dict) or set(rec) != {"dim", "birth", "death"}:
            raise PairsFormatError(f"record {n}: expected keys dim, birth, death")
        dim, birth, death = rec["dim"], rec["birth"], rec["death"]
        if isinstance(dim, bool) or not isinstance(dim, int):
            raise PairsFormatError(f"record {n}: dim must be an integer")
        if isinstance(birth, bool) or not isinstance(birth, (int, float)):
            raise PairsFormatError(f"record {n}: birth must be a number")
        if death is not None and (isinstance(death, bool) or not isinstance(death, (int, float))):
            raise PairsFormatError(f"record {n}: death must be a number or null")
        try:
            out.append(PersistencePair(dim, float(birth), INF if death is None else float(death)))
        except ValueError as exc:
            raise PairsFormatError(f"record {n}: {exc}") from None
    return out


def read_pairs(stream: IO[str]) -> list[PersistencePair]:
    return loads_pairs(stream.read())


def vr_persistence(dm, max_dim: int = 2, max_eps: float = INF, field=None) -> list[PersistencePair]:
    """Distance matrix to scale-valued pairs in one call (zero-length pairs kept)."""
    filt = build_vr_filtration(dm, max_dim=max_dim, max_eps=max_eps)
    return pairs_to_scales(reduction(filt, field), filt)
