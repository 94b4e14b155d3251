"""Boundary matrices over F_p, persistence reduction and Betti numbers.

Two independent routes compute the same ranks:

* ``reduce`` performs sparse left-to-right column reduction of the whole
  filtration boundary matrix and reads ranks off the resulting pairing;
* ``bruteforce_betti_oracle`` (and ``persistent_betti(method="rank")``)
  build dense per-dimension boundary blocks from scratch and run plain
  Gaussian elimination. They share no code with the sparse path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complex import Filtration, FiltrationError, complex_at, face_enumeration


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int = 2

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not _is_prime(int(self.p)):
            raise ValueError(f"field characteristic must be prime, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))

    def inv(self, a: int) -> int:
        return pow(a, self.p - 2, self.p)


F2 = FieldSpec(2)


def _field(field) -> FieldSpec:
    if field is None:
        return F2
    return field if isinstance(field, FieldSpec) else FieldSpec(field)


@dataclass(frozen=True, eq=False)
class BoundaryMatrix:
    """Sparse columns in filtration order.

    ``columns[j]`` is a pair ``(rows, coeffs)`` with rows strictly increasing
    and coefficients in 1..p-1.
    """

    columns: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    dims: tuple[int, ...]
    field: FieldSpec

    def __len__(self) -> int:
        return len(self.columns)

    def to_dense(self) -> np.ndarray:
        n = len(self.columns)
        a = np.zeros((n, n), dtype=np.int64)
        for j, (rows, coeffs) in enumerate(self.columns):
            a[list(rows), j] = coeffs
        return a


def build_boundary_matrix(filtration: Filtration, field: FieldSpec | int | None = None) -> BoundaryMatrix:
    field = _field(field)
    p = field.p
    cols = []
    for j, s in enumerate(filtration):
        entries = []
        for i, face in enumerate(face_enumeration(s)):
            try:
                row = filtration.index(face)
            except KeyError:
                raise FiltrationError(f"face {face} of simplex {s.vertices} is not in the filtration") from None
            if row >= j:
                raise FiltrationError(f"face {face} appears after its coface {s.vertices}")
            entries.append((row, (-1) ** i % p))
        entries.sort()
        cols.append((tuple(r for r, _ in entries), tuple(c for _, c in entries)))
    return BoundaryMatrix(tuple(cols), tuple(s.dim for s in filtration), field)


@dataclass(frozen=True)
class ReductionResult:
    pairs: tuple[tuple[int, int], ...]  # (birth, death) sorted by death
    essential: tuple[int, ...]          # sorted
    lowmap: dict                        # death column -> its lowest row

    def births(self) -> set[int]:
        return {b for b, _ in self.pairs}


def _add_mod_p(ra, ca, rb, cb, f, p):
    """Return column a + f * b over F_p, both sorted by row."""
    rows, coeffs = [], []
    i = k = 0
    na, nb = len(ra), len(rb)
    while i < na and k < nb:
        x, y = ra[i], rb[k]
        if x < y:
            rows.append(x)
            coeffs.append(ca[i])
            i += 1
        elif y < x:
            rows.append(y)
            coeffs.append(f * cb[k] % p)
            k += 1
        else:
            c = (ca[i] + f * cb[k]) % p
            if c:
                rows.append(x)
                coeffs.append(c)
            i += 1
            k += 1
    if i < na:
        rows.extend(ra[i:])
        coeffs.extend(ca[i:])
    while k < nb:
        rows.append(rb[k])
        coeffs.append(f * cb[k] % p)
        k += 1
    return rows, coeffs


def reduce(matrix: BoundaryMatrix, twist: bool = False) -> ReductionResult:
    """Reduce to distinct lowest rows and read off the persistence pairing.

    With ``twist`` the columns are processed by decreasing dimension and the
    column of every simplex found to be a birth is cleared without being
    reduced. The pairing is the same either way.
    """
    p = matrix.field.p
    n = len(matrix)
    dims = matrix.dims
    pivot_of: dict[int, int] = {}
    lowmap: dict[int, int] = {}
    cleared: set[int] = set()
    reduced_rows: dict[int, list] = {}
    reduced_coeffs: dict[int, list] = {}

    if twist:
        top = max(dims, default=0)
        order = [j for k in range(top, 0, -1) for j in range(n) if dims[j] == k]
    else:
        order = range(n)

    for j in order:
        if j in cleared:
            continue
        rows, coeffs = matrix.columns[j]
        if not rows:
            continue
        if p == 2:
            col = list(rows)
            while col and col[-1] in pivot_of:
                other = reduced_rows[pivot_of[col[-1]]]
                col = sorted(set(col).symmetric_difference(other))
            coeffs = [1] * len(col)
        else:
            col, coeffs = list(rows), list(coeffs)
            while col and col[-1] in pivot_of:
                k = pivot_of[col[-1]]
                f = (-coeffs[-1] * pow(reduced_coeffs[k][-1], p - 2, p)) % p
                col, coeffs = _add_mod_p(col, coeffs, reduced_rows[k], reduced_coeffs[k], f, p)
        if col:
            low = col[-1]
            pivot_of[low] = j
            lowmap[j] = low
            reduced_rows[j] = col
            reduced_coeffs[j] = coeffs
            if twist:
                cleared.add(low)

    pairs = tuple(sorted(((low, j) for j, low in lowmap.items()), key=lambda t: t[1]))
    paired = set(lowmap) | set(pivot_of)
    essential = tuple(j for j in range(n) if j not in paired)
    return ReductionResult(pairs, essential, dict(sorted(lowmap.items())))


def reduction(filtration: Filtration, field: FieldSpec | int | None = None) -> ReductionResult:
    """Reduce the filtration's boundary matrix, caching the result on it."""
    field = _field(field)
    key = ("reduction", field.p)
    if key not in filtration._cache:
        filtration._cache[key] = reduce(build_boundary_matrix(filtration, field))
    return filtration._cache[key]


def prefix_betti(filtration: Filtration, prefix: int, field: FieldSpec | int | None = None) -> list[int]:
    """Betti numbers of the first ``prefix`` simplices taken as a complex.

    No truncation check: for a capped Rips filtration the top dimension is
    reported as the complex stands, not as the full Rips complex would be.
    """
    if not 0 <= prefix <= len(filtration):
        raise ValueError(f"prefix {prefix} outside 0..{len(filtration)}")
    dims = filtration.dims()
    counts = filtration.counts(prefix)
    top = len(counts)
    while top and counts[top - 1] == 0:
        top -= 1
    rank = [0] * (top + 1)
    for _, d in reduction(filtration, field).pairs:
        if d < prefix:
            rank[dims[d]] += 1
    return [counts[k] - rank[k] - rank[k + 1] for k in range(top)]


def _check_dim(filtration: Filtration, k: int) -> None:
    if k < 0:
        raise ValueError(f"homology dimension must be >= 0, got {k}")
    if filtration.max_dim is not None and k > filtration.max_dim - 1:
        raise ValueError(
            f"H_{k} needs simplices of dimension {k + 1} but the filtration was built "
            f"with max_dim={filtration.max_dim}; rebuild with max_dim >= {k + 1}"
        )


def betti_numbers(filtration: Filtration, prefix: Optional[int] = None,
                  field: FieldSpec | int | None = None, up_to_dim: int = 1) -> list[int]:
    """beta_0 .. beta_{up_to_dim} of the prefix complex."""
    _check_dim(filtration, up_to_dim)
    prefix = len(filtration) if prefix is None else prefix
    b = prefix_betti(filtration, prefix, field)
    return (b + [0] * (up_to_dim + 1))[: up_to_dim + 1]


def _clamp_window(filtration: Filtration, i: int, p: int) -> tuple[float, float]:
    scales = filtration.scales
    if p < 0:
        raise ValueError("persistence window p must be >= 0")
    if not 0 <= i < len(scales):
        raise IndexError(f"scale index {i} outside 0..{len(scales) - 1}")
    return scales[i], scales[min(i + p, len(scales) - 1)]


def persistent_betti(filtration: Filtration, i: int, p: int, field: FieldSpec | int | None = None,
                     k: int = 1, method: str = "pairs") -> int:
    """Rank of the classes of K_i still alive in K_{i+p}.

    ``i`` indexes ``filtration.scales``; ``i + p`` is clamped to the last
    scale. ``method="pairs"`` counts reduction pairs, ``method="rank"`` does
    rank arithmetic on dense boundary blocks of the two prefixes.
    """
    _check_dim(filtration, k)
    eps_i, eps_j = _clamp_window(filtration, i, p)
    if method == "rank":
        return _persistent_betti_rank(filtration, complex_at(filtration, eps_i),
                                      complex_at(filtration, eps_j), _field(field).p, k)
    if method != "pairs":
        raise ValueError(f"unknown method {method!r}")
    res = reduction(filtration, field)
    vals = filtration.values
    dims = filtration.dims()
    alive = sum(1 for b, d in res.pairs
                if dims[b] == k and vals[b] <= eps_i and vals[d] > eps_j)
    alive += sum(1 for b in res.essential if dims[b] == k and vals[b] <= eps_i)
    return alive


# --- dense oracle -----------------------------------------------------------

def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank over F_p by Gauss-Jordan elimination on a dense integer copy."""
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape if a.ndim == 2 else (0, 0)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        r += 1
    return r


def _dense_blocks(filtration: Filtration, prefix: int, p: int):
    """Per-dimension simplex lists and dense boundary blocks of a prefix."""
    by_dim: list[list[tuple[int, ...]]] = []
    for s in filtration.simplices[:prefix]:
        while len(by_dim) <= s.dim:
            by_dim.append([])
        by_dim[s.dim].append(s.vertices)
    pos = [{v: n for n, v in enumerate(lst)} for lst in by_dim]
    blocks = [np.zeros((0, len(by_dim[0]) if by_dim else 0), dtype=np.int64)]
    for k in range(1, len(by_dim)):
        blk = np.zeros((len(by_dim[k - 1]), len(by_dim[k])), dtype=np.int64)
        for c, verts in enumerate(by_dim[k]):
            for drop in range(len(verts)):
                face = verts[:drop] + verts[drop + 1:]
                blk[pos[k - 1][face], c] = 1 if drop % 2 == 0 else p - 1
        blocks.append(blk)
    return by_dim, blocks


def bruteforce_betti_oracle(filtration: Filtration, prefix: Optional[int] = None,
                            field: FieldSpec | int | None = None, cap: int = 4096) -> list[int]:
    """Betti numbers of a prefix complex from dense ranks of each boundary block."""
    prefix = len(filtration) if prefix is None else prefix
    if prefix > cap:
        raise ValueError(f"oracle refuses complexes over {cap} simplices (got {prefix})")
    p = _field(field).p
    by_dim, blocks = _dense_blocks(filtration, prefix, p)
    ranks = [rank_mod_p(b, p) for b in blocks] + [0]
    return [len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(len(by_dim))]


def _persistent_betti_rank(filtration: Filtration, n_i: int, n_j: int, p: int, k: int) -> int:
    # dim Z_k(K_i) - dim(B_k(K_j) ∩ C_k(K_i)); the intersection has dimension
    # rank(D) - rank(D restricted to rows of k-simplices absent from K_i)
    by_i, blocks_i = _dense_blocks(filtration, n_i, p)
    if len(by_i) <= k:
        return 0
    n_k = len(by_i[k])
    z = n_k - rank_mod_p(blocks_i[k], p)
    by_j, blocks_j = _dense_blocks(filtration, n_j, p)
    if len(blocks_j) <= k + 1:
        return z
    d = blocks_j[k + 1]
    # prefix order keeps K_i's k-simplices first among K_j's
    b_cap = rank_mod_p(d, p) - rank_mod_p(d[n_k:], p)
    return z - b_cap
