"""Boundary matrices, column reduction, and persistence diagrams.

The reduction is the plain left-to-right algorithm: walk columns in
filtration order and, while the current column shares its lowest nonzero
index with an earlier column, add that column (symmetric difference over
Z2). Pairs (low(j), j) of the reduced matrix are the persistence pairs;
zero columns that never serve as a low carry essential classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .complexes import FilteredComplex, sort_cells, _sort_key
from .errors import UnsortedComplex


@dataclass
class BoundaryMatrix:
    """Sparse Z2 boundary matrix in filtration order.

    ``columns[i]`` holds the strictly increasing face indices of cell i;
    ``dims`` and ``filtrations`` carry each cell's dimension and value.
    """

    columns: list[list[int]]
    dims: np.ndarray
    filtrations: np.ndarray

    def __len__(self):
        return len(self.columns)


@dataclass
class ReducedMatrix:
    """Result of reducing a BoundaryMatrix.

    ``low[i]`` is the largest index of the reduced column i (or None),
    ``pairs`` lists (birth column, death column), and ``chains[i]`` records
    which original columns were accumulated into column i, so that a zero
    column's chain is a cycle representative.
    """

    columns: list[list[int]]
    dims: np.ndarray
    filtrations: np.ndarray
    low: list
    pairs: list[tuple[int, int]]
    chains: list[list[int]]


@dataclass(frozen=True)
class DiagramPoint:
    dimension: int
    birth: float
    death: float
    representative: frozenset | None = None


@dataclass
class PersistenceDiagram:
    """A multiset of (dimension, birth, death) points, deaths possibly infinite."""

    points: list[DiagramPoint] = field(default_factory=list)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def max_dimension(self) -> int:
        return max((p.dimension for p in self.points), default=-1)

    def in_dimension(self, dimension: int) -> list[DiagramPoint]:
        return [p for p in self.points if p.dimension == dimension]

    def pairs(self, dimension: int) -> np.ndarray:
        """(m, 2) array of (birth, death) in one dimension; deaths may be inf."""
        pts = [(p.birth, p.death) for p in self.in_dimension(dimension)]
        return np.array(pts, dtype=float).reshape(-1, 2)

    def sorted_points(self) -> list[DiagramPoint]:
        return sorted(self.points, key=lambda p: (p.dimension, p.birth, p.death))


def build_boundary_matrix(K: FilteredComplex) -> BoundaryMatrix:
    """Collect the face-index columns of a canonically sorted complex."""
    previous = None
    for i, cell in enumerate(K.cells):
        key = _sort_key(cell)
        if previous is not None and key < previous:
            raise UnsortedComplex(f"cell {i} is out of canonical order")
        previous = key
        for j in cell.boundary:
            if j >= i:
                raise UnsortedComplex(f"cell {i} has a face at or after it (index {j})")
    columns = [sorted(cell.boundary) for cell in K.cells]
    dims = np.array([cell.dimension for cell in K.cells], dtype=np.int64)
    filtrations = np.array([cell.filtration for cell in K.cells], dtype=float)
    return BoundaryMatrix(columns, dims, filtrations)


def _symmetric_difference(a: list[int], b: list[int]) -> list[int]:
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def reduce(M: BoundaryMatrix) -> ReducedMatrix:
    """Left-to-right column reduction with chain tracking.

    Idempotent on already reduced input: columns whose low is unclaimed are
    stored unchanged.
    """
    n = len(M.columns)
    columns = [list(c) for c in M.columns]
    chains = [[i] for i in range(n)]
    owner_of_low: dict[int, int] = {}
    low: list = [None] * n
    pairs: list[tuple[int, int]] = []
    for i in range(n):
        col = columns[i]
        chain = chains[i]
        while col:
            l = col[-1]
            j = owner_of_low.get(l)
            if j is None:
                break
            col = _symmetric_difference(col, columns[j])
            chain = _symmetric_difference(chain, chains[j])
        columns[i] = col
        chains[i] = chain
        if col:
            l = col[-1]
            low[i] = l
            owner_of_low[l] = i
            pairs.append((l, i))
    return ReducedMatrix(columns, M.dims, M.filtrations, low, pairs, chains)


def extract_diagram(R: ReducedMatrix, keep_zero_length: bool = False) -> PersistenceDiagram:
    """Read persistence points off a reduced matrix.

    Paired columns (i, j) give (filtration[i], filtration[j]) in the birth
    column's dimension; zero columns that are never a low give essential
    points with infinite death. Points with birth = death are dropped unless
    ``keep_zero_length`` is set. A point's representative is the chain
    accumulated into its birth column when any additions happened there,
    otherwise the reduced content of its killing column, otherwise the birth
    cell alone.
    """
    death_of: dict[int, int] = {i: j for i, j in R.pairs}
    points = []
    n = len(R.columns)
    for i in range(n):
        if R.low[i] is not None:
            continue  # death column
        j = death_of.get(i)
        if R.chains[i] != [i]:
            rep = frozenset(R.chains[i])
        elif j is not None:
            rep = frozenset(R.columns[j])
        else:
            rep = frozenset((i,))
        birth = float(R.filtrations[i])
        death = float(R.filtrations[j]) if j is not None else math.inf
        if birth == death and not keep_zero_length:
            continue
        points.append(DiagramPoint(int(R.dims[i]), birth, death, rep))
    points.sort(key=lambda p: (p.dimension, p.birth, p.death))
    return PersistenceDiagram(points)


def persistence_diagram(
    K: FilteredComplex,
    *,
    representatives: bool = False,
    keep_zero_length: bool = False,
    engine: str = "auto",
) -> PersistenceDiagram:
    """Sort a complex, reduce its boundary matrix, and extract the diagram.

    ``engine`` selects the reduction backend: "reference" is the pure-Python
    algorithm above (always used when representatives are requested),
    "compiled" is a machine-code version of the same column algorithm that
    skips chain tracking, "auto" picks by size. Both backends produce
    identical diagrams.
    """
    sorted_K, _ = sort_cells(K)
    M = build_boundary_matrix(sorted_K)
    if engine == "auto":
        engine = "reference" if (representatives or len(M) <= 5000) else "compiled"
    if representatives and engine != "reference":
        raise ValueError("representatives require the reference engine")
    if engine == "reference":
        R = reduce(M)
        diagram = extract_diagram(R, keep_zero_length=keep_zero_length)
        if not representatives:
            diagram = PersistenceDiagram(
                [DiagramPoint(p.dimension, p.birth, p.death) for p in diagram.points]
            )
        return diagram
    if engine != "compiled":
        raise ValueError(f"unknown engine {engine!r}")
    from ._reduction import reduce_lows_csr

    low = reduce_lows_csr(M)
    points = []
    death_of = {}
    for j in range(len(M)):
        if low[j] >= 0:
            death_of[int(low[j])] = j
    for i in range(len(M)):
        if low[i] >= 0:
            continue
        j = death_of.get(i)
        birth = float(M.filtrations[i])
        death = float(M.filtrations[j]) if j is not None else math.inf
        if birth == death and not keep_zero_length:
            continue
        points.append(DiagramPoint(int(M.dims[i]), birth, death))
    points.sort(key=lambda p: (p.dimension, p.birth, p.death))
    return PersistenceDiagram(points)


def betti_numbers(K: FilteredComplex, engine: str = "auto") -> list[int]:
    """Betti numbers of the whole complex, one entry per dimension 0..dim(K)."""
    if len(K) == 0:
        return []
    top = max(cell.dimension for cell in K.cells)
    betti = [0] * (top + 1)
    diagram = persistence_diagram(K, engine=engine)
    for p in diagram.points:
        if math.isinf(p.death):
            betti[p.dimension] += 1
    return betti


def diagram_at(diagram: PersistenceDiagram, t: float) -> list[int]:
    """Betti numbers of the sublevel complex at value t.

    Counts points with birth <= t < death, one entry per dimension up to the
    diagram's top dimension.
    """
    top = diagram.max_dimension
    if top < 0:
        return []
    betti = [0] * (top + 1)
    for p in diagram.points:
        if p.birth <= t < p.death:
            betti[p.dimension] += 1
    return betti
