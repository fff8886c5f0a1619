"""Cells, boundary operators, and the filtered complex container.

Two cell kinds share one container: simplices (strictly increasing vertex
tuples) and elementary cubes (products of unit or degenerate integer
intervals in a doubled-coordinate encoding). Homology is computed over Z2
throughout, so boundaries are plain face collections with no signs.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field

from .errors import (
    FiltrationViolation,
    MissingTopCellValue,
    MissingVertexValue,
)


@dataclass(frozen=True)
class Simplex:
    """A simplex given by its strictly increasing vertex identifiers."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        verts = tuple(operator.index(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("a simplex needs at least one vertex")
        if any(v < 0 for v in verts):
            raise ValueError("vertex identifiers must be non-negative")
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise ValueError("vertices must be strictly increasing")

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def canonical_key(self):
        # "s" tag keeps keys comparable in a complex that mixes cell kinds
        return ("s", self.vertices)

    def __repr__(self):
        return f"Simplex{self.vertices}"


@dataclass(frozen=True)
class ElementaryCube:
    """An elementary cube in doubled integer coordinates.

    An even coordinate 2n encodes the degenerate interval [n, n]; an odd
    coordinate 2n+1 encodes [n, n+1]. The dimension is the number of odd
    coordinates, the ambient dimension is the coordinate count.
    """

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(operator.index(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("a cube needs at least one coordinate")

    @property
    def dimension(self) -> int:
        return sum(c % 2 for c in self.coords)

    @property
    def ambient_dimension(self) -> int:
        return len(self.coords)

    def canonical_key(self):
        return ("c", self.coords)

    def __repr__(self):
        return f"ElementaryCube{self.coords}"


CellKey = Simplex | ElementaryCube


def boundary_of_simplex(s: Simplex) -> list[Simplex]:
    """All faces obtained by deleting one vertex; empty for a vertex."""
    v = s.vertices
    if len(v) == 1:
        return []
    return [Simplex(v[:i] + v[i + 1 :]) for i in range(len(v))]


def boundary_of_cube(c: ElementaryCube) -> list[ElementaryCube]:
    """Both endpoint cubes of every non-degenerate interval, in coordinate order."""
    faces = []
    coords = c.coords
    for i, x in enumerate(coords):
        if x % 2 == 1:
            faces.append(ElementaryCube(coords[:i] + (x - 1,) + coords[i + 1 :]))
            faces.append(ElementaryCube(coords[:i] + (x + 1,) + coords[i + 1 :]))
    return faces


def cell_boundary(key: CellKey) -> list[CellKey]:
    if isinstance(key, Simplex):
        return boundary_of_simplex(key)
    if isinstance(key, ElementaryCube):
        return boundary_of_cube(key)
    raise TypeError(f"not a cell key: {key!r}")


def cell_dimension(key: CellKey) -> int:
    if isinstance(key, (Simplex, ElementaryCube)):
        return key.dimension
    raise TypeError(f"not a cell key: {key!r}")


@dataclass
class Cell:
    """One cell record inside a FilteredComplex."""

    key: CellKey
    dimension: int
    filtration: float
    boundary: list[int] = field(default_factory=list)


class FilteredComplex:
    """An ordered collection of cells with filtration values and face links.

    Boundary entries are indices into ``cells`` and always point at cells of
    dimension exactly one lower that were inserted earlier. Filtration values
    are finite and never smaller than the values of the faces.
    """

    def __init__(self):
        self.cells: list[Cell] = []
        self.index_of: dict[CellKey, int] = {}

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, key: CellKey) -> bool:
        return key in self.index_of

    def filtration_of(self, key: CellKey) -> float:
        return self.cells[self.index_of[key]].filtration

    def insert_cell(self, key: CellKey, filtration: float, closure: bool = True) -> int:
        """Insert a cell, optionally inserting its missing faces first.

        Closure insertion adds absent faces at the same value but never
        changes faces that already exist. Re-inserting a present cell with a
        lower value lowers the stored value after checking the faces again.
        Returns the cell's index.
        """
        return self._insert(key, float(filtration), closure, allow_lower=True)

    def _insert(self, key, filtration, closure, allow_lower):
        if not math.isfinite(filtration):
            raise FiltrationViolation(f"filtration of {key} must be finite, got {filtration}")
        existing = self.index_of.get(key)
        if existing is not None:
            cell = self.cells[existing]
            if allow_lower and filtration < cell.filtration:
                face_max = max(
                    (self.cells[j].filtration for j in cell.boundary), default=-math.inf
                )
                if filtration < face_max:
                    raise FiltrationViolation(
                        f"cannot lower {key} to {filtration}: a face has value {face_max}"
                    )
                cell.filtration = filtration
            return existing
        faces = cell_boundary(key)
        if closure:
            for f in faces:
                self._insert(f, filtration, closure=True, allow_lower=False)
        face_indices = []
        for f in faces:
            j = self.index_of.get(f)
            if j is None:
                raise FiltrationViolation(f"face {f} of {key} is not in the complex")
            face_indices.append(j)
        face_max = max((self.cells[j].filtration for j in face_indices), default=-math.inf)
        if filtration < face_max:
            raise FiltrationViolation(
                f"{key} at {filtration} would precede a face at {face_max}"
            )
        self.cells.append(Cell(key, cell_dimension(key), filtration, face_indices))
        index = len(self.cells) - 1
        self.index_of[key] = index
        return index

    def copy(self) -> "FilteredComplex":
        out = FilteredComplex()
        for cell in self.cells:
            out.cells.append(Cell(cell.key, cell.dimension, cell.filtration, list(cell.boundary)))
        out.index_of = dict(self.index_of)
        return out


def _vertex_value(key: CellKey, vertex_values) -> float:
    if isinstance(key, Simplex):
        v = key.vertices[0]
        if v in vertex_values:
            return float(vertex_values[v])
    else:
        halved = tuple(c // 2 for c in key.coords)
        if halved in vertex_values:
            return float(vertex_values[halved])
    if key in vertex_values:
        return float(vertex_values[key])
    raise MissingVertexValue(f"no value for vertex {key}")


def lower_star_from_vertices(K: FilteredComplex, vertex_values) -> FilteredComplex:
    """Assign every cell the maximum of its vertices' values.

    ``vertex_values`` maps vertex identifiers (simplicial complexes) or
    halved coordinate tuples (cubical complexes) to reals; cell keys of the
    vertices themselves are accepted too.
    """
    values = [0.0] * len(K)
    for i, cell in enumerate(K.cells):
        if cell.dimension == 0:
            values[i] = _vertex_value(cell.key, vertex_values)
        else:
            values[i] = max(values[j] for j in cell.boundary)
    return _with_filtrations(K, values)


def filtration_from_top_cells(K: FilteredComplex, top_values) -> FilteredComplex:
    """Assign every cell the minimum value over the maximal cells above it.

    A maximal cell is one that is no other cell's face; each must appear in
    ``top_values`` (keyed by cell key, with the raw vertex or coordinate
    tuple accepted as well) or MissingTopCellValue is raised.
    """
    n = len(K)
    has_coface = [False] * n
    for cell in K.cells:
        for j in cell.boundary:
            has_coface[j] = True
    values = [math.inf] * n
    for i, cell in enumerate(K.cells):
        if has_coface[i]:
            continue
        key = cell.key
        if key in top_values:
            values[i] = float(top_values[key])
            continue
        raw = key.vertices if isinstance(key, Simplex) else key.coords
        if raw in top_values:
            values[i] = float(top_values[raw])
        else:
            raise MissingTopCellValue(f"no value for maximal cell {key}")
    # sweep cofaces before faces; boundary indices always point backwards
    for i in range(n - 1, -1, -1):
        vi = values[i]
        for j in K.cells[i].boundary:
            if vi < values[j]:
                values[j] = vi
    return _with_filtrations(K, values)


def _with_filtrations(K: FilteredComplex, values) -> FilteredComplex:
    out = FilteredComplex()
    for cell, value in zip(K.cells, values):
        out.cells.append(Cell(cell.key, cell.dimension, float(value), list(cell.boundary)))
    out.index_of = dict(K.index_of)
    return out


def validate_filtration(K: FilteredComplex):
    """Return the index of the first cell that precedes one of its faces, else None."""
    for i, cell in enumerate(K.cells):
        for j in cell.boundary:
            if K.cells[j].filtration > cell.filtration:
                return i
    return None


def _sort_key(cell: Cell):
    return (cell.filtration, cell.dimension, cell.key.canonical_key())


def sort_cells(K: FilteredComplex):
    """Order cells by (filtration, dimension, canonical key).

    Returns the sorted complex and the old-to-new index map. Faces always
    end up before the cells they bound; sorting a sorted complex is the
    identity.
    """
    n = len(K)
    order = sorted(range(n), key=lambda i: _sort_key(K.cells[i]))
    old_to_new = [0] * n
    for new, old in enumerate(order):
        old_to_new[old] = new
    out = FilteredComplex()
    for old in order:
        cell = K.cells[old]
        boundary = sorted(old_to_new[j] for j in cell.boundary)
        out.cells.append(Cell(cell.key, cell.dimension, cell.filtration, boundary))
    out.index_of = {cell.key: i for i, cell in enumerate(out.cells)}
    return out, old_to_new
