"""Constructors that turn raw inputs into filtered complexes and point clouds.

Covers Vietoris-Rips complexes from distance matrices or point clouds,
cubical complexes from grid bitmaps (real-valued sublevel grids and binary
presence complexes), random occupancy grids with percolation sweeps, kernel
density fields, sliding-window embeddings of time series, and two graph
utilities (connected components and a spanning-tree cycle basis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexes import Cell, ElementaryCube, FilteredComplex, Simplex
from .errors import (
    AsymmetricMatrix,
    BadBandwidth,
    BadParameter,
    BadProbability,
    DanglingEdge,
    DisconnectedGraph,
    EmptyPointCloud,
    NegativeEntry,
    NonBinaryValue,
    NonzeroDiagonal,
    SizeMismatch,
    WindowTooLarge,
)


@dataclass
class GridBitmap:
    """Values of the top-dimensional cubes of a grid, one per cube.

    ``values`` is flat with the first axis fastest: the linear index of the
    cube at (i1, ..., ik) is i1 + d1*(i2 + d2*(i3 + ...)).
    """

    dims: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if not self.dims or any(d < 1 for d in self.dims):
            raise BadParameter(f"grid extents must be positive, got {self.dims}")
        self.values = np.asarray(self.values, dtype=float).ravel()
        expected = math.prod(self.dims)
        if self.values.size != expected:
            raise SizeMismatch(
                f"grid of extents {self.dims} needs {expected} values, got {self.values.size}"
            )

    @classmethod
    def from_array(cls, array) -> "GridBitmap":
        arr = np.asarray(array, dtype=float)
        return cls(arr.shape, arr.ravel(order="F"))

    def to_array(self) -> np.ndarray:
        return self.values.reshape(self.dims, order="F")


def as_point_cloud(points) -> np.ndarray:
    try:
        arr = np.asarray(points, dtype=float)
    except ValueError as exc:
        raise BadParameter(f"ragged or non-numeric point cloud: {exc}") from None
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise BadParameter(f"a point cloud must be a 2-D array, got shape {arr.shape}")
    return arr


def as_distance_matrix(D) -> np.ndarray:
    """Validate a (pseudo-)distance matrix and return it exactly symmetric.

    Symmetry is checked to 1e-12 and then the upper triangle is taken as
    authoritative; the diagonal must be exactly zero and no entry negative.
    The triangle inequality is deliberately not required.
    """
    arr = np.asarray(D, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise BadParameter(f"a distance matrix must be square, got shape {arr.shape}")
    if arr.size and np.max(np.abs(arr - arr.T)) > 1e-12:
        raise AsymmetricMatrix("matrix is not symmetric within 1e-12")
    if np.any(np.diag(arr) != 0.0):
        raise NonzeroDiagonal("distance matrix diagonal must be exactly zero")
    if np.any(arr < 0.0):
        raise NegativeEntry("distance matrix entries must be non-negative")
    upper = np.triu(arr, 1)
    return upper + upper.T


def euclidean_distance_matrix(points) -> np.ndarray:
    """Pairwise Euclidean distances, exactly symmetric with an exactly zero diagonal."""
    P = as_point_cloud(points)
    n = P.shape[0]
    D = np.zeros((n, n), dtype=float)
    chunk = max(1, int(2**22 // max(1, n * P.shape[1])))
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        diff = P[start:stop, None, :] - P[None, :, :]
        D[start:stop] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    upper = np.triu(D, 1)
    return upper + upper.T


def rips_from_distance_matrix(D, max_edge_length: float, max_dimension: int = 1) -> FilteredComplex:
    """Vietoris-Rips complex: vertices at 0, edges at their length when it is
    at most ``max_edge_length``, higher simplices by clique expansion with the
    maximum edge length as filtration value, up to ``max_dimension``."""
    D = as_distance_matrix(D)
    max_edge_length = float(max_edge_length)
    if max_edge_length < 0:
        raise BadParameter("max_edge_length must be non-negative")
    if max_dimension < 1:
        raise BadParameter("max_dimension must be at least 1")
    n = D.shape[0]
    K = FilteredComplex()
    for i in range(n):
        K.insert_cell(Simplex((i,)), 0.0, closure=False)
    adjacency = D <= max_edge_length
    np.fill_diagonal(adjacency, False)
    level: list[tuple[tuple[int, ...], float]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if adjacency[i, j]:
                K.insert_cell(Simplex((i, j)), D[i, j], closure=False)
                level.append(((i, j), float(D[i, j])))
    for _ in range(2, max_dimension + 1):
        next_level: list[tuple[tuple[int, ...], float]] = []
        for verts, filt in level:
            common = np.logical_and.reduce(adjacency[list(verts)])
            for w in np.flatnonzero(common):
                w = int(w)
                if w <= verts[-1]:
                    continue
                extended = verts + (w,)
                value = max(filt, float(D[list(verts), w].max()))
                K.insert_cell(Simplex(extended), value, closure=False)
                next_level.append((extended, value))
        level = next_level
        if not level:
            break
    return K


def rips_from_point_cloud(points, max_edge_length: float, max_dimension: int = 1) -> FilteredComplex:
    """Euclidean distances, then the distance-matrix construction."""
    return rips_from_distance_matrix(
        euclidean_distance_matrix(points), max_edge_length, max_dimension
    )


def _grid_strides(shape: tuple[int, ...]) -> list[int]:
    strides = [1]
    for extent in shape[:-1]:
        strides.append(strides[-1] * extent)
    return strides


def cubical_from_bitmap(bitmap: GridBitmap, binary: bool = False) -> FilteredComplex:
    """Cubical complex of a grid of top-dimensional cube values.

    Real-valued grids produce the full complex with every lower cell at the
    minimum over its incident top cubes. Binary grids (values exactly 0 or 1)
    produce a presence complex at filtration 0: absent cubes and the faces
    only they would cover are omitted entirely.
    """
    dims = bitmap.dims
    values = bitmap.values
    k = len(dims)
    if binary:
        if not np.all((values == 0.0) | (values == 1.0)):
            raise NonBinaryValue("binary grids may only contain 0 and 1")
        K = FilteredComplex()
        for flat in np.flatnonzero(values == 1.0):
            index = []
            rest = int(flat)
            for extent in dims:
                index.append(rest % extent)
                rest //= extent
            cube = ElementaryCube(tuple(2 * i + 1 for i in index))
            K.insert_cell(cube, 0.0, closure=True)
        return K

    shape = tuple(2 * d + 1 for d in dims)
    strides = _grid_strides(shape)
    top_strides = _grid_strides(dims)
    total = math.prod(shape)
    coords_buf = [0] * k
    dimensions = [0] * total
    filtrations = [0.0] * total
    for linear in range(total):
        rest = linear
        dim = 0
        for axis in range(k):
            c = rest % shape[axis]
            rest //= shape[axis]
            coords_buf[axis] = c
            dim += c % 2
        dimensions[linear] = dim
        # minimum over the top cubes whose closure contains this cell
        best = math.inf
        candidate_axes = []
        for axis in range(k):
            c = coords_buf[axis]
            if c % 2 == 1:
                candidate_axes.append((c // 2,))
            else:
                half = c // 2
                lo = half - 1
                options = []
                if lo >= 0:
                    options.append(lo)
                if half <= dims[axis] - 1:
                    options.append(half)
                candidate_axes.append(tuple(options))
        stack = [(0, 0)]
        while stack:
            axis, base = stack.pop()
            if axis == k:
                value = values[base]
                if value < best:
                    best = value
                continue
            for option in candidate_axes[axis]:
                stack.append((axis + 1, base + option * top_strides[axis]))
        filtrations[linear] = best

    order = sorted(range(total), key=lambda L: dimensions[L])
    position = [0] * total
    for new, old in enumerate(order):
        position[old] = new
    K = FilteredComplex()
    cells = K.cells
    for new, linear in enumerate(order):
        rest = linear
        coords = []
        for axis in range(k):
            coords.append(rest % shape[axis])
            rest //= shape[axis]
        boundary = []
        for axis in range(k):
            c = coords[axis]
            if c % 2 == 1:
                boundary.append(position[linear - strides[axis]])
                boundary.append(position[linear + strides[axis]])
        cube = ElementaryCube(tuple(coords))
        cells.append(Cell(cube, dimensions[linear], filtrations[linear], sorted(boundary)))
        K.index_of[cube] = new
    return K


def circle_distance_bitmap(resolution: int) -> GridBitmap:
    """Distance to the unit circle on a square grid over [-2, 2).

    The grid has (2 * resolution + 1) cells per axis; its sublevel cubical
    complex grows an annulus around the circle, so the degree-1 diagram shows
    one early-born, long-lived class.
    """
    n = int(resolution)
    if n < 1:
        raise BadParameter("resolution must be at least 1")
    size = 2 * n + 1
    x = np.arange(size) / size * 4.0 - 2.0
    values = np.abs(np.sqrt(x[:, None] ** 2 + x[None, :] ** 2) - 1.0)
    return GridBitmap.from_array(values)


def random_cubical(dims, p: float, seed) -> GridBitmap:
    """Binary occupancy grid: each top cube present independently with probability p.

    Randomness comes from numpy's default PCG64 generator, so a fixed seed
    gives a bit-identical bitmap.
    """
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise BadProbability(f"p must lie in [0, 1], got {p}")
    dims = tuple(int(d) for d in dims)
    rng = np.random.default_rng(seed)
    present = rng.random(math.prod(dims)) < p
    return GridBitmap(dims, present.astype(float))


def percolation_sweep(dims, p_grid, trials: int, seed=0) -> np.ndarray:
    """Mean Betti numbers of random binary complexes per occupancy probability.

    Returns one row (p, mean Betti_0, ..., mean Betti_{k-1}) per probability,
    k the ambient dimension, averaged over ``trials`` independent grids. Each
    trial draws from a generator seeded by (seed, probability index, trial),
    so rows are reproducible independent of evaluation order.
    """
    from .persistence import betti_numbers

    dims = tuple(int(d) for d in dims)
    p_values = [float(p) for p in p_grid]
    if any(b < a for a, b in zip(p_values, p_values[1:])):
        raise BadParameter("p_grid must be sorted ascending")
    if trials < 1:
        raise BadParameter("trials must be at least 1")
    k = len(dims)
    rows = np.zeros((len(p_values), k + 1), dtype=float)
    for pi, p in enumerate(p_values):
        totals = np.zeros(k, dtype=float)
        for t in range(trials):
            bitmap = random_cubical(dims, p, np.random.SeedSequence((seed, pi, t)))
            betti = betti_numbers(cubical_from_bitmap(bitmap, binary=True))
            for d in range(min(k, len(betti))):
                totals[d] += betti[d]
        rows[pi, 0] = p
        rows[pi, 1:] = totals / trials
    return rows


def kde_grid_filtration(points, x_range, y_range, steps, bandwidth: float) -> GridBitmap:
    """Negated Gaussian kernel density of a planar point set on a grid.

    The value at each grid cell center is minus the density
    (1/n) * sum_i exp(-|x - p_i|^2 / (2 h^2)) / (2 pi h^2), so denser regions
    are lower and a sublevel filtration finds the clusters first.
    """
    P = np.asarray(points, dtype=float)
    if P.size == 0:
        raise EmptyPointCloud("kernel density needs at least one point")
    P = as_point_cloud(P)
    if P.shape[1] != 2:
        raise BadParameter("kde_grid_filtration expects planar points")
    h = float(bandwidth)
    if not h > 0:
        raise BadBandwidth(f"bandwidth must be positive, got {bandwidth}")
    if isinstance(steps, (int, np.integer)):
        steps = (int(steps), int(steps))
    sx, sy = (int(s) for s in steps)
    if sx < 1 or sy < 1:
        raise BadParameter("steps must be at least 1 per axis")
    x0, x1 = (float(v) for v in x_range)
    y0, y1 = (float(v) for v in y_range)
    xs = x0 + (np.arange(sx) + 0.5) * (x1 - x0) / sx
    ys = y0 + (np.arange(sy) + 0.5) * (y1 - y0) / sy
    gx = xs[:, None]
    gy = ys[None, :]
    density = np.zeros((sx, sy), dtype=float)
    for px, py in P:
        density += np.exp(-((gx - px) ** 2 + (gy - py) ** 2) / (2.0 * h * h))
    density /= P.shape[0] * 2.0 * math.pi * h * h
    return GridBitmap((sx, sy), (-density).ravel(order="F"))


def sliding_window_embed(values, N: int) -> np.ndarray:
    """Consecutive length-N windows of a series as points of R^N.

    A series of m samples yields all m - N + 1 windows; consecutive points
    share N - 1 coordinates.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1:
        raise BadParameter("sliding_window_embed expects a 1-D series")
    N = int(N)
    if N < 1:
        raise BadParameter("window length must be at least 1")
    if N > v.size:
        raise WindowTooLarge(f"window {N} exceeds series length {v.size}")
    return np.lib.stride_tricks.sliding_window_view(v, N).copy()


def connected_components(vertices, edges) -> list[list]:
    """Partition of the vertex set into path-connected classes.

    Components are listed by first appearance of a member in the vertex
    sequence, members in vertex-sequence order.
    """
    verts = list(vertices)
    index = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u not in index or v not in index:
            raise DanglingEdge(f"edge ({u}, {v}) references an unknown vertex")
        ru, rv = find(index[u]), find(index[v])
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list] = {}
    for i, v in enumerate(verts):
        groups.setdefault(find(i), []).append(v)
    return [groups[root] for root in sorted(groups)]


def _normalize_edge(u, v):
    return (u, v) if u <= v else (v, u)


def cycle_basis(vertices, edges) -> list[frozenset]:
    """Cycle basis of a connected simple graph via a spanning tree.

    Build a spanning tree; every remaining edge closes exactly one cycle with
    the tree path between its endpoints. The basis has |E| - |V| + 1 cycles,
    each returned as a frozenset of (u, v) edges with u <= v.
    """
    verts = list(vertices)
    index = {v: i for i, v in enumerate(verts)}
    edge_list = []
    seen = set()
    for u, v in edges:
        if u not in index or v not in index:
            raise DanglingEdge(f"edge ({u}, {v}) references an unknown vertex")
        if u == v:
            raise BadParameter(f"self loop at {u}")
        e = _normalize_edge(u, v)
        if e not in seen:
            seen.add(e)
            edge_list.append(e)
    if len(connected_components(verts, edge_list)) > 1:
        raise DisconnectedGraph("cycle_basis needs a connected graph")
    if not verts:
        return []
    neighbors: dict = {v: [] for v in verts}
    for u, v in edge_list:
        neighbors[u].append(v)
        neighbors[v].append(u)
    root = verts[0]
    parent_edge: dict = {root: None}
    queue = [root]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for v in neighbors[u]:
            if v not in parent_edge:
                parent_edge[v] = u
                queue.append(v)
    tree = {
        _normalize_edge(v, parent_edge[v]) for v in parent_edge if parent_edge[v] is not None
    }

    def path_to_root(v):
        path = set()
        while parent_edge[v] is not None:
            u = parent_edge[v]
            path.add(_normalize_edge(v, u))
            v = u
        return path

    basis = []
    for e in edge_list:
        if e in tree:
            continue
        u, v = e
        cycle = path_to_root(u) ^ path_to_root(v)
        cycle.add(e)
        basis.append(frozenset(cycle))
    return basis
