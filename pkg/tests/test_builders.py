"""Complex builders: grids, distance matrices, flag complexes, graph tools."""

import itertools
import math

import numpy as np
import pytest

import oracles
from tdakit import (
    AsymmetricMatrix,
    BadParameter,
    BadProbability,
    DanglingEdge,
    DisconnectedGraph,
    ElementaryCube,
    EmptyPointCloud,
    GridBitmap,
    NegativeEntry,
    NonBinaryValue,
    NonzeroDiagonal,
    Simplex,
    SizeMismatch,
    as_distance_matrix,
    as_point_cloud,
    betti_numbers,
    circle_distance_bitmap,
    connected_components,
    cubical_from_bitmap,
    cycle_basis,
    euclidean_distance_matrix,
    kde_grid_filtration,
    percolation_sweep,
    random_cubical,
    rips_from_distance_matrix,
    rips_from_point_cloud,
    sliding_window_embed,
    validate_filtration,
)


def test_grid_bitmap_roundtrip():
    arr = np.arange(6, dtype=float).reshape(2, 3)
    bm = GridBitmap.from_array(arr)
    assert bm.dims == (2, 3)
    np.testing.assert_array_equal(bm.to_array(), arr)
    # flat storage runs through the first axis fastest
    assert bm.values[0] == arr[0, 0]
    assert bm.values[1] == arr[1, 0]


def test_grid_bitmap_validation():
    with pytest.raises(BadParameter):
        GridBitmap((0, 3), np.zeros(0))
    with pytest.raises(SizeMismatch):
        GridBitmap((2, 2), np.zeros(3))


def test_as_point_cloud_rejects_ragged_and_flat():
    with pytest.raises(BadParameter):
        as_point_cloud([1.0, 2.0, 3.0])
    with pytest.raises(BadParameter):
        as_point_cloud([[1.0], [1.0, 2.0]])
    P = as_point_cloud([[0, 0], [1, 2]])
    assert P.shape == (2, 2)
    assert P.dtype == np.float64


def test_as_distance_matrix_checks():
    good = [[0.0, 1.0], [1.0, 0.0]]
    np.testing.assert_array_equal(as_distance_matrix(good), np.array(good))
    with pytest.raises(BadParameter):
        as_distance_matrix(np.zeros((2, 3)))
    with pytest.raises(AsymmetricMatrix):
        as_distance_matrix([[0.0, 1.0], [2.0, 0.0]])
    with pytest.raises(NonzeroDiagonal):
        as_distance_matrix([[0.1, 1.0], [1.0, 0.0]])
    with pytest.raises(NegativeEntry):
        as_distance_matrix([[0.0, -1.0], [-1.0, 0.0]])


def test_euclidean_distance_matrix_small():
    P = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
    D = euclidean_distance_matrix(P)
    expected = np.array(
        [
            [0.0, 1.0, 1.0],
            [1.0, 0.0, math.sqrt(2.0)],
            [1.0, math.sqrt(2.0), 0.0],
        ]
    )
    np.testing.assert_allclose(D, expected, rtol=0, atol=1e-15)
    assert np.array_equal(D, D.T)
    rng = np.random.default_rng(0)
    Q = rng.standard_normal((57, 3))
    D = euclidean_distance_matrix(Q)
    brute = np.sqrt(((Q[:, None, :] - Q[None, :, :]) ** 2).sum(axis=2))
    np.testing.assert_allclose(D, brute, atol=1e-12)
    assert np.array_equal(D, D.T)
    assert np.all(np.diag(D) == 0.0)


def test_rips_inclusive_threshold():
    D = np.array([[0.0, 2.0], [2.0, 0.0]])
    K = rips_from_distance_matrix(D, max_edge_length=2.0)
    assert Simplex((0, 1)) in K
    K = rips_from_distance_matrix(D, max_edge_length=1.999)
    assert Simplex((0, 1)) not in K
    assert len(K) == 2


def test_rips_vertices_at_zero_edges_at_distance():
    P = [[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]]
    K = rips_from_point_cloud(P, max_edge_length=3.0, max_dimension=2)
    assert K.filtration_of(Simplex((0,))) == 0.0
    assert K.filtration_of(Simplex((0, 1))) == 1.0
    assert K.filtration_of(Simplex((0, 2))) == 2.0
    assert K.filtration_of(Simplex((0, 1, 2))) == K.filtration_of(Simplex((1, 2)))
    assert validate_filtration(K) is None


def test_rips_cliques_match_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(10):
        n = int(rng.integers(4, 10))
        P = rng.random((n, 2))
        r = float(rng.random()) * 0.8 + 0.2
        K = rips_from_point_cloud(P, max_edge_length=r, max_dimension=n)
        D = euclidean_distance_matrix(P)
        adjacency = (D <= r) & ~np.eye(n, dtype=bool)
        expected = oracles.brute_cliques(adjacency, n)
        got = {
            cell.key.vertices
            for cell in K
            if isinstance(cell.key, Simplex) and cell.dimension >= 1
        }
        assert got == expected
        # every simplex appears when its longest edge does
        for cell in K:
            if cell.dimension >= 1:
                verts = list(cell.key.vertices)
                assert cell.filtration == max(
                    D[a, b] for a, b in itertools.combinations(verts, 2)
                )


def test_rips_dimension_cap():
    P = np.zeros((5, 2))  # all five points coincide
    K = rips_from_point_cloud(P, max_edge_length=1.0, max_dimension=2)
    assert max(cell.dimension for cell in K) == 2
    with pytest.raises(BadParameter):
        rips_from_point_cloud(P, max_edge_length=-1.0)
    with pytest.raises(BadParameter):
        rips_from_point_cloud(P, max_edge_length=1.0, max_dimension=0)


def test_cubical_binary_presence():
    bm = GridBitmap((2, 2), np.array([1.0, 0.0, 0.0, 1.0]))
    K = cubical_from_bitmap(bm, binary=True)
    assert ElementaryCube((1, 1)) in K
    assert ElementaryCube((3, 3)) in K
    assert ElementaryCube((3, 1)) not in K
    assert all(cell.filtration == 0.0 for cell in K)
    # the two squares touch at the central corner, so one component
    assert betti_numbers(K) == [1, 0, 0]


def test_cubical_binary_two_by_four_pattern():
    rows = np.array([[0, 1, 0, 1], [1, 0, 1, 1]], dtype=float)
    bm = GridBitmap.from_array(rows)
    K = cubical_from_bitmap(bm, binary=True)
    assert sum(1 for c in K if c.dimension == 2) == 5
    assert betti_numbers(K) == [1, 0, 0]


def test_cubical_binary_rejects_other_values():
    bm = GridBitmap((2,), np.array([1.0, 0.5]))
    with pytest.raises(NonBinaryValue):
        cubical_from_bitmap(bm, binary=True)


def test_cubical_real_face_values_are_minima():
    arr = np.array([[3.0, 7.0]])  # two squares sharing an edge
    K = cubical_from_bitmap(GridBitmap.from_array(arr))
    assert K.filtration_of(ElementaryCube((1, 1))) == 3.0
    assert K.filtration_of(ElementaryCube((1, 3))) == 7.0
    assert K.filtration_of(ElementaryCube((1, 2))) == 3.0  # shared edge
    assert K.filtration_of(ElementaryCube((0, 2))) == 3.0
    assert validate_filtration(K) is None


def test_cubical_real_central_vertex():
    arr = np.array([[1.0, 3.0], [2.0, 4.0]])
    K = cubical_from_bitmap(GridBitmap.from_array(arr))
    assert K.filtration_of(ElementaryCube((2, 2))) == 1.0
    assert len(K) == 25


def test_cubical_real_single_cube_3d():
    bm = GridBitmap((1, 1, 1), np.array([4.5]))
    K = cubical_from_bitmap(bm)
    assert len(K) == 27
    assert all(cell.filtration == 4.5 for cell in K)


def test_cubical_real_matches_min_over_incident_tops():
    rng = np.random.default_rng(13)
    values = rng.random((3, 4))
    K = cubical_from_bitmap(GridBitmap.from_array(values))
    for cell in K:
        coords = cell.key.coords
        tops = []
        for i in range(3):
            for j in range(4):
                top = (2 * i + 1, 2 * j + 1)
                if all(abs(a - b) <= 1 for a, b in zip(coords, top)):
                    tops.append(values[i, j])
        assert cell.filtration == min(tops)
    assert validate_filtration(K) is None


def test_circle_distance_bitmap():
    bm = circle_distance_bitmap(10)
    assert bm.dims == (21, 21)
    arr = bm.to_array()
    # the value at a grid point is the distance from its coordinate to the circle
    x = np.arange(21) / 21 * 4.0 - 2.0
    assert arr[0, 0] == abs(math.hypot(x[0], x[0]) - 1.0)
    assert arr.min() >= 0.0


def test_random_cubical_reproducible():
    a = random_cubical((4, 5), 0.4, seed=42)
    b = random_cubical((4, 5), 0.4, seed=42)
    np.testing.assert_array_equal(a.values, b.values)
    assert set(np.unique(a.values)) <= {0.0, 1.0}
    assert random_cubical((3, 3), 0.0, seed=1).values.sum() == 0
    assert random_cubical((3, 3), 1.0, seed=1).values.sum() == 9
    with pytest.raises(BadProbability):
        random_cubical((2, 2), 1.5, seed=0)


def test_percolation_extremes():
    rows = percolation_sweep((6, 6), [0.0, 1.0], trials=3, seed=0)
    np.testing.assert_array_equal(rows[0], [0.0, 0.0, 0.0])
    np.testing.assert_array_equal(rows[1], [1.0, 1.0, 0.0])


def test_percolation_component_counts_match_union_find():
    dims = (8, 8)
    trials = 4
    seed = 9
    rows = percolation_sweep(dims, [0.3], trials=trials, seed=seed)
    total = 0.0
    for t in range(trials):
        bm = random_cubical(dims, 0.3, np.random.SeedSequence((seed, 0, t)))
        present = bm.to_array() > 0.5
        total += oracles.grid_component_count(present)
    assert rows[0, 1] == total / trials
    with pytest.raises(BadParameter):
        percolation_sweep((2, 2), [0.5, 0.1], trials=1)
    with pytest.raises(BadParameter):
        percolation_sweep((2, 2), [0.5], trials=0)


def test_kde_values_match_direct_sum():
    points = [[0.0, 0.0], [1.0, 1.0], [1.0, 0.5]]
    bm = kde_grid_filtration(points, (-1.0, 2.0), (-1.0, 2.0), steps=8, bandwidth=0.5)
    arr = bm.to_array()
    assert arr.shape == (8, 8)
    for i in [0, 3, 7]:
        for j in [0, 5]:
            cx = -1.0 + (i + 0.5) * 3.0 / 8
            cy = -1.0 + (j + 0.5) * 3.0 / 8
            expected = -oracles.kde_value(points, cx, cy, 0.5)
            assert arr[i, j] == pytest.approx(expected, abs=1e-14)


def test_kde_input_validation():
    with pytest.raises(EmptyPointCloud):
        kde_grid_filtration([], (0, 1), (0, 1), 4, 0.5)
    with pytest.raises(BadParameter):
        kde_grid_filtration([[0.0, 0.0, 0.0]], (0, 1), (0, 1), 4, 0.5)
    with pytest.raises(Exception):
        kde_grid_filtration([[0.0, 0.0]], (0, 1), (0, 1), 4, 0.0)


def test_sliding_window_embed():
    values = [1.0, 2.0, 3.0, 4.0, 5.0]
    W = sliding_window_embed(values, 3)
    np.testing.assert_array_equal(
        W, [[1, 2, 3], [2, 3, 4], [3, 4, 5]]
    )
    assert sliding_window_embed(values, 5).shape == (1, 5)
    from tdakit import WindowTooLarge

    with pytest.raises(WindowTooLarge):
        sliding_window_embed(values, 6)
    with pytest.raises(BadParameter):
        sliding_window_embed(values, 0)
    with pytest.raises(BadParameter):
        sliding_window_embed([[1.0, 2.0]], 1)


def test_connected_components_grouping():
    comps = connected_components([1, 2, 3, 4, 5], [(1, 2), (4, 3)])
    assert comps == [[1, 2], [3, 4], [5]]
    with pytest.raises(DanglingEdge):
        connected_components([1], [(1, 9)])


def test_cycle_basis_square_with_diagonal():
    verts = [1, 2, 3, 4]
    edges = [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]
    basis = cycle_basis(verts, edges)
    assert len(basis) == len(edges) - len(verts) + 1 == 2
    # every basis cycle has even degree at each vertex
    for cycle in basis:
        degree = {}
        for u, v in cycle:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        assert all(d % 2 == 0 for d in degree.values())
    # the two cycles are independent: symmetric difference is nonempty
    assert basis[0] != basis[1]
    assert frozenset((min(a, b), max(a, b)) for a, b in [(1, 3)]) & (basis[0] | basis[1])


def test_cycle_basis_tree_is_empty():
    assert cycle_basis([1, 2, 3], [(1, 2), (2, 3)]) == []


def test_cycle_basis_errors():
    with pytest.raises(DisconnectedGraph):
        cycle_basis([1, 2, 3, 4], [(1, 2), (3, 4)])
    with pytest.raises(DanglingEdge):
        cycle_basis([1, 2], [(1, 3)])
    with pytest.raises(BadParameter):
        cycle_basis([1], [(1, 1)])


def test_cycle_basis_each_cotree_edge_appears_once():
    rng = np.random.default_rng(21)
    n = 9
    verts = list(range(n))
    all_pairs = list(itertools.combinations(verts, 2))
    picked = [all_pairs[i] for i in rng.choice(len(all_pairs), size=16, replace=False)]
    # make sure the graph is connected by adding a spanning path
    edges = sorted(set(picked) | {(i, i + 1) for i in range(n - 1)})
    basis = cycle_basis(verts, edges)
    assert len(basis) == len(edges) - n + 1
    # each cycle contains exactly one edge unique to it
    for i, cycle in enumerate(basis):
        others = set().union(*(c for j, c in enumerate(basis) if j != i))
        assert cycle - others
