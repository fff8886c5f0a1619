"""Independent reference implementations used to cross-check the library.

Everything here is written the slow, obvious way and shares no code with the
package: Betti numbers by Gaussian elimination over GF(2), diagram distances
by enumerating every matching, landscapes by sorting tent values on demand,
grid components by union-find over pixels, cliques by brute force, and
Gaussian mass by the error function.
"""

import itertools
import math

import numpy as np


def gf2_rank(matrix) -> int:
    """Rank over the two-element field by straightforward elimination."""
    rows = [row.copy() for row in np.asarray(matrix, dtype=np.int64) % 2]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    pivot_row = 0
    for col in range(ncols):
        pivot = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col] % 2 == 1:
                pivot = r
                break
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] % 2 == 1:
                rows[r] = (rows[r] + rows[pivot_row]) % 2
        pivot_row += 1
        rank += 1
        if pivot_row == len(rows):
            break
    return rank


def gf2_betti(dimensions, boundaries) -> list:
    """Betti numbers of a chain complex given per-cell dimension and faces.

    betti_p = (#p-cells) - rank(boundary_p) - rank(boundary_{p+1}), the
    classic rank-nullity computation, with boundary_p mapping p-chains to
    (p-1)-chains.
    """
    n = len(dimensions)
    if n == 0:
        return []
    top = max(dimensions)
    cells_of = {d: [i for i in range(n) if dimensions[i] == d] for d in range(top + 1)}
    ranks = {}
    for d in range(1, top + 1):
        rows = cells_of.get(d - 1, [])
        cols = cells_of.get(d, [])
        row_pos = {c: r for r, c in enumerate(rows)}
        matrix = np.zeros((max(len(rows), 1), max(len(cols), 1)), dtype=np.int64)
        for cpos, cell in enumerate(cols):
            for face in boundaries[cell]:
                matrix[row_pos[face], cpos] += 1
        ranks[d] = gf2_rank(matrix) if rows and cols else 0
    betti = []
    for d in range(top + 1):
        betti.append(len(cells_of.get(d, [])) - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return betti


def _linf(a, b) -> float:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def _matchings(nx, ny):
    """Yield all partial injective matchings as lists of (i, j) pairs."""
    xs = list(range(nx))
    for size in range(min(nx, ny) + 1):
        for chosen in itertools.combinations(xs, size):
            for targets in itertools.permutations(range(ny), size):
                yield list(zip(chosen, targets))


def brute_bottleneck(X, Y) -> float:
    """Minimize, over every matching, the largest point move (diagonal allowed)."""
    X = [tuple(map(float, p)) for p in X]
    Y = [tuple(map(float, p)) for p in Y]
    best = math.inf
    for matching in _matchings(len(X), len(Y)):
        used_x = {i for i, _ in matching}
        used_y = {j for _, j in matching}
        cost = 0.0
        for i, j in matching:
            cost = max(cost, _linf(X[i], Y[j]))
        for i in range(len(X)):
            if i not in used_x:
                cost = max(cost, (X[i][1] - X[i][0]) / 2.0)
        for j in range(len(Y)):
            if j not in used_y:
                cost = max(cost, (Y[j][1] - Y[j][0]) / 2.0)
        best = min(best, cost)
    return best


def brute_wasserstein(X, Y, q) -> float:
    """Minimize total moved mass to the q-th power over every matching."""
    X = [tuple(map(float, p)) for p in X]
    Y = [tuple(map(float, p)) for p in Y]
    best = math.inf
    for matching in _matchings(len(X), len(Y)):
        used_x = {i for i, _ in matching}
        used_y = {j for _, j in matching}
        cost = 0.0
        for i, j in matching:
            cost += _linf(X[i], Y[j]) ** q
        for i in range(len(X)):
            if i not in used_x:
                cost += ((X[i][1] - X[i][0]) / 2.0) ** q
        for j in range(len(Y)):
            if j not in used_y:
                cost += ((Y[j][1] - Y[j][0]) / 2.0) ** q
        best = min(best, cost)
    return best ** (1.0 / q)


def landscape_value(intervals, k, t) -> float:
    """k-th largest tent value at t, computed directly (k is 1-indexed)."""
    tents = sorted(
        (max(0.0, min(t - b, d - t)) for b, d in intervals),
        reverse=True,
    )
    if k <= len(tents):
        return tents[k - 1]
    return 0.0


def grid_component_count(present: np.ndarray) -> int:
    """Components of occupied grid cells, cells adjacent when their closures
    meet (8-adjacency in the plane, all 3**k - 1 offsets in general)."""
    present = np.asarray(present, dtype=bool)
    shape = present.shape
    index = {tuple(idx): i for i, idx in enumerate(np.argwhere(present))}
    parent = list(range(len(index)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    offsets = [
        off
        for off in itertools.product((-1, 0, 1), repeat=len(shape))
        if any(off)
    ]
    for cell, i in index.items():
        for off in offsets:
            neighbor = tuple(c + o for c, o in zip(cell, off))
            if all(0 <= c < s for c, s in zip(neighbor, shape)) and neighbor in index:
                ri, rj = find(i), find(index[neighbor])
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return len({find(i) for i in range(len(index))})


def brute_cliques(adjacency: np.ndarray, max_size: int) -> set:
    """Every clique of 2..max_size vertices, by testing all combinations."""
    n = adjacency.shape[0]
    cliques = set()
    for size in range(2, max_size + 1):
        for combo in itertools.combinations(range(n), size):
            if all(adjacency[a, b] for a, b in itertools.combinations(combo, 2)):
                cliques.add(combo)
    return cliques


def gaussian_rectangle_mass(center, h, rect) -> float:
    """Mass of a normalized 2-D Gaussian over an axis-aligned rectangle."""
    (x0, x1), (y0, y1) = rect
    cx, cy = center
    s = h * math.sqrt(2.0)

    def cdf_span(lo, hi, c):
        return 0.5 * (math.erf((hi - c) / s) - math.erf((lo - c) / s))

    return cdf_span(x0, x1, cx) * cdf_span(y0, y1, cy)


def kde_value(points, x, y, h) -> float:
    """Gaussian kernel density at one location, by the double loop."""
    total = 0.0
    for px, py in points:
        r2 = (x - px) ** 2 + (y - py) ** 2
        total += math.exp(-r2 / (2.0 * h * h))
    return total / (len(points) * 2.0 * math.pi * h * h)
