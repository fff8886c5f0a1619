"""Functional summaries of persistence diagrams and a permutation test.

A landscape turns the multiset of (birth, death) intervals into a sequence of
piecewise-linear functions: level k at time t is the k-th largest tent value
over all intervals. Landscapes embed into a function space, so they can be
averaged pointwise and compared with L^p norms, which is what the two-sample
permutation test below is built on. Heat maps are the smoothed-counting
alternative: a Gaussian bump per point, optionally weighted by persistence or
antisymmetrized across the diagonal.

Both summaries require finite intervals; truncate essential classes first
(for example with the essential_cutoff of the diagram metrics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadBandwidth,
    BadExponent,
    BadInterval,
    BadParameter,
    EmptyInput,
    UnequalSampleSizes,
)

COLLINEAR_TOLERANCE = 1e-12


def _finite_intervals(intervals) -> np.ndarray:
    arr = np.asarray(intervals, dtype=float)
    if arr.size == 0:
        return np.empty((0, 2), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise BadInterval(f"expected an array of (birth, death) pairs, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise BadInterval(
            "intervals must be finite here; replace infinite deaths with a cutoff first"
        )
    if np.any(arr[:, 1] < arr[:, 0]):
        raise BadInterval("every interval needs birth <= death")
    return arr


def triangle_function(birth: float, death: float, t):
    """Tent of an interval: 0 outside, rising to (death - birth) / 2 at the middle."""
    t = np.asarray(t, dtype=float)
    value = np.maximum(0.0, np.minimum(t - birth, death - t))
    return float(value) if value.ndim == 0 else value


@dataclass
class Landscape:
    """Persistence landscape as breakpoint arrays, one per level.

    ``levels[k - 1]`` is an (m, 2) array of (x, value) pairs for level k,
    sorted by x; the level is linear between breakpoints and zero outside
    their range. Levels are 1-indexed and every stored level is somewhere
    positive.
    """

    levels: list[np.ndarray]

    @property
    def depth(self) -> int:
        return len(self.levels)


def _compress_breakpoints(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Drop breakpoints that are linear interpolants of their neighbors."""
    m = xs.size
    if m <= 2:
        return np.column_stack((xs, ys))
    keep = np.ones(m, dtype=bool)
    last = 0
    for i in range(1, m - 1):
        x0, y0 = xs[last], ys[last]
        span = xs[i + 1] - x0
        predicted = y0 + (ys[i + 1] - y0) * (xs[i] - x0) / span if span > 0 else y0
        if abs(predicted - ys[i]) <= COLLINEAR_TOLERANCE:
            keep[i] = False
        else:
            last = i
    return np.column_stack((xs[keep], ys[keep]))


def build_landscape(intervals) -> Landscape:
    """Exact landscape of a finite diagram.

    Every kink of every level lies at a birth, a death, or a midpoint
    (b_i + d_j) / 2 of one interval's rise against another's fall, so
    evaluating all tents on that candidate set and sorting columnwise gives
    each level exactly; between candidates every level is linear.
    """
    arr = _finite_intervals(intervals)
    if arr.shape[0] == 0:
        return Landscape([])
    b = arr[:, 0]
    d = arr[:, 1]
    mids = (b[:, None] + d[None, :]).ravel() / 2.0
    xs = np.unique(np.concatenate((b, d, mids)))
    npts = arr.shape[0]
    sorted_chunks = []
    chunk = max(1, int(2**21 // max(1, npts)))
    for start in range(0, xs.size, chunk):
        block = xs[start : start + chunk, None]
        tents = np.maximum(0.0, np.minimum(block - b[None, :], d[None, :] - block))
        tents.sort(axis=1)
        sorted_chunks.append(tents[:, ::-1])
    values = np.vstack(sorted_chunks)
    levels = []
    for k in range(npts):
        ys = values[:, k]
        if not np.any(ys > 0.0):
            break
        levels.append(_compress_breakpoints(xs, ys))
    return Landscape(levels)


def evaluate_landscape(landscape: Landscape, k: int, t):
    """Value of level k (1-indexed) at t; zero outside the level's support."""
    k = int(k)
    if k < 1:
        raise BadParameter(f"levels are 1-indexed, got {k}")
    t_arr = np.asarray(t, dtype=float)
    if k > landscape.depth:
        zeros = np.zeros_like(t_arr)
        return float(zeros) if t_arr.ndim == 0 else zeros
    pts = landscape.levels[k - 1]
    out = np.interp(t_arr, pts[:, 0], pts[:, 1], left=0.0, right=0.0)
    return float(out) if t_arr.ndim == 0 else out


def average_landscapes(landscapes) -> Landscape:
    """Pointwise mean, level by level, of a non-empty collection."""
    items = list(landscapes)
    if not items:
        raise EmptyInput("cannot average zero landscapes")
    depth = max(item.depth for item in items)
    levels = []
    for k in range(1, depth + 1):
        xs = np.unique(
            np.concatenate(
                [item.levels[k - 1][:, 0] for item in items if item.depth >= k]
            )
        )
        ys = np.zeros_like(xs)
        for item in items:
            ys += evaluate_landscape(item, k, xs)
        ys /= len(items)
        levels.append(_compress_breakpoints(xs, ys))
    while levels and not np.any(levels[-1][:, 1] > 0.0):
        levels.pop()
    return Landscape(levels)


def _segment_power_integral(y0: float, y1: float, dx: float, p: float) -> float:
    """Integral of |linear segment|^p over a width-dx interval, in closed form.

    With u(t) running linearly from y0 to y1, sign(u) |u|^(p+1) / ((p+1) u')
    is an antiderivative of |u|^p, valid across a sign change.
    """
    if dx <= 0.0:
        return 0.0
    # nearly flat segments cannot cross zero (a crossing needs
    # |y1 - y0| >= max|y|), so the midpoint value is exact to (dy/y)^2
    # and avoids dividing the power difference by a vanishing slope
    if abs(y1 - y0) <= 1e-6 * max(abs(y0), abs(y1)):
        return abs(0.5 * (y0 + y1)) ** p * dx
    slope = (y1 - y0) / dx
    upper = math.copysign(abs(y1) ** (p + 1.0), y1)
    lower = math.copysign(abs(y0) ** (p + 1.0), y0)
    return (upper - lower) / ((p + 1.0) * slope)


def landscape_distance(first: Landscape, second: Landscape, p: float = 2.0) -> float:
    """L^p distance between landscapes, exact for every finite p >= 1.

    The difference of two levels is piecewise linear on the union of their
    breakpoints, so each segment integrates in closed form; p = infinity
    takes the largest breakpoint gap instead.
    """
    p = float(p)
    if not (p >= 1.0 or math.isinf(p)):
        raise BadExponent(f"the exponent must satisfy p >= 1, got {p}")
    depth = max(first.depth, second.depth)
    total = 0.0
    supremum = 0.0
    for k in range(1, depth + 1):
        parts = []
        if first.depth >= k:
            parts.append(first.levels[k - 1][:, 0])
        if second.depth >= k:
            parts.append(second.levels[k - 1][:, 0])
        xs = np.unique(np.concatenate(parts))
        diff = evaluate_landscape(first, k, xs) - evaluate_landscape(second, k, xs)
        if math.isinf(p):
            if diff.size:
                supremum = max(supremum, float(np.max(np.abs(diff))))
            continue
        for i in range(xs.size - 1):
            total += _segment_power_integral(
                float(diff[i]), float(diff[i + 1]), float(xs[i + 1] - xs[i]), p
            )
    if math.isinf(p):
        return supremum
    return total ** (1.0 / p)


@dataclass
class HeatMap:
    """Gaussian-smoothed diagram on a birth x death grid.

    ``grid[i, j]`` is the field at the center of birth cell i and death cell
    j; ranges are the outer edges of the window.
    """

    grid: np.ndarray
    birth_range: tuple[float, float]
    death_range: tuple[float, float]
    bandwidth: float
    mode: str


HEAT_MAP_MODES = ("constant", "persistence-weighted", "signed-symmetric")


def build_heat_map(
    intervals,
    resolution,
    bandwidth: float,
    mode: str = "constant",
    window=None,
    truncation_radius=None,
) -> HeatMap:
    """Sum of Gaussian bumps, one per diagram point, sampled at cell centers.

    Each point contributes weight * exp(-r^2 / (2 h^2)) / (2 pi h^2) with r
    the Euclidean distance to the cell center. Weights by mode: "constant"
    is 1, "persistence-weighted" is death - birth, "signed-symmetric" adds
    +1 at (birth, death) and -1 at the mirror (death, birth). Contributions
    beyond ``truncation_radius`` (default 3 bandwidths, math.inf to disable)
    are skipped. Without an explicit window the grid spans all births and
    deaths padded by the truncation radius.
    """
    arr = _finite_intervals(intervals)
    h = float(bandwidth)
    if not h > 0:
        raise BadBandwidth(f"bandwidth must be positive, got {bandwidth}")
    if mode not in HEAT_MAP_MODES:
        raise BadParameter(f"mode must be one of {HEAT_MAP_MODES}, got {mode!r}")
    if isinstance(resolution, (int, np.integer)):
        resolution = (int(resolution), int(resolution))
    nb, nd = (int(r) for r in resolution)
    if nb < 1 or nd < 1:
        raise BadParameter("resolution must be at least 1 per axis")
    if truncation_radius is None:
        radius = 3.0 * h
    else:
        radius = float(truncation_radius)
        if not radius > 0:
            raise BadParameter("truncation_radius must be positive")
    if window is None:
        if arr.shape[0] == 0:
            raise EmptyInput("an empty diagram needs an explicit window")
        pad = radius if math.isfinite(radius) else 3.0 * h
        lo = float(arr.min()) - pad
        hi = float(arr.max()) + pad
        window = ((lo, hi), (lo, hi))
    (b0, b1), (d0, d1) = window
    b0, b1, d0, d1 = float(b0), float(b1), float(d0), float(d1)
    if not (b1 > b0 and d1 > d0):
        raise BadParameter("window ranges must be increasing")
    bx = b0 + (np.arange(nb) + 0.5) * (b1 - b0) / nb
    dy = d0 + (np.arange(nd) + 0.5) * (d1 - d0) / nd
    grid = np.zeros((nb, nd), dtype=float)
    scale = 1.0 / (2.0 * math.pi * h * h)
    r2max = radius * radius

    def splat(pb: float, pd: float, weight: float):
        r2 = (bx[:, None] - pb) ** 2 + (dy[None, :] - pd) ** 2
        mask = r2 <= r2max
        grid[mask] += weight * scale * np.exp(-r2[mask] / (2.0 * h * h))

    for pb, pd in arr:
        if mode == "constant":
            splat(pb, pd, 1.0)
        elif mode == "persistence-weighted":
            splat(pb, pd, pd - pb)
        else:
            splat(pb, pd, 1.0)
            splat(pd, pb, -1.0)
    return HeatMap(grid, (b0, b1), (d0, d1), h, mode)


@dataclass
class PermutationTestResult:
    p_value: float
    observed_distance: float


def permutation_test(
    group_a, group_b, n_permutations: int = 1000, seed: int = 0, p: float = 2.0
) -> PermutationTestResult:
    """Two-sample permutation test on L^p distance of average landscapes.

    The observed statistic is the distance between the average landscapes of
    the two groups. Labels are reshuffled ``n_permutations`` times; the
    p-value is the fraction of shuffles whose statistic strictly exceeds the
    observed one. When every diagram is a copy of one diagram the observed
    distance is 0 and no shuffle exceeds it, so the degenerate answer is
    p = 0. Shuffle i draws from a generator seeded by (seed, i), so results
    are reproducible and independent of order.
    """
    diagrams_a = list(group_a)
    diagrams_b = list(group_b)
    m = len(diagrams_a)
    if m == 0 or len(diagrams_b) != m:
        raise UnequalSampleSizes(
            f"groups must be non-empty and equal in size, got {m} and {len(diagrams_b)}"
        )
    n_permutations = int(n_permutations)
    if n_permutations < 1:
        raise BadParameter("n_permutations must be at least 1")
    landscapes = [build_landscape(d) for d in diagrams_a + diagrams_b]
    observed = landscape_distance(
        average_landscapes(landscapes[:m]), average_landscapes(landscapes[m:]), p
    )
    exceed = 0
    for i in range(n_permutations):
        rng = np.random.default_rng(np.random.SeedSequence((seed, i)))
        perm = rng.permutation(2 * m)
        shuffled = landscape_distance(
            average_landscapes([landscapes[j] for j in perm[:m]]),
            average_landscapes([landscapes[j] for j in perm[m:]]),
            p,
        )
        if shuffled > observed:
            exceed += 1
    return PermutationTestResult(exceed / n_permutations, observed)
