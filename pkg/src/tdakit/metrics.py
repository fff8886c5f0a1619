"""Bottleneck and Wasserstein distances between persistence diagrams.

Diagrams enter as arrays of (birth, death) pairs for a single degree, death
possibly infinite. Both metrics allow matching any point to its projection on
the diagonal, use the L-infinity distance on the plane as ground metric, and
treat essential points (infinite death) separately: essential classes can
only be matched to each other, so their counts must agree unless a finite
``essential_cutoff`` is supplied to truncate them first.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import BadExponent, BadInterval, BadParameter, MixedEssential


def _as_intervals(intervals, essential_cutoff=None) -> np.ndarray:
    arr = np.asarray(intervals, dtype=float)
    if arr.size == 0:
        return np.empty((0, 2), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise BadInterval(f"expected an array of (birth, death) pairs, got shape {arr.shape}")
    arr = arr.copy()
    if np.any(np.isnan(arr)) or np.any(np.isinf(arr[:, 0])):
        raise BadInterval("births must be finite and nothing may be NaN")
    if essential_cutoff is not None:
        cutoff = float(essential_cutoff)
        if not math.isfinite(cutoff):
            raise BadInterval("essential_cutoff must be finite")
        arr[np.isinf(arr[:, 1]), 1] = cutoff
    if np.any(arr[:, 1] < arr[:, 0]):
        raise BadInterval("every interval needs birth <= death")
    return arr


def _split_essential(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    essential = np.isinf(arr[:, 1])
    return arr[~essential], np.sort(arr[essential, 0])


def _cross_distances(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    if X.shape[0] == 0 or Y.shape[0] == 0:
        return np.empty((X.shape[0], Y.shape[0]), dtype=float)
    return np.abs(X[:, None, :] - Y[None, :, :]).max(axis=2)


def _matching_feasible(delta: float, dXY: np.ndarray, halfX: np.ndarray, halfY: np.ndarray) -> bool:
    """Perfect matching test for the bottleneck graph at tolerance delta.

    Left side is X plus one proxy per point of Y, right side is Y plus one
    proxy per point of X. A point may pair with any opposite point within
    delta or with its own diagonal proxy when its half persistence allows;
    two proxies always pair. A perfect matching means delta suffices.
    """
    nX, nY = dXY.shape
    size = nX + nY
    if size == 0:
        return True
    allowed = np.zeros((size, size), dtype=bool)
    allowed[:nX, :nY] = dXY <= delta
    idx = np.arange(nX)
    allowed[idx, nY + idx] = halfX <= delta
    idy = np.arange(nY)
    allowed[nX + idy, idy] = halfY <= delta
    allowed[nX:, nY:] = True
    matching = maximum_bipartite_matching(csr_matrix(allowed), perm_type="column")
    return bool(np.all(matching >= 0))


def _essential_bottleneck(bX: np.ndarray, bY: np.ndarray) -> float:
    if bX.size != bY.size:
        raise MixedEssential(
            f"diagrams carry {bX.size} and {bY.size} essential classes; "
            "pass essential_cutoff to compare them anyway"
        )
    if bX.size == 0:
        return 0.0
    return float(np.max(np.abs(bX - bY)))


def bottleneck_distance(X, Y, essential_cutoff=None) -> float:
    """Smallest delta admitting a delta-matching between the diagrams.

    Finite points may match each other (L-infinity cost) or the diagonal
    (half persistence); essential points match each other by sorted birth.
    The answer is always attained at zero, at a cross distance, or at a half
    persistence, so a binary search over those candidates is exact.
    """
    X = _as_intervals(X, essential_cutoff)
    Y = _as_intervals(Y, essential_cutoff)
    Xf, bX = _split_essential(X)
    Yf, bY = _split_essential(Y)
    essential = _essential_bottleneck(bX, bY)
    dXY = _cross_distances(Xf, Yf)
    halfX = (Xf[:, 1] - Xf[:, 0]) / 2.0
    halfY = (Yf[:, 1] - Yf[:, 0]) / 2.0
    candidates = np.unique(np.concatenate(([0.0], dXY.ravel(), halfX, halfY)))
    # the answer is max(essential, best finite delta), so the essential part
    # both floors the candidate list and joins it as a candidate itself
    candidates = candidates[candidates >= essential]
    candidates = np.unique(np.concatenate(([essential], candidates)))
    lo, hi = 0, candidates.size - 1
    if _matching_feasible(candidates[lo], dXY, halfX, halfY):
        return float(candidates[lo])
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _matching_feasible(candidates[mid], dXY, halfX, halfY):
            hi = mid
        else:
            lo = mid
    return float(candidates[hi])


def wasserstein_distance(X, Y, q: float = 2.0, essential_cutoff=None) -> float:
    """q-Wasserstein distance with L-infinity ground metric, q >= 1.

    Finite parts are matched by an optimal assignment on the augmented cost
    matrix that offers every point its diagonal projection; essential births
    are matched in sorted order, which is optimal on the line. Costs add as
    q-th powers and the final distance is the q-th root of the total.
    """
    q = float(q)
    if math.isinf(q):
        raise BadExponent("use bottleneck_distance for the q = infinity case")
    if not q >= 1.0:
        raise BadExponent(f"the exponent must satisfy q >= 1, got {q}")
    X = _as_intervals(X, essential_cutoff)
    Y = _as_intervals(Y, essential_cutoff)
    Xf, bX = _split_essential(X)
    Yf, bY = _split_essential(Y)
    if bX.size != bY.size:
        raise MixedEssential(
            f"diagrams carry {bX.size} and {bY.size} essential classes; "
            "pass essential_cutoff to compare them anyway"
        )
    total = float(np.sum(np.abs(bX - bY) ** q))
    nX, nY = Xf.shape[0], Yf.shape[0]
    if nX + nY:
        size = nX + nY
        cost = np.zeros((size, size), dtype=float)
        cost[:nX, :nY] = _cross_distances(Xf, Yf) ** q
        halfX = ((Xf[:, 1] - Xf[:, 0]) / 2.0) ** q
        halfY = ((Yf[:, 1] - Yf[:, 0]) / 2.0) ** q
        cost[:nX, nY:] = halfX[:, None]
        cost[nX:, :nY] = halfY[None, :]
        rows, cols = linear_sum_assignment(cost)
        total += float(cost[rows, cols].sum())
    return total ** (1.0 / q)


def distance_matrix(diagrams, metric: str = "bottleneck", q: float = 2.0, essential_cutoff=None) -> np.ndarray:
    """Pairwise distances between a sequence of diagrams of one degree."""
    if metric == "bottleneck":

        def dist(a, b):
            return bottleneck_distance(a, b, essential_cutoff)

    elif metric == "wasserstein":

        def dist(a, b):
            return wasserstein_distance(a, b, q, essential_cutoff)

    else:
        raise BadParameter(f"unknown metric {metric!r}")
    items = [_as_intervals(d, essential_cutoff) for d in diagrams]
    n = len(items)
    out = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = dist(items[i], items[j])
    return out
