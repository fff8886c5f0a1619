"""Streamed H0/H1 of a Vietoris-Rips filtration without building the complex.

The clique complex of a dense distance matrix has one triangle per triple of
mutually close points, which is far too many to materialize at a few thousand
points. This module computes degrees 0 and 1 of the same persistence diagram
directly from the edge list:

* Degree 0 is a union-find sweep over edges in filtration order.
* Degree 1 pairs edges with triangles. Most edges are cancelled first against
  an adjacent triangle of equal filtration value (the triangle whose third
  vertex forms the lexicographically smallest vertex triple among cofacets
  preceding the edge); such a pair has zero persistence and removing both
  cells leaves the visible diagram unchanged. The surviving critical edges
  are few, so the remaining reduction runs over dense bit columns indexed by
  critical edges only. Triangles are enumerated on the fly and never stored.

Output is identical, point for point, to reducing the full boundary matrix
of the same complex and discarding zero-persistence points.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import BadParameter
from .persistence import DiagramPoint


@njit(cache=True)
def _critical_and_matched(iu, ju, ordmat, n):
    """For each edge, the third vertex of its cancelling triangle, or -1.

    Edge e = (u, v) is cancelled by the triangle (u, v, w) with the smallest
    sorted vertex triple among those whose other two edges precede e in the
    edge ordering; edges with no such triangle are critical.
    """
    E = iu.size
    matched_w = np.full(E, -1, np.int64)
    for e in range(E):
        u = iu[e]
        v = ju[e]
        ba = -1
        bb = -1
        bc = -1
        bw = -1
        for w in range(n):
            if ordmat[u, w] < e and ordmat[v, w] < e:
                a = u
                b = v
                c = w
                if c < b:
                    b, c = c, b
                if b < a:
                    a, b = b, a
                if c < b:
                    b, c = c, b
                better = False
                if ba < 0:
                    better = True
                elif a < ba:
                    better = True
                elif a == ba and b < bb:
                    better = True
                elif a == ba and b == bb and c < bc:
                    better = True
                if better:
                    ba = a
                    bb = b
                    bc = c
                    bw = w
        matched_w[e] = bw
    return matched_w


@njit(cache=True)
def _build_flow_bitsets(iu, ju, ordmat, matched_w, crit_index, W):
    """Express every edge in the critical-edge basis as a dense bitset.

    A critical edge maps to itself; a cancelled edge maps to the symmetric
    difference of the images of the other two edges of its triangle, both of
    which precede it, so one forward pass suffices.
    """
    E = iu.size
    flows = np.zeros((E, W), np.uint64)
    nonzero = np.zeros(E, np.bool_)
    for e in range(E):
        w = matched_w[e]
        if w < 0:
            ci = crit_index[e]
            flows[e, ci >> 6] |= np.uint64(1) << np.uint64(ci & 63)
            nonzero[e] = True
        else:
            a = ordmat[iu[e], w]
            b = ordmat[ju[e], w]
            nz = False
            for q in range(W):
                x = flows[a, q] ^ flows[b, q]
                flows[e, q] = x
                if x != 0:
                    nz = True
            nonzero[e] = nz
    return flows, nonzero


@njit(cache=True)
def _count_nonzero_columns(iu, ju, ordmat, matched_w, flows, nonzero, n, W):
    E = iu.size
    cnt = np.int64(0)
    for e in range(E):
        u = iu[e]
        v = ju[e]
        mw = matched_w[e]
        ne = nonzero[e]
        for w in range(n):
            if ordmat[u, w] < e and ordmat[v, w] < e and w != mw:
                a = ordmat[u, w]
                b = ordmat[v, w]
                if not (ne or nonzero[a] or nonzero[b]):
                    continue
                nz = False
                for q in range(W):
                    if flows[e, q] ^ flows[a, q] ^ flows[b, q] != 0:
                        nz = True
                        break
                if nz:
                    cnt += 1
    return cnt


@njit(cache=True)
def _collect_nonzero_columns(iu, ju, ordmat, matched_w, flows, nonzero, n, W, out_e, out_key, VB):
    """Record every triangle whose column survives the cancellation.

    A triangle is attributed to its latest edge e; its column in the critical
    basis is the symmetric difference of the three edge flows. Vertex triples
    are packed into one int64 key for sorting.
    """
    E = iu.size
    pos = np.int64(0)
    for e in range(E):
        u = iu[e]
        v = ju[e]
        mw = matched_w[e]
        ne = nonzero[e]
        for w in range(n):
            if ordmat[u, w] < e and ordmat[v, w] < e and w != mw:
                a = ordmat[u, w]
                b = ordmat[v, w]
                if not (ne or nonzero[a] or nonzero[b]):
                    continue
                nz = False
                for q in range(W):
                    if flows[e, q] ^ flows[a, q] ^ flows[b, q] != 0:
                        nz = True
                        break
                if nz:
                    aa = u
                    bb = v
                    cc = w
                    if cc < bb:
                        bb, cc = cc, bb
                    if bb < aa:
                        aa, bb = bb, aa
                    if cc < bb:
                        bb, cc = cc, bb
                    out_e[pos] = e
                    out_key[pos] = (
                        (np.int64(aa) << np.int64(2 * VB))
                        | (np.int64(bb) << np.int64(VB))
                        | np.int64(cc)
                    )
                    pos += 1
    return pos


@njit(cache=True)
def _reduce_bitset_columns(order, out_e, out_key, ordmat, flows, W, ncrit, VB):
    """Left-to-right reduction of the surviving columns over dense bitsets.

    Columns arrive sorted by (filtration value, vertex triple), matching the
    order the full boundary matrix would present them in. Each column is
    recomputed from the three edge flows, reduced against previously claimed
    columns by highest set bit, and either pairs a fresh critical edge or
    vanishes.
    """
    M = order.size
    claimed_of = np.full(ncrit, -1, np.int64)
    claimed_cols = np.zeros((ncrit, W), np.uint64)
    claimed_used = 0
    pair_crit = np.empty(ncrit, np.int64)
    pair_edge = np.empty(ncrit, np.int64)
    npairs = 0
    col = np.zeros(W, np.uint64)
    vmask = (np.int64(1) << np.int64(VB)) - 1
    for oi in range(M):
        idx = order[oi]
        e = out_e[idx]
        key = out_key[idx]
        cc = key & vmask
        bb = (key >> np.int64(VB)) & vmask
        aa = (key >> np.int64(2 * VB)) & vmask
        e1 = ordmat[aa, bb]
        e2 = ordmat[aa, cc]
        e3 = ordmat[bb, cc]
        for q in range(W):
            col[q] = flows[e1, q] ^ flows[e2, q] ^ flows[e3, q]
        while True:
            low = -1
            for q in range(W - 1, -1, -1):
                x = col[q]
                if x != 0:
                    hb = 63
                    while (x >> np.uint64(hb)) & np.uint64(1) == np.uint64(0):
                        hb -= 1
                    low = (q << 6) + hb
                    break
            if low < 0:
                break
            cid = claimed_of[low]
            if cid < 0:
                claimed_of[low] = claimed_used
                for q in range(W):
                    claimed_cols[claimed_used, q] = col[q]
                claimed_used += 1
                pair_crit[npairs] = low
                pair_edge[npairs] = e
                npairs += 1
                break
            for q in range(W):
                col[q] ^= claimed_cols[cid, q]
    return pair_crit[:npairs].copy(), pair_edge[:npairs].copy()


def flag_complex_diagram(D, max_edge_length: float, max_dimension: int) -> list[DiagramPoint]:
    """Persistence points of the Rips filtration of D, degrees 0..max_dimension.

    ``max_dimension`` must be 1 or 2. Zero-persistence points are dropped.
    With max_dimension 1 only edges exist, so degree 1 consists of the
    essential classes of the graph; with max_dimension 2 the full degree-1
    diagram is produced. Degree max_dimension itself carries no triangles or
    tetrahedra to die against, so its finite part would be unreliable; the
    caller is expected to discard it.
    """
    if max_dimension not in (1, 2):
        raise BadParameter("the streamed engine supports max_dimension 1 or 2")
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    points: list[DiagramPoint] = []
    if n == 0:
        return points
    mask = np.triu(D <= max_edge_length, 1)
    iu0, ju0 = np.nonzero(mask)
    lens0 = D[iu0, ju0]
    order = np.lexsort((ju0, iu0, lens0))
    iu = iu0[order].astype(np.int64)
    ju = ju0[order].astype(np.int64)
    lens = lens0[order]
    E = iu.size

    matched_w = None
    claimed_crit: set[int] = set()
    if max_dimension == 2 and E > 0:
        VB = max(1, int(n - 1).bit_length())
        if 3 * VB > 62:
            raise BadParameter(f"too many points for packed triangle keys: {n}")
        ordmat = np.full((n, n), np.iinfo(np.int32).max, np.int32)
        arange = np.arange(E, dtype=np.int32)
        ordmat[iu, ju] = arange
        ordmat[ju, iu] = arange
        matched_w = _critical_and_matched(iu, ju, ordmat, n)
        crit_edges = np.flatnonzero(matched_w < 0)
        ncrit = crit_edges.size
        crit_index = np.full(E, -1, np.int64)
        crit_index[crit_edges] = np.arange(ncrit)
        W = max(1, (ncrit + 63) // 64)
        flows, nonzero = _build_flow_bitsets(iu, ju, ordmat, matched_w, crit_index, W)
        cnt = _count_nonzero_columns(iu, ju, ordmat, matched_w, flows, nonzero, n, W)
        out_e = np.empty(cnt, np.int64)
        out_key = np.empty(cnt, np.int64)
        _collect_nonzero_columns(
            iu, ju, ordmat, matched_w, flows, nonzero, n, W, out_e, out_key, VB
        )
        col_order = np.lexsort((out_key, lens[out_e]))
        pair_crit, pair_edge = _reduce_bitset_columns(
            col_order, out_e, out_key, ordmat, flows, W, ncrit, VB
        )
        for ci, e in zip(pair_crit, pair_edge):
            ce = int(crit_edges[ci])
            claimed_crit.add(ce)
            b = float(lens[ce])
            d = float(lens[int(e)])
            if d > b:
                points.append(DiagramPoint(1, b, d, None))

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(E):
        ru = find(int(iu[e]))
        rv = find(int(ju[e]))
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            if lens[e] > 0.0:
                points.append(DiagramPoint(0, 0.0, float(lens[e]), None))
        elif max_dimension == 1:
            points.append(DiagramPoint(1, float(lens[e]), np.inf, None))
        elif matched_w[e] < 0 and e not in claimed_crit:
            points.append(DiagramPoint(1, float(lens[e]), np.inf, None))
    components = sum(1 for i in range(n) if parent[i] == i)
    for _ in range(components):
        points.append(DiagramPoint(0, 0.0, np.inf, None))
    return points
