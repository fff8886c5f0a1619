"""End-to-end diagram pipelines: raw input to persistence diagram.

A Rips complex truncated at max_dimension has no cells of dimension
max_dimension + 1, so classes of degree max_dimension can never die and the
diagram in that degree is an artifact of the truncation. The pipelines
therefore report degrees strictly below max_dimension and pick the cheapest
engine that produces that part of the diagram exactly.
"""

from __future__ import annotations

import numpy as np

from .builders import (
    GridBitmap,
    as_distance_matrix,
    cubical_from_bitmap,
    euclidean_distance_matrix,
    rips_from_distance_matrix,
    sliding_window_embed,
)
from .errors import BadParameter
from .persistence import PersistenceDiagram, persistence_diagram

STREAMED_EDGE_THRESHOLD = 30_000


def rips_diagram_from_matrix(
    D, max_edge_length: float, max_dimension: int = 1, engine: str = "auto"
) -> PersistenceDiagram:
    """Persistence diagram of the Rips filtration, degrees < max_dimension.

    ``engine`` is one of "auto", "reference", "compiled" (both build the
    complex and reduce its boundary matrix) or "streamed" (edge-stream
    kernel, max_dimension at most 2, same output). "auto" streams exactly
    when the edge count makes the complex expensive to materialize.
    """
    D = as_distance_matrix(D)
    if engine not in ("auto", "reference", "compiled", "streamed"):
        raise BadParameter(f"unknown engine {engine!r}")
    if engine == "auto":
        edges = int(np.count_nonzero(np.triu(D <= max_edge_length, 1)))
        if max_dimension <= 2 and edges > STREAMED_EDGE_THRESHOLD:
            engine = "streamed"
    if engine == "streamed":
        from ._flagstream import flag_complex_diagram

        if max_dimension < 1:
            raise BadParameter("max_dimension must be at least 1")
        points = flag_complex_diagram(D, float(max_edge_length), max_dimension)
    else:
        K = rips_from_distance_matrix(D, max_edge_length, max_dimension)
        points = persistence_diagram(K, engine=engine).points
    kept = [p for p in points if p.dimension < max_dimension]
    return PersistenceDiagram(sorted(kept, key=lambda p: (p.dimension, p.birth, p.death)))


def rips_diagram(
    points, max_edge_length: float, max_dimension: int = 1, engine: str = "auto"
) -> PersistenceDiagram:
    return rips_diagram_from_matrix(
        euclidean_distance_matrix(points), max_edge_length, max_dimension, engine
    )


def cubical_diagram(bitmap: GridBitmap, binary: bool = False, engine: str = "auto") -> PersistenceDiagram:
    """Sublevel persistence of a grid of top-cube values.

    Cubical complexes are complete, so every degree of the diagram is kept.
    """
    return persistence_diagram(cubical_from_bitmap(bitmap, binary=binary), engine=engine)


def sliding_window_diagram(
    values,
    window: int,
    max_edge_length: float,
    max_dimension: int = 1,
    engine: str = "auto",
    stride: int = 1,
) -> PersistenceDiagram:
    """Rips diagram of the sliding-window embedding of a scalar series.

    ``stride`` subsamples the embedded points (every stride-th window) to cut
    the quadratic cost on long series; stride 1 keeps them all.
    """
    stride = int(stride)
    if stride < 1:
        raise BadParameter("stride must be at least 1")
    embedded = sliding_window_embed(values, window)[::stride]
    return rips_diagram(embedded, max_edge_length, max_dimension, engine)
