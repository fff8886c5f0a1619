"""tdakit: persistent homology for point clouds, grids, and time series.

Build filtered simplicial or cubical complexes, reduce their boundary
matrices over the two-element field, and work with the resulting diagrams:
bottleneck and Wasserstein distances, persistence landscapes, heat maps, and
a permutation test. The tdakit command exposes the same pipelines on plain
text files.
"""

from .builders import (
    GridBitmap,
    as_distance_matrix,
    as_point_cloud,
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
)
from .complexes import (
    Cell,
    ElementaryCube,
    FilteredComplex,
    Simplex,
    boundary_of_cube,
    boundary_of_simplex,
    cell_boundary,
    cell_dimension,
    filtration_from_top_cells,
    lower_star_from_vertices,
    sort_cells,
    validate_filtration,
)
from .errors import (
    AsymmetricMatrix,
    BadBandwidth,
    BadExponent,
    BadInterval,
    BadParameter,
    BadProbability,
    DanglingEdge,
    DisconnectedGraph,
    EmptyInput,
    EmptyPointCloud,
    FiltrationViolation,
    MissingTopCellValue,
    MissingVertexValue,
    MixedEssential,
    NegativeEntry,
    NonBinaryValue,
    NonzeroDiagonal,
    ParseError,
    SizeMismatch,
    TdaError,
    UnequalSampleSizes,
    UnsortedComplex,
    WindowTooLarge,
)
from .metrics import (
    bottleneck_distance,
    distance_matrix,
    wasserstein_distance,
)
from .persistence import (
    BoundaryMatrix,
    DiagramPoint,
    PersistenceDiagram,
    ReducedMatrix,
    betti_numbers,
    build_boundary_matrix,
    diagram_at,
    extract_diagram,
    persistence_diagram,
    reduce,
)
from .pipelines import (
    cubical_diagram,
    rips_diagram,
    rips_diagram_from_matrix,
    sliding_window_diagram,
)
from .representations import (
    HEAT_MAP_MODES,
    HeatMap,
    Landscape,
    PermutationTestResult,
    average_landscapes,
    build_heat_map,
    build_landscape,
    evaluate_landscape,
    landscape_distance,
    permutation_test,
    triangle_function,
)

__version__ = "0.1.0"
