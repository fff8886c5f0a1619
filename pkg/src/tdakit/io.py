"""Plain-text readers and writers for the command line tools.

All formats share one lexical layer: lines are split on whitespace, a ``#``
starts a comment that runs to the end of the line, and blank lines are
skipped. Floats are written with 17 significant digits so values round-trip
exactly; infinite deaths appear as ``inf``.

Formats:

* points: one point per line, equal arity everywhere.
* matrix: a line holding the single integer n, then n lines of n entries.
* series: any number of values per line, read in order.
* grid: a line of k positive extents, then the product-many values with the
  first axis fastest (heat maps are written this way too, birth axis first).
* diagram: ``dim birth death`` per line, headed by ``# dim birth death``.
* landscape: ``level x value`` per line sorted by (level, x), headed by
  ``# level x value``.
"""

from __future__ import annotations

import os
import re
import tempfile

import numpy as np

from .builders import GridBitmap
from .errors import ParseError
from .persistence import DiagramPoint, PersistenceDiagram
from .representations import HeatMap, Landscape

_INTEGER = re.compile(r"[+-]?\d+$")


def _data_lines(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = handle.readlines()
    except OSError as exc:
        raise ParseError(str(exc), path=path) from None
    for lineno, line in enumerate(raw, start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _parse_float(token: str, path: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", path=path, line=lineno) from None


def _parse_int(token: str, path: str, lineno: int) -> int:
    if not _INTEGER.match(token):
        raise ParseError(f"not an integer: {token!r}", path=path, line=lineno)
    return int(token)


def sniff_points_or_matrix(path: str) -> str:
    """"matrix" when the first data line is one bare integer, else "points"."""
    for lineno, tokens in _data_lines(path):
        if len(tokens) == 1 and _INTEGER.match(tokens[0]):
            return "matrix"
        return "points"
    raise ParseError("file holds no data", path=path)


def read_points(path: str) -> np.ndarray:
    rows = []
    arity = None
    for lineno, tokens in _data_lines(path):
        if arity is None:
            arity = len(tokens)
        elif len(tokens) != arity:
            raise ParseError(
                f"expected {arity} coordinates, found {len(tokens)}", path=path, line=lineno
            )
        rows.append([_parse_float(t, path, lineno) for t in tokens])
    if not rows:
        raise ParseError("file holds no data", path=path)
    return np.asarray(rows, dtype=float)


def read_matrix(path: str) -> np.ndarray:
    lines = _data_lines(path)
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError("file holds no data", path=path) from None
    if len(tokens) != 1:
        raise ParseError("a matrix file starts with its size alone on a line", path=path, line=lineno)
    n = _parse_int(tokens[0], path, lineno)
    if n < 0:
        raise ParseError(f"matrix size must be non-negative, got {n}", path=path, line=lineno)
    rows = []
    for lineno, tokens in lines:
        if len(tokens) != n:
            raise ParseError(f"expected {n} entries, found {len(tokens)}", path=path, line=lineno)
        rows.append([_parse_float(t, path, lineno) for t in tokens])
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", path=path)
    return np.asarray(rows, dtype=float).reshape(n, n)


def read_series(path: str) -> np.ndarray:
    values = []
    for lineno, tokens in _data_lines(path):
        values.extend(_parse_float(t, path, lineno) for t in tokens)
    if not values:
        raise ParseError("file holds no data", path=path)
    return np.asarray(values, dtype=float)


def read_grid(path: str) -> GridBitmap:
    lines = _data_lines(path)
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError("file holds no data", path=path) from None
    dims = tuple(_parse_int(t, path, lineno) for t in tokens)
    if not dims or any(d < 1 for d in dims):
        raise ParseError(f"grid extents must be positive, got {dims}", path=path, line=lineno)
    expected = int(np.prod(dims))
    values = []
    for lineno, tokens in lines:
        values.extend(_parse_float(t, path, lineno) for t in tokens)
        if len(values) > expected:
            raise ParseError(f"more than {expected} grid values", path=path, line=lineno)
    if len(values) != expected:
        raise ParseError(f"expected {expected} grid values, found {len(values)}", path=path)
    return GridBitmap(dims, np.asarray(values, dtype=float))


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def format_grid(bitmap: GridBitmap) -> str:
    lines = [" ".join(str(d) for d in bitmap.dims)]
    lines.extend(_fmt(v) for v in bitmap.values)
    return "\n".join(lines) + "\n"


def format_heat_map(heat_map: HeatMap) -> str:
    b0, b1 = heat_map.birth_range
    d0, d1 = heat_map.death_range
    lines = [
        f"# heat map, mode {heat_map.mode}, bandwidth {_fmt(heat_map.bandwidth)}",
        f"# birth range [{_fmt(b0)}, {_fmt(b1)}], death range [{_fmt(d0)}, {_fmt(d1)}]",
        "# extents, then values with the birth axis fastest",
    ]
    grid = heat_map.grid
    lines.append(f"{grid.shape[0]} {grid.shape[1]}")
    lines.extend(_fmt(v) for v in grid.ravel(order="F"))
    return "\n".join(lines) + "\n"


def format_diagram(diagram: PersistenceDiagram) -> str:
    lines = ["# dim birth death"]
    for p in diagram.points:
        lines.append(f"{p.dimension} {_fmt(p.birth)} {_fmt(p.death)}")
    return "\n".join(lines) + "\n"


def read_diagram(path: str) -> PersistenceDiagram:
    points = []
    for lineno, tokens in _data_lines(path):
        if len(tokens) != 3:
            raise ParseError("diagram lines are 'dim birth death'", path=path, line=lineno)
        dim = _parse_int(tokens[0], path, lineno)
        if dim < 0:
            raise ParseError(f"dimension must be non-negative, got {dim}", path=path, line=lineno)
        birth = _parse_float(tokens[1], path, lineno)
        death = _parse_float(tokens[2], path, lineno)
        if not np.isfinite(birth) or np.isnan(death) or death < birth:
            raise ParseError(
                f"bad interval ({tokens[1]}, {tokens[2]})", path=path, line=lineno
            )
        points.append(DiagramPoint(dim, birth, death, None))
    points.sort(key=lambda p: (p.dimension, p.birth, p.death))
    return PersistenceDiagram(points)


def format_landscape(landscape: Landscape) -> str:
    lines = ["# level x value"]
    for k, level in enumerate(landscape.levels, start=1):
        for x, y in level:
            lines.append(f"{k} {_fmt(x)} {_fmt(y)}")
    return "\n".join(lines) + "\n"


def read_landscape(path: str) -> Landscape:
    per_level: dict[int, list[tuple[float, float]]] = {}
    for lineno, tokens in _data_lines(path):
        if len(tokens) != 3:
            raise ParseError("landscape lines are 'level x value'", path=path, line=lineno)
        level = _parse_int(tokens[0], path, lineno)
        if level < 1:
            raise ParseError(f"levels are 1-indexed, got {level}", path=path, line=lineno)
        x = _parse_float(tokens[1], path, lineno)
        y = _parse_float(tokens[2], path, lineno)
        if not (np.isfinite(x) and np.isfinite(y)):
            raise ParseError("landscape breakpoints must be finite", path=path, line=lineno)
        per_level.setdefault(level, []).append((x, y))
    if not per_level:
        return Landscape([])
    depth = max(per_level)
    levels = []
    for k in range(1, depth + 1):
        if k not in per_level:
            raise ParseError(f"level {k} is missing", path=path)
        pts = per_level[k]
        xs = [x for x, _ in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ParseError(f"level {k} is not sorted by x", path=path)
        levels.append(np.asarray(pts, dtype=float))
    return Landscape(levels)


def sniff_plot_input(path: str) -> str:
    """"landscape" or "diagram", by header comment, else by token shape."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line in handle:
                stripped = line.strip()
                if not stripped:
                    continue
                if stripped.startswith("#"):
                    if "level" in stripped:
                        return "landscape"
                    if "dim" in stripped:
                        return "diagram"
                    continue
                return "diagram"
    except OSError as exc:
        raise ParseError(str(exc), path=path) from None
    return "diagram"


def atomic_write_text(path: str, text: str):
    """Write via a temp file and rename, so readers never see a torn file."""
    directory = os.path.dirname(os.path.abspath(path))
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=directory, prefix=".tdakit-", delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        try:
            os.unlink(handle.name)
        except OSError:
            pass
        raise
