"""Grid-world model: occupancy grids, MovingAI map I/O, downsampling, random
maps, and rectangular map partitioning with O(1) point-to-partition lookup.

Coordinates are ``(x, y)`` pairs with ``x`` the column and ``y`` the row; the
origin is the top-left corner. Agents move on the 4-connected grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

Coord = tuple[int, int]

FREE_CHARS = frozenset(".G")
OBSTACLE_CHARS = frozenset("@OT")


class MapFormatError(ValueError):
    """A map text does not follow the expected MovingAI format."""


@dataclass(frozen=True)
class GridMap:
    """Rectangular occupancy grid with a static obstacle set."""

    width: int
    height: int
    obstacles: frozenset[Coord] = frozenset()

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("map dimensions must be positive")
        object.__setattr__(self, "obstacles", frozenset(self.obstacles))
        for x, y in self.obstacles:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"obstacle {(x, y)} out of bounds")

    @property
    def n_free(self) -> int:
        return self.width * self.height - len(self.obstacles)

    def in_bounds(self, cell: Coord) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def is_free(self, cell: Coord) -> bool:
        return self.in_bounds(cell) and cell not in self.obstacles

    def free_cells(self) -> list[Coord]:
        """All free cells in row-major order."""
        return [
            (x, y)
            for y in range(self.height)
            for x in range(self.width)
            if (x, y) not in self.obstacles
        ]

    @cached_property
    def _neighbor_table(self) -> dict[Coord, tuple[Coord, ...]]:
        table: dict[Coord, tuple[Coord, ...]] = {}
        for y in range(self.height):
            for x in range(self.width):
                if (x, y) in self.obstacles:
                    continue
                table[(x, y)] = tuple(
                    c
                    for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))
                    if self.is_free(c)
                )
        return table

    def neighbors4(self, cell: Coord) -> tuple[Coord, ...]:
        """Free 4-neighbors of a free in-bounds cell (waits are the searcher's
        business, not the map's)."""
        return self._neighbor_table[cell]


def parse_movingai_map(text: str) -> GridMap:
    """Parse MovingAI ``.map`` text.

    Expected layout: a ``type`` line, ``height H`` and ``width W`` lines (in
    either order), a ``map`` line, then H rows of W characters. ``.`` and
    ``G`` are passable; ``@``, ``O`` and ``T`` are obstacles.
    """
    lines = text.splitlines()
    idx = 0

    def next_line() -> str:
        nonlocal idx
        if idx >= len(lines):
            raise MapFormatError("unexpected end of map header")
        line = lines[idx]
        idx += 1
        return line

    first = next_line().split()
    if not first or first[0] != "type":
        raise MapFormatError("missing `type` header line")
    height = width = None
    for _ in range(2):
        parts = next_line().split()
        if len(parts) != 2 or parts[0] not in ("height", "width"):
            raise MapFormatError("expected `height H` and `width W` header lines")
        try:
            value = int(parts[1])
        except ValueError as exc:
            raise MapFormatError(f"non-integer map dimension: {parts[1]!r}") from exc
        if parts[0] == "height":
            height = value
        else:
            width = value
    if height is None or width is None:
        raise MapFormatError("header must declare both height and width")
    if height < 1 or width < 1:
        raise MapFormatError("map dimensions must be positive")
    if next_line().strip() != "map":
        raise MapFormatError("missing `map` header line")

    rows = lines[idx : idx + height]
    if len(rows) < height:
        raise MapFormatError(f"expected {height} map rows, found {len(rows)}")
    obstacles = set()
    for y, row in enumerate(rows):
        if len(row) != width:
            raise MapFormatError(f"row {y} has {len(row)} cells, expected {width}")
        for x, ch in enumerate(row):
            if ch in OBSTACLE_CHARS:
                obstacles.add((x, y))
            elif ch not in FREE_CHARS:
                raise MapFormatError(f"unknown cell character {ch!r} at {(x, y)}")
    return GridMap(width, height, frozenset(obstacles))


def serialize_movingai_map(grid: GridMap) -> str:
    """Render a grid back to MovingAI ``.map`` text (``.`` free, ``@`` blocked)."""
    rows = [
        "".join("@" if (x, y) in grid.obstacles else "." for x in range(grid.width))
        for y in range(grid.height)
    ]
    header = ["type octile", f"height {grid.height}", f"width {grid.width}", "map"]
    return "\n".join(header + rows) + "\n"


def generate_random_map(width: int, height: int, p_obstacle: float, seed=None) -> GridMap:
    """Map whose cells are independently obstacles with probability
    ``p_obstacle``; deterministic for a fixed seed."""
    if not 0.0 <= p_obstacle < 1.0:
        raise ValueError("p_obstacle must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    mask = rng.random((height, width)) < p_obstacle
    ys, xs = np.nonzero(mask)
    return GridMap(width, height, frozenset((int(x), int(y)) for x, y in zip(xs, ys)))


def _block_starts(size: int, n_blocks: int) -> list[int]:
    # first source index mapped to each block under x -> x * n_blocks // size
    return [(k * size + n_blocks - 1) // n_blocks for k in range(n_blocks)]


def downsample_map(
    grid: GridMap, target_w: int, target_h: int, rule: str = "majority"
) -> GridMap:
    """Shrink a map by aggregating preimage blocks of the integer-cut scheme.

    ``majority`` marks a target cell blocked when at least half of its
    preimage cells are obstacles; ``any-obstacle`` when at least one is.
    """
    if target_w < 1 or target_h < 1:
        raise ValueError("target dimensions must be positive")
    if target_w > grid.width or target_h > grid.height:
        raise ValueError("target dimensions must not exceed the source map")
    if rule not in ("majority", "any-obstacle"):
        raise ValueError(f"unknown downsampling rule {rule!r}")

    occ = np.zeros((grid.height, grid.width), dtype=np.int64)
    for x, y in grid.obstacles:
        occ[y, x] = 1
    xs = _block_starts(grid.width, target_w)
    ys = _block_starts(grid.height, target_h)
    sums = np.add.reduceat(np.add.reduceat(occ, ys, axis=0), xs, axis=1)
    x_sizes = np.diff(xs + [grid.width])
    y_sizes = np.diff(ys + [grid.height])
    sizes = np.outer(y_sizes, x_sizes)
    if rule == "majority":
        mask = 2 * sums >= sizes
    else:
        mask = sums > 0
    yy, xx = np.nonzero(mask)
    return GridMap(target_w, target_h, frozenset((int(x), int(y)) for x, y in zip(xx, yy)))


def balanced_factorization(n: int) -> tuple[int, int]:
    """Split ``n`` into ``p * q`` with ``p <= q`` minimizing
    ``(p - sqrt(n))**2 + (q - sqrt(n))**2`` by brute force over divisors.

    Primes (and 1) come out as ``(1, n)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    root = math.sqrt(n)
    best = (1, n)
    best_obj = (1 - root) ** 2 + (n - root) ** 2
    for d in range(2, math.isqrt(n) + 1):
        if n % d:
            continue
        obj = (d - root) ** 2 + (n // d - root) ** 2
        if obj <= best_obj:
            best_obj, best = obj, (d, n // d)
    return best


@dataclass(frozen=True)
class Partitioning:
    """Decomposition of a map into ``n_parts`` axis-aligned rectangles, one
    per agent, with a constant-time point-to-partition lookup.

    Composite counts use the balanced ``p x q`` block grid (``q`` columns of
    blocks along x, ``p`` rows along y). A prime count degenerates to strips,
    cut along the taller axis when the map is taller than wide. ``x_cuts``
    and ``y_cuts`` give the integer cut positions; printed as closed
    intervals they overlap at block boundaries, so the floor-based ``locate``
    is the operative assignment and the rectangles are descriptive.
    """

    n_parts: int
    p: int
    q: int
    rows: int
    cols: int
    width: int
    height: int
    x_cuts: tuple[int, ...]
    y_cuts: tuple[int, ...]

    @classmethod
    def for_map(cls, grid: GridMap, n_parts: int) -> "Partitioning":
        if n_parts < 1:
            raise ValueError("n_parts must be positive")
        p, q = balanced_factorization(n_parts)
        if p == 1 and grid.height > grid.width:
            rows, cols = n_parts, 1  # strips along the taller side
        else:
            rows, cols = p, q
        x_cuts = tuple(k * grid.width // cols for k in range(cols + 1))
        y_cuts = tuple(m * grid.height // rows for m in range(rows + 1))
        return cls(n_parts, p, q, rows, cols, grid.width, grid.height, x_cuts, y_cuts)

    def locate(self, cell: Coord) -> int:
        """Partition id of an in-bounds cell, row-major over blocks; O(1)."""
        x, y = cell
        return (y * self.rows // self.height) * self.cols + (x * self.cols // self.width)

    def block_rect(self, part_id: int) -> tuple[int, int, int, int]:
        """Descriptive closed bounds ``(x_lo, x_hi, y_lo, y_hi)`` of a block;
        adjacent blocks share their printed boundary."""
        if not 0 <= part_id < self.n_parts:
            raise ValueError(f"partition id {part_id} out of range")
        row, col = divmod(part_id, self.cols)
        return (self.x_cuts[col], self.x_cuts[col + 1], self.y_cuts[row], self.y_cuts[row + 1])


def partition_of(coord: Coord, grid: GridMap, part: Partitioning) -> int:
    """Partition id of ``coord`` on ``grid``; raises for out-of-bounds points."""
    if (part.width, part.height) != (grid.width, grid.height):
        raise ValueError("partitioning was built for a different map size")
    if not grid.in_bounds(coord):
        raise ValueError(f"coordinate {coord} out of bounds")
    return part.locate(coord)
