"""d-dimensional grid results: the distance-vector lower bound, the corner
set inside V1, and the 2d+2 resolving set for the grid plus one edge.

Canonical orientation here (the d-dimensional symmetry breaking): E is
componentwise <= F and dimension 1 realizes the largest coordinate gap.
Note this differs from the 2-D convention in `grid2d`, which follows the
planar statement of the same idea.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import DistanceMatrix, grid_apsp, grid_coord_to_id
from . import solver

__all__ = [
    "DimGridConfig",
    "DimTransform",
    "TwoDPlusTwoReport",
    "md_lower_bound",
    "is_canonical",
    "canonicalize_ddim",
    "corner_set_O",
    "resolving_set_2d_plus_2",
    "two_d_plus_two_report",
]

Point = tuple[int, ...]


@dataclass(frozen=True)
class DimGridConfig:
    """Side lengths plus the 1-based endpoint coordinates of the extra edge."""

    dims: tuple[int, ...]
    e: Point
    f: Point

    def __post_init__(self):
        if not self.dims:
            raise ValueError("at least one dimension required")
        if any(d < 1 for d in self.dims):
            raise ValueError("side lengths must be >= 1")
        for p in (self.e, self.f):
            if len(p) != len(self.dims):
                raise ValueError("endpoint arity does not match the dimension count")
            if any(not 1 <= x <= s for x, s in zip(p, self.dims)):
                raise ValueError(f"endpoint {p} outside the grid")
        if self.ef_distance < 2:
            raise ValueError("extra-edge endpoints must be non-adjacent (distance >= 2)")

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def ef_distance(self) -> int:
        return sum(abs(a - b) for a, b in zip(self.e, self.f))

    def swapped(self) -> "DimGridConfig":
        return DimGridConfig(self.dims, self.f, self.e)


@dataclass(frozen=True)
class DimTransform:
    """Dimension relabeling plus per-dimension reflections.

    New coordinate j reads the old dimension perm[j], reflected when flips[j]
    is set.  `dims` records the source side lengths so points map both ways.
    """

    dims: tuple[int, ...]
    perm: tuple[int, ...]
    flips: tuple[bool, ...]

    def new_dims(self) -> tuple[int, ...]:
        return tuple(self.dims[p] for p in self.perm)

    def apply_point(self, p: Point) -> Point:
        out = []
        for j, src in enumerate(self.perm):
            x = p[src]
            out.append(self.dims[src] + 1 - x if self.flips[j] else x)
        return tuple(out)

    def invert_point(self, p: Point) -> Point:
        out = [0] * len(p)
        for j, src in enumerate(self.perm):
            x = p[j]
            out[src] = self.dims[src] + 1 - x if self.flips[j] else x
        return tuple(out)

    def apply(self, c: DimGridConfig) -> DimGridConfig:
        return DimGridConfig(self.new_dims(), self.apply_point(c.e), self.apply_point(c.f))


def md_lower_bound(dims: Sequence[int]) -> int:
    """Smallest beta admitted by counting distance vectors: the least k with
    (sum n_i - d + 1)^k >= prod n_i, i.e. ceil(log NPi / log(NSigma - d + 1)).

    Computed by exact integer comparison, no floating point.  Valid for the
    grid with one extra edge as well, since distances only shrink.
    """
    dims = tuple(int(x) for x in dims)
    if not dims or any(x < 1 for x in dims):
        raise ValueError("side lengths must be >= 1")
    n_sigma = sum(dims)
    n_pi = math.prod(dims)
    base = n_sigma - len(dims) + 1
    if base <= 1:
        raise ValueError("degenerate grid: every side length is 1")
    k = 0
    power = 1
    while power < n_pi:
        power *= base
        k += 1
    return k


def is_canonical(c: DimGridConfig) -> bool:
    gaps = [f - e for e, f in zip(c.e, c.f)]
    return all(g >= 0 for g in gaps) and all(gaps[0] >= g for g in gaps[1:])


def canonicalize_ddim(c: DimGridConfig) -> tuple[DimGridConfig, DimTransform]:
    """Relabel dimensions so dimension 1 carries the largest |gap| (lowest
    index promoted on ties) and reflect so E <= F componentwise."""
    gaps = [abs(e - f) for e, f in zip(c.e, c.f)]
    lead = max(range(c.d), key=lambda i: (gaps[i], -i))
    perm = (lead,) + tuple(i for i in range(c.d) if i != lead)
    flips = tuple(c.e[src] > c.f[src] for src in perm)
    t = DimTransform(c.dims, perm, flips)
    out = t.apply(c)
    return out, t


def corner_set_O(c: DimGridConfig) -> tuple[Point, ...]:
    """O_1 = (1,...,1) and O_j = O_1 with coordinate j raised to n_j; every
    O_j lies in V1 = {U : UE <= UF} for a canonical config."""
    if not is_canonical(c):
        raise ValueError("corner set needs the canonical (d-dim) orientation")
    base = [1] * c.d
    corners = [tuple(base)]
    for j in range(1, c.d):
        p = base.copy()
        p[j] = c.dims[j]
        corners.append(tuple(p))
    return tuple(corners)


def _resolving_points(c: DimGridConfig) -> tuple[Point, ...]:
    points: list[Point] = []
    for half in (c, c.swapped()):
        canon, t = canonicalize_ddim(half)
        for corner in corner_set_O(canon):
            points.append(t.invert_point(corner))
    points.extend([c.e, c.f])
    seen: dict[Point, None] = {}
    for p in points:
        seen.setdefault(p)
    return tuple(seen)


@dataclass(frozen=True)
class TwoDPlusTwoReport:
    """The <= 2d+2 landmark set, with the open-question datum of whether it
    still resolves once the edge endpoints are dropped."""

    points: tuple[Point, ...]
    resolves: bool
    resolves_without_endpoints: bool


def resolving_set_2d_plus_2(c: DimGridConfig) -> tuple[Point, ...]:
    """Corner sets of both canonicalized halves plus the edge endpoints,
    mapped back to the original coordinates; at most 2d+2 points.

    Verified against the augmented distances before returning; a failure
    would falsify the 2d+2 theorem and raises AssertionError.
    """
    report = two_d_plus_two_report(c)
    if not report.resolves:
        raise AssertionError("2d+2 construction failed to resolve; this should be impossible")
    return report.points


def two_d_plus_two_report(c: DimGridConfig) -> TwoDPlusTwoReport:
    points = _resolving_points(c)
    d = grid_apsp(c.dims)
    ei = grid_coord_to_id(c.dims, c.e)
    fi = grid_coord_to_id(c.dims, c.f)
    via_ef = d.dist[:, ei, None] + 1 + d.dist[None, fi, :]
    via_fe = d.dist[:, fi, None] + 1 + d.dist[None, ei, :]
    aug = np.minimum(d.dist, np.minimum(via_ef, via_fe))
    aug_d = DistanceMatrix(d.n, aug.astype(np.int32))
    ids = [grid_coord_to_id(c.dims, p) for p in points]
    ok, _ = solver.is_resolving(aug_d, ids)
    bare = [i for i, p in zip(ids, points) if p not in (c.e, c.f)]
    ok_bare = bool(bare) and solver.is_resolving(aug_d, bare)[0]
    return TwoDPlusTwoReport(points, ok, ok_bare)
