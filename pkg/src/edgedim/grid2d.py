"""Closed-form machinery for the 2-D grid with one extra edge.

Coordinates are 1-based (x = column in 1..n, y = row in 1..m); the corners
are P=(1,1), Q=(n,1), R=(n,m), S=(1,m).  The vertex id of (x, y) is
(y-1)*n + (x-1), matching the generators in `graphs`.

The canonical orientation (Assumption 1) is x_F <= x_E, y_E <= y_F and
x_E - x_F <= y_F - y_E: the edge tilts right, F below-left of E, at 45..90
degrees to the horizontal.  The edge-case assumptions (Assumption 2) are
x_E != x_F, Gain' >= 2, and both endpoints interior.

Alpha and beta are the half-integer row levels (1 + y_F + y_E -+ (x_E - x_F))/2
bounding the normal strip; all region formulas below compare doubled values so
the arithmetic stays in integers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .graphs import grid_apsp
from .perturb import REGION_E, REGION_F, REGION_N, ExtraEdge, region_partition, region_report
from . import solver

__all__ = [
    "GridEdgeConfig",
    "CanonicalTransform",
    "CannotCanonicalizeError",
    "AssumptionStatus",
    "ConjectureVerdict",
    "Mismatch",
    "VerifyReport",
    "canonicalize",
    "assumption_status",
    "gains",
    "alpha_beta",
    "normal_region_closed_form",
    "special_regions_flood",
    "boundary_special_region",
    "four_corner_set",
    "resolving_set_odd",
    "resolving_set_even",
    "conjecture_predict",
    "conjecture_verify",
    "exact_md",
    "region_map_ascii",
    "region_report_json",
]

Coord = tuple[int, int]


class CannotCanonicalizeError(ValueError):
    """A rectangular grid would need the diagonal transpose, which the
    reflection group of a non-square grid does not contain."""


@dataclass(frozen=True)
class GridEdgeConfig:
    """An n-column, m-row grid plus the endpoints of the extra edge."""

    n: int
    m: int
    e: Coord
    f: Coord

    def __post_init__(self):
        if self.n < 2 or self.m < 2:
            raise ValueError("grid needs at least 2 columns and 2 rows")
        for (x, y) in (self.e, self.f):
            if not (1 <= x <= self.n and 1 <= y <= self.m):
                raise ValueError(f"endpoint ({x},{y}) outside the {self.n}x{self.m} grid")
        if self.ef_distance < 2:
            raise ValueError("extra-edge endpoints must be non-adjacent (distance >= 2)")

    @property
    def ef_distance(self) -> int:
        return abs(self.e[0] - self.f[0]) + abs(self.e[1] - self.f[1])

    def vertex_count(self) -> int:
        return self.n * self.m

    def coord_id(self, c: Coord) -> int:
        return (c[1] - 1) * self.n + (c[0] - 1)

    def endpoint_ids(self) -> tuple[int, int]:
        return self.coord_id(self.e), self.coord_id(self.f)


@dataclass(frozen=True)
class CanonicalTransform:
    """Element of the grid symmetry group used by canonicalize.

    Application order: transpose (square grids only), then the horizontal
    reflection h1 (x -> n+1-x), the vertical reflection h2 (y -> m+1-y), and
    the endpoint swap h3.
    """

    h1: bool = False
    h2: bool = False
    h3: bool = False
    transpose: bool = False

    def apply(self, c: GridEdgeConfig) -> GridEdgeConfig:
        n, m, e, f = c.n, c.m, c.e, c.f
        if self.transpose:
            if n != m:
                raise CannotCanonicalizeError("transpose only exists on square grids")
            e, f = (e[1], e[0]), (f[1], f[0])
        if self.h1:
            e, f = (n + 1 - e[0], e[1]), (n + 1 - f[0], f[1])
        if self.h2:
            e, f = (e[0], m + 1 - e[1]), (f[0], m + 1 - f[1])
        if self.h3:
            e, f = f, e
        return GridEdgeConfig(n, m, e, f)

    @property
    def is_identity(self) -> bool:
        return not (self.h1 or self.h2 or self.h3 or self.transpose)


@dataclass(frozen=True)
class AssumptionStatus:
    """Per-clause record of Assumptions 1 and 2."""

    satisfies_a1: bool
    x_differs: bool
    gain_prime_ge_2: bool
    interior: bool

    @property
    def satisfies_a2(self) -> bool:
        return self.x_differs and self.gain_prime_ge_2 and self.interior

    @property
    def all_satisfied(self) -> bool:
        return self.satisfies_a1 and self.satisfies_a2


def _satisfies_a1(c: GridEdgeConfig) -> bool:
    (xe, ye), (xf, yf) = c.e, c.f
    return xf <= xe and ye <= yf and (xe - xf) <= (yf - ye)


def _is_interior(c: GridEdgeConfig, p: Coord) -> bool:
    return 2 <= p[0] <= c.n - 1 and 2 <= p[1] <= c.m - 1


def assumption_status(c: GridEdgeConfig) -> AssumptionStatus:
    a = abs(c.e[0] - c.f[0])
    b = abs(c.e[1] - c.f[1])
    return AssumptionStatus(
        satisfies_a1=_satisfies_a1(c),
        x_differs=a != 0,
        gain_prime_ge_2=max(0, abs(b - a) - 1) >= 2,
        interior=_is_interior(c, c.e) and _is_interior(c, c.f),
    )


def canonicalize(c: GridEdgeConfig) -> tuple[GridEdgeConfig, CanonicalTransform]:
    """Reorient the edge to satisfy Assumption 1, recording the transform.

    A transpose is used only when |x-gap| > |y-gap|, which is impossible to
    repair with axis reflections alone; on rectangular grids that case raises
    CannotCanonicalizeError.  Among the transforms that work, the first one in
    lexicographic (transpose, h1, h2, h3) order is returned, so an
    already-canonical config maps to the identity.
    """
    need_transpose = abs(c.e[0] - c.f[0]) > abs(c.e[1] - c.f[1])
    if need_transpose and c.n != c.m:
        raise CannotCanonicalizeError(
            "edge is wider than tall; a rectangular grid admits no transpose"
        )
    for transpose in ((False, True) if not need_transpose else (True,)):
        for h1 in (False, True):
            for h2 in (False, True):
                for h3 in (False, True):
                    t = CanonicalTransform(h1=h1, h2=h2, h3=h3, transpose=transpose)
                    try:
                        out = t.apply(c)
                    except CannotCanonicalizeError:
                        continue
                    if _satisfies_a1(out):
                        return out, t
    raise CannotCanonicalizeError("no element of the reflection group canonicalizes this edge")


def _require_canonical(c: GridEdgeConfig) -> None:
    if not _satisfies_a1(c):
        raise ValueError("config must satisfy Assumption 1 (canonical orientation)")


def _require_assumptions(c: GridEdgeConfig) -> None:
    st = assumption_status(c)
    if not st.all_satisfied:
        raise ValueError(
            "config must satisfy Assumptions 1 and 2 "
            f"(a1={st.satisfies_a1}, x_differs={st.x_differs}, "
            f"gain_prime_ge_2={st.gain_prime_ge_2}, interior={st.interior})"
        )


def gains(c: GridEdgeConfig) -> tuple[int, int]:
    """(Gain, Gain') of a canonical config: the opposite- and adjacent-corner
    gains of the bounding rectangle of the edge."""
    _require_canonical(c)
    dx = c.e[0] - c.f[0]
    dy = c.f[1] - c.e[1]
    return dy + dx - 1, max(0, dy - dx - 1)


def alpha_beta(c: GridEdgeConfig) -> tuple[Fraction, Fraction]:
    """Exact half-integer strip levels; beta - alpha = x_E - x_F."""
    _require_canonical(c)
    (xe, ye), (xf, yf) = c.e, c.f
    return (
        Fraction(1 + yf + ye + xf - xe, 2),
        Fraction(1 + yf + ye + xe - xf, 2),
    )


def _strip_bounds_doubled(c: GridEdgeConfig, x: int) -> tuple[int, int]:
    """Doubled y-bounds [2*(low), 2*(high)] of the normal strip in column x."""
    (xe, ye), (xf, yf) = c.e, c.f
    two_alpha = 1 + yf + ye + xf - xe
    two_beta = 1 + yf + ye + xe - xf
    if x < xf:
        return two_alpha - 2, two_alpha
    if x > xe:
        return two_beta - 2, two_beta
    return two_alpha - 2 + 2 * (x - xf), two_alpha + 2 * (x - xf)


def normal_region_closed_form(c: GridEdgeConfig) -> frozenset[Coord]:
    """The three-strip normal region: horizontal bands around alpha and beta
    joined by a 45-degree band between the endpoint columns.  Requires
    Assumptions 1 and 2; equals the brute-force partition exactly."""
    _require_assumptions(c)
    out = []
    for x in range(1, c.n + 1):
        lo2, hi2 = _strip_bounds_doubled(c, x)
        y_lo = max(1, -(-lo2 // 2))  # ceil(lo2 / 2)
        y_hi = min(c.m, hi2 // 2)
        out.extend((x, y) for y in range(y_lo, y_hi + 1))
    return frozenset(out)


def special_regions_flood(c: GridEdgeConfig) -> tuple[frozenset[Coord], frozenset[Coord]]:
    """(R_E, R_F) from the strip: a non-normal vertex is in R_F when some
    vertex below it in the same column is normal, in R_E when some vertex
    above it is.  Equals the brute-force partition."""
    _require_assumptions(c)
    r_e, r_f = [], []
    for x in range(1, c.n + 1):
        lo2, hi2 = _strip_bounds_doubled(c, x)
        y_lo = -(-lo2 // 2)
        y_hi = hi2 // 2
        r_f.extend((x, y) for y in range(1, min(y_lo, c.m + 1)))
        r_e.extend((x, y) for y in range(max(y_hi + 1, 1), c.m + 1))
    return frozenset(r_e), frozenset(r_f)


def boundary_special_region(c: GridEdgeConfig, k: int) -> tuple[frozenset[Coord], int]:
    """Special region and Gain_max of the boundary vertex A = (1, k).

    For k inside the normal band the region is empty with Gain_max 0.  The
    four-set unions below use doubled comparisons so half-integer thresholds
    never leave integer arithmetic.
    """
    _require_assumptions(c)
    if not 1 <= k <= c.m:
        raise ValueError(f"row {k} outside 1..{c.m}")
    (xe, ye), (xf, yf) = c.e, c.f
    g, gp = gains(c)
    two_alpha = 1 + yf + ye + xf - xe
    two_k = 2 * k

    if two_alpha - 2 <= two_k <= two_alpha:
        return frozenset(), 0

    cells: set[Coord] = set()
    if two_k > two_alpha:  # A in R_E
        gm = g if k >= yf else g - 2 * (yf - k)
        for x in range(1, c.n + 1):
            for y in range(1, c.m + 1):
                if x >= xe and y <= ye:
                    cells.add((x, y))
                elif x >= xe and 0 <= y - ye and 2 * (y - ye) < gm:
                    cells.add((x, y))
                elif y <= ye and 0 <= xe - x and 2 * (xe - x) < gm:
                    cells.add((x, y))
                elif x <= xe and ye <= y and 2 * ((xe - x) + (y - ye)) < gm:
                    cells.add((x, y))
    else:  # A in R_F
        gm = gp if k <= ye else gp - 2 * (k - ye)
        for x in range(1, c.n + 1):
            for y in range(1, c.m + 1):
                if x >= xf and y >= yf:
                    cells.add((x, y))
                elif x >= xf and 0 <= yf - y and 2 * (yf - y) < gm:
                    cells.add((x, y))
                elif y >= yf and 0 <= xf - x and 2 * (xf - x) < gm:
                    cells.add((x, y))
                elif x <= xf and y <= yf and 2 * ((xf - x) + (yf - y)) < gm:
                    cells.add((x, y))
    return frozenset(cells), gm


def four_corner_set(c: GridEdgeConfig) -> tuple[Coord, Coord, Coord, Coord]:
    """P, Q, R, S; a resolving set of the augmented grid for any extra edge."""
    return (1, 1), (c.n, 1), (c.n, c.m), (1, c.m)


def resolving_set_odd(c: GridEdgeConfig) -> tuple[Coord, Coord, Coord]:
    """{(1, floor(beta)), (n, floor(beta)), (n, 1)} for odd Gain'."""
    _require_assumptions(c)
    g, gp = gains(c)
    if gp % 2 == 0:
        raise ValueError("odd-case constructor requires Gain' odd")
    _, beta = alpha_beta(c)
    fb = int(beta)  # floor: beta = odd/2 here
    return (1, fb), (c.n, fb), (c.n, 1)


def resolving_set_even(c: GridEdgeConfig) -> tuple[Coord, Coord, Coord]:
    """{(1, beta-1), (n, beta-1), (1, alpha-1)} for even Gain' with
    x_E - x_F < Gain'/2 + 2."""
    _require_assumptions(c)
    g, gp = gains(c)
    if gp % 2 == 1:
        raise ValueError("even-case constructor requires Gain' even")
    dx = c.e[0] - c.f[0]
    if not 2 * dx < gp + 4:
        raise ValueError("even-case constructor requires x_E - x_F < Gain'/2 + 2")
    alpha, beta = alpha_beta(c)
    a_i, b_i = int(alpha), int(beta)  # integers when Gain' is even
    return (1, b_i - 1), (c.n, b_i - 1), (1, a_i - 1)


# ---------------------------------------------------------------------------
# Conjecture
# ---------------------------------------------------------------------------

_CORNER_CLAUSES = ("corner_low_gain_prime", "corner_close_gains")


@dataclass(frozen=True)
class ConjectureVerdict:
    """Predicted dimension plus the clause that fired (first in the stated
    precedence); `matched` keeps every clause that applied."""

    predicted: int
    clause: str
    matched: tuple[str, ...]


def _matched_clauses(a: int, b: int, e_corner: bool, f_corner: bool) -> list[str]:
    """Conjecture clauses matching the gap pair (a, b) = (|dx|, |dy|) and the
    endpoints' corner membership, in the conjecture's stated order."""
    gain = a + b - 1
    gp = abs(b - a) - 1  # the conjecture's Gain', no clamping
    matched = []
    if (not e_corner) and (not f_corner) and gp > 0 and gp % 2 == 0 and 2 * min(a, b) >= gp + 4:
        matched.append("beta4")
    if gain == 1:
        matched.append("gain_eq_1")
    if gp <= 1 and gain % 2 == 1 and (e_corner or f_corner):
        matched.append("corner_low_gain_prime")
    if gp >= 3 and gain % 2 == 1 and gain - gp <= 2 and (e_corner or f_corner):
        matched.append("corner_close_gains")
    if gain % 2 == 1 and e_corner and f_corner:
        matched.append("both_corners")
    return matched


def conjecture_predict(c: GridEdgeConfig) -> ConjectureVerdict:
    """Evaluate the conjecture's clauses on any (uncanonicalized) config.

    The conjecture is stated with absolute coordinate gaps and plain corner
    membership, so no canonicalization is needed.  Precedence: the beta=4
    clause, then the beta=2 clauses in their listed order, else beta=3.
    """
    a = abs(c.e[0] - c.f[0])
    b = abs(c.e[1] - c.f[1])
    corners = {(1, 1), (c.n, 1), (1, c.m), (c.n, c.m)}
    matched = _matched_clauses(a, b, c.e in corners, c.f in corners)
    if not matched:
        return ConjectureVerdict(3, "otherwise", ())
    first = matched[0]
    return ConjectureVerdict(4 if first == "beta4" else 2, first, tuple(matched))


# ---------------------------------------------------------------------------
# Exact dimension of the augmented grid and the verification harness
# ---------------------------------------------------------------------------


def _augment_ids(dist: np.ndarray, ei: int, fi: int) -> np.ndarray:
    via_ef = dist[:, ei, None] + 1 + dist[None, fi, :]
    via_fe = dist[:, fi, None] + 1 + dist[None, ei, :]
    return np.minimum(dist, np.minimum(via_ef, via_fe))


def _boundary_mask(n: int, m: int) -> np.ndarray:
    mask = np.zeros(n * m, dtype=bool)
    ids = np.arange(n * m)
    x = ids % n + 1
    y = ids // n + 1
    mask[(x == 1) | (x == n) | (y == 1) | (y == m)] = True
    return mask


def _exact_md_ids(base: np.ndarray, n: int, m: int, ei: int, fi: int) -> int:
    """Exact beta of the grid plus (ei, fi), in {2, 3, 4}.

    k = 2 is searched over all vertices (exact refutation).  The k = 3 search
    first restricts candidates to the boundary, the endpoints and the normal
    band (where every known witness lives); a failed restricted search falls
    back to the unrestricted one, so the restriction never affects the answer.
    """
    aug = _augment_ids(base, ei, fi)
    search = solver._Search(aug)
    full = np.ones(n * m, dtype=bool)
    if search.search_fast(2, full) is not None:
        return 2
    cand = _boundary_mask(n, m)
    cand |= np.abs(base[:, ei] - base[:, fi]) <= 1
    cand[ei] = cand[fi] = True
    if search.search_fast(3, cand) is not None:
        return 3
    if search.search_fast(3, full) is not None:
        return 3
    corners = [0, n - 1, n * m - n, n * m - 1]
    sig = aug[corners]
    if np.unique(sig, axis=1).shape[1] != n * m:  # would falsify the 4-corner theorem
        raise AssertionError("four corners fail to resolve an augmented grid")
    return 4


def exact_md(c: GridEdgeConfig) -> int:
    """Exact metric dimension of the grid augmented with the config's edge."""
    base = grid_apsp((c.n, c.m)).dist
    ei, fi = c.endpoint_ids()
    return _exact_md_ids(base, c.n, c.m, ei, fi)


@dataclass(frozen=True)
class Mismatch:
    n: int
    m: int
    e: Coord
    f: Coord
    predicted: int
    actual: int
    clause: str


@dataclass
class VerifyReport:
    n: int
    m: int
    checked: int
    mismatches: list[Mismatch]
    runtime_seconds: float
    complete: bool
    overlaps: list[tuple[Coord, Coord]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.complete and not self.mismatches

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "checked": self.checked,
            "mismatches": [
                {
                    "e": list(x.e),
                    "f": list(x.f),
                    "predicted": x.predicted,
                    "actual": x.actual,
                    "clause": x.clause,
                }
                for x in self.mismatches
            ],
            "runtime_seconds": round(self.runtime_seconds, 3),
            "complete": self.complete,
            "overlaps": [[list(e), list(f)] for e, f in self.overlaps],
        }


def _enumerate_pairs(n: int, m: int) -> Iterator[tuple[Coord, Coord]]:
    """All unordered non-adjacent coordinate pairs, in id order."""
    coords = [(x, y) for y in range(1, m + 1) for x in range(1, n + 1)]
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            a, b = coords[i], coords[j]
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) >= 2:
                yield a, b


def _verify_one(base: np.ndarray, n: int, m: int, e: Coord, f: Coord) -> tuple[tuple | None, bool]:
    cfg = GridEdgeConfig(n, m, e, f)
    verdict = conjecture_predict(cfg)
    overlap = "beta4" in verdict.matched and len(verdict.matched) > 1
    ei, fi = cfg.endpoint_ids()
    actual = _exact_md_ids(base, n, m, ei, fi)
    if actual != verdict.predicted:
        return (n, m, e, f, verdict.predicted, actual, verdict.clause), overlap
    return None, overlap


def _verify_chunk(args) -> tuple[int, list, list]:
    n, m, pairs = args
    base = grid_apsp((n, m)).dist
    checked = 0
    mismatches = []
    overlaps = []
    for e, f in pairs:
        bad, overlap = _verify_one(base, n, m, e, f)
        if bad is not None:
            mismatches.append(bad)
        if overlap:
            overlaps.append((e, f))
        checked += 1
    return checked, mismatches, overlaps


def conjecture_verify(
    n: int,
    m: int | None = None,
    *,
    edge_filter: Callable[[Coord, Coord], bool] | None = None,
    budget: float | None = None,
    workers: int = 1,
    max_cells: int = 640,
) -> VerifyReport:
    """Compare conjecture_predict with the exact solver over every
    non-adjacent edge placement on the n x m grid.

    `budget` is wall-clock seconds; exceeding it yields a partial report with
    complete=False.  `workers` > 1 partitions the edge enumeration across
    processes; results are merged order-insensitively.
    """
    m = n if m is None else m
    if n * m > max_cells:
        raise ValueError(f"{n}x{m} grid exceeds the configured cap of {max_cells} cells")
    pairs = [(e, f) for e, f in _enumerate_pairs(n, m) if edge_filter is None or edge_filter(e, f)]
    start = time.perf_counter()
    checked = 0
    raw_mismatches: list[tuple] = []
    raw_overlaps: list[tuple] = []
    complete = True

    if workers <= 1:
        base = grid_apsp((n, m)).dist
        for e, f in pairs:
            if budget is not None and time.perf_counter() - start > budget:
                complete = False
                break
            bad, overlap = _verify_one(base, n, m, e, f)
            if bad is not None:
                raw_mismatches.append(bad)
            if overlap:
                raw_overlaps.append((e, f))
            checked += 1
    else:
        chunk = max(16, len(pairs) // (workers * 8) or 1)
        batches = [pairs[i : i + chunk] for i in range(0, len(pairs), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_verify_chunk, (n, m, b)) for b in batches]
            for fut in futures:
                if budget is not None and time.perf_counter() - start > budget:
                    complete = False
                    for other in futures:
                        other.cancel()
                    break
                got = fut.result()
                checked += got[0]
                raw_mismatches.extend(got[1])
                raw_overlaps.extend(got[2])

    mismatches = sorted(
        (Mismatch(*t) for t in raw_mismatches),
        key=lambda x: (x.e[1], x.e[0], x.f[1], x.f[0]),
    )
    overlaps = sorted(raw_overlaps)
    return VerifyReport(n, m, checked, mismatches, time.perf_counter() - start, complete, overlaps)


# ---------------------------------------------------------------------------
# Region rendering
# ---------------------------------------------------------------------------


def region_map_ascii(c: GridEdgeConfig) -> str:
    """One text row per grid row (y = 1 first): 'E' for R_E, 'F' for R_F,
    '.' for N, with 'e'/'f' overlaid at the endpoints.  Works for any extra
    edge; the partition comes from the brute-force rule, not the closed form.
    """
    d = grid_apsp((c.n, c.m))
    ei, fi = c.endpoint_ids()
    part = region_partition(d, ExtraEdge(ei, fi))
    char = {REGION_E: "E", REGION_F: "F", REGION_N: "."}
    rows = []
    for y in range(1, c.m + 1):
        row = [char[part.region_of[(y - 1) * c.n + (x - 1)]] for x in range(1, c.n + 1)]
        rows.append("".join(row))
    ex, ey = c.e
    fx, fy = c.f
    rows[ey - 1] = rows[ey - 1][: ex - 1] + "e" + rows[ey - 1][ex:]
    rows[fy - 1] = rows[fy - 1][: fx - 1] + "f" + rows[fy - 1][fx:]
    return "\n".join(rows) + "\n"


def region_report_json(c: GridEdgeConfig) -> dict:
    """Perturb's region schema plus alpha, beta, Gain and Gain'.

    Alpha/beta come from the definition formulas evaluated on the given
    coordinates; they bound the normal strip only for canonical configs.
    """
    d = grid_apsp((c.n, c.m))
    ei, fi = c.endpoint_ids()
    rep = region_report(d, ExtraEdge(ei, fi))
    a = abs(c.e[0] - c.f[0])
    b = abs(c.e[1] - c.f[1])
    (xe, ye), (xf, yf) = c.e, c.f
    rep["alpha"] = (1 + yf + ye + xf - xe) / 2
    rep["beta"] = (1 + yf + ye + xe - xf) / 2
    rep["gain"] = a + b - 1
    rep["gain_prime"] = max(0, abs(b - a) - 1)
    return rep
