"""Distance calculus for a single added edge (E, F): augmented distances,
the R_E / N / R_F partition, special regions, gains, and the general-graph
bounds built on top of them.

Everything here consumes a DistanceMatrix of the *base* graph: the base
distances are the only input these facts need, and it keeps brute-force
cross-checks cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .graphs import DisconnectedGraphError, DistanceMatrix, Graph, apsp, induced_subgraph
from . import solver

__all__ = [
    "REGION_E",
    "REGION_N",
    "REGION_F",
    "VIA_EF",
    "VIA_FE",
    "UNCHANGED",
    "ExtraEdge",
    "RegionPartition",
    "GainProfile",
    "BoundInapplicableError",
    "CompositionBound",
    "DecreaseCheck",
    "augmented_distance",
    "augment_matrix",
    "augmented_apsp",
    "region_partition",
    "special_region",
    "gain",
    "gain_profile",
    "classify_distance",
    "split_v1_v2",
    "composition_upper_bound",
    "decrease_bound_check",
    "ring_chord_set",
    "region_report",
]

REGION_E = "R_E"
REGION_N = "N"
REGION_F = "R_F"

VIA_EF = "via_EF"
VIA_FE = "via_FE"
UNCHANGED = "unchanged"


@dataclass(frozen=True)
class ExtraEdge:
    """Ordered endpoint pair (E, F) of the edge to be added."""

    e_vertex: int
    f_vertex: int

    def __post_init__(self):
        if self.e_vertex == self.f_vertex:
            raise ValueError("extra edge endpoints must differ")


class BoundInapplicableError(ValueError):
    """The composition bound needs connected induced halves."""


@dataclass(frozen=True)
class RegionPartition:
    """Per-vertex tag: R_E if AE - AF > 1, N if |AE - AF| <= 1, R_F otherwise."""

    region_of: tuple[str, ...]

    def members(self, tag: str) -> tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.region_of) if t == tag)


@dataclass(frozen=True)
class GainProfile:
    """gain_max[A] = max(0, |AF - AE| - 1); zero exactly on the normal region."""

    gain_max: tuple[int, ...]


def _check_edge(d: DistanceMatrix, e: ExtraEdge, min_dist: int = 2) -> tuple[int, int]:
    ev, fv = e.e_vertex, e.f_vertex
    if not (0 <= ev < d.n and 0 <= fv < d.n):
        raise ValueError("extra-edge endpoint id out of range")
    if d.dist[ev, fv] < min_dist:
        raise ValueError(
            f"endpoints {ev} and {fv} are at distance {int(d.dist[ev, fv])}; "
            f"the extra edge needs non-adjacent endpoints"
        )
    return ev, fv


def augmented_distance(d: DistanceMatrix, e: ExtraEdge, a: int, b: int) -> int:
    """min(AB, AE + 1 + FB, AF + 1 + EB): either the edge is not used, or it
    is crossed in one of its two directions."""
    ev, fv = e.e_vertex, e.f_vertex
    if not (0 <= a < d.n and 0 <= b < d.n and 0 <= ev < d.n and 0 <= fv < d.n):
        raise ValueError("vertex id out of range")
    dist = d.dist
    return int(
        min(dist[a, b], dist[a, ev] + 1 + dist[fv, b], dist[a, fv] + 1 + dist[ev, b])
    )


def augment_matrix(d: DistanceMatrix, e: ExtraEdge) -> DistanceMatrix:
    """Distance matrix of the augmented graph, from the closed form above
    (vectorized; no BFS on the augmented graph)."""
    ev, fv = _check_edge(d, e)
    dist = d.dist
    via_ef = dist[:, ev, None] + 1 + dist[None, fv, :]
    via_fe = dist[:, fv, None] + 1 + dist[None, ev, :]
    return DistanceMatrix(d.n, np.minimum(dist, np.minimum(via_ef, via_fe)).astype(np.int32))


def augmented_apsp(g: Graph, e: ExtraEdge) -> DistanceMatrix:
    """Must equal apsp(add_edge(g, E, F)) entrywise; computed analytically."""
    return augment_matrix(apsp(g), e)


def region_partition(d: DistanceMatrix, e: ExtraEdge) -> RegionPartition:
    ev, fv = _check_edge(d, e)
    diff = d.dist[:, ev].astype(np.int64) - d.dist[:, fv]
    tags = np.where(diff > 1, REGION_E, np.where(diff < -1, REGION_F, REGION_N))
    return RegionPartition(tuple(str(t) for t in tags))


def special_region(d: DistanceMatrix, e: ExtraEdge, a: int) -> frozenset[int]:
    """R_A = vertices whose distance to A strictly drops when e is added."""
    ev, fv = _check_edge(d, e)
    dist = d.dist
    row = np.minimum(dist[a, ev] + 1 + dist[fv], dist[a, fv] + 1 + dist[ev])
    return frozenset(int(z) for z in np.nonzero(row < dist[a])[0])


def gain(d: DistanceMatrix, e: ExtraEdge, a: int, b: int) -> int:
    """Gain(A, B) = AB - d_{G'}(A, B)."""
    _check_edge(d, e)
    return int(d.dist[a, b]) - augmented_distance(d, e, a, b)


def gain_profile(d: DistanceMatrix, e: ExtraEdge) -> GainProfile:
    """Per-vertex maximum gain, computed both ways: the closed form
    max(0, |AF - AE| - 1) and the brute-force maximum over all partners.
    The two must agree; a mismatch is an internal consistency fault."""
    ev, fv = _check_edge(d, e)
    dist = d.dist
    closed = np.maximum(0, np.abs(dist[:, fv].astype(np.int64) - dist[:, ev]) - 1)
    aug = augment_matrix(d, e).dist
    brute = (dist.astype(np.int64) - aug).max(axis=1)
    assert np.array_equal(closed, brute), "gain_max closed form disagrees with brute force"
    return GainProfile(tuple(int(x) for x in closed))


def classify_distance(d: DistanceMatrix, e: ExtraEdge, a: int, b: int) -> tuple[str, int]:
    """Which branch of the three-way distance formula is realized for (A, B).

    via_EF: A in R_B and A in R_F, value AE + 1 + FB; via_FE symmetric;
    unchanged otherwise.
    """
    ev, fv = _check_edge(d, e)
    dist = d.dist
    a_in_rb = augmented_distance(d, e, a, b) < dist[a, b]
    if a_in_rb:
        diff = int(dist[a, ev]) - int(dist[a, fv])
        if diff < -1:  # A in R_F
            return VIA_EF, int(dist[a, ev] + 1 + dist[fv, b])
        if diff > 1:  # A in R_E
            return VIA_FE, int(dist[a, fv] + 1 + dist[ev, b])
    return UNCHANGED, int(dist[a, b])


def split_v1_v2(d: DistanceMatrix, e: ExtraEdge) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """V1 = vertices at least as close to E as to F; V2 the mirror.  The two
    overlap exactly on the UE = UF band."""
    ev, fv = e.e_vertex, e.f_vertex
    de, df = d.dist[:, ev], d.dist[:, fv]
    v1 = tuple(int(u) for u in np.nonzero(de <= df)[0])
    v2 = tuple(int(u) for u in np.nonzero(de >= df)[0])
    return v1, v2


@dataclass(frozen=True)
class CompositionBound:
    """beta(G') <= beta(G1) + beta(G2) + 2, with the exact value when asked."""

    beta_g1: int
    beta_g2: int
    bound: int
    beta_gprime: int | None
    holds: bool | None


def composition_upper_bound(g: Graph, e: ExtraEdge, exact_limit: int = 64) -> CompositionBound:
    """Evaluate the two-subgraph upper bound for g plus the extra edge.

    Raises BoundInapplicableError when either induced half is disconnected.
    When g has at most `exact_limit` vertices the exact beta(G') is computed
    and the inequality checked.
    """
    d = apsp(g)
    _check_edge(d, e)
    v1, v2 = split_v1_v2(d, e)
    betas = []
    for part in (v1, v2):
        sub, _ = induced_subgraph(g, part)
        try:
            sub_d = apsp(sub)
        except DisconnectedGraphError as exc:
            raise BoundInapplicableError(
                f"induced half of size {sub.n} is disconnected: {exc}"
            ) from exc
        betas.append(solver.metric_dimension(sub_d, k_max=max(8, sub.n)).dimension)
    bound = betas[0] + betas[1] + 2
    beta_gp = holds = None
    if g.n <= exact_limit:
        aug = augment_matrix(d, e)
        try:
            beta_gp = solver.metric_dimension(aug, k_max=min(bound + 1, g.n)).dimension
            holds = beta_gp <= bound
        except solver.KMaxExceededError:
            holds = False  # beta(G') > bound + 1, a genuine violation
    return CompositionBound(betas[0], betas[1], bound, beta_gp, holds)


@dataclass(frozen=True)
class DecreaseCheck:
    """S a minimum resolving set of G'; S + {E, F} must resolve G."""

    beta_gprime: int
    witness: tuple[int, ...]
    base_set: tuple[int, ...]
    resolves_base: bool
    beta_g: int
    holds_inequality: bool  # beta(G) <= beta(G') + 2


def decrease_bound_check(g: Graph, e: ExtraEdge) -> DecreaseCheck:
    d = apsp(g)
    _check_edge(d, e)
    aug = augment_matrix(d, e)
    res = solver.metric_dimension(aug, k_max=g.n)
    combined = tuple(sorted(set(res.witness) | {e.e_vertex, e.f_vertex}))
    ok, _ = solver.is_resolving(d, combined)
    beta_g = solver.metric_dimension(d, k_max=g.n).dimension
    return DecreaseCheck(res.dimension, res.witness, combined, ok, beta_g, beta_g <= res.dimension + 2)


def ring_chord_set(n: int, x: int) -> tuple[int, int]:
    """Resolving pair for the ring 0..n-1 plus the chord (A_1, A_x), in 0-based
    ids: the pair (floor(x/2) - 1, floor(x/2)) from the 1-based construction.

    `x` is the 1-based ring index of the chord's far endpoint.
    """
    if n < 3:
        raise ValueError("ring needs at least 3 vertices")
    if not 1 < x <= n:
        raise ValueError("chord endpoint index must be in 2..n")
    if min(x - 1, n - x + 1) < 2:
        raise ValueError("chord endpoints are adjacent on the ring")
    lo = x // 2
    return lo - 1, lo


def region_report(d: DistanceMatrix, e: ExtraEdge) -> dict:
    """JSON-ready region/gain summary."""
    part = region_partition(d, e)
    prof = gain_profile(d, e)
    return {
        "regions": {
            REGION_E: list(part.members(REGION_E)),
            REGION_N: list(part.members(REGION_N)),
            REGION_F: list(part.members(REGION_F)),
        },
        "gain_max": list(prof.gain_max),
    }
