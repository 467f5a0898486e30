"""Random-walk engines: exact distribution evolution and seeded simulation.

The walk steps to a uniformly random neighbor (no laziness, no self-loops),
both on graph vertices and on complex edges, where two edges neighbor each
other when they span a triangle.  Exact evolution tracks the full probability
vector and its l2 distance to uniform; simulation uses SplitMix64 so paths
are reproducible from the seed alone.  Bipartite non-convergence is expected
behavior and is surfaced by the distances, not patched.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .complexes import Complex2
from .errors import ParameterError, RegularityError, UndefinedTransitionError
from .expansion import ExpansionCertificate, mixing_rate_bound
from .graphs import Graph, edge_graph, underlying_graph
from .rng import SplitMix64, derive_seed
from .spectral import normalized_spectrum


@dataclass(frozen=True)
class Distribution:
    """Probability vector over the vertices of a bound graph."""

    probabilities: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "probabilities", tuple(float(p) for p in self.probabilities))
        if not self.probabilities:
            raise ParameterError("distribution must have at least one entry")
        if min(self.probabilities) < -1e-15:
            raise ParameterError("distribution entries must be non-negative")
        total = sum(self.probabilities)
        if abs(total - 1.0) > 1e-12:
            raise ParameterError(f"distribution must sum to 1, got {total!r}")

    @classmethod
    def point_mass(cls, n: int, index: int) -> "Distribution":
        if not (0 <= index < n):
            raise ParameterError(f"point mass index {index} out of range for n={n}")
        return cls(tuple(1.0 if i == index else 0.0 for i in range(n)))

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        if n < 1:
            raise ParameterError("uniform distribution needs at least one entry")
        return cls((1.0 / n,) * n)


@dataclass(frozen=True)
class WalkTrace:
    """Distribution evolution with per-step l2 distances to uniform."""

    distributions: tuple[tuple[float, ...], ...]
    distances: tuple[float, ...]
    rate_bound: Optional[float]
    bound_ok: Optional[tuple[bool, ...]]


def transition_matrix(G: Graph) -> np.ndarray:
    """Uniform-neighbor transition matrix of a regular graph."""
    k = G.regular_k
    if k is None:
        raise RegularityError("exact evolution requires a regular graph")
    if k == 0:
        raise UndefinedTransitionError("every vertex has zero degree; walk undefined")
    M = np.zeros((G.n, G.n))
    for u, nbrs in enumerate(G.adjacency):
        for v in nbrs:
            M[v, u] = 1.0 / k
    return M


def evolve_exact(
    G: Graph,
    p0: Distribution,
    steps: int,
    rate_bound: Optional[float] = None,
    *,
    slack: float = 1e-9,
) -> WalkTrace:
    """Evolve p0 for the given number of steps, recording distances to uniform."""
    if steps < 0:
        raise ParameterError(f"steps must be non-negative, got {steps}")
    if len(p0.probabilities) != G.n:
        raise ParameterError(
            f"distribution has {len(p0.probabilities)} entries for a graph on {G.n} vertices"
        )
    M = transition_matrix(G)
    u = np.full(G.n, 1.0 / G.n)
    p = np.array(p0.probabilities)
    dists = [p]
    for _ in range(steps):
        p = M @ p
        dists.append(p)
    distributions = tuple(tuple(float(x) for x in p) for p in dists)
    distances = tuple(float(np.linalg.norm(p - u)) for p in dists)
    bound_ok = None
    if rate_bound is not None:
        bound_ok = tuple(d <= rate_bound**i + slack for i, d in enumerate(distances))
    return WalkTrace(distributions, distances, rate_bound, bound_ok)


@lru_cache(maxsize=128)
def _edge_neighbor_table(X: Complex2) -> tuple[tuple[int, ...], ...]:
    """Sorted neighbor edge ids per edge, from the triangle incidences of X."""
    nbrs: list[set[int]] = [set() for _ in range(X.n_edges)]
    for (a, b, c) in X.triangle_edge_ids:
        nbrs[a].update((b, c))
        nbrs[b].update((a, c))
        nbrs[c].update((a, b))
    return tuple(tuple(sorted(s)) for s in nbrs)


def high_order_neighbors(X: Complex2, e: int) -> tuple[int, ...]:
    """Edges sharing a triangle with edge e, as sorted edge ids."""
    if not (0 <= e < X.n_edges):
        raise ParameterError(f"edge index {e} out of range")
    return _edge_neighbor_table(X)[e]


def simulate(G: Graph, v0: int, steps: int, seed: int) -> tuple[int, ...]:
    """Seeded uniform-neighbor walk on graph vertices."""
    if not (0 <= v0 < G.n):
        raise ParameterError(f"start vertex {v0} out of range")
    if steps < 0:
        raise ParameterError(f"steps must be non-negative, got {steps}")
    rng = SplitMix64(seed)
    path = [v0]
    v = v0
    for _ in range(steps):
        nbrs = G.adjacency[v]
        if not nbrs:
            raise UndefinedTransitionError(f"vertex {v} has no neighbors")
        v = nbrs[rng.randrange(len(nbrs))]
        path.append(v)
    return tuple(path)


def high_order_simulate(X: Complex2, e0: int, steps: int, seed: int) -> tuple[int, ...]:
    """Seeded walk on the edges of X; each step is uniform over triangle-neighbors."""
    if not (0 <= e0 < X.n_edges):
        raise ParameterError(f"start edge {e0} out of range")
    if steps < 0:
        raise ParameterError(f"steps must be non-negative, got {steps}")
    table = _edge_neighbor_table(X)
    rng = SplitMix64(seed)
    path = [e0]
    e = e0
    for _ in range(steps):
        nbrs = table[e]
        if not nbrs:
            raise UndefinedTransitionError(f"edge {e} belongs to no triangle; walk undefined")
        e = nbrs[rng.randrange(len(nbrs))]
        path.append(e)
    return tuple(path)


def high_order_step_counts(
    X: Complex2, e0: int, steps: int, paths: int, seed: int
) -> tuple[tuple[int, ...], ...]:
    """Occupancy counts per step over ``paths`` independent seeded walks.

    Path i draws from SplitMix64(derive_seed(seed, i)), so the ensemble is
    reproducible and independent of evaluation order.
    """
    if paths < 0:
        raise ParameterError(f"path count must be non-negative, got {paths}")
    if not (0 <= e0 < X.n_edges):
        raise ParameterError(f"start edge {e0} out of range")
    table = _edge_neighbor_table(X)
    counts = [[0] * X.n_edges for _ in range(steps + 1)]
    for i in range(paths):
        rng = SplitMix64(derive_seed(seed, i))
        e = e0
        counts[0][e] += 1
        for t in range(1, steps + 1):
            nbrs = table[e]
            if not nbrs:
                raise UndefinedTransitionError(
                    f"edge {e} belongs to no triangle; walk undefined"
                )
            e = nbrs[rng.randrange(len(nbrs))]
            counts[t][e] += 1
    return tuple(tuple(row) for row in counts)


@dataclass(frozen=True)
class RapidMixingReport:
    """Worst-start decay of the edge walk against the certified rate bound."""

    applicable: bool
    reason: Optional[str]
    epsilon: Optional[Fraction]
    lambda2: Optional[float]
    rate_bound: Optional[float]
    edge_graph_lambda: Optional[float]
    max_distances: tuple[float, ...]
    bound_ok: tuple[bool, ...]

    @property
    def passes(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return all(self.bound_ok)


def rapid_mixing_audit(
    X: Complex2,
    certificate: ExpansionCertificate,
    steps: int,
    *,
    slack: float = 1e-9,
) -> RapidMixingReport:
    """Exact edge-walk evolution from every point-mass start vs. the rate bound.

    Hypothesis failures (irregular complex, lambda2 >= 1/2, no triangles)
    yield a not-applicable report rather than a failure.
    """
    from .complexes import degree_profile

    def not_applicable(reason: str) -> RapidMixingReport:
        return RapidMixingReport(False, reason, None, None, None, None, (), ())

    profile = degree_profile(X)
    if profile.regular is None:
        return not_applicable("complex is not (k0, k1)-regular")
    if profile.regular[1] == 0:
        return not_applicable("no triangles; the edge walk has no moves")
    lambda2 = normalized_spectrum(underlying_graph(X)).lambda2
    if lambda2 >= 0.5:
        return not_applicable(f"lambda2 = {lambda2} >= 1/2")
    rate = mixing_rate_bound(certificate.epsilon_cosystolic, lambda2)
    g1 = edge_graph(X).graph
    M = transition_matrix(g1)
    u = np.full(g1.n, 1.0 / g1.n)
    P = np.eye(g1.n)  # column j = point mass at edge j
    max_distances = []
    for _ in range(steps + 1):
        max_distances.append(float(np.linalg.norm(P - u[:, None], axis=0).max()))
        P = M @ P
    bound_ok = tuple(d <= rate**i + slack for i, d in enumerate(max_distances))
    g1_lambda = normalized_spectrum(g1).lambda_max_nontrivial
    return RapidMixingReport(
        applicable=True,
        reason=None,
        epsilon=certificate.epsilon_cosystolic,
        lambda2=lambda2,
        rate_bound=rate,
        edge_graph_lambda=g1_lambda,
        max_distances=tuple(max_distances),
        bound_ok=bound_ok,
    )
