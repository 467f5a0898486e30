"""Exact expansion certificates and numerical audits of the mixing machinery.

``certify_exact`` brute-forces, per face dimension i, the minimum of
|coboundary(S)| / (k_i * dist(S, Z^i)) over all non-cocycle subsets S (the
cosystolic constant; the coboundary constant takes distances to B^i instead),
together with the smallest relative size mu of a nontrivial cocycle.

The audits check, on concrete inputs, the chain of facts behind the mixing
bound: the outgoing-edges identity between edge-graph cuts and local-view
coboundaries, the local-view distance formula, the per-vertex coboundary
lower bounds for semi-fat and non-fat vertices, the minimum-cut lower bound,
the sum-of-coboundaries lower bound, and the closed-form mixing rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import gf2
from .cochain import (
    Chain,
    chain_to_mask,
    coboundary_edges,
    cocycle_space,
    distance_to_space,
    local_view,
    mask_bits,
    mask_to_chain,
)
from .complexes import Complex2, degree_profile
from .errors import (
    CapacityError,
    DegenerateComplexError,
    DomainError,
    ParameterError,
    RegularityError,
)
from .graphs import Graph, edge_graph, underlying_graph
from .spectral import normalized_spectrum

#: Default exhaustive certification bound: 2**bits subsets per dimension.
CERTIFY_BIT_LIMIT = 24
#: Exhaustive minimum-cut enumeration bound.
LARGE_CUTS_VERTEX_LIMIT = 26


@dataclass(frozen=True)
class DimensionReport:
    """Exact expansion data for one face dimension."""

    dimension: int
    epsilon_cosystolic: Fraction
    cosystolic_witness: Chain
    epsilon_coboundary: Fraction
    coboundary_witness: Chain
    mu: Optional[Fraction]
    mu_witness: Optional[Chain]


@dataclass(frozen=True)
class ExpansionCertificate:
    """Brute-forced expansion constants with minimizing witnesses."""

    epsilon_cosystolic: Fraction
    epsilon_coboundary: Fraction
    mu: Fraction
    mu_vacuous: bool
    connected: bool
    dimensions: tuple[DimensionReport, DimensionReport]


def _required_regular(X: Complex2) -> tuple[int, int]:
    regular = degree_profile(X).regular
    if regular is None:
        raise RegularityError("complex is not (k0, k1)-regular")
    return regular


def _lambda2(X: Complex2) -> float:
    return normalized_spectrum(underlying_graph(X)).lambda2


class _Best:
    """Running minimum of (value, witness mask) with lexicographic tie-break."""

    def __init__(self):
        self.value = None
        self.mask = 0
        self._bits: Optional[list[int]] = None

    def offer(self, value, mask: int) -> None:
        if self.value is None or value < self.value:
            self.value, self.mask, self._bits = value, mask, None
        elif value == self.value and mask != self.mask:
            if self._bits is None:
                self._bits = mask_bits(self.mask)
            candidate = mask_bits(mask)
            if candidate < self._bits:
                self.mask, self._bits = mask, candidate


def _certify_dimension(X: Complex2, i: int, k_i: int) -> DimensionReport:
    if i == 0:
        count = X.n_vertices
        gens = X.vertex_edge_masks
        b_masks = [(1 << count) - 1] if count else []
    else:
        count = X.n_edges
        gens = X.edge_triangle_masks
        b_masks = gf2.image_basis(X.vertex_edge_masks)
    z_basis = gf2.kernel_basis(gens)
    z_words = list(gf2.span_iter(z_basis))
    b_words = list(gf2.span_iter(b_masks))

    best_z = _Best()
    best_b = _Best()
    best_mu = _Best()
    cur = 0
    delta = 0
    for idx in range(1, 1 << count):
        bit = gf2.low_bit(idx)
        cur ^= 1 << bit
        delta ^= gens[bit]
        if delta == 0:
            if not gf2.in_span(cur, b_masks):
                best_mu.offer(Fraction(cur.bit_count(), count), cur)
            continue
        dsize = delta.bit_count()
        dist_z = min((cur ^ z).bit_count() for z in z_words)
        dist_b = min((cur ^ z).bit_count() for z in b_words)
        best_z.offer(Fraction(dsize, k_i * dist_z), cur)
        best_b.offer(Fraction(dsize, k_i * dist_b), cur)

    if best_z.value is None:
        raise DegenerateComplexError(
            f"every subset at dimension {i} is a cocycle; expansion ratio undefined"
        )
    return DimensionReport(
        dimension=i,
        epsilon_cosystolic=best_z.value,
        cosystolic_witness=mask_to_chain(i, best_z.mask),
        epsilon_coboundary=best_b.value,
        coboundary_witness=mask_to_chain(i, best_b.mask),
        mu=best_mu.value,
        mu_witness=mask_to_chain(i, best_mu.mask) if best_mu.value is not None else None,
    )


@lru_cache(maxsize=32)
def certify_exact(X: Complex2, *, max_bits: int = CERTIFY_BIT_LIMIT) -> ExpansionCertificate:
    """Exact expansion certificate by full subset enumeration at both dimensions."""
    k0, k1 = _required_regular(X)
    if X.n_vertices > max_bits or X.n_edges > max_bits:
        raise CapacityError(
            f"certification enumerates 2**faces subsets and is limited to "
            f"{max_bits} faces per dimension; got {X.n_vertices} vertices, "
            f"{X.n_edges} edges"
        )
    reports = tuple(
        _certify_dimension(X, i, k_i) for i, k_i in ((0, k0), (1, k1))
    )
    mus = [r.mu for r in reports if r.mu is not None]
    vacuous = not mus
    mu = Fraction(1) if vacuous else min(mus)
    connected = X.n_vertices == 0 or len(gf2.kernel_basis(X.vertex_edge_masks)) == 1
    return ExpansionCertificate(
        epsilon_cosystolic=min(r.epsilon_cosystolic for r in reports),
        epsilon_coboundary=min(r.epsilon_coboundary for r in reports),
        mu=mu,
        mu_vacuous=vacuous,
        connected=connected,
        dimensions=reports,
    )


def _bracket(lambda2: float) -> float:
    """3*sqrt((1+2*lambda2)**2 + 32) - 2*lambda2 - 17; positive for lambda2 < 1/2."""
    return 3.0 * math.sqrt((1.0 + 2.0 * lambda2) ** 2 + 32.0) - 2.0 * lambda2 - 17.0


def fatness_constant(lambda2: float) -> float:
    """The fatness threshold eta = (1 + 2*lambda2 + sqrt((1+2*lambda2)**2 + 32)) / 8.

    Defined for lambda2 < 1/2; satisfies lambda2 = 2*eta - 1/eta - 1/2 and
    lies strictly between 1/2 and 1.
    """
    if lambda2 >= 0.5:
        raise DomainError(f"fatness constant requires lambda2 < 1/2, got {lambda2}")
    u = 1.0 + 2.0 * lambda2
    eta = (u + math.sqrt(u * u + 32.0)) / 8.0
    if not (0.5 < eta < 1.0):
        raise DomainError(f"fatness constant {eta} outside (1/2, 1); lambda2={lambda2}")
    return eta


@dataclass(frozen=True)
class FatnessPartition:
    """Vertices split by local-view size: > eta*k0 / (k0/2, eta*k0] / <= k0/2."""

    eta: float
    fat: tuple[int, ...]
    semi_fat: tuple[int, ...]
    non_fat: tuple[int, ...]


def fatness_partition(X: Complex2, F: Chain, eta: float) -> FatnessPartition:
    k0, _ = _required_regular(X)
    if not (0.5 < eta < 1.0):
        raise DomainError(f"fatness constant must lie in (1/2, 1), got {eta}")
    if F.dimension != 1:
        raise ParameterError("fatness partition takes a 1-chain of edges")
    fmask = chain_to_mask(F)
    fat, semi, non = [], [], []
    for v in range(X.n_vertices):
        size = (X.vertex_edge_masks[v] & fmask).bit_count()
        if size > eta * k0:
            fat.append(v)
        elif 2 * size > k0:
            semi.append(v)
        else:
            non.append(v)
    return FatnessPartition(eta, tuple(fat), tuple(semi), tuple(non))


def sum_local_coboundaries(X: Complex2, F: Chain) -> int:
    """Sum over vertices of |coboundary(local view of F at v)|."""
    fmask = chain_to_mask(F)
    total = 0
    for star in X.vertex_edge_masks:
        fv = star & fmask
        d = 0
        while fv:
            d ^= X.edge_triangle_masks[gf2.low_bit(fv)]
            fv &= fv - 1
        total += d.bit_count()
    return total


@dataclass(frozen=True)
class OutgoingEdgesIdentity:
    """Cut size in the edge-graph vs. the local-view coboundary sum."""

    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def outgoing_edges_identity(X: Complex2, F: Chain) -> OutgoingEdgesIdentity:
    if F.dimension != 1:
        raise ParameterError("outgoing-edges identity takes a 1-chain of edges")
    g1 = edge_graph(X).graph
    fmask = chain_to_mask(F)
    outside = ((1 << g1.n) - 1) & ~fmask
    lhs = 0
    m = fmask
    while m:
        a = gf2.low_bit(m)
        lhs += (g1.neighbor_masks[a] & outside).bit_count()
        m &= m - 1
    return OutgoingEdgesIdentity(lhs, sum_local_coboundaries(X, F))


@dataclass(frozen=True)
class SizePreconditions:
    """Minimum-size hypotheses under which the asymptotic statements are asserted."""

    spectral_bound: float  # |V| >= 4 / (1 - 2*lambda2)
    cosystolic_bound: float  # |V| >= 3 / mu
    spectral_ok: bool
    cosystolic_ok: bool

    @property
    def met(self) -> bool:
        return self.spectral_ok and self.cosystolic_ok


def _size_preconditions(n: int, lambda2: float, mu: Fraction) -> SizePreconditions:
    spectral_bound = 4.0 / (1.0 - 2.0 * lambda2)
    cosystolic_bound = 3.0 / float(mu)
    return SizePreconditions(
        spectral_bound=spectral_bound,
        cosystolic_bound=cosystolic_bound,
        spectral_ok=n >= spectral_bound - 1e-12,
        cosystolic_ok=Fraction(n) * mu >= 3,
    )


@dataclass(frozen=True)
class VertexDistanceEntry:
    vertex: int
    local_view_size: int
    distance: int
    formula_value: int

    @property
    def equal(self) -> bool:
        return self.distance == self.formula_value


@dataclass(frozen=True)
class DistanceFormulaReport:
    """Per-vertex comparison of dist(F_v, Z^1) against min(|F_v|, k0 - |F_v|)."""

    applicable: bool
    note: Optional[str]
    preconditions: SizePreconditions
    entries: tuple[VertexDistanceEntry, ...]

    @property
    def all_equal(self) -> bool:
        return all(e.equal for e in self.entries)

    @property
    def passes(self) -> Optional[bool]:
        if not self.applicable or not self.preconditions.met:
            return None
        return self.all_equal


def distance_formula_audit(
    X: Complex2,
    F: Chain,
    *,
    mu: Optional[Fraction] = None,
    max_bits: int = CERTIFY_BIT_LIMIT,
) -> DistanceFormulaReport:
    k0, _ = _required_regular(X)
    lambda2 = _lambda2(X)
    if lambda2 >= 0.5:
        raise DomainError(f"distance formula requires lambda2 < 1/2, got {lambda2}")
    if F.dimension != 1:
        raise ParameterError("distance formula audit takes a 1-chain of edges")
    if mu is None:
        mu = certify_exact(X, max_bits=max_bits).mu
    preconditions = _size_preconditions(X.n_vertices, lambda2, mu)
    note = None
    applicable = 0 < len(F) < X.n_edges
    if not applicable:
        note = "stated for proper nonempty edge subsets; report is informational"
    z1 = cocycle_space(X, 1)
    entries = []
    for v in range(X.n_vertices):
        fv = local_view(X, F, v)
        dist, _ = distance_to_space(fv, z1)
        entries.append(
            VertexDistanceEntry(v, len(fv), dist, min(len(fv), k0 - len(fv)))
        )
    return DistanceFormulaReport(applicable, note, preconditions, tuple(entries))


@dataclass(frozen=True)
class LocalViewBoundEntry:
    vertex: int
    category: str  # "semi_fat" or "non_fat"
    coboundary_size: int
    bound: float
    ok: bool


@dataclass(frozen=True)
class LocalViewBoundsReport:
    """Coboundary lower bounds for semi-fat and non-fat local views."""

    preconditions: SizePreconditions
    eta: float
    entries: tuple[LocalViewBoundEntry, ...]

    @property
    def all_ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def passes(self) -> Optional[bool]:
        if not self.preconditions.met:
            return None
        return self.all_ok


def local_view_bounds_audit(
    X: Complex2,
    F: Chain,
    epsilon: Fraction,
    eta: float,
    *,
    mu: Optional[Fraction] = None,
    slack: float = 1e-9,
    max_bits: int = CERTIFY_BIT_LIMIT,
) -> LocalViewBoundsReport:
    k0, k1 = _required_regular(X)
    lambda2 = _lambda2(X)
    if lambda2 >= 0.5:
        raise DomainError(f"local-view bounds require lambda2 < 1/2, got {lambda2}")
    if mu is None:
        mu = certify_exact(X, max_bits=max_bits).mu
    preconditions = _size_preconditions(X.n_vertices, lambda2, mu)
    partition = fatness_partition(X, F, eta)
    eps = float(epsilon)
    entries = []
    for v in partition.semi_fat:
        d = len(coboundary_of_local_view(X, F, v))
        bound = eps * k1 * (1.0 - eta) * k0
        entries.append(LocalViewBoundEntry(v, "semi_fat", d, bound, d >= bound - slack))
    for v in partition.non_fat:
        fv = local_view(X, F, v)
        d = len(coboundary_of_local_view(X, F, v))
        bound = eps * k1 * len(fv)
        entries.append(LocalViewBoundEntry(v, "non_fat", d, bound, d >= bound - slack))
    entries.sort(key=lambda e: e.vertex)
    return LocalViewBoundsReport(preconditions, eta, tuple(entries))


def coboundary_of_local_view(X: Complex2, F: Chain, v: int) -> Chain:
    return coboundary_edges(X, local_view(X, F, v))


@dataclass(frozen=True)
class LargeCutsResult:
    min_cut: int
    witness: tuple[int, ...]
    k: int
    lambda2: float
    precondition_met: bool
    passes: bool

    @property
    def asserted(self) -> Optional[bool]:
        return self.passes if self.precondition_met else None


def large_cuts_audit(G0: Graph, *, max_vertices: int = LARGE_CUTS_VERTEX_LIMIT) -> LargeCutsResult:
    """Exact minimum cut over proper nonempty vertex subsets, compared to k."""
    k = G0.regular_k
    if k is None or k == 0:
        raise RegularityError("minimum-cut bound needs a regular graph of positive degree")
    if G0.n > max_vertices:
        raise CapacityError(
            f"cut enumeration limited to {max_vertices} vertices, got {G0.n}"
        )
    if G0.n < 2:
        raise DomainError("minimum cut needs at least 2 vertices")
    lambda2 = normalized_spectrum(G0).lambda2
    if lambda2 >= 0.5:
        raise DomainError(f"minimum-cut bound requires lambda2 < 1/2, got {lambda2}")
    n = G0.n
    best = _Best()
    for m in range(1 << (n - 1)):
        mask = (m << 1) | 1
        if mask.bit_count() == n:
            continue
        cut = 0
        outside = ((1 << n) - 1) & ~mask
        mm = mask
        while mm:
            v = gf2.low_bit(mm)
            cut += (G0.neighbor_masks[v] & outside).bit_count()
            mm &= mm - 1
        best.offer(cut, mask)
    assert best.value is not None
    precondition = n >= 4.0 / (1.0 - 2.0 * lambda2) - 1e-12
    return LargeCutsResult(
        min_cut=best.value,
        witness=tuple(mask_bits(best.mask)),
        k=k,
        lambda2=lambda2,
        precondition_met=precondition,
        passes=best.value >= k,
    )


@dataclass(frozen=True)
class SumCoboundariesResult:
    lhs: int
    rhs_bound: float
    lambda2: float
    passes: bool


def sum_coboundaries_audit(
    X: Complex2,
    F: Chain,
    epsilon: Fraction,
    *,
    slack: float = 1e-9,
) -> SumCoboundariesResult:
    """Check sum_v |coboundary(F_v)| >= (eps*k1/4) * bracket(lambda2) * |F|."""
    _, k1 = _required_regular(X)
    lambda2 = _lambda2(X)
    if lambda2 >= 0.5:
        raise DomainError(f"sum-of-coboundaries bound requires lambda2 < 1/2, got {lambda2}")
    if F.dimension != 1:
        raise ParameterError("sum-of-coboundaries audit takes a 1-chain of edges")
    if 2 * len(F) > X.n_edges:
        raise DomainError(
            f"bound stated for |F| <= |E|/2; got |F|={len(F)}, |E|={X.n_edges}"
        )
    lhs = sum_local_coboundaries(X, F)
    rhs = float(epsilon) * k1 / 4.0 * _bracket(lambda2) * len(F)
    return SumCoboundariesResult(lhs, rhs, lambda2, lhs >= rhs - slack)


def mixing_rate_bound(epsilon, lambda2: float) -> float:
    """Closed-form rate 1 - (epsilon**2 / 128) * bracket(lambda2)**2.

    Strictly below 1 for epsilon > 0 and lambda2 < 1/2, and above 0 for
    epsilon <= 1.
    """
    eps = float(epsilon)
    if eps < 0:
        raise DomainError(f"expansion constant must be non-negative, got {eps}")
    if lambda2 >= 0.5:
        raise DomainError(f"mixing rate requires lambda2 < 1/2, got {lambda2}")
    return 1.0 - eps * eps / 128.0 * _bracket(lambda2) ** 2
