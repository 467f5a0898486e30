"""Normalized adjacency spectra, exact Cheeger constants, and spectral audits.

Eigenvalues of a k-regular graph are reported normalized by k, sorted
descending.  Cheeger constants are exact rationals from exhaustive subset
enumeration.  The audits check, with explicit slack, the inequalities
relating cuts, eigenvalues, and the edge-graph spectral floor of -17/18.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .complexes import Complex2, degree_profile
from .errors import CapacityError, DomainError, ParameterError, RegularityError
from .graphs import Graph, edge_graph

#: Exhaustive Cheeger enumeration bound (2**(n-1) subsets).
CHEEGER_VERTEX_LIMIT = 26
#: Exhaustive mixing-lemma enumeration bound (2**n subsets).
MIXING_LEMMA_VERTEX_LIMIT = 22
#: Normalized floor for the smallest edge-graph eigenvalue.
EDGE_GRAPH_FLOOR = Fraction(-17, 18)


@dataclass(frozen=True)
class SpectralReport:
    """Normalized spectrum of a regular graph, sorted descending."""

    normalized_eigenvalues: tuple[float, ...]
    lambda2: float
    lambda_n: float
    lambda_max_nontrivial: float
    tolerance: float


def _require_regular(G: Graph) -> int:
    k = G.regular_k
    if k is None:
        raise RegularityError("graph is not regular; normalized spectrum undefined")
    if k == 0:
        raise RegularityError("0-regular graph; normalization by degree undefined")
    return k


def adjacency_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n))
    for u, nbrs in enumerate(G.adjacency):
        for v in nbrs:
            A[u, v] = 1.0
    return A


@lru_cache(maxsize=256)
def normalized_spectrum(G: Graph, tol: float = 1e-9) -> SpectralReport:
    """All eigenvalues of A/k via a dense symmetric eigensolver."""
    if G.n < 1:
        raise ParameterError("spectrum of the empty graph is undefined")
    k = _require_regular(G)
    A = adjacency_matrix(G)
    eigvals, eigvecs = np.linalg.eigh(A)
    residual = float(np.abs(A @ eigvecs - eigvecs * eigvals).max()) / k
    if residual > tol:
        raise DomainError(f"eigensolver residual {residual:.3e} exceeds tolerance {tol:.3e}")
    normalized = tuple(float(v) / k for v in eigvals[::-1])
    lambda2 = normalized[1] if G.n > 1 else normalized[0]
    lambda_n = normalized[-1]
    return SpectralReport(
        normalized_eigenvalues=normalized,
        lambda2=lambda2,
        lambda_n=lambda_n,
        lambda_max_nontrivial=max(abs(lambda2), abs(lambda_n)),
        tolerance=residual,
    )


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _cut_size(G: Graph, mask: int) -> int:
    total = 0
    full = (1 << G.n) - 1
    outside = full & ~mask
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        total += (G.neighbor_masks[v] & outside).bit_count()
        m &= m - 1
    return total


@dataclass(frozen=True)
class CheegerResult:
    h_normalized: Fraction
    witness: tuple[int, ...]


def cheeger_exhaustive(G: Graph, *, max_vertices: int = CHEEGER_VERTEX_LIMIT) -> CheegerResult:
    """Exact normalized Cheeger constant by enumerating subsets containing vertex 0.

    Complement symmetry halves the work; ties are broken by the
    lexicographically smallest witness (as a sorted vertex tuple).
    """
    k = _require_regular(G)
    if G.n > max_vertices:
        raise CapacityError(f"Cheeger enumeration limited to {max_vertices} vertices, got {G.n}")
    if G.n < 2:
        raise DomainError("Cheeger constant needs at least 2 vertices")
    n = G.n
    best: Optional[Fraction] = None
    best_witness: Optional[tuple[int, ...]] = None
    for m in range(1 << (n - 1)):
        mask = (m << 1) | 1
        size = mask.bit_count()
        if size == n:
            continue
        cut = _cut_size(G, mask)
        small = min(size, n - size)
        ratio = Fraction(cut, k * small)
        if best is not None and ratio > best:
            continue
        if size < n - size:
            witness = _mask_vertices(mask)
        elif size > n - size:
            witness = _mask_vertices(((1 << n) - 1) & ~mask)
        else:
            witness = _mask_vertices(mask)  # contains vertex 0, lex smaller side
        if best is None or ratio < best or witness < best_witness:
            best, best_witness = ratio, witness
    assert best is not None and best_witness is not None
    return CheegerResult(best, best_witness)


@dataclass(frozen=True)
class MixingLemmaAudit:
    residual: float
    witness: tuple[int, ...]
    lambda2: float
    passes: bool


def mixing_lemma_audit(
    G: Graph,
    *,
    max_vertices: int = MIXING_LEMMA_VERTEX_LIMIT,
    slack: float = 1e-6,
) -> MixingLemmaAudit:
    """Worst residual of the one-sided expander mixing bound over all subsets.

    Audits 2|E(S)| <= k|S|(|S|/n + lambda2*(1 - |S|/n)), the exact Rayleigh
    form, which holds for every regular graph with the signed lambda2 (with
    equality on complete graphs).  Dropping the (1 - |S|/n) factor is only
    sound when lambda2 >= 0, and this bound implies that simpler one there.
    """
    k = _require_regular(G)
    if G.n > max_vertices:
        raise CapacityError(
            f"mixing-lemma enumeration limited to {max_vertices} vertices, got {G.n}"
        )
    lambda2 = normalized_spectrum(G).lambda2
    n = G.n
    worst = float("-inf")
    worst_witness: tuple[int, ...] = ()
    for mask in range(1 << n):
        size = mask.bit_count()
        two_es = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            two_es += (G.neighbor_masks[v] & mask).bit_count()
            m &= m - 1
        residual = two_es - k * size * (size / n + lambda2 * (1.0 - size / n))
        if residual > worst:
            worst = residual
            worst_witness = _mask_vertices(mask)
    return MixingLemmaAudit(worst, worst_witness, lambda2, worst <= slack)


@dataclass(frozen=True)
class CheegerInequalityAudit:
    slack: float
    h_normalized: Fraction
    lambda2: float
    passes: bool


def cheeger_inequality_audit(G: Graph, *, slack: float = 1e-9) -> CheegerInequalityAudit:
    """Slack of lambda2 <= 1 - h^2/2 (nonnegative when the inequality holds)."""
    h = cheeger_exhaustive(G).h_normalized
    lambda2 = normalized_spectrum(G).lambda2
    value = (1.0 - float(h) ** 2 / 2.0) - lambda2
    return CheegerInequalityAudit(value, h, lambda2, value >= -slack)


@dataclass(frozen=True)
class EdgeGraphFloorAudit:
    lambda_n: float
    slack: float
    passes: bool


def edge_graph_floor_audit(X: Complex2, *, slack: float = 1e-9) -> EdgeGraphFloorAudit:
    """Slack of lambda_n(edge-graph) >= -17/18 for an edge-regular complex."""
    profile = degree_profile(X)
    if not profile.edge_triangle_degrees or len(set(profile.edge_triangle_degrees)) != 1:
        raise RegularityError("complex is not edge-regular; edge-graph floor undefined")
    report = normalized_spectrum(edge_graph(X).graph)
    value = report.lambda_n - float(EDGE_GRAPH_FLOOR)
    return EdgeGraphFloorAudit(report.lambda_n, value, value >= -slack)


def characteristic_polynomial(G: Graph) -> tuple[int, ...]:
    """Exact integer coefficients of det(xI - A), highest power first.

    Faddeev-LeVerrier over rationals; independent of the floating eigensolver,
    so it can cross-check reported spectra.
    """
    n = G.n
    A = [[Fraction(1) if v in G.adjacency[u] else Fraction(0) for v in range(n)] for u in range(n)]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A @ (M + c_{k-1} I)
        for i in range(n):
            M[i][i] += coeffs[-1]
        M = [
            [sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        trace = sum(M[i][i] for i in range(n))
        coeffs.append(-trace / k)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("characteristic polynomial must have integer coefficients")
        out.append(int(c))
    return tuple(out)


def char_poly_eval(coeffs: tuple[int, ...], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc
