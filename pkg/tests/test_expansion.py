"""Expansion certificates, fatness machinery, and the inequality audits.

The oracle here is a from-scratch reference certifier: coboundaries by
literal definition loops, cocycle sets by filtering the full power set,
distances by direct minima.  The production certifier must reproduce its
exact rational constants.
"""

import math
from fractions import Fraction
from itertools import combinations

import pytest

from hdxwalk.cochain import Chain, cocycle_space, distance_to_space, mask_to_chain
from hdxwalk.complexes import build_from_triangles, complete_complex, random_complex
from hdxwalk.errors import (
    CapacityError,
    DegenerateComplexError,
    DomainError,
    RegularityError,
)
from hdxwalk.expansion import (
    certify_exact,
    distance_formula_audit,
    fatness_constant,
    fatness_partition,
    large_cuts_audit,
    local_view_bounds_audit,
    mixing_rate_bound,
    outgoing_edges_identity,
    sum_coboundaries_audit,
    sum_local_coboundaries,
)
from hdxwalk.graphs import complete_graph, underlying_graph
from hdxwalk.rng import SplitMix64
from hdxwalk.spectral import normalized_spectrum

K4 = complete_complex(4)
K5 = complete_complex(5)


def edge_chain(X, *pairs):
    return Chain.of(1, [X.edge_id(u, v) for (u, v) in pairs])


# --- reference certifier (independent oracle) -------------------------------


def brute_cut_edges(X, vertices):
    return frozenset(
        i for i, (u, v) in enumerate(X.edges) if (u in vertices) != (v in vertices)
    )


def brute_odd_triangles(X, edge_ids):
    chosen = {X.edges[i] for i in edge_ids}
    out = set()
    for j, (u, v, w) in enumerate(X.triangles):
        if sum(pair in chosen for pair in ((u, v), (u, w), (v, w))) % 2:
            out.add(j)
    return frozenset(out)


def brute_certify(X):
    """Reference (epsilon_Z, epsilon_B, mu) per dimension, by definition."""
    k0, k1 = (len(X.vertex_edges[0]), len(X.edge_triangles[0]))
    out = {}
    for i, k_i in ((0, k0), (1, k1)):
        count = X.n_vertices if i == 0 else X.n_edges
        cob = brute_cut_edges if i == 0 else brute_odd_triangles
        subsets = [
            frozenset(s) for r in range(count + 1) for s in combinations(range(count), r)
        ]
        z_set = [s for s in subsets if not cob(X, s)]
        if i == 0:
            b_set = [frozenset(), frozenset(range(X.n_vertices))]
        else:
            b_set = list(
                {
                    brute_cut_edges(X, set(vs))
                    for r in range(X.n_vertices + 1)
                    for vs in combinations(range(X.n_vertices), r)
                }
            )
        eps_z = eps_b = None
        mu = None
        for s in subsets:
            d = cob(X, s)
            if not d:
                if s not in b_set:
                    size = Fraction(len(s), count)
                    mu = size if mu is None else min(mu, size)
                continue
            dz = min(len(s ^ z) for z in z_set)
            db = min(len(s ^ z) for z in b_set)
            rz = Fraction(len(d), k_i * dz)
            rb = Fraction(len(d), k_i * db)
            eps_z = rz if eps_z is None else min(eps_z, rz)
            eps_b = rb if eps_b is None else min(eps_b, rb)
        out[i] = (eps_z, eps_b, mu)
    return out


def test_certificate_matches_reference_oracle():
    for X in (K4, K5):
        want = brute_certify(X)
        cert = certify_exact(X)
        for report in cert.dimensions:
            eps_z, eps_b, mu = want[report.dimension]
            assert report.epsilon_cosystolic == eps_z
            assert report.epsilon_coboundary == eps_b
            assert report.mu == mu
        assert cert.epsilon_cosystolic == min(want[0][0], want[1][0])


def test_certificate_k4_dimension0_equals_cheeger():
    cert = certify_exact(K4)
    assert cert.dimensions[0].epsilon_cosystolic == Fraction(2, 3)


def test_certificate_k4_mu_vacuous():
    cert = certify_exact(K4)
    assert cert.mu == 1 and cert.mu_vacuous
    assert cert.connected


def test_certificate_single_edge_ratio_is_one():
    # |coboundary({e})| / (k1 * dist) = k1 / (k1 * 1) = 1 for any single edge
    F = edge_chain(K4, (0, 1))
    z1 = cocycle_space(K4, 1)
    dist, _ = distance_to_space(F, z1)
    assert dist == 1
    from hdxwalk.cochain import coboundary_edges

    assert Fraction(len(coboundary_edges(K4, F)), 2 * dist) == 1


def test_certificate_witnesses_reproduce_constants():
    from hdxwalk.cochain import coboundary, coboundary_space

    for X in (K4, K5):
        cert = certify_exact(X)
        for report in cert.dimensions:
            k_i = (len(X.vertex_edges[0]), len(X.edge_triangles[0]))[report.dimension]
            w = report.cosystolic_witness
            dist, _ = distance_to_space(w, cocycle_space(X, report.dimension))
            assert Fraction(len(coboundary(X, w)), k_i * dist) == report.epsilon_cosystolic
            wb = report.coboundary_witness
            dist_b, _ = distance_to_space(wb, coboundary_space(X, report.dimension))
            assert Fraction(len(coboundary(X, wb)), k_i * dist_b) == report.epsilon_coboundary


def test_certificate_mu_witness_on_disconnected_complex():
    from hdxwalk.cochain import coboundary, coboundary_space

    tetra = list(complete_complex(4).triangles)
    shifted = [(u + 4, v + 4, w + 4) for (u, v, w) in tetra]
    X = build_from_triangles(tetra + shifted)
    cert = certify_exact(X)
    assert not cert.connected and not cert.mu_vacuous
    assert cert.mu == Fraction(1, 2)  # one component out of 8 vertices
    dim0 = cert.dimensions[0]
    w = dim0.mu_witness
    assert coboundary(X, w).members == frozenset()
    assert not coboundary_space(X, 0).contains(w)
    assert Fraction(len(w), X.n_vertices) == dim0.mu == cert.mu
    assert cert.dimensions[1].mu is None  # both components have trivial cohomology


def test_certificate_soundness_on_random_subsets():
    # 1000 seeded subsets per dimension: no ratio below the certified minimum
    from hdxwalk.cochain import coboundary

    cert = certify_exact(K5)
    rng = SplitMix64(99)
    for report in cert.dimensions:
        i = report.dimension
        count = K5.n_vertices if i == 0 else K5.n_edges
        k_i = (4, 3)[i]
        z = cocycle_space(K5, i)
        for _ in range(1000):
            S = mask_to_chain(i, rng.randrange(1 << count))
            d = coboundary(K5, S)
            if not d.members:
                continue
            dist, _ = distance_to_space(S, z)
            assert Fraction(len(d), k_i * dist) >= report.epsilon_cosystolic


def test_cosystolic_at_least_coboundary_constant():
    for X in (K4, K5):
        cert = certify_exact(X)
        assert cert.epsilon_cosystolic >= cert.epsilon_coboundary


def test_dist_to_z_at_most_dist_to_b_exhaustive_k4():
    from hdxwalk.cochain import coboundary_space

    z = cocycle_space(K4, 1)
    b = coboundary_space(K4, 1)
    for mask in range(1 << K4.n_edges):
        F = mask_to_chain(1, mask)
        dz, _ = distance_to_space(F, z)
        db, _ = distance_to_space(F, b)
        assert dz <= db


def test_certify_capacity_error():
    with pytest.raises(CapacityError):
        certify_exact(complete_complex(8))


def test_certify_degenerate_without_triangles():
    with pytest.raises(DegenerateComplexError):
        certify_exact(random_complex(4, 0.0, seed=0))


def test_certify_requires_regularity():
    with pytest.raises(RegularityError):
        certify_exact(build_from_triangles([(0, 1, 2)], [(0, 3)]))


# --- fatness constant and partition -----------------------------------------


def test_fatness_constant_values():
    assert abs(fatness_constant(0.0) - (1 + math.sqrt(33)) / 8) <= 1e-12
    assert abs(fatness_constant(-0.25) - (1 + math.sqrt(129)) / 16) <= 1e-12
    assert abs(fatness_constant(-1 / 3) - 0.75) <= 1e-12


def test_fatness_constant_rejects_boundary():
    with pytest.raises(DomainError):
        fatness_constant(0.5)
    # approaching the boundary the value tends to 1
    assert fatness_constant(0.5 - 1e-12) == pytest.approx(1.0, abs=1e-9)


def test_fatness_constant_identity():
    # lambda2 = 2*eta - 1/eta - 1/2 across the accepted range
    for j in range(100):
        lam = -1.0 + 1.49 * j / 99.0
        eta = fatness_constant(lam)
        assert abs(lam - (2 * eta - 1 / eta - 0.5)) <= 1e-12


def test_fatness_partition_empty_chain():
    part = fatness_partition(K4, Chain.empty(1), 0.843)
    assert part.non_fat == (0, 1, 2, 3)
    assert part.fat == () and part.semi_fat == ()


def test_fatness_partition_full_edge_set():
    F = Chain.of(1, range(K4.n_edges))
    part = fatness_partition(K4, F, 0.843)
    assert part.fat == (0, 1, 2, 3)


def test_fatness_partition_star():
    F = edge_chain(K4, (0, 1), (0, 2), (0, 3))
    part = fatness_partition(K4, F, 0.843)
    assert part.fat == (0,)
    assert part.semi_fat == ()
    assert part.non_fat == (1, 2, 3)


def test_fatness_partition_semi_fat_case():
    # k0 = 4 on K5: a vertex with 3 of its 4 edges is semi-fat for eta ~ 0.772
    eta = fatness_constant(normalized_spectrum(complete_graph(5)).lambda2)
    F = edge_chain(K5, (0, 1), (0, 2), (0, 3))
    part = fatness_partition(K5, F, eta)
    assert 0 in part.semi_fat


def test_fatness_partition_is_partition_and_recomputable():
    from hdxwalk.cochain import local_view

    rng = SplitMix64(5)
    for _ in range(50):
        F = mask_to_chain(1, rng.randrange(1 << K5.n_edges))
        part = fatness_partition(K5, F, 0.8)
        combined = sorted(part.fat + part.semi_fat + part.non_fat)
        assert combined == list(range(K5.n_vertices))
        for v in range(K5.n_vertices):
            size = len(local_view(K5, F, v))
            if size > part.eta * 4:
                assert v in part.fat
            elif 2 * size > 4:
                assert v in part.semi_fat
            else:
                assert v in part.non_fat


def test_fatness_partition_rejects_bad_eta():
    with pytest.raises(DomainError):
        fatness_partition(K4, Chain.empty(1), 0.5)
    with pytest.raises(DomainError):
        fatness_partition(K4, Chain.empty(1), 1.0)


# --- outgoing-edges identity -------------------------------------------------


def test_outgoing_identity_empty():
    r = outgoing_edges_identity(K4, Chain.empty(1))
    assert (r.lhs, r.rhs) == (0, 0)


def test_outgoing_identity_single_edge():
    r = outgoing_edges_identity(K4, edge_chain(K4, (0, 1)))
    assert (r.lhs, r.rhs) == (4, 4)


def test_outgoing_identity_full_edge_set():
    r = outgoing_edges_identity(K4, Chain.of(1, range(K4.n_edges)))
    assert (r.lhs, r.rhs) == (0, 0)


def test_outgoing_identity_exhaustive():
    for X in (K4, K5):
        for mask in range(1 << X.n_edges):
            r = outgoing_edges_identity(X, mask_to_chain(1, mask))
            assert r.lhs == r.rhs


def test_outgoing_identity_on_random_complexes():
    for seed in range(3):
        X = random_complex(6, 0.5, seed=seed)
        rng = SplitMix64(seed)
        for _ in range(200):
            F = mask_to_chain(1, rng.randrange(1 << X.n_edges))
            r = outgoing_edges_identity(X, F)
            assert r.lhs == r.rhs


# --- distance formula --------------------------------------------------------


def test_distance_formula_single_edge():
    report = distance_formula_audit(K4, edge_chain(K4, (0, 1)))
    assert report.applicable and report.preconditions.met
    assert report.passes is True
    entry = report.entries[0]
    assert (entry.local_view_size, entry.distance, entry.formula_value) == (1, 1, 1)


def test_distance_formula_broken_star():
    report = distance_formula_audit(K4, edge_chain(K4, (0, 2), (0, 3)))
    assert report.passes is True
    assert report.entries[0].distance == 1
    assert report.entries[0].formula_value == 1  # min(2, 3 - 2)


def test_distance_formula_empty_is_informational():
    report = distance_formula_audit(K4, Chain.empty(1))
    assert not report.applicable
    assert report.passes is None
    assert all(e.distance == 0 and e.formula_value == 0 for e in report.entries)


def test_distance_formula_exhaustive_k4_k5():
    for X in (K4, K5):
        mu = certify_exact(X).mu
        for mask in range(1, (1 << X.n_edges) - 1):
            report = distance_formula_audit(X, mask_to_chain(1, mask), mu=mu)
            assert report.passes is True, mask


# --- local-view bounds --------------------------------------------------------


def test_local_view_bounds_empty_chain():
    cert = certify_exact(K4)
    eta = fatness_constant(-1 / 3)
    report = local_view_bounds_audit(K4, Chain.empty(1), cert.epsilon_cosystolic, eta)
    assert report.passes is True  # every vertex non-fat with zero view, 0 >= 0


def test_local_view_bounds_single_edge():
    cert = certify_exact(K4)
    eta = fatness_constant(-1 / 3)
    report = local_view_bounds_audit(K4, edge_chain(K4, (0, 1)), cert.epsilon_cosystolic, eta)
    assert report.passes is True
    by_vertex = {e.vertex: e for e in report.entries}
    assert by_vertex[0].category == "non_fat"
    assert by_vertex[0].coboundary_size == 2


def test_local_view_bounds_exhaustive():
    for X in (K4, K5):
        cert = certify_exact(X)
        lam = normalized_spectrum(underlying_graph(X)).lambda2
        eta = fatness_constant(lam)
        for mask in range(1 << X.n_edges):
            report = local_view_bounds_audit(
                X, mask_to_chain(1, mask), cert.epsilon_cosystolic, eta, mu=cert.mu
            )
            assert report.passes is True, mask


# --- large cuts ---------------------------------------------------------------


def test_large_cuts_k4():
    result = large_cuts_audit(complete_graph(4))
    assert result.min_cut == 3 == result.k
    assert result.precondition_met and result.passes


def test_large_cuts_k5():
    result = large_cuts_audit(complete_graph(5))
    assert result.min_cut == 4 == result.k


def test_large_cuts_witness_achieves_minimum():
    result = large_cuts_audit(complete_graph(5))
    inside = set(result.witness)
    G = complete_graph(5)
    cut = sum(1 for u in inside for v in G.adjacency[u] if v not in inside)
    assert cut == result.min_cut


def test_large_cuts_single_vertex_cut_is_k():
    # every k-regular graph has a vertex cut of exactly k, so min_cut <= k always
    for G in (complete_graph(4), complete_graph(6)):
        assert large_cuts_audit(G).min_cut <= G.regular_k


def test_large_cuts_rejects_half_gap():
    from hdxwalk.graphs import cycle_graph

    with pytest.raises(DomainError):
        large_cuts_audit(cycle_graph(6))  # lambda2 = 1/2


def test_large_cuts_downgrades_when_too_small():
    # C5: lambda2 = cos(72 deg) ~ 0.309, so the size bound is ~10.5 > 5
    from hdxwalk.graphs import cycle_graph

    result = large_cuts_audit(cycle_graph(5))
    assert not result.precondition_met
    assert result.asserted is None
    assert result.min_cut == 2 and result.passes  # holds anyway, informationally


def test_large_cuts_capacity():
    from hdxwalk.graphs import cycle_graph

    with pytest.raises(CapacityError):
        large_cuts_audit(cycle_graph(27))


# --- sum of coboundaries -------------------------------------------------------


def test_sum_coboundaries_empty():
    cert = certify_exact(K4)
    result = sum_coboundaries_audit(K4, Chain.empty(1), cert.epsilon_cosystolic)
    assert result.lhs == 0 and result.rhs_bound == 0 and result.passes


def test_sum_coboundaries_single_edge_value():
    # lambda2 = -1/3 makes the bracket exactly 2/3, so the bound is eps/3
    cert = certify_exact(K4)
    result = sum_coboundaries_audit(K4, edge_chain(K4, (0, 1)), cert.epsilon_cosystolic)
    assert result.lhs == 4
    assert result.rhs_bound == pytest.approx(float(cert.epsilon_cosystolic) / 3, abs=1e-12)
    assert result.passes


def test_sum_coboundaries_rejects_large_sets():
    cert = certify_exact(K4)
    with pytest.raises(DomainError):
        sum_coboundaries_audit(K4, Chain.of(1, range(4)), cert.epsilon_cosystolic)


def test_sum_coboundaries_exhaustive_k4_k5():
    for X in (K4, K5):
        eps = certify_exact(X).epsilon_cosystolic
        for mask in range(1 << X.n_edges):
            if 2 * mask.bit_count() > X.n_edges:
                continue
            result = sum_coboundaries_audit(X, mask_to_chain(1, mask), eps)
            assert result.passes, mask


def test_sum_local_coboundaries_matches_direct():
    from hdxwalk.cochain import coboundary_edges, local_view

    rng = SplitMix64(17)
    for _ in range(100):
        F = mask_to_chain(1, rng.randrange(1 << K5.n_edges))
        direct = sum(
            len(coboundary_edges(K5, local_view(K5, F, v))) for v in range(K5.n_vertices)
        )
        assert sum_local_coboundaries(K5, F) == direct


# --- mixing rate bound ----------------------------------------------------------


def test_rate_bound_zero_epsilon():
    assert mixing_rate_bound(0, 0.0) == 1.0


def test_rate_bound_near_half_gap():
    assert mixing_rate_bound(1, 0.5 - 1e-13) == pytest.approx(1.0, abs=1e-9)


def test_rate_bound_frozen_value():
    # epsilon=1, lambda2=0: 1 - (3*sqrt(33) - 17)**2 / 128
    want = 1.0 - (3 * math.sqrt(33) - 17) ** 2 / 128
    assert mixing_rate_bound(1, 0.0) == pytest.approx(want, abs=1e-15)
    assert 0.99957 < want < 0.99958


def test_rate_bound_monotone_in_epsilon():
    for lam in (-1 / 3, 0.0, 0.3):
        values = [mixing_rate_bound(Fraction(j, 50), lam) for j in range(1, 51)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_rate_bound_in_unit_interval():
    for lam in (-0.9, -1 / 3, 0.0, 0.49):
        for eps in (Fraction(1, 10), Fraction(1, 2), Fraction(1)):
            rate = mixing_rate_bound(eps, lam)
            assert 0.0 < rate < 1.0


def test_rate_bound_domain_errors():
    with pytest.raises(DomainError):
        mixing_rate_bound(1, 0.5)
    with pytest.raises(DomainError):
        mixing_rate_bound(-0.1, 0.0)
