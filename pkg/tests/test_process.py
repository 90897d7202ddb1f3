"""alpha', the deletion process, and the averaged bound."""

import json
from fractions import Fraction

import pytest

from conftest import oracle_is_independent, seeded_graphs
from mishit.families import build_shift_graph
from mishit.graph import Graph, alpha
from mishit.process import (
    ProcessParams,
    alpha_prime_bound,
    alpha_prime_exact,
    alpha_prime_mc,
    export_trace_jsonl,
    run_deletion_process,
    run_deletion_traces,
    success_statistics,
    verify_alpha_prime_bound,
)

G2 = build_shift_graph(2)[0]
G2_ALPHA_PRIME = Fraction(6359, 24576)  # frozen from the subset-sum oracle below


# --- exact estimator --------------------------------------------------------


def test_single_vertex():
    assert alpha_prime_exact(Graph.empty(1)).mean == Fraction(1, 2)


def test_edgeless():
    assert alpha_prime_exact(Graph.empty(7)).mean == Fraction(1, 2)


def test_k2():
    est = alpha_prime_exact(Graph.from_edges(2, [(0, 1)]))
    assert est.mean == Fraction(3, 8)
    assert est.exact


def oracle_alpha_prime(g):
    """Sum of brute-force alpha over every subset; quadratic in 2^n, keep n small."""
    total = 0
    for bits in range(1 << g.n):
        total += max(
            (cand.bit_count()
             for cand in range(1 << g.n)
             if cand & ~bits == 0 and oracle_is_independent(g, cand)),
            default=0,
        )
    return Fraction(total, (1 << g.n) * g.n)


def test_dp_matches_subset_oracle():
    path4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert alpha_prime_exact(path4).mean == oracle_alpha_prime(path4)
    for g in seeded_graphs(8, seed=76, n_lo=2, n_hi=8):
        assert alpha_prime_exact(g).mean == oracle_alpha_prime(g)


def test_g2_frozen_value():
    # constant cross-derived from an independent implementation of the same sum
    assert alpha_prime_exact(G2).mean == G2_ALPHA_PRIME


def test_exact_rejects_out_of_range():
    with pytest.raises(ValueError):
        alpha_prime_exact(Graph.empty(0))
    with pytest.raises(ValueError):
        alpha_prime_exact(Graph.empty(21))


def test_linearity_under_disjoint_union():
    for g in seeded_graphs(10, seed=77, n_lo=2, n_hi=8):
        double = Graph.from_edges(
            2 * g.n, [(u, v) for u, v in g.edges()] + [(u + g.n, v + g.n) for u, v in g.edges()]
        )
        assert alpha_prime_exact(double).mean == alpha_prime_exact(g).mean


def test_alpha_prime_at_most_alpha_over_n():
    for g in seeded_graphs(15, seed=78, n_lo=1, n_hi=10):
        assert alpha_prime_exact(g).mean <= Fraction(alpha(g), g.n)


# --- monte carlo ------------------------------------------------------------


def test_mc_deterministic_and_covers_exact():
    est = alpha_prime_mc(G2, samples=10_000, seed=31)
    again = alpha_prime_mc(G2, samples=10_000, seed=31)
    assert est == again
    lo, hi = est.ci95
    assert lo <= float(G2_ALPHA_PRIME) <= hi
    parallel = alpha_prime_mc(G2, samples=10_000, seed=31, workers=2)
    assert parallel == est


def test_mc_single_sample_has_no_stderr():
    est = alpha_prime_mc(G2, samples=1, seed=4)
    assert est.samples == 1
    assert est.stderr is None and est.ci95 is None


def test_mc_edgeless_near_half():
    est = alpha_prime_mc(Graph.empty(10), samples=4_000, seed=9)
    assert est.ci95[0] <= 0.5 <= est.ci95[1]


def test_mc_rejects_bad_samples():
    with pytest.raises(ValueError):
        alpha_prime_mc(G2, samples=0, seed=1)


# --- process ----------------------------------------------------------------


def test_params_for_g2():
    params = ProcessParams.for_graph(12, Fraction(1, 12))
    assert params.i0 == 5
    assert params.target_size == 6
    assert params.threshold == Fraction(95, 24)
    assert params.window == 1
    assert params.required_successes == 1


def test_params_validation():
    with pytest.raises(ValueError):
        ProcessParams.for_graph(12, Fraction(1, 4))
    with pytest.raises(ValueError):
        ProcessParams.for_graph(12, Fraction(0))
    with pytest.raises(ValueError):
        ProcessParams.for_graph(12, Fraction(1, 12), target_size=12)
    with pytest.raises(ValueError):
        # i0 = 4 >= n - target_size = 2
        ProcessParams.for_graph(10, Fraction(1, 24), target_size=8)


def trace_invariants(trace, params):
    prev = trace.initial_alpha
    for step in trace.steps:
        assert 0 <= prev - step.alpha <= 1
        assert step.successful == (prev < params.threshold or step.alpha < prev)
        if step.kernel_size is not None:
            assert step.i > params.i0
            assert prev >= params.threshold
            vertices_before = params.n - step.i + 1
            assert step.kernel_size >= 2 * prev - vertices_before
        prev = step.alpha


def test_edgeless_process_every_step_successful():
    n = 10
    g = Graph.empty(n)
    params = ProcessParams.for_graph(n, Fraction(1, 8))
    trace = run_deletion_process(g, params, seed=3)
    assert len(trace.steps) == n - params.target_size
    assert all(s.successful for s in trace.steps)  # alpha drops every removal
    assert trace.final_alpha == params.target_size
    trace_invariants(trace, params)


def test_g2_trace_invariants_and_determinism():
    params = ProcessParams.for_graph(12, Fraction(1, 12))
    traces = run_deletion_traces(G2, params, 40, seed=5)
    for trace in traces:
        trace_invariants(trace, params)
    again = run_deletion_traces(G2, params, 40, seed=5, workers=2)
    assert traces == again


def test_success_statistics_g2():
    params = ProcessParams.for_graph(12, Fraction(1, 12))
    traces = run_deletion_traces(G2, params, 60, seed=17)
    stats = success_statistics(traces, params)
    assert stats.traces == 60
    assert stats.implication_violations == 0
    assert stats.frequency_ok
    assert stats.binomial_tail == pytest.approx(1 / 12)
    assert 0.0 <= stats.fraction_final_below <= 1.0


def test_success_statistics_edgeless_window_always_full():
    n = 10
    g = Graph.empty(n)
    params = ProcessParams.for_graph(n, Fraction(1, 8))
    traces = run_deletion_traces(g, params, 10, seed=2)
    stats = success_statistics(traces, params)
    assert stats.success_counts == tuple([params.window] * 10)


def test_trace_jsonl_schema(tmp_path):
    params = ProcessParams.for_graph(12, Fraction(1, 12))
    trace = run_deletion_process(G2, params, seed=8)
    path = tmp_path / "trace.jsonl"
    export_trace_jsonl(trace, path)
    lines = path.read_text().splitlines()
    assert len(lines) == len(trace.steps)
    for line, step in zip(lines, trace.steps):
        obj = json.loads(line)
        assert obj["i"] == step.i
        assert obj["removed"] == step.removed
        assert obj["alpha"] == step.alpha
        assert obj["success"] == step.successful
        assert ("kernel_size" in obj) == (step.kernel_size is not None)


# --- the bound --------------------------------------------------------------


def test_bound_values():
    assert alpha_prime_bound(Fraction(1, 12)) == Fraction(143, 432)
    assert alpha_prime_bound(Fraction(1, 5)) == Fraction(1, 4) + Fraction(1, 5) - Fraction(1, 75)
    # approaches 1/4 from above as eps -> 0
    assert abs(alpha_prime_bound(Fraction(1, 10**6)) - Fraction(1, 4)) < Fraction(1, 10**5)
    for bad in (0, Fraction(1, 4), Fraction(-1, 8), Fraction(3, 4)):
        with pytest.raises(ValueError):
            alpha_prime_bound(bad)


def test_verify_bound_g2_exact():
    report = verify_alpha_prime_bound(G2)
    assert report.epsilon == Fraction(1, 12)
    assert report.bound == Fraction(143, 432)
    assert report.estimate.mean == G2_ALPHA_PRIME
    assert report.holds and not report.statistical


def test_verify_bound_g2_mc():
    report = verify_alpha_prime_bound(G2, mode="mc", seed=12, samples=4_000)
    assert report.statistical
    assert report.holds  # CI upper end is far below 143/432


def test_verify_bound_rejects_out_of_range_alpha():
    with pytest.raises(ValueError):
        verify_alpha_prime_bound(Graph.empty(6))  # alpha/n = 1
    with pytest.raises(ValueError):
        verify_alpha_prime_bound(Graph.complete(5))  # alpha/n = 1/5


def test_disjoint_double_copy_keeps_epsilon():
    double = Graph.from_edges(
        24, [(u, v) for u, v in G2.edges()] + [(u + 12, v + 12) for u, v in G2.edges()]
    )
    report = verify_alpha_prime_bound(double, mode="mc", seed=3, samples=400)
    assert report.alpha == 8
    assert report.epsilon == Fraction(1, 12)
    assert report.bound == Fraction(143, 432)
