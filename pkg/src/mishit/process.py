"""Average independence number over random vertex subsets, and the
sequential-deletion argument that bounds it.

alpha'(G) is the expectation of alpha(G[W]) over a uniform random subset W
(all 2^n subsets equally likely, i.e. an independent fair coin per vertex),
divided by n.  Exact values come from a dynamic program over subsets,
alpha(W) = max(alpha(W - v), 1 + alpha(W - N[v])) for the lowest vertex v of
W; beyond 20 vertices a seeded Monte Carlo estimator reports a normal 95%
confidence interval.

The deletion process removes uniform random vertices one at a time from V
down to a target size.  With alpha(G) = (1/4 + eps)n, a step is successful
when alpha has already dropped below theta = (1/4 + eps - eps^2/2)n or the
removal strictly decreases alpha.  Past step i0 = floor((1/2 - eps)n), while
alpha stays at or above theta, the kernel of the current graph occupies at
least an eps fraction of its vertices, so each step succeeds with
probability at least eps; enough successes force the final alpha below
theta.  That mechanism yields the bound alpha'(G) <= 1/4 + eps - eps^2/3,
whose finite-n surrogate this module evaluates and reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, VertexSet, alpha, alpha_induced
from .hajnal import kernel_corona
from .parallel import parallel_map

EXACT_MAX_N = 20
MC_BLOCK = 512


@dataclass(frozen=True)
class AlphaPrimeEstimate:
    """Estimate of alpha'(G).  Exact means a rational with denominator n*2^n."""

    mean: Fraction | float
    exact: bool
    samples: int | None = None
    stderr: float | None = None
    ci95: tuple[float, float] | None = None

    @property
    def mean_float(self) -> float:
        return float(self.mean)

    def to_json_dict(self) -> dict:
        return {
            "mean": float(self.mean),
            "mean_fraction": str(self.mean) if self.exact else None,
            "exact": self.exact,
            "samples": self.samples,
            "stderr": self.stderr,
            "ci95": list(self.ci95) if self.ci95 is not None else None,
        }


def alpha_prime_exact(g: Graph) -> AlphaPrimeEstimate:
    """Exact alpha'(G) by the subset dynamic program; needs n <= 20."""
    n = g.n
    if not 1 <= n <= EXACT_MAX_N:
        raise ValueError(f"exact subset DP supports 1 <= n <= {EXACT_MAX_N}, got n={n}")
    closed = [g.adj[v] | (1 << v) for v in range(n)]
    table = np.zeros(1 << n, dtype=np.uint8)
    for w in range(1, 1 << n):
        v = (w & -w).bit_length() - 1
        skip = table[w & (w - 1)]
        take = 1 + table[w & ~closed[v]]
        table[w] = take if take > skip else skip
    total = int(table.sum(dtype=np.int64))
    return AlphaPrimeEstimate(mean=Fraction(total, (1 << n) * n), exact=True)


def _mc_block(args) -> list[int]:
    g, seed, block_index, count = args
    rng = np.random.default_rng([seed, block_index])
    nbytes = (g.n + 7) // 8
    mask = (1 << g.n) - 1
    return [
        alpha_induced(g, int.from_bytes(rng.bytes(nbytes), "little") & mask)
        for _ in range(count)
    ]


def alpha_prime_mc(g: Graph, samples: int, seed, workers: int = 1) -> AlphaPrimeEstimate:
    """Monte Carlo alpha'(G): independent fair coin per vertex, seeded.

    Sample j lives in block j // 512 whose generator is seeded (seed, block),
    so results are identical for any worker count.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if g.n < 1:
        raise ValueError("alpha' is undefined on the empty graph")
    blocks = []
    remaining = samples
    index = 0
    while remaining > 0:
        take = min(MC_BLOCK, remaining)
        blocks.append((g, seed, index, take))
        remaining -= take
        index += 1
    values = [v for block in parallel_map(_mc_block, blocks, workers) for v in block]
    arr = np.array(values, dtype=np.float64)
    mean = float(arr.mean()) / g.n
    if samples == 1:
        return AlphaPrimeEstimate(mean=mean, exact=False, samples=1, stderr=None, ci95=None)
    stderr = float(arr.std(ddof=1)) / math.sqrt(samples) / g.n
    ci = (mean - 1.96 * stderr, mean + 1.96 * stderr)
    return AlphaPrimeEstimate(mean=mean, exact=False, samples=samples, stderr=stderr, ci95=ci)


# ---------------------------------------------------------------------------
# deletion process
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProcessParams:
    """Finite-n surrogates for the deletion argument.

    i0 = floor((1/2 - eps) n), threshold theta = (1/4 + eps - eps^2/2) n,
    with all o(1) terms dropped; the monitored window is i0 < i <= n - target_size.
    """

    epsilon: Fraction
    n: int
    i0: int
    target_size: int
    threshold: Fraction

    def __post_init__(self):
        if not 0 < self.epsilon < Fraction(1, 4):
            raise ValueError(f"epsilon must lie strictly in (0, 1/4), got {self.epsilon}")
        if not 0 <= self.target_size < self.n:
            raise ValueError("target size must satisfy 0 <= target_size < n")
        if not self.i0 < self.n - self.target_size:
            raise ValueError(
                f"empty monitoring window: i0={self.i0} >= n - target_size={self.n - self.target_size}"
            )

    @classmethod
    def for_graph(cls, n: int, epsilon: Fraction, target_size: int | None = None) -> ProcessParams:
        epsilon = Fraction(epsilon)
        if target_size is None:
            target_size = round(n / 2)
        i0 = math.floor((Fraction(1, 2) - epsilon) * n)
        threshold = (Fraction(1, 4) + epsilon - epsilon * epsilon / 2) * n
        return cls(epsilon=epsilon, n=n, i0=i0, target_size=target_size, threshold=threshold)

    @property
    def window(self) -> int:
        """Number of monitored steps n - target_size - i0."""
        return self.n - self.target_size - self.i0

    @property
    def required_successes(self) -> int:
        """ceil(eps^2 n / 2) successes force the final alpha below threshold."""
        return math.ceil(self.epsilon * self.epsilon * self.n / 2)


@dataclass(frozen=True)
class ProcessStep:
    i: int
    removed: int
    alpha: int
    successful: bool
    kernel_size: int | None


@dataclass(frozen=True)
class ProcessTrace:
    params: ProcessParams
    seed: object
    initial_alpha: int
    steps: tuple[ProcessStep, ...]

    @property
    def final_alpha(self) -> int:
        return self.steps[-1].alpha if self.steps else self.initial_alpha

    def alphas_before(self) -> list[int]:
        """alpha(G_{i-1}) for each step i, aligned with ``steps``."""
        prev = [self.initial_alpha]
        prev.extend(step.alpha for step in self.steps[:-1])
        return prev

    def success_count_in_window(self) -> int:
        lo = self.params.i0
        hi = self.params.n - self.params.target_size
        return sum(1 for s in self.steps if lo < s.i <= hi and s.successful)


def run_deletion_process(g: Graph, params: ProcessParams, seed) -> ProcessTrace:
    """Remove uniform random vertices down to the target size, tracking alpha.

    For every monitored step whose predecessor graph still has alpha >=
    threshold, the kernel size of that predecessor is recorded so the
    Hajnal-based fraction argument can be checked on the trace.
    """
    if params.n != g.n:
        raise ValueError(f"params built for n={params.n}, graph has n={g.n}")
    rng = np.random.default_rng(seed)
    current = (1 << g.n) - 1
    cur_alpha = alpha(g)
    initial_alpha = cur_alpha
    steps = []
    for i in range(1, g.n - params.target_size + 1):
        vertices = VertexSet(g.n, current).members()
        victim = vertices[int(rng.integers(0, len(vertices)))]
        kernel_size = None
        if i > params.i0 and cur_alpha >= params.threshold:
            kernel_size = len(kernel_corona(g, within=VertexSet(g.n, current)).kernel)
        current &= ~(1 << victim)
        new_alpha = alpha_induced(g, current)
        successful = cur_alpha < params.threshold or new_alpha < cur_alpha
        steps.append(
            ProcessStep(
                i=i,
                removed=victim,
                alpha=new_alpha,
                successful=successful,
                kernel_size=kernel_size,
            )
        )
        cur_alpha = new_alpha
    return ProcessTrace(params=params, seed=seed, initial_alpha=initial_alpha, steps=tuple(steps))


def _trace_unit(args) -> ProcessTrace:
    g, params, seed, index = args
    return run_deletion_process(g, params, [seed, index])


def run_deletion_traces(
    g: Graph, params: ProcessParams, count: int, seed: int, workers: int = 1
) -> list[ProcessTrace]:
    """``count`` independent traces; trace j is seeded (seed, j)."""
    units = [(g, params, seed, j) for j in range(count)]
    return parallel_map(_trace_unit, units, workers)


def _binomial_tail_at_least(n_trials: int, p: Fraction, k: int) -> Fraction:
    if k <= 0:
        return Fraction(1)
    if k > n_trials:
        return Fraction(0)
    q = 1 - p
    return sum(
        Fraction(math.comb(n_trials, j)) * p**j * q ** (n_trials - j)
        for j in range(k, n_trials + 1)
    )


@dataclass(frozen=True)
class ProcessStats:
    """Aggregate over traces of one parameter set.

    ``success_frequency`` conditions on monitored steps whose predecessor
    alpha was still at or above the threshold; the kernel-fraction argument
    promises at least eps there.  ``implication_violations`` counts traces
    with enough successes whose final alpha nevertheless stayed above the
    threshold (must be zero).  The implication is only guaranteed when the
    trace starts with alpha <= (1/4 + eps) n, so traces run under an eps
    override inconsistent with the graph are excluded from that count.
    """

    traces: int
    window: int
    required_successes: int
    success_counts: tuple[int, ...]
    mean_successes: float
    binomial_tail: float
    fraction_reaching_required: float
    fraction_final_below: float
    qualifying_steps: int
    qualifying_successes: int
    success_frequency: float | None
    frequency_stderr: float | None
    frequency_ok: bool
    implication_violations: int

    def to_json_dict(self) -> dict:
        return {
            "traces": self.traces,
            "window": self.window,
            "required_successes": self.required_successes,
            "mean_successes": self.mean_successes,
            "binomial_tail": self.binomial_tail,
            "fraction_reaching_required": self.fraction_reaching_required,
            "fraction_final_below": self.fraction_final_below,
            "qualifying_steps": self.qualifying_steps,
            "qualifying_successes": self.qualifying_successes,
            "success_frequency": self.success_frequency,
            "frequency_stderr": self.frequency_stderr,
            "frequency_ok": self.frequency_ok,
            "implication_violations": self.implication_violations,
        }


def success_statistics(traces, params: ProcessParams) -> ProcessStats:
    """Empirical behaviour of the monitored window against the binomial model."""
    if not traces:
        raise ValueError("need at least one trace")
    counts = tuple(t.success_count_in_window() for t in traces)
    req = params.required_successes
    lo, hi = params.i0, params.n - params.target_size
    alpha_ceiling = (Fraction(1, 4) + params.epsilon) * params.n
    qual_steps = 0
    qual_succ = 0
    violations = 0
    for t in traces:
        before = t.alphas_before()
        for step, prev_alpha in zip(t.steps, before):
            if lo < step.i <= hi and prev_alpha >= params.threshold:
                qual_steps += 1
                qual_succ += step.successful
        if (
            t.initial_alpha <= alpha_ceiling
            and t.success_count_in_window() >= req
            and t.final_alpha > params.threshold
        ):
            violations += 1
    if qual_steps:
        freq = qual_succ / qual_steps
        stderr = math.sqrt(freq * (1 - freq) / qual_steps)
        freq_ok = freq >= float(params.epsilon) - 3 * stderr
    else:
        freq = None
        stderr = None
        freq_ok = True
    return ProcessStats(
        traces=len(traces),
        window=params.window,
        required_successes=req,
        success_counts=counts,
        mean_successes=sum(counts) / len(counts),
        binomial_tail=float(_binomial_tail_at_least(params.window, params.epsilon, req)),
        fraction_reaching_required=sum(c >= req for c in counts) / len(counts),
        fraction_final_below=sum(t.final_alpha < params.threshold for t in traces) / len(traces),
        qualifying_steps=qual_steps,
        qualifying_successes=qual_succ,
        success_frequency=freq,
        frequency_stderr=stderr,
        frequency_ok=freq_ok,
        implication_violations=violations,
    )


# ---------------------------------------------------------------------------
# the averaged bound
# ---------------------------------------------------------------------------


def alpha_prime_bound(epsilon: Fraction) -> Fraction:
    """The proved ceiling 1/4 + eps - eps^2/3 on alpha'(G) when alpha = (1/4+eps)n."""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < Fraction(1, 4):
        raise ValueError(f"epsilon must lie strictly in (0, 1/4), got {epsilon}")
    return Fraction(1, 4) + epsilon - epsilon * epsilon / 3


@dataclass(frozen=True)
class BoundCheckReport:
    """alpha' against its ceiling for one graph.

    ``holds`` refers to this finite n; the ceiling is proved in the limit of
    many disjoint copies, so a failure here would not refute it and a pass
    does not prove it.  ``statistical`` marks Monte Carlo verdicts (CI upper
    end against the bound).
    """

    n: int
    alpha: int
    epsilon: Fraction
    bound: Fraction
    estimate: AlphaPrimeEstimate
    holds: bool
    statistical: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "epsilon": str(self.epsilon),
            "bound": str(self.bound),
            "bound_float": float(self.bound),
            "estimate": self.estimate.to_json_dict(),
            "holds": self.holds,
            "statistical": self.statistical,
        }


def verify_alpha_prime_bound(
    g: Graph,
    mode: str = "exact",
    seed=None,
    samples: int = 20_000,
    workers: int = 1,
) -> BoundCheckReport:
    """Compute eps from the graph and compare alpha' with 1/4 + eps - eps^2/3."""
    if g.n < 1:
        raise ValueError("empty graph")
    a = alpha(g)
    epsilon = Fraction(a, g.n) - Fraction(1, 4)
    if epsilon <= 0:
        raise ValueError(f"alpha/n = {Fraction(a, g.n)} is not above 1/4")
    if epsilon >= Fraction(1, 4):
        raise ValueError(f"epsilon = {epsilon} is not below 1/4")
    bound = alpha_prime_bound(epsilon)
    if mode == "exact":
        estimate = alpha_prime_exact(g)
        holds = estimate.mean <= bound
        statistical = False
    elif mode == "mc":
        if samples < 2:
            raise ValueError("Monte Carlo verdict needs at least 2 samples")
        estimate = alpha_prime_mc(g, samples, seed, workers=workers)
        holds = estimate.ci95[1] <= float(bound)
        statistical = True
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return BoundCheckReport(
        n=g.n,
        alpha=a,
        epsilon=epsilon,
        bound=bound,
        estimate=estimate,
        holds=holds,
        statistical=statistical,
    )


def export_trace_jsonl(trace: ProcessTrace, path) -> None:
    """One JSON object per step: {i, removed, alpha, success, kernel_size?}."""
    with open(path, "w") as fh:
        for step in trace.steps:
            obj = {
                "i": step.i,
                "removed": step.removed,
                "alpha": step.alpha,
                "success": step.successful,
            }
            if step.kernel_size is not None:
                obj["kernel_size"] = step.kernel_size
            fh.write(json.dumps(obj, sort_keys=True) + "\n")
