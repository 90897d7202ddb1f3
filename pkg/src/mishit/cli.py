"""Command-line front door.

Subcommands construct the graph families, run the exact solvers and the
stochastic experiments, and emit human tables on stdout plus optional JSON /
CSV artifacts.  Every stochastic command requires an explicit --seed and is
bit-reproducible: identical configuration and seed give byte-identical
artifacts for any --workers value.  The exit code is 0 only when every check
the command ran came out clean; progress chatter goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import families, hajnal, hitting, process
from .graph import alpha, enumerate_mis, is_independent, load_graph, maximum_independent_set, save_graph


def _write_family_json(path: str, family) -> None:
    """Families export as a JSON list of sorted vertex arrays."""
    with open(path, "w") as fh:
        json.dump([list(s.members()) for s in family.sets], fh, sort_keys=True)
        fh.write("\n")


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _print_report(report: dict, checks: list[tuple[str, bool]]) -> None:
    for key, value in report.items():
        print(f"{key}: {value}")
    for label, ok in checks:
        print(f"[{'PASS' if ok else 'FAIL'}] {label}")


_NON_CONFIG_KEYS = {"func", "json", "csv", "out", "trace_jsonl", "graph_out", "family_out"}  # artifact paths are not experiment config


def _emit(args, report: dict, checks: list[tuple[str, bool]], csv_spec=None) -> int:
    payload = {
        "config": {
            k: str(v) if isinstance(v, Fraction) else v
            for k, v in vars(args).items()
            if k not in _NON_CONFIG_KEYS
        },
        "report": report,
        "checks": {label: ok for label, ok in checks},
    }
    _print_report(report, checks)
    if getattr(args, "json", None):
        _write_json(args.json, payload)
    if csv_spec is not None and getattr(args, "csv", None):
        header, rows = csv_spec
        _write_csv(args.csv, header, rows)
    return 0 if all(ok for _, ok in checks) else 1


def _require_seed(args) -> None:
    if args.seed is None:
        raise SystemExit("this command is stochastic: an explicit --seed is required")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

SHIFT_EXACT_MAX_K = 4


def cmd_shift(args) -> int:
    if args.k < 1:
        raise SystemExit("--k must be a positive integer")
    if args.k > SHIFT_EXACT_MAX_K:
        raise SystemExit(
            f"exact hitting numbers are gated at k <= {SHIFT_EXACT_MAX_K}; "
            f"largest feasible: --k {SHIFT_EXACT_MAX_K}"
        )
    g, spec = families.build_shift_graph(args.k)
    a = alpha(g)
    family = enumerate_mis(g, cap=args.cap)
    structural = families.shift_mis_family(spec)
    same_family = {s.bits for s in family.sets} == {s.bits for s in structural.sets}
    result = hitting.min_hitting_set(structural)
    cycle = families.shift_cycle_hitting_set(spec)
    cycle_hits = all(not s.isdisjoint(cycle) for s in structural.sets)
    n = spec.n
    n_alt = 2 * args.k * (args.k - 1)  # the 2k(k-1) count variant; both ratios reported
    report = {
        "k": args.k,
        "n": n,
        "alpha": a,
        "mis_count": len(family),
        "h": result.size,
        "hitting_set": [spec.index_to_pair(v) for v in result.set],
        "cycle_certificate": [spec.index_to_pair(v) for v in cycle],
        "sqrt_n_over_2": math.sqrt(n / 2),
        "sqrt_n_over_2_alt_count": math.sqrt(n_alt / 2) if n_alt > 0 else 0.0,
    }
    checks = [
        ("alpha equals k^2", a == args.k**2),
        ("family complete with C(2k,k) members", family.complete and len(family) == math.comb(2 * args.k, args.k)),
        ("enumerated family equals partition family", same_family),
        ("h equals k+1", result.size == args.k + 1),
        ("cycle certificate has size k+1 and hits every set", len(cycle) == args.k + 1 and cycle_hits),
        ("h exceeds sqrt(n/2)", result.size > math.sqrt(n / 2)),
    ]
    if args.graph_out:
        save_graph(g, args.graph_out)
    if args.family_out:
        _write_family_json(args.family_out, structural)
    csv_spec = (
        ["k", "n", "alpha", "mis_count", "h", "sqrt_n_over_2", "sqrt_n_over_2_alt_count"],
        [[args.k, n, a, len(family), result.size,
          report["sqrt_n_over_2"], report["sqrt_n_over_2_alt_count"]]],
    )
    return _emit(args, report, checks, csv_spec)


HAMMING_EXACT_MAX_M = 6


def cmd_hamming(args) -> int:
    try:
        spec = families.HammingSpec(args.m, args.t, constrained=not args.force)
    except ValueError as exc:
        raise SystemExit(str(exc))
    kle = families.kleitman_alpha(spec)
    report = {
        "m": args.m,
        "t": args.t,
        "n": spec.n,
        "kleitman_alpha": kle,
        "ball_radius": spec.ball_radius,
        "discrepancy_lower_bound": hitting.discrepancy_lower_bound(args.t),
        "kneser_lower_bound": hitting.kneser_lower_bound(spec),
    }
    checks: list[tuple[str, bool]] = []
    if args.m <= HAMMING_EXACT_MAX_M:
        g = families.build_hamming_graph(spec)
        a = alpha(g)
        report["alpha_exact"] = a
        checks.append(("exact alpha equals the Kleitman sum", a == kle))
        family = enumerate_mis(g)
        balls = families.hamming_mis_family(spec)
        balls_match = {s.bits for s in family.sets} == {s.bits for s in balls.sets}
        report["mis_count"] = len(family)
        if not args.force:
            checks.append(("MIS family is exactly the 2^m balls", balls_match))
        h_hit = hitting.min_hitting_set(family)
        report["h_exact"] = h_hit.size
        if spec.ball_radius == 0:
            code_size = spec.n  # radius 0 forces the whole space
        elif (spec.n + kle - 1) // kle <= 6:
            # volume bound keeps the direct subset search tractable
            code_size = len(hitting.min_covering_code_search(args.m, spec.ball_radius))
        else:
            code_size = None
        report["min_code_size"] = code_size
        if code_size is not None and balls_match:
            checks.append(("hitting number equals minimum covering-code size", h_hit.size == code_size))
    h0 = hitting.hadamard_prefix_order(args.t)
    if args.m >= h0:
        had = hitting.build_hadamard_covering_code(spec)
        report["hadamard_code_size"] = len(had)
        if args.m <= hitting.SCAN_MAX_M:
            rad = hitting.covering_radius(had)
            report["hadamard_radius"] = rad
            checks.append(("Hadamard code covers at radius m/2 - t", rad <= spec.ball_radius))
    else:
        report["hadamard_code_size"] = None
    if args.graph_out:
        if args.m > families.EXPLICIT_MAX_M:
            raise SystemExit(f"graph export needs m <= {families.EXPLICIT_MAX_M}")
        save_graph(families.build_hamming_graph(spec), args.graph_out)
    if args.family_out:
        if args.m > families.EXPLICIT_MAX_M:
            raise SystemExit(f"family export needs m <= {families.EXPLICIT_MAX_M}")
        _write_family_json(args.family_out, families.hamming_mis_family(spec))
    csv_spec = (
        list(report.keys()),
        [list(report.values())],
    )
    return _emit(args, report, checks, csv_spec)


def cmd_hajnal_corpus(args) -> int:
    rows = []
    exhaustive = hajnal.exhaustive_corpus_check(args.max_n)
    report = {
        "exhaustive_max_n": args.max_n,
        "exhaustive_checked": exhaustive.checked,
        "exhaustive_violations": exhaustive.violations,
    }
    checks = [("no violation among all graphs on <= max_n vertices", exhaustive.ok)]
    if args.csv:
        print("collecting exhaustive CSV rows...", file=sys.stderr)
        rows.extend(hajnal.exhaustive_corpus_rows(args.max_n))
    if args.random > 0:
        _require_seed(args)
        print(f"checking {args.random} random graphs...", file=sys.stderr)
        random_check, random_rows = hajnal.random_corpus_check(
            args.random, seed=args.seed, n_max=args.n_max, workers=args.workers
        )
        report["random_checked"] = random_check.checked
        report["random_violations"] = random_check.violations
        checks.append(("no violation among seeded random graphs", random_check.ok))
        rows.extend(random_rows)
    csv_spec = (["graph_id", "n", "alpha", "kernel_size", "corona_size"], rows)
    return _emit(args, report, checks, csv_spec)


def cmd_alpha_prime(args) -> int:
    g = load_graph(args.graph)
    if args.mode == "mc":
        _require_seed(args)
        estimate = process.alpha_prime_mc(g, args.samples, args.seed, workers=args.workers)
    else:
        estimate = process.alpha_prime_exact(g)
    a = alpha(g)
    report = {
        "n": g.n,
        "alpha": a,
        "mode": args.mode,
        "estimate": estimate.to_json_dict(),
    }
    checks = [("alpha' at most alpha/n", float(estimate.mean) <= a / g.n + 1e-12)]
    epsilon = Fraction(a, g.n) - Fraction(1, 4)
    if 0 < epsilon < Fraction(1, 4):
        bound_report = process.verify_alpha_prime_bound(
            g, mode=args.mode, seed=args.seed, samples=args.samples, workers=args.workers
        )
        report["bound"] = bound_report.to_json_dict()
        report["bound_holds_at_this_n"] = bound_report.holds
    else:
        report["bound"] = None
        report["bound_note"] = f"alpha/n = {Fraction(a, g.n)} outside (1/4, 1/2); ceiling not applicable"
    return _emit(args, report, checks)


def cmd_process(args) -> int:
    _require_seed(args)
    g = load_graph(args.graph)
    a = alpha(g)
    epsilon = Fraction(args.epsilon) if args.epsilon else Fraction(a, g.n) - Fraction(1, 4)
    try:
        params = process.ProcessParams.for_graph(g.n, epsilon, target_size=args.target_size)
    except ValueError as exc:
        raise SystemExit(str(exc))
    print(f"running {args.traces} traces...", file=sys.stderr)
    traces = process.run_deletion_traces(g, params, args.traces, seed=args.seed, workers=args.workers)
    stats = process.success_statistics(traces, params)
    step_ok = True
    kernel_ok = True
    flag_ok = True
    for trace in traces:
        before = trace.alphas_before()
        for step, prev in zip(trace.steps, before):
            if not 0 <= prev - step.alpha <= 1:
                step_ok = False
            expected = prev < params.threshold or step.alpha < prev
            if step.successful != expected:
                flag_ok = False
            if step.kernel_size is not None:
                vertices_before = params.n - step.i + 1
                if step.kernel_size < 2 * prev - vertices_before:
                    kernel_ok = False
    report = {
        "n": g.n,
        "alpha": a,
        "epsilon": str(params.epsilon),
        "i0": params.i0,
        "target_size": params.target_size,
        "threshold": str(params.threshold),
        "traces": args.traces,
        "stats": stats.to_json_dict(),
    }
    checks = [
        ("alpha decreases by 0 or 1 each step", step_ok),
        ("success flags match their definition", flag_ok),
        ("recorded kernels meet the 2*alpha - |V| floor", kernel_ok),
        ("enough successes always forced alpha below threshold", stats.implication_violations == 0),
        ("conditional success frequency at least eps - 3*stderr", stats.frequency_ok),
    ]
    if args.trace_jsonl:
        process.export_trace_jsonl(traces[0], args.trace_jsonl)
    csv_spec = (
        ["trace", "window_successes", "final_alpha", "final_below_threshold"],
        [
            [i, t.success_count_in_window(), t.final_alpha, t.final_alpha < params.threshold]
            for i, t in enumerate(traces)
        ],
    )
    return _emit(args, report, checks, csv_spec)


def cmd_covering_code(args) -> int:
    try:
        spec = families.HammingSpec(args.m, args.t, constrained=not args.force)
    except ValueError as exc:
        raise SystemExit(str(exc))
    if args.method == "hadamard":
        try:
            code = hitting.build_hadamard_covering_code(spec)
        except ValueError as exc:
            raise SystemExit(str(exc))
        verified = None
        trials_used = None
    else:
        _require_seed(args)
        outcome = hitting.build_random_covering_code(
            spec, trials=args.trials, rng_seed=args.seed, count=args.count
        )
        if outcome.code is None:
            print(f"no verified code found in {outcome.trials_used} trials", file=sys.stderr)
            return 1
        code = outcome.code
        verified = outcome.verified
        trials_used = outcome.trials_used
    report = {
        "m": args.m,
        "t": args.t,
        "method": args.method,
        "code_size": len(code),
        "target_radius": code.target_radius,
        "trials_used": trials_used,
    }
    checks = []
    if args.m <= hitting.SCAN_MAX_M:
        radius = hitting.covering_radius(code)
        report["covering_radius"] = radius
        checks.append(("covering radius within target", radius <= code.target_radius))
        far = hitting.find_far_point(code, args.t)
        report["far_point"] = far
        checks.append(
            ("far point exists iff radius exceeds target", (far is None) == (radius <= spec.ball_radius))
        )
    else:
        report["covering_radius"] = None
        report["verified"] = verified
    if args.out:
        hitting.write_code(code, args.out)
    return _emit(args, report, checks)


def cmd_hitting_set(args) -> int:
    g = load_graph(args.graph)
    try:
        result = hitting.h_of_graph(g, cap=args.cap)
    except hitting.FamilyTooLargeError as exc:
        raise SystemExit(str(exc))
    family = enumerate_mis(g, cap=args.cap)
    hits_all = all(not s.isdisjoint(result.set) for s in family.sets)
    witness = maximum_independent_set(g)
    report = {
        "n": g.n,
        "alpha": len(witness),
        "mis_count": len(family),
        **result.to_json_dict(),
    }
    checks = [
        ("transversal meets every maximum independent set", hits_all),
        ("witness independent set is valid", is_independent(g, witness)),
    ]
    return _emit(args, report, checks)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mishit",
        description="hitting numbers of maximum-independent-set families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seed=False, workers=False, csv_opt=False):
        p.add_argument("--json", metavar="PATH", help="write a JSON report")
        if csv_opt:
            p.add_argument("--csv", metavar="PATH", help="write CSV rows")
        if seed:
            p.add_argument("--seed", type=int, default=None, help="RNG seed (required for stochastic runs)")
        if workers:
            p.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")

    def add_exports(p):
        p.add_argument("--graph-out", metavar="PATH", dest="graph_out",
                       help="write the graph in the JSON edge format")
        p.add_argument("--family-out", metavar="PATH", dest="family_out",
                       help="write the MIS family as a JSON list of sorted vertex arrays")

    p = sub.add_parser("shift", help="shift-graph family: alpha, MIS family, exact h")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=10**6)
    add_exports(p)
    add_common(p, csv_opt=True)
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("hamming", help="Hamming family: Kleitman alpha, h bounds, Hadamard code")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--force", action="store_true", help="skip the 4t^2 <= m constraint")
    add_exports(p)
    add_common(p, csv_opt=True)
    p.set_defaults(func=cmd_hamming)

    p = sub.add_parser("hajnal-corpus", help="kernel+corona inequality over graph corpora")
    p.add_argument("--max-n", type=int, default=7, dest="max_n")
    p.add_argument("--random", type=int, default=0, help="additional seeded random graphs")
    p.add_argument("--n-max", type=int, default=14, dest="n_max")
    add_common(p, seed=True, workers=True, csv_opt=True)
    p.set_defaults(func=cmd_hajnal_corpus)

    p = sub.add_parser("alpha-prime", help="average independence number of random induced subgraphs")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--mode", choices=["exact", "mc"], default="exact")
    p.add_argument("--samples", type=int, default=20_000)
    add_common(p, seed=True, workers=True)
    p.set_defaults(func=cmd_alpha_prime)

    p = sub.add_parser("process", help="random deletion process with success statistics")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--epsilon", default=None, help="override eps as a fraction, e.g. 1/12")
    p.add_argument("--traces", type=int, default=100)
    p.add_argument("--target-size", type=int, default=None, dest="target_size")
    p.add_argument("--trace-jsonl", metavar="PATH", dest="trace_jsonl",
                   help="export the first trace as JSON lines")
    add_common(p, seed=True, workers=True, csv_opt=True)
    p.set_defaults(func=cmd_process)

    p = sub.add_parser("covering-code", help="build and verify covering codes")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", choices=["hadamard", "random"], required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--count", type=int, default=None, help="random prefixes per trial")
    p.add_argument("--force", action="store_true", help="skip the 4t^2 <= m constraint")
    p.add_argument("--out", metavar="PATH", help="write the code file")
    add_common(p, seed=True)
    p.set_defaults(func=cmd_covering_code)

    p = sub.add_parser("hitting-set", help="exact hitting number of a graph file")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--cap", type=int, default=10**6)
    add_common(p)
    p.set_defaults(func=cmd_hitting_set)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
