"""Single command-line harness exposing every module.

Every invocation writes JSON (or graph6 lines for ``enumerate``) to stdout
and exits 0; usage and precondition problems exit 2 with a structured error
object on stderr.  ``--record`` appends one JSON line per run with the full
parameter set, seed, timestamps and payload; replaying a recorded stochastic
command with its seed reproduces the payload byte for byte.
"""
from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Iterator, Sequence

import mpmath

from . import bounds as bounds_mod
from .census import MAX_ENUMERATION_N, enumerate_unlabelled, nontrivial_aut_fraction, polya_report
from .embedding import (ALL_SIZES, SPANNING_ONLY, EstimateReport, clopper_pearson,
                        count_embeddings, estimate_unique_prob, f_max_exact, f_of_h)
from .errors import Graph6Error, UniquesubError
from .graphs import Graph, VertexMap, emit_graph6, parse_graph6
from .process import ProcessTrace, sample_trace, uniqueness_interval, x_statistic
from .sampling import derive_rng, gnp_half
from .switching import (SwitchContext, apply_switch, classify_degrees, default_schedule,
                        find_switch, is_embedding, refine_t, required_pairs,
                        switch_probability)

VERSION = "0.1.0"
THREADS_ENV = "UNIQUESUB_THREADS"


def jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, mpmath.mpf):
        return float(value)
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def dumps(payload: Any) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, separators=(",", ":"))


def _universe(args: argparse.Namespace) -> str:
    return SPANNING_ONLY if args.spanning else ALL_SIZES


def _thread_count(args: argparse.Namespace) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _parallel_map(fn: Callable[[Any], Any], items: Sequence[Any], threads: int) -> list[Any]:
    if threads <= 1 or len(items) < 4 * threads:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (threads * 4))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _need_seed(args: argparse.Namespace) -> int:
    return args.seed if args.seed is not None else secrets.randbits(63)


def _parse_host(text: str) -> Graph:
    return parse_graph6(text)


def _parse_perm(text: str, n: int) -> VertexMap:
    image = tuple(int(tok) for tok in text.split(","))
    return VertexMap(n, n, image)


# --- subcommand payloads ------------------------------------------------------


def _cmd_enumerate(args: argparse.Namespace) -> dict[str, Any]:
    lines = [emit_graph6(g).decode() for g in enumerate_unlabelled(args.n)]
    payload = {"n": args.n, "count": len(lines), "graphs": lines}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        payload["out"] = args.out
        print(dumps({"n": args.n, "count": len(lines), "out": args.out}))
    else:
        for line in lines:
            print(line)
    return payload


def _cmd_polya(args: argparse.Namespace) -> dict[str, Any]:
    rep = polya_report(args.n)
    frac = nontrivial_aut_fraction(args.n)
    payload = {
        "n": rep.n,
        "unlabelled_count": rep.unlabelled_count,
        "polya_estimate": rep.polya_estimate,
        "ratio": float(rep.ratio),
        "ratio_exact": rep.ratio,
        "nontrivial_aut_fraction": float(frac),
    }
    print(dumps(payload))
    return payload


def _f_entry(fv) -> dict[str, Any]:
    return {
        "h_g6": emit_graph6(fv.h).decode(),
        "universe": fv.universe,
        "count": fv.unique_count,
        "denominator": fv.denominator,
        "f": float(fv.f),
        "f_exact": fv.f,
    }


def _cmd_f_exact(args: argparse.Namespace) -> dict[str, Any]:
    universe = _universe(args)
    table = [_f_entry(f_of_h(h, universe)) for h in enumerate_unlabelled(args.n)]
    best, best_g6 = f_max_exact(args.n, universe)
    payload = {"n": args.n, "universe": universe, "table": table,
               "max": _f_entry(best), "argmax_g6": best_g6}
    print(dumps(payload))
    return payload


def _cmd_f_of_h(args: argparse.Namespace) -> dict[str, Any]:
    h = _parse_host(args.g6)
    payload = _f_entry(f_of_h(h, _universe(args), allow_large=args.allow_large))
    print(dumps(payload))
    return payload


def _estimate_trial(work: tuple[str, int, int]) -> bool:
    h_g6, seed, index = work
    h = parse_graph6(h_g6)
    g = gnp_half(h.n, derive_rng(seed, index))
    return count_embeddings(g, h, early_exit_at=2).is_one


def _cmd_estimate(args: argparse.Namespace) -> dict[str, Any]:
    h = _parse_host(args.g6)
    seed = _need_seed(args)
    threads = _thread_count(args)
    if threads > 1:
        wins = _parallel_map(_estimate_trial, [(args.g6, seed, i) for i in range(args.trials)],
                             threads)
        successes = sum(bool(w) for w in wins)
        lo, hi = clopper_pearson(successes, args.trials)
        rep = EstimateReport(estimate=successes / args.trials, trials=args.trials,
                             successes=successes, seed=seed, ci_low=lo, ci_high=hi)
    else:
        rep = estimate_unique_prob(h, args.trials, seed)
    payload = {
        "h_g6": args.g6,
        "universe": "labelled-gnp-half",
        "count": rep.successes,
        "denominator": rep.trials,
        "f": rep.estimate,
        "seed": rep.seed,
        "ci": [rep.ci_low, rep.ci_high],
    }
    print(dumps(payload))
    return payload


def _trace_record(trace: ProcessTrace, h: Graph, index: int, L: float | None,
                  scan_all: bool) -> dict[str, Any]:
    interval = uniqueness_interval(trace, h)
    rec: dict[str, Any] = {
        "trace_index": index,
        "seed": trace.seed,
        "interval": None if interval.is_empty else [interval.lo, interval.hi],
    }
    if L is not None:
        xs = x_statistic(trace, h, L)
        rec["L"] = L
        rec["x"] = xs.x
        rec["window"] = [xs.i_lo, xs.i_hi]
    if scan_all:
        probes = []
        for m in range(trace.total_pairs + 1):
            out = count_embeddings(trace.graph_at(m), h)
            probes.append([m, out.count])
        rec["probes"] = probes
    return rec


def _process_one(work: tuple[str, int, int, float | None, bool]) -> dict[str, Any]:
    h_g6, seed, index, L, scan_all = work
    h = parse_graph6(h_g6)
    trace = sample_trace(h.n, seed, index)
    return _trace_record(trace, h, index, L, scan_all)


def _cmd_process(args: argparse.Namespace) -> dict[str, Any]:
    h = _parse_host(args.g6)
    seed = _need_seed(args)
    threads = _thread_count(args)
    work = [(args.g6, seed, i, args.L, args.scan_all) for i in range(args.traces)]
    records = _parallel_map(_process_one, work, threads)
    for rec in records:
        print(dumps(rec))
    return {"h_g6": args.g6, "seed": seed, "traces": records}


def _cmd_switch(args: argparse.Namespace) -> dict[str, Any]:
    hc = _parse_host(args.hc)
    g = _parse_host(args.g)
    pi = _parse_perm(args.pi, hc.n)
    ctx = SwitchContext(hc, g, pi)
    pairs = None
    if args.pairs:
        members = [int(tok) for tok in args.pairs.split(",")]
        pairs = [(u, v) for i, u in enumerate(members) for v in members[i + 1:] if u != v]
    found = find_switch(ctx, pairs)
    payload: dict[str, Any] = {
        "hc_g6": args.hc,
        "g_g6": args.g,
        "pi": list(pi.image),
        "pi_is_embedding": is_embedding(ctx),
        "switch": list(found) if found else None,
    }
    if found:
        payload["required_pairs"] = sorted(required_pairs(hc, pi, *found))
        payload["probability"] = switch_probability(hc, pi, *found)
        if payload["pi_is_embedding"]:
            payload["switched_pi"] = list(apply_switch(ctx, *found).image)
    print(dumps(payload))
    return payload


def _cmd_refine_t(args: argparse.Namespace) -> dict[str, Any]:
    hc = _parse_host(args.hc)
    dc = classify_degrees(hc, args.c)
    if args.schedule:
        schedule = [float(tok) for tok in args.schedule.split(",")]
    else:
        schedule = default_schedule(len(dc.b_prime), args.c)
    result = refine_t(hc, dc.b_prime, schedule)
    payload = {
        "hc_g6": args.hc,
        "c": args.c,
        "a": list(dc.a),
        "b_prime": list(dc.b_prime),
        "schedule": schedule,
        "t": list(result.t),
        "steps": [[v, thr] for v, thr in result.steps],
        "depth": result.depth,
        "final_threshold": result.final_threshold,
        "depth_exceeded": result.depth_exceeded,
    }
    print(dumps(payload))
    return payload


def _bound_payload(report: bounds_mod.BoundReport) -> dict[str, Any]:
    return {
        "name": report.name,
        "inputs": report.inputs,
        "exact": report.exact_value,
        "bound": report.bound_value,
        "slack": report.slack,
    }


def _cmd_bounds(args: argparse.Namespace) -> dict[str, Any]:
    name = args.bound_name
    if name == "binom-point-mass":
        payload = _bound_payload(bounds_mod.binomial_point_mass_max(args.n_pairs))
    elif name == "chernoff-l":
        level, tail = bounds_mod.chernoff_l(args.delta, args.n)
        payload = {"name": name, "inputs": {"delta": args.delta, "n": args.n},
                   "L": level, "exact_tail": tail, "bound": float(args.delta) / 4}
    elif name == "azuma":
        influences = [float(tok) for tok in args.b.split(",")]
        payload = {"name": name, "inputs": {"t": args.t, "b": influences},
                   "bound": bounds_mod.azuma_tail(args.t, influences)}
    elif name == "expected-embeddings":
        value = bounds_mod.expected_embeddings(args.n, args.e_h)
        payload = {"name": name, "inputs": {"n": args.n, "e_h": args.e_h},
                   "exact": value, "bound": float(value)}
    elif name == "density-decay":
        loose, sharp = bounds_mod.density_decay_bound(args.e_h, args.n_pairs,
                                                      args.steps, args.m_star)
        payload = {"name": name,
                   "inputs": {"e_h": args.e_h, "n_pairs": args.n_pairs,
                              "steps": args.steps, "m_star": args.m_star},
                   "bound": float(loose), "loose": loose, "sharp": sharp}
    elif name == "dense-case":
        payload = _bound_payload(bounds_mod.dense_case_inequality(args.delta, args.c, args.n))
        payload["holds"] = payload["slack"] > 0
    elif name == "union-budget":
        value = bounds_mod.union_budget(args.n, args.log_base)
        payload = {"name": name, "inputs": {"n": args.n, "log_base": args.log_base},
                   "bound": float(value), "exact": value if args.log_base is None else None}
    else:  # pragma: no cover - argparse restricts choices
        raise UniquesubError(f"unknown bound {name}")
    print(dumps(payload))
    return payload


def ingest_corpus(path: str, skip_bad: bool = False) -> Iterator[tuple[int, Graph | None, str | None]]:
    """Lazily parse a graph6 file; yields (line number, graph, error message)."""
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                yield lineno, parse_graph6(line), None
            except Graph6Error as exc:
                if not skip_bad:
                    raise Graph6Error(f"line {lineno}: {exc}", exc.offset) from exc
                yield lineno, None, str(exc)


def _cmd_ingest_check(args: argparse.Namespace) -> dict[str, Any]:
    graphs = 0
    bad: list[list[Any]] = []
    for lineno, g, err in ingest_corpus(args.path, skip_bad=args.skip_bad):
        if g is not None:
            graphs += 1
        else:
            bad.append([lineno, err])
    payload = {"path": args.path, "graphs": graphs, "bad_lines": bad,
               "skip_bad": args.skip_bad}
    print(dumps(payload))
    return payload


# --- harness -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniquesub",
        description="Exact and Monte-Carlo laboratory for unique-subgraph densities.")
    parser.add_argument("--record", metavar="PATH",
                        help="append an experiment record as one JSON line")
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker count (default: ${THREADS_ENV} or all cores)")
    parser.add_argument("--json", action="store_true", default=True,
                        help="JSON output (default; kept for interface stability)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="stream unlabelled graphs as graph6 lines")
    p.add_argument("--n", type=int, required=True, metavar=f"1..{MAX_ENUMERATION_N}")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("polya", help="unlabelled count against the 2^N/n! estimate")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_polya)

    p = sub.add_parser("f-exact", help="exhaustive f table and maximum at order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--spanning", action="store_true")
    p.set_defaults(fn=_cmd_f_exact)

    p = sub.add_parser("f-of-h", help="unique-subgraph density of one host")
    p.add_argument("--g6", required=True)
    p.add_argument("--spanning", action="store_true")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(fn=_cmd_f_of_h)

    p = sub.add_parser("estimate", help="Monte-Carlo unique-embedding probability")
    p.add_argument("--g6", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=_cmd_estimate)

    p = sub.add_parser("process", help="random graph process traces against a host")
    p.add_argument("--g6", required=True)
    p.add_argument("--traces", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--L", type=float, default=None)
    p.add_argument("--scan-all", action="store_true")
    p.set_defaults(fn=_cmd_process)

    p = sub.add_parser("switch", help="find and verify a vertex switch")
    p.add_argument("--hc", required=True, metavar="G6")
    p.add_argument("--g", required=True, metavar="G6")
    p.add_argument("--pi", required=True, metavar="IMG,IMG,...")
    p.add_argument("--pairs", metavar="V,V,...",
                   help="restrict the scan to pairs within this vertex set")
    p.set_defaults(fn=_cmd_switch)

    p = sub.add_parser("refine-t", help="iterative neighbourhood refinement")
    p.add_argument("--hc", required=True, metavar="G6")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--schedule", metavar="T1,T2,...")
    p.set_defaults(fn=_cmd_refine_t)

    p = sub.add_parser("bounds", help="closed-form bound evaluators")
    bsub = p.add_subparsers(dest="bound_name", required=True)
    b = bsub.add_parser("binom-point-mass")
    b.add_argument("--n-pairs", type=int, required=True)
    b = bsub.add_parser("chernoff-l")
    b.add_argument("--delta", type=float, required=True)
    b.add_argument("--n", type=int, required=True)
    b = bsub.add_parser("azuma")
    b.add_argument("--t", type=float, required=True)
    b.add_argument("--b", required=True, metavar="B1,B2,...")
    b = bsub.add_parser("expected-embeddings")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--e-h", type=int, required=True)
    b = bsub.add_parser("density-decay")
    b.add_argument("--e-h", type=int, required=True)
    b.add_argument("--n-pairs", type=int, required=True)
    b.add_argument("--steps", type=int, required=True)
    b.add_argument("--m-star", type=int, default=0)
    b = bsub.add_parser("dense-case")
    b.add_argument("--delta", type=float, required=True)
    b.add_argument("--c", type=float, required=True)
    b.add_argument("--n", type=int, required=True)
    b = bsub.add_parser("union-budget")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--log-base", type=float, default=None)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("ingest-check", help="validate a graph6 corpus file")
    p.add_argument("path")
    p.add_argument("--skip-bad", action="store_true")
    p.set_defaults(fn=_cmd_ingest_check)

    return parser


def _record_run(path: str, args: argparse.Namespace, payload: Any,
                started: float, finished: float) -> None:
    params = {k: v for k, v in vars(args).items()
              if k not in {"fn", "record", "command"} and v is not None}
    seed = params.get("seed")
    if seed is None and isinstance(payload, dict):
        seed = payload.get("seed")
    record = {
        "command": args.command,
        "params": params,
        "seed": seed,
        "started_at": started,
        "finished_at": finished,
        "payload": payload,
        "version": VERSION,
    }
    with open(path, "a") as fh:
        fh.write(dumps(record) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        payload = args.fn(args)
        if args.record:
            _record_run(args.record, args, payload, started, time.time())
    except (UniquesubError, OSError, ValueError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(dumps(err), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
