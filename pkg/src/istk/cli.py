"""Command-line front end: ``istk {kernelize,solve,oracle,verify,bench,selftest}``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from istk.errors import IstkError, ParseError
from istk.generators import generate
from istk.graph import Graph, edges_from_labels, parse_graph, parse_labeled_edges
from istk.kernel import SCHEMA, baseline_kernel_3k, kernelize
from istk.oracle import default_cap, opt_bruteforce, solve_decision, verify_certificate
from istk.selftest import run_selftest

BENCH_COLUMNS = [
    "n", "m", "k", "kernel_n_2k", "kernel_n_3k", "exchange_steps", "reductions", "wall_time",
    "outcome_2k", "outcome_3k", "flag",
]

EPILOG = """\
exit codes: 0 ok, 2 parse/IO error, 3 precondition violated, 4 oracle cap exceeded,
5 internal invariant failure.

bench CSV columns: n, m, k, kernel_n_2k, kernel_n_3k, exchange_steps, reductions,
wall_time (seconds, 2k kernel), outcome_2k, outcome_3k, flag. kernel_n_* is empty when
that pipeline did not stop at a kernel; flag is "2k>3k" when both produced kernels and
the 2k one is larger.

generator specs: path:N, cycle:N, star:N, complete:N, doublestar:A,B,
caterpillar:N,LEGS, gnp:n=N,m=M (uniform random labelled tree plus distinct extra edges).
The environment variable ISTK_CAP sets the oracle cap when --cap is not given.
"""


def _add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--input", metavar="PATH", help="graph file ('-' for stdin)")
    src.add_argument("--gen", metavar="SPEC", help="generator spec, e.g. gnp:n=200,m=600")
    p.add_argument("--format", choices=["edgelist", "dimacs"], default="edgelist")
    p.add_argument("--seed", type=int, default=0)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap", type=int, default=None, help="oracle vertex cap (default: $ISTK_CAP or 16)")
    p.add_argument("--trace", metavar="PATH", help="write the reduction trace as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="istk",
        description="Kernelization for spanning trees with many internal vertices.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernelize", help="reduce (G, k) to a kernel of at most 2k'-2 vertices")
    _add_input(p)
    p.add_argument("--k", type=int, default=None, help="parameter; omit to reduce until half the tree is internal")
    _add_common(p)

    p = sub.add_parser("solve", help="decide whether a spanning tree with >= k internal vertices exists")
    _add_input(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cert", metavar="PATH", help="write the certificate edge list here")
    _add_common(p)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("verify", help="check a certificate spanning tree")
    _add_input(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cert", metavar="PATH", required=True, help="certificate edge list (original labels)")
    _add_common(p)

    p = sub.add_parser(
        "bench", help="compare 2k and 3k kernels; CSV on stdout",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_input(p)
    p.add_argument("--k", type=int, default=None, help="parameter (default: n // 2)")
    p.add_argument("--count", type=int, default=1, help="instances, seeds seed..seed+count-1 (with --gen)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_common(p)

    p = sub.add_parser("selftest", help="invariant sweep over all connected graphs n <= 8 and random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=500, help="random graphs with n <= 10")
    p.add_argument("--max-n", type=int, default=8, help="largest exhaustive order")
    _add_common(p)
    return parser


def load_graph(args) -> Graph:
    if args.gen:
        return generate(args.gen, args.seed)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_graph(text, args.format)


def _cap(args) -> int:
    return args.cap if args.cap is not None else default_cap()


def _write_trace(args, steps) -> None:
    if not args.trace:
        return
    try:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump({"schema": SCHEMA, "trace": [s.to_json() for s in steps]}, fh, indent=1)
    except OSError as exc:
        raise ParseError(f"cannot write {args.trace}: {exc.strerror}") from None


def _emit(args, payload: dict, human: list[str]) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **payload}))
    else:
        print("\n".join(human))


def cmd_kernelize(args) -> int:
    g = load_graph(args)
    out = kernelize(g, args.k)
    _write_trace(args, out.trace)
    d = out.to_json()
    lines = [f"n={g.n} m={g.m} k={args.k}: {out.kind}, {len(out.trace)} reductions, {out.exchange_steps} exchange steps"]
    if out.kind == "kernel":
        lines.append(f"kernel: n={out.kernel.n} m={out.kernel.m} k'={out.k_prime}")
    elif out.kind == "answered":
        lines.append(f"{'YES' if out.decision else 'NO'} (opt = {out.opt}, {out.reason})")
    else:
        lines.append(f"YES: spanning tree with {len(out.certificate.internal)} internal vertices")
    _emit(args, d, lines)
    return 0


def cmd_solve(args) -> int:
    g = load_graph(args)
    dec = solve_decision(g, args.k, _cap(args))
    _write_trace(args, kernelize(g, args.k).trace if args.trace else [])
    cert = dec.certificate.labeled_edges() if dec.certificate else None
    if cert is not None and args.cert:
        try:
            with open(args.cert, "w", encoding="utf-8") as fh:
                fh.write("".join(f"{a} {b}\n" for a, b in cert))
        except OSError as exc:
            raise ParseError(f"cannot write {args.cert}: {exc.strerror}") from None
    payload = {"decision": dec.answer, "k": args.k, "opt": dec.opt, "via": dec.via,
               "certificate": [list(e) for e in cert] if cert else None}
    lines = ["YES" if dec.answer else "NO"]
    if cert:
        lines += [f"{a} {b}" for a, b in cert]
    _emit(args, payload, lines)
    return 0


def cmd_oracle(args) -> int:
    g = load_graph(args)
    res = opt_bruteforce(g, _cap(args))
    _emit(args, {"opt": res.opt, "witness": [list(e) for e in res.witness.labeled_edges()]}, [f"opt = {res.opt}"])
    return 0


def cmd_verify(args) -> int:
    g = load_graph(args)
    try:
        with open(args.cert, encoding="utf-8") as fh:
            pairs = parse_labeled_edges(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {args.cert}: {exc.strerror}") from None
    v = verify_certificate(g, edges_from_labels(g, pairs), args.k)
    _emit(args, {"accepted": v.accepted, "reason": v.reason, "internal": v.internal},
          [f"{'ACCEPT' if v.accepted else 'REJECT'}: {v.reason}"])
    return 0 if v.accepted else 1


def bench_row(g: Graph, k: int | None) -> dict:
    k = g.n // 2 if k is None else k
    t = time.perf_counter()
    a = kernelize(g, k)
    wall = time.perf_counter() - t
    b = baseline_kernel_3k(g, k)
    na = a.kernel.n if a.kind == "kernel" else ""
    nb = b.kernel.n if b.kind == "kernel" else ""
    flag = "2k>3k" if na != "" and nb != "" and na > nb else ""
    return {
        "n": g.n, "m": g.m, "k": k, "kernel_n_2k": na, "kernel_n_3k": nb,
        "exchange_steps": a.exchange_steps, "reductions": len(a.trace), "wall_time": f"{wall:.4f}",
        "outcome_2k": a.kind, "outcome_3k": b.kind, "flag": flag,
    }


def _bench_job(job) -> dict:
    spec, seed, k = job
    return bench_row(generate(spec, seed), k)


def cmd_bench(args) -> int:
    if args.gen:
        jobs = [(args.gen, args.seed + i, args.k) for i in range(args.count)]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                rows = list(pool.map(_bench_job, jobs))  # map keeps instance order
        else:
            rows = [_bench_job(j) for j in jobs]
    else:
        rows = [bench_row(load_graph(args), args.k)]
    if args.json:
        print(json.dumps({"schema": SCHEMA, "columns": BENCH_COLUMNS, "rows": rows}))
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return 0


def cmd_selftest(args) -> int:
    report = run_selftest(args.max_n, args.random, args.seed, _cap(args))
    if args.json:
        print(json.dumps({
            "schema": SCHEMA, "graphs": report.graphs, "seconds": round(report.seconds, 3),
            "passed": report.passed(), "checked": report.checked,
            "failures": {k: v[:20] for k, v in report.failures.items()},
        }))
    else:
        print("\n".join(report.lines()))
        for name, items in report.failures.items():
            for item in items[:5]:
                print(f"  {name}: {item}")
        print(f"{report.graphs} graphs in {report.seconds:.1f}s")
    return 0 if report.passed() else 5


COMMANDS = {
    "kernelize": cmd_kernelize, "solve": cmd_solve, "oracle": cmd_oracle,
    "verify": cmd_verify, "bench": cmd_bench, "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "k", None) is not None and args.k < 0:
        print("error: --k must be non-negative", file=sys.stderr)
        return 3
    try:
        return COMMANDS[args.command](args)
    except IstkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except RecursionError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
