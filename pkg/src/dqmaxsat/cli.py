"""Command line front end.

Subcommands:

    solve          solve a prefixed-CNF instance file
    solve-program  bitblast and solve an attacker program
    check          re-verify a result document against its instance
    count          ceiling count: counted assignments reachable at all
    bench          run the bundled instance suite and print a table

``solve`` and ``solve-program`` print a human-readable summary by default
and a machine-readable result document with ``--json``.  Every emitted
result is recounted from scratch first; a result that fails its own
verification never reaches stdout.

Exit codes: 0 success, 1 solver or verification failure, 2 usage or
input-format error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

from .bitvec import BitMap, ProgramError, encode, lift, parse_program
from .counting import VerificationMismatch, check_solution, count_projected
from .dimacs import ParseError, parse_instance
from .formula import DependencyViolation, MintermFunction, Problem, Solution
from .incremental import POLICIES, run as run_incremental
from .local import (
    DEFAULT_LEAF_BUDGET,
    NoEligibleVariable,
    plan_split,
    solve_local,
)
from .reduction import BudgetExceeded, solve_global

_SUITES = {
    "default": (
        "copy_or_and.dqm",
        "two_implications.dqm",
        "copy_or.dqm",
        "sum_reach_3.atk",
        "sum_reach_4.atk",
        "capacity6.atk",
        "guessbits.atk",
        "capacity.atk",
    ),
}


class DocumentError(ValueError):
    """A result document is structurally unusable."""


def load_instance_text(text: str, assume: Optional[str] = None) -> tuple[Problem, Optional[BitMap]]:
    """Build a problem from either input dialect.

    assume forces a dialect ("dqmscnf" or "program"); otherwise the text is
    sniffed: a `p` header means prefixed CNF, anything else is a program.
    """
    if assume is None:
        assume = "program"
        for line in text.splitlines():
            tokens = line.split()
            if not tokens or tokens[0] in ("c", "#"):
                continue
            if tokens[0] == "p":
                assume = "dqmscnf"
            break
    if assume == "dqmscnf":
        return parse_instance(text), None
    return encode(parse_program(text))


def _load_path(path: str, assume: Optional[str] = None) -> tuple[Problem, Optional[BitMap]]:
    if assume is None:
        if path.endswith(".dqm"):
            assume = "dqmscnf"
        elif path.endswith(".atk"):
            assume = "program"
    return load_instance_text(Path(path).read_text(), assume)


def choose_method(problem: Problem, leaf_budget: int = DEFAULT_LEAF_BUDGET) -> str:
    """Pick the cheapest applicable method: local when a split exists."""
    try:
        plan_split(problem, leaf_budget=leaf_budget)
        return "local"
    except NoEligibleVariable:
        return "incremental"


def run_method(
    problem: Problem,
    method: str = "auto",
    policy: str = "round-robin",
    budget: Optional[int] = None,
    leaf_solver: str = "global",
    leaf_budget: int = DEFAULT_LEAF_BUDGET,
    on_iteration: Optional[Callable] = None,
) -> tuple[Solution, str, Optional[list]]:
    """Dispatch one solve; returns (solution, method used, iteration records)."""
    if method == "auto":
        method = choose_method(problem, leaf_budget)
    iterations = None
    if method == "global":
        solution = solve_global(problem, budget) if budget else solve_global(problem)
    elif method == "incremental":
        iterations = []

        def note(rec):
            iterations.append(rec)
            if on_iteration is not None:
                on_iteration(rec)

        solution = run_incremental(problem, policy=policy, budget=budget, on_iteration=note)
    elif method == "local":
        solution = solve_local(problem, leaf_solver=leaf_solver, leaf_budget=leaf_budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    return solution, method, iterations


def result_document(
    problem: Problem,
    solution: Solution,
    method: str,
    wall_ms: float,
    iterations: Optional[list] = None,
    bitmap: Optional[BitMap] = None,
) -> dict:
    """Self-contained record of one solve, the unit `check` consumes."""
    lifted_text: dict[int, str] = {}
    if bitmap is not None:
        for fn in lift(solution, bitmap):
            vars_lsb = bitmap.bits[fn.name]
            for i, var in enumerate(vars_lsb):
                lifted_text[var] = fn.bit_texts[len(vars_lsb) - 1 - i]
    functions = {}
    for x in problem.max_vars:
        f = solution.functions[x]
        entry: dict = {
            "support": [int(v) for v in f.support],
            "minterms": sorted(sorted(m, key=abs) for m in f.minterms),
        }
        if bitmap is not None:
            entry["label"] = bitmap.bit_label(x)
            if x in lifted_text:
                entry["lifted"] = lifted_text[x]
        functions[str(x)] = entry
    doc = {
        "count": solution.achieved_count,
        "total": solution.total,
        "ratio": solution.achieved_count / solution.total,
        "method": method,
        "wall_ms": round(wall_ms, 3),
        "functions": functions,
    }
    if iterations is not None:
        doc["iterations"] = [rec.as_dict() for rec in iterations]
    return doc


def solution_from_document(doc: dict) -> Solution:
    """Rebuild the claimed solution; raises DocumentError when unusable."""
    try:
        functions = {
            int(key): MintermFunction.of(entry["support"], entry["minterms"])
            for key, entry in doc["functions"].items()
        }
        return Solution(functions, int(doc["count"]), int(doc["total"]))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DocumentError(f"unusable result document: {exc}") from exc


def _emit(doc: dict, problem: Problem, solution: Solution, bitmap: Optional[BitMap], as_json: bool) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
        return
    print(f"count {doc['count']} of {doc['total']} (ratio {doc['ratio']:.6g})")
    print(f"method {doc['method']}, {doc['wall_ms']:.1f} ms")
    if bitmap is not None:
        for fn in lift(solution, bitmap):
            print(fn.rendered)
    else:
        for x in problem.max_vars:
            f = solution.functions[x]
            if not f.support:
                body = "true" if f.minterms else "false"
            elif not f.minterms:
                body = "false"
            else:
                body = " | ".join(
                    "(" + " ".join(str(lit) for lit in m) + ")"
                    for m in sorted(f.minterms)
                )
            print(f"{x} over {tuple(f.support)}: {body}")


def _trace_printer(rec) -> None:
    d = rec.as_dict()
    what = "base solve" if d["expanded_var"] is None else f"split {d['expanded_var']} on {d['expanded_on']}"
    print(
        f"  iteration {d['iteration']}: {what}, count {d['count']}, {d['elapsed_ms']:.1f} ms",
        file=sys.stderr,
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    assume = "program" if args.command == "solve-program" else "dqmscnf"
    problem, bitmap = _load_path(args.file, assume)
    t0 = time.perf_counter()
    solution, method, iterations = run_method(
        problem,
        method=args.method,
        policy=args.policy,
        budget=args.budget,
        leaf_solver=args.leaf_solver,
        leaf_budget=args.leaf_budget,
        on_iteration=_trace_printer if args.trace else None,
    )
    wall_ms = (time.perf_counter() - t0) * 1000.0
    check_solution(problem, solution)
    doc = result_document(problem, solution, method, wall_ms, iterations, bitmap)
    _emit(doc, problem, solution, bitmap, args.json)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    problem, _ = _load_path(args.instance)
    with open(args.result) as fh:
        doc = json.load(fh)
    solution = solution_from_document(doc)
    count = check_solution(problem, solution)
    print(f"ok: {count} of {problem.total} confirmed")
    return 0


def _cmd_count(args: argparse.Namespace) -> int:
    problem, _ = _load_path(args.file)
    free = problem.exist_vars | frozenset(problem.max_vars)
    n = count_projected(problem.cnf, problem.count_vars, free)
    print(f"{n} of {problem.total}")
    return 0


def bench_rows(suite: str = "default", on_row: Optional[Callable[[dict], None]] = None) -> list[dict]:
    """Solve every bundled instance with the auto method; verify each result.

    Rows carry the instance shape (inputs, counted, existential, clauses),
    the verified count, the method used, and the wall time.
    """
    if suite not in _SUITES:
        raise DocumentError(f"unknown suite {suite!r}; available: {sorted(_SUITES)}")
    rows = []
    base = resources.files("dqmaxsat").joinpath("bench")
    for fname in _SUITES[suite]:
        text = base.joinpath(fname).read_text()
        assume = "dqmscnf" if fname.endswith(".dqm") else "program"
        problem, _ = load_instance_text(text, assume)
        t0 = time.perf_counter()
        solution, method, _ = run_method(problem, method="auto")
        wall_ms = (time.perf_counter() - t0) * 1000.0
        check_solution(problem, solution)
        row = {
            "name": fname.rsplit(".", 1)[0],
            "num_inputs": len(problem.max_vars),
            "num_counted": len(problem.count_vars),
            "num_exist": len(problem.exist_vars),
            "num_clauses": len(problem.cnf.clauses),
            "count": solution.achieved_count,
            "total": solution.total,
            "method": method,
            "wall_ms": round(wall_ms, 1),
        }
        rows.append(row)
        if on_row is not None:
            on_row(row)
    return rows


_BENCH_HEADER = f"{'instance':<18} {'|X|':>4} {'|Y|':>4} {'|Z|':>4} {'|phi|':>6} {'count':>12} {'method':<12} {'ms':>9}"


def _format_row(row: dict) -> str:
    frac = f"{row['count']}/{row['total']}"
    return (
        f"{row['name']:<18} {row['num_inputs']:>4} {row['num_counted']:>4} "
        f"{row['num_exist']:>4} {row['num_clauses']:>6} {frac:>12} "
        f"{row['method']:<12} {row['wall_ms']:>9.1f}"
    )


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.json:
        rows = bench_rows(args.suite)
        print(json.dumps(rows, indent=2))
        return 0
    print(_BENCH_HEADER)

    def show(row: dict) -> None:
        print(_format_row(row), flush=True)

    rows = bench_rows(args.suite, on_row=show)
    print(f"{len(rows)} instances, {sum(r['wall_ms'] for r in rows) / 1000.0:.1f} s total")
    return 0


def _add_solver_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--method",
        choices=("auto", "global", "incremental", "local"),
        default="auto",
        help="auto splits locally when possible, otherwise runs incremental",
    )
    sp.add_argument("--policy", choices=tuple(POLICIES), default="round-robin",
                    help="incremental expansion order")
    sp.add_argument("--budget", type=int, default=None,
                    help="selector budget (global) or iteration cap (incremental)")
    sp.add_argument("--leaf-solver", choices=("global", "incremental"), default="global",
                    help="solver for local subproblems")
    sp.add_argument("--leaf-budget", type=int, default=DEFAULT_LEAF_BUDGET,
                    help="largest tolerated local leaf count")
    sp.add_argument("--json", action="store_true", help="emit a result document")
    sp.add_argument("--trace", action="store_true", help="log incremental iterations to stderr")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dqms",
        description="Synthesize per-variable strategies maximizing a projected model count.",
    )
    ap.add_argument("--seed", type=int, default=None,
                    help="seed the process RNG; the pipeline itself is deterministic")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve a prefixed-CNF instance (.dqm)")
    sp.add_argument("file")
    _add_solver_flags(sp)
    sp.set_defaults(fn=_cmd_solve)

    sp = sub.add_parser("solve-program", help="bitblast and solve an attacker program (.atk)")
    sp.add_argument("file")
    _add_solver_flags(sp)
    sp.set_defaults(fn=_cmd_solve)

    sp = sub.add_parser("check", help="re-verify a result document against its instance")
    sp.add_argument("instance")
    sp.add_argument("result")
    sp.set_defaults(fn=_cmd_check)

    sp = sub.add_parser("count", help="counted assignments reachable with every variable free")
    sp.add_argument("file")
    sp.set_defaults(fn=_cmd_count)

    sp = sub.add_parser("bench", help="solve the bundled suite and print a table")
    sp.add_argument("--suite", default="default", choices=tuple(_SUITES))
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_bench)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.fn(args)
    except (ParseError, ProgramError, DocumentError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VerificationMismatch, DependencyViolation, BudgetExceeded,
            NoEligibleVariable, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
