"""Incremental solving: grow dependency sets one variable at a time.

Starts every chooser on the empty support (a single constant selector) and
alternates oracle calls with support expansions. Each expansion splits the
affected selectors in two along the added variable, rewrites the objective
clauses in place, carries the previous optimum over as the incumbent, and
hands the oracle a filter admitting only assignments that actually use the
new variable (plus the incumbent itself). A full run makes exactly
1 + sum of |H_i| oracle calls and may be stopped after any call, yielding
the best strategies over the supports grown so far.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, replace
from typing import Callable, Mapping, Optional

from .formula import Cnf, Problem, Solution, TRUE_CNF, canonical_clause, minterms_of
from .oracle import OracleRequest, max_count
from .reduction import SelectorMap, decode

POLICIES = ("round-robin", "fixed-order", "largest-remaining")


@dataclass(frozen=True)
class IterationRecord:
    """One oracle call: which expansion preceded it and what it achieved."""

    iteration: int
    expanded_var: Optional[int]
    expanded_on: Optional[int]
    count: int
    elapsed_ms: float
    solution: Solution

    def as_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "expanded_var": self.expanded_var,
            "expanded_on": self.expanded_on,
            "count": self.count,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "functions": {
                str(x): sorted(sorted(m, key=abs) for m in fn.minterms)
                for x, fn in self.solution.functions.items()
            },
        }


@dataclass(frozen=True)
class IncrementalState:
    problem: Problem
    partial_deps: Mapping[int, frozenset[int]]
    selectors: SelectorMap
    objective: Cnf
    incumbent: Mapping[int, bool]
    filter: Cnf
    iteration: int
    trace: tuple[IterationRecord, ...] = ()
    next_id: int = 0

    def remaining(self, x: int) -> frozenset[int]:
        return self.problem.deps[x] - self.partial_deps[x]

    def finished(self) -> bool:
        return all(not self.remaining(x) for x in self.problem.max_vars)

    def request(self) -> OracleRequest:
        return OracleRequest(
            objective=self.objective,
            max_vars=self.selectors.selector_vars(),
            count_vars=self.problem.count_vars,
            exist_vars=self.problem.exist_vars | set(self.problem.max_vars),
            filter=self.filter,
            incumbent=self.incumbent,
        )


def init(p: Problem) -> IncrementalState:
    """Empty supports: one constant selector per chooser, incumbent all false."""
    next_id = p.cnf.num_vars + 1
    supports: dict[int, tuple[int, ...]] = {}
    tables: dict[int, dict[tuple[int, ...], int]] = {}
    owner: dict[int, tuple[int, tuple[int, ...]]] = {}
    clauses = list(p.cnf.clauses)
    for x in p.max_vars:
        s = next_id
        next_id += 1
        supports[x] = ()
        tables[x] = {(): s}
        owner[s] = (x, ())
        clauses.append((-x, s))
        clauses.append((x, -s))
    return IncrementalState(
        problem=p,
        partial_deps={x: frozenset() for x in p.max_vars},
        selectors=SelectorMap(supports, tables, owner),
        objective=Cnf.build(next_id - 1, clauses),
        incumbent={s: False for s in owner},
        filter=TRUE_CNF,
        iteration=0,
        next_id=next_id,
    )


def _rewrite_clause(clause: tuple[int, ...], splits: Mapping[int, tuple[int, int]],
                    u: int) -> list[tuple[int, ...]]:
    """Substitute every split selector s by (child_u ∧ u) ∨ (child_nu ∧ ¬u).

    Multiple occurrences are rewritten one selector at a time in ascending
    id order; a positive occurrence becomes three clauses, a negative one
    two.
    """
    out = [clause]
    for s in sorted(splits):
        a, b = splits[s]
        nxt: list[tuple[int, ...]] = []
        for c in out:
            if s in c:
                psi = tuple(l for l in c if l != s)
                nxt.append(psi + (a, b))
                nxt.append(psi + (a, -u))
                nxt.append(psi + (b, u))
            elif -s in c:
                psi = tuple(l for l in c if l != -s)
                nxt.append(psi + (-a, -u))
                nxt.append(psi + (-b, u))
            else:
                nxt.append(c)
        out = nxt
    return out


def _dedupe(clauses) -> list[tuple[int, ...]]:
    """Canonicalize, drop tautologies, and keep first occurrences in order."""
    seen = set()
    out = []
    for c in clauses:
        key = canonical_clause(c)
        if key is not None and key not in seen:
            seen.add(key)
            out.append(key)
    return out


def expand(st: IncrementalState, x: int, u: int) -> IncrementalState:
    """Grow chooser x's support by u, splitting each of its selectors in two.

    The incumbent value of a split selector is duplicated onto both
    children, preserving its count; the new filter admits assignments where
    some pair of children disagrees (the new variable matters) or that equal
    the duplicated incumbent.
    """
    if u not in st.remaining(x):
        raise ValueError(f"variable {u} is not expandable for chooser {x}")
    old_table = st.selectors.selectors[x]
    new_support = tuple(sorted(st.partial_deps[x] | {u}))

    # children allocated in canonical minterm order of the grown support
    next_id = st.next_id
    new_table: dict[tuple[int, ...], int] = {}
    for m in minterms_of(new_support):
        new_table[m] = next_id
        next_id += 1
    splits: dict[int, tuple[int, int]] = {}
    for m_old, s in old_table.items():
        with_u = tuple(sorted(m_old + (u,), key=abs))
        with_nu = tuple(sorted(m_old + (-u,), key=abs))
        splits[s] = (new_table[with_u], new_table[with_nu])

    rewritten: list[tuple[int, ...]] = []
    for c in st.objective.clauses:
        rewritten.extend(_rewrite_clause(c, splits, u))
    objective = Cnf.build(next_id - 1, _dedupe(rewritten))

    incumbent = {s: v for s, v in st.incumbent.items() if s not in splits}
    for s, (a, b) in splits.items():
        incumbent[a] = st.incumbent[s]
        incumbent[b] = st.incumbent[s]

    supports = dict(st.selectors.supports)
    tables = {k: dict(v) for k, v in st.selectors.selectors.items()}
    owner = {s: o for s, o in st.selectors.owner.items() if o[0] != x}
    supports[x] = new_support
    tables[x] = new_table
    for m, s in new_table.items():
        owner[s] = (x, m)
    selectors = SelectorMap(supports, tables, owner)

    # filter: some child pair differs, or the assignment is the incumbent
    pair_cnfs = [
        [(a, b), (-a, -b)]
        for a, b in (splits[s] for s in sorted(splits))
    ]
    inc_lits = [s if incumbent[s] else -s for s in sorted(incumbent)]
    filter_clauses = []
    for picks in itertools.product(*pair_cnfs):
        base = tuple(itertools.chain.from_iterable(picks))
        for lit in inc_lits:
            filter_clauses.append(base + (lit,))
    filt = Cnf.build(next_id - 1, _dedupe(filter_clauses))

    partial = dict(st.partial_deps)
    partial[x] = st.partial_deps[x] | {u}
    return replace(
        st,
        partial_deps=partial,
        selectors=selectors,
        objective=objective,
        incumbent=incumbent,
        filter=filt,
        next_id=next_id,
    )


def _choose(st: IncrementalState, policy: str, rotor: int) -> tuple[int, int]:
    open_vars = [x for x in st.problem.max_vars if st.remaining(x)]
    if policy == "fixed-order":
        x = open_vars[0]
    elif policy == "largest-remaining":
        x = max(open_vars, key=lambda v: (len(st.remaining(v)), -st.problem.max_vars.index(v)))
    else:  # round-robin
        order = st.problem.max_vars
        x = next(order[(rotor + k) % len(order)] for k in range(len(order))
                 if order[(rotor + k) % len(order)] in open_vars)
    return x, min(st.remaining(x))


def run(
    p: Problem,
    policy: str = "round-robin",
    budget: Optional[int] = None,
    on_iteration: Optional[Callable[[IterationRecord], None]] = None,
) -> Solution:
    """Alternate oracle calls and expansions until supports are complete.

    budget caps the number of oracle calls; when it stops the run early the
    result is the anytime solution over the partially grown supports. The
    per-call records (count, elapsed time, decoded functions) are passed to
    on_iteration and kept on the state's trace.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}, expected one of {POLICIES}")
    if budget is not None and budget < 1:
        raise ValueError("budget must allow at least one oracle call")
    st = init(p)
    rotor = 0
    last = None
    while True:
        t0 = time.perf_counter()
        res = max_count(st.request())
        elapsed = (time.perf_counter() - t0) * 1000
        anytime = replace(decode(st.selectors, res.best),
                          achieved_count=res.best_count, total=p.total)
        record = IterationRecord(
            iteration=st.iteration + 1,
            expanded_var=last[0] if last else None,
            expanded_on=last[1] if last else None,
            count=res.best_count,
            elapsed_ms=elapsed,
            solution=anytime,
        )
        st = replace(st, incumbent=dict(res.best), iteration=st.iteration + 1,
                     trace=st.trace + (record,))
        if on_iteration is not None:
            on_iteration(record)
        if st.finished() or (budget is not None and st.iteration >= budget):
            return anytime
        x, u = _choose(st, policy, rotor)
        rotor = (st.problem.max_vars.index(x) + 1) % len(st.problem.max_vars)
        st = expand(st, x, u)
        last = (x, u)
