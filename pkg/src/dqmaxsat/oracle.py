"""Max#SAT oracle: pick choice-variable values maximizing a projected count.

max_count answers requests of the form "among assignments of the choice
variables admitted by a filter, which one leaves the most count-variable
cells reachable", always comparing against a caller-supplied incumbent.
brute_force_dqmaxsat is the function-space reference oracle: it enumerates
whole strategy tuples over truth tables and is intended for small instances
and for cross-checking the real solvers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .engine import Engine, enumerate_projected
from .formula import Cnf, MintermFunction, Problem, Solution, minterms_of


class MalformedRequest(ValueError):
    """The request breaks the oracle's input contract."""


class InstanceTooLarge(ValueError):
    """The instance exceeds a hard enumeration guard."""


@dataclass(frozen=True)
class OracleRequest:
    """One maximization query.

    filter must mention only choice variables; incumbent must be a total
    assignment of them that satisfies filter. Callers are responsible for
    only filtering away assignments they know cannot beat the incumbent.
    """

    objective: Cnf
    max_vars: tuple[int, ...]
    count_vars: frozenset[int]
    exist_vars: frozenset[int]
    filter: Cnf
    incumbent: Mapping[int, bool]


@dataclass(frozen=True)
class OracleResult:
    best: Mapping[int, bool]
    best_count: int


def _clause_falsified(clause: tuple[int, ...], values: Mapping[int, bool]) -> bool:
    for lit in clause:
        v = values.get(abs(lit))
        if v is None or v == (lit > 0):
            return False
    return True


def max_count(req: OracleRequest) -> OracleResult:
    """Best admitted assignment of the choice variables, incumbent included.

    Depth-first branch and bound over the choice variables in ascending id
    order, false branch first, accepting only strict improvements; the
    first optimum found is therefore the lexicographically least one, and
    the incumbent wins all ties. Each node keeps the list of count-cells
    still individually reachable below it; the list only shrinks along a
    branch, bounding every completion from above.
    """
    ms = sorted(set(req.max_vars))
    if len(ms) != len(req.max_vars):
        raise MalformedRequest("duplicate choice variable")
    if not req.filter.variables() <= set(ms):
        extra = sorted(req.filter.variables() - set(ms))
        raise MalformedRequest(f"filter mentions non-choice variables {extra}")
    if set(req.incumbent) != set(ms):
        raise MalformedRequest("incumbent is not a total assignment of the choice variables")
    incumbent = {v: bool(req.incumbent[v]) for v in ms}
    ys = sorted(req.count_vars)

    inc_units = [[v] if incumbent[v] else [-v] for v in ms]
    nv = max([req.objective.num_vars, req.filter.num_vars] + ms + ys, default=0)
    inc_count = enumerate_projected(Cnf(nv, req.objective.clauses + tuple((u[0],) for u in inc_units)), ys)

    if req.filter.has_empty_clause():
        # nothing is admitted; the incumbent is exempt from the filter here
        return OracleResult(incumbent, inc_count)
    if any(_clause_falsified(c, incumbent) for c in req.filter.clauses):
        raise MalformedRequest("incumbent violates the filter")

    # reachable count-cells under objective & filter, choice vars still free
    root_cells: list[tuple[int, ...]] = []
    combined = req.objective.clauses + req.filter.clauses
    enumerate_projected(
        Cnf(nv, combined), ys,
        visit=lambda m: root_cells.append(tuple(v if m[v] else -v for v in ys)),
    )

    best_count = inc_count
    best = incumbent
    if len(root_cells) <= inc_count:
        return OracleResult(best, best_count)

    probe = Engine(nv, combined)
    assumed: list[int] = []

    def refine(cells: list[tuple[int, ...]]) -> Optional[list[tuple[int, ...]]]:
        # None = this branch provably cannot strictly beat best_count
        surviving: list[tuple[int, ...]] = []
        remaining = len(cells)
        for cell in cells:
            remaining -= 1
            if probe.satisfiable(assumed + list(cell)):
                surviving.append(cell)
            if len(surviving) + remaining <= best_count:
                return None
        return surviving

    def walk(depth: int, cells: list[tuple[int, ...]]) -> None:
        nonlocal best_count, best
        if len(cells) <= best_count:
            return
        if depth == len(ms):
            best_count = len(cells)
            best = {v: lit > 0 for v, lit in zip(ms, assumed)}
            return
        v = ms[depth]
        for lit in (-v, v):
            assumed.append(lit)
            here = {abs(l): l > 0 for l in assumed}
            if not any(_clause_falsified(c, here) for c in req.filter.clauses):
                narrowed = refine(cells)
                if narrowed is not None:
                    walk(depth + 1, narrowed)
            assumed.pop()

    walk(0, root_cells)
    return OracleResult(best, best_count)


def _var_mask(v: int, num_vars: int) -> int:
    half = 1 << (v - 1)
    period = half << 1
    rows = 1 << num_vars
    block = ((1 << half) - 1) << half
    return ((1 << rows) - 1) // ((1 << period) - 1) * block


def brute_force_dqmaxsat(p: Problem) -> Solution:
    """Exact optimum by exhausting every strategy tuple on truth tables.

    Candidate tuples are visited with each variable's minterm subsets in
    ascending bitmask order (mask bit j selects the j-th canonical minterm)
    and the last prefix variable cycling fastest; the first strict maximum
    is kept, which fixes the tie-break.
    """
    work = sum(1 << len(p.deps[x]) for x in p.max_vars)
    if work > 20:
        raise InstanceTooLarge(f"{work} selector positions exceed the guard of 20")
    if p.cnf.num_vars > 24:
        raise InstanceTooLarge(f"{p.cnf.num_vars} variables exceed the truth-table guard of 24")

    nv = p.cnf.num_vars
    full = (1 << (1 << nv)) - 1
    masks = {0: 0}  # literal -> truth-table mask; 0 sentinel unused
    for v in range(1, nv + 1):
        masks[v] = _var_mask(v, nv)
        masks[-v] = ~masks[v] & full

    phi = full
    for clause in p.cnf.clauses:
        cm = 0
        for lit in clause:
            cm |= masks[lit]
        phi &= cm

    def monomial_mask(m: tuple[int, ...]) -> int:
        acc = full
        for lit in m:
            acc &= masks[lit]
        return acc

    per_var_terms = [[monomial_mask(m) for m in minterms_of(sorted(p.deps[x]))] for x in p.max_vars]
    ys = sorted(p.count_vars)
    cell_masks = []
    for k in range(1 << len(ys)):
        acc = full
        for j, y in enumerate(ys):
            acc &= masks[y] if k >> j & 1 else masks[-y]
        cell_masks.append(acc)

    best_count = -1
    best_masks: tuple[int, ...] = ()
    for combo in itertools.product(*(range(1 << len(t)) for t in per_var_terms)):
        m = phi
        for x_ix, subset in enumerate(combo):
            f_mask = 0
            for j, term in enumerate(per_var_terms[x_ix]):
                if subset >> j & 1:
                    f_mask |= term
            m &= ~(masks[p.max_vars[x_ix]] ^ f_mask) & full
            if not m:
                break
        count = sum(1 for cm in cell_masks if m & cm) if m else 0
        if count > best_count:
            best_count = count
            best_masks = combo

    functions = {}
    for x, subset in zip(p.max_vars, best_masks):
        support = sorted(p.deps[x])
        terms = minterms_of(support)
        functions[x] = MintermFunction.of(
            support, [terms[j] for j in range(len(terms)) if subset >> j & 1]
        )
    return Solution(functions=functions, achieved_count=best_count, total=p.total)
