"""Clause-level vocabulary: literals, CNF formulas, monomials, problems.

Literals are nonzero signed integers (DIMACS convention): ``v`` is the
positive literal of variable ``v``, ``-v`` its negation. A monomial is a
tuple of literals, one per variable of its support, sorted by variable id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence


class DependencyViolation(ValueError):
    """A synthesized function uses variables outside its dependency set."""


def canonical_clause(lits: Iterable[int]) -> Optional[tuple[int, ...]]:
    """Sort literals by variable id and drop duplicate literals.

    Returns None when the clause contains a variable in both polarities
    (a tautology). The empty clause is represented by the empty tuple.
    """
    seen: dict[int, int] = {}
    for lit in lits:
        if lit == 0:
            raise ValueError("literal 0 is not allowed")
        v = abs(lit)
        prev = seen.get(v)
        if prev is None:
            seen[v] = lit
        elif prev != lit:
            return None
    return tuple(sorted(seen.values(), key=abs))


@dataclass(frozen=True)
class Cnf:
    """An immutable CNF formula over variables 1..num_vars."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    @staticmethod
    def build(num_vars: int, clause_lists: Iterable[Iterable[int]]) -> "Cnf":
        """Canonicalize each clause and drop tautologies."""
        out = []
        for lits in clause_lists:
            c = canonical_clause(lits)
            if c is None:
                continue
            for lit in c:
                if abs(lit) > num_vars:
                    raise ValueError(f"literal {lit} exceeds num_vars={num_vars}")
            out.append(c)
        return Cnf(num_vars, tuple(out))

    def variables(self) -> frozenset[int]:
        return frozenset(abs(l) for c in self.clauses for l in c)

    def has_empty_clause(self) -> bool:
        return any(not c for c in self.clauses)


TRUE_CNF = Cnf(0, ())


def cofactor(f: Cnf, u: int, value: bool) -> Cnf:
    """Substitute the constant `value` for variable `u`.

    Satisfied clauses disappear, falsified literals are deleted. A clause
    reduced to the empty tuple marks the cofactor unsatisfiable; that is a
    valid result, not an error.
    """
    sat_lit = u if value else -u
    out = []
    for c in f.clauses:
        if sat_lit in c:
            continue
        if -sat_lit in c:
            out.append(tuple(l for l in c if l != -sat_lit))
        else:
            out.append(c)
    return Cnf(f.num_vars, tuple(out))


def minterms_of(support: Sequence[int]) -> list[tuple[int, ...]]:
    """All complete monomials over `support` in binary-counting order.

    The support is taken in ascending variable order. Index 0 is the
    all-positive monomial; bit j of the index (most significant bit first)
    negates the j-th smallest support variable. The empty support yields
    the single empty monomial.
    """
    vs = sorted(support)
    if len(set(vs)) != len(vs):
        raise ValueError("support has duplicate variables")
    n = len(vs)
    out = []
    for k in range(1 << n):
        lits = [vs[j] if not (k >> (n - 1 - j)) & 1 else -vs[j] for j in range(n)]
        out.append(tuple(sorted(lits, key=abs)))
    return out


def negate_monomial(m: Sequence[int]) -> tuple[int, ...]:
    """The clause asserting that monomial `m` does not hold."""
    return tuple(-l for l in m)


def monomial_holds(m: Sequence[int], assignment: Mapping[int, bool]) -> bool:
    return all(assignment[abs(l)] == (l > 0) for l in m)


@dataclass(frozen=True)
class MintermFunction:
    """A Boolean function given as the set of its selected complete monomials."""

    support: tuple[int, ...]
    minterms: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        sup = set(self.support)
        for m in self.minterms:
            if len(m) != len(sup) or {abs(l) for l in m} != sup:
                raise ValueError(f"minterm {m} is not complete over support {self.support}")

    @staticmethod
    def of(support: Sequence[int], minterms: Iterable[Sequence[int]]) -> "MintermFunction":
        return MintermFunction(
            tuple(sorted(support)),
            frozenset(tuple(sorted(m, key=abs)) for m in minterms),
        )

    @staticmethod
    def constant(value: bool) -> "MintermFunction":
        # the empty monomial selected/unselected encodes top/bottom
        return MintermFunction((), frozenset([()]) if value else frozenset())

    def evaluate(self, assignment: Mapping[int, bool]) -> bool:
        return any(monomial_holds(m, assignment) for m in self.minterms)

    def constant_value(self) -> Optional[bool]:
        """The constant this function equals, or None if it is not constant."""
        if not self.minterms:
            return False
        if len(self.minterms) == 1 << len(self.support):
            return True
        return None


@dataclass(frozen=True)
class Problem:
    """A maximization instance: CNF objective plus variable roles.

    max_vars is the ordered quantifier prefix of maximizing variables;
    deps maps each of them to its dependency set, a subset of
    count_vars | exist_vars.
    """

    cnf: Cnf
    max_vars: tuple[int, ...]
    count_vars: frozenset[int]
    exist_vars: frozenset[int]
    deps: Mapping[int, frozenset[int]]

    def __post_init__(self) -> None:
        xs = set(self.max_vars)
        if len(xs) != len(self.max_vars):
            raise ValueError("duplicate maximizing variable")
        if xs & self.count_vars or xs & self.exist_vars or self.count_vars & self.exist_vars:
            raise ValueError("variable role sets must be pairwise disjoint")
        declared = xs | self.count_vars | self.exist_vars
        missing = self.cnf.variables() - declared
        if missing:
            raise ValueError(f"variables {sorted(missing)} occur in the formula but have no role")
        if set(self.deps) != xs:
            raise ValueError("deps must map exactly the maximizing variables")
        pool = self.count_vars | self.exist_vars
        for x, h in self.deps.items():
            extra = set(h) - pool
            if extra:
                raise ValueError(f"dependency set of {x} mentions non-counting, non-existential {sorted(extra)}")

    @staticmethod
    def of(
        cnf: Cnf,
        max_vars: Sequence[int],
        count_vars: Iterable[int],
        exist_vars: Iterable[int],
        deps: Mapping[int, Iterable[int]],
    ) -> "Problem":
        return Problem(
            cnf,
            tuple(max_vars),
            frozenset(count_vars),
            frozenset(exist_vars),
            {x: frozenset(h) for x, h in deps.items()},
        )

    @property
    def total(self) -> int:
        return 1 << len(self.count_vars)


@dataclass(frozen=True)
class Solution:
    """Synthesized functions for the maximizing variables plus the count they achieve."""

    functions: Mapping[int, MintermFunction]
    achieved_count: Optional[int] = None
    total: Optional[int] = None

    def function_for(self, x: int) -> MintermFunction:
        return self.functions[x]


def selector_definition_clauses(
    x: int, support: Sequence[int], selector_of: Mapping[tuple[int, ...], int]
) -> list[tuple[int, ...]]:
    """Clauses tying x to its per-monomial selector variables.

    Encodes x ⇔ ⋁_m (selector_of[m] ∧ m) with no auxiliary variables:
    complete monomials over the support are mutually exclusive and
    exhaustive, so per minterm the pair (¬m ∨ ¬x ∨ s) ∧ (¬m ∨ x ∨ ¬s)
    suffices. 2·2^|support| clauses of length |support|+2.
    """
    out = []
    for m in minterms_of(support):
        s = selector_of[m]
        nm = negate_monomial(m)
        out.append(nm + (-x, s))
        out.append(nm + (x, -s))
    return out


def apply_substitution(p: Problem, s: "Solution | Mapping[int, MintermFunction]") -> Cnf:
    """Conjoin definition clauses fixing each maximizing variable to its function.

    Complete monomials over a support are mutually exclusive and exhaustive,
    so constant selection needs no auxiliary variables: a selected monomial m
    contributes (-m | x), an unselected one (-m | -x). Every assignment of
    the non-maximizing variables then forces each x to its function value,
    making the result equivalent to the substituted objective once the
    maximizing variables are treated as existential.
    """
    functions = s.functions if isinstance(s, Solution) else s
    clauses = list(p.cnf.clauses)
    for x in p.max_vars:
        fn = functions.get(x)
        if fn is None:
            raise DependencyViolation(f"no function provided for maximizing variable {x}")
        if not set(fn.support) <= p.deps[x]:
            raise DependencyViolation(
                f"function for {x} depends on {sorted(set(fn.support) - p.deps[x])}, "
                f"outside its dependency set"
            )
        for m in minterms_of(fn.support):
            head = x if m in fn.minterms else -x
            clauses.append(negate_monomial(m) + (head,))
    return Cnf.build(p.cnf.num_vars, clauses)
