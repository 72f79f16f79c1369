"""Compile annotated bitvector programs into dependency-counting problems.

The input language is line oriented, one statement per line, with ``#``
starting a comment. A program opens with two header lines, ``width <n>``
and ``mode reach|leak`` (in either order, both before the first statement),
followed by statements:

    random <name> [in <lo>..<hi>]
    input <name>
    observe <name> := <expr>
    assume <expr>
    win <expr>

Expressions combine names and decimal constants with ``+ - == >= <= && ||
!`` and parentheses. Arithmetic is unsigned with wraparound at the declared
width, comparisons produce one-bit values, and the connectives demand
one-bit operands. Every name is assigned exactly once (by ``random``,
``input`` or ``observe``) and used only on later lines. ``reach`` programs
contain exactly one ``win`` statement, ``leak`` programs none.

Encoding: each declared name takes one CNF variable per bit, least
significant bit first, in statement order; gate variables introduced by the
arithmetic come after all declared bits. In ``reach`` mode the random bits
are counted, the input bits are maximized, and everything else is
existential; the objective conjoins the observation definitions, the range
constraints, the ``assume`` conditions and the ``win`` condition. In
``leak`` mode the observation bits are counted instead, the randoms move
under the existential block, and there is no ``win`` conjunct. In both
modes an input may depend on exactly the observation bits of the
observations that precede it in the program text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .formula import Cnf, MintermFunction, Problem, Solution


class ProgramError(ValueError):
    """A diagnostic tied to a position in the program text."""

    def __init__(self, message: str, line: int, col: Optional[int] = None):
        self.line = line
        self.col = col
        where = f"line {line}" if col is None else f"line {line}, column {col}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class BvExpr:
    """An expression tree node.

    op is one of const, var, add, sub, eq, ge, le, and, or, not; args holds
    the children, value the constant payload, name the variable payload.
    """

    op: str
    args: tuple["BvExpr", ...] = ()
    value: Optional[int] = None
    name: Optional[str] = None
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Statement:
    kind: str  # random | input | observe | assume | win
    line: int
    name: Optional[str] = None
    expr: Optional[BvExpr] = None
    lo: Optional[int] = None
    hi: Optional[int] = None


@dataclass(frozen=True)
class BvProgram:
    width: int
    mode: str  # reach | leak
    statements: tuple[Statement, ...]


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_]\w*)|(==|>=|<=|&&|\|\||:=|\.\.|[-+!()])")

_KEYWORDS = ("width", "mode", "random", "input", "observe", "assume", "win")


def _tokenize(src: str, line: int) -> list[tuple[str, object, int]]:
    toks = []
    i = 0
    while i < len(src):
        if src[i] in " \t":
            i += 1
            continue
        m = _TOKEN_RE.match(src, i)
        if m is None:
            raise ProgramError(f"unexpected character {src[i]!r}", line, i + 1)
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), i + 1))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), i + 1))
        else:
            toks.append((m.group(3), m.group(3), i + 1))
        i = m.end()
    return toks


class _ExprParser:
    """Recursive descent over one statement's token tail.

    Grammar, loosest first:  or := and ('||' and)*
                             and := cmp ('&&' cmp)*
                             cmp := sum (('=='|'>='|'<=') sum)?
                             sum := unary (('+'|'-') unary)*
                             unary := '!' unary | NAME | NUM | '(' or ')'
    Comparisons do not chain.
    """

    def __init__(self, toks, line: int, end_col: int):
        self.toks = toks
        self.line = line
        self.end_col = end_col
        self.pos = 0

    def _peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _take(self, kind: Optional[str] = None):
        t = self._peek()
        if t is None:
            raise ProgramError("unexpected end of line", self.line, self.end_col)
        if kind is not None and t[0] != kind:
            raise ProgramError(f"expected {kind!r}, found {t[1]!r}", self.line, t[2])
        self.pos += 1
        return t

    def parse(self) -> BvExpr:
        e = self._or()
        t = self._peek()
        if t is not None:
            raise ProgramError(f"unexpected {t[1]!r} after expression", self.line, t[2])
        return e

    def _or(self) -> BvExpr:
        e = self._and()
        while (t := self._peek()) is not None and t[0] == "||":
            self._take()
            rhs = self._and()
            e = BvExpr("or", (e, rhs), line=self.line, col=t[2])
        return e

    def _and(self) -> BvExpr:
        e = self._cmp()
        while (t := self._peek()) is not None and t[0] == "&&":
            self._take()
            rhs = self._cmp()
            e = BvExpr("and", (e, rhs), line=self.line, col=t[2])
        return e

    _CMP_OPS = {"==": "eq", ">=": "ge", "<=": "le"}

    def _cmp(self) -> BvExpr:
        e = self._sum()
        t = self._peek()
        if t is not None and t[0] in self._CMP_OPS:
            self._take()
            rhs = self._sum()
            e = BvExpr(self._CMP_OPS[t[0]], (e, rhs), line=self.line, col=t[2])
            nxt = self._peek()
            if nxt is not None and nxt[0] in self._CMP_OPS:
                raise ProgramError("comparisons do not chain", self.line, nxt[2])
        return e

    def _sum(self) -> BvExpr:
        e = self._unary()
        while (t := self._peek()) is not None and t[0] in ("+", "-"):
            self._take()
            rhs = self._unary()
            e = BvExpr("add" if t[0] == "+" else "sub", (e, rhs), line=self.line, col=t[2])
        return e

    def _unary(self) -> BvExpr:
        t = self._take()
        if t[0] == "!":
            return BvExpr("not", (self._unary(),), line=self.line, col=t[2])
        if t[0] == "num":
            return BvExpr("const", value=t[1], line=self.line, col=t[2])
        if t[0] == "name":
            return BvExpr("var", name=t[1], line=self.line, col=t[2])
        if t[0] == "(":
            e = self._or()
            self._take(")")
            return e
        raise ProgramError(f"expected a name, number, '!' or '(', found {t[1]!r}", self.line, t[2])


def _expr_width(e: BvExpr, widths: Mapping[str, int]) -> Optional[int]:
    """Bit width of an expression, or None for constant-only subtrees.

    Raises on incompatible operand widths and on names used under the
    Boolean connectives with more than one bit.
    """
    if e.op == "const":
        return None
    if e.op == "var":
        w = widths.get(e.name)
        if w is None:
            raise ProgramError(f"name {e.name!r} is not assigned yet", e.line, e.col)
        return w
    if e.op in ("add", "sub", "eq", "ge", "le"):
        a = _expr_width(e.args[0], widths)
        b = _expr_width(e.args[1], widths)
        if a is not None and b is not None and a != b:
            raise ProgramError(f"width mismatch: {a}-bit and {b}-bit operands", e.line, e.col)
        w = a if a is not None else b
        return 1 if e.op in ("eq", "ge", "le") else w
    # and / or / not
    for child in e.args:
        cw = _expr_width(child, widths)
        if cw not in (None, 1):
            raise ProgramError(f"expected a 1-bit operand, found {cw} bits", child.line, child.col)
    return 1


def _check_constants(e: BvExpr, demand: int, widths: Mapping[str, int], default: int) -> None:
    """Verify every constant fits the width its position requires."""
    if e.op == "const":
        if e.value >> demand:
            raise ProgramError(f"constant {e.value} does not fit in {demand} bit(s)", e.line, e.col)
    elif e.op in ("add", "sub"):
        for child in e.args:
            _check_constants(child, demand, widths, default)
    elif e.op in ("eq", "ge", "le"):
        cw = _expr_width(e.args[0], widths) or _expr_width(e.args[1], widths) or default
        for child in e.args:
            _check_constants(child, cw, widths, default)
    else:
        for child in e.args:
            _check_constants(child, 1, widths, default)


def parse_program(text: str) -> BvProgram:
    """Parse and validate a program, or raise ProgramError with a position."""
    width: Optional[int] = None
    mode: Optional[str] = None
    statements: list[Statement] = []
    widths: dict[str, int] = {}
    win_line: Optional[int] = None
    last_line = 0

    def need_headers(ln: int) -> int:
        if width is None:
            raise ProgramError("width must be declared before any statement", ln)
        if mode is None:
            raise ProgramError("mode must be declared before any statement", ln)
        return width

    def fresh_name(tok, ln: int) -> str:
        if tok[0] != "name":
            raise ProgramError(f"expected a name, found {tok[1]!r}", ln, tok[2])
        if tok[1] in _KEYWORDS:
            raise ProgramError(f"{tok[1]!r} is a keyword", ln, tok[2])
        if tok[1] in widths:
            raise ProgramError(f"name {tok[1]!r} is assigned twice", ln, tok[2])
        return tok[1]

    for ln, raw in enumerate(text.splitlines(), start=1):
        src = raw.split("#", 1)[0]
        if not src.strip():
            continue
        last_line = ln
        toks = _tokenize(src, ln)
        head = toks[0]
        if head[0] != "name":
            raise ProgramError(f"expected a statement keyword, found {head[1]!r}", ln, head[2])
        kw = head[1]

        if kw == "width":
            if statements:
                raise ProgramError("width must precede all statements", ln)
            if width is not None:
                raise ProgramError("width is declared twice", ln)
            if len(toks) != 2 or toks[1][0] != "num" or toks[1][1] < 1:
                raise ProgramError("width takes one positive number", ln)
            width = toks[1][1]
        elif kw == "mode":
            if statements:
                raise ProgramError("mode must precede all statements", ln)
            if mode is not None:
                raise ProgramError("mode is declared twice", ln)
            if len(toks) != 2 or toks[1][0] != "name" or toks[1][1] not in ("reach", "leak"):
                raise ProgramError("mode is either 'reach' or 'leak'", ln)
            mode = toks[1][1]
        elif kw == "random":
            w = need_headers(ln)
            if len(toks) < 2:
                raise ProgramError("random takes a name", ln)
            name = fresh_name(toks[1], ln)
            lo = hi = None
            if len(toks) > 2:
                shape = [t[0] for t in toks[2:]]
                if shape != ["name", "num", "..", "num"] or toks[2][1] != "in":
                    raise ProgramError("range syntax is: in <lo>..<hi>", ln, toks[2][2])
                lo, hi = toks[3][1], toks[5][1]
                if lo > hi:
                    raise ProgramError(f"empty range {lo}..{hi}", ln, toks[3][2])
                if hi >> w:
                    raise ProgramError(f"range bound {hi} does not fit in {w} bit(s)", ln, toks[5][2])
            widths[name] = w
            statements.append(Statement("random", ln, name=name, lo=lo, hi=hi))
        elif kw == "input":
            w = need_headers(ln)
            if len(toks) != 2:
                raise ProgramError("input takes exactly one name", ln)
            name = fresh_name(toks[1], ln)
            widths[name] = w
            statements.append(Statement("input", ln, name=name))
        elif kw == "observe":
            w = need_headers(ln)
            if len(toks) < 3 or toks[2][0] != ":=":
                raise ProgramError("observe syntax is: observe <name> := <expr>", ln)
            name = fresh_name(toks[1], ln)
            parser = _ExprParser(toks[3:], ln, len(src) + 1)
            expr = parser.parse()
            ew = _expr_width(expr, widths) or w
            _check_constants(expr, ew, widths, w)
            widths[name] = ew
            statements.append(Statement("observe", ln, name=name, expr=expr))
        elif kw in ("assume", "win"):
            w = need_headers(ln)
            parser = _ExprParser(toks[1:], ln, len(src) + 1)
            expr = parser.parse()
            ew = _expr_width(expr, widths)
            if ew not in (None, 1):
                raise ProgramError(f"{kw} needs a 1-bit condition, found {ew} bits", ln, expr.col)
            _check_constants(expr, 1, widths, w)
            if kw == "win":
                if mode == "leak":
                    raise ProgramError("win is not allowed in leak mode", ln)
                if win_line is not None:
                    raise ProgramError(f"a second win statement (first on line {win_line})", ln)
                win_line = ln
            statements.append(Statement(kw, ln, expr=expr))
        else:
            raise ProgramError(f"unknown statement {kw!r}", ln, head[2])

    if width is None:
        raise ProgramError("missing width declaration", max(last_line, 1))
    if mode is None:
        raise ProgramError("missing mode declaration", max(last_line, 1))
    if not statements:
        raise ProgramError("program has no statements", max(last_line, 1))
    if mode == "reach" and win_line is None:
        raise ProgramError("reach mode needs exactly one win statement", last_line)
    return BvProgram(width, mode, tuple(statements))


# ---------------------------------------------------------------------------
# bitblasting

Bit = Union[bool, int]  # a constant, or a signed CNF literal


def _const_bits(value: int, w: int) -> list[Bit]:
    return [bool(value >> i & 1) for i in range(w)]


class _Lowerer:
    """Gate emitter with constant folding and structural sharing."""

    def __init__(self, first_gate_var: int):
        self.clauses: list[tuple[int, ...]] = []
        self.next_var = first_gate_var
        self._cache: dict[tuple, int] = {}

    def fresh(self) -> int:
        v = self.next_var
        self.next_var += 1
        return v

    def g_not(self, a: Bit) -> Bit:
        return (not a) if isinstance(a, bool) else -a

    def g_and(self, a: Bit, b: Bit) -> Bit:
        if a is False or b is False:
            return False
        if a is True:
            return b
        if b is True:
            return a
        if a == b:
            return a
        if a == -b:
            return False
        key = ("and", min(a, b), max(a, b))
        g = self._cache.get(key)
        if g is None:
            g = self.fresh()
            self.clauses += [(-g, a), (-g, b), (g, -a, -b)]
            self._cache[key] = g
        return g

    def g_or(self, a: Bit, b: Bit) -> Bit:
        if a is True or b is True:
            return True
        if a is False:
            return b
        if b is False:
            return a
        if a == b:
            return a
        if a == -b:
            return True
        key = ("or", min(a, b), max(a, b))
        g = self._cache.get(key)
        if g is None:
            g = self.fresh()
            self.clauses += [(g, -a), (g, -b), (-g, a, b)]
            self._cache[key] = g
        return g

    def g_xor(self, a: Bit, b: Bit) -> Bit:
        if isinstance(a, bool):
            return self.g_not(b) if a else b
        if isinstance(b, bool):
            return self.g_not(a) if b else a
        if a == b:
            return False
        if a == -b:
            return True
        key = ("xor", min(a, b), max(a, b))
        g = self._cache.get(key)
        if g is None:
            g = self.fresh()
            self.clauses += [(-g, a, b), (-g, -a, -b), (g, -a, b), (g, a, -b)]
            self._cache[key] = g
        return g

    def ripple_add(self, xs: Sequence[Bit], ys: Sequence[Bit], carry: Bit = False) -> list[Bit]:
        """Wraparound sum, least significant bit first; the final carry is dropped."""
        out = []
        for a, b in zip(xs, ys):
            axb = self.g_xor(a, b)
            out.append(self.g_xor(axb, carry))
            carry = self.g_or(self.g_and(a, b), self.g_and(carry, axb))
        return out

    def subtract(self, xs: Sequence[Bit], ys: Sequence[Bit]) -> list[Bit]:
        return self.ripple_add(xs, [self.g_not(b) for b in ys], True)

    def unsigned_ge(self, xs: Sequence[Bit], ys: Sequence[Bit]) -> Bit:
        # xs >= ys iff xs + ~ys + 1 carries out of the top bit
        carry: Bit = True
        for a, b in zip(xs, [self.g_not(y) for y in ys]):
            axb = self.g_xor(a, b)
            carry = self.g_or(self.g_and(a, b), self.g_and(carry, axb))
        return carry

    def equal(self, xs: Sequence[Bit], ys: Sequence[Bit]) -> Bit:
        acc: Bit = True
        for a, b in zip(xs, ys):
            acc = self.g_and(acc, self.g_not(self.g_xor(a, b)))
        return acc

    def assert_bit(self, b: Bit) -> None:
        if b is True:
            return
        self.clauses.append(() if b is False else (b,))

    def tie_equal(self, vars_: Sequence[int], bits: Sequence[Bit]) -> None:
        """Constrain pre-allocated variables to equal computed bits."""
        for v, b in zip(vars_, bits):
            if b is True:
                self.clauses.append((v,))
            elif b is False:
                self.clauses.append((-v,))
            else:
                self.clauses += [(-v, b), (v, -b)]

    def bits_of(
        self,
        e: BvExpr,
        env: Mapping[str, tuple[int, ...]],
        widths: Mapping[str, int],
        demand: int,
        default: int,
    ) -> list[Bit]:
        """Lower an expression to bits, LSB first; demand resolves constants."""
        if e.op == "const":
            return _const_bits(e.value, demand)
        if e.op == "var":
            return list(env[e.name])
        if e.op in ("add", "sub"):
            w = _expr_width(e, widths) or demand
            xs = self.bits_of(e.args[0], env, widths, w, default)
            ys = self.bits_of(e.args[1], env, widths, w, default)
            return self.ripple_add(xs, ys) if e.op == "add" else self.subtract(xs, ys)
        if e.op in ("eq", "ge", "le"):
            w = _expr_width(e.args[0], widths) or _expr_width(e.args[1], widths) or default
            xs = self.bits_of(e.args[0], env, widths, w, default)
            ys = self.bits_of(e.args[1], env, widths, w, default)
            if e.op == "eq":
                return [self.equal(xs, ys)]
            if e.op == "ge":
                return [self.unsigned_ge(xs, ys)]
            return [self.unsigned_ge(ys, xs)]
        if e.op == "not":
            return [self.g_not(self.bits_of(e.args[0], env, widths, 1, default)[0])]
        a = self.bits_of(e.args[0], env, widths, 1, default)[0]
        b = self.bits_of(e.args[1], env, widths, 1, default)[0]
        return [self.g_and(a, b) if e.op == "and" else self.g_or(a, b)]


@dataclass(frozen=True)
class BitMap:
    """Correspondence between program names and CNF variables."""

    width: int
    mode: str
    order: tuple[str, ...]  # declared names in statement order
    kind: dict[str, str]  # random | input | observe
    bits: dict[str, tuple[int, ...]]  # LSB first
    labels: dict[int, str]  # declared bit var -> rendering label
    aux_start: int  # first gate variable id
    num_vars: int

    def bit_label(self, var: int) -> str:
        return self.labels.get(var, str(var))

    def input_names(self) -> tuple[str, ...]:
        return tuple(n for n in self.order if self.kind[n] == "input")


def encode(prog: BvProgram) -> tuple[Problem, BitMap]:
    """Bitblast a program into a Problem plus the name-to-bit correspondence."""
    widths: dict[str, int] = {}
    bits: dict[str, tuple[int, ...]] = {}
    kind: dict[str, str] = {}
    order: list[str] = []
    labels: dict[int, str] = {}
    next_id = 1
    for st in prog.statements:
        if st.kind == "observe":
            w = _expr_width(st.expr, widths) or prog.width
        elif st.kind in ("random", "input"):
            w = prog.width
        else:
            continue
        span = tuple(range(next_id, next_id + w))
        next_id += w
        bits[st.name] = span
        widths[st.name] = w
        kind[st.name] = st.kind
        order.append(st.name)
        for i, v in enumerate(span):
            labels[v] = st.name if w == 1 else f"{st.name}[{i}]"

    aux_start = next_id
    lower = _Lowerer(next_id)
    deps_of: dict[str, tuple[str, ...]] = {}
    seen_observations: list[str] = []
    for st in prog.statements:
        if st.kind == "random":
            if st.lo is not None:
                span = bits[st.name]
                lower.assert_bit(lower.unsigned_ge(span, _const_bits(st.lo, len(span))))
                lower.assert_bit(lower.unsigned_ge(_const_bits(st.hi, len(span)), span))
        elif st.kind == "input":
            deps_of[st.name] = tuple(seen_observations)
        elif st.kind == "observe":
            out = lower.bits_of(st.expr, bits, widths, widths[st.name], prog.width)
            lower.tie_equal(bits[st.name], out)
            seen_observations.append(st.name)
        else:  # assume | win
            lower.assert_bit(lower.bits_of(st.expr, bits, widths, 1, prog.width)[0])

    num_vars = lower.next_var - 1
    input_bits = [v for n in order if kind[n] == "input" for v in bits[n]]
    random_bits = {v for n in order if kind[n] == "random" for v in bits[n]}
    observe_bits = {v for n in order if kind[n] == "observe" for v in bits[n]}
    aux = set(range(aux_start, lower.next_var))
    if prog.mode == "reach":
        count_vars = random_bits
        exist_vars = observe_bits | aux
    else:
        count_vars = observe_bits
        exist_vars = random_bits | aux
    deps = {}
    for name in order:
        if kind[name] != "input":
            continue
        h = frozenset(v for obs in deps_of[name] for v in bits[obs])
        for v in bits[name]:
            deps[v] = h
    problem = Problem.of(Cnf.build(num_vars, lower.clauses), input_bits, count_vars, exist_vars, deps)
    bitmap = BitMap(prog.width, prog.mode, tuple(order), kind, bits, labels, aux_start, num_vars)
    return problem, bitmap


# ---------------------------------------------------------------------------
# lifting solved bit functions back to readable equations

def minimize_minterms(
    support: Sequence[int], minterms: Iterable[Sequence[int]]
) -> tuple[tuple[int, ...], ...]:
    """Exact two-level minimization of a minterm set over its support.

    Classic prime-implicant construction, essential primes first, then a
    Petrick-style product-of-sums expansion for the leftovers; the winning
    cover has the fewest implicants, then the fewest literals, then the
    lexicographically least implicant list. Returns the implicants as
    tuples of signed support variables, () meaning the constant-true
    product; the empty cover is the constant false. Verified pointwise
    against the input before returning.
    """
    vs = tuple(sorted(support))
    k = len(vs)
    index = {v: j for j, v in enumerate(vs)}
    values = {sum(1 << index[lit] for lit in m if lit > 0) for m in minterms}
    full = (1 << k) - 1

    def covers(imp: tuple[int, int], m: int) -> bool:
        return m & imp[0] == imp[1]

    def implicant_key(imp: tuple[int, int]):
        return (bin(imp[0]).count("1"), imp[0], imp[1])

    chosen: list[tuple[int, int]] = []
    if values:
        current = {(full, v) for v in values}
        primes: set[tuple[int, int]] = set()
        while current:
            survivors = set(current)
            nxt = set()
            for mask, val in current:
                for j in range(k):
                    bit = 1 << j
                    if mask & bit and not val & bit and (mask, val | bit) in current:
                        nxt.add((mask & ~bit, val))
                        survivors.discard((mask, val))
                        survivors.discard((mask, val | bit))
            primes |= survivors
            current = nxt

        remaining = set(values)
        while remaining:
            essential = None
            for m in sorted(remaining):
                covering = [p for p in primes if covers(p, m)]
                if len(covering) == 1:
                    essential = covering[0]
                    break
            if essential is None:
                break
            chosen.append(essential)
            remaining = {m for m in remaining if not covers(essential, m)}
        if remaining:
            options: set[frozenset] = {frozenset()}
            for m in sorted(remaining):
                grown = {c | {p} for c in options for p in primes if covers(p, m)}
                options = {c for c in grown if not any(o < c for o in grown)}
            best = min(
                options,
                key=lambda c: (
                    len(c),
                    sum(bin(p[0]).count("1") for p in c),
                    sorted(implicant_key(p) for p in c),
                ),
            )
            chosen.extend(sorted(best, key=implicant_key))

    cover = tuple(
        tuple((vs[j] if val >> j & 1 else -vs[j]) for j in range(k) if mask >> j & 1)
        for mask, val in sorted(set((m, v & m) for m, v in chosen), key=implicant_key)
    )
    for point in range(1 << k):
        got = any(all((point >> index[abs(l)] & 1) == (l > 0) for l in imp) for imp in cover)
        assert got == (point in values), "minimized cover drifted from the raw function"
    return cover


def evaluate_cover(cover: Iterable[Sequence[int]], assignment: Mapping[int, bool]) -> bool:
    return any(all(assignment[abs(l)] == (l > 0) for l in imp) for imp in cover)


@dataclass(frozen=True)
class LiftedFunction:
    """One input variable's synthesized strategy in readable per-bit form.

    bit_covers and bit_texts run most significant bit first; rendered is
    the full equation line, bits separated by spaces.
    """

    name: str
    bit_covers: tuple[tuple[tuple[int, ...], ...], ...]
    bit_texts: tuple[str, ...]
    rendered: str


def _render_bit(cover: tuple[tuple[int, ...], ...], bitmap: BitMap) -> str:
    if cover == ():
        return "0"
    if cover == ((),):
        return "1"
    if len(cover) == 1 and len(cover[0]) == 1 and cover[0][0] > 0:
        return bitmap.bit_label(cover[0][0])
    terms = []
    for imp in cover:
        lits = [("!" if lit < 0 else "") + bitmap.bit_label(abs(lit)) for lit in imp]
        terms.append(" & ".join(lits) if lits else "1")
    return "(" + " | ".join(terms) + ")"


def lift(solution: Solution, bitmap: BitMap) -> tuple[LiftedFunction, ...]:
    """Minimize and render every input's bit functions, inputs in program order."""
    out = []
    for name in bitmap.input_names():
        covers = []
        texts = []
        for v in reversed(bitmap.bits[name]):
            fn: MintermFunction = solution.functions[v]
            cover = minimize_minterms(fn.support, fn.minterms)
            covers.append(cover)
            texts.append(_render_bit(cover, bitmap))
        out.append(
            LiftedFunction(name, tuple(covers), tuple(texts), f"{name} = " + " ".join(texts))
        )
    return tuple(out)
