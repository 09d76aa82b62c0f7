"""Finite interpretations, evaluation, and the enumeration oracle.

Carriers are index ranges 0..n-1 with the boolean carrier fixed to
{0, 1}; truth constants and connectives have their standard meaning and
are never stored in tables.  Enumeration is lexicographic over symbol
tables, symbols sorted by name, so counterexamples are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .terms import (
    AND,
    App,
    BOOL,
    BUILTIN_FNS,
    Eq,
    Exists,
    FALSE_NAME,
    Forall,
    IFF,
    IMPLIES,
    Ite,
    Let,
    NOT,
    OR,
    Sort,
    Term,
    TRUE_NAME,
    TypeContext,
    Var,
    free_fns,
)

DEFAULT_CAP = 10_000_000


class EnumerationOverflow(Exception):
    """The requested interpretation space exceeds the configured cap."""

    def __init__(self, count: int, cap: int) -> None:
        super().__init__(f"{count} interpretations exceed the cap of {cap}")
        self.count = count
        self.cap = cap


@dataclass
class DomainSpec:
    """Carrier sizes per sort; the boolean carrier is always {0, 1}."""

    sizes: dict[Sort, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for sort, n in self.sizes.items():
            if n < 1:
                raise ValueError(f"carrier of {sort} must be nonempty")
            if sort.is_bool and n != 2:
                raise ValueError("the boolean carrier has exactly two elements")
        self.sizes = dict(self.sizes)
        self.sizes[BOOL] = 2

    def size(self, sort: Sort) -> int:
        try:
            return self.sizes[sort]
        except KeyError:
            raise KeyError(f"no carrier size given for sort {sort}") from None


@dataclass
class Interpretation:
    """Carrier sizes, total function tables and a variable assignment."""

    sizes: dict[Sort, int]
    tables: dict[str, dict[tuple[int, ...], int]]
    assign: dict[str, int] = field(default_factory=dict)

    def with_var(self, name: str, value: int) -> "Interpretation":
        assign = dict(self.assign)
        assign[name] = value
        return Interpretation(self.sizes, self.tables, assign)

    def with_fn(self, name: str, table: dict[tuple[int, ...], int]) -> "Interpretation":
        tables = dict(self.tables)
        tables[name] = table
        return Interpretation(self.sizes, tables, self.assign)

    def dump(self) -> str:
        """Deterministic one-line rendering, used in counterexample reports."""
        parts = []
        for name in sorted(self.tables):
            entries = ",".join(
                f"{'' if not args else ':'.join(map(str, args))}->{val}"
                for args, val in sorted(self.tables[name].items())
            )
            parts.append(f"{name}{{{entries}}}")
        for name in sorted(self.assign):
            parts.append(f"{name}={self.assign[name]}")
        return " ".join(parts)


def eval_term(interp: Interpretation, t: Term) -> int:
    """The value of t, an element of the carrier of t's sort.

    The interpretation must cover every free variable and free function
    symbol of t; a missing entry raises KeyError.
    """
    if isinstance(t, Var):
        try:
            return interp.assign[t.name]
        except KeyError:
            raise KeyError(f"variable {t.name!r} not interpreted") from None

    if isinstance(t, App):
        if t.fn == TRUE_NAME:
            return 1
        if t.fn == FALSE_NAME:
            return 0
        if t.fn == NOT:
            return 1 - eval_term(interp, t.args[0])
        if t.fn == AND:
            return eval_term(interp, t.args[0]) & eval_term(interp, t.args[1])
        if t.fn == OR:
            return eval_term(interp, t.args[0]) | eval_term(interp, t.args[1])
        if t.fn == IMPLIES:
            return (1 - eval_term(interp, t.args[0])) | eval_term(interp, t.args[1])
        if t.fn == IFF:
            return int(eval_term(interp, t.args[0]) == eval_term(interp, t.args[1]))
        try:
            table = interp.tables[t.fn]
        except KeyError:
            raise KeyError(f"function symbol {t.fn!r} not interpreted") from None
        point = tuple(eval_term(interp, a) for a in t.args)
        return table[point]

    if isinstance(t, Ite):
        if eval_term(interp, t.cond) == 1:
            return eval_term(interp, t.then)
        return eval_term(interp, t.els)

    if isinstance(t, Let):
        spaces = [range(interp.sizes[s]) for _, s in t.params]
        names = [x for x, _ in t.params]
        table: dict[tuple[int, ...], int] = {}
        for point in itertools.product(*spaces):
            inner = interp
            for name, value in zip(names, point):
                inner = inner.with_var(name, value)
            table[point] = eval_term(inner, t.body)
        return eval_term(interp.with_fn(t.fn, table), t.scope)

    if isinstance(t, Eq):
        return int(eval_term(interp, t.left) == eval_term(interp, t.right))

    if isinstance(t, Forall):
        for a in range(interp.sizes[t.sort]):
            if eval_term(interp.with_var(t.var, a), t.body) != 1:
                return 0
        return 1

    if isinstance(t, Exists):
        for a in range(interp.sizes[t.sort]):
            if eval_term(interp.with_var(t.var, a), t.body) == 1:
                return 1
        return 0

    raise TypeError(f"not a term: {t!r}")


def models(interp: Interpretation, phi: Term) -> bool:
    """True iff the formula evaluates to 1."""
    return eval_term(interp, phi) == 1


# ---------------------------------------------------------------------------
# enumeration


def _table_space(ctx: TypeContext, spec: DomainSpec, fn: str):
    """(argument tuples in lexicographic order, result carrier size)."""
    sig = ctx.fn_sig(fn)
    if sig is None:
        raise KeyError(f"symbol {fn!r} not declared")
    points = list(itertools.product(*(range(spec.size(s)) for s in sig.args)))
    return points, spec.size(sig.result)


def table_count(ctx: TypeContext, spec: DomainSpec, symbols) -> int:
    """Number of distinct joint table assignments for the given symbols."""
    total = 1
    for fn in symbols:
        points, rng = _table_space(ctx, spec, fn)
        total *= rng ** len(points)
    return total


def _iter_tables(ctx: TypeContext, spec: DomainSpec, symbols: list[str]):
    """Yield dicts symbol -> table, lexicographic per symbol, symbols in
    the given order (callers pass sorted names for determinism)."""
    spaces = []
    for fn in symbols:
        points, rng = _table_space(ctx, spec, fn)
        spaces.append((fn, points, rng))

    def rec(i: int, acc: dict):
        if i == len(spaces):
            yield dict(acc)
            return
        fn, points, rng = spaces[i]
        for values in itertools.product(range(rng), repeat=len(points)):
            acc[fn] = dict(zip(points, values))
            yield from rec(i + 1, acc)
        acc.pop(fn, None)

    yield from rec(0, {})


def enumerate_interpretations(
    ctx: TypeContext,
    spec: DomainSpec,
    symbols,
    cap: int = DEFAULT_CAP,
):
    """Every interpretation of exactly the listed symbols over the spec's
    carriers, deterministically ordered; raises EnumerationOverflow when
    the total count exceeds the cap.

    The result set is a pure function of (ctx, spec, symbols); it may be
    partitioned by table prefix without changing the union.
    """
    names = sorted(symbols)
    count = table_count(ctx, spec, names)
    if count > cap:
        raise EnumerationOverflow(count, cap)
    sizes = dict(spec.sizes)
    for tables in _iter_tables(ctx, spec, names):
        yield Interpretation(sizes, tables)


# ---------------------------------------------------------------------------
# model preservation


@dataclass
class PreservationReport:
    checked: int
    counterexamples: list[tuple[str, Interpretation]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def render(self) -> str:
        if self.ok:
            return f"OK {self.checked}"
        lines = [
            f"COUNTEREXAMPLE {direction} {interp.dump()}"
            for direction, interp in self.counterexamples
        ]
        return "\n".join(lines)


def check_model_preservation(
    phi: Term,
    translated,
    spec: DomainSpec,
    cap: int = DEFAULT_CAP,
) -> PreservationReport:
    """Exhaustively compare models of phi with models of the translation.

    ``translated`` is a finished translation state carrying the rewritten
    formula (.current), the definitions (.defs), the extended context
    (.ctx) and the introduced symbols (.fresh_symbols).  Two directions
    are checked over all interpretations within the spec:

      extension: every model of phi extends (by tables for the new
        symbols) to a model of the definitions plus the rewritten formula;
      reduct: every model of the definitions plus the rewritten formula
        is a model of phi.

    Original-symbol tables stay fixed during the extension search; only
    the translation-introduced symbols are enumerated.
    """
    ctx = translated.ctx
    fresh = sorted(translated.fresh_symbols)
    base_symbols = sorted(
        fn
        for fn in free_fns(phi) | set().union(*(free_fns(d) for d in translated.defs), free_fns(translated.current))
        if fn not in BUILTIN_FNS and fn not in fresh
    )

    base_count = table_count(ctx, spec, base_symbols)
    ext_count = table_count(ctx, spec, fresh)
    total = base_count * ext_count
    if total > cap:
        raise EnumerationOverflow(total, cap)

    defs = list(translated.defs)
    phi_prime = translated.current
    sizes = dict(spec.sizes)
    report = PreservationReport(checked=total)

    for base_tables in _iter_tables(ctx, spec, base_symbols):
        base = Interpretation(sizes, base_tables)
        phi_holds = models(base, phi)
        extension_found = False
        for ext_tables in _iter_tables(ctx, spec, fresh):
            combined = Interpretation(sizes, {**base_tables, **ext_tables})
            if all(models(combined, d) for d in defs) and models(combined, phi_prime):
                extension_found = True
                if not phi_holds:
                    report.counterexamples.append(("reduct", combined))
        if phi_holds and not extension_found:
            report.counterexamples.append(("extension", base))
    return report
