"""Clause normal form for lowered problems.

Negation normal form, then outer skolemization (skolem arguments are the
universal variables in scope), then naive or-over-and distribution.  The
result is equisatisfiable; skolem symbols share the reserved generated
prefix and continue the translation's counter so names never collide.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..terms import (
    AND,
    App,
    Eq,
    Exists,
    FALSE_NAME,
    Forall,
    IFF,
    IMPLIES,
    NOT,
    OR,
    RESERVED_PREFIX,
    Sort,
    Term,
    TRUE_NAME,
    TypeContext,
    TypeSig,
    Var,
)
from ..translate import FolProblem
from .clauses import Clause, Literal, dedup_literals


class ClauseExplosion(Exception):
    """Distribution exceeded the configured clause cap."""


@dataclass
class ClausifyResult:
    clauses: list[Clause]
    ctx: TypeContext
    fresh_counter: int


def clausify(problem: FolProblem, max_clauses: int = 10_000) -> ClausifyResult:
    """Clauses for the problem's axioms and goal, with the extended
    context covering the introduced skolem symbols."""
    state = _Clausifier(problem.ctx, problem.fresh_counter, max_clauses)
    clauses: list[Clause] = []
    for formula in [*problem.axioms, problem.goal]:
        clauses.extend(state.formula_clauses(formula))
        if len(clauses) > max_clauses:
            raise ClauseExplosion(f"more than {max_clauses} clauses")
    return ClausifyResult(clauses, state.ctx, state.counter)


class _Clausifier:
    def __init__(self, ctx: TypeContext, counter: int, max_clauses: int) -> None:
        self.ctx = ctx
        self.counter = counter
        self.max_clauses = max_clauses
        self.var_counter = 0
        self.var_sorts: dict[str, Sort] = {}

    def fresh_skolem(self) -> str:
        while True:
            name = f"{RESERVED_PREFIX}{self.counter}"
            self.counter += 1
            if self.ctx.fn_sig(name) is None:
                return name

    def fresh_var(self, sort: Sort) -> str:
        name = f"V{self.var_counter}"
        self.var_counter += 1
        self.var_sorts[name] = sort
        return name

    # -- negation normal form -------------------------------------------

    def nnf(self, t: Term, positive: bool) -> Term:
        if isinstance(t, App) and t.fn == NOT:
            return self.nnf(t.args[0], not positive)
        if isinstance(t, App) and t.fn == AND:
            a, b = (self.nnf(x, positive) for x in t.args)
            return App(AND if positive else OR, (a, b))
        if isinstance(t, App) and t.fn == OR:
            a, b = (self.nnf(x, positive) for x in t.args)
            return App(OR if positive else AND, (a, b))
        if isinstance(t, App) and t.fn == IMPLIES:
            left = self.nnf(t.args[0], not positive)
            right = self.nnf(t.args[1], positive)
            return App(OR if positive else AND, (left, right))
        if isinstance(t, App) and t.fn == IFF:
            a, b = t.args
            if positive:
                return App(
                    AND,
                    (
                        App(OR, (self.nnf(a, False), self.nnf(b, True))),
                        App(OR, (self.nnf(a, True), self.nnf(b, False))),
                    ),
                )
            return App(
                AND,
                (
                    App(OR, (self.nnf(a, True), self.nnf(b, True))),
                    App(OR, (self.nnf(a, False), self.nnf(b, False))),
                ),
            )
        if isinstance(t, Forall):
            node = Forall if positive else Exists
            return node(t.var, t.sort, self.nnf(t.body, positive))
        if isinstance(t, Exists):
            node = Exists if positive else Forall
            return node(t.var, t.sort, self.nnf(t.body, positive))
        if isinstance(t, (Eq, App, Var)):
            # Atom (predicate application, equation, truth constant,
            # boolean variable cannot occur here after translation).
            return t if positive else App(NOT, (t,))
        raise TypeError(f"clausification expects first-order input, got {t!r}")

    # -- skolemization ----------------------------------------------------

    def skolemize(self, t: Term, univ: list[tuple[str, Sort]], subst: dict[str, Term]) -> Term:
        if isinstance(t, Forall):
            fresh = self.fresh_var(t.sort)
            inner = {**subst, t.var: Var(fresh)}
            return self.skolemize(t.body, univ + [(fresh, t.sort)], inner)
        if isinstance(t, Exists):
            sk = self.fresh_skolem()
            self.ctx = self.ctx.with_fn(sk, TypeSig(tuple(s for _, s in univ), t.sort))
            witness = App(sk, tuple(Var(v) for v, _ in univ))
            inner = {**subst, t.var: witness}
            return self.skolemize(t.body, univ, inner)
        if isinstance(t, App) and t.fn in (AND, OR):
            return App(t.fn, tuple(self.skolemize(a, univ, subst) for a in t.args))
        return _substitute(t, subst)

    # -- distribution ------------------------------------------------------

    def distribute(self, t: Term) -> list[list[Term]]:
        if isinstance(t, App) and t.fn == AND:
            out = []
            for part in t.args:
                out.extend(self.distribute(part))
                if len(out) > self.max_clauses:
                    raise ClauseExplosion(f"more than {self.max_clauses} clauses")
            return out
        if isinstance(t, App) and t.fn == OR:
            left = self.distribute(t.args[0])
            right = self.distribute(t.args[1])
            if len(left) * len(right) > self.max_clauses:
                raise ClauseExplosion(f"more than {self.max_clauses} clauses")
            return [a + b for a in left for b in right]
        return [[t]]

    # -- literal conversion -------------------------------------------------

    def to_clause(self, leaves: list[Term]) -> Clause | None:
        """None when the clause is trivially valid (contains a true atom)."""
        literals: list[Literal] = []
        for leaf in leaves:
            positive = True
            atom = leaf
            if isinstance(atom, App) and atom.fn == NOT:
                positive = False
                atom = atom.args[0]
            if isinstance(atom, App) and atom.fn == TRUE_NAME:
                if positive:
                    return None
                continue
            if isinstance(atom, App) and atom.fn == FALSE_NAME:
                if positive:
                    continue
                return None
            if isinstance(atom, Eq):
                literals.append(Literal(positive, atom.left, atom.right))
            elif isinstance(atom, App):
                literals.append(Literal(positive, atom))
            else:
                raise TypeError(f"unexpected clause atom {atom!r}")
        sorts = {
            v: self.var_sorts[v]
            for lit in literals
            for t in lit.terms()
            for v in _term_vars(t)
        }
        return Clause(dedup_literals(tuple(literals)), sorts)

    def formula_clauses(self, formula: Term) -> list[Clause]:
        tree = self.skolemize(self.nnf(formula, True), [], {})
        out = []
        for leaves in self.distribute(tree):
            clause = self.to_clause(leaves)
            if clause is not None:
                out.append(_canonicalize(clause))
        return out


def _substitute(t: Term, subst: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return subst.get(t.name, t)
    if isinstance(t, App):
        return App(t.fn, tuple(_substitute(a, subst) for a in t.args))
    if isinstance(t, Eq):
        return Eq(_substitute(t.left, subst), _substitute(t.right, subst))
    raise TypeError(f"unexpected node under skolemization: {t!r}")


def _term_vars(t: Term):
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, App):
        for a in t.args:
            yield from _term_vars(a)


def _canonicalize(clause: Clause) -> Clause:
    """Rename clause variables to X0, X1, ... by first occurrence."""
    order: list[str] = []
    for lit in clause.literals:
        for t in lit.terms():
            for v in _term_vars(t):
                if v not in order:
                    order.append(v)
    mapping = {v: Var(f"X{i}") for i, v in enumerate(order)}
    sorts = {f"X{i}": clause.var_sorts[v] for i, v in enumerate(order)}

    def rename(t: Term) -> Term:
        if isinstance(t, Var):
            return mapping[t.name]
        return App(t.fn, tuple(rename(a) for a in t.args))

    literals = tuple(
        Literal(
            lit.positive,
            rename(lit.lhs),
            rename(lit.rhs) if lit.rhs is not None else None,
        )
        for lit in clause.literals
    )
    return Clause(literals, sorts)
