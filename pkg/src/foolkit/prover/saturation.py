"""Given-clause saturation with ordered paramodulation and a dedicated
boolean inference rule.

Two ways to handle the two-element boolean domain:

  * axiom mode keeps the clause ``x = true | x = false`` (and pays for
    its self-paramodulation);
  * rule mode drops that clause and instead derives, from any clause
    containing a non-variable boolean subterm s other than a truth
    constant, the clause ``C[true] | s = false``.

Literal selection is select-nothing: all maximal literals are eligible.
Redundancy handling is tautology deletion plus forward subsumption by
variable renaming, nothing stronger.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from ..terms import App, BOOL, FALSE_NAME, Term, TRUE_NAME, TypeContext, Var
from .clauses import Clause, Literal, dedup_literals
from .ordering import (
    DEFAULT_ORDERING,
    OrderingConfig,
    kbo_greater_or_equal,
    maximal_literal_indices,
)
from .unification import (
    apply_subst,
    apply_subst_literal,
    mgu,
    rename_clause,
    subsumes_by_variant,
    unify_atoms,
)

AXIOM_MODE = "axiom"
RULE_MODE = "rule"


@dataclass
class ProverConfig:
    bool_mode: str = RULE_MODE
    max_clauses: int = 100_000  # cap on generated clauses
    max_seconds: float = 10.0
    max_processed: int | None = None  # given-clause budget; None = unlimited
    ordering: OrderingConfig = field(default_factory=lambda: DEFAULT_ORDERING)


@dataclass
class SaturationResult:
    verdict: str  # refuted | saturated | limit
    empty_clause: Clause | None
    clauses: dict[int, Clause]
    stats: dict[str, float]

    def proof(self) -> list[Clause]:
        """Ancestors of the empty clause, parents before children."""
        if self.empty_clause is None:
            return []
        needed: set[int] = set()
        queue = list(self.empty_clause.parents)
        while queue:
            cid = queue.pop()
            if cid in needed:
                continue
            needed.add(cid)
            queue.extend(self.clauses[cid].parents)
        lines = [self.clauses[cid] for cid in sorted(needed)]
        lines.append(self.empty_clause)
        return lines

    def render_proof(self) -> str:
        out = []
        for clause in self.proof():
            ref = ", ".join(str(p) for p in clause.parents)
            note = f"[{clause.rule}, {ref}]" if ref else f"[{clause.rule}]"
            shown_id = 0 if clause.is_empty else clause.id
            out.append(f"{shown_id}. {clause.render()} {note}")
        return "\n".join(out)

    def render_stats(self) -> str:
        return "\n".join(f"{key}={self.stats[key]}" for key in sorted(self.stats))


def is_bool_domain_clause(clause: Clause) -> bool:
    """A variant of ``x = true | x = false`` over one boolean variable."""
    if len(clause.literals) != 2:
        return False
    var_names = set()
    constants = set()
    for lit in clause.literals:
        if not (lit.positive and lit.is_equation):
            return False
        sides = (lit.lhs, lit.rhs)
        vs = [x for x in sides if isinstance(x, Var)]
        cs = [x for x in sides if isinstance(x, App) and not x.args]
        if len(vs) != 1 or len(cs) != 1:
            return False
        var_names.add(vs[0].name)
        constants.add(cs[0].fn)
    return len(var_names) == 1 and constants == {TRUE_NAME, FALSE_NAME}


def has_var_var_equation(clause: Clause) -> bool:
    return any(
        lit.is_equation
        and isinstance(lit.lhs, Var)
        and isinstance(lit.rhs, Var)
        and lit.lhs != lit.rhs
        for lit in clause.literals
    )


# ---------------------------------------------------------------------------
# positions inside literals


def _positions(t: Term, path: tuple[int, ...] = ()):
    yield path, t
    if isinstance(t, App):
        for i, a in enumerate(t.args):
            yield from _positions(a, path + (i,))


def _replace(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    assert isinstance(t, App)
    args = list(t.args)
    args[path[0]] = _replace(args[path[0]], path[1:], new)
    return App(t.fn, tuple(args))


def _literal_positions(lit: Literal):
    """(side index, path, subterm) triples over the literal's terms."""
    for side, term in enumerate(lit.terms()):
        yield from ((side, path, sub) for path, sub in _positions(term))


def _replace_in_literal(lit: Literal, side: int, path: tuple[int, ...], new: Term) -> Literal:
    if side == 0:
        return Literal(lit.positive, _replace(lit.lhs, path, new), lit.rhs)
    return Literal(lit.positive, lit.lhs, _replace(lit.rhs, path, new))


# ---------------------------------------------------------------------------
# the saturation engine


class _Saturation:
    def __init__(self, ctx: TypeContext, config: ProverConfig) -> None:
        self.ctx = ctx
        self.config = config
        self.clauses: dict[int, Clause] = {}
        self.kept_order: list[int] = []
        self.passive: list[tuple[int, int]] = []
        self.processed: list[int] = []
        self.next_id = 1
        self.empty: Clause | None = None
        self.stats: dict[str, float] = {
            "generated": 0,
            "kept": 0,
            "processed": 0,
            "tautologies": 0,
            "subsumed": 0,
            "var_var_equation_clauses": 0,
            "input": 0,
            "paramodulation": 0,
            "fool_paramodulation": 0,
            "resolution": 0,
            "factoring": 0,
            "equality_resolution": 0,
            "bool_axiom_clauses_removed": 0,
        }

    # -- bookkeeping ------------------------------------------------------

    def sort_of_factory(self, var_sorts: dict[str, object]):
        ctx = self.ctx

        def sort_of(t: Term):
            if isinstance(t, Var):
                return var_sorts[t.name]
            sig = ctx.fn_sig(t.fn)
            if sig is None:
                raise KeyError(f"undeclared symbol {t.fn!r} in clause")
            return sig.result

        return sort_of

    def record_new(self, literals, var_sorts, rule: str, parents: tuple[int, ...]) -> None:
        self.stats["generated"] += 1
        self.stats[rule] += 1
        clause = Clause(dedup_literals(tuple(literals)), dict(var_sorts), rule=rule, parents=parents)
        clause.var_sorts = clause.trimmed_var_sorts()
        if has_var_var_equation(clause):
            self.stats["var_var_equation_clauses"] += 1
        if clause.is_empty:
            clause.id = 0
            self.empty = clause
            return
        if clause.is_tautology():
            self.stats["tautologies"] += 1
            return
        for cid in self.kept_order:
            other = self.clauses[cid]
            if len(other.literals) <= len(clause.literals) and subsumes_by_variant(
                other, clause
            ):
                self.stats["subsumed"] += 1
                return
        clause.id = self.next_id
        self.next_id += 1
        self.clauses[clause.id] = clause
        self.kept_order.append(clause.id)
        self.stats["kept"] += 1
        heapq.heappush(self.passive, (len(clause.literals), clause.id))

    # -- inference rules ----------------------------------------------------

    def paramodulate(self, from_clause: Clause, into_clause: Clause) -> None:
        """Ordered paramodulation from positive equations of one clause
        into non-variable subterm positions of the other."""
        config = self.config.ordering
        fc, counter = rename_clause(from_clause, 0)
        ic, _ = rename_clause(into_clause, counter)
        merged = {**fc.var_sorts, **ic.var_sorts}
        sort_of = self.sort_of_factory(merged)
        from_eligible = maximal_literal_indices(fc, config)
        into_eligible = maximal_literal_indices(ic, config)
        for fi in from_eligible:
            flit = fc.literals[fi]
            if not (flit.positive and flit.is_equation):
                continue
            for l, r in ((flit.lhs, flit.rhs), (flit.rhs, flit.lhs)):
                for ii in into_eligible:
                    ilit = ic.literals[ii]
                    for side, path, sub in _literal_positions(ilit):
                        if isinstance(sub, Var):
                            continue
                        if not ilit.is_equation and path == ():
                            continue  # a predicate atom is not a term position
                        theta = mgu(l, sub, sort_of)
                        if theta is None:
                            continue
                        if kbo_greater_or_equal(
                            apply_subst(r, theta), apply_subst(l, theta), config
                        ):
                            continue
                        rewritten = _replace_in_literal(ilit, side, path, r)
                        literals = [
                            apply_subst_literal(rewritten, theta),
                            *(
                                apply_subst_literal(x, theta)
                                for k, x in enumerate(fc.literals)
                                if k != fi
                            ),
                            *(
                                apply_subst_literal(x, theta)
                                for k, x in enumerate(ic.literals)
                                if k != ii
                            ),
                        ]
                        self.record_new(
                            literals,
                            merged,
                            "paramodulation",
                            (from_clause.id, into_clause.id),
                        )

    def fool_paramodulate(self, clause: Clause) -> None:
        """From C[s] with s a non-variable boolean subterm other than a
        truth constant, derive C[true] | s = false."""
        config = self.config.ordering
        for ii in maximal_literal_indices(clause, config):
            lit = clause.literals[ii]
            for side, path, sub in _literal_positions(lit):
                if not isinstance(sub, App) or sub.fn in (TRUE_NAME, FALSE_NAME):
                    continue
                sig = self.ctx.fn_sig(sub.fn)
                if sig is None or sig.result != BOOL:
                    continue
                if not lit.is_equation and path == ():
                    continue  # the atom itself is not a boolean term position
                rewritten = _replace_in_literal(lit, side, path, App(TRUE_NAME))
                literals = [
                    rewritten,
                    *(x for k, x in enumerate(clause.literals) if k != ii),
                    Literal(True, sub, App(FALSE_NAME)),
                ]
                self.record_new(
                    literals, clause.var_sorts, "fool_paramodulation", (clause.id,)
                )

    def resolve(self, c1: Clause, c2: Clause) -> None:
        config = self.config.ordering
        a, counter = rename_clause(c1, 0)
        b, _ = rename_clause(c2, counter)
        merged = {**a.var_sorts, **b.var_sorts}
        sort_of = self.sort_of_factory(merged)
        for i in maximal_literal_indices(a, config):
            for j in maximal_literal_indices(b, config):
                l1, l2 = a.literals[i], b.literals[j]
                if l1.positive == l2.positive:
                    continue
                for theta in unify_atoms(l1, l2, sort_of):
                    literals = [
                        apply_subst_literal(x, theta)
                        for k, x in enumerate(a.literals)
                        if k != i
                    ] + [
                        apply_subst_literal(x, theta)
                        for k, x in enumerate(b.literals)
                        if k != j
                    ]
                    self.record_new(literals, merged, "resolution", (c1.id, c2.id))

    def factor(self, clause: Clause) -> None:
        config = self.config.ordering
        sort_of = self.sort_of_factory(clause.var_sorts)
        for i in maximal_literal_indices(clause, config):
            for j, other in enumerate(clause.literals):
                if j == i:
                    continue
                lit = clause.literals[i]
                if not (lit.positive and other.positive):
                    continue
                for theta in unify_atoms(lit, other, sort_of):
                    literals = [
                        apply_subst_literal(x, theta)
                        for k, x in enumerate(clause.literals)
                        if k != j
                    ]
                    self.record_new(literals, clause.var_sorts, "factoring", (clause.id,))

    def equality_resolve(self, clause: Clause) -> None:
        config = self.config.ordering
        sort_of = self.sort_of_factory(clause.var_sorts)
        for i in maximal_literal_indices(clause, config):
            lit = clause.literals[i]
            if lit.positive or not lit.is_equation:
                continue
            theta = mgu(lit.lhs, lit.rhs, sort_of)
            if theta is None:
                continue
            literals = [
                apply_subst_literal(x, theta)
                for k, x in enumerate(clause.literals)
                if k != i
            ]
            self.record_new(literals, clause.var_sorts, "equality_resolution", (clause.id,))

    # -- the loop ------------------------------------------------------------

    def run(self, inputs: list[Clause]) -> SaturationResult:
        deadline = time.monotonic() + self.config.max_seconds
        for clause in inputs:
            if (
                self.config.bool_mode == RULE_MODE
                and is_bool_domain_clause(clause)
            ):
                self.stats["bool_axiom_clauses_removed"] += 1
                continue
            self.record_new(clause.literals, clause.var_sorts, "input", ())
            if self.empty is not None:
                return self.result("refuted")

        while self.passive:
            if self.stats["generated"] >= self.config.max_clauses:
                return self.result("limit")
            if (
                self.config.max_processed is not None
                and self.stats["processed"] >= self.config.max_processed
            ):
                return self.result("limit")
            if time.monotonic() > deadline:
                return self.result("limit")
            _, cid = heapq.heappop(self.passive)
            given = self.clauses[cid]
            self.processed.append(cid)
            self.stats["processed"] += 1

            self.factor(given)
            self.equality_resolve(given)
            if self.config.bool_mode == RULE_MODE:
                self.fool_paramodulate(given)
            for pid in list(self.processed):
                partner = self.clauses[pid]
                self.paramodulate(given, partner)
                if pid != cid:
                    self.paramodulate(partner, given)
                    self.resolve(given, partner)
                else:
                    self.resolve(given, partner)
                if self.empty is not None:
                    return self.result("refuted")
            if self.empty is not None:
                return self.result("refuted")
        return self.result("saturated")

    def result(self, verdict: str) -> SaturationResult:
        return SaturationResult(verdict, self.empty, dict(self.clauses), dict(self.stats))


def saturate(
    clauses: list[Clause], ctx: TypeContext, config: ProverConfig | None = None
) -> SaturationResult:
    """Run the given-clause loop to refutation, saturation, or a limit."""
    engine = _Saturation(ctx, config or ProverConfig())
    return engine.run(clauses)
