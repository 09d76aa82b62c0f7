"""Unification, matching and renaming over clause-level terms.

Clause terms contain only variables and applications.  Unification is
sort-aware when given a sort function, so a boolean variable never binds
to a term of another sort.
"""

from __future__ import annotations

from typing import Callable

from ..terms import App, Sort, Term, Var
from .clauses import Clause, Literal

Subst = dict[str, Term]
SortOf = Callable[[Term], Sort]


def apply_subst(t: Term, subst: Subst) -> Term:
    if not subst:
        return t
    if isinstance(t, Var):
        got = subst.get(t.name)
        return got if got is not None else t
    return App(t.fn, tuple(apply_subst(a, subst) for a in t.args))


def apply_subst_literal(lit: Literal, subst: Subst) -> Literal:
    rhs = apply_subst(lit.rhs, subst) if lit.rhs is not None else None
    return Literal(lit.positive, apply_subst(lit.lhs, subst), rhs)


def occurs(name: str, t: Term) -> bool:
    if isinstance(t, Var):
        return t.name == name
    return any(occurs(name, a) for a in t.args)


def mgu(s: Term, t: Term, sort_of: SortOf | None = None) -> Subst | None:
    """Idempotent most general unifier with occurs check, or None.

    With ``sort_of`` given, a variable only binds to terms of its sort.
    """
    subst: Subst = {}
    queue: list[tuple[Term, Term]] = [(s, t)]
    while queue:
        a, b = queue.pop()
        a = apply_subst(a, subst)
        b = apply_subst(b, subst)
        if a == b:
            continue
        if isinstance(a, Var):
            if occurs(a.name, b):
                return None
            if sort_of is not None and sort_of(a) != sort_of(b):
                return None
            _bind(subst, a.name, b)
            continue
        if isinstance(b, Var):
            if occurs(b.name, a):
                return None
            if sort_of is not None and sort_of(a) != sort_of(b):
                return None
            _bind(subst, b.name, a)
            continue
        if a.fn != b.fn or len(a.args) != len(b.args):
            return None
        queue.extend(zip(a.args, b.args))
    return subst


def _bind(subst: Subst, name: str, value: Term) -> None:
    single = {name: value}
    for key in list(subst):
        subst[key] = apply_subst(subst[key], single)
    subst[name] = value


def unify_pairs(pairs: list[tuple[Term, Term]], sort_of: SortOf | None = None) -> Subst | None:
    """Simultaneous unifier of several term pairs."""
    subst: Subst = {}
    for a, b in pairs:
        got = mgu(apply_subst(a, subst), apply_subst(b, subst), sort_of)
        if got is None:
            return None
        for key in list(subst):
            subst[key] = apply_subst(subst[key], got)
        subst.update(got)
    return subst


def unify_atoms(l1: Literal, l2: Literal, sort_of: SortOf | None = None) -> list[Subst]:
    """Unifiers of two atoms, ignoring polarity; equations try both
    orientations."""
    if l1.is_equation != l2.is_equation:
        return []
    out = []
    if not l1.is_equation:
        a, b = l1.lhs, l2.lhs
        if isinstance(a, App) and isinstance(b, App) and a.fn == b.fn:
            got = unify_pairs(list(zip(a.args, b.args)), sort_of)
            if got is not None:
                out.append(got)
        return out
    for left, right in ((l2.lhs, l2.rhs), (l2.rhs, l2.lhs)):
        got = unify_pairs([(l1.lhs, left), (l1.rhs, right)], sort_of)
        if got is not None:
            out.append(got)
    return out


# ---------------------------------------------------------------------------
# renaming and variant subsumption


def rename_clause(clause: Clause, start: int) -> tuple[Clause, int]:
    """Rename the clause's variables to fresh V<k> names."""
    mapping: Subst = {}
    sorts: dict[str, Sort] = {}
    counter = start
    for var in sorted(clause.variables()):
        fresh = f"V{counter}"
        counter += 1
        mapping[var] = Var(fresh)
        sorts[fresh] = clause.var_sorts[var]
    literals = tuple(apply_subst_literal(lit, mapping) for lit in clause.literals)
    renamed = Clause(literals, sorts, clause.id, clause.rule, clause.parents)
    return renamed, counter


def _match_literal(a: Literal, b: Literal, renaming: dict[str, str]) -> dict[str, str] | None:
    """Extend an injective variable renaming so a maps onto b exactly."""
    if a.positive != b.positive or a.is_equation != b.is_equation:
        return None

    def match_term(x: Term, y: Term, ren: dict[str, str]) -> dict[str, str] | None:
        if isinstance(x, Var):
            if not isinstance(y, Var):
                return None
            bound = ren.get(x.name)
            if bound is not None:
                return ren if bound == y.name else None
            if y.name in ren.values():
                return None
            out = dict(ren)
            out[x.name] = y.name
            return out
        if not isinstance(y, App) or x.fn != y.fn or len(x.args) != len(y.args):
            return None
        for xa, ya in zip(x.args, y.args):
            got = match_term(xa, ya, ren)
            if got is None:
                return None
            ren = got
        return ren

    if not a.is_equation:
        return match_term(a.lhs, b.lhs, renaming)
    for left, right in ((b.lhs, b.rhs), (b.rhs, b.lhs)):
        ren = match_term(a.lhs, left, renaming)
        if ren is not None:
            ren = match_term(a.rhs, right, ren)
            if ren is not None:
                return ren
    return None


def subsumes_by_variant(c: Clause, d: Clause) -> bool:
    """True when a variable renaming maps c's literals injectively into d.

    This is the deliberately bounded subsumption test: variants and
    renamed sub-multisets only, no general substitution matching.
    """
    if len(c.literals) > len(d.literals):
        return False

    def assign(i: int, used: set[int], renaming: dict[str, str]) -> bool:
        if i == len(c.literals):
            return True
        for j, target in enumerate(d.literals):
            if j in used:
                continue
            got = _match_literal(c.literals[i], target, renaming)
            if got is not None and assign(i + 1, used | {j}, got):
                return True
        return False

    return assign(0, set(), {})


def is_variant(c: Clause, d: Clause) -> bool:
    return (
        len(c.literals) == len(d.literals)
        and subsumes_by_variant(c, d)
        and subsumes_by_variant(d, c)
    )
