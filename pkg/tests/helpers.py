"""Helpers shared by the corpus-driven and acceptance tests."""

import dataclasses

from foolkit import DomainSpec, Eq, enumerate_interpretations, models
from foolkit.terms import (
    App,
    BUILTIN_FNS,
    FALSE,
    Forall,
    TRUE,
    forall_prefix,
    free_fns,
    land,
    lnot,
    lor,
)


def domain_spec_for(problem, sizes=None, default=2):
    """Carrier sizes for every user sort of a parsed problem."""
    sizes = sizes or {}
    out = {}
    for name, sort in problem.signature.sorts.items():
        if not sort.is_bool and not name.startswith("$"):
            out[sort] = sizes.get(name, default)
    return DomainSpec(out)


def clause_to_formula(clause):
    """A clause as a closed universally quantified disjunction."""
    parts = []
    for lit in clause.literals:
        atom = Eq(lit.lhs, lit.rhs) if lit.is_equation else lit.lhs
        parts.append(atom if lit.positive else lnot(atom))
    if not parts:
        return Eq(TRUE, FALSE)
    out = parts[0]
    for p in parts[1:]:
        out = lor(out, p)
    binds = sorted(clause.variables())
    return forall_prefix([(v, clause.var_sorts[v]) for v in binds], out)


def clauses_to_formula(clauses):
    out = clause_to_formula(clauses[0])
    for c in clauses[1:]:
        out = land(out, clause_to_formula(c))
    return out


def oracle_satisfiable(clauses, ctx, size=2, cap=2_000_000):
    """Exhaustively search for a model of the clause set."""
    phi = clauses_to_formula(clauses)
    symbols = sorted(fn for fn in free_fns(phi) if fn not in BUILTIN_FNS)
    spec_sizes = {
        s: size
        for s in ctx.sig.sorts.values()
        if not s.is_bool and not s.name.startswith("$")
    }
    spec = DomainSpec(spec_sizes)
    for interp in enumerate_interpretations(ctx, spec, symbols, cap=cap):
        if models(interp, phi):
            return True
    return False


# ---------------------------------------------------------------------------
# translation-state mutations for the oracle sensitivity checks


def _strip_prefix(d):
    binds = []
    while isinstance(d, Forall):
        binds.append((d.var, d.sort))
        d = d.body
    return binds, d


def _with_def(state, i, binds, body):
    defs = list(state.defs)
    defs[i] = forall_prefix(binds, body)
    return dataclasses.replace(state, defs=defs)


def mutate_drop(state, i):
    """Remove one definition entirely."""
    defs = list(state.defs)
    defs.pop(i)
    return dataclasses.replace(state, defs=defs)


def mutate_flip_guard(state, i):
    """Negate the guard of a conditional definition."""
    binds, body = _strip_prefix(state.defs[i])
    assert isinstance(body, App) and body.fn == "$implies"
    return _with_def(state, i, binds, App("$implies", (lnot(body.args[0]), body.args[1])))


def mutate_swap_branches(state, i, j):
    """Exchange the right-hand sides of a guarded equation pair."""
    bi, bodyi = _strip_prefix(state.defs[i])
    bj, bodyj = _strip_prefix(state.defs[j])
    eqi, eqj = bodyi.args[1], bodyj.args[1]
    state = _with_def(
        state, i, bi, App("$implies", (bodyi.args[0], Eq(eqi.left, eqj.right)))
    )
    return _with_def(
        state, j, bj, App("$implies", (bodyj.args[0], Eq(eqj.left, eqi.right)))
    )


def mutate_negate_named(state, i):
    """Negate the formula captured by a naming definition."""
    binds, body = _strip_prefix(state.defs[i])
    assert isinstance(body, App) and body.fn == "$iff"
    return _with_def(state, i, binds, App("$iff", (lnot(body.args[0]), body.args[1])))


def mutate_wrong_constant(state, i):
    """Point a naming definition at false instead of true."""
    binds, body = _strip_prefix(state.defs[i])
    atom = body.args[1]
    return _with_def(
        state, i, binds, App(body.fn, (body.args[0], Eq(atom.left, FALSE)))
    )
