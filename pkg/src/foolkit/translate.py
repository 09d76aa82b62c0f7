"""Model-preserving lowering to syntactically first-order form.

The rewriting maintains a growing list of closed definition formulas that
pin the meaning of every fresh symbol, so models of the input and models
of (definitions and rewritten formula) correspond exactly.  Four local
steps do all the work:

  1. a boolean variable in a formula context becomes ``x = true``;
  2. a non-atomic boolean term in a term context is named by a fresh
     symbol defined through an equivalence;
  3. an if-then-else is named by a fresh symbol with two guarded
     equations;
  4. a let definition is lifted to a fresh top-level symbol that takes
     the let term's free variables as extra arguments.

The driver applies the innermost-leftmost eligible step, preferring let
and if-then-else elimination over naming over variable rewriting, which
makes runs deterministic and keeps every definition closed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .terms import (
    App,
    BOOL,
    BUILTIN_FNS,
    CONNECTIVES,
    Eq,
    Exists,
    FALSE,
    Forall,
    FORMULA_CONTEXT,
    Ite,
    Let,
    NO_CONTEXT,
    RESERVED_PREFIX,
    Sort,
    TERM_CONTEXT,
    TRUE,
    Term,
    TypeContext,
    TypeSig,
    Var,
    _child_context,
    _is_formula_shaped,
    all_names,
    children,
    forall_prefix,
    free_fns,
    free_vars,
    free_vars_ordered,
    is_syntactically_first_order,
    liff,
    limplies,
    lnot,
    lor,
    replace_at,
    subst_free_vars,
)
from .typecheck import check_formula, infer_sort

Target = Union[str, int]  # "current" or an index into defs


@dataclass
class TranslationState:
    """The formula being rewritten, the definitions produced so far, and
    the context extended with the fresh symbols."""

    phi: Term
    current: Term
    ctx: TypeContext
    base_ctx: TypeContext
    defs: list[Term] = field(default_factory=list)
    fresh_symbols: list[str] = field(default_factory=list)
    steps: list[tuple[str, Target, tuple[int, ...]]] = field(default_factory=list)
    fn_counter: int = 0
    var_counter: int = 0
    used_names: set[str] = field(default_factory=set)

    def formula_at(self, target: Target) -> Term:
        if target == "current":
            return self.current
        return self.defs[target]

    def _set_formula(self, target: Target, value: Term) -> None:
        if target == "current":
            self.current = value
        else:
            self.defs[target] = value

    def fresh_fn(self) -> str:
        while True:
            name = f"{RESERVED_PREFIX}{self.fn_counter}"
            self.fn_counter += 1
            if name not in self.used_names and self.ctx.fn_sig(name) is None:
                self.used_names.add(name)
                return name

    def fresh_var(self, base: str = "Z") -> str:
        while True:
            name = f"{base}{self.var_counter}"
            self.var_counter += 1
            if name not in self.used_names:
                self.used_names.add(name)
                return name

    def step_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for rule, _, _ in self.steps:
            out[rule] = out.get(rule, 0) + 1
        return out


# ---------------------------------------------------------------------------
# occurrence scanning


@dataclass(frozen=True)
class _Occ:
    path: tuple[int, ...]
    term: Term
    ctx: TypeContext
    bound_fns: frozenset[str]
    strict: str  # context per the published classification
    effective: str  # like strict, but let children keep a context


def _let_sig(ctx: TypeContext, node: Let) -> TypeSig:
    body_sort = infer_sort(ctx.with_vars(node.params), node.body)
    return TypeSig(tuple(s for _, s in node.params), body_sort)


def _occurrences(
    t: Term,
    path: tuple[int, ...],
    ctx: TypeContext,
    bound_fns: frozenset[str],
    strict: str,
    effective: str,
) -> Iterator[_Occ]:
    """Post-order, leftmost first; the first yielded eligible redex is the
    innermost-leftmost one."""
    kids = children(t)
    for i, kid in enumerate(kids):
        kctx = ctx
        kbound = bound_fns
        kstrict = _child_context(t, i)
        keff = kstrict
        if isinstance(t, (Forall, Exists)):
            kctx = ctx.with_var(t.var, t.sort)
        elif isinstance(t, Let):
            if i == 0:
                kctx = ctx.with_vars(t.params)
                keff = TERM_CONTEXT  # definition bodies become equation sides
            else:
                kctx = ctx.with_fn(t.fn, _let_sig(ctx, t))
                kbound = bound_fns | {t.fn}
                keff = effective  # the scope replaces the let in place
        yield from _occurrences(kid, path + (i,), kctx, kbound, kstrict, keff)
    yield _Occ(path, t, ctx, bound_fns, strict, effective)


def _scan(t: Term, ctx: TypeContext) -> Iterator[_Occ]:
    return _occurrences(t, (), ctx, frozenset(), NO_CONTEXT, FORMULA_CONTEXT)


def _redex_kind(occ: _Occ) -> str | None:
    t = occ.term
    if isinstance(t, Let):
        return "let"
    if isinstance(t, Ite):
        return "ite"
    if isinstance(t, Var):
        if occ.strict == FORMULA_CONTEXT and occ.ctx.var_sort(t.name) == BOOL:
            return "bool-var"
        return None
    if occ.strict == TERM_CONTEXT and _is_formula_shaped(t):
        return "formula-in-term"
    return None


def _eligible(occ: _Occ, kind: str) -> bool:
    if kind == "bool-var":
        return True
    return not (free_fns(occ.term) & occ.bound_fns)


def redex_measure(phi: Term, ctx: TypeContext) -> int:
    """Upper bound on the number of translation steps: if-then-else and
    let nodes, boolean variables in (effective) formula contexts, and
    non-atomic boolean terms in (effective) term contexts."""
    count = 0
    for occ in _scan(phi, ctx):
        t = occ.term
        if isinstance(t, (Ite, Let)):
            count += 1
        elif isinstance(t, Var):
            if occ.effective == FORMULA_CONTEXT and occ.ctx.var_sort(t.name) == BOOL:
                count += 1
        elif _is_formula_shaped(t) and occ.effective == TERM_CONTEXT:
            count += 1
    return count


# ---------------------------------------------------------------------------
# the four steps


def _occ_at(state: TranslationState, target: Target, path: tuple[int, ...]) -> _Occ:
    chi = state.formula_at(target)
    for occ in _scan(chi, state.ctx):
        if occ.path == path:
            return occ
    raise ValueError(f"path {path!r} does not address a subterm")


def _check_no_bound_fns(occ: _Occ) -> None:
    clash = free_fns(occ.term) & occ.bound_fns
    if clash:
        raise ValueError(
            f"term has free occurrences of locally bound symbols {sorted(clash)}"
        )


def step1_bool_var(state: TranslationState, path: tuple[int, ...], target: Target = "current") -> TranslationState:
    """Replace a boolean variable in a formula context by ``x = true``."""
    occ = _occ_at(state, target, path)
    t = occ.term
    if not isinstance(t, Var):
        raise ValueError("path does not address a variable")
    if occ.strict != FORMULA_CONTEXT:
        raise ValueError("variable occurrence is not in a formula context")
    if occ.ctx.var_sort(t.name) != BOOL:
        raise ValueError("variable is not boolean")
    chi = state.formula_at(target)
    state._set_formula(target, replace_at(chi, path, Eq(t, TRUE)))
    state.steps.append(("bool-var", target, path))
    return state


def _free_vars_with_sorts(occ: _Occ) -> list[tuple[str, Sort]]:
    out = []
    for name in free_vars_ordered(occ.term):
        sort = occ.ctx.var_sort(name)
        if sort is None:
            raise ValueError(f"free variable {name!r} has no sort in scope")
        out.append((name, sort))
    return out


def step2_formula_in_term_ctx(
    state: TranslationState, path: tuple[int, ...], target: Target = "current"
) -> TranslationState:
    """Name a formula standing in a term context by a fresh symbol."""
    occ = _occ_at(state, target, path)
    psi = occ.term
    if occ.strict != TERM_CONTEXT:
        raise ValueError("occurrence is not in a term context")
    if isinstance(psi, Var):
        raise ValueError("a bare variable is not renamed (step 1 territory)")
    if psi == TRUE or psi == FALSE:
        raise ValueError("the truth constants stay in place")
    if infer_sort(occ.ctx, psi) != BOOL:
        raise ValueError("occurrence is not a formula")
    _check_no_bound_fns(occ)

    binds = _free_vars_with_sorts(occ)
    g = state.fresh_fn()
    g_args = tuple(Var(x) for x, _ in binds)
    definition = forall_prefix(binds, liff(psi, Eq(App(g, g_args), TRUE)))
    state.defs.append(definition)
    state.ctx = state.ctx.with_fn(g, TypeSig(tuple(s for _, s in binds), BOOL))
    state.fresh_symbols.append(g)
    chi = state.formula_at(target)
    state._set_formula(target, replace_at(chi, path, App(g, g_args)))
    state.steps.append(("formula-in-term", target, path))
    return state


def step3_ite(state: TranslationState, path: tuple[int, ...], target: Target = "current") -> TranslationState:
    """Name an if-then-else by a fresh symbol with two guarded equations."""
    occ = _occ_at(state, target, path)
    t = occ.term
    if not isinstance(t, Ite):
        raise ValueError("path does not address an if-then-else term")
    _check_no_bound_fns(occ)

    binds = _free_vars_with_sorts(occ)
    branch_sort = infer_sort(occ.ctx, t.then)
    g = state.fresh_fn()
    g_args = tuple(Var(x) for x, _ in binds)
    gapp = App(g, g_args)
    state.defs.append(forall_prefix(binds, limplies(t.cond, Eq(gapp, t.then))))
    state.defs.append(forall_prefix(binds, limplies(lnot(t.cond), Eq(gapp, t.els))))
    state.ctx = state.ctx.with_fn(g, TypeSig(tuple(s for _, s in binds), branch_sort))
    state.fresh_symbols.append(g)
    chi = state.formula_at(target)
    state._set_formula(target, replace_at(chi, path, gapp))
    state.steps.append(("ite", target, path))
    return state


def _rename_bound_in(t: Term, names: set[str], state: TranslationState) -> Term:
    """Rename binders whose bound name lies in ``names`` to fresh variables."""
    if isinstance(t, Var):
        return t
    if isinstance(t, (Forall, Exists)):
        body = _rename_bound_in(t.body, names, state)
        if t.var in names:
            v2 = state.fresh_var(base="Y")
            return type(t)(v2, t.sort, subst_free_vars(body, {t.var: Var(v2)}))
        return type(t)(t.var, t.sort, body)
    if isinstance(t, Let):
        body = _rename_bound_in(t.body, names, state)
        scope = _rename_bound_in(t.scope, names, state)
        mapping: dict[str, Term] = {}
        params = []
        for x, s in t.params:
            if x in names:
                x2 = state.fresh_var(base="Y")
                mapping[x] = Var(x2)
                params.append((x2, s))
            else:
                params.append((x, s))
        if mapping:
            body = subst_free_vars(body, mapping)
        return Let(t.fn, tuple(params), body, scope)
    if isinstance(t, App):
        return App(t.fn, tuple(_rename_bound_in(a, names, state) for a in t.args))
    if isinstance(t, Ite):
        return Ite(
            _rename_bound_in(t.cond, names, state),
            _rename_bound_in(t.then, names, state),
            _rename_bound_in(t.els, names, state),
        )
    if isinstance(t, Eq):
        return Eq(_rename_bound_in(t.left, names, state), _rename_bound_in(t.right, names, state))
    raise TypeError(f"not a term: {t!r}")


def _replace_fn_apps(t: Term, fn: str, g: str, extra: tuple[Term, ...]) -> Term:
    """Rewrite applications of free occurrences of ``fn`` to ``g`` with the
    extra arguments appended; shadowing lets cut the replacement off."""
    if isinstance(t, Var):
        return t
    if isinstance(t, App):
        args = tuple(_replace_fn_apps(a, fn, g, extra) for a in t.args)
        if t.fn == fn:
            return App(g, args + extra)
        return App(t.fn, args)
    if isinstance(t, Let):
        body = _replace_fn_apps(t.body, fn, g, extra)
        scope = t.scope if t.fn == fn else _replace_fn_apps(t.scope, fn, g, extra)
        return Let(t.fn, t.params, body, scope)
    if isinstance(t, Ite):
        return Ite(
            _replace_fn_apps(t.cond, fn, g, extra),
            _replace_fn_apps(t.then, fn, g, extra),
            _replace_fn_apps(t.els, fn, g, extra),
        )
    if isinstance(t, Eq):
        return Eq(_replace_fn_apps(t.left, fn, g, extra), _replace_fn_apps(t.right, fn, g, extra))
    if isinstance(t, (Forall, Exists)):
        return type(t)(t.var, t.sort, _replace_fn_apps(t.body, fn, g, extra))
    raise TypeError(f"not a term: {t!r}")


def step4_let(state: TranslationState, path: tuple[int, ...], target: Target = "current") -> TranslationState:
    """Lift a let definition to a fresh top-level symbol.

    The definition body is copied once with the formals renamed to fresh
    variables; the scope is rewritten so every application of the bound
    symbol passes the let term's free variables as extra arguments.
    """
    occ = _occ_at(state, target, path)
    t = occ.term
    if not isinstance(t, Let):
        raise ValueError("path does not address a let term")
    _check_no_bound_fns(occ)

    outer = _free_vars_with_sorts(occ)  # the ys with their sorts
    y_names = {x for x, _ in outer}
    zs = [(state.fresh_var(), s) for _, s in t.params]
    s_prime = subst_free_vars(
        t.body, {x: Var(z) for (x, _), (z, _) in zip(t.params, zs)}
    )
    body_sort = infer_sort(occ.ctx.with_vars(t.params), t.body)

    g = state.fresh_fn()
    g_args = tuple(Var(z) for z, _ in zs) + tuple(Var(y) for y, _ in outer)
    state.defs.append(forall_prefix(zs + outer, Eq(App(g, g_args), s_prime)))

    scope = _rename_bound_in(t.scope, y_names, state)
    extra = tuple(Var(y) for y, _ in outer)
    t_prime = _replace_fn_apps(scope, t.fn, g, extra)

    param_sorts = tuple(s for _, s in t.params)
    outer_sorts = tuple(s for _, s in outer)
    state.ctx = state.ctx.with_fn(g, TypeSig(param_sorts + outer_sorts, body_sort))
    state.fresh_symbols.append(g)
    chi = state.formula_at(target)
    state._set_formula(target, replace_at(chi, path, t_prime))
    state.steps.append(("let", target, path))
    return state


_STEP_FNS = {
    "bool-var": step1_bool_var,
    "formula-in-term": step2_formula_in_term_ctx,
    "ite": step3_ite,
    "let": step4_let,
}


def _find_redex(state: TranslationState) -> tuple[str, Target, tuple[int, ...]] | None:
    targets: list[Target] = ["current"] + list(range(len(state.defs)))
    for target in targets:
        for occ in _scan(state.formula_at(target), state.ctx):
            kind = _redex_kind(occ)
            if kind is None:
                continue
            if _eligible(occ, kind):
                return kind, target, occ.path
    return None


def run_translation(phi: Term, ctx: TypeContext) -> TranslationState:
    """Drive the steps to a fixpoint; the result and every definition are
    syntactically first-order.

    The input must be a closed formula.  Termination is guaranteed: the
    number of applied steps never exceeds the initial redex measure,
    which is asserted on every run.
    """
    if free_vars(phi):
        raise ValueError(f"formula is not closed: free {sorted(free_vars(phi))}")
    check_formula(ctx, phi)

    state = TranslationState(
        phi=phi,
        current=phi,
        ctx=ctx,
        base_ctx=ctx,
        used_names=all_names(phi),
    )
    bound = redex_measure(phi, ctx)
    while True:
        found = _find_redex(state)
        if found is None:
            break
        kind, target, path = found
        _STEP_FNS[kind](state, path, target)
        if len(state.steps) > bound:
            raise AssertionError(
                f"translation exceeded its step bound ({bound}); this is a bug"
            )

    for formula in [state.current, *state.defs]:
        verdict = is_syntactically_first_order(formula)
        if not verdict.ok:
            raise AssertionError(
                f"translation left a non-first-order residue at {verdict.witness}: "
                f"{verdict.reason}"
            )
    return state


# ---------------------------------------------------------------------------
# conversion to a legal first-order problem


@dataclass
class FolProblem:
    """A syntactically first-order problem with explicit boolean axioms.

    Truth constants standing in a formula context are the always-true /
    always-false atoms (printed ``$true``/``$false``); in a term context
    they are the two constants of the boolean sort.  ``predicate_split``
    records which boolean-resulting symbols are emitted as predicates and
    which as functions into the boolean sort.
    """

    definitions: tuple[Term, ...]
    goal: Term
    domain_axiom: Term
    distinct_axiom: Term
    ctx: TypeContext
    predicate_split: dict[str, str]
    fresh_counter: int = 0

    @property
    def axioms(self) -> tuple[Term, ...]:
        return self.definitions + (self.domain_axiom, self.distinct_axiom)


def _collect_bool_uses(t: Term, in_formula: bool, ctx: TypeContext, usage: dict[str, set[str]]) -> None:
    if isinstance(t, App):
        if t.fn not in BUILTIN_FNS:
            sig = ctx.fn_sig(t.fn)
            if sig is not None and sig.result == BOOL:
                usage.setdefault(t.fn, set()).add("atom" if in_formula else "term")
        child_formula = t.fn in CONNECTIVES
        for a in t.args:
            _collect_bool_uses(a, child_formula, ctx, usage)
    elif isinstance(t, Eq):
        _collect_bool_uses(t.left, False, ctx, usage)
        _collect_bool_uses(t.right, False, ctx, usage)
    elif isinstance(t, (Forall, Exists)):
        _collect_bool_uses(t.body, True, ctx, usage)
    elif isinstance(t, Var):
        pass
    else:
        raise ValueError("boolean-use analysis expects first-order input")


def _split_rewrite(t: Term, in_formula: bool, split: dict[str, str]) -> Term:
    if isinstance(t, App):
        child_formula = t.fn in CONNECTIVES
        new = App(t.fn, tuple(_split_rewrite(a, child_formula, split) for a in t.args))
        if in_formula and split.get(t.fn) == "function":
            return Eq(new, TRUE)
        return new
    if isinstance(t, Eq):
        return Eq(_split_rewrite(t.left, False, split), _split_rewrite(t.right, False, split))
    if isinstance(t, (Forall, Exists)):
        return type(t)(t.var, t.sort, _split_rewrite(t.body, True, split))
    return t


def to_fol(state: TranslationState) -> FolProblem:
    """Turn a terminated translation state into a legal many-sorted
    first-order problem: apply the predicate split and add the two-element
    boolean domain axiom and the distinctness axiom."""
    formulas = [*state.defs, state.current]
    for formula in formulas:
        verdict = is_syntactically_first_order(formula)
        if not verdict.ok:
            raise ValueError("to_fol requires a terminated translation state")

    usage: dict[str, set[str]] = {}
    for formula in formulas:
        _collect_bool_uses(formula, True, state.ctx, usage)
    split: dict[str, str] = {}
    for fn, uses in sorted(usage.items()):
        split[fn] = "predicate" if uses == {"atom"} else "function"

    definitions = tuple(_split_rewrite(d, True, split) for d in state.defs)
    goal = _split_rewrite(state.current, True, split)
    x = Var("X")
    domain_axiom = Forall("X", BOOL, lor(Eq(x, TRUE), Eq(x, FALSE)))
    distinct_axiom = lnot(Eq(TRUE, FALSE))
    return FolProblem(
        definitions=definitions,
        goal=goal,
        domain_axiom=domain_axiom,
        distinct_axiom=distinct_axiom,
        ctx=state.ctx,
        predicate_split=split,
        fresh_counter=state.fn_counter,
    )


def translate_formula(phi: Term, ctx: TypeContext) -> FolProblem:
    """Convenience composition of run_translation and to_fol."""
    return to_fol(run_translation(phi, ctx))
