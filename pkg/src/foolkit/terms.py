"""Sorts, signatures, and the unified term language.

Formulas are not a separate syntactic category: a formula is any term of
the boolean sort.  Connectives and the truth constants are ordinary
function symbols applied through ``App``; binders (quantifiers and let
definitions) annotate their bound names with sorts, so sort checking is
pure bottom-up synthesis.

Terms are immutable values.  All operations here are pure and safe to
call from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


# ---------------------------------------------------------------------------
# sorts and types


@dataclass(frozen=True)
class Sort:
    """A sort.  Exactly one sort in a signature carries the boolean flag."""

    name: str
    is_bool: bool = False

    def __str__(self) -> str:
        return self.name


BOOL = Sort("$o", is_bool=True)
INT = Sort("$int")
INDIVIDUAL = Sort("$i")


@dataclass(frozen=True)
class TypeSig:
    """Argument sorts and result sort of a function symbol."""

    args: tuple[Sort, ...]
    result: Sort

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        if not self.args:
            return str(self.result)
        if len(self.args) == 1:
            return f"{self.args[0]} > {self.result}"
        return "(" + " * ".join(str(a) for a in self.args) + f") > {self.result}"


# Connectives and truth constants are ordinary function symbols.  Their
# names live in the $-namespace so they can never collide with user symbols.
NOT = "$not"
AND = "$and"
OR = "$or"
IMPLIES = "$implies"
IFF = "$iff"
TRUE_NAME = "$true"
FALSE_NAME = "$false"

CONNECTIVES = frozenset({NOT, AND, OR, IMPLIES, IFF})
BUILTIN_FNS = frozenset(CONNECTIVES | {TRUE_NAME, FALSE_NAME})

# Prefix reserved for symbols introduced by translation and clausification.
RESERVED_PREFIX = "sk_fool_"


class Signature:
    """Sorts plus typed function symbols.

    Every signature contains the boolean sort, the binary connectives,
    negation and the truth constants with their fixed types.
    """

    def __init__(self) -> None:
        self.sorts: dict[str, Sort] = {BOOL.name: BOOL}
        self.fns: dict[str, TypeSig] = {}
        bb = (BOOL, BOOL)
        for name in (AND, OR, IMPLIES, IFF):
            self.fns[name] = TypeSig(bb, BOOL)
        self.fns[NOT] = TypeSig((BOOL,), BOOL)
        self.fns[TRUE_NAME] = TypeSig((), BOOL)
        self.fns[FALSE_NAME] = TypeSig((), BOOL)

    def declare_sort(self, name: str) -> Sort:
        if name in self.sorts:
            raise ValueError(f"sort {name!r} already declared")
        sort = Sort(name)
        self.sorts[name] = sort
        return sort

    def add_sort(self, sort: Sort) -> Sort:
        """Register an existing Sort object (e.g. the builtins $int, $i)."""
        if sort.name in self.sorts:
            if self.sorts[sort.name] != sort:
                raise ValueError(f"conflicting sort {sort.name!r}")
            return sort
        if sort.is_bool:
            raise ValueError("a signature has exactly one boolean sort")
        self.sorts[sort.name] = sort
        return sort

    def declare_fn(self, name: str, sig: TypeSig) -> None:
        if name in BUILTIN_FNS:
            raise ValueError(f"cannot redeclare the reserved connective {name!r}")
        if name in self.fns:
            raise ValueError(f"function symbol {name!r} already declared")
        self.fns[name] = sig

    def sort(self, name: str) -> Sort | None:
        return self.sorts.get(name)

    def fn_sig(self, name: str) -> TypeSig | None:
        return self.fns.get(name)

    def user_fns(self) -> Iterator[str]:
        """Declared symbols other than connectives and truth constants."""
        for name in self.fns:
            if name not in BUILTIN_FNS:
                yield name


class TypeContext:
    """A signature extended with shadowing variable and symbol bindings.

    Extension returns a new context; lookups resolve the innermost
    binding first.
    """

    __slots__ = ("sig", "var_binds", "fn_binds")

    def __init__(
        self,
        sig: Signature,
        var_binds: dict[str, Sort] | None = None,
        fn_binds: dict[str, TypeSig] | None = None,
    ) -> None:
        self.sig = sig
        self.var_binds = var_binds or {}
        self.fn_binds = fn_binds or {}

    @classmethod
    def of(cls, sig: Signature) -> "TypeContext":
        return cls(sig)

    def with_var(self, name: str, sort: Sort) -> "TypeContext":
        binds = dict(self.var_binds)
        binds[name] = sort
        return TypeContext(self.sig, binds, self.fn_binds)

    def with_vars(self, pairs: Iterable[tuple[str, Sort]]) -> "TypeContext":
        binds = dict(self.var_binds)
        binds.update(pairs)
        return TypeContext(self.sig, binds, self.fn_binds)

    def with_fn(self, name: str, sig: TypeSig) -> "TypeContext":
        binds = dict(self.fn_binds)
        binds[name] = sig
        return TypeContext(self.sig, self.var_binds, binds)

    def var_sort(self, name: str) -> Sort | None:
        return self.var_binds.get(name)

    def fn_sig(self, name: str) -> TypeSig | None:
        got = self.fn_binds.get(name)
        if got is not None:
            return got
        return self.sig.fn_sig(name)


# ---------------------------------------------------------------------------
# terms


class Term:
    """Base class of the unified term/formula tree."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class App(Term):
    fn: str
    args: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Ite(Term):
    cond: Term
    then: Term
    els: Term


@dataclass(frozen=True)
class Let(Term):
    """Non-recursive local definition of one function symbol."""

    fn: str
    params: tuple[tuple[str, Sort], ...]
    body: Term
    scope: Term

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(self.params))
        names = [x for x, _ in self.params]
        if len(set(names)) != len(names):
            raise ValueError("let formal parameters must be pairwise distinct")
        if self.fn in BUILTIN_FNS:
            raise ValueError(f"cannot let-bind the reserved symbol {self.fn!r}")


@dataclass(frozen=True)
class Eq(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Forall(Term):
    var: str
    sort: Sort
    body: Term


@dataclass(frozen=True)
class Exists(Term):
    var: str
    sort: Sort
    body: Term


TRUE = App(TRUE_NAME)
FALSE = App(FALSE_NAME)


def lnot(a: Term) -> Term:
    return App(NOT, (a,))


def land(a: Term, b: Term, *more: Term) -> Term:
    out = App(AND, (a, b))
    for m in more:
        out = App(AND, (out, m))
    return out


def lor(a: Term, b: Term, *more: Term) -> Term:
    out = App(OR, (a, b))
    for m in more:
        out = App(OR, (out, m))
    return out


def limplies(a: Term, b: Term) -> Term:
    return App(IMPLIES, (a, b))


def liff(a: Term, b: Term) -> Term:
    return App(IFF, (a, b))


def forall_prefix(bindings: Iterable[tuple[str, Sort]], body: Term) -> Term:
    out = body
    for name, sort in reversed(list(bindings)):
        out = Forall(name, sort, out)
    return out


# ---------------------------------------------------------------------------
# paths and traversal
#
# An occurrence path is the sequence of child indices from the root.
# Child order: App/Ite/Eq follow field order, Let is (body, scope),
# quantifiers have the single child (body,).


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Var):
        return ()
    if isinstance(t, App):
        return t.args
    if isinstance(t, Ite):
        return (t.cond, t.then, t.els)
    if isinstance(t, Let):
        return (t.body, t.scope)
    if isinstance(t, Eq):
        return (t.left, t.right)
    if isinstance(t, (Forall, Exists)):
        return (t.body,)
    raise TypeError(f"not a term: {t!r}")


def with_children(t: Term, new: tuple[Term, ...]) -> Term:
    if isinstance(t, Var):
        if new:
            raise ValueError("a variable has no children")
        return t
    if isinstance(t, App):
        return App(t.fn, new)
    if isinstance(t, Ite):
        return Ite(*new)
    if isinstance(t, Let):
        return Let(t.fn, t.params, new[0], new[1])
    if isinstance(t, Eq):
        return Eq(*new)
    if isinstance(t, Forall):
        return Forall(t.var, t.sort, new[0])
    if isinstance(t, Exists):
        return Exists(t.var, t.sort, new[0])
    raise TypeError(f"not a term: {t!r}")


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    cur = t
    for i in path:
        kids = children(cur)
        if not 0 <= i < len(kids):
            raise ValueError(f"invalid path {path!r} at {i}")
        cur = kids[i]
    return cur


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    kids = list(children(t))
    i = path[0]
    if not 0 <= i < len(kids):
        raise ValueError(f"invalid path step {i}")
    kids[i] = replace_at(kids[i], path[1:], new)
    return with_children(t, tuple(kids))


def subterm_positions(t: Term) -> Iterator[tuple[tuple[int, ...], Term]]:
    """All (path, subterm) pairs in pre-order, leftmost first."""
    stack: list[tuple[tuple[int, ...], Term]] = [((), t)]
    while stack:
        path, cur = stack.pop()
        yield path, cur
        kids = children(cur)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


def all_names(t: Term) -> set[str]:
    """Every variable, binder and function symbol name occurring in t."""
    out: set[str] = set()

    def go(u: Term) -> None:
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, App):
            out.add(u.fn)
        elif isinstance(u, Let):
            out.add(u.fn)
            out.update(x for x, _ in u.params)
        elif isinstance(u, (Forall, Exists)):
            out.add(u.var)
        for k in children(u):
            go(k)

    go(t)
    return out


# ---------------------------------------------------------------------------
# free and bound occurrences
#
# Bound occurrences: a quantifier binds its variable in its body; a let
# binds its formals in the head and in the definition body; a let binds
# its function symbol in the head and in the scope.  Occurrences of the
# let-bound symbol inside its own definition body are free (lets are not
# recursive).


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (Forall, Exists)):
        return free_vars(t.body) - {t.var}
    if isinstance(t, Let):
        inner = free_vars(t.body) - {x for x, _ in t.params}
        return inner | free_vars(t.scope)
    out: set[str] = set()
    for k in children(t):
        out |= free_vars(k)
    return out


def free_vars_ordered(t: Term) -> list[str]:
    """Free variables in order of first free occurrence (leftmost-outermost)."""
    seen: list[str] = []

    def go(u: Term, bound: frozenset[str]) -> None:
        if isinstance(u, Var):
            if u.name not in bound and u.name not in seen:
                seen.append(u.name)
            return
        if isinstance(u, (Forall, Exists)):
            go(u.body, bound | {u.var})
            return
        if isinstance(u, Let):
            go(u.body, bound | {x for x, _ in u.params})
            go(u.scope, bound)
            return
        for k in children(u):
            go(k, bound)

    go(t, frozenset())
    return seen


def free_fns(t: Term) -> set[str]:
    if isinstance(t, Var):
        return set()
    if isinstance(t, App):
        out = {t.fn}
        for a in t.args:
            out |= free_fns(a)
        return out
    if isinstance(t, Let):
        return free_fns(t.body) | (free_fns(t.scope) - {t.fn})
    out = set()
    for k in children(t):
        out |= free_fns(k)
    return out


# ---------------------------------------------------------------------------
# occurrence contexts

FORMULA_CONTEXT = "formula-context"
TERM_CONTEXT = "term-context"
NO_CONTEXT = "not-applicable"


@dataclass(frozen=True)
class OccurrenceClass:
    """Binding kind and context of one subterm occurrence.

    ``kind`` is "bound"/"free" for variable occurrences and applications
    (judged on the head symbol) and None for other node kinds.
    """

    kind: str | None
    context: str


def _child_context(parent: Term, index: int) -> str:
    if isinstance(parent, App):
        return FORMULA_CONTEXT if parent.fn in CONNECTIVES else TERM_CONTEXT
    if isinstance(parent, (Forall, Exists)):
        return FORMULA_CONTEXT
    if isinstance(parent, Eq):
        return TERM_CONTEXT
    if isinstance(parent, Ite):
        # The condition is eliminated as a formula; the branches end up as
        # equation sides, i.e. term positions.
        return FORMULA_CONTEXT if index == 0 else TERM_CONTEXT
    if isinstance(parent, Let):
        return NO_CONTEXT
    return NO_CONTEXT


def classify_occurrence(t: Term, path: tuple[int, ...]) -> OccurrenceClass:
    """Classify the subterm occurrence addressed by path.

    Context is formula-context for arguments of connectives, quantifier
    bodies and if-then-else conditions; term-context for arguments of
    other function symbols, equality operands and if-then-else branches;
    not-applicable otherwise (including the root).
    """
    cur = t
    bound_vars: set[str] = set()
    bound_fns: set[str] = set()
    context = NO_CONTEXT
    for i in path:
        kids = children(cur)
        if not 0 <= i < len(kids):
            raise ValueError(f"invalid path {path!r}")
        context = _child_context(cur, i)
        if isinstance(cur, (Forall, Exists)):
            bound_vars.add(cur.var)
        elif isinstance(cur, Let):
            if i == 0:
                bound_vars = bound_vars | {x for x, _ in cur.params}
            else:
                bound_fns = bound_fns | {cur.fn}
        cur = kids[i]
    if isinstance(cur, Var):
        kind = "bound" if cur.name in bound_vars else "free"
    elif isinstance(cur, App):
        kind = "bound" if cur.fn in bound_fns else "free"
    else:
        kind = None
    return OccurrenceClass(kind, context)


def is_atomic(t: Term) -> bool:
    """Variables and plain applications of non-connective symbols.

    Non-atomic boolean terms (connective applications, equalities and
    quantified terms) are the formulas that may not stand in a term
    context of a syntactically first-order formula.
    """
    if isinstance(t, Var):
        return True
    return isinstance(t, App) and t.fn not in CONNECTIVES


def _is_formula_shaped(t: Term) -> bool:
    """Structurally boolean and non-atomic: connective app, equality,
    quantification.  (If-then-else and let nodes are flagged separately.)"""
    if isinstance(t, (Eq, Forall, Exists)):
        return True
    return isinstance(t, App) and t.fn in CONNECTIVES


@dataclass(frozen=True)
class FirstOrderCheck:
    ok: bool
    witness: tuple[int, ...] | None = None
    reason: str | None = None


def is_syntactically_first_order(t: Term) -> FirstOrderCheck:
    """Check for if-then-else/let nodes, variables in formula context and
    formulas in term context; the witness is the offending occurrence path.

    A bare boolean variable or a truth constant in a term context is
    acceptable: both are legal first-order terms over the boolean sort.
    """

    def go(u: Term, path: tuple[int, ...], ctx: str) -> FirstOrderCheck:
        if isinstance(u, (Ite, Let)):
            kind = "ite" if isinstance(u, Ite) else "let"
            return FirstOrderCheck(False, path, f"{kind} expression")
        if isinstance(u, Var) and ctx == FORMULA_CONTEXT:
            return FirstOrderCheck(False, path, "variable in formula context")
        if ctx == TERM_CONTEXT and _is_formula_shaped(u):
            return FirstOrderCheck(False, path, "formula in term context")
        for i, k in enumerate(children(u)):
            got = go(k, path + (i,), _child_context(u, i))
            if not got.ok:
                return got
        return FirstOrderCheck(True)

    return go(t, (), NO_CONTEXT)


# ---------------------------------------------------------------------------
# substitution and renaming


def subst_free_vars(t: Term, mapping: dict[str, Term]) -> Term:
    """Replace free variable occurrences; stops at shadowing binders.

    Replacement terms are inserted as-is, so the caller must ensure they
    cannot be captured (the translation only inserts fresh variables).
    """
    if not mapping:
        return t
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, (Forall, Exists)):
        inner = {k: v for k, v in mapping.items() if k != t.var}
        body = subst_free_vars(t.body, inner)
        return type(t)(t.var, t.sort, body)
    if isinstance(t, Let):
        formals = {x for x, _ in t.params}
        inner = {k: v for k, v in mapping.items() if k not in formals}
        return Let(
            t.fn,
            t.params,
            subst_free_vars(t.body, inner),
            subst_free_vars(t.scope, mapping),
        )
    kids = tuple(subst_free_vars(k, mapping) for k in children(t))
    return with_children(t, kids)


def rename_apart(t: Term, avoid: Iterable[str] = ()) -> Term:
    """Alpha-rename so all bound variable and bound symbol names are
    pairwise distinct and disjoint from ``avoid``.

    Names are drawn deterministically by suffixing a counter to the
    original name; free occurrences are never touched.
    """
    taken = set(avoid) | all_names(t)

    def fresh(base: str) -> str:
        k = 0
        while f"{base}{k}" in taken:
            k += 1
        name = f"{base}{k}"
        taken.add(name)
        return name

    def go(u: Term, vmap: dict[str, str], fmap: dict[str, str]) -> Term:
        if isinstance(u, Var):
            return Var(vmap.get(u.name, u.name))
        if isinstance(u, App):
            return App(fmap.get(u.fn, u.fn), tuple(go(a, vmap, fmap) for a in u.args))
        if isinstance(u, (Forall, Exists)):
            v2 = fresh(u.var)
            return type(u)(v2, u.sort, go(u.body, {**vmap, u.var: v2}, fmap))
        if isinstance(u, Let):
            params2 = tuple((fresh(x), s) for x, s in u.params)
            vmap2 = {**vmap, **{x: x2 for (x, _), (x2, _) in zip(u.params, params2)}}
            body2 = go(u.body, vmap2, fmap)
            f2 = fresh(u.fn)
            scope2 = go(u.scope, vmap, {**fmap, u.fn: f2})
            return Let(f2, params2, body2, scope2)
        if isinstance(u, Ite):
            return Ite(go(u.cond, vmap, fmap), go(u.then, vmap, fmap), go(u.els, vmap, fmap))
        if isinstance(u, Eq):
            return Eq(go(u.left, vmap, fmap), go(u.right, vmap, fmap))
        raise TypeError(f"not a term: {u!r}")

    return go(t, {}, {})


def alpha_equal(a: Term, b: Term) -> bool:
    """Structural equality modulo consistent renaming of bound names."""

    def go(u, v, vu, vv, fu, fv, n):
        if type(u) is not type(v):
            return False
        if isinstance(u, Var):
            iu, iv = vu.get(u.name), vv.get(v.name)
            if iu is None and iv is None:
                return u.name == v.name
            return iu == iv
        if isinstance(u, App):
            iu, iv = fu.get(u.fn), fv.get(v.fn)
            if (iu is None) != (iv is None) or (iu is None and u.fn != v.fn) or iu != iv:
                return False
            if len(u.args) != len(v.args):
                return False
            return all(go(x, y, vu, vv, fu, fv, n) for x, y in zip(u.args, v.args))
        if isinstance(u, (Forall, Exists)):
            if u.sort != v.sort:
                return False
            return go(u.body, v.body, {**vu, u.var: n}, {**vv, v.var: n}, fu, fv, n + 1)
        if isinstance(u, Let):
            if len(u.params) != len(v.params):
                return False
            if any(s != s2 for (_, s), (_, s2) in zip(u.params, v.params)):
                return False
            vu2, vv2 = dict(vu), dict(vv)
            m = n
            for (x, _), (y, _) in zip(u.params, v.params):
                vu2[x], vv2[y] = m, m
                m += 1
            if not go(u.body, v.body, vu2, vv2, fu, fv, m):
                return False
            return go(u.scope, v.scope, vu, vv, {**fu, u.fn: m}, {**fv, v.fn: m}, m + 1)
        if isinstance(u, Ite):
            return (
                go(u.cond, v.cond, vu, vv, fu, fv, n)
                and go(u.then, v.then, vu, vv, fu, fv, n)
                and go(u.els, v.els, vu, vv, fu, fv, n)
            )
        if isinstance(u, Eq):
            return go(u.left, v.left, vu, vv, fu, fv, n) and go(
                u.right, v.right, vu, vv, fu, fv, n
            )
        raise TypeError(f"not a term: {u!r}")

    return go(a, b, {}, {}, {}, {}, 0)


# ---------------------------------------------------------------------------
# debug rendering

_INFIX = {AND: "&", OR: "|", IMPLIES: "=>", IFF: "<=>"}


def term_to_str(t: Term) -> str:
    """Compact single-line rendering for diagnostics and clause display."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, App):
        if t.fn == NOT:
            return f"~{_wrap(t.args[0])}"
        if t.fn in _INFIX:
            op = _INFIX[t.fn]
            return f"({_wrap(t.args[0])} {op} {_wrap(t.args[1])})"
        if not t.args:
            return t.fn
        return f"{t.fn}(" + ", ".join(term_to_str(a) for a in t.args) + ")"
    if isinstance(t, Ite):
        return f"$ite({term_to_str(t.cond)}, {term_to_str(t.then)}, {term_to_str(t.els)})"
    if isinstance(t, Let):
        head = t.fn
        if t.params:
            head += "(" + ", ".join(f"{x} : {s}" for x, s in t.params) + ")"
        return f"$let({head} := {term_to_str(t.body)}, {term_to_str(t.scope)})"
    if isinstance(t, Eq):
        return f"{_wrap(t.left)} = {_wrap(t.right)}"
    if isinstance(t, Forall):
        return f"![{t.var} : {t.sort}]: {_wrap(t.body)}"
    if isinstance(t, Exists):
        return f"?[{t.var} : {t.sort}]: {_wrap(t.body)}"
    raise TypeError(f"not a term: {t!r}")


def _wrap(t: Term) -> str:
    s = term_to_str(t)
    if isinstance(t, (Eq, Forall, Exists)):
        return f"({s})"
    return s
