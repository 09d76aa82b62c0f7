"""Knuth-Bendix ordering with the truth constants pinned smallest.

Unit weights throughout; precedence is false, then true, then all other
symbols by arity and name.  That makes true and false the two smallest
ground terms of every sort and orients ``anything = true`` the way the
boolean handling needs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..terms import App, FALSE_NAME, Term, TRUE_NAME, Var
from .clauses import Clause, Literal


@dataclass(frozen=True)
class OrderingConfig:
    """Weights default to 1 per symbol; precedence is fixed as documented."""

    weights: dict[str, int] = field(default_factory=dict)

    def weight_of(self, fn: str) -> int:
        return self.weights.get(fn, 1)

    def precedence_key(self, fn: str, arity: int):
        if fn == FALSE_NAME:
            return (0, 0, "")
        if fn == TRUE_NAME:
            return (1, 0, "")
        return (2, arity, fn)


DEFAULT_ORDERING = OrderingConfig()


def term_weight(t: Term, config: OrderingConfig = DEFAULT_ORDERING) -> int:
    if isinstance(t, Var):
        return 1
    total = config.weight_of(t.fn)
    for a in t.args:
        total += term_weight(a, config)
    return total


def _var_counts(t: Term, counts: Counter) -> None:
    if isinstance(t, Var):
        counts[t.name] += 1
    else:
        for a in t.args:
            _var_counts(a, counts)


def kbo_greater(s: Term, t: Term, config: OrderingConfig = DEFAULT_ORDERING) -> bool:
    """s > t in the Knuth-Bendix ordering."""
    if s == t:
        return False
    sc: Counter = Counter()
    tc: Counter = Counter()
    _var_counts(s, sc)
    _var_counts(t, tc)
    for var, n in tc.items():
        if sc.get(var, 0) < n:
            return False
    ws, wt = term_weight(s, config), term_weight(t, config)
    if ws > wt:
        return True
    if ws < wt:
        return False
    if isinstance(s, Var) or isinstance(t, Var):
        # Equal weight with a variable on either side never orients.
        return False
    ks = config.precedence_key(s.fn, len(s.args))
    kt = config.precedence_key(t.fn, len(t.args))
    if ks > kt:
        return True
    if ks < kt:
        return False
    for a, b in zip(s.args, t.args):
        if a != b:
            return kbo_greater(a, b, config)
    return False


def kbo_greater_or_equal(s: Term, t: Term, config: OrderingConfig = DEFAULT_ORDERING) -> bool:
    return s == t or kbo_greater(s, t, config)


# ---------------------------------------------------------------------------
# literal ordering: multiset extension over equation encodings


def _literal_multiset(lit: Literal) -> Counter:
    """Positive s=t compares as {s, t}; negative as {s, s, t, t}.
    Predicate atoms compare via their atom-equals-true encoding."""
    rhs = lit.rhs if lit.rhs is not None else App(TRUE_NAME)
    sides = [lit.lhs, rhs]
    ms: Counter = Counter()
    for side in sides:
        ms[side] += 1 if lit.positive else 2
    return ms


def multiset_greater(a: Counter, b: Counter, config: OrderingConfig = DEFAULT_ORDERING) -> bool:
    if a == b:
        return False
    only_a = a - b
    only_b = b - a
    for y in only_b:
        if not any(kbo_greater(x, y, config) for x in only_a):
            return False
    return True


def literal_greater(l1: Literal, l2: Literal, config: OrderingConfig = DEFAULT_ORDERING) -> bool:
    return multiset_greater(_literal_multiset(l1), _literal_multiset(l2), config)


def maximal_literal_indices(clause: Clause, config: OrderingConfig = DEFAULT_ORDERING) -> list[int]:
    """Indices of literals with no strictly greater literal in the clause.

    With no selection function, exactly these literals are eligible for
    inferences.
    """
    out = []
    for i, lit in enumerate(clause.literals):
        if not any(
            literal_greater(other, lit, config)
            for j, other in enumerate(clause.literals)
            if j != i
        ):
            out.append(i)
    return out
