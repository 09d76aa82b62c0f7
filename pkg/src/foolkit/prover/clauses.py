"""Clauses of equational and predicate literals."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..terms import App, Sort, Term, Var, term_to_str


@dataclass(frozen=True)
class Literal:
    """An equation ``lhs = rhs`` or, when rhs is None, a predicate atom.

    Predicate atoms keep the symbols that the emission step classified as
    predicates; everything else travels as an equation.
    """

    positive: bool
    lhs: Term
    rhs: Term | None = None

    @property
    def is_equation(self) -> bool:
        return self.rhs is not None

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.lhs, self.rhs)

    def terms(self) -> tuple[Term, ...]:
        if self.rhs is None:
            return (self.lhs,)
        return (self.lhs, self.rhs)

    def same_atom(self, other: "Literal") -> bool:
        """Equal atoms; equations also match with the sides swapped."""
        if self.is_equation != other.is_equation:
            return False
        if self.lhs == other.lhs and self.rhs == other.rhs:
            return True
        if self.is_equation:
            return self.lhs == other.rhs and self.rhs == other.lhs
        return False

    def render(self) -> str:
        if self.is_equation:
            op = "=" if self.positive else "!="
            return f"{term_to_str(self.lhs)} {op} {term_to_str(self.rhs)}"
        text = term_to_str(self.lhs)
        return text if self.positive else f"~{text}"


@dataclass
class Clause:
    """A multiset of literals; the empty clause is the refutation witness."""

    literals: tuple[Literal, ...]
    var_sorts: dict[str, Sort] = field(default_factory=dict)
    id: int = -1
    rule: str = "input"
    parents: tuple[int, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def variables(self) -> set[str]:
        out: set[str] = set()
        for lit in self.literals:
            for t in lit.terms():
                _collect_vars(t, out)
        return out

    def trimmed_var_sorts(self) -> dict[str, Sort]:
        occurring = self.variables()
        return {v: s for v, s in self.var_sorts.items() if v in occurring}

    def render(self) -> str:
        if not self.literals:
            return "$false"
        return " | ".join(lit.render() for lit in self.literals)

    def is_tautology(self) -> bool:
        for i, lit in enumerate(self.literals):
            if lit.positive and lit.is_equation and lit.lhs == lit.rhs:
                return True
            for other in self.literals[i + 1 :]:
                if lit.positive != other.positive and lit.same_atom(other):
                    return True
        return False


def _collect_vars(t: Term, out: set[str]) -> None:
    if isinstance(t, Var):
        out.add(t.name)
    elif isinstance(t, App):
        for a in t.args:
            _collect_vars(a, out)
    else:
        raise TypeError("clause terms contain only variables and applications")


def literal_key(lit: Literal):
    """A canonical key treating equations as unordered pairs; used for
    duplicate detection within clauses."""
    if lit.is_equation:
        sides = sorted([repr(lit.lhs), repr(lit.rhs)])
        return (lit.positive, "eq", tuple(sides))
    return (lit.positive, "pred", repr(lit.lhs))


def dedup_literals(literals: tuple[Literal, ...]) -> tuple[Literal, ...]:
    seen = set()
    out = []
    for lit in literals:
        key = literal_key(lit)
        if key not in seen:
            seen.add(key)
            out.append(lit)
    return tuple(out)
