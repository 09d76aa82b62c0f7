"""Reader and printers for a typed first-order dialect with a first-class
boolean sort.

The dialect extends plain monomorphic typed input with:

  * ``$o`` usable like any other sort: argument positions, variable
    sorts, and equality operands;
  * unified conditional and binding forms ``$ite(c, s, t)`` and
    ``$let(f : type, f(X1, ..., Xn) := body, scope)`` (nullary form
    ``$let(c : sort, c := body, scope)``);
  * the legacy forms ``$ite_t``/``$ite_f`` and ``$let_tt``/``$let_tf``/
    ``$let_ft``/``$let_ff``, normalized to the unified nodes on parse.

Arithmetic tokens (``$int``, ``$sum``, ``$greater``, ...) are accepted as
an uninterpreted sort and uninterpreted typed symbols; there is no
arithmetic semantics.  ``include`` directives are rejected.

Strict mode turns off every extension and checks the usual restrictions
on ``$o``, so emitted standard problems can be re-checked with the same
grammar.  Strict mode also admits the ``sk_fool_`` symbol prefix that is
reserved (and rejected) in dialect input, since emitted problems contain
such symbols.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .terms import (
    AND,
    App,
    BOOL,
    BUILTIN_FNS,
    Eq,
    Exists,
    FALSE,
    FALSE_NAME,
    Forall,
    IFF,
    IMPLIES,
    INDIVIDUAL,
    INT,
    Ite,
    Let,
    NOT,
    OR,
    RESERVED_PREFIX,
    Signature,
    Sort,
    TRUE,
    TRUE_NAME,
    Term,
    TypeContext,
    TypeSig,
    Var,
    children,
    free_vars,
    land,
    lnot,
)
from .typecheck import DUPLICATE_LET_FORMAL, SortError, check_formula, infer_sort

ARITHMETIC_FNS: dict[str, TypeSig] = {
    "$sum": TypeSig((INT, INT), INT),
    "$difference": TypeSig((INT, INT), INT),
    "$product": TypeSig((INT, INT), INT),
    "$uminus": TypeSig((INT,), INT),
    "$greater": TypeSig((INT, INT), BOOL),
    "$greatereq": TypeSig((INT, INT), BOOL),
    "$less": TypeSig((INT, INT), BOOL),
    "$lesseq": TypeSig((INT, INT), BOOL),
}

ROLES = ("type", "axiom", "hypothesis", "conjecture")


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0) -> None:
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>%[^\n]*)
      | (?P<dollar>\$[a-z][A-Za-z0-9_]*)
      | (?P<lower>[a-z][A-Za-z0-9_]*)
      | (?P<upper>[A-Z][A-Za-z0-9_]*)
      | (?P<int>\d+)
      | (?P<quoted>'(?:[^'\\]|\\.)*')
      | (?P<op><=>|<~>|=>|<=|!=|:=|[()\[\],.:~&|=!?*>])
    """,
    re.X,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def _lex(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            col = pos - line_start + 1
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup or ""
        lexeme = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, lexeme, line, pos - line_start + 1))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


def _unquote(text: str) -> str:
    body = text[1:-1]
    out = []
    i = 0
    while i < len(body):
        if body[i] == "\\" and i + 1 < len(body):
            out.append(body[i + 1])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


_LOWER_WORD = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def _atom_str(name: str) -> str:
    """Render a symbol name, single-quoting when lexically required."""
    if _LOWER_WORD.match(name) or name.isdigit() or name.startswith("$"):
        return name
    escaped = name.replace("\\", "\\\\").replace("'", "\\'")
    return f"'{escaped}'"


# ---------------------------------------------------------------------------
# problem structure


@dataclass
class SortDecl:
    name: str


@dataclass
class SymbolDecl:
    name: str
    sig: TypeSig


@dataclass
class AnnotatedFormula:
    name: str
    role: str
    payload: SortDecl | SymbolDecl | Term
    line: int = 0


@dataclass
class Problem:
    """An ordered list of annotated formulas plus the derived signature.

    For refutation the goal is the conjunction of axioms and hypotheses
    together with the negated conjecture.
    """

    formulas: list[AnnotatedFormula] = field(default_factory=list)
    signature: Signature = field(default_factory=Signature)

    @property
    def ctx(self) -> TypeContext:
        return TypeContext.of(self.signature)

    def by_role(self, role: str) -> list[AnnotatedFormula]:
        return [f for f in self.formulas if f.role == role]

    def goal_formula(self) -> Term:
        parts = [
            f.payload
            for f in self.formulas
            if f.role in ("axiom", "hypothesis") and isinstance(f.payload, Term)
        ]
        conjectures = [f.payload for f in self.formulas if f.role == "conjecture"]
        if conjectures:
            parts.append(lnot(conjectures[0]))
        if not parts:
            return TRUE
        out = parts[0]
        for p in parts[1:]:
            out = land(out, p)
        return out


# ---------------------------------------------------------------------------
# parser / loader

_BINOPS = {"&", "|", "=>", "<=>"}
_CONNECTIVE_OF = {"&": AND, "|": OR, "=>": IMPLIES, "<=>": IFF}
_LEGACY_ITE = {"$ite", "$ite_t", "$ite_f"}
_LEGACY_LET = {"$let", "$let_tt", "$let_tf", "$let_ft", "$let_ff"}


class _Parser:
    def __init__(self, text: str, strict: bool) -> None:
        self.tokens = _lex(text)
        self.pos = 0
        self.strict = strict
        self.signature = Signature()
        self.signature.add_sort(INT)
        self.signature.add_sort(INDIVIDUAL)
        for name, sig in ARITHMETIC_FNS.items():
            self.signature.fns[name] = sig
        self.numbers: set[str] = set()

    # token plumbing

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)

    # grammar

    def parse_problem(self) -> Problem:
        problem = Problem(signature=self.signature)
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.text == "include":
                raise self.fail("include directives are not supported")
            if tok.text != "tff":
                raise self.fail(f"expected a tff annotated formula, found {tok.text!r}")
            problem.formulas.append(self.parse_annotated())
        self._load(problem)
        return problem

    def parse_annotated(self) -> AnnotatedFormula:
        start = self.expect("tff")
        self.expect("(")
        name = self.parse_name()
        self.expect(",")
        role_tok = self.next()
        if role_tok.text not in ROLES:
            raise ParseError(
                f"unsupported role {role_tok.text!r}", role_tok.line, role_tok.col
            )
        self.expect(",")
        if role_tok.text == "type":
            payload: SortDecl | SymbolDecl | Term = self.parse_type_payload()
            # Declarations take effect immediately: later formulas (and
            # later declarations) may refer to them.
            if isinstance(payload, SortDecl):
                if self.signature.sort(payload.name) is not None:
                    raise ParseError(
                        f"duplicate sort declaration {payload.name!r}",
                        start.line,
                        start.col,
                    )
                self.signature.declare_sort(payload.name)
            else:
                if self.signature.fn_sig(payload.name) is not None:
                    raise ParseError(
                        f"duplicate symbol declaration {payload.name!r}",
                        start.line,
                        start.col,
                    )
                self.signature.declare_fn(payload.name, payload.sig)
        else:
            payload = self.parse_expr()
        self.expect(")")
        self.expect(".")
        return AnnotatedFormula(name, role_tok.text, payload, line=start.line)

    def parse_name(self) -> str:
        tok = self.next()
        if tok.kind in ("lower", "int"):
            return tok.text
        if tok.kind == "quoted":
            return _unquote(tok.text)
        raise ParseError(f"invalid formula name {tok.text!r}", tok.line, tok.col)

    def parse_type_payload(self) -> SortDecl | SymbolDecl:
        wrapped = self.peek().text == "("
        if wrapped:
            self.next()
        tok = self.next()
        if tok.kind == "quoted":
            name = _unquote(tok.text)
        elif tok.kind == "lower":
            name = tok.text
        else:
            raise ParseError(f"invalid declared name {tok.text!r}", tok.line, tok.col)
        if not self.strict and name.startswith(RESERVED_PREFIX):
            raise ParseError(
                f"the {RESERVED_PREFIX!r} prefix is reserved for generated symbols",
                tok.line,
                tok.col,
            )
        self.expect(":")
        if self.peek().text == "$tType":
            self.next()
            decl: SortDecl | SymbolDecl = SortDecl(name)
        else:
            decl = SymbolDecl(name, self.parse_type())
        if wrapped:
            self.expect(")")
        return decl

    def parse_sort(self) -> Sort:
        tok = self.next()
        if tok.kind == "dollar":
            if tok.text == "$o":
                return BOOL
            got = self.signature.sort(tok.text)
            if got is None:
                raise ParseError(f"unknown sort {tok.text}", tok.line, tok.col)
            return got
        if tok.kind in ("lower", "quoted"):
            name = _unquote(tok.text) if tok.kind == "quoted" else tok.text
            got = self.signature.sort(name)
            if got is None:
                raise ParseError(f"unknown sort {name!r}", tok.line, tok.col)
            return got
        raise ParseError(f"expected a sort, found {tok.text!r}", tok.line, tok.col)

    def parse_type(self) -> TypeSig:
        where = self.peek()
        if self.peek().text == "(":
            self.next()
            args = [self.parse_sort()]
            while self.peek().text == "*":
                self.next()
                args.append(self.parse_sort())
            self.expect(")")
        else:
            args = [self.parse_sort()]
            while self.peek().text == "*":
                self.next()
                args.append(self.parse_sort())
        if self.peek().text == ">":
            self.next()
            result = self.parse_sort()
            sig = TypeSig(tuple(args), result)
        else:
            if len(args) > 1:
                raise ParseError(
                    "product type without a result sort", where.line, where.col
                )
            sig = TypeSig((), args[0])
        if self.strict and any(s == BOOL for s in sig.args):
            raise ParseError(
                "$o may only be a result sort in strict mode", where.line, where.col
            )
        return sig

    # formulas / terms (one unified expression grammar)

    def parse_expr(self) -> Term:
        first = self.parse_unit()
        tok = self.peek()
        if tok.text in ("&", "|"):
            op = tok.text
            items = [first]
            while self.peek().text == op:
                self.next()
                items.append(self.parse_unit())
            nxt = self.peek()
            if nxt.text in _BINOPS:
                raise ParseError(
                    "mixing binary operators requires parentheses", nxt.line, nxt.col
                )
            out = items[0]
            for item in items[1:]:
                out = App(_CONNECTIVE_OF[op], (out, item))
            return out
        if tok.text in ("=>", "<=>"):
            self.next()
            right = self.parse_unit()
            nxt = self.peek()
            if nxt.text in _BINOPS:
                raise ParseError(
                    f"{tok.text} is not associative; use parentheses", nxt.line, nxt.col
                )
            return App(_CONNECTIVE_OF[tok.text], (first, right))
        if tok.text == "<~>":
            raise ParseError("the <~> connective is not supported", tok.line, tok.col)
        return first

    def parse_unit(self) -> Term:
        tok = self.peek()
        if tok.text == "~":
            self.next()
            return lnot(self.parse_unit())
        if tok.text in ("!", "?"):
            return self.parse_quantified(tok.text)
        left = self.parse_atomic()
        nxt = self.peek()
        if nxt.text == "=":
            self.next()
            return Eq(left, self.parse_atomic())
        if nxt.text == "!=":
            self.next()
            return lnot(Eq(left, self.parse_atomic()))
        return left

    def parse_quantified(self, which: str) -> Term:
        head = self.next()
        self.expect("[")
        binds: list[tuple[str, Sort]] = []
        while True:
            var_tok = self.next()
            if var_tok.kind != "upper":
                raise ParseError(
                    f"expected a variable, found {var_tok.text!r}",
                    var_tok.line,
                    var_tok.col,
                )
            self.expect(":")
            sort = self.parse_sort()
            if self.strict and sort == BOOL:
                raise ParseError(
                    "boolean variables are not allowed in strict mode",
                    var_tok.line,
                    var_tok.col,
                )
            binds.append((var_tok.text, sort))
            if self.peek().text == ",":
                self.next()
                continue
            break
        self.expect("]")
        self.expect(":")
        body = self.parse_unit()
        node = Forall if which == "!" else Exists
        for var, sort in reversed(binds):
            body = node(var, sort, body)
        return body

    def parse_atomic(self) -> Term:
        tok = self.peek()
        if tok.text == "(":
            self.next()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if tok.kind == "dollar":
            return self.parse_dollar()
        if tok.kind == "upper":
            self.next()
            return Var(tok.text)
        if tok.kind == "int":
            self.next()
            self.numbers.add(tok.text)
            return App(tok.text, ())
        if tok.kind in ("lower", "quoted"):
            self.next()
            name = _unquote(tok.text) if tok.kind == "quoted" else tok.text
            return App(name, self.parse_optional_args())
        raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)

    def parse_optional_args(self) -> tuple[Term, ...]:
        if self.peek().text != "(":
            return ()
        self.next()
        args = [self.parse_expr()]
        while self.peek().text == ",":
            self.next()
            args.append(self.parse_expr())
        self.expect(")")
        return tuple(args)

    def parse_dollar(self) -> Term:
        tok = self.next()
        word = tok.text
        if word == "$true":
            return TRUE
        if word == "$false":
            return FALSE
        if word in _LEGACY_ITE:
            if self.strict:
                raise ParseError(f"{word} is not allowed in strict mode", tok.line, tok.col)
            self.expect("(")
            cond = self.parse_expr()
            self.expect(",")
            then = self.parse_expr()
            self.expect(",")
            els = self.parse_expr()
            self.expect(")")
            return Ite(cond, then, els)
        if word in _LEGACY_LET:
            if self.strict:
                raise ParseError(f"{word} is not allowed in strict mode", tok.line, tok.col)
            return self.parse_let(word, tok)
        if word in ARITHMETIC_FNS:
            return App(word, self.parse_optional_args())
        raise ParseError(f"unsupported builtin {word}", tok.line, tok.col)

    def parse_let(self, word: str, where: Token) -> Term:
        self.expect("(")
        if word == "$let":
            name_tok = self.next()
            if name_tok.kind == "quoted":
                fn = _unquote(name_tok.text)
            elif name_tok.kind == "lower":
                fn = name_tok.text
            else:
                raise ParseError(
                    f"invalid let-bound symbol {name_tok.text!r}",
                    name_tok.line,
                    name_tok.col,
                )
            self.expect(":")
            sig = self.parse_type()
            self.expect(",")
            head_tok = self.next()
            head = _unquote(head_tok.text) if head_tok.kind == "quoted" else head_tok.text
            if head != fn:
                raise ParseError(
                    f"let head {head!r} does not match the declared symbol {fn!r}",
                    head_tok.line,
                    head_tok.col,
                )
            formals: list[str] = []
            if self.peek().text == "(":
                self.next()
                while True:
                    var_tok = self.next()
                    if var_tok.kind != "upper":
                        raise ParseError(
                            f"let formals must be variables, found {var_tok.text!r}",
                            var_tok.line,
                            var_tok.col,
                        )
                    formals.append(var_tok.text)
                    if self.peek().text == ",":
                        self.next()
                        continue
                    break
                self.expect(")")
            if len(formals) != len(set(formals)):
                raise ParseError(
                    f"{DUPLICATE_LET_FORMAL}: let formals must be pairwise distinct",
                    head_tok.line,
                    head_tok.col,
                )
            if len(formals) != sig.arity:
                raise ParseError(
                    f"let head has {len(formals)} formals but the type declares "
                    f"{sig.arity} arguments",
                    head_tok.line,
                    head_tok.col,
                )
            params = tuple(zip(formals, sig.args))
            self.expect(":=")
        else:
            # Legacy form: no type annotation, so only constant bindings
            # (the bound symbol's sort is inferred from the body).
            name_tok = self.next()
            if name_tok.kind == "quoted":
                fn = _unquote(name_tok.text)
            elif name_tok.kind == "lower":
                fn = name_tok.text
            else:
                raise ParseError(
                    f"invalid let-bound symbol {name_tok.text!r}",
                    name_tok.line,
                    name_tok.col,
                )
            if self.peek().text == "(":
                raise ParseError(
                    f"{word} with parameters is not supported; "
                    "use $let with a type annotation",
                    where.line,
                    where.col,
                )
            params = ()
            self.expect(",")
        body = self.parse_expr()
        self.expect(",")
        scope = self.parse_expr()
        self.expect(")")
        return Let(fn, params, body, scope)

    # ------------------------------------------------------------------
    # loading: declarations, inference for undeclared constants, checking

    def _load(self, problem: Problem) -> None:
        sig = problem.signature
        conjectures = 0
        for af in problem.formulas:
            if isinstance(af.payload, Term) and af.role == "conjecture":
                conjectures += 1
                if conjectures > 1:
                    raise ParseError("at most one conjecture is allowed", af.line)
        for number in sorted(self.numbers):
            if sig.fn_sig(number) is None:
                sig.fns[number] = TypeSig((), INT)

        self._infer_undeclared_constants(problem)

        ctx = TypeContext.of(sig)
        for af in problem.formulas:
            if not isinstance(af.payload, Term):
                continue
            free = free_vars(af.payload)
            if free:
                raise ParseError(
                    f"formula {af.name!r} has unquantified variables {sorted(free)}",
                    af.line,
                )
            try:
                check_formula(ctx, af.payload)
            except SortError as err:
                err.formula = af.name
                raise ParseError(
                    f"in formula {af.name!r}: {err.kind}: {err}", af.line
                ) from err
            if self.strict:
                self._strict_check(ctx, af)

    def _infer_undeclared_constants(self, problem: Problem) -> None:
        """Give undeclared nullary symbols the sort forced by their use.

        Handles the common idiom of equating a fresh constant with a term
        of known sort; anything still undeclared surfaces as an unbound
        symbol during checking.
        """
        sig = problem.signature

        def try_sort(ctx: TypeContext, t: Term) -> Sort | None:
            try:
                return infer_sort(ctx, t)
            except SortError:
                return None

        def is_orphan(ctx: TypeContext, t: Term) -> bool:
            return (
                isinstance(t, App)
                and not t.args
                and ctx.fn_sig(t.fn) is None
                and not t.fn.startswith(RESERVED_PREFIX)
            )

        def walk(ctx: TypeContext, t: Term) -> bool:
            changed = False
            if isinstance(t, Eq):
                ls, rs = try_sort(ctx, t.left), try_sort(ctx, t.right)
                if ls is not None and rs is None and is_orphan(ctx, t.right):
                    sig.declare_fn(t.right.fn, TypeSig((), ls))
                    changed = True
                elif rs is not None and ls is None and is_orphan(ctx, t.left):
                    sig.declare_fn(t.left.fn, TypeSig((), rs))
                    changed = True
            if isinstance(t, App):
                fsig = ctx.fn_sig(t.fn)
                if fsig is not None and len(t.args) == fsig.arity:
                    for arg, want in zip(t.args, fsig.args):
                        if is_orphan(ctx, arg):
                            sig.declare_fn(arg.fn, TypeSig((), want))
                            changed = True
            if isinstance(t, (Forall, Exists)):
                return changed | walk(ctx.with_var(t.var, t.sort), t.body)
            if isinstance(t, Let):
                changed |= walk(ctx.with_vars(t.params), t.body)
                body_sort = try_sort(ctx.with_vars(t.params), t.body)
                if body_sort is not None:
                    scope_ctx = ctx.with_fn(
                        t.fn, TypeSig(tuple(s for _, s in t.params), body_sort)
                    )
                    changed |= walk(scope_ctx, t.scope)
                return changed
            for kid in children(t):
                changed |= walk(ctx, kid)
            return changed

        progress = True
        while progress:
            progress = False
            ctx = TypeContext.of(sig)
            for af in problem.formulas:
                if isinstance(af.payload, Term):
                    progress |= walk(ctx, af.payload)

    def _strict_check(self, ctx: TypeContext, af: AnnotatedFormula) -> None:
        def walk(local: TypeContext, t: Term) -> None:
            if isinstance(t, Eq):
                if infer_sort(local, t.left) == BOOL:
                    raise ParseError(
                        f"in formula {af.name!r}: boolean equality is not allowed "
                        "in strict mode",
                        af.line,
                    )
            if isinstance(t, (Forall, Exists)):
                walk(local.with_var(t.var, t.sort), t.body)
                return
            for kid in children(t):
                walk(local, kid)

        walk(ctx, af.payload)  # type: ignore[arg-type]


def parse_problem(text: str, strict: bool = False) -> Problem:
    """Parse and load a whole problem; errors carry source locations."""
    return _Parser(text, strict).parse_problem()


def parse_formula(text: str, ctx: TypeContext) -> Term:
    """Parse one standalone dialect formula against an existing context.

    Convenience for tests and fixtures; the formula is checked to be a
    well-sorted term but may contain free variables.
    """
    parser = _Parser(text, strict=False)
    parser.signature = ctx.sig
    term = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    for number in parser.numbers:
        if ctx.fn_sig(number) is None:
            ctx.sig.fns[number] = TypeSig((), INT)
    infer_sort(ctx, term)
    return term


# ---------------------------------------------------------------------------
# printing: dialect


def _sort_str(sort: Sort, strict: bool) -> str:
    if sort.is_bool:
        return "'fool_bool'" if strict else "$o"
    return _atom_str(sort.name)


def _typesig_str(sig: TypeSig, strict: bool, predicate: bool = False) -> str:
    result = "$o" if (strict and predicate) else _sort_str(sig.result, strict)
    if not sig.args:
        return result
    args = [_sort_str(s, strict) for s in sig.args]
    if len(args) == 1:
        return f"{args[0]} > {result}"
    return "(" + " * ".join(args) + f") > {result}"


def _is_equality_shaped(t: Term) -> bool:
    if isinstance(t, Eq):
        return True
    return isinstance(t, App) and t.fn == NOT and len(t.args) == 1 and isinstance(t.args[0], Eq)


def _needs_operand_parens(t: Term) -> bool:
    return _is_equality_shaped(t) or isinstance(t, (Forall, Exists)) or (
        isinstance(t, App) and t.fn == NOT
    )


class _RenderError(ValueError):
    pass


def _render(t: Term, ctx: TypeContext | None, strict: bool, in_formula: bool) -> str:
    """One renderer for both modes.  Dialect mode needs a context to
    re-derive let signatures; strict mode renders the truth constants by
    position and refuses $ite/$let."""
    if isinstance(t, Var):
        return t.name

    if isinstance(t, Eq):
        left = _render(t.left, ctx, strict, False)
        right = _render(t.right, ctx, strict, False)
        if _needs_operand_parens(t.left):
            left = f"({left})"
        if _needs_operand_parens(t.right):
            right = f"({right})"
        return f"{left} = {right}"

    if isinstance(t, (Forall, Exists)):
        symbol = "!" if isinstance(t, Forall) else "?"
        kind = type(t)
        binds = []
        body: Term = t
        local = ctx
        while isinstance(body, kind):
            binds.append(f"{body.var} : {_sort_str(body.sort, strict)}")
            if local is not None:
                local = local.with_var(body.var, body.sort)
            body = body.body
        return f"{symbol}[" + ", ".join(binds) + "] : " + _render(body, local, strict, True)

    if isinstance(t, Ite):
        if strict:
            raise _RenderError("$ite cannot appear in strict output")
        cond = _render(t.cond, ctx, strict, True)
        then = _render(t.then, ctx, strict, False)
        els = _render(t.els, ctx, strict, False)
        return f"$ite({cond}, {then}, {els})"

    if isinstance(t, Let):
        if strict:
            raise _RenderError("$let cannot appear in strict output")
        if ctx is None:
            raise _RenderError("rendering a let requires a type context")
        body_ctx = ctx.with_vars(t.params)
        sig = TypeSig(tuple(s for _, s in t.params), infer_sort(body_ctx, t.body))
        name = _atom_str(t.fn)
        head = name
        if t.params:
            head = name + "(" + ", ".join(x for x, _ in t.params) + ")"
        body = _render(t.body, body_ctx, strict, False)
        scope = _render(t.scope, ctx.with_fn(t.fn, sig), strict, False)
        return f"$let({name} : {_typesig_str(sig, strict)}, {head} := {body}, {scope})"

    if isinstance(t, App):
        if t.fn == TRUE_NAME:
            return "$true" if (in_formula or not strict) else "'fool_true'"
        if t.fn == FALSE_NAME:
            return "$false" if (in_formula or not strict) else "'fool_false'"
        if t.fn == NOT:
            arg = t.args[0]
            if isinstance(arg, Eq):
                left = _render(arg.left, ctx, strict, False)
                right = _render(arg.right, ctx, strict, False)
                if _needs_operand_parens(arg.left):
                    left = f"({left})"
                if _needs_operand_parens(arg.right):
                    right = f"({right})"
                return f"{left} != {right}"
            inner = _render(arg, ctx, strict, True)
            if isinstance(arg, (Forall, Exists)) or _is_equality_shaped(arg):
                return f"~({inner})"
            return f"~{inner}"
        if t.fn in (AND, OR):
            op = "&" if t.fn == AND else "|"
            items = _flatten_chain(t.fn, t)
            return "(" + f" {op} ".join(_render(x, ctx, strict, True) for x in items) + ")"
        if t.fn in (IMPLIES, IFF):
            op = "=>" if t.fn == IMPLIES else "<=>"
            a = _render(t.args[0], ctx, strict, True)
            b = _render(t.args[1], ctx, strict, True)
            return f"({a} {op} {b})"
        name = _atom_str(t.fn)
        if not t.args:
            return name
        return f"{name}(" + ", ".join(_render(a, ctx, strict, False) for a in t.args) + ")"

    raise TypeError(f"not a term: {t!r}")


def _flatten_chain(fn: str, t: Term) -> list[Term]:
    if isinstance(t, App) and t.fn == fn:
        return _flatten_chain(fn, t.args[0]) + [t.args[1]]
    return [t]


_NAME_SAFE = re.compile(r"[^A-Za-z0-9_]")


def _tff_name(prefix: str, name: str) -> str:
    safe = _NAME_SAFE.sub("_", name)
    return f"{prefix}_{safe}"


def print_dialect(problem: Problem) -> str:
    """Render a problem in the dialect.

    Round-trip contract: parsing the output yields the same annotated
    formulas, declarations and terms (variable and symbol names must be
    lexically valid, which holds for everything the parser produced).
    """
    lines = []
    ctx = problem.ctx
    for af in problem.formulas:
        if isinstance(af.payload, SortDecl):
            body = f"{_atom_str(af.payload.name)} : $tType"
        elif isinstance(af.payload, SymbolDecl):
            body = f"{_atom_str(af.payload.name)} : {_typesig_str(af.payload.sig, strict=False)}"
        else:
            body = _render(af.payload, ctx, strict=False, in_formula=True)
        lines.append(f"tff({_atom_str(af.name)}, {af.role}, {body}).")
    return "\n".join(lines) + ("\n" if lines else "")


def print_fol_tff0(fol) -> str:
    """Print a lowered problem as standard monomorphic typed first-order
    text: no $o argument positions, no boolean variables, the boolean
    sort rendered as the user sort 'fool_bool' with constants 'fool_true'
    and 'fool_false', and the two boolean axioms appended.

    The output re-parses under the strict grammar; declarations come
    first in original order, then definitions, the goal, and the two
    boolean axioms.
    """
    ctx = fol.ctx
    lines = []
    for name in ctx.sig.sorts:
        if name.startswith("$"):
            continue
        lines.append(f"tff({_tff_name('sort', name)}, type, {_atom_str(name)} : $tType).")
    lines.append("tff(sort_fool_bool, type, 'fool_bool' : $tType).")
    lines.append("tff(decl_fool_true, type, 'fool_true' : 'fool_bool').")
    lines.append("tff(decl_fool_false, type, 'fool_false' : 'fool_bool').")

    def declare(name: str, sig: TypeSig) -> None:
        if name in BUILTIN_FNS or name.startswith("$") or name.isdigit():
            return
        predicate = sig.result == BOOL and fol.predicate_split.get(name, "predicate") == "predicate"
        rendered = _typesig_str(sig, strict=True, predicate=predicate)
        lines.append(f"tff({_tff_name('decl', name)}, type, {_atom_str(name)} : {rendered}).")

    for name, sig in ctx.sig.fns.items():
        declare(name, sig)
    for name, sig in ctx.fn_binds.items():
        if ctx.sig.fn_sig(name) is None:
            declare(name, sig)

    for i, definition in enumerate(fol.definitions):
        body = _render(definition, None, strict=True, in_formula=True)
        lines.append(f"tff(def_{i}, axiom, {body}).")
    goal = _render(fol.goal, None, strict=True, in_formula=True)
    lines.append(f"tff(goal, hypothesis, {goal}).")
    dom = _render(fol.domain_axiom, None, strict=True, in_formula=True)
    lines.append(f"tff(fool_bool_dom, axiom, {dom}).")
    distinct = _render(fol.distinct_axiom, None, strict=True, in_formula=True)
    lines.append(f"tff(fool_bool_distinct, axiom, {distinct}).")
    return "\n".join(lines) + "\n"
