"""The four lowering steps, the driver, and conversion to legal
first-order problems."""

import pytest

from foolkit import (
    App,
    BOOL,
    DomainSpec,
    Eq,
    Forall,
    Ite,
    Let,
    Signature,
    TypeContext,
    TypeSig,
    Var,
    check_model_preservation,
    enumerate_interpretations,
    free_vars,
    is_syntactically_first_order,
    land,
    liff,
    limplies,
    lnot,
    lor,
    models,
    parse_formula,
    parse_problem,
    run_translation,
    step1_bool_var,
    step2_formula_in_term_ctx,
    step3_ite,
    step4_let,
    to_fol,
)
from foolkit.semantics import table_count
from foolkit.terms import FALSE, TRUE, free_fns, term_to_str
from foolkit.translate import TranslationState, redex_measure

from fixtures import CONTAINS_ITE, SUBSET_SORTED, VERIFICATION_LISTING


def fresh_state(phi, ctx):
    from foolkit.terms import all_names

    return TranslationState(
        phi=phi, current=phi, ctx=ctx, base_ctx=ctx, used_names=all_names(phi)
    )


@pytest.fixture
def ctx():
    sig = Signature()
    s = sig.declare_sort("s")
    sig.declare_fn("p0", TypeSig((), BOOL))
    sig.declare_fn("q0", TypeSig((), BOOL))
    sig.declare_fn("f", TypeSig((BOOL,), s))
    sig.declare_fn("h", TypeSig((s,), s))
    sig.declare_fn("c", TypeSig((), s))
    sig.declare_fn("pr", TypeSig((s,), BOOL))
    return TypeContext.of(sig)


# ---------------------------------------------------------------------------
# step 1


def test_step1_rewrites_bool_var(ctx):
    phi = Forall("X", BOOL, lor(Var("X"), App("p0")))
    state = fresh_state(phi, ctx)
    step1_bool_var(state, (0, 0))
    assert state.current == Forall("X", BOOL, lor(Eq(Var("X"), TRUE), App("p0")))
    assert state.defs == []


def test_step1_inside_implication(ctx):
    phi = Forall("P", BOOL, limplies(Var("P"), App("pr", (App("c"),))))
    state = fresh_state(phi, ctx)
    step1_bool_var(state, (0, 0))
    assert state.current == Forall(
        "P", BOOL, limplies(Eq(Var("P"), TRUE), App("pr", (App("c"),)))
    )


def test_step1_rejects_term_context(ctx):
    phi = Forall("X", BOOL, Eq(App("f", (Var("X"),)), App("c")))
    state = fresh_state(phi, ctx)
    with pytest.raises(ValueError):
        step1_bool_var(state, (0, 0, 0))


# ---------------------------------------------------------------------------
# step 2


def test_step2_closed_formula_gets_nullary_name(ctx):
    phi = Eq(App("h", (App("f", (lor(App("p0"), App("q0")),)),)), App("c"))
    state = fresh_state(phi, ctx)
    step2_formula_in_term_ctx(state, (0, 0, 0))
    g = state.fresh_symbols[0]
    assert g == "sk_fool_0"
    assert state.current == Eq(App("h", (App("f", (App(g),)),)), App("c"))
    assert state.defs == [liff(lor(App("p0"), App("q0")), Eq(App(g), TRUE))]
    assert state.ctx.fn_sig(g) == TypeSig((), BOOL)


def test_step2_open_formula_quantifies_free_vars(ctx):
    s = ctx.sig.sort("s")
    phi = Forall("X", s, Eq(App("f", (App("pr", (Var("X"),)),)), App("c")))
    state = fresh_state(phi, ctx)
    step2_formula_in_term_ctx(state, (0, 0, 0))
    g = state.fresh_symbols[0]
    definition = state.defs[0]
    assert definition == Forall(
        "X", s, liff(App("pr", (Var("X"),)), Eq(App(g, (Var("X"),)), TRUE))
    )
    assert free_vars(definition) == set()
    assert state.ctx.fn_sig(g) == TypeSig((s,), BOOL)


def test_step2_refuses_truth_constants(ctx):
    phi = Eq(App("f", (TRUE,)), App("c"))
    state = fresh_state(phi, ctx)
    with pytest.raises(ValueError):
        step2_formula_in_term_ctx(state, (0, 0))


# ---------------------------------------------------------------------------
# step 3


def test_step3_ground_ite(ctx):
    # ite over constants: nullary fresh symbol, two guarded equations.
    phi = Eq(App("h", (Ite(App("pr", (App("c"),)), App("c"), App("h", (App("c"),))),)), App("c"))
    state = fresh_state(phi, ctx)
    step3_ite(state, (0, 0))
    g = state.fresh_symbols[0]
    cond = App("pr", (App("c"),))
    assert state.defs[0] == limplies(cond, Eq(App(g), App("c")))
    assert state.defs[1] == limplies(lnot(cond), Eq(App(g), App("h", (App("c"),))))
    assert state.current == Eq(App("h", (App(g),)), App("c"))


def test_step3_open_ite_with_bool_condition(ctx):
    s = ctx.sig.sort("s")
    phi = Forall(
        "P", BOOL, Forall("X", s, Forall("Y", s,
            Eq(Ite(Eq(Var("P"), TRUE), Var("X"), Var("Y")), Var("X")))))
    state = fresh_state(phi, ctx)
    step3_ite(state, (0, 0, 0, 0))
    g = state.fresh_symbols[0]
    assert state.ctx.fn_sig(g) == TypeSig((BOOL, s, s), s)
    gapp = App(g, (Var("P"), Var("X"), Var("Y")))
    want = Forall("P", BOOL, Forall("X", s, Forall("Y", s,
        limplies(Eq(Var("P"), TRUE), Eq(gapp, Var("X"))))))
    assert state.defs[0] == want
    # preservation of this single step, checked by enumeration
    spec = DomainSpec({s: 2})
    report = check_model_preservation(phi, state, spec)
    assert report.ok


def test_step3_requires_ite(ctx):
    state = fresh_state(App("p0"), ctx)
    with pytest.raises(ValueError):
        step3_ite(state, ())


# ---------------------------------------------------------------------------
# step 4


def test_step4_nullary_binding(ctx):
    s = ctx.sig.sort("s")
    # let k = h(c) in pr(k): constant binding, no free variables.
    phi = Let("k", (), App("h", (App("c"),)), App("pr", (App("k"),)))
    state = fresh_state(phi, ctx)
    step4_let(state, ())
    g = state.fresh_symbols[0]
    assert state.defs == [Eq(App(g), App("h", (App("c"),)))]
    assert state.current == App("pr", (App(g),))
    assert state.ctx.fn_sig(g) == TypeSig((), s)


def test_step4_parameters_renamed_fresh(ctx):
    s = ctx.sig.sort("s")
    # let g(X : s) = c in g(g(d)): formals rename to fresh variables.
    phi = Let("g", (("X", s),), App("c"), App("g", (App("g", (App("c"),)),)))
    state = fresh_state(phi, ctx)
    step4_let(state, ())
    gname = state.fresh_symbols[0]
    [definition] = state.defs
    assert isinstance(definition, Forall)
    z = definition.var
    assert definition == Forall(z, s, Eq(App(gname, (Var(z),)), App("c")))
    assert state.current == App(gname, (App(gname, (App("c"),)),))


def test_step4_free_vars_become_extra_arguments(ctx):
    s = ctx.sig.sort("s")
    sig2 = ctx.sig
    sig2.declare_fn("p2", TypeSig((s, s), BOOL))
    # forall Y. (let f(X) = p2(X, Y) in f(c)): Y rides along as an argument.
    phi = Forall(
        "Y", s,
        Let("fl", (("X", s),), App("p2", (Var("X"), Var("Y"))), App("fl", (App("c"),))),
    )
    state = fresh_state(phi, ctx)
    step4_let(state, (0,))
    g = state.fresh_symbols[0]
    [definition] = state.defs
    # (forall Z)(forall Y)(g(Z, Y) = p2(Z, Y)) up to the fresh Z's name
    assert isinstance(definition, Forall)
    z = definition.var
    assert definition == Forall(z, s, Forall("Y", s,
        Eq(App(g, (Var(z), Var("Y"))), App("p2", (Var(z), Var("Y"))))))
    assert state.current == Forall("Y", s, App(g, (App("c"), Var("Y"))))
    assert state.ctx.fn_sig(g) == TypeSig((s, s), BOOL)


def test_step4_renames_captured_binders(ctx):
    s = ctx.sig.sort("s")
    # The let term has free Y, and its scope quantifies another Y: the
    # bound Y must be renamed before Y is appended to applications.
    inner = Forall("Y", s, Eq(App("fl", (Var("Y"),)), App("c")))
    phi = Forall("Y", s, Let("fl", (("X", s),), App("h", (Var("Y"),)), land(App("pr", (App("fl", (Var("Y"),)),)), inner)))
    state = fresh_state(phi, ctx)
    step4_let(state, (0,))
    current = state.current
    assert isinstance(current, Forall)
    conj = current.body
    bound_part = conj.args[1]
    assert isinstance(bound_part, Forall)
    assert bound_part.var != "Y"  # renamed apart
    g = state.fresh_symbols[0]
    assert bound_part.body == Eq(App(g, (Var(bound_part.var), Var("Y"))), App("c"))


def test_steps_reject_locally_bound_symbols(ctx):
    s = ctx.sig.sort("s")
    # the inner let's body mentions fl, which is bound by the outer let
    inner = Let("k", (), App("fl", (App("c"),)), App("k"))
    phi = Let("fl", (("X", s),), App("h", (Var("X"),)), App("pr", (inner,)))
    state = fresh_state(phi, ctx)
    with pytest.raises(ValueError) as err:
        step4_let(state, (1, 0))
    assert "bound symbols" in str(err.value)
    # same side condition guards the naming and conditional steps
    ite_phi = Let(
        "fl", (("X", s),), App("h", (Var("X"),)),
        Eq(Ite(App("p0"), App("fl", (App("c"),)), App("c")), App("c")),
    )
    state2 = fresh_state(ite_phi, ctx)
    with pytest.raises(ValueError):
        step3_ite(state2, (1, 0))


def test_step4_shadowed_rebinding_not_rewritten(ctx):
    s = ctx.sig.sort("s")
    inner = Let("fl", (), App("c"), App("fl"))
    phi = Let("fl", (("X", s),), App("h", (Var("X"),)), Eq(App("fl", (App("c"),)), inner))
    state = fresh_state(phi, ctx)
    step4_let(state, ())
    g = state.fresh_symbols[0]
    # outer application rewritten, inner let untouched (it rebinds fl)
    assert state.current == Eq(App(g, (App("c"),)), inner)


# ---------------------------------------------------------------------------
# the driver


def test_driver_leaves_first_order_input_alone(ctx):
    phi = land(App("pr", (App("c"),)), App("p0"))
    state = run_translation(phi, ctx)
    assert state.current == phi
    assert state.defs == []
    assert state.steps == []


def test_driver_on_verification_listing():
    problem = parse_problem(VERIFICATION_LISTING)
    state = run_translation(problem.goal_formula(), problem.ctx)
    counts = state.step_counts()
    assert counts == {"let": 2, "ite": 1}
    assert len(state.defs) == 4  # one equation per let, two for the ite
    for d in state.defs:
        assert free_vars(d) == set()
        assert is_syntactically_first_order(d).ok
    assert is_syntactically_first_order(state.current).ok


def test_driver_on_contains_ite_pattern():
    problem = parse_problem(CONTAINS_ITE)
    state = run_translation(problem.goal_formula(), problem.ctx)
    counts = state.step_counts()
    # the boolean variable fires (condition and both implications), the
    # conditional fires once, and the right-hand side is named once
    assert counts["ite"] == 1
    assert counts["bool-var"] == 3
    assert counts["formula-in-term"] == 1
    for d in state.defs:
        assert free_vars(d) == set()


def test_driver_on_subset_sorted():
    problem = parse_problem(SUBSET_SORTED)
    state = run_translation(problem.goal_formula(), problem.ctx)
    assert state.step_counts()["ite"] == 2
    assert is_syntactically_first_order(state.current).ok


def test_driver_step_count_bounded_by_measure():
    for text in (VERIFICATION_LISTING, CONTAINS_ITE, SUBSET_SORTED):
        problem = parse_problem(text)
        phi = problem.goal_formula()
        state = run_translation(phi, problem.ctx)
        assert len(state.steps) <= redex_measure(phi, problem.ctx)


def test_driver_rejects_open_formulas(ctx):
    with pytest.raises(ValueError):
        run_translation(App("pr", (Var("X"),)), ctx)


def _assert_step_locally_equivalent(phi, state):
    """The definitions added by the applied step force the old and new
    formula to agree in every interpretation of the extended context."""
    s = state.ctx.sig.sort("s")
    spec = DomainSpec({s: 2})
    builtin = {"$and", "$or", "$not", "$implies", "$iff", "$true", "$false"}
    symbols = sorted((free_fns(phi) | free_fns(state.current)) - builtin)
    agreements = 0
    for interp in enumerate_interpretations(state.ctx, spec, symbols):
        if all(models(interp, d) for d in state.defs):
            assert models(interp, phi) == models(interp, state.current)
            agreements += 1
    assert agreements > 0  # the side condition is satisfiable


def test_step_local_equivalence_all_steps(ctx):
    s = ctx.sig.sort("s")
    # step 1 adds no definition: the rewrite itself is an equivalence
    phi1 = Forall("X", BOOL, lor(Var("X"), App("p0")))
    state1 = step1_bool_var(fresh_state(phi1, ctx), (0, 0))
    _assert_step_locally_equivalent(phi1, state1)
    # step 2
    phi2 = Eq(App("f", (land(App("p0"), App("q0")),)), App("c"))
    state2 = step2_formula_in_term_ctx(fresh_state(phi2, ctx), (0, 0))
    _assert_step_locally_equivalent(phi2, state2)
    # step 3 adds a guarded pair
    phi3 = Eq(Ite(App("p0"), App("c"), App("h", (App("c"),))), App("c"))
    state3 = step3_ite(fresh_state(phi3, ctx), (0,))
    _assert_step_locally_equivalent(phi3, state3)
    # step 4 adds one lifted equation
    phi4 = Let("k", (("X", s),), App("h", (Var("X"),)), App("pr", (App("k", (App("c"),)),)))
    state4 = step4_let(fresh_state(phi4, ctx), ())
    _assert_step_locally_equivalent(phi4, state4)


def test_translation_preserves_on_ites_and_lets(ctx):
    s = ctx.sig.sort("s")
    phi = parse_formula("$let(k : s, k := h(c), pr(k) & pr($ite(p0, k, c)))", ctx)
    state = run_translation(phi, ctx)
    report = check_model_preservation(phi, state, DomainSpec({s: 2}))
    assert report.ok


def test_out_of_order_steps_leave_work_inside_definitions(ctx):
    """Applying the conditional step before the naming step copies a
    non-first-order residue into a definition; the redex scan then finds
    it there and the naming step fires with the definition as target."""
    from foolkit.translate import _find_redex

    s = ctx.sig.sort("s")
    phi = Eq(
        App("h", (Ite(App("p0"), App("f", (land(App("q0"), App("q0")),)), App("c")),)),
        App("c"),
    )
    state = fresh_state(phi, ctx)
    step3_ite(state, (0, 0))  # out of order: the branch still holds (q0 & q0)
    assert not is_syntactically_first_order(state.defs[0]).ok
    kind, target, path = _find_redex(state)
    assert kind == "formula-in-term"
    assert target == 0  # inside the first definition
    step2_formula_in_term_ctx(state, path, target)
    assert _find_redex(state) is None
    for formula in (state.current, *state.defs):
        assert is_syntactically_first_order(formula).ok
    spec = DomainSpec({s: 2})
    assert check_model_preservation(phi, state, spec).ok


def test_nested_lets_rebinding_at_different_sorts():
    text = (
        "tff(s_s, type, srt : $tType). tff(d_c, type, c : srt)."
        " tff(d_p, type, p : srt > $o)."
        " tff(f1, axiom, $let(k : $o, k := $true, $let(k : srt, k := c, p(k))))."
    )
    problem = parse_problem(text)
    phi = problem.goal_formula()
    state = run_translation(phi, problem.ctx)
    assert state.step_counts() == {"let": 2}
    srt = problem.signature.sort("srt")
    assert check_model_preservation(phi, state, DomainSpec({srt: 2})).ok


def test_inner_let_waits_for_outer_elimination():
    # The inner binding mentions the outer bound symbol, so it is not
    # eligible until the outer let has been lifted.
    text = (
        "tff(s_s, type, srt : $tType). tff(d_c, type, c : srt)."
        " tff(d_q, type, q : srt > srt). tff(d_p, type, p : srt > $o)."
        " tff(f1, axiom, $let(f : srt > srt, f(X) := q(X),"
        " p($let(k : srt, k := f(c), k))))."
    )
    problem = parse_problem(text)
    phi = problem.goal_formula()
    state = run_translation(phi, problem.ctx)
    assert [rule for rule, _, _ in state.steps] == ["let", "let"]
    assert state.current == App("p", (App("sk_fool_1"),))
    assert state.defs[1] == Eq(App("sk_fool_1"), App("sk_fool_0", (App("c"),)))
    srt = problem.signature.sort("srt")
    assert check_model_preservation(phi, state, DomainSpec({srt: 2})).ok


def test_ite_inside_let_body():
    text = (
        "tff(s_s, type, srt : $tType). tff(d_c, type, c : srt)."
        " tff(d_q, type, q : srt > srt). tff(d_pp, type, pp : $o)."
        " tff(f1, axiom, $let(f : srt > srt, f(X) := $ite(pp, X, q(X)),"
        " f(c) = $ite(pp, c, q(c))))."
    )
    problem = parse_problem(text)
    phi = problem.goal_formula()
    state = run_translation(phi, problem.ctx)
    assert state.step_counts() == {"ite": 2, "let": 1}
    srt = problem.signature.sort("srt")
    assert check_model_preservation(phi, state, DomainSpec({srt: 2})).ok


# ---------------------------------------------------------------------------
# conversion to FOL


def test_to_fol_appends_boolean_axioms(ctx):
    phi = Eq(App("c"), App("c"))
    fol = to_fol(run_translation(phi, ctx))
    assert fol.goal == phi
    assert fol.domain_axiom == Forall(
        "X", BOOL, lor(Eq(Var("X"), TRUE), Eq(Var("X"), FALSE))
    )
    assert fol.distinct_axiom == lnot(Eq(TRUE, FALSE))
    assert fol.axioms == (fol.domain_axiom, fol.distinct_axiom)


def test_to_fol_keeps_goal_true_atom(ctx):
    fol = to_fol(run_translation(TRUE, ctx))
    assert fol.goal == TRUE  # printed as the always-true atom


def test_predicate_split(ctx):
    # pr only ever an atom: predicate.  p0 also under f(...): function,
    # and its atoms become equations with true.
    phi = land(App("pr", (App("c"),)), land(App("p0"), Eq(App("f", (App("p0"),)), App("c"))))
    state = run_translation(phi, ctx)
    fol = to_fol(state)
    assert fol.predicate_split["pr"] == "predicate"
    assert fol.predicate_split["p0"] == "function"
    assert fol.goal == land(
        App("pr", (App("c"),)),
        land(Eq(App("p0"), TRUE), Eq(App("f", (App("p0"),)), App("c"))),
    )


def test_predicate_split_preserves_models(ctx):
    s = ctx.sig.sort("s")
    phi = land(App("p0"), Eq(App("f", (App("p0"),)), App("c")))
    state = run_translation(phi, ctx)
    fol = to_fol(state)
    # the split rewriting is a semantic no-op
    spec = DomainSpec({s: 2})
    symbols = ["p0", "f", "c"]
    for interp in enumerate_interpretations(state.ctx, spec, symbols):
        assert models(interp, phi) == models(interp, fol.goal)


def test_to_fol_output_is_first_order(ctx):
    for text in (VERIFICATION_LISTING, CONTAINS_ITE, SUBSET_SORTED):
        problem = parse_problem(text)
        fol = to_fol(run_translation(problem.goal_formula(), problem.ctx))
        for formula in (*fol.axioms, fol.goal):
            assert is_syntactically_first_order(formula).ok


def test_to_fol_requires_terminated_state(ctx):
    phi = Eq(App("f", (land(App("p0"), App("q0")),)), App("c"))
    state = fresh_state(phi, ctx)
    with pytest.raises(ValueError):
        to_fol(state)
