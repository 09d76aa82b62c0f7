#!/usr/bin/env python3
"""Lower a boolean-sorted problem to ordinary typed first-order text.

Four local steps do the work: boolean variables in formula positions
become equations with true, formulas in term positions get named by
fresh symbols, conditionals become guarded equations, and local
definitions are lifted to top-level symbols.  Every step records a
closed definition so models are preserved.
"""

from foolkit import parse_problem, print_fol_tff0, run_translation, term_to_str, to_fol

PROBLEM = """\
tff(s_list, type, list : $tType).
tff(s_item, type, item : $tType).
tff(d_contains, type, contains : (list * item) > $o).
tff(f1, axiom,
    ![P : $o, L : list, X : item, Y : item] :
      (contains(L, $ite(P, X, Y)) =
        ((P => contains(L, X)) & (~P => contains(L, Y))))).
"""

problem = parse_problem(PROBLEM)
phi = problem.goal_formula()
print("input:", term_to_str(phi))
print()

state = run_translation(phi, problem.ctx)
print(f"applied steps: {state.step_counts()}")
print("definitions:")
for d in state.defs:
    print("  ", term_to_str(d))
print("rewritten:", term_to_str(state.current))
print()

# The first-order conversion decides which boolean-valued symbols stay
# predicates and which become functions into the boolean sort.
fol = to_fol(state)
print("predicate split:", fol.predicate_split)
print()
print(print_fol_tff0(fol))
