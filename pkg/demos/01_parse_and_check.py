#!/usr/bin/env python3
"""Parse and sort-check a problem with a first-class boolean sort.

The input is the classic program-verification shape: an integer variable
updated in both branches of a conditional, encoded with $ite and $let,
with the postcondition as the conjecture.
"""

from foolkit import infer_sort, parse_problem, term_to_str

PROBLEM = """\
tff(1, type, p : $int > $o).
tff(2, type, q : $int > $int).
tff(3, type, r : $int > $o).
tff(4, type, a : $int).
tff(5, hypothesis, ! [X : $int] : (p(X) => $greatereq(X, 0))).
tff(6, hypothesis, ! [X : $int] : ($greatereq(q(X), 0))).
tff(7, hypothesis, p(a)).
tff(8, hypothesis,
    a1 = $ite_t(r(a), $let_tt(a, $sum(a, 1), a),
                        $let_tt(a, $sum(a, q(a)), a))).
tff(9, conjecture, $greater(a1, 0)).
"""

problem = parse_problem(PROBLEM)
print(f"{len(problem.formulas)} annotated formulas")

# Declarations land in the signature; the undeclared constant a1 got its
# sort inferred from the equation in hypothesis 8.
print("a1 :", problem.signature.fn_sig("a1"))

# The legacy $ite_t / $let_tt forms normalize to the unified nodes.
hypothesis8 = problem.formulas[7].payload
print("hypothesis 8:", term_to_str(hypothesis8))

# Everything below roles axiom/hypothesis/conjecture is a boolean term.
for af in problem.formulas:
    if af.role != "type":
        sort = infer_sort(problem.ctx, af.payload)
        print(f"  {af.name}: {af.role:10s} : {sort}")

# The refutation goal bundles hypotheses with the negated conjecture.
goal = problem.goal_formula()
print("goal sort:", infer_sort(problem.ctx, goal))
