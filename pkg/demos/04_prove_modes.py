#!/usr/bin/env python3
"""Refute a boolean validity with both treatments of the two-element
domain.

Axiom mode keeps the clause ``x = true | x = false`` and suffers its
self-paramodulation; rule mode drops the clause and instead rewrites any
non-variable boolean subterm s to true while recording ``s = false``.
Both refute the problem here; the statistics show how differently they
get there.
"""

from foolkit import parse_problem, run_translation, to_fol
from foolkit.prover import ProverConfig, clausify, saturate

# Needs a case split on the boolean argument: p holds of both truth
# values, so it holds of every boolean.
PROBLEM = """\
tff(d_p, type, p : $o > $o).
tff(a1, axiom, p($true)).
tff(a2, axiom, p($false)).
tff(c1, conjecture, ![X : $o] : p(X)).
"""

problem = parse_problem(PROBLEM)
fol = to_fol(run_translation(problem.goal_formula(), problem.ctx))
result = clausify(fol)
print("clauses:")
for clause in result.clauses:
    print("  ", clause.render())

for mode in ("axiom", "rule"):
    outcome = saturate(
        result.clauses,
        result.ctx,
        ProverConfig(bool_mode=mode, max_clauses=5000, max_seconds=10),
    )
    print(f"\n--- {mode} mode: {outcome.verdict} ---")
    for key in ("generated", "kept", "paramodulation", "fool_paramodulation",
                "resolution", "bool_axiom_clauses_removed"):
        print(f"  {key}={int(outcome.stats[key])}")
    print("proof:")
    for line in outcome.render_proof().splitlines():
        print("  ", line)
