"""Shared fixture problems used across the test modules."""

# Program-verification example: an integer variable updated in both
# branches of a conditional, with the proof obligation as conjecture.
VERIFICATION_LISTING = """\
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

# Distributivity of a conditional over the connectives, stated for a
# list-membership predicate: the ite-over-bool pattern.
CONTAINS_ITE = """\
tff(s_list, type, list : $tType).
tff(s_item, type, item : $tType).
tff(d_contains, type, contains : (list * item) > $o).
tff(f1, axiom,
    ![P : $o, L : list, X : item, Y : item] :
      (contains(L, $ite(P, X, Y)) =
        ((P => contains(L, X)) & (~P => contains(L, Y))))).
"""

# Unsatisfiable definition of a sorted-sublist check, with a boolean
# variable used both as a formula and as an equality operand.
SUBSET_SORTED = """\
tff(s_list, type, list : $tType).
tff(s_item, type, item : $tType).
tff(d_ss, type, subset_sorted : (list * list) > $o).
tff(d_nil, type, nil : list).
tff(d_cons, type, cons : (item * list) > list).
tff(d_less, type, less : (item * item) > $o).
tff(f2, axiom,
    ![L1 : list, L2 : list, P : $o] :
      ~(subset_sorted(L1, L2) = P
        & (![L2p : list] : ~(L1 = nil & L2 = L2p & P))
        & (![X1 : item, L1p : list] : ~(L1 = cons(X1, L1p) & L2 = nil & ~P))
        & (![X1 : item, L1p : list, X2 : item, L2p : list] :
             ~(L1 = cons(X1, L1p) & L2 = cons(X2, L2p)
               & P = $ite(less(X1, X2), $false,
                       $ite(X1 = X2, subset_sorted(L1p, L2p),
                            subset_sorted(cons(X1, L1p), L2p))))))).
"""
