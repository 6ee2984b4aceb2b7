"""Expected outputs written out by hand from worked examples."""
from __future__ import annotations

from tightverify import logic as L

PLACEHOLDER_N = {"n": L.Sort.INTEGER}

EXACT_COVER_COMPLETION = [
    "forall X (covered(X) <-> exists N (in_cover(N) and s(X, N)))",
    "forall X (in_cover(X) <-> in_cover(X) and exists N (1 <= N and N <= n and X = N))",
    "forall N1, N2, X not (N1 != N2 and in_cover(N1) and in_cover(N2) and s(X, N1) and s(X, N2))",
    "forall X, N not (s(X, N) and not covered(X))",
]

TWO_RULE_PROGRAM = "{p(1..3)}.\nq(X + 1) :- p(X)."

TWO_RULE_TAU_STAR = [
    "#true -> forall Z (exists I, J, K (I = 1 and J = 3 and I <= K and K <= J and Z = K) -> p(Z) or not p(Z))",
    "forall X (exists Z (Z = X and p(Z)) -> forall Z (exists I, J (Z = I + J and I = X and J = 1) -> q(Z)))",
]

EXACT_COVER_INPUT = {"s": [("a", 1), ("b", 1), ("b", 2), ("c", 2), ("c", 3)]}
EXACT_COVER_STABLE_MODEL = {
    ("s", ("a", 1)), ("s", ("b", 1)), ("s", ("b", 2)), ("s", ("c", 2)), ("s", ("c", 3)),
    ("in_cover", (1,)), ("in_cover", (3,)),
    ("covered", ("a",)), ("covered", ("b",)), ("covered", ("c",)),
}
EXACT_COVER_IO_MODEL = {a for a in EXACT_COVER_STABLE_MODEL if a[0] != "covered"}
