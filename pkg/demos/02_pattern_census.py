"""
Counting distinct windows
=========================

"""

# P(X, m x n) is the set of all m x n windows of X.
from paperfold import Census, S, enumerate_subpatterns

print(sorted(g.to_text() for g in enumerate_subpatterns(S(1), 1, 1)))
print(len(enumerate_subpatterns(S(2), 1, 1)), "letters occur in S_2")

# For the infinite structure, scan T_k until two consecutive levels agree.
census = Census()
res = census.pattern_set_T(2, 2)
print(res.cardinality, "2x2 patterns, stable from level", res.plateau_level)
print("set sizes per level:", res.history)

res = census.pattern_set_T(4, 4)
print(res.cardinality, "4x4 patterns, stable from level", res.plateau_level)

# Sort the patterns by where they come from inside a substituted block.
for i in (1, 2):
    for j in (1, 2):
        print(f"P_{i}{j}(3x3):", len(census.P_ij(3, 3, i, j)))

# Over S the same four classes add up to A_n once n >= 3.
abc = census.abc(3)
print("a-counts at 3:", [abc[k] for k in ("a11", "a12", "a21", "a22")], "A_3 =", census.A(3))

# The two-step classes refine the one-step ones.
parts = [census.Q_ij(2, 2, a, b) for a in (1, 3) for b in (1, 3)]
print("Q sizes inside P_11(2x2):", [len(p) for p in parts], "of", len(census.P_ij(2, 2, 1, 1)))

# Work can be split into row bands; the answer does not change.
split = Census(partitions=8, workers=4)
assert split.pattern_set_T(5, 7).patterns == census.pattern_set_T(5, 7).patterns

# Text export, one pattern per line.
print(census.pattern_set_S(1, 2).patterns.to_text())
