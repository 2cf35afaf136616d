# %% [markdown]
# # Voting over replicas and the risk of failure
#
# A logical cell kept at redundancy k = 2n + 1 is read by voting over its
# replicas. The size m of the largest agreeing group drives the risk
# r = (k - m) / n, which reaches 1 once the majority is gone.

# %%
from scrambler import compute_risk, majority_vote

for replicas in [(5, 5, 5), (5, 5, 9, 9, 5), (1, 2, 3, 4, 5)]:
    res = majority_vote(replicas)
    print(replicas, "->", res.majority_value, "m =", res.m)

# %% Risk table for every level
for k in (3, 5, 7, 9, 11):
    row = [str(compute_risk(k, m).fraction) for m in range(k, 0, -1)]
    print(f"k={k:2d}  m=k..1: " + " ".join(f"{r:>4}" for r in row))

# %% The threshold test is exact: r = 1/2 does not exceed 0.5
half = compute_risk(5, 4)
print(half.fraction, half.exceeds(0.5), compute_risk(5, 3).exceeds(0.5))
