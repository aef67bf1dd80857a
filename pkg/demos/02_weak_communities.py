"""The weak community condition and constrained search.

A community is weakly valid at level L when 4e - K >= L: at L=1 that is
the classic "internal degree strictly beats external degree" test, at L=0
it merely forbids negative density. This script shows both levels on the
hub-and-satellites network and then searches under the constraint.

Run: python demos/02_weak_communities.py
"""

from mdnet import SolverConfig, full_report, instance, solve_local_search, weak_condition
from mdnet.numformat import rational_str, sig_str

star = instance("fig1")
g = star.graph
split = star.partition("split")

print("splitting off the hub triangle (the unconstrained optimum):")
for l in range(1, split.m + 1):
    ok0 = weak_condition(g, split, l, 0)
    ok1 = weak_condition(g, split, l, 1)
    print(f"  community {l}: weak(L=0)={ok0}  weak(L=1)={ok1}")

# The triangle fails both levels, so this partition is unreachable once the
# weak constraint is active. Searching under the constraint merges the hub
# into one of its satellites instead: one community fewer, D drops from
# 18.9167 to 18.5.
for level in (0, 1):
    res = solve_local_search(g, SolverConfig(weak_L=level, seed=7, restarts=32))
    rep = full_report(g, res.best)
    assert all(c.weak_L1 if level else c.weak_L0 for c in rep.communities)
    print(f"\nweak L={level}: m={res.m}, D={sig_str(res.D)} ({rational_str(res.D)})")
    merged = max(rep.communities, key=lambda c: c.stats.size)
    print(f"  largest community has size {merged.stats.size} and density {rational_str(merged.density)}")

# Without the constraint the negative-density community comes right back.
free = solve_local_search(g, SolverConfig(seed=7, restarts=32))
print(f"\nunconstrained: m={free.m}, D={sig_str(free.D)}, "
      f"min density={rational_str(min(c.density for c in free.report.communities))}")
