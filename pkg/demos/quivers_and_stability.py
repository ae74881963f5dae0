"""
Toric quivers and stability
===========================

Build the bipartite quiver with two sources and three sinks, look at its
weight, and find the subquivers that destabilise it.
"""

import numpy as np

import tsquivers as tq
from tsquivers.stability import stability

q = tq.bipartite_quiver(2, 3)
print("arrows:", q.arrows)
print("incidence matrix:\n", q.incidence_matrix)

# the weight of the all-ones flow
theta = q.weight
print("canonical weight:", theta)

# a spanning tree is stable for the canonical weight
print("tree (0,1,4,5) stable:", tq.is_stable([0, 1, 4, 5], q, theta))

# a successor-closed set of negative weight is what breaks stability
v = stability([0, 1, 2, 3], q, theta)
print("arrows 0-3 semistable:", v.semistable, "witness", v.witness, "sum", v.witness_sum)

for label, th in (("canonical", None), ("skewed", (-5, -1, 2, 2, 2))):
    found = tq.maximal_unstable_subquivers(q, th)
    print(f"maximal unstable ({label}):", found.non_singletons)

# shrink K4 until every arrow matters
k4 = tq.complete_quiver(4)
tight = tq.make_tight((-2, 1, -2, 3), k4)
print("tight quiver:", tight.vertex_count, "vertices,", tight.arrows, "weight", tight.weight)

print("stable trees of (-2,1,-1,2):")
for t in tq.stable_trees((-2, 1, -1, 2), k4):
    print("  ", t, np.array(tq.tree_flow(k4, (-2, 1, -1, 2), t)))
