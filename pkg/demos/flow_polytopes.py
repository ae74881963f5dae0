"""
Flow polytopes and reflexivity
==============================

The flow polytope of a weight is the set of nonnegative flows with that
weight.  Its vertices come from stable spanning trees; in a circulation
basis it becomes a lattice polytope we can count points in.
"""

import tsquivers as tq

q = tq.bipartite_quiver(2, 3)
theta = q.weight

print("vertices in flow coordinates:")
for v in tq.flow_polytope_vertices(theta, q):
    print("  ", v)

basis = tq.basis_for_flow_polytope(q, (0, 1, 4, 5))
print("circulation basis:", basis.columns)

hexagon = tq.flow_polytope(theta, q, tree=(0, 1, 4, 5))
print("tree coordinates:", [tuple(int(x) for x in v) for v in hexagon.vertices])
print("lattice data:", tq.lattice_data(hexagon))
print("reflexive:", tq.is_flow_polytope_reflexive(theta, q))

# the lattice data does not depend on which tree gives the coordinates
for tree in tq.all_spanning_trees(q)[:3]:
    print(tree, tq.lattice_data(tq.flow_polytope(theta, q, tree=tree)))

k4 = tq.complete_quiver(4)
simplex = tq.flow_polytope((-2, 1, -1, 2), k4)
print("K4 simplex:", [tuple(int(x) for x in v) for v in simplex.vertices], tq.lattice_data(simplex))
try:
    tq.is_flow_polytope_reflexive((-2, 1, -1, 2), k4)
except tq.errors.NoUniqueInteriorPoint as exc:
    print("not reflexive:", exc)
