"""
The chamber decomposition for K4
================================

Every weight in the cone of K4 picks out a set of stable spanning trees.
Weights with the same trees and the same stability pattern share a chamber.
"""

import tsquivers as tq

k4 = tq.complete_quiver(4)

cone = tq.cone_of_weights(k4)
print("primitive arrows:", tq.primitive_arrows(k4))
print("cone rays:", cone.rays)
print("cone facets:", cone.facets)

walls = tq.potential_walls(k4)
print(len(walls), "potential walls")
for w in walls:
    print("  Q+ =", w.q_plus, "type", w.type)

cs = tq.cone_system(k4)
refs = tq.reference_thetas(cs)
print(len(cs), "chambers")
for c, ref, trees in zip(cs.chambers, refs, cs.tree_cone_index):
    print(f"  reference {ref}  rays {c.rays}  trees {len(trees)}")

print("same chamber:", tq.same_chamber((-3, 2, -1, 2), (-2, 1, -2, 3), k4))
try:
    tq.same_chamber((2, -1, 1, -2), (3, -1, -1, -1), k4)
except tq.errors.Indeterminate as exc:
    print("outside the cone:", exc)
