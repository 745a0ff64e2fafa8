"""Walk through the three distance notions on one small tree pair.

Two clone trees over the same eight mutations disagree about where the
b/d lineage sits and where f belongs.  Depending on which operations you
allow, the distance between them differs: moving subtrees only, swapping
labels only, or mixing both.
"""

import treemoves as tm

t1 = tm.parse_tree("((d,e,f)b,(g,h)c)a;")
t2 = tm.parse_tree("((b,e)d,(g,f,h)c)a;")

print("tree 1:", tm.serialize_tree(t1))
print("tree 2:", tm.serialize_tree(t2))
print()

# Moves only: one move per label whose parent changed.
print("link-and-cut distance:", tm.linkcut_distance(t1, t2))
print("  active labels:", ", ".join(sorted(tm.active_set(t1, t2))))
script = tm.linkcut_script(t1, t2)
for op in script:
    print("   ", op)
print("  replay reaches tree 2:", tm.verify_sequence(t1, script, t2))
print()

# Relabelling only: legal here because the trees happen to be isomorphic.
print("permutation distance:", tm.permutation_distance(t1, t2))
pi = tm.optimal_permutation(t1, t2)
print("  one optimal relabelling:", pi)
print("  replay reaches tree 2:", tm.apply_permutation(t1, pi) == t2)
print()

# Both operations: strictly cheaper than either alone on this pair.
result = tm.brute_force_distance(t1, t2)
print("rearrangement distance:", result.distance)
for op in result.witness:
    print("   ", op)
print("  replay reaches tree 2:", tm.verify_sequence(t1, result.witness, t2))
