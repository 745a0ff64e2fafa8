"""Independent oracles and small utilities shared by the test modules.

Everything here is deliberately naive: breadth-first search over whole
tree space, exhaustive bijection enumeration, recursive isomorphism by
trying all child matchings.  The production code must agree with these
on small instances.
"""

from itertools import permutations

import treemoves as tm

EXAMPLE_T1 = "((d,e,f)b,(g,h)c)a;"
EXAMPLE_T2 = "((b,e)d,(g,f,h)c)a;"


def example_pair():
    return tm.parse_tree(EXAMPLE_T1), tm.parse_tree(EXAMPLE_T2)


def bfs_linkcut_distance(t1, t2):
    """Shortest link-and-cut script length by BFS over all trees."""
    if t1 == t2:
        return 0
    seen = {t1}
    frontier = [t1]
    dist = 0
    while frontier:
        dist += 1
        nxt = []
        for t in frontier:
            labs = sorted(t.labels)
            for v in labs:
                p = t.parent(v)
                if p is None:
                    continue
                for w in labs:
                    if w == v or w == p or t.is_descendant(w, v):
                        continue
                    u = tm.apply_linkcut(t, tm.LinkCutOp(v, p, w))
                    if u == t2:
                        return dist
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
        frontier = nxt
    raise AssertionError("trees not connected by link-and-cut moves")


def exhaustive_permutation_distance(t1, t2):
    """Minimum moved-label count over all bijections achieving congruence."""
    labs = sorted(t1.labels)
    p1 = t1.parent_map()
    p2 = t2.parent_map()
    best = None
    for images in permutations(labs):
        m = dict(zip(labs, images))
        ok = True
        for v in labs:
            par = p1[v]
            mapped = None if par is None else m[par]
            if p2[m[v]] != mapped:
                ok = False
                break
        if ok:
            moved = sum(1 for a, b in m.items() if a != b)
            if best is None or moved < best:
                best = moved
    return best


def naive_rearrangement_distance(t1, t2):
    """min over all label bijections of moved-count + link-and-cut distance."""
    labs = sorted(t1.labels)
    p2 = t2.parent_map()
    best = None
    for images in permutations(labs):
        m = dict(zip(labs, images))
        moved = sum(1 for a, b in m.items() if a != b)
        if best is not None and moved >= best:
            continue
        relabelled = {m[v]: (None if p is None else m[p]) for v, p in t1.parent_map().items()}
        if relabelled[t2.root_child] is not None:
            continue
        extra = sum(1 for v, p in relabelled.items() if p != p2[v])
        total = moved + extra
        if best is None or total < best:
            best = total
    return best


def recursive_isomorphic(t1, u, t2, v):
    """Rooted subtree isomorphism by trying every child bijection."""
    cu = t1.children(u)
    cv = t2.children(v)
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    for images in permutations(cv):
        if all(recursive_isomorphic(t1, x, t2, y) for x, y in zip(cu, images)):
            return True
    return False
