"""Permutation distance between isomorphic trees.

The distance is the minimum number of labels a single permutation must
move to make the first tree congruent to the second.  It equals the
minimum number of label mismatches over all rooted isomorphisms, which
is computed bottom-up: the cost of pairing two internal vertices is a
minimum-weight perfect matching between their children (restricted to
isomorphic child pairs), plus one if the two vertices' own labels
disagree.  Total cost is O(n^3).

Alongside the cost table the computation records, for every isomorphic
pair, the conserved labels and the optimal child matching, from which an
optimal permutation is recovered.
"""

from __future__ import annotations

import numpy as np

from .linkcut import LabelSetMismatchError
from .matching import min_cost_perfect_matching
from .ops import Permutation
from .tree import TreeError, _table_parts

__all__ = [
    "NotIsomorphicError",
    "mismatch_table",
    "permutation_distance",
    "optimal_permutation",
]

_EMPTY = frozenset()


class NotIsomorphicError(TreeError):
    """Permutation distance is undefined for non-isomorphic trees."""


def _require_same_labels(t1, t2):
    if t1.labels != t2.labels:
        raise LabelSetMismatchError("trees are labelled by different sets")


def mismatch_table(t1, t2):
    """Full isomorphism table: iso flags, mismatch costs, conserved sets.

    ``D[i, j]`` is the least number of mismatched labels over isomorphisms
    of the subtrees below ``t1_labels[i]`` and ``t2_labels[j]`` (``inf``
    where the subtrees are not isomorphic or sit at different depths).
    """
    _require_same_labels(t1, t2)
    b1, b2, code1, code2, table = _table_parts(t1, t2)
    idx1, idx2 = table._index1, table._index2
    n1, n2 = len(table.t1_labels), len(table.t2_labels)
    D = np.full((n1, n2), np.inf)
    C = {}
    matchings = {}
    levels = min(len(b1), len(b2))
    for level in range(levels - 1, -1, -1):
        for u in b1[level]:
            cu = t1.children(u)
            iu = idx1[u]
            ucode = code1[u]
            for v in b2[level]:
                if code2[v] != ucode:
                    continue
                iv = idx2[v]
                delta = 0 if u == v else 1
                if not cu:
                    D[iu, iv] = delta
                    C[(u, v)] = frozenset((u,)) if u == v else _EMPTY
                    continue
                cv = t2.children(v)
                cost = [
                    [
                        int(D[idx1[x], idx2[y]]) if code1[x] == code2[y] else None
                        for y in cv
                    ]
                    for x in cu
                ]
                total, match = min_cost_perfect_matching(cost)
                D[iu, iv] = total + delta
                pairs = tuple((x, cv[match[i]]) for i, x in enumerate(cu))
                matchings[(u, v)] = pairs
                conserved = set() if delta else {u}
                for x, y in pairs:
                    conserved |= C[(x, y)]
                C[(u, v)] = frozenset(conserved)
    table.D = D
    table.C = C
    table.matchings = matchings
    return table


def permutation_distance(t1, t2):
    """Size of the smallest permutation transforming t1 into t2."""
    table = mismatch_table(t1, t2)
    r1, r2 = t1.root_child, t2.root_child
    if not table.is_isomorphic(r1, r2):
        raise NotIsomorphicError("trees are not isomorphic as rooted trees")
    return int(table.mismatch_cost(r1, r2))


def optimal_permutation(t1, t2, table=None):
    """A permutation of minimum size whose application makes t1 congruent to t2.

    Walks one optimal isomorphism down from the roots through the stored
    child matchings; each vertex's label is sent to the label of its
    image.  Pass a precomputed ``table`` to avoid recomputing it.
    """
    if table is None:
        table = mismatch_table(t1, t2)
    elif table.matchings is None:
        raise ValueError("table lacks cost layers; build it with mismatch_table")
    r1, r2 = t1.root_child, t2.root_child
    if not table.is_isomorphic(r1, r2):
        raise NotIsomorphicError("trees are not isomorphic as rooted trees")
    mapping = {}
    stack = [(r1, r2)]
    while stack:
        u, v = stack.pop()
        if u != v:
            mapping[u] = v
        pairs = table.matchings.get((u, v))
        if pairs:
            stack.extend(pairs)
    return Permutation(mapping)
