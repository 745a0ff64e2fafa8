"""Rearrangement distance: permutations and link-and-cut moves combined.

Any sequence of operations can be reordered into *canonical form*, a
single permutation followed by link-and-cut moves only, without changing
its effect or its size.  The distance is therefore

    min over permutations pi of  |pi| + linkcut_distance(pi(t1), t2)

which drives both the exact oracle (guarded exhaustive search over
permutations, smallest support first) and the budgeted search
(``fpt_distance``): the latter prunes immediately when half the family
partition size already exceeds the budget and then only draws
permutation supports from a small candidate label set.

Searches never build intermediate trees: applying a permutation only
changes parent relations in the neighbourhood of its support, so each
candidate is scored by rescanning that neighbourhood alone.
"""

from __future__ import annotations

import itertools
import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .linkcut import LabelSetMismatchError, family_partition, linkcut_script
from .ops import (
    LinkCutOp,
    OperationSequence,
    Permutation,
    apply_permutation,
    replay_sequence,
)
from .tree import TreeError

__all__ = [
    "RearrangementResult",
    "BudgetExceeded",
    "OracleSizeError",
    "sequence_size",
    "canonicalize_sequence",
    "verify_sequence",
    "brute_force_distance",
    "fpt_distance",
    "approx_binary",
    "partition_perturbation",
]

logger = logging.getLogger(__name__)

_INF = float("inf")


class OracleSizeError(TreeError):
    """Instance exceeds the guard of an exhaustive computation."""


@dataclass(frozen=True)
class RearrangementResult:
    """A distance value with its replayable witness.

    ``witness`` is in canonical form: one permutation (possibly empty)
    followed by link-and-cut moves.  ``method`` is ``"oracle"``,
    ``"fpt"`` or ``"approx"``.
    """

    distance: int
    witness: OperationSequence
    method: str


@dataclass(frozen=True)
class BudgetExceeded:
    """Outcome of a budgeted search that proved distance > budget.

    ``best_found`` is the smallest value seen within the searched space,
    or ``None`` when the partition guard rejected the instance outright.
    """

    budget: int
    lower_bound: int
    best_found: int | None = None


def canonicalize_sequence(seq):
    """Reorder a sequence so one composed permutation leads all moves.

    A move followed by a permutation has the same effect as the
    permutation followed by the relabelled move, so permutations commute
    leftwards freely; all of them compose into a single one.  The result
    replays to the same final tree and has the same size.
    """
    sigma = Permutation()
    moves = []
    for op in seq:
        if isinstance(op, LinkCutOp):
            moves.append(op)
        else:
            moves = [m.relabelled(op) for m in moves]
            sigma = sigma.then(op)
    return OperationSequence((sigma, *moves))


def sequence_size(seq):
    """Size of a sequence: composed-permutation size plus move count."""
    canonical = canonicalize_sequence(seq)
    return canonical.ops[0].size + len(canonical) - 1


def verify_sequence(t1, seq, t2):
    """True iff replaying ``seq`` from ``t1`` yields a tree congruent to ``t2``.

    Invalid operations during replay make the answer False; the reason is
    logged at INFO level rather than raised.
    """
    try:
        final = replay_sequence(t1, seq)
    except TreeError as exc:
        logger.info("sequence replay failed: %s", exc)
        return False
    if final != t2:
        logger.info("sequence replays to a different tree")
        return False
    return True


def partition_perturbation(t1, t2, pi):
    """Family partition sizes before and after permuting ``t1`` by ``pi``.

    Applying a permutation of size s can add or remove at most 2*s
    classes, so the two values always differ by at most ``2 * pi.size``.
    """
    before = len(family_partition(t1, t2))
    after = len(family_partition(apply_permutation(t1, pi), t2))
    return before, after


class _PairSearch:
    """Scores candidate permutations against a fixed tree pair.

    Activity (parent disagreement) is counted once for the unpermuted
    pair; a candidate permutation only perturbs the activity of its
    support and of the support's children in the first tree, so scoring
    is linear in that neighbourhood instead of the whole tree.
    """

    def __init__(self, t1, t2):
        self.p1 = t1.parent_map()
        self.p2 = t2.parent_map()
        self.c1 = {v: t1.children(v) for v in t1.labels}
        self.r1 = t1.root_child
        self.r2 = t2.root_child
        p2 = self.p2
        self.base_active = sum(1 for v, p in self.p1.items() if p != p2[v])

    def partition_size(self):
        """Number of distinct (parent-in-t1, parent-in-t2) disagreement pairs.

        The implicit root counts as a parent here, so the size is defined
        even when the two trees disagree on the top vertex.
        """
        p2 = self.p2
        return len({(p, p2[v]) for v, p in self.p1.items() if p != p2[v]})

    def candidate_labels(self, kind):
        p2 = self.p2
        verts = set()
        moved = set()
        for v, p in self.p1.items():
            q = p2[v]
            if p != q:
                moved.add(v)
                if p is not None:
                    verts.add(p)
                if q is not None:
                    verts.add(q)
        if self.r1 != self.r2:
            # only a permutation can rename the top vertex
            verts.add(self.r1)
            verts.add(self.r2)
        if kind == "vg":
            return sorted(verts)
        if kind == "x":
            return sorted(verts | moved)
        if kind == "all":
            return sorted(self.p1)
        raise ValueError(f"unknown candidate set {kind!r} (want vg, x or all)")

    def subset_profile(self, support):
        """Neighbourhood of a support and its activity in the base pair."""
        affected = set(support)
        c1 = self.c1
        for s in support:
            affected.update(c1[s])
        aff = tuple(affected)
        p1, p2 = self.p1, self.p2
        base_bad = sum(1 for x in aff if p1[x] != p2[x])
        return aff, base_bad

    def score(self, support, images, aff, base_bad):
        """|support| + moves needed after applying the permutation.

        Returns None when the permutation leaves the top vertices
        disagreeing (no move sequence can repair that).
        """
        sigma = dict(zip(support, images))
        get = sigma.get
        if get(self.r1, self.r1) != self.r2:
            return None
        p1, p2 = self.p1, self.p2
        bad = 0
        for x in aff:
            p = p1[x]
            if p is not None:
                p = get(p, p)
            if p != p2[get(x, x)]:
                bad += 1
        return len(support) + self.base_active - base_bad + bad


def _derangement_patterns(size):
    """Index tuples of all fixed-point-free permutations of ``size`` items."""
    return [
        p
        for p in itertools.permutations(range(size))
        if all(p[i] != i for i in range(size))
    ]


def _scan_subsets(ctx, subsets, patterns, cap=_INF):
    """Best (score, order index, mapping) over a block of supports.

    ``cap`` lets callers skip whole supports that cannot beat an already
    known value: even a permutation repairing every touched label still
    pays the support size plus the untouched activity.
    """
    best = (_INF, -1, None)
    r1, r2 = ctx.r1, ctx.r2
    roots_agree = r1 == r2
    for index, support in subsets:
        if roots_agree:
            # a derangement of the top label always breaks the root match
            if r1 in support:
                continue
        elif r1 not in support or r2 not in support:
            continue
        aff, base_bad = ctx.subset_profile(support)
        floor = len(support) + ctx.base_active - base_bad
        if floor >= best[0] or floor >= cap:
            continue
        for pattern in patterns:
            images = tuple(support[j] for j in pattern)
            value = ctx.score(support, images, aff, base_bad)
            if value is not None and value < best[0]:
                best = (value, index, dict(zip(support, images)))
    return best


def _search_best(ctx, candidates, max_support, threads=1):
    """Minimum score over permutations with support inside ``candidates``.

    Supports are enumerated by increasing size, then lexicographically;
    first-found wins among ties.  A size layer is skipped entirely once
    the support size alone cannot beat the best value, which keeps the
    oracle fast on easy instances.  With ``threads > 1`` each size layer
    is split into blocks evaluated concurrently; the winner is selected
    by (value, enumeration index), so results match the sequential scan.
    """
    best_value = _INF
    best_sigma = None
    identity = ctx.score((), (), (), 0)
    if identity is not None:
        best_value, best_sigma = identity, {}
    cands = sorted(candidates)
    top = min(max_support, len(cands))
    for size in range(2, top + 1):
        if size >= best_value:
            break
        patterns = _derangement_patterns(size)
        numbered = list(enumerate(itertools.combinations(cands, size)))
        if threads > 1 and len(numbered) > 1:
            chunk = max(1, len(numbered) // (threads * 4))
            blocks = [numbered[i : i + chunk] for i in range(0, len(numbered), chunk)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = pool.map(
                    lambda b: _scan_subsets(ctx, b, patterns, cap=best_value), blocks
                )
                layer = min(results, key=lambda r: (r[0], r[1]))
        else:
            layer = _scan_subsets(ctx, numbered, patterns, cap=best_value)
        if layer[0] < best_value:
            best_value, best_sigma = layer[0], layer[2]
    return best_value, best_sigma


def _require_same_labels(t1, t2):
    if t1.labels != t2.labels:
        raise LabelSetMismatchError("trees are labelled by different sets")


def _assemble(t1, t2, sigma, method):
    pi = Permutation(sigma)
    mid = apply_permutation(t1, pi)
    script = linkcut_script(mid, t2)
    witness = OperationSequence((pi, *script.ops))
    return RearrangementResult(pi.size + len(script), witness, method)


def brute_force_distance(t1, t2, max_labels=8):
    """Exact rearrangement distance by exhaustive permutation search.

    Every permutation of the label set is considered (smallest support
    first, so the scan stops as soon as support size alone reaches the
    best value found).  Guarded by ``max_labels``; pass ``None`` to
    disable the guard.
    """
    _require_same_labels(t1, t2)
    n = len(t1)
    if max_labels is not None and n > max_labels:
        raise OracleSizeError(
            f"{n} labels exceed the exhaustive-search guard of {max_labels}"
        )
    ctx = _PairSearch(t1, t2)
    value, sigma = _search_best(ctx, sorted(t1.labels), n)
    result = _assemble(t1, t2, sigma, "oracle")
    assert result.distance == value
    return result


def fpt_distance(t1, t2, k, candidates="all", threads=1):
    """Decide whether the rearrangement distance is at most ``k``.

    Rejects immediately when the family partition has more than ``2 * k``
    classes (each permuted label repairs at most two).  Otherwise searches
    permutations of at most ``k`` labels drawn from the candidate set.

    ``"all"`` (default) considers every label and is therefore exact:
    any sequence of size at most ``k`` uses a permutation of at most
    ``k`` labels.  Past the partition guard the scan costs roughly
    ``O(n^k)`` for a fixed budget.  The narrowed sets are faster but
    can overshoot: an optimal permutation may have to move labels whose
    parents agree in both trees (a 5-vertex instance exists whose only
    optimal solution is a 5-cycle through two such labels), so neither
    narrowing is safe in general.  ``"x"`` restricts supports to active
    labels plus movements-graph vertices; ``"vg"`` to movements-graph
    vertices alone, the only choice whose size the budget bounds.

    Returns a :class:`RearrangementResult` when a sequence of size at most
    ``k`` exists, else a :class:`BudgetExceeded` report.
    """
    _require_same_labels(t1, t2)
    if k < 0:
        raise ValueError("budget k must be non-negative")
    ctx = _PairSearch(t1, t2)
    psize = ctx.partition_size()
    lower = (psize + 1) // 2
    if psize > 2 * k:
        return BudgetExceeded(budget=k, lower_bound=lower)
    value, sigma = _search_best(ctx, ctx.candidate_labels(candidates), k, threads)
    if value <= k:
        return _assemble(t1, t2, sigma, "fpt")
    return BudgetExceeded(
        budget=k,
        lower_bound=lower,
        best_found=None if value == _INF else int(value),
    )


def approx_binary(t1, t2):
    """Link-and-cut-only rearrangement: a 4-approximation for binary t1.

    When the first tree is binary every family-partition class has at
    most two members, which caps the link-and-cut distance at four times
    the optimum.  For non-binary input the value is still returned but a
    warning signals that the factor-4 guarantee does not apply.
    """
    script = linkcut_script(t1, t2)
    if not t1.is_binary():
        warnings.warn(
            "first tree is not binary: the 4x approximation guarantee "
            "does not apply",
            stacklevel=2,
        )
    witness = OperationSequence((Permutation(), *script.ops))
    return RearrangementResult(len(script), witness, "approx")
