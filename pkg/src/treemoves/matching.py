"""Minimum-weight perfect matching on dense bipartite graphs.

Successive shortest augmenting paths with vertex potentials, the classic
O(n^3) assignment algorithm.  Rows are inserted one at a time; each
insertion runs a dense Dijkstra over the columns using reduced costs
kept non-negative by the potentials.

Small instances run a plain-Python scan; past ``_NUMPY_THRESHOLD`` rows
the identical algorithm runs on numpy arrays, whose vectorised column
scans keep wide matchings (hundreds of children under one vertex) fast.
Both paths break ties towards lower column indices, so results are
deterministic and independent of the path taken.

Forbidden pairs are encoded as a large finite weight so the potential
arithmetic stays exact; callers must guarantee that a fully allowed
perfect matching exists.
"""

from __future__ import annotations

import numpy as np

__all__ = ["min_cost_perfect_matching", "forbidden_weight"]

_NUMPY_THRESHOLD = 48


def forbidden_weight(cost_rows):
    """A weight strictly larger than any allowed perfect matching."""
    n = len(cost_rows)
    largest = max((c for row in cost_rows for c in row if c is not None), default=0)
    return n * largest + 1


def min_cost_perfect_matching(cost_rows):
    """Match each row to a distinct column minimizing total cost.

    Parameters
    ----------
    cost_rows: list of lists
        Square matrix of non-negative integer costs; ``None`` marks a
        forbidden pair.

    Returns
    -------
    total: int
        Cost of the optimal matching (forbidden pairs excluded).
    match: list
        ``match[i]`` is the column assigned to row ``i``.

    Ties are broken deterministically: rows are inserted in index order
    and the column scan prefers lower indices, so callers that order rows
    and columns lexicographically get a reproducible matching.
    """
    n = len(cost_rows)
    if n == 0:
        return 0, []
    big = forbidden_weight(cost_rows)
    cost = [[big if c is None else c for c in row] for row in cost_rows]
    if n >= _NUMPY_THRESHOLD:
        return _solve_numpy(cost, big)

    # p[j] = row matched to column j; index 0 is a virtual column
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    inf = float("inf")
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = 0
            row = cost[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1

    match = [0] * n
    total = 0
    for j in range(1, n + 1):
        match[p[j] - 1] = j - 1
        total += cost[p[j] - 1][j - 1]
    if total >= big:
        raise ValueError("no perfect matching avoids the forbidden pairs")
    return total, match


def _solve_numpy(cost, big):
    """Same algorithm on numpy arrays; column scans are vectorised."""
    n = len(cost)
    grid = np.asarray(cost, dtype=np.float64)
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.int64)
    way = np.zeros(n + 1, dtype=np.int64)
    minv = np.empty(n + 1)
    used = np.empty(n + 1, dtype=bool)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv[:] = np.inf
        used[:] = False
        while True:
            used[j0] = True
            i0 = p[j0]
            cur = grid[i0 - 1] - u[i0] - v[1:]
            better = ~used[1:] & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            masked = np.where(used[1:], np.inf, minv[1:])
            j1 = int(np.argmin(masked)) + 1
            delta = masked[j1 - 1]
            u[p[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    match = [0] * n
    total = 0.0
    for j in range(1, n + 1):
        match[p[j] - 1] = j - 1
        total += cost[p[j] - 1][j - 1]
    if total >= big:
        raise ValueError("no perfect matching avoids the forbidden pairs")
    return int(total), match
