"""Bottleneck and p-Wasserstein distances between persistence diagrams.

Both metrics use the l-infinity ground cost on (birth, death) pairs and
allow unmatched points to pair with their diagonal projection at cost
(death - birth) / 2, the standard convention for diagram comparison.
Diagrams are compared one homology dimension at a time.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InvalidInput


def _dim_points(diag, dim):
    b, d = diag.points_of(dim)
    return np.column_stack([b, d]) if b.size else np.empty((0, 2))


def _cross_costs(pa, pb):
    """l-infinity distances between all point pairs, (n, m)."""
    if pa.shape[0] == 0 or pb.shape[0] == 0:
        return np.empty((pa.shape[0], pb.shape[0]))
    return np.abs(pa[:, None, :] - pb[None, :, :]).max(axis=2)


def _diag_costs(p):
    return (p[:, 1] - p[:, 0]) / 2.0


def _perfect_matching_exists(adj):
    """Kuhn's augmenting-path test for a perfect matching in a square
    boolean bipartite adjacency matrix."""
    n = adj.shape[0]
    match_of_v = np.full(n, -1, dtype=np.int64)

    def try_augment(u, seen):
        for v in range(n):
            if adj[u, v] and not seen[v]:
                seen[v] = True
                if match_of_v[v] < 0 or try_augment(match_of_v[v], seen):
                    match_of_v[v] = u
                    return True
        return False

    for u in range(n):
        if not try_augment(u, np.zeros(n, dtype=bool)):
            return False
    return True


def _feasible(cross, da, db, c):
    """Can every point be matched (to a point or the diagonal) at cost <= c?

    Left vertices are a's points plus one diagonal slot per b point; right
    vertices are b's points plus one diagonal slot per a point. Diagonal
    slots pair with each other for free.
    """
    n, m = cross.shape
    size = n + m
    adj = np.zeros((size, size), dtype=bool)
    adj[:n, :m] = cross <= c
    for i in range(n):
        adj[i, m + i] = da[i] <= c
    for j in range(m):
        adj[n + j, j] = db[j] <= c
    adj[n:, m:] = True
    return _perfect_matching_exists(adj)


def bottleneck_distance(a, b, dim=0):
    """Smallest achievable maximum matching cost between two diagrams.

    Exact: binary search over the finite set of candidate costs (all
    cross-pair distances and diagonal projection costs), testing each by
    bipartite matching feasibility.
    """
    pa = _dim_points(a, dim)
    pb = _dim_points(b, dim)
    if pa.shape[0] == 0 and pb.shape[0] == 0:
        return 0.0
    da = _diag_costs(pa)
    db = _diag_costs(pb)
    cross = _cross_costs(pa, pb)
    candidates = np.unique(np.concatenate([[0.0], cross.ravel(), da, db]))
    lo, hi = 0, candidates.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(cross, da, db, candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def wasserstein_distance(a, b, dim=0, order=2.0):
    """Minimum of (sum of matching costs^p)^(1/p) over partial matchings.

    Solved exactly as a square assignment problem with per-point diagonal
    slots (Hungarian method). Arguments are put in a canonical order first
    so the result is bitwise symmetric.
    """
    p = float(order)
    if not p >= 1:
        raise InvalidInput(f"order must be >= 1, got {order!r}")
    pa = _dim_points(a, dim)
    pb = _dim_points(b, dim)
    if (pb.shape[0], pb.tolist()) < (pa.shape[0], pa.tolist()):
        pa, pb = pb, pa
    n, m = pa.shape[0], pb.shape[0]
    if n == 0 and m == 0:
        return 0.0
    size = n + m
    cost = np.zeros((size, size))
    cost[:n, :m] = _cross_costs(pa, pb) ** p
    cost[:n, m:] = (_diag_costs(pa) ** p)[:, None]
    cost[n:, :m] = (_diag_costs(pb) ** p)[None, :]
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum() ** (1.0 / p))
