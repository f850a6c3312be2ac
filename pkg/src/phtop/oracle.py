"""Brute-force Betti numbers at a fixed scale, for validating persistence.

Independent of the reduction pipeline: Betti numbers come from GF(2) ranks
of the boundary operators, beta_k = n_k - rank(d_k) - rank(d_k+1), with
ranks computed by Gaussian elimination on integer bitsets. Only the
complex construction is shared with the main pipeline.
"""

from itertools import combinations

from .errors import TooLarge
from .geometry import distance_matrix
from .rips import build_rips, prefix_size

_MAX_ORACLE_POINTS = 64


def _gf2_rank(columns):
    """Rank of a GF(2) matrix whose columns are int bitmasks."""
    pivots = {}
    rank = 0
    for v in columns:
        while v:
            h = v.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = v
                rank += 1
                break
            v ^= p
    return rank


def betti_at(cloud, t):
    """(beta_0, beta_1, beta_2) of the Rips complex of ``cloud`` at scale t."""
    if len(cloud) > _MAX_ORACLE_POINTS:
        raise TooLarge(
            f"oracle accepts at most {_MAX_ORACLE_POINTS} points, got {len(cloud)}"
        )
    fc = build_rips(distance_matrix(cloud), max_dim=3)
    stop = prefix_size(fc, t)

    index = [{} for _ in range(4)]
    boundary_cols = [[] for _ in range(4)]
    for i in range(stop):
        d = int(fc.dims[i])
        vs = tuple(int(v) for v in fc.verts[i, : d + 1])
        index[d][vs] = len(index[d])
        if d > 0:
            col = 0
            for face in combinations(vs, d):
                col ^= 1 << index[d - 1][face]
            boundary_cols[d].append(col)

    counts = [len(index[d]) for d in range(4)]
    ranks = [0] + [_gf2_rank(boundary_cols[d]) for d in range(1, 4)] + [0]
    return tuple(counts[k] - ranks[k] - ranks[k + 1] for k in (0, 1, 2))
