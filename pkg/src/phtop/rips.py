"""Vietoris-Rips filtered complex built from a distance matrix.

Simplices up to dimension 3 enter the filtration at their diameter (the
maximum pairwise distance among their vertices). Enumeration is dense at
desk scale; the clique loops prune on the threshold so sub-maximal
thresholds stay cheap for larger clouds.
"""

from math import comb
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import InvalidInput

AUTO = "auto"

# vertex indices are packed into int64 keys, 10 bits each
_KEY_BASE = 1024
_MAX_POINTS = _KEY_BASE - 1


class Simplex(NamedTuple):
    """A simplex given by its sorted vertex indices and filtration value."""

    vertices: tuple
    filtration: float

    @property
    def dimension(self):
        return len(self.vertices) - 1


class _SimplexView:
    """Read-only sequence materializing Simplex records on access."""

    def __init__(self, fc):
        self._fc = fc

    def __len__(self):
        return self._fc.verts.shape[0]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        fc = self._fc
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        d = int(fc.dims[i])
        return Simplex(tuple(int(v) for v in fc.verts[i, : d + 1]), float(fc.filts[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]


def _pack_keys(vmat):
    key = np.zeros(vmat.shape[0], dtype=np.int64)
    for c in range(vmat.shape[1]):
        key = key * _KEY_BASE + vmat[:, c]
    return key


class _FaceIndex:
    """Maps sorted vertex tuples to positions in the filtration order.

    For a dense complex (threshold covers every pair) a tuple's position in
    enumeration order is its combinatorial rank, computed arithmetically;
    pruned complexes fall back to binary search over packed vertex keys.
    The enumeration order of the clique loops is lexicographic, which is
    what makes both routes valid.
    """

    def __init__(self, n, rank_of_pre, offsets, dense, pre_keys=None):
        self.n = n
        self.rank_of_pre = rank_of_pre
        self.offsets = offsets  # concatenation offsets per dimension
        self.dense = dense
        self.pre_keys = pre_keys
        if dense:
            # prefix sums for lexicographic ranking of 2- and 3-subsets
            back = np.arange(n, 0, -1, dtype=np.int64) - 1  # n-1-a for a = 0..n-1
            self._a1 = np.concatenate(([0], np.cumsum(back)))
            self._a2 = np.concatenate(([0], np.cumsum(back * (back - 1) // 2)))

    def _lexrank(self, vmat):
        d = vmat.shape[1] - 1
        if d == 0:
            return vmat[:, 0]
        if d == 1:
            i, j = vmat[:, 0], vmat[:, 1]
            return self._a1[i] + (j - i - 1)
        i, j, k = vmat[:, 0], vmat[:, 1], vmat[:, 2]
        return self._a2[i] + (self._a1[j] - self._a1[i + 1]) + (k - j - 1)

    def lookup(self, d, vmat):
        """Global ids of the dim-d simplices with the given vertex rows."""
        vmat = vmat.astype(np.int64, copy=False)
        if self.dense:
            pre = self.offsets[d] + self._lexrank(vmat)
        elif d == 0:
            pre = vmat[:, 0]
        else:
            pos = np.searchsorted(self.pre_keys[d], _pack_keys(vmat))
            pre = self.offsets[d] + pos
        return self.rank_of_pre[pre]


class FilteredComplex:
    """Simplices in filtration order.

    The total order is (filtration, dimension, lexicographic vertices), so
    every prefix is a simplicial complex and reduction downstream is
    deterministic. Backing storage is columnar (``verts``, ``filts``,
    ``dims``); ``simplices`` is a lazy per-record view.
    """

    def __init__(self, verts, filts, dims, threshold, max_dimension, faces=None):
        self.verts = verts
        self.filts = filts
        self.dims = dims
        self.threshold = float(threshold)
        self.max_dimension = int(max_dimension)
        self.simplices = _SimplexView(self)
        self._faces = faces if faces is not None else self._generic_faces()

    def _generic_faces(self):
        # reconstruct a lookup for complexes not produced by build_rips
        m = len(self)
        if m == 0:
            return _FaceIndex(0, np.empty(0, np.int32), np.zeros(5, np.int64), False, {})
        n = int(self.verts[:, 0].max()) + 1
        order = []
        offsets = np.zeros(5, dtype=np.int64)
        pre_keys = {}
        for d in range(4):
            idx = np.where(self.dims == d)[0]
            offsets[d + 1] = offsets[d] + idx.size
            if idx.size == 0:
                pre_keys[d] = np.empty(0, dtype=np.int64)
                continue
            keys = _pack_keys(self.verts[idx, : d + 1].astype(np.int64))
            ksort = np.argsort(keys)
            pre_keys[d] = keys[ksort]
            order.append(idx[ksort])
        rank_of_pre = np.concatenate(order).astype(np.int32)
        return _FaceIndex(n, rank_of_pre, offsets, False, pre_keys)

    def __len__(self):
        return self.verts.shape[0]

    @property
    def n_points(self):
        return int(np.count_nonzero(self.dims == 0))

    def count(self, dim):
        """Number of simplices of the given dimension."""
        return int(np.count_nonzero(self.dims == dim))

    def __repr__(self):
        parts = ", ".join(f"{self.count(d)} dim-{d}" for d in range(self.max_dimension + 1))
        return f"FilteredComplex({parts}, threshold={self.threshold:g})"


@njit(cache=True, nogil=True)
def _count_cliques(dm, thr, max_dim):
    n = dm.shape[0]
    ne = 0
    nt = 0
    nq = 0
    for i in range(n):
        for j in range(i + 1, n):
            if dm[i, j] > thr:
                continue
            ne += 1
            if max_dim < 2:
                continue
            for k in range(j + 1, n):
                if dm[i, k] > thr or dm[j, k] > thr:
                    continue
                nt += 1
                if max_dim < 3:
                    continue
                for l in range(k + 1, n):
                    if dm[i, l] <= thr and dm[j, l] <= thr and dm[k, l] <= thr:
                        nq += 1
    return ne, nt, nq


@njit(cache=True, nogil=True)
def _fill_cliques(dm, thr, max_dim, ev, ef, tv, tf, qv, qf):
    n = dm.shape[0]
    ie = 0
    it = 0
    iq = 0
    for i in range(n):
        for j in range(i + 1, n):
            dij = dm[i, j]
            if dij > thr:
                continue
            ev[ie, 0] = i
            ev[ie, 1] = j
            ef[ie] = dij
            ie += 1
            if max_dim < 2:
                continue
            for k in range(j + 1, n):
                dik = dm[i, k]
                djk = dm[j, k]
                if dik > thr or djk > thr:
                    continue
                dt = max(dij, dik, djk)
                tv[it, 0] = i
                tv[it, 1] = j
                tv[it, 2] = k
                tf[it] = dt
                it += 1
                if max_dim < 3:
                    continue
                for l in range(k + 1, n):
                    dil = dm[i, l]
                    djl = dm[j, l]
                    dkl = dm[k, l]
                    if dil <= thr and djl <= thr and dkl <= thr:
                        qv[iq, 0] = i
                        qv[iq, 1] = j
                        qv[iq, 2] = k
                        qv[iq, 3] = l
                        qf[iq] = max(dt, dil, djl, dkl)
                        iq += 1


def _resolve_threshold(dm, threshold):
    if threshold is None or (isinstance(threshold, str) and threshold.lower() == AUTO):
        return dm.max_distance()
    thr = float(threshold)
    if not np.isfinite(thr) or thr < 0:
        raise InvalidInput(f"threshold must be nonnegative and finite, got {threshold!r}")
    return thr


def build_rips(dm, threshold=AUTO, max_dim=3):
    """Enumerate the Vietoris-Rips filtration of a distance matrix.

    Every subset of at most ``max_dim + 1`` points whose diameter is within
    ``threshold`` becomes a simplex with filtration equal to that diameter.
    ``threshold=AUTO`` resolves to the largest pairwise distance, so the
    filtration ends in a single contractible blob.
    """
    if max_dim not in (0, 1, 2, 3):
        raise InvalidInput(f"max_dim must be in 0..3, got {max_dim}")
    n = dm.n
    if n > _MAX_POINTS:
        raise InvalidInput(f"at most {_MAX_POINTS} points supported, got {n}")
    thr = _resolve_threshold(dm, threshold)
    entries = dm.entries
    dense = thr >= dm.max_distance()

    if max_dim == 0:
        ne = nt = nq = 0
    elif dense:
        # every subset qualifies, so sizes are known without a counting pass
        ne = comb(n, 2)
        nt = comb(n, 3) if max_dim >= 2 else 0
        nq = comb(n, 4) if max_dim >= 3 else 0
    else:
        ne, nt, nq = _count_cliques(entries, thr, max_dim)
    ev = np.empty((ne, 2), dtype=np.int32)
    ef = np.empty(ne, dtype=np.float64)
    tv = np.empty((nt, 3), dtype=np.int32)
    tf = np.empty(nt, dtype=np.float64)
    qv = np.empty((nq, 4), dtype=np.int32)
    qf = np.empty(nq, dtype=np.float64)
    if max_dim >= 1:
        _fill_cliques(entries, thr, max_dim, ev, ef, tv, tf, qv, qf)

    m = n + ne + nt + nq
    verts = np.full((m, 4), -1, dtype=np.int32)
    filts = np.empty(m, dtype=np.float64)
    dims = np.empty(m, dtype=np.int8)

    verts[:n, 0] = np.arange(n, dtype=np.int32)
    filts[:n] = 0.0
    dims[:n] = 0
    pos = n
    for arr, f, d in ((ev, ef, 1), (tv, tf, 2), (qv, qf, 3)):
        k = arr.shape[0]
        verts[pos : pos + k, : d + 1] = arr
        filts[pos : pos + k] = f
        dims[pos : pos + k] = d
        pos += k

    # stable sort on filtration alone: the concatenation is dimension-major
    # and lexicographic within each dimension, so ties keep exactly the
    # (dimension, lexicographic) order the contract asks for
    order = np.argsort(filts, kind="stable")
    rank_of_pre = np.empty(m, dtype=np.int32)
    rank_of_pre[order] = np.arange(m, dtype=np.int32)

    offsets = np.array([0, n, n + ne, n + ne + nt, m], dtype=np.int64)
    if dense:
        faces = _FaceIndex(n, rank_of_pre, offsets, True)
    else:
        pre_keys = {
            0: np.arange(n, dtype=np.int64),
            1: _pack_keys(ev.astype(np.int64)),
            2: _pack_keys(tv.astype(np.int64)),
            3: _pack_keys(qv.astype(np.int64)),
        }
        faces = _FaceIndex(n, rank_of_pre, offsets, False, pre_keys)

    return FilteredComplex(verts[order], filts[order], dims[order], thr, max_dim, faces)


def complex_at(fc, t):
    """The subcomplex at scale ``t``: all simplices with filtration <= t.

    Returns the prefix of the filtration as a list of Simplex records;
    the result is face-closed because the backing order is.
    """
    stop = prefix_size(fc, t)
    return [fc.simplices[i] for i in range(stop)]


def prefix_size(fc, t):
    """Number of simplices with filtration <= t (the prefix length)."""
    return int(np.searchsorted(fc.filts, t, side="right"))
