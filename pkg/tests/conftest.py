"""Shared fixtures: reference molecules and geometry builders."""

import math

import numpy as np
import pytest

from phtop import PointCloud, build_rips, compute_persistence, distance_matrix

# bond lengths of the idealized benzene reference structure (Angstrom)
CC_BOND = 1.39904296
CH_BOND = 1.08233905


def hexagon_points(side, z=0.0):
    """Regular hexagon in the z-plane; circumradius equals the side."""
    ang = np.arange(6) * math.pi / 3
    return np.column_stack([side * np.cos(ang), side * np.sin(ang), np.full(6, z)])


def benzene_points():
    """Idealized benzene: C hexagon with H radially outward, all planar."""
    ang = np.arange(6) * math.pi / 3
    carbons = hexagon_points(CC_BOND)
    rh = CC_BOND + CH_BOND
    hydrogens = np.column_stack([rh * np.cos(ang), rh * np.sin(ang), np.zeros(6)])
    return np.vstack([carbons, hydrogens])


def square_points():
    return np.array([[0.0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]])


def random_rotation(rng):
    """Uniform-ish random proper rotation via QR of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def diagram_of(points, threshold="auto", max_dim=3):
    cloud = points if isinstance(points, PointCloud) else PointCloud(points)
    return compute_persistence(build_rips(distance_matrix(cloud), threshold, max_dim))


def chair_carbons(bond=1.54):
    """Chair cyclohexane carbon ring: alternating-z hexagon with tetrahedral
    bond angles, solved by bisection on the pucker amplitude."""

    def angle_at_carbon(q):
        r = math.sqrt(bond * bond - 4 * q * q)
        pts = _alternating_ring(r, q)
        u = pts[1] - pts[0]
        v = pts[5] - pts[0]
        return math.degrees(
            math.acos(float(np.dot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v)))
        )

    lo, hi = 0.0, bond / 2 * 0.999  # angle decreases as pucker grows
    for _ in range(80):
        mid = (lo + hi) / 2
        if angle_at_carbon(mid) > 109.4712206:
            lo = mid
        else:
            hi = mid
    q = (lo + hi) / 2
    r = math.sqrt(bond * bond - 4 * q * q)
    return _alternating_ring(r, q)


def _alternating_ring(r, q):
    ang = np.arange(6) * math.pi / 3
    z = np.where(np.arange(6) % 2 == 0, q, -q)
    return np.column_stack([r * np.cos(ang), r * np.sin(ang), z])


def boat_carbons(bond=1.54):
    """Boat cyclohexane carbon ring: planar hull C2-C3-C5-C6, prow/stern
    C1 and C4 lifted, tetrahedral angles everywhere; solved numerically."""
    from scipy.optimize import fsolve

    half = bond / 2
    cos_t = math.cos(math.radians(109.4712206))

    def ring(params):
        w, d, h = params
        return np.array(
            [
                [0.0, d, h],  # C1
                [w, half, 0.0],  # C2
                [w, -half, 0.0],  # C3
                [0.0, -d, h],  # C4
                [-w, -half, 0.0],  # C5
                [-w, half, 0.0],  # C6
            ]
        )

    def equations(params):
        pts = ring(params)
        c1, c2, c3 = pts[0], pts[1], pts[2]
        e_bond = np.linalg.norm(c1 - c2) - bond
        u = (c2 - c1) / np.linalg.norm(c2 - c1)
        v = (pts[5] - c1) / np.linalg.norm(pts[5] - c1)
        e_prow = float(np.dot(u, v)) - cos_t  # angle at C1
        u2 = (c1 - c2) / np.linalg.norm(c1 - c2)
        v2 = (c3 - c2) / np.linalg.norm(c3 - c2)
        e_hull = float(np.dot(u2, v2)) - cos_t  # angle at C2
        return [e_bond, e_prow, e_hull]

    sol = fsolve(equations, x0=[1.2, 1.4, 0.6], full_output=False)
    return ring(sol)


@pytest.fixture(scope="session")
def benzene_cloud():
    labels = ["C"] * 6 + ["H"] * 6
    return PointCloud(benzene_points(), labels=labels)


@pytest.fixture(scope="session")
def benzene_diagram(benzene_cloud):
    return diagram_of(benzene_cloud)


@pytest.fixture(scope="session")
def square_cloud():
    return PointCloud(square_points())


@pytest.fixture(scope="session")
def square_diagram(square_cloud):
    return diagram_of(square_cloud)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile (or load from cache) the numba kernels before any timed test."""
    diagram_of(np.random.default_rng(0).random((5, 3)))
    diagram_of(np.random.default_rng(0).random((5, 3)), threshold=0.5)
