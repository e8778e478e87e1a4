"""Small vector-geometry helpers shared by the pipeline stages."""

from typing import Optional

import numpy as np
from scipy.spatial import cKDTree


def rotation_z(yaw: float) -> np.ndarray:
    """3x3 rotation about +Z by yaw radians."""
    c, s = np.cos(yaw), np.sin(yaw)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotate_2d(xy: np.ndarray, angle: float) -> np.ndarray:
    """Rotate (N, 2) points counter-clockwise by angle."""
    c, s = np.cos(angle), np.sin(angle)
    return xy @ np.array([[c, s], [-s, c]])


def cumulative_chord(points: np.ndarray) -> np.ndarray:
    """Cumulative chord length along an ordered polyline, starting at 0."""
    if len(points) == 0:
        return np.zeros(0)
    steps = np.linalg.norm(np.diff(points, axis=0), axis=1)
    return np.concatenate([[0.0], np.cumsum(steps)])


def principal_direction(points: np.ndarray) -> np.ndarray:
    """Unit direction of largest variance through the centroid (sign arbitrary)."""
    centered = points - points.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    return vt[0] / np.linalg.norm(vt[0])


def point_segment_distance(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean distance from each point to the closed segment a-b."""
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.linalg.norm(points - a, axis=1)
    t = np.clip((points - a) @ ab / denom, 0.0, 1.0)
    closest = a + t[:, None] * ab
    return np.linalg.norm(points - closest, axis=1)


def left_normal(direction_xy: np.ndarray) -> np.ndarray:
    """Left-hand unit normals (-dy, dx) of (N, 2) directions."""
    d = np.atleast_2d(direction_xy)
    n = np.stack([-d[:, 1], d[:, 0]], axis=1)
    norms = np.linalg.norm(n, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return n / norms


def greedy_chain_order(points: np.ndarray, origin: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Order points by greedy nearest-neighbor chaining.

    The chain starts at the point closest to the origin (lowest index on ties)
    and repeatedly appends the nearest unvisited point.

    Args:
        points: (N, D) points
        origin: Chain anchor, defaults to the coordinate origin

    Returns:
        Index array giving the visiting order
    """
    n = len(points)
    if n <= 1:
        return np.arange(n)
    anchor = np.zeros(points.shape[1]) if origin is None else np.asarray(origin)
    start = int(np.argmin(np.linalg.norm(points - anchor, axis=1)))

    tree = cKDTree(points)
    visited = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    order[0] = start
    visited[start] = True
    current = start
    for pos in range(1, n):
        k = 8
        while True:
            kk = min(k, n)
            _, idx = tree.query(points[current], k=kk)
            idx = np.atleast_1d(idx)
            free = idx[~visited[idx]]
            if free.size:
                current = int(free[0])
                break
            k *= 4
        order[pos] = current
        visited[current] = True
    return order


def points_to_polyline_distance(points: np.ndarray, polyline: np.ndarray) -> np.ndarray:
    """
    Distance from each point to the nearest segment of an ordered polyline.

    A single-vertex polyline degenerates to point distance.

    Args:
        points: (P, D) query points
        polyline: (S + 1, D) vertices

    Returns:
        (P,) minimum distances
    """
    points = np.atleast_2d(points)
    polyline = np.atleast_2d(polyline)
    if len(polyline) == 1:
        return np.linalg.norm(points - polyline[0], axis=1)
    a = polyline[:-1][None, :, :]
    ab = np.diff(polyline, axis=0)[None, :, :]
    rel = points[:, None, :] - a
    denom = np.einsum("ijk,ijk->ij", ab, ab)
    safe = np.where(denom > 0, denom, 1.0)
    t = np.clip(np.einsum("ijk,ijk->ij", rel, ab) / safe, 0.0, 1.0)
    t = np.where(denom > 0, t, 0.0)
    closest = rel - t[..., None] * ab
    return np.linalg.norm(closest, axis=2).min(axis=1)


def wrap_angle(angle: np.ndarray) -> np.ndarray:
    """Wrap angles into [-pi, pi)."""
    return (np.asarray(angle) + np.pi) % (2.0 * np.pi) - np.pi
