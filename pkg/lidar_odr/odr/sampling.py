"""Reference-line evaluation: local curves, arclength inversion and sampling."""

import math
from typing import List, Tuple

import numpy as np

from ..types import ArcCurve, CubicRecord, Geometry, LineCurve, OdrDocument, ParamPoly3

# Entries of the arclength-to-parameter lookup table.
TABLE_SIZE = 1001

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def poly3_derivative(curve: ParamPoly3, p: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=np.float64)
    du = curve.bU + p * (2.0 * curve.cU + 3.0 * curve.dU * p)
    dv = curve.bV + p * (2.0 * curve.cV + 3.0 * curve.dV * p)
    return du, dv


def poly3_local(curve: ParamPoly3, p: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=np.float64)
    u = curve.aU + p * (curve.bU + p * (curve.cU + p * curve.dU))
    v = curve.aV + p * (curve.bV + p * (curve.cV + p * curve.dV))
    return u, v


def param_range(geometry: Geometry) -> float:
    """Largest curve parameter: 1 for normalized paramPoly3, the length otherwise."""
    curve = geometry.curve
    if isinstance(curve, ParamPoly3) and curve.p_range == "normalized":
        return 1.0
    return geometry.length


def _speed(curve: ParamPoly3, p: np.ndarray) -> np.ndarray:
    du, dv = poly3_derivative(curve, p)
    return np.hypot(du, dv)


def _gauss_integral(curve: ParamPoly3, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Arclength between parameter pairs by 8-point Gauss-Legendre."""
    lo = np.asarray(lo, dtype=np.float64)[..., None]
    hi = np.asarray(hi, dtype=np.float64)[..., None]
    half = (hi - lo) / 2.0
    nodes = lo + half * (_GL_NODES + 1.0)
    return (half * _GL_WEIGHTS * _speed(curve, nodes)).sum(axis=-1)


def arclength_table(curve: ParamPoly3, p_max: float) -> Tuple[np.ndarray, np.ndarray]:
    """Monotone table of (parameter, cumulative arclength) with TABLE_SIZE entries."""
    p = np.linspace(0.0, p_max, TABLE_SIZE)
    pieces = _gauss_integral(curve, p[:-1], p[1:])
    return p, np.concatenate([[0.0], np.cumsum(pieces)])


def param_at(curve: ParamPoly3, p_max: float, ds: np.ndarray) -> np.ndarray:
    """
    Curve parameter at arclength ds from the geometry start.

    Linear interpolation in the lookup table gives the first guess; one
    Newton step on the exact arclength refines it.
    """
    ds = np.asarray(ds, dtype=np.float64)
    p_tab, s_tab = arclength_table(curve, p_max)
    p0 = np.interp(ds, s_tab, p_tab)
    k = np.clip(np.searchsorted(p_tab, p0, side="right") - 1, 0, len(p_tab) - 2)
    s0 = s_tab[k] + _gauss_integral(curve, p_tab[k], p0)
    speed = _speed(curve, p0)
    safe = np.where(speed > 1e-12, speed, 1.0)
    p1 = np.where(speed > 1e-12, p0 - (s0 - ds) / safe, p0)
    return np.clip(p1, 0.0, p_max)


def local_at(geometry: Geometry, ds: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Local (u, v, heading offset) at arclength ds along one geometry."""
    ds = np.asarray(ds, dtype=np.float64)
    curve = geometry.curve
    if isinstance(curve, LineCurve):
        return ds, np.zeros_like(ds), np.zeros_like(ds)
    if isinstance(curve, ArcCurve):
        k = curve.curvature
        if abs(k) < 1e-15:
            return ds, np.zeros_like(ds), np.zeros_like(ds)
        return np.sin(k * ds) / k, (1.0 - np.cos(k * ds)) / k, k * ds
    p = param_at(curve, param_range(geometry), ds)
    u, v = poly3_local(curve, p)
    du, dv = poly3_derivative(curve, p)
    return u, v, np.arctan2(dv, du)


def to_inertial(geometry: Geometry, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    c, s = math.cos(geometry.hdg), math.sin(geometry.hdg)
    return np.column_stack([geometry.x + u * c - v * s, geometry.y + u * s + v * c])


def evaluate_geometry(geometry: Geometry, ds: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Inertial xy and heading at arclengths ds along one geometry."""
    u, v, dh = local_at(geometry, ds)
    return to_inertial(geometry, u, v), geometry.hdg + dh


def heading_at(geometry: Geometry, p: float) -> float:
    """Inertial heading at curve parameter p (arclength for line and arc)."""
    curve = geometry.curve
    if isinstance(curve, LineCurve):
        return geometry.hdg
    if isinstance(curve, ArcCurve):
        return geometry.hdg + curve.curvature * p
    du, dv = poly3_derivative(curve, np.asarray(p))
    return geometry.hdg + math.atan2(float(dv), float(du))


def end_pose(geometry: Geometry) -> Tuple[float, float, float]:
    """(x, y, heading) at the end of a geometry."""
    curve = geometry.curve
    if isinstance(curve, ParamPoly3):
        p_end = param_range(geometry)
        u, v = poly3_local(curve, np.asarray([p_end]))
    else:
        u, v, _ = local_at(geometry, np.asarray([geometry.length]))
        p_end = geometry.length
    xy = to_inertial(geometry, u, v)[0]
    return float(xy[0]), float(xy[1]), heading_at(geometry, p_end)


def poly3_length(curve: ParamPoly3, p_max: float = 1.0) -> float:
    return float(arclength_table(curve, p_max)[1][-1])


def evaluate_records(records: List[CubicRecord], s: np.ndarray) -> np.ndarray:
    """Piecewise cubic records at s; zero when there are none."""
    s = np.asarray(s, dtype=np.float64)
    if not records:
        return np.zeros_like(s)
    starts = np.array([r.s for r in records])
    idx = np.clip(np.searchsorted(starts, s, side="right") - 1, 0, len(records) - 1)
    out = np.empty_like(s)
    for i, record in enumerate(records):
        mask = idx == i
        if mask.any():
            ds = s[mask] - record.s
            out[mask] = record.a + ds * (record.b + ds * (record.c + ds * record.d))
    return out


def station_grid(length: float, step: float) -> np.ndarray:
    """0, step, 2 step, ... with the road length always included."""
    count = int(math.floor(length / step + 1e-9))
    s = step * np.arange(count + 1, dtype=np.float64)
    if length - s[-1] > 1e-9:
        s = np.append(s, length)
    return s


def sample_at(doc: OdrDocument, s: np.ndarray) -> np.ndarray:
    """(N, 3) reference-line points at stations s; z from the elevation profile."""
    s = np.asarray(s, dtype=np.float64)
    xy = np.empty((len(s), 2))
    starts = np.array([g.s for g in doc.plan_view])
    idx = np.clip(np.searchsorted(starts, s, side="right") - 1, 0, len(doc.plan_view) - 1)
    for i, geometry in enumerate(doc.plan_view):
        mask = idx == i
        if mask.any():
            ds = np.clip(s[mask] - geometry.s, 0.0, geometry.length)
            xy[mask] = evaluate_geometry(geometry, ds)[0]
    return np.column_stack([xy, evaluate_records(doc.elevation, s)])


def sample_reference_line(doc: OdrDocument, step: float) -> np.ndarray:
    """
    Uniformly spaced reference-line points.

    Args:
        doc: Document with at least one geometry
        step: Station spacing in meters

    Returns:
        (N, 3) points at s = 0, step, ..., L
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if not doc.plan_view:
        return np.zeros((0, 3))
    return sample_at(doc, station_grid(doc.length, step))
