"""Segmentation and weighted paramPoly3 fitting of the reference polyline."""

import math
from typing import List, Optional, Tuple

import numpy as np
from scipy import integrate

from ..core.errors import ExportError
from ..types import ExportConfig, ParamPoly3, Segment
from ..utils.geometry import cumulative_chord, principal_direction, rotate_2d

MIN_POLYLINE_LENGTH = 1.0


def split_by_dist(polyline: np.ndarray, cfg: ExportConfig) -> List[Segment]:
    """
    Cut a chain-sorted polyline into segments of segment_length chord length.

    Neighboring segments share their boundary vertex. A final remainder shorter
    than half a segment is merged into its predecessor. Each segment borrows
    the vertices within lookahead_distance before its start and after its end.

    Raises:
        ExportError: Polyline shorter than 1 m
    """
    polyline = np.asarray(polyline, dtype=np.float64).reshape(-1, 3)
    chord = cumulative_chord(polyline[:, :2])
    total = float(chord[-1]) if len(chord) else 0.0
    if total < MIN_POLYLINE_LENGTH:
        raise ExportError(f"reference polyline is only {total:.3f} m long")

    count = max(1, int(math.floor(total / cfg.segment_length)))
    if total - count * cfg.segment_length >= cfg.segment_length / 2.0:
        count += 1
    targets = [k * cfg.segment_length for k in range(count)]
    bounds = sorted({int(np.searchsorted(chord, t, side="left")) for t in targets})
    bounds = [b for b in bounds if b < len(polyline) - 1] + [len(polyline) - 1]

    reach = cfg.lookahead_distance
    segments = []
    for k, (lo, hi) in enumerate(zip(bounds[:-1], bounds[1:])):
        before = (chord < chord[lo]) & (chord >= chord[lo] - reach)
        after = (chord > chord[hi]) & (chord <= chord[hi] + reach)
        after[: hi + 1] = False
        before[lo:] = False
        segments.append(
            Segment(
                index=k,
                points=polyline[lo : hi + 1],
                before=polyline[before],
                after=polyline[after],
                chord_start=float(chord[lo]),
                chord_end=float(chord[hi]),
            )
        )
    return segments


def eval_rot(segment: Segment) -> float:
    """Heading of the principal direction of the segment's own points, along the chain."""
    xy = segment.points[:, :2]
    direction = principal_direction(xy)
    if float(direction @ (xy[-1] - xy[0])) < 0:
        direction = -direction
    return math.atan2(direction[1], direction[0])


def segment_parameters(segment: Segment) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Chord-fraction parameters of look-back, own and look-ahead vertices.

    Returns:
        All vertices in chain order, their parameters and the own chord length
    """
    own = segment.points[:, :2]
    own_chord = cumulative_chord(own)
    length = float(own_chord[-1])
    if length <= 0:
        raise ExportError(f"segment {segment.index} has zero length")
    p_own = own_chord / length

    parts = [segment.before, segment.points, segment.after]
    if len(segment.before):
        back = np.vstack([segment.before[:, :2], own[:1]])
        steps = np.linalg.norm(np.diff(back, axis=0), axis=1)
        p_before = -np.cumsum(steps[::-1])[::-1] / length
    else:
        p_before = np.zeros(0)
    if len(segment.after):
        ahead = np.vstack([own[-1:], segment.after[:, :2]])
        p_after = 1.0 + np.cumsum(np.linalg.norm(np.diff(ahead, axis=0), axis=1)) / length
    else:
        p_after = np.zeros(0)
    return np.vstack(parts), np.concatenate([p_before, p_own, p_after]), length


def _weighted_cubic(
    p: np.ndarray, values: np.ndarray, weights: np.ndarray, powers: List[int]
) -> np.ndarray:
    basis = np.column_stack([p**k for k in powers])
    root = np.sqrt(weights)[:, None]
    coef, *_ = np.linalg.lstsq(basis * root, values * root[:, 0], rcond=None)
    return coef


def fit_param_poly3(
    segment: Segment,
    hdg: float,
    cfg: ExportConfig,
    start: Optional[np.ndarray] = None,
    fix_start_heading: bool = False,
) -> ParamPoly3:
    """
    Weighted least-squares paramPoly3 for one segment.

    Vertices are moved to the local frame (translated to `start`, rotated by
    -hdg) and parameterized by chord fraction, so look-back vertices get p < 0
    and look-ahead vertices p > 1. u(p) and v(p) are fitted independently
    without constant term (aU = aV = 0); the first and last own vertex carry
    endpoint_weight. With fix_start_heading, bV is held at 0 so the curve
    leaves the start exactly along hdg. Too few vertices lower the degree.

    Args:
        segment: Segment with optional extensions
        hdg: Heading of the local U axis
        cfg: Export configuration
        start: Local origin, defaults to the segment's first vertex
        fix_start_heading: Force bV = 0

    Returns:
        Normalized paramPoly3 coefficients
    """
    xyz, p, _ = segment_parameters(segment)
    origin = segment.points[0, :2] if start is None else np.asarray(start, dtype=np.float64)
    local = rotate_2d(xyz[:, :2] - origin, -hdg)

    weights = np.ones(len(p))
    first = len(segment.before)
    last = first + len(segment.points) - 1
    weights[first] = weights[last] = cfg.endpoint_weight

    informative = int(np.count_nonzero(np.abs(p) > 1e-12))
    degree = max(1, min(3, informative))
    powers = list(range(1, degree + 1))
    u = _weighted_cubic(p, local[:, 0], weights, powers)
    if fix_start_heading:
        v_powers = powers[1:]
        v = _weighted_cubic(p, local[:, 1], weights, v_powers) if v_powers else np.zeros(0)
        v = np.concatenate([[0.0], v])
    else:
        v = _weighted_cubic(p, local[:, 1], weights, powers)

    u = np.pad(u, (0, 3 - len(u)))
    v = np.pad(v, (0, 3 - len(v)))
    return ParamPoly3(
        bU=float(u[0]), cU=float(u[1]), dU=float(u[2]),
        bV=float(v[0]), cV=float(v[1]), dV=float(v[2]),
    )


def curve_length(curve: ParamPoly3, p_max: float = 1.0) -> float:
    """Arclength of a paramPoly3 over [0, p_max] by adaptive quadrature."""

    def speed(p: float) -> float:
        du = curve.bU + 2.0 * curve.cU * p + 3.0 * curve.dU * p * p
        dv = curve.bV + 2.0 * curve.cV * p + 3.0 * curve.dV * p * p
        return math.hypot(du, dv)

    length, _ = integrate.quad(speed, 0.0, p_max, epsabs=1e-10, epsrel=1e-12, limit=200)
    return float(length)
