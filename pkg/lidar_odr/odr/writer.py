"""OpenDRIVE XML serialization."""

from pathlib import Path
from typing import Dict, Union

from lxml import etree

from ..core.errors import ExportError, ValidationError
from ..types import ArcCurve, CubicRecord, Geometry, Lane, LineCurve, OdrDocument

# Relative tolerance for s contiguity between consecutive geometries.
S_TOLERANCE = 1e-6


def fmt(value: float) -> str:
    """17 significant digits, round-trip exact; negative zero is written as 0."""
    return format(float(value) + 0.0, ".17g")


def _cubic_attrs(record: CubicRecord, s_key: str = "s") -> Dict[str, str]:
    return {
        s_key: fmt(record.s),
        "a": fmt(record.a),
        "b": fmt(record.b),
        "c": fmt(record.c),
        "d": fmt(record.d),
    }


def check_document(doc: OdrDocument) -> None:
    """
    Refuse documents that would produce an invalid road.

    Raises:
        ValidationError: Empty planView, non-monotonic or non-contiguous s,
            or no lane section
    """
    if not doc.plan_view:
        raise ValidationError("document has no geometries")
    expected = 0.0
    for k, geometry in enumerate(doc.plan_view):
        if k and geometry.s <= doc.plan_view[k - 1].s:
            raise ValidationError(f"geometry {k} starts at s={geometry.s} before its predecessor")
        if abs(geometry.s - expected) > S_TOLERANCE * max(1.0, expected):
            raise ValidationError(f"geometry {k} starts at s={geometry.s}, expected {expected}")
        expected = geometry.s + geometry.length
    for name, records in (("elevation", doc.elevation), ("superelevation", doc.superelevation)):
        starts = [r.s for r in records]
        if starts != sorted(starts) or len(set(starts)) != len(starts):
            raise ValidationError(f"{name} records are not strictly increasing in s")
    if not doc.lane_sections:
        raise ValidationError("document has no lane section")


def _geometry_element(parent: etree._Element, geometry: Geometry) -> None:
    node = etree.SubElement(
        parent,
        "geometry",
        {
            "s": fmt(geometry.s),
            "x": fmt(geometry.x),
            "y": fmt(geometry.y),
            "hdg": fmt(geometry.hdg),
            "length": fmt(geometry.length),
        },
    )
    curve = geometry.curve
    if isinstance(curve, LineCurve):
        etree.SubElement(node, "line")
    elif isinstance(curve, ArcCurve):
        etree.SubElement(node, "arc", {"curvature": fmt(curve.curvature)})
    else:
        attrs = {
            key: fmt(getattr(curve, key))
            for key in ("aU", "bU", "cU", "dU", "aV", "bV", "cV", "dV")
        }
        attrs["pRange"] = curve.p_range
        etree.SubElement(node, "paramPoly3", attrs)


def _lane_element(parent: etree._Element, lane: Lane) -> None:
    attrs = {"id": str(lane.id), "type": lane.type, "level": "false"}
    node = etree.SubElement(parent, "lane", attrs)
    etree.SubElement(node, "width", _cubic_attrs(lane.width, "sOffset"))


def to_xml(doc: OdrDocument) -> bytes:
    """Serialize a document to UTF-8 OpenDRIVE bytes (2-space indent)."""
    check_document(doc)
    header = doc.header
    root = etree.Element("OpenDRIVE")
    head = etree.SubElement(
        root,
        "header",
        {
            "revMajor": str(header.rev_major),
            "revMinor": str(header.rev_minor),
            "name": header.name,
            "version": header.version,
        },
    )
    geo = etree.SubElement(head, "geoReference")
    geo.text = etree.CDATA(header.geo_reference)
    ox, oy, oz = header.origin
    etree.SubElement(head, "offset", {"x": fmt(ox), "y": fmt(oy), "z": fmt(oz), "hdg": "0"})
    head.append(etree.Comment(f" world origin {fmt(ox)} {fmt(oy)} {fmt(oz)} "))

    road = etree.SubElement(
        root,
        "road",
        {"name": doc.road_name, "length": fmt(doc.length), "id": doc.road_id, "junction": "-1"},
    )
    plan = etree.SubElement(road, "planView")
    for geometry in doc.plan_view:
        _geometry_element(plan, geometry)

    profile = etree.SubElement(road, "elevationProfile")
    for record in doc.elevation:
        etree.SubElement(profile, "elevation", _cubic_attrs(record))
    if doc.superelevation:
        lateral = etree.SubElement(road, "lateralProfile")
        for record in doc.superelevation:
            etree.SubElement(lateral, "superelevation", _cubic_attrs(record))

    lanes = etree.SubElement(road, "lanes")
    for record in doc.lane_offset:
        etree.SubElement(lanes, "laneOffset", _cubic_attrs(record))
    for section in doc.lane_sections:
        node = etree.SubElement(lanes, "laneSection", {"s": fmt(section.s)})
        if section.left:
            left = etree.SubElement(node, "left")
            for lane in sorted(section.left, key=lambda l: -l.id):
                _lane_element(left, lane)
        center = etree.SubElement(node, "center")
        etree.SubElement(center, "lane", {"id": "0", "type": "none", "level": "false"})
        if section.right:
            right = etree.SubElement(node, "right")
            for lane in sorted(section.right, key=lambda l: -l.id):
                _lane_element(right, lane)

    return etree.tostring(root, pretty_print=True, xml_declaration=True, encoding="UTF-8")


def write_opendrive(doc: OdrDocument, path: Union[str, Path]) -> Path:
    """
    Write a document to disk.

    Raises:
        ValidationError: Document invariants violated, nothing is written
        ExportError: The file cannot be written
    """
    path = Path(path)
    data = to_xml(doc)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as e:
        raise ExportError(f"cannot write OpenDRIVE file: {e.strerror or e}", str(path)) from e
    return path
