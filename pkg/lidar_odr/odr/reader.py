"""Minimal OpenDRIVE reader for the supported single-road subset."""

from pathlib import Path
from typing import Callable, List, Optional, TypeVar, Union

from lxml import etree

from ..core.errors import OdrParseError, UnsupportedFeatureError
from ..types import (
    ArcCurve,
    CubicRecord,
    Geometry,
    Lane,
    LaneSection,
    LineCurve,
    OdrDocument,
    OdrHeader,
    ParamPoly3,
)
from .writer import S_TOLERANCE

_UNSUPPORTED_GEOMETRY = {"spiral", "poly3"}

T = TypeVar("T", int, float)


class _Reader:
    """Walks one parsed tree; every failure names the file."""

    def __init__(self, path: str):
        self.path = path

    def fail(self, reason: str) -> OdrParseError:
        return OdrParseError(reason, self.path)

    def attribute(self, node: etree._Element, key: str, convert: Callable[[str], T],
                  default: Optional[T] = None) -> T:
        raw = node.get(key)
        if raw is None:
            if default is not None:
                return default
            raise self.fail(f"<{node.tag}> on line {node.sourceline} lacks attribute '{key}'")
        try:
            return convert(raw)
        except ValueError:
            kind = "an integer" if convert is int else "a number"
            raise self.fail(f"<{node.tag}> attribute {key}={raw!r} is not {kind}") from None

    def number(self, node: etree._Element, key: str, default: Optional[float] = None) -> float:
        return self.attribute(node, key, float, default)

    def integer(self, node: etree._Element, key: str, default: Optional[int] = None) -> int:
        return self.attribute(node, key, int, default)

    def cubic(self, node: etree._Element, s_key: str = "s") -> CubicRecord:
        return CubicRecord(
            s=self.number(node, s_key),
            a=self.number(node, "a", 0.0),
            b=self.number(node, "b", 0.0),
            c=self.number(node, "c", 0.0),
            d=self.number(node, "d", 0.0),
        )

    def header(self, root: etree._Element) -> OdrHeader:
        node = root.find("header")
        if node is None:
            return OdrHeader()
        geo = node.findtext("geoReference") or ""
        offset = node.find("offset")
        origin = (0.0, 0.0, 0.0)
        if offset is not None:
            origin = tuple(self.number(offset, k, 0.0) for k in ("x", "y", "z"))
        return OdrHeader(
            name=node.get("name", ""),
            rev_major=self.integer(node, "revMajor", 1),
            rev_minor=self.integer(node, "revMinor", 6),
            version=node.get("version", "1.00"),
            geo_reference=geo.strip(),
            origin=origin,
        )

    def geometry(self, node: etree._Element) -> Geometry:
        children = [c for c in node if isinstance(c.tag, str)]
        if len(children) != 1:
            raise self.fail(f"geometry on line {node.sourceline} needs exactly one curve element")
        shape = children[0]
        if shape.tag in _UNSUPPORTED_GEOMETRY:
            raise UnsupportedFeatureError(shape.tag, self.path)
        if shape.tag == "line":
            curve: Union[LineCurve, ArcCurve, ParamPoly3] = LineCurve()
        elif shape.tag == "arc":
            curve = ArcCurve(curvature=self.number(shape, "curvature"))
        elif shape.tag == "paramPoly3":
            p_range = shape.get("pRange", "normalized")
            if p_range not in ("normalized", "arcLength"):
                raise self.fail(f"unknown pRange {p_range!r}")
            curve = ParamPoly3(
                **{k: self.number(shape, k, 0.0)
                   for k in ("aU", "bU", "cU", "dU", "aV", "bV", "cV", "dV")},
                p_range=p_range,
            )
        else:
            raise self.fail(f"unknown geometry element <{shape.tag}>")
        length = self.number(node, "length")
        if length <= 0:
            raise self.fail(f"geometry on line {node.sourceline} has length {length}")
        return Geometry(
            s=self.number(node, "s"),
            x=self.number(node, "x"),
            y=self.number(node, "y"),
            hdg=self.number(node, "hdg"),
            length=length,
            curve=curve,
        )

    def lanes(self, section: etree._Element, side: str) -> List[Lane]:
        group = section.find(side)
        if group is None:
            return []
        lanes = []
        for node in group.findall("lane"):
            width = node.find("width")
            record = self.cubic(width, "sOffset") if width is not None else CubicRecord(s=0.0)
            lane_type = node.get("type", "driving")
            lanes.append(Lane(id=self.integer(node, "id"), type=lane_type, width=record))
        return lanes

    def document(self, root: etree._Element) -> OdrDocument:
        if root.tag != "OpenDRIVE":
            raise self.fail(f"root element is <{root.tag}>, expected <OpenDRIVE>")
        roads = root.findall("road")
        if not roads:
            raise self.fail("no <road> element")
        if len(roads) > 1:
            raise UnsupportedFeatureError("multiple roads", self.path)
        road = roads[0]

        plan = [self.geometry(g) for g in road.iterfind("planView/geometry")]
        if not plan:
            raise self.fail("planView has no geometries")
        for k in range(1, len(plan)):
            expected = plan[k - 1].s + plan[k - 1].length
            if abs(plan[k].s - expected) > S_TOLERANCE * max(1.0, expected):
                raise self.fail(f"geometry {k} starts at s={plan[k].s}, expected {expected}")

        return OdrDocument(
            header=self.header(root),
            road_id=road.get("id", "1"),
            road_name=road.get("name", ""),
            plan_view=plan,
            elevation=[self.cubic(e) for e in road.iterfind("elevationProfile/elevation")],
            superelevation=[
                self.cubic(e) for e in road.iterfind("lateralProfile/superelevation")
            ],
            lane_offset=[self.cubic(e) for e in road.iterfind("lanes/laneOffset")],
            lane_sections=[
                LaneSection(
                    s=self.number(section, "s", 0.0),
                    left=self.lanes(section, "left"),
                    right=self.lanes(section, "right"),
                )
                for section in road.iterfind("lanes/laneSection")
            ],
        )


def read_opendrive(path: Union[str, Path]) -> OdrDocument:
    """
    Parse a single-road OpenDRIVE file with line, arc and paramPoly3 geometries.

    Raises:
        OdrParseError: Unreadable or malformed file, unknown geometry element
            or non-contiguous s
        UnsupportedFeatureError: Spiral or poly3 geometry, several roads
    """
    path = Path(path)
    try:
        tree = etree.parse(str(path))
    except OSError as e:
        raise OdrParseError(f"cannot read file: {e}", str(path)) from e
    except etree.XMLSyntaxError as e:
        raise OdrParseError(f"malformed XML: {e}", str(path)) from e
    return _Reader(str(path)).document(tree.getroot())
