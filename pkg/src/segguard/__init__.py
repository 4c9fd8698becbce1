"""Guarding a target segment from a source segment inside a simple polygon."""

from .aspect import DiskAspect, LineAspect, disk_aspect_ratio, line_aspect_ratio, long_width, short_width
from .geom import EPS, Orientation, Point, Segment, orient
from .oracle import CoverageReport, Scene, brute_blockers, coverage_report, random_scene, vp_oracle
from .polygon import Polygon, PointLocation, convex_hull, locate, validate
from .slicer import BlockerResult, GuardSet, Termination, compute_lbv, compute_rbv, slice_guards
from .visibility import PairClass, classify_pair, sees, shadow_intervals, visibility_polygon, visible_intervals

__all__ = [
    "BlockerResult",
    "CoverageReport",
    "DiskAspect",
    "EPS",
    "GuardSet",
    "LineAspect",
    "Orientation",
    "PairClass",
    "Point",
    "PointLocation",
    "Polygon",
    "Scene",
    "Segment",
    "Termination",
    "brute_blockers",
    "classify_pair",
    "compute_lbv",
    "compute_rbv",
    "convex_hull",
    "coverage_report",
    "disk_aspect_ratio",
    "line_aspect_ratio",
    "locate",
    "long_width",
    "orient",
    "random_scene",
    "sees",
    "shadow_intervals",
    "short_width",
    "slice_guards",
    "validate",
    "visibility_polygon",
    "visible_intervals",
    "vp_oracle",
]
