"""Slice-based cohesion metrics on the level of variables.

Typical use::

    from slicecohesion import load, analyze
    report = analyze(load(source))[0]
    report.intersection_ratio, report.cohesive
"""
__version__ = "0.1.0"

from .cohesion import CohesionReport, analyze, coverage, display, method_intersection, method_metrics
from .dependence import ENTRY, Pdg, build_cfg, build_pdg, reaching_definitions
from .frontend import FrontendError, compilable, load, parse, resolve
from .slicer import backward_slice, forward_slice, slice_profile

__all__ = [
    "CohesionReport", "analyze", "coverage", "display", "method_intersection", "method_metrics",
    "ENTRY", "Pdg", "build_cfg", "build_pdg", "reaching_definitions",
    "FrontendError", "compilable", "load", "parse", "resolve",
    "backward_slice", "forward_slice", "slice_profile",
]
