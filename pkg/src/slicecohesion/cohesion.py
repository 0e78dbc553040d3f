"""Variable-level Coverage, method slice intersection and method metrics.

All ratios are exact :class:`fractions.Fraction` values; rounding is only
applied when displaying them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dependence import Pdg, build_pdg
from .frontend import ResolvedProgram, VariableId
from .slicer import SliceProfile, slice_profiles

COHESION_THRESHOLD = Fraction(1, 2)


class CohesionError(Exception):
    pass


class UndefinedCoverage(CohesionError):
    pass


class MetricsUnavailable(CohesionError):
    pass


def display(r: Fraction, places: int = 2) -> str:
    """Round half up to ``places`` decimals: 8/9 -> '0.89', 4/15 -> '0.27'."""
    scale = 10 ** places
    q = (r * scale + Fraction(1, 2)).__floor__()
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // scale}.{q % scale:0{places}d}"


def ratio_json(r: Optional[Fraction]) -> Optional[dict]:
    if r is None:
        return None
    return {"rational": str(r), "decimal": float(display(r))}


def coverage(pdg: Pdg, profile: SliceProfile) -> Fraction:
    m = len(pdg.body_nodes)
    if m == 0 or not profile.slices:
        raise UndefinedCoverage(f"coverage of {profile.variable.name!r} is undefined")
    return sum((Fraction(len(s), m) for s in profile.slices), Fraction(0)) / len(profile.slices)


INTERSECTION_MODES = ("per-slice", "merged")


def method_intersection(pdg: Pdg, profiles: list[SliceProfile],
                        mode: str = "per-slice") -> tuple[frozenset[int], Fraction]:
    """Nodes shared by all union slices (``per-slice``) or by all merged
    per-variable slices (``merged``), and their share of the method."""
    if mode == "per-slice":
        sets = [s.nodes for p in profiles for s in p.slices]
    elif mode == "merged":
        sets = [p.merged for p in profiles if p.slices]
    else:
        raise ValueError(f"unknown intersection mode {mode!r}")
    m = len(pdg.body_nodes)
    if not sets or m == 0:
        return frozenset(), Fraction(0)
    common = frozenset.intersection(*sets)
    return common, Fraction(len(common), m)


@dataclass(frozen=True)
class MethodMetrics:
    coverage_avg: Fraction
    min_coverage: Fraction
    max_coverage: Fraction
    overlap: Fraction
    tightness: Fraction

    def as_dict(self) -> dict[str, Fraction]:
        return {k: getattr(self, k) for k in
                ("coverage_avg", "min_coverage", "max_coverage", "overlap", "tightness")}


def method_metrics(pdg: Pdg, profiles: list[SliceProfile]) -> MethodMetrics:
    """Ott-Thuss style metrics over each variable's merged union slice."""
    merged = [p.merged for p in profiles if p.slices]
    m = len(pdg.body_nodes)
    if not merged or m == 0:
        raise MetricsUnavailable(f"no eligible variables in {pdg.method!r}")
    covs = [Fraction(len(s), m) for s in merged]
    common = frozenset.intersection(*merged)
    # an empty merged slice contributes 0 overlap (the intersection is empty too)
    overlaps = [Fraction(len(common), len(s)) if s else Fraction(0) for s in merged]
    return MethodMetrics(
        coverage_avg=sum(covs, Fraction(0)) / len(covs),
        min_coverage=min(covs),
        max_coverage=max(covs),
        overlap=sum(overlaps, Fraction(0)) / len(overlaps),
        tightness=Fraction(len(common), m),
    )


def output_variables(pdg: Pdg) -> set[VariableId]:
    """Variables read by output or return statements."""
    out: set[VariableId] = set()
    for n in pdg.body_nodes:
        if n.kind in ("output", "return"):
            out |= n.uses
    return out


@dataclass
class VariableCohesion:
    name: str
    variable: VariableId
    profile: SliceProfile
    coverage: Optional[Fraction]

    @property
    def profile_size(self) -> int:
        return len(self.profile)

    @property
    def slice_nodes(self) -> list[int]:
        return sorted(self.profile.merged)


@dataclass
class CohesionReport:
    method: str
    method_length: int
    per_variable: list[VariableCohesion]
    intersection_mode: str
    intersection_nodes: frozenset[int]
    intersection_ratio: Fraction
    metrics: Optional[MethodMetrics]
    metrics_error: Optional[str] = None
    pdg: Optional[Pdg] = field(default=None, repr=False, compare=False)

    @property
    def cohesive(self) -> bool:
        return self.intersection_ratio > COHESION_THRESHOLD

    def variable(self, name: str) -> VariableCohesion:
        for v in self.per_variable:
            if v.name == name:
                return v
        raise KeyError(name)

    def coverage_map(self) -> dict[str, Optional[Fraction]]:
        return {v.name: v.coverage for v in self.per_variable if v.profile.slices}

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "method_length": self.method_length,
            "variables": [
                {"name": v.name, "profile_size": v.profile_size,
                 "coverage": ratio_json(v.coverage), "slice_nodes": v.slice_nodes}
                for v in self.per_variable
            ],
            "intersection": {
                "mode": self.intersection_mode,
                "nodes": sorted(self.intersection_nodes),
                "ratio": ratio_json(self.intersection_ratio),
            },
            "metrics": ({k: ratio_json(r) for k, r in self.metrics.as_dict().items()}
                        if self.metrics else None),
            "cohesive": self.cohesive,
        }


def report_for_pdg(pdg: Pdg, intersection: str = "per-slice",
                   outputs_only: bool = False) -> CohesionReport:
    profiles = slice_profiles(pdg)
    rows = []
    for var in pdg.variables:  # declaration order, parameters first
        prof = profiles[var]
        try:
            cov: Optional[Fraction] = coverage(pdg, prof)
        except UndefinedCoverage:
            cov = None
        rows.append(VariableCohesion(pdg.label(var), var, prof, cov))
    eligible = [profiles[v] for v in pdg.variables if profiles[v].slices]
    nodes, ratio = method_intersection(pdg, eligible, intersection)
    metric_profiles = eligible
    if outputs_only:
        outs = output_variables(pdg)
        metric_profiles = [p for p in eligible if p.variable in outs]
    try:
        metrics: Optional[MethodMetrics] = method_metrics(pdg, metric_profiles)
        err = None
    except MetricsUnavailable as e:
        metrics, err = None, str(e)
    return CohesionReport(pdg.method, len(pdg.body_nodes), rows, intersection,
                          nodes, ratio, metrics, err, pdg)


def analyze(program: ResolvedProgram, method: Optional[str] = None, *,
            intersection: str = "per-slice", outputs_only: bool = False) -> list[CohesionReport]:
    """One report per method (or just ``method``), in source order."""
    names = program.method_names
    if method is not None:
        if method not in program.symbols:
            raise CohesionError(f"method {method!r} not found")
        names = [method]
    return [report_for_pdg(build_pdg(program, n), intersection, outputs_only) for n in names]
