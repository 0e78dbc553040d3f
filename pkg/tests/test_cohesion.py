from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import node_by_label, pdg_of
from progen import random_method
from slicecohesion import analyze, load
from slicecohesion.cohesion import (
    MetricsUnavailable,
    UndefinedCoverage,
    coverage,
    display,
    method_intersection,
    method_metrics,
    report_for_pdg,
)
from slicecohesion.slicer import SliceProfile, slice_profile, slice_profiles


def report(src, **kw):
    return analyze(load(src), **kw)[0]


@pytest.mark.parametrize("value, text", [
    (Fraction(8, 9), "0.89"), (Fraction(4, 15), "0.27"), (Fraction(0), "0.00"),
    (Fraction(1), "1.00"), (Fraction(1, 8), "0.13"), (Fraction(7, 16), "0.44"),
    (Fraction(9, 16), "0.56"), (Fraction(-1, 8), "-0.12"),
])
def test_display_half_up(value, text):
    assert display(value) == text


def test_coverage_mul(professional_src):
    pdg = pdg_of(professional_src)
    cov = coverage(pdg, slice_profile(pdg, pdg.variable("mul")))
    assert cov == Fraction(8, 9) and display(cov) == "0.89"


def test_coverage_single_declaration():
    pdg = pdg_of("void f(){ int a=0; }")
    assert coverage(pdg, slice_profile(pdg, pdg.variable("a"))) == 1


def test_coverage_hd1_end_version(undergrad_src):
    # full-node backward slice from the hex assignment pulls in hD2's loop part
    pdg = pdg_of(undergrad_src)
    cov = coverage(pdg, slice_profile(pdg, pdg.variable("hD1")))
    assert cov == Fraction(12, 16) and cov > Fraction(1, 2)


def test_coverage_hex_averages_two_slices(undergrad_src):
    pdg = pdg_of(undergrad_src)
    assert coverage(pdg, slice_profile(pdg, pdg.variable("hex"))) == Fraction(12 + 1, 2 * 16)


def test_coverage_undefined():
    pdg = pdg_of("void f(int p){ }")
    with pytest.raises(UndefinedCoverage):
        coverage(pdg, slice_profile(pdg, pdg.variable("p")))
    with pytest.raises(UndefinedCoverage):
        coverage(pdg, SliceProfile(pdg.variable("p"), ()))


def test_intersection_professional(professional_src):
    pdg = pdg_of(professional_src)
    nodes, ratio = method_intersection(pdg, list(slice_profiles(pdg).values()))
    assert ratio == Fraction(8, 9)
    assert set(range(9)) - nodes == {node_by_label(pdg, "int sum = 0")}


def test_intersection_undergrad(undergrad_src):
    pdg = pdg_of(undergrad_src)
    profiles = list(slice_profiles(pdg).values())
    assert method_intersection(pdg, profiles) == (frozenset(), 0)
    # merged mode loses the dead-definition singleton
    assert method_intersection(pdg, profiles, "merged")[1] == Fraction(4, 16)


def test_intersection_without_line3(undergrad_no3_src):
    pdg = pdg_of(undergrad_no3_src)
    nodes, ratio = method_intersection(pdg, list(slice_profiles(pdg).values()))
    assert ratio == Fraction(4, 15) and display(ratio) == "0.27"
    assert nodes == {node_by_label(pdg, lab) for lab in
                     ("int i = 0", "i < bN.length", "i++", "if (bN[i] == 1)")}


def test_intersection_of_nothing():
    pdg = pdg_of("void f(){ int a = 0; }")
    assert method_intersection(pdg, []) == (frozenset(), 0)


def test_bad_mode():
    pdg = pdg_of("void f(){ int a = 0; }")
    with pytest.raises(ValueError):
        method_intersection(pdg, [], "pairwise")


def test_metrics_single_full_slice():
    m = report("void f(){ int a=0; print(a); }").metrics
    assert all(v == 1 for v in m.as_dict().values())


def test_metrics_professional(professional_src):
    m = report(professional_src).metrics
    assert m.tightness == Fraction(8, 9)
    assert m.max_coverage == 1
    assert m.min_coverage == Fraction(8, 9)


def test_metrics_disjoint_slices():
    m = report("void f(){ int a=0; int b=0; }").metrics
    assert m.tightness == 0 and m.overlap == 0 and m.coverage_avg == Fraction(1, 2)


def test_metrics_unavailable():
    pdg = pdg_of("void f(){ }")
    with pytest.raises(MetricsUnavailable):
        method_metrics(pdg, [])
    r = report("void f(){}")
    assert r.method_length == 0 and r.metrics is None and r.metrics_error


def test_outputs_only_restricts_metric_variables(undergrad_src):
    r_all = report(undergrad_src)
    r_out = report(undergrad_src, outputs_only=True)
    # printed variables are dec and hex; intersection is unaffected
    assert r_out.intersection_ratio == r_all.intersection_ratio
    pdg = r_all.pdg
    dec = slice_profile(pdg, pdg.variable("dec")).merged
    hexs = slice_profile(pdg, pdg.variable("hex")).merged
    assert r_out.metrics.tightness == Fraction(len(dec & hexs), 16)
    assert r_out.metrics.max_coverage == Fraction(13, 16)


def test_cohesive_flags(professional_src, undergrad_src):
    assert report(professional_src).cohesive
    assert not report(undergrad_src).cohesive


def test_report_orders_variables_by_declaration(undergrad_src):
    names = [v.name for v in report(undergrad_src).per_variable]
    assert names == ["bN", "dec", "hex", "hD1", "hD2", "i"]


def test_analyze_missing_method(professional_src):
    with pytest.raises(Exception, match="not found"):
        analyze(load(professional_src), "nope")


def test_json_schema_fields(professional_src):
    doc = report(professional_src).to_json()
    assert set(doc) == {"method", "method_length", "variables", "intersection", "metrics", "cohesive"}
    assert doc["intersection"] == {"mode": "per-slice", "nodes": list(range(1, 9)),
                                   "ratio": {"rational": "8/9", "decimal": 0.89}}
    assert set(doc["variables"][0]) == {"name", "profile_size", "coverage", "slice_nodes"}


def test_fresh_isolated_declaration_zeroes_intersection(professional_src):
    before = report(professional_src)
    assert before.intersection_ratio > 0
    after = report(professional_src.replace(
        "out.println(sum);\n", "out.println(sum);\n        int fresh = 0;\n"))
    assert after.intersection_ratio == 0


@pytest.mark.parametrize("a, b", [
    ("void f(){ int a=0; int b=1; print(a); print(b); }",
     "void f(){ int b=1; int a=0; print(a); print(b); }"),
    ("void f(int p){ int x=p; int y=2; print(x+y); }",
     "void f(int p){ int y=2; int x=p; print(x+y); }"),
])
def test_ratios_invariant_under_commuting_reorder(a, b):
    ra, rb = report(a), report(b)
    assert ra.intersection_ratio == rb.intersection_ratio
    assert ra.metrics == rb.metrics
    assert ra.coverage_map() == rb.coverage_map()


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_metric_inequalities(seed):
    pdg = pdg_of(random_method(seed))
    r = report_for_pdg(pdg)
    if r.metrics is None:
        return
    m = r.metrics
    assert 0 <= m.tightness <= m.min_coverage <= m.coverage_avg <= m.max_coverage <= 1
    assert m.tightness <= m.overlap <= 1
    merged = report_for_pdg(pdg, "merged")
    assert r.intersection_nodes <= merged.intersection_nodes
    assert r.intersection_ratio <= merged.intersection_ratio
    assert r.cohesive == (r.intersection_ratio > Fraction(1, 2))
