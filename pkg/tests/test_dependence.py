import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from conftest import node_by_label, nodes_by_label, pdg_of, read_fixture
from oracles import count_nodes, path_data_edges
from progen import random_method
from slicecohesion import build_cfg, build_pdg, load, reaching_definitions
from slicecohesion.dependence import ENTRY, EXIT


def cfg_of(src):
    program = load(src)
    return build_cfg(program.symbols[program.method_names[0]])


def test_professional_cfg(professional_src):
    cfg = cfg_of(professional_src)
    assert len(cfg.nodes) == 9
    pdg = pdg_of(professional_src)
    init, cond, upd = (node_by_label(pdg, s) for s in ("int i = 0", "i < bN.length", "i++"))
    first = node_by_label(pdg, "sum += mul * bN[i]")
    last = node_by_label(pdg, "mul *= 2")
    after = node_by_label(pdg, "out.println(sum)")
    e = cfg.edges
    assert {(init, cond), (cond, first), (first, last), (last, upd), (upd, cond), (cond, after)} <= e
    assert cfg.edge_labels[(cond, first)] == "T" and cfg.edge_labels[(cond, after)] == "F"
    assert (ENTRY, 0) in e and (8, EXIT) in e
    assert len(e) == 11


def test_empty_cfg():
    cfg = cfg_of("void f(){}")
    assert cfg.nodes == []
    assert cfg.edges == {(ENTRY, EXIT)}


def test_while_true_self_loop():
    cfg = cfg_of("void f(){ while(true){} }")
    assert [n.kind for n in cfg.nodes] == ["predicate-while"]
    assert cfg.edges == {(ENTRY, 0), (0, 0), (0, EXIT)}


def test_if_else_joins():
    cfg = cfg_of("void f(int x){ if (x > 0) x = 1; else x = 2; print(x); }")
    assert cfg.edges == {(ENTRY, 0), (0, 1), (0, 2), (1, 3), (2, 3), (3, EXIT)}


def test_return_goes_to_exit():
    cfg = cfg_of("int f(int x){ if (x > 0) return 1; return x; }")
    assert cfg.edges == {(ENTRY, 0), (0, 1), (1, EXIT), (0, 2), (2, EXIT)}


def _reaching_uses(pdg, def_label, var):
    d = node_by_label(pdg, def_label)
    return {b for a, b, v in pdg.data_edges if a == d and v.name == var}


def test_reaching_defs_professional(professional_src):
    pdg = pdg_of(professional_src)
    assert node_by_label(pdg, "sum += mul * bN[i]") in _reaching_uses(pdg, "int sum = 0", "sum")
    assert _reaching_uses(pdg, "sum += mul * bN[i]", "sum") == nodes_by_label(
        pdg, "sum += mul * bN[i]", "out.println(sum)",
        "out.println(convertIntToStr(sum / 16) + convertIntToStr(sum % 16))")


def test_strong_kill_straight_line():
    program = load("void f(){ int a=0; a=1; print(a); }")
    pdg = build_pdg(program, "f")
    assert {(a, b) for a, b, _ in pdg.data_edges} == {(1, 2)}
    cfg = build_cfg(program.symbols["f"])
    rd = reaching_definitions(cfg)
    assert {d for d, _ in rd.reach_in[2]} == {1}


def test_dead_hex_definition(undergrad_src):
    pdg = pdg_of(undergrad_src)
    assert _reaching_uses(pdg, 'String hex = ""', "hex") == set()


def test_array_element_write_is_weak():
    pdg = pdg_of("void f(int[] a){ a[0] = 1; a[1] = 2; print(a[0]); }")
    edges = {(x, y) for x, y, v in pdg.data_edges}
    # both writes and the parameter reach the read
    assert {(ENTRY, 2), (0, 2), (1, 2)} <= edges
    assert pdg.body_nodes[0].weak and pdg.body_nodes[0].uses == pdg.body_nodes[0].defs


def test_compound_assignment_defs_and_uses(professional_src):
    pdg = pdg_of(professional_src)
    n = pdg.node(node_by_label(pdg, "mul *= 2"))
    assert {v.name for v in n.defs} == {"mul"} and {v.name for v in n.uses} == {"mul"}


@pytest.mark.parametrize("name, length", [
    ("professional.mj", 9), ("undergrad.mj", 16), ("undergrad_without_line3.mj", 15)])
def test_method_length(name, length):
    src = read_fixture(name)
    pdg = pdg_of(src)
    assert len(pdg.body_nodes) == length
    assert count_nodes(load(src).unit.methods[0].body) == length


def test_single_declaration_pdg():
    pdg = pdg_of("void f(){ int a=0; }")
    assert len(pdg) == 1 and not pdg.data_edges
    assert pdg.control_edges == {(ENTRY, 0)}


def test_for_header_nodes(professional_src):
    pdg = pdg_of(professional_src)
    kinds = [n.kind for n in pdg.body_nodes]
    assert kinds.count("for-init") == kinds.count("for-cond") == kinds.count("for-update") == 1
    init, cond, upd = kinds.index("for-init"), kinds.index("for-cond"), kinds.index("for-update")
    assert init < cond < upd
    assert (cond, upd) in pdg.control_edges
    assert (ENTRY, init) in pdg.control_edges and (ENTRY, cond) in pdg.control_edges


def test_structured_control_dependence(undergrad_src):
    pdg = pdg_of(undergrad_src)
    parent = {b: a for a, b in pdg.control_edges}
    assert len(parent) == len(pdg.control_edges) == 16  # one parent each
    cond = node_by_label(pdg, "i < bN.length")
    outer_if = node_by_label(pdg, "if (bN[i] == 1)")
    assert parent[outer_if] == cond
    assert parent[node_by_label(pdg, "dec += Math.pow(2, i)")] == outer_if
    assert parent[node_by_label(pdg, "hD2 += Math.pow(2, i)")] == node_by_label(pdg, "if (i <= 3)")
    assert parent[node_by_label(pdg, "out.println(hex)")] == ENTRY


def test_exports(professional_src):
    pdg = pdg_of(professional_src)
    doc = pdg.to_json()
    assert doc["method_length"] == 9 and len(doc["nodes"]) == 9
    assert doc["entry_defs"] == ["bN"]
    dot = pdg.to_dot()
    assert 'n3 [label="3:for-cond:6"];' in dot
    assert "style=dashed" in dot and 'label="mul"' in dot


def test_determinism(undergrad_src):
    a, b = pdg_of(undergrad_src), pdg_of(undergrad_src)
    assert a.to_json() == b.to_json()


# -- oracles on random programs ---------------------------------------------


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_node_count_matches_ast_walk(seed):
    src = random_method(seed)
    assert len(pdg_of(src)) == count_nodes(load(src).unit.methods[0].body)


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_data_edges_match_path_enumeration(seed):
    program = load(random_method(seed, loops=False, max_nodes=12))
    cfg = build_cfg(program.symbols["g"])
    pdg = build_pdg(program, "g")
    assert set(pdg.data_edges) == path_data_edges(cfg)


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_control_forest(seed):
    pdg = pdg_of(random_method(seed))
    parent = {}
    for a, b in pdg.control_edges:
        assert b not in parent
        parent[b] = a
    assert set(parent) == {n.id for n in pdg.body_nodes}
    for n in parent:
        seen = set()
        while n != ENTRY:
            assert n not in seen
            seen.add(n)
            assert parent[n] < n or parent[n] == ENTRY  # predicates precede bodies
            n = parent[n]


def test_pdg_is_replaceable():
    pdg = pdg_of("void f(){ int a=0; print(a); }")
    other = dataclasses.replace(pdg, data_edges=frozenset())
    assert other.predecessors[1] == [ENTRY]
