"""Backward/forward slicing over a PDG and per-variable union slices.

A union slice pairs a backward slice from a reference of the slicing
variable with a forward slice from the first definition of that variable
inside the backward slice. Union slices are computed repeatedly, from the
last uncovered reference backwards, until every reference and definition
of the variable lies in at least one of them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dependence import ENTRY, Pdg
from .frontend import VariableId


@dataclass(frozen=True)
class SliceCriterion:
    node: int  # body node id, or ENTRY for a parameter definition
    variable: VariableId


@dataclass(frozen=True)
class UnionSlice:
    variable: VariableId
    seed_backward: Optional[SliceCriterion]
    seed_forward: Optional[SliceCriterion]
    nodes: frozenset[int]

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class SliceProfile:
    variable: VariableId
    slices: tuple[UnionSlice, ...]

    def __len__(self) -> int:
        return len(self.slices)

    @property
    def merged(self) -> frozenset[int]:
        return frozenset().union(*(s.nodes for s in self.slices))


def _closure(start: list[int], edges: dict[int, list[int]]) -> set[int]:
    seen: set[int] = set()
    stack = list(start)
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.add(n)
        stack.extend(m for m in edges[n] if m not in seen)
    seen.discard(ENTRY)
    return seen


def _check(pdg: Pdg, node: int) -> None:
    if not 0 <= node < len(pdg.body_nodes):
        raise KeyError(f"unknown node id {node}")


def backward_slice(pdg: Pdg, node: int) -> frozenset[int]:
    """All body nodes ``node`` transitively depends on, itself included."""
    _check(pdg, node)
    return frozenset(_closure([node], pdg.predecessors))


def forward_slice(pdg: Pdg, node: int, variable: Optional[VariableId] = None) -> frozenset[int]:
    """All body nodes transitively depending on ``node``.

    From ``ENTRY`` only the parameter data edges are followed (optionally
    just those of ``variable``); every top-level statement is control
    dependent on the entry, so following control edges would return the
    whole method.
    """
    if node == ENTRY:
        seeds = sorted({b for a, b, v in pdg.data_edges
                        if a == ENTRY and (variable is None or v == variable)})
        return frozenset(_closure(seeds, pdg.successors))
    _check(pdg, node)
    return frozenset(_closure([node], pdg.successors))


def _entry_def_reaches(pdg: Pdg, nodes: frozenset[int], var: VariableId) -> bool:
    return any(a == ENTRY and v == var and b in nodes for a, b, v in pdg.data_edges)


def slice_profile(pdg: Pdg, var: VariableId) -> SliceProfile:
    refs = [n.id for n in pdg.body_nodes if var in n.uses]
    defs = [n.id for n in pdg.body_nodes if var in n.defs]
    occurrences = set(refs) | set(defs)

    if not occurrences:
        if var.is_param:
            seed = SliceCriterion(ENTRY, var)
            nodes = forward_slice(pdg, ENTRY, var)
            return SliceProfile(var, (UnionSlice(var, None, seed, nodes),))
        return SliceProfile(var, ())

    covered: set[int] = set()
    slices: list[UnionSlice] = []
    while occurrences - covered:
        open_refs = [r for r in refs if r not in covered]
        if open_refs:
            seed = open_refs[-1]  # node ids follow source order
            back = backward_slice(pdg, seed)
            fwd_seed: Optional[int] = None
            if var.is_param and _entry_def_reaches(pdg, back, var):
                fwd_seed = ENTRY
            else:
                inside = [d for d in defs if d in back]
                if inside:
                    fwd_seed = inside[0]
        else:
            # only dead definitions left: seed both directions at the def
            seed = [d for d in defs if d not in covered][-1]
            back = backward_slice(pdg, seed)
            fwd_seed = seed
        fwd = forward_slice(pdg, fwd_seed, var) if fwd_seed is not None else frozenset()
        nodes = back | fwd
        slices.append(UnionSlice(
            var,
            SliceCriterion(seed, var),
            SliceCriterion(fwd_seed, var) if fwd_seed is not None else None,
            nodes,
        ))
        covered |= occurrences & nodes
    slices.sort(key=lambda s: s.seed_backward.node, reverse=True)
    return SliceProfile(var, tuple(slices))


def slice_profiles(pdg: Pdg) -> dict[VariableId, SliceProfile]:
    return {v: slice_profile(pdg, v) for v in pdg.variables}
