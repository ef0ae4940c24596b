"""Two-sender cellular networks: receivers hear sender 1, sender 2, or both.

The template has three blocks.  Receivers hearing only sender ``s`` get
one single-sender column in block ``s``; receivers hearing both get a pair
of columns in block 3, one per sender, whose wanted-message and
interference rows are split between the two.  With V1, V2, V3 the column
spaces of the blocks, a completion yields a code of length
``dim(V1+V2+V3) + dim(V1 ∩ V2)`` and the minimum of that quantity is the
optimal codelength.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import networkx as nx

from .code import Generator
from .exceptions import CapExceeded, InfeasibleError, InstanceError
from .fitting import DEFAULT_BUDGET, check_budget, compile_problem, minrank_search
from .gf import FieldMatrix, SubspaceDims, new_basis, subspace_dims
from .instance import Instance, build_message_graph, induced_subinstance, members
from .oracle import verify_decoding
from .search import CELLULAR, exists_state, run_search
from .template import FREE, ZERO, Column, Entry, EntryKind, FittingTemplate, fixed

ENUM_CAP = 16
V1_V2 = "V1&V2"
V3_V12 = "V3&(V1+V2)"


def _require_coverage(inst: Instance):
    if inst.coverage is None:
        raise InstanceError("operation needs a cellular instance (coverage lines)")
    return inst.coverage


def prune_side_info(inst: Instance) -> Instance:
    """Drop side information a restricted receiver could only use via the other sender."""
    cov = _require_coverage(inst)
    m1, m2 = inst.senders
    side = []
    for k, x in enumerate(inst.side_info, start=1):
        if k in cov.r1:
            x = x & m1
        elif k in cov.r2:
            x = x & m2
        side.append(x)
    return inst.with_side_info(side)


def is_pruned(inst: Instance) -> bool:
    return prune_side_info(inst) == inst


def build_cellular_template(inst: Instance) -> FittingTemplate:
    cov = _require_coverage(inst)
    inst = prune_side_info(inst)
    bad = inst.infeasible_receivers()
    if bad:
        raise InfeasibleError(f"receivers {bad} cannot hear any holder of their message")
    n = inst.n
    columns, entries = [], []
    for block, part in ((1, cov.r1), (2, cov.r2)):
        for k in sorted(part):
            side = inst.side_info[k - 1]
            columns.append(Column(k, block, block))
            entries.append(tuple(FREE if i in side else fixed(1 if i == k else 0)
                                 for i in range(1, n + 1)))
    group = 0
    for k in sorted(cov.rc):
        side = inst.side_info[k - 1]
        pair = [[ZERO] * n, [ZERO] * n]
        for i in range(1, n + 1):
            holders = inst.holders(i)
            if i in side:
                for j in holders:
                    pair[j - 1][i - 1] = FREE
                continue
            target = 1 if i == k else 0
            if len(holders) == 1:
                pair[holders[0] - 1][i - 1] = fixed(target)
                continue
            pair[0][i - 1] = Entry(EntryKind.SPLIT, target, group)
            pair[1][i - 1] = Entry(EntryKind.SPLIT, target, group, dependent=True)
            group += 1
        for j in (1, 2):
            columns.append(Column(k, j, 3))
            entries.append(tuple(pair[j - 1]))
    return FittingTemplate(2, n, tuple(columns), tuple(entries))


def _blocks(tmpl: FittingTemplate, mat: FieldMatrix):
    out = []
    for block in (1, 2, 3):
        cols = [c for c, col in enumerate(tmpl.columns) if col.block == block]
        out.append(FieldMatrix(mat.entries[:, cols].reshape(tmpl.n, len(cols)), tmpl.q))
    return out


def cellular_objective(tmpl: FittingTemplate, assignment: Sequence[int]):
    """Codelength of one completion, with the subspace dimensions behind it."""
    f1, f2, f3 = _blocks(tmpl, tmpl.instantiate(assignment))
    dims = subspace_dims(f1, f2, f3)
    objective = dims.d123 + dims.dint12
    alt = dims.d1 + dims.d2 + dims.d3 - dims.dint3_12
    assert objective == alt, (objective, alt)
    return objective, dims


def cellular_lower_bound(inst: Instance) -> int:
    """Receivers without side information each need their own message in the span."""
    return max(1, sum(1 for x in inst.side_info if not x))


@dataclass(frozen=True)
class CellularResult:
    n_opt: int
    assignment: tuple
    generator: Generator
    template: FittingTemplate
    dims: SubspaceDims


def cellular_minsearch(inst: Instance, budget: int = DEFAULT_BUDGET,
                       workers: int = 1) -> CellularResult:
    """Optimal cellular codelength by exhaustive minimisation over the template."""
    _require_coverage(inst)
    pruned = prune_side_info(inst)
    tmpl = build_cellular_template(pruned)
    check_budget(2, tmpl.dof, budget)
    problem = compile_problem(tmpl, CELLULAR, cellular_lower_bound(pruned))
    result = run_search(problem, workers)
    objective, dims = cellular_objective(tmpl, result.values)
    assert objective == result.value
    gen = extract_cellular_generator(tmpl, result.values)
    return CellularResult(result.value, result.values, gen, tmpl, dims)


def extract_cellular_generator(tmpl: FittingTemplate, assignment: Sequence[int]) -> Generator:
    """Independent columns of blocks 1 and 2, then block-3 columns not yet spanned."""
    mat = tmpl.instantiate(assignment)
    cols = mat.packed_columns()
    assigned = []
    for block in (1, 2):
        basis = new_basis(tmpl.q)
        for c, col in enumerate(tmpl.columns):
            if col.block == block and basis.add(cols[c]):
                assigned.append((c, block))
    span = new_basis(tmpl.q)
    for c, _ in assigned:
        span.add(cols[c])
    for c, col in enumerate(tmpl.columns):
        if col.block == 3 and span.add(cols[c]):
            assigned.append((c, col.sender))
    return Generator.from_assigned(
        tmpl.q, tmpl.n, 2, [(s, mat.entries[:, c].tolist()) for c, s in assigned])


def verify_cellular_decoding(inst: Instance, gen: Generator) -> tuple[bool, ...]:
    _require_coverage(inst)
    return verify_decoding(inst, gen)


# H-subgraphs and the V1 ∩ V2 condition ----------------------------------

@dataclass(frozen=True)
class HSubgraph:
    nodes: frozenset
    has_r1: bool
    has_r2: bool


def detect_H(inst: Instance, nodes) -> bool:
    """Every message in ``nodes`` is side information of some receiver in ``nodes``."""
    nodes = set(nodes)
    if not nodes:
        return False
    known = set().union(*(inst.side_info[k - 1] for k in nodes))
    return nodes <= known


def enumerate_H(inst: Instance, cap: int = ENUM_CAP) -> list[HSubgraph]:
    cov = _require_coverage(inst)
    if inst.n > cap:
        raise CapExceeded(f"H enumeration limited to n <= {cap}")
    out = []
    for mask in range(1, 1 << inst.n):
        nodes = members(mask)
        if detect_H(inst, nodes):
            s = set(nodes)
            out.append(HSubgraph(frozenset(s), bool(s & cov.r1), bool(s & cov.r2)))
    return out


def prop4_predicate(inst: Instance, cap: int = ENUM_CAP) -> bool:
    """Graph condition for some completion having dim(V1 ∩ V2) > 0.

    True iff some H made only of singly-covered receivers, with members on
    both sides, has an r1 member knowing an r2 member's message (or the
    reverse), or an r1 and an r2 member sharing a side-information message.
    """
    cov = _require_coverage(inst)
    inst = prune_side_info(inst)
    restricted = sorted(cov.r1 | cov.r2)
    if len(restricted) > cap:
        raise CapExceeded(f"H enumeration limited to {cap} restricted receivers")
    for size in range(2, len(restricted) + 1):
        for nodes in combinations(restricted, size):
            a = [k for k in nodes if k in cov.r1]
            b = [k for k in nodes if k in cov.r2]
            if not a or not b or not detect_H(inst, nodes):
                continue
            if _prop4_conditions(inst, a, b):
                return True
    return False


def _prop4_conditions(inst: Instance, a, b) -> bool:
    side = inst.side_info
    for k in a:
        if side[k - 1] & set(b):
            return True
    for k in b:
        if side[k - 1] & set(a):
            return True
    for k1 in a:
        for k2 in b:
            if side[k1 - 1] & side[k2 - 1]:
                return True
    return False


def intersection_witness(inst: Instance, which: str,
                         budget: int = DEFAULT_BUDGET) -> Optional[tuple]:
    """An assignment whose named intersection is nonzero, or None (exhaustive)."""
    tmpl = build_cellular_template(inst)
    if which == V1_V2:
        units = [u for u in tmpl.units if tmpl.columns[u[0]].block in (1, 2)]
        predicate = _dint12_positive
    elif which == V3_V12:
        units = list(tmpl.units)
        predicate = _dint3_12_positive
    else:
        raise ValueError(f"unknown intersection {which!r}")
    dof = sum(len(tmpl.unit_variables(u)) for u in units)
    check_budget(2, dof, budget)
    problem = compile_problem(tmpl, CELLULAR, units=units)
    found = exists_state(problem, predicate)
    if found is None:
        return None
    if which == V3_V12:
        return found
    # pad with zeros for the block-3 variables that were not searched
    values = dict(zip([v for u in units for v in tmpl.unit_variables(u)], found))
    return tuple(values.get(v, 0) for v in range(tmpl.dof))


def _dint12_positive(state) -> bool:
    return state.dint12 > 0


def _dint3_12_positive(state) -> bool:
    return state.dint3_12 > 0


def exists_nonzero_intersection(inst: Instance, which: str,
                                budget: int = DEFAULT_BUDGET) -> bool:
    return intersection_witness(inst, which, budget) is not None


# cycles ------------------------------------------------------------------

@dataclass(frozen=True)
class CycleClass:
    cycle: tuple
    message_connected: bool
    reducible: bool
    case: str


def _directed_graph(inst: Instance):
    g = nx.DiGraph()
    g.add_nodes_from(range(1, inst.n + 1))
    for k, x in enumerate(inst.side_info, start=1):
        for j in x:
            g.add_edge(k, j)
    return g


def _rotate(cycle):
    i = cycle.index(min(cycle))
    return tuple(cycle[i:] + cycle[:i])


def directed_cycles(inst: Instance, cap: int = ENUM_CAP) -> list[tuple]:
    if inst.n > cap:
        raise CapExceeded(f"cycle enumeration limited to n <= {cap}")
    cycles = {_rotate(list(c)) for c in nx.simple_cycles(_directed_graph(inst))}
    return sorted(cycles, key=lambda c: (len(c), c))


def classify_cycle(inst: Instance, cycle: Sequence[int]) -> CycleClass:
    cov = _require_coverage(inst)
    cycle = tuple(cycle)
    nodes = set(cycle)
    connected = build_message_graph(inst).is_connected(nodes)
    if not connected:
        return CycleClass(cycle, False, False, "message-disconnected")
    if nodes & cov.rc:
        return CycleClass(cycle, True, True, "contains-rc")
    if nodes <= cov.r1:
        return CycleClass(cycle, True, True, "within-r1")
    if nodes <= cov.r2:
        return CycleClass(cycle, True, True, "within-r2")
    return CycleClass(cycle, True, False, "mixed-r1-r2")


def classify_cycles(inst: Instance, cap: int = ENUM_CAP) -> list[CycleClass]:
    """Class of every directed cycle of the pruned side-information graph."""
    pruned = prune_side_info(inst)
    return [classify_cycle(pruned, c) for c in directed_cycles(pruned, cap)]


def cycle_subinstance(inst: Instance, cycle: Sequence[int]) -> Instance:
    """The cycle on its own: each member knows only its successor's message."""
    pruned = prune_side_info(inst)
    succ = {cycle[i]: {cycle[(i + 1) % len(cycle)]} for i in range(len(cycle))}
    return induced_subinstance(pruned, cycle, side_info=succ)


def cycle_code(inst: Instance, cycle: Sequence[int]) -> Generator:
    """A code of length ``len(cycle) - 1`` for a reducible cycle's sub-instance.

    Singly-covered members get ``x_k + x_next`` from their own sender; the
    remaining edges complete a spanning tree through the message graph and
    are sent by any sender holding both ends.
    """
    sub = cycle_subinstance(inst, cycle)
    if sub.infeasible_receivers():
        raise InfeasibleError(f"cycle {tuple(cycle)} has receivers no sender can serve")
    cls = classify_cycle(prune_side_info(inst), cycle)
    if not cls.reducible:
        raise ValueError(f"cycle {tuple(cycle)} is not reducible ({cls.case})")
    cov = sub.coverage
    size = sub.n
    order = list(range(1, size + 1))
    pos = {old: new for new, old in enumerate(sorted(cycle), start=1)}
    ring = [pos[c] for c in cycle]
    nxt = {ring[i]: ring[(i + 1) % size] for i in range(size)}
    parent = {v: v for v in order}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    edges = []

    def take(a, b, sender):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        parent[ra] = rb
        edges.append((a, b, sender))

    if cls.case in ("within-r1", "within-r2"):
        s = 1 if cls.case == "within-r1" else 2
        for a in ring[:-1]:
            take(a, nxt[a], s)
    else:
        for k in ring:
            if k in cov.r1:
                take(k, nxt[k], 1)
            elif k in cov.r2:
                take(k, nxt[k], 2)
        for a, b in build_message_graph(sub).edges():
            take(a, b, min(set(sub.holders(a)) & set(sub.holders(b))))
    assigned = []
    for a, b, s in edges:
        col = [0] * size
        col[a - 1] = col[b - 1] = 1
        assigned.append((s, col))
    return Generator.from_assigned(2, size, 2, assigned)


# consequences of the intersection checks --------------------------------

@dataclass(frozen=True)
class Prop3Certificate:
    n_cellular: int
    n_multisender: int

    @property
    def equal(self) -> bool:
        return self.n_cellular == self.n_multisender


def prop3_check(inst: Instance, budget: int = DEFAULT_BUDGET) -> Optional[Prop3Certificate]:
    """When no completion has dim(V1 ∩ V2) > 0, compare cellular and all-audible optima."""
    pruned = prune_side_info(inst)
    if exists_nonzero_intersection(pruned, V1_V2, budget):
        return None
    n_cell = cellular_minsearch(pruned, budget).n_opt
    n_multi = minrank_search(pruned.without_coverage(), budget).n_opt
    return Prop3Certificate(n_cell, n_multi)


@dataclass(frozen=True)
class Decomposition:
    n_opt: int
    n_r1: int
    n_r2: int
    n_rc: int

    @property
    def consistent(self) -> bool:
        return self.n_opt == self.n_r1 + self.n_r2 + self.n_rc


def prop6_decompose(inst: Instance, budget: int = DEFAULT_BUDGET) -> Optional[Decomposition]:
    """When no completion has dim(V3 ∩ (V1+V2)) > 0, solve the three groups separately."""
    cov = _require_coverage(inst)
    pruned = prune_side_info(inst)
    if exists_nonzero_intersection(pruned, V3_V12, budget):
        return None
    n_opt = cellular_minsearch(pruned, budget).n_opt
    parts = []
    for group, senders in ((cov.r1, [1]), (cov.r2, [2]), (cov.rc, [1, 2])):
        if not group:
            parts.append(0)
            continue
        sub = induced_subinstance(pruned, group, senders=senders)
        parts.append(minrank_search(sub, budget).n_opt)
    return Decomposition(n_opt, *parts)

