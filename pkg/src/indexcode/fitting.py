"""Multi-sender fitting matrices and the minimum-rank search.

Column ``(k, j)`` of the template belongs to receiver ``k`` and sender
``j``.  Its entries are zero outside ``M_j``; free on side information held
by ``j``; and on the wanted message and on interference they are shares
that, summed over the senders holding that message, give 1 and 0
respectively.  When a message has a single holder the share is a fixed
value.  Every completion is a generator matrix; the minimum rank over all
completions is the optimal codelength, and the independent columns of a
minimiser form an optimal code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .code import Generator
from .exceptions import BudgetExceeded
from .gf import independent_columns
from .instance import Instance
from .search import RANK, SearchProblem, run_search
from .template import FREE, ZERO, Column, Entry, EntryKind, FittingTemplate, fixed

DEFAULT_BUDGET = 2 ** 24


def build_template(inst: Instance) -> FittingTemplate:
    n, q = inst.n, inst.q
    columns = []
    entries = []
    group = 0
    for k in range(1, inst.m + 1):
        want = inst.wants[k - 1]
        side = inst.side_info[k - 1]
        cols = [[ZERO] * n for _ in inst.senders]
        for i in range(1, n + 1):
            if i in side:
                for j, ms in enumerate(inst.senders):
                    if i in ms:
                        cols[j][i - 1] = FREE
                continue
            target = 1 if i == want else 0
            holders = inst.holders(i)
            if len(holders) == 1:
                cols[holders[0] - 1][i - 1] = fixed(target)
                continue
            for j in holders:
                cols[j - 1][i - 1] = Entry(EntryKind.SPLIT, target, group,
                                           dependent=(j == holders[-1]))
            group += 1
        for j in range(inst.num_senders):
            columns.append(Column(k, j + 1, j + 1))
            entries.append(tuple(cols[j]))
    return FittingTemplate(q, n, tuple(columns), tuple(entries))


def template_dof(inst: Instance) -> int:
    """Degrees of freedom counted from the instance alone."""
    total = 0
    for k in range(1, inst.m + 1):
        side = inst.side_info[k - 1]
        for ms in inst.senders:
            total += len(side & ms)
        for i in {inst.wants[k - 1]} | inst.interference(k):
            total += len(inst.holders(i)) - 1
    return total


def prop1_sender(inst: Instance, k: int):
    """Lowest sender holding receiver ``k``'s wanted message and all its side information."""
    want, side = inst.wants[k - 1], inst.side_info[k - 1]
    for j, ms in enumerate(inst.senders, start=1):
        if want in ms and side <= ms:
            return j
    return None


def apply_prop1(inst: Instance, tmpl: FittingTemplate) -> FittingTemplate:
    """Collapse a receiver's columns onto one sender when that sender holds all it needs.

    For such a receiver the column of that sender becomes the single-sender
    pattern (1 on the wanted message, free on side information, 0 elsewhere)
    and its other columns become zero; this never raises the minimum rank.
    """
    entries = [list(col) for col in tmpl.entries]
    for c, col in enumerate(tmpl.columns):
        j = prop1_sender(inst, col.receiver)
        if j is None:
            continue
        if col.sender != j:
            entries[c] = [ZERO] * tmpl.n
            continue
        k = col.receiver
        side = inst.side_info[k - 1]
        entries[c] = [FREE if i in side else fixed(1 if i == inst.wants[k - 1] else 0)
                      for i in range(1, tmpl.n + 1)]
    return FittingTemplate(tmpl.q, tmpl.n, tmpl.columns, tuple(tuple(e) for e in entries))


def rank_lower_bound(inst: Instance) -> int:
    """Receivers without side information need their messages spanned outright."""
    bare = {inst.wants[k - 1] for k in range(1, inst.m + 1) if not inst.side_info[k - 1]}
    return max(len(bare), 1)


def compile_problem(tmpl: FittingTemplate, objective=RANK, lower_bound=0,
                    units=None) -> SearchProblem:
    units = tmpl.units if units is None else units
    return SearchProblem(
        q=tmpl.q,
        options=[tmpl.unit_options(u) for u in units],
        blocks=[tuple(tmpl.columns[c].block for c in u) for u in units],
        objective=objective,
        lower_bound=lower_bound)


def check_budget(q: int, dof: int, budget: int) -> None:
    if q ** dof > budget:
        raise BudgetExceeded(dof, budget, q)


@dataclass(frozen=True)
class MinrankResult:
    n_opt: int
    assignment: tuple
    generator: Generator
    template: FittingTemplate


def minrank_search(inst: Instance, budget: int = DEFAULT_BUDGET, workers: int = 1,
                   use_prop1: bool = True) -> MinrankResult:
    """Optimal codelength for the all-senders-audible setting by exhaustive minimum rank."""
    inst = inst.without_coverage()
    tmpl = build_template(inst)
    if use_prop1:
        tmpl = apply_prop1(inst, tmpl)
    check_budget(inst.q, tmpl.dof, budget)
    problem = compile_problem(tmpl, RANK, rank_lower_bound(inst))
    result = run_search(problem, workers)
    gen = extract_generator(inst, tmpl, result.values)
    return MinrankResult(result.value, result.values, gen, tmpl)


def extract_generator(inst: Instance, tmpl: FittingTemplate,
                      assignment: Sequence[int]) -> Generator:
    """Leftmost independent columns of the completed matrix, each sent by its own sender."""
    mat = tmpl.instantiate(assignment)
    picked = independent_columns(mat)
    assigned = [(tmpl.columns[c].sender, mat.entries[:, c].tolist()) for c in picked]
    return Generator.from_assigned(inst.q, inst.n, inst.num_senders, assigned)


def encode(gen: Generator, x: Sequence[int]):
    return gen.encode(x)
