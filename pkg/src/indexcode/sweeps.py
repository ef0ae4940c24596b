"""Exhaustive and randomised small-instance sweeps that cross-check the solvers.

Each check takes one instance and returns a list of human-readable problems
(empty when everything agrees).  Suites enumerate every instance of a given
shape up to relabelling of messages and swapping the two senders.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Iterable, Iterator, Optional

from .cellular import (V1_V2, cellular_minsearch, classify_cycles, cycle_code,
                       cycle_subinstance, exists_nonzero_intersection, prop4_predicate,
                       prune_side_info, verify_cellular_decoding)
from .exceptions import InfeasibleError
from .instance import CoverageProfile, Instance
from .oracle import oracle_cellular, oracle_multisender, verify_decoding
from .structure import (criticality_report, edges_critical_oracle, forms_mc_zero_cycle,
                        joint_claims, optimal_length, spanning_tree_code, thm4_predicate,
                        uncoded_equivalence, zero_cycles)


def _subsets(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield frozenset(items[b] for b in range(len(items)) if mask >> b & 1)


# canonical forms ----------------------------------------------------------

def _key(inst: Instance, perm, swap: bool):
    """Instance relabelled by ``perm`` (old -> new), senders optionally swapped."""
    n = inst.n
    inv = {perm[i]: i for i in range(1, n + 1)}
    side = tuple(tuple(sorted(perm[j] for j in inst.side_info[inv[k] - 1]))
                 for k in range(1, n + 1))
    senders = [tuple(sorted(perm[j] for j in ms)) for ms in inst.senders]
    cov = None
    if inst.coverage is not None:
        c = inst.coverage
        parts = [tuple(sorted(perm[k] for k in p)) for p in (c.r1, c.r2, c.rc)]
        if swap:
            parts[0], parts[1] = parts[1], parts[0]
        cov = tuple(parts)
    if swap:
        senders.reverse()
    elif inst.coverage is None:
        senders.sort()
    return side, tuple(senders), cov


def canonical_key(inst: Instance):
    """Smallest relabelling key; equal for instances that differ only by naming."""
    n = inst.n
    best = None
    swaps = (False, True) if inst.num_senders == 2 and inst.coverage is not None else (False,)
    for p in permutations(range(1, n + 1)):
        perm = {i: p[i - 1] for i in range(1, n + 1)}
        for swap in swaps:
            k = _key(inst, perm, swap)
            if best is None or k < best:
                best = k
    return best


def _dedup(instances: Iterable[Instance]) -> list[Instance]:
    seen = set()
    out = []
    for inst in instances:
        key = canonical_key(inst)
        if key not in seen:
            seen.add(key)
            out.append(inst)
    return out


# suites ------------------------------------------------------------------

def _sender_covers(n: int):
    full = frozenset(range(1, n + 1))
    for m1 in _subsets(full):
        for m2 in _subsets(full):
            if m1 | m2 == full:
                yield m1, m2


def _raw_multisender(n: int) -> Iterator[Instance]:
    msgs = range(1, n + 1)
    side_choices = [list(_subsets(set(msgs) - {k})) for k in msgs]
    for m1, m2 in _sender_covers(n):
        for side in product(*side_choices):
            yield Instance(2, n, n, list(msgs), list(side), [m1, m2])


def multisender_suite(max_n: int = 3) -> list[Instance]:
    """Every two-sender instance with m = n <= max_n and receiver k wanting message k."""
    out = []
    for n in range(1, max_n + 1):
        out.extend(_dedup(_raw_multisender(n)))
    return out


def _coverages(n: int):
    for labels in product((1, 2, 3), repeat=n):
        parts = [frozenset(k for k in range(1, n + 1) if labels[k - 1] == g)
                 for g in (1, 2, 3)]
        yield CoverageProfile(*parts)


def _raw_cellular(n: int, pruned: bool) -> Iterator[Instance]:
    msgs = set(range(1, n + 1))
    for m1, m2 in _sender_covers(n):
        for cov in _coverages(n):
            choices = []
            for k in range(1, n + 1):
                pool = msgs - {k}
                if pruned and k in cov.r1:
                    pool &= m1
                elif pruned and k in cov.r2:
                    pool &= m2
                choices.append(list(_subsets(pool)))
            for side in product(*choices):
                yield Instance(2, n, n, list(range(1, n + 1)), list(side), [m1, m2], cov)


def cellular_suite(max_n: int = 3, pruned: bool = True) -> list[Instance]:
    """Every cellular instance with n <= max_n; pruned side information unless told otherwise."""
    out = []
    for n in range(1, max_n + 1):
        out.extend(_dedup(_raw_cellular(n, pruned)))
    return out


def random_instance(rng: random.Random, n: int, cellular: bool = False,
                    num_senders: int = 2, density: float = 0.4) -> Instance:
    msgs = list(range(1, n + 1))
    senders = [frozenset(i for i in msgs if rng.random() < 0.6) for _ in range(num_senders)]
    for i in msgs:
        if not any(i in ms for ms in senders):
            s = rng.randrange(num_senders)
            senders[s] = senders[s] | {i}
    side = [frozenset(j for j in msgs if j != k and rng.random() < density) for k in msgs]
    cov = None
    if cellular:
        labels = [rng.randrange(3) for _ in msgs]
        cov = CoverageProfile(*(frozenset(k for k in msgs if labels[k - 1] == g)
                                for g in range(3)))
    return Instance(2, n, n, msgs, side, senders, cov)


def random_suite(seed: int, count: int, max_n: int = 4, cellular: bool = False) -> list[Instance]:
    rng = random.Random(seed)
    return [random_instance(rng, rng.randint(1, max_n), cellular) for _ in range(count)]


# checks ------------------------------------------------------------------

def check_minrank_oracle(inst: Instance) -> list[str]:
    n_min = optimal_length(inst.without_coverage())
    n_orc = oracle_multisender(inst).n_opt
    return [] if n_min == n_orc else [f"minrank {n_min} != oracle {n_orc}"]


def check_cellular_oracle(inst: Instance) -> list[str]:
    orc = oracle_cellular(inst).n_opt
    try:
        res = cellular_minsearch(inst)
    except InfeasibleError:
        return [] if orc is None else [f"solver infeasible but oracle found {orc}"]
    problems = []
    if res.n_opt != orc:
        problems.append(f"cellular search {res.n_opt} != oracle {orc}")
    if res.generator.length != res.n_opt:
        problems.append(f"extracted code has {res.generator.length} columns, not {res.n_opt}")
    if not all(verify_cellular_decoding(inst, res.generator)):
        problems.append("extracted code does not decode")
    return problems


def check_uncoded_iff(inst: Instance) -> list[str]:
    uncoded = optimal_length(inst) == inst.n
    pred = thm4_predicate(inst)
    return [] if uncoded == pred else [f"minrank==n is {uncoded}, predicate {pred}"]


def check_spanning_tree(inst: Instance) -> list[str]:
    problems = []
    for cyc in zero_cycles(inst):
        if not cyc.connected:
            continue
        gen = spanning_tree_code(inst, cyc.messages)
        if gen.length != inst.n - 1 or not all(verify_decoding(inst, gen)):
            problems.append(f"tree code for {sorted(cyc.messages)} fails")
    return problems


def check_criticality(inst: Instance, joint: bool = True) -> list[str]:
    problems = []
    for e in criticality_report(inst):
        if not e.consistent:
            problems.append(f"edge ({e.receiver},{e.message}) flagged but critical")
    if joint:
        for rule, alts in joint_claims(inst):
            if all(edges_critical_oracle(inst, edges) for edges in alts):
                problems.append(f"{rule} joint removal {alts} raises the codelength")
    return problems


def check_intersection(inst: Instance) -> list[str]:
    try:
        exhaustive = exists_nonzero_intersection(inst, V1_V2)
    except InfeasibleError:
        return []
    pred = prop4_predicate(inst)
    return [] if pred == exhaustive else [f"predicate {pred}, exhaustive {exhaustive}"]


def check_pruning(inst: Instance) -> list[str]:
    """Pruning never changes the cellular optimum (by the independent search)."""
    raw = oracle_cellular(inst).n_opt
    pruned = prune_side_info(inst)
    problems = []
    if oracle_cellular(pruned).n_opt != raw:
        problems.append(f"oracle {raw} unpruned vs {oracle_cellular(pruned).n_opt} pruned")
    try:
        solved = cellular_minsearch(pruned).n_opt
    except InfeasibleError:
        solved = None
    if solved != raw:
        problems.append(f"oracle {raw} unpruned vs solver {solved} pruned")
    return problems


def check_uncoded_outside_cycles(inst: Instance) -> list[str]:
    problems = []
    for i in range(1, inst.n + 1):
        if not forms_mc_zero_cycle(inst, i) and not uncoded_equivalence(inst, i):
            problems.append(f"message {i} outside every mc 0-cycle but not uncoded-equivalent")
    return problems


def check_cycles(inst: Instance) -> list[str]:
    """Reducible cycles get a shorter verified code; irreducible ones need every column."""
    problems = []
    try:
        classes = classify_cycles(inst)
    except InfeasibleError:
        return []
    for c in classes:
        sub = cycle_subinstance(inst, c.cycle)
        if sub.infeasible_receivers():
            continue
        if c.reducible:
            gen = cycle_code(inst, c.cycle)
            if gen.length != len(c.cycle) - 1 or not all(verify_cellular_decoding(sub, gen)):
                problems.append(f"cycle {c.cycle} code fails")
        elif c.case == "mixed-r1-r2":
            got = oracle_cellular(sub).n_opt
            if got != len(c.cycle):
                problems.append(f"cycle {c.cycle} ({c.case}) has optimum {got}")
    return problems


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


def run_sweep(name: str, instances: Iterable[Instance],
              check: Callable[[Instance], list[str]],
              progress: Optional[Callable[[int], None]] = None) -> SweepReport:
    report = SweepReport(name)
    start = time.perf_counter()
    for inst in instances:
        for problem in check(inst):
            report.failures.append((inst, problem))
        report.checked += 1
        if progress is not None:
            progress(report.checked)
    report.seconds = time.perf_counter() - start
    return report


SWEEPS = {
    "minrank-oracle": ("multisender", check_minrank_oracle),
    "uncoded-iff": ("multisender", check_uncoded_iff),
    "spanning-tree": ("multisender", check_spanning_tree),
    "criticality": ("multisender", check_criticality),
    "uncoded-outside": ("multisender", check_uncoded_outside_cycles),
    "cellular-oracle": ("cellular", check_cellular_oracle),
    "intersection": ("cellular", check_intersection),
    "pruning": ("cellular-raw", check_pruning),
    "cycles": ("cellular", check_cycles),
}


def suite_for(kind: str, max_n: int = 3, seed: Optional[int] = None,
              count: int = 200) -> list[Instance]:
    """Exhaustive suite, or a seeded random one when ``seed`` is given."""
    if seed is not None:
        return random_suite(seed, count, max_n, cellular=kind != "multisender")
    if kind == "multisender":
        return multisender_suite(max_n)
    return cellular_suite(max_n, pruned=kind == "cellular")
