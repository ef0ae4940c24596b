"""Exhaustive branch-and-bound over template assignments.

The search walks the template's units (one receiver's columns at a time)
depth first, in lexicographic order of the assignment.  Both objectives
used here (rank, and the cellular dimension count) can only grow when
columns are added, so a partial assignment whose objective already reaches
the best complete one is cut.  The first minimum found is therefore the
lexicographically smallest minimiser.

Parallel runs split the first unit's options into ordered tasks.  Workers
publish their best value through a shared integer but only cut on it
strictly, so every task still finds its own lexicographically first
minimiser when that value is the global minimum; the reduction then picks
the earliest task with the smallest value.  The answer does not depend on
the worker count.
"""

from __future__ import annotations

import multiprocessing as mp
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .gf import new_basis

RANK = "rank"
CELLULAR = "cellular"
PARALLEL_MIN_SIZE = 1 << 14   # smaller spaces are not worth a process pool

_shared_best = None


@dataclass
class SearchProblem:
    q: int
    options: list          # options[u] = [(values, packed_columns), ...]
    blocks: list           # blocks[u] = tuple of block labels of the unit's columns
    objective: str = RANK
    lower_bound: int = 0


@dataclass(frozen=True)
class SearchResult:
    value: int
    values: tuple          # concatenated variable values of the winning assignment
    visited: int


class _RankState:
    __slots__ = ("basis",)

    def __init__(self, basis):
        self.basis = basis

    def push(self, vecs, blocks):
        b = self.basis.copy()
        for v in vecs:
            b.add(v)
        return _RankState(b)

    def score(self):
        return self.basis.rank


class _CellularState:
    """Bases of V1, V2, V3, V1+V2 and V1+V2+V3."""

    __slots__ = ("b1", "b2", "b3", "b12", "b123")

    def __init__(self, b1, b2, b3, b12, b123):
        self.b1, self.b2, self.b3, self.b12, self.b123 = b1, b2, b3, b12, b123

    def push(self, vecs, blocks):
        b1, b2, b3, b12 = self.b1, self.b2, self.b3, self.b12
        b123 = self.b123.copy()
        for v, blk in zip(vecs, blocks):
            if blk == 3:
                if b3 is self.b3:
                    b3 = b3.copy()
                b3.add(v)
            else:
                if blk == 1:
                    if b1 is self.b1:
                        b1 = b1.copy()
                    b1.add(v)
                else:
                    if b2 is self.b2:
                        b2 = b2.copy()
                    b2.add(v)
                if b12 is self.b12:
                    b12 = b12.copy()
                b12.add(v)
            b123.add(v)
        return _CellularState(b1, b2, b3, b12, b123)

    @property
    def dint12(self):
        return self.b1.rank + self.b2.rank - self.b12.rank

    @property
    def dint3_12(self):
        return self.b3.rank + self.b12.rank - self.b123.rank

    def score(self):
        # dim(V1+V2+V3) + dim(V1 ∩ V2)
        return self.b123.rank + self.b1.rank + self.b2.rank - self.b12.rank


def initial_state(objective: str, q: int):
    if objective == RANK:
        return _RankState(new_basis(q))
    return _CellularState(*(new_basis(q) for _ in range(5)))


def _dfs(problem: SearchProblem, first_options, best_init: int, shared=None):
    """Return (best value, option-index path, visited count) for one task."""
    options = [list(enumerate(o)) for o in problem.options]
    blocks = problem.blocks
    depth = len(options)
    lb = problem.lower_bound
    best = best_init
    best_path = None
    path = []
    visited = 0
    sys.setrecursionlimit(max(1000, depth * 4 + 100))

    def cut_shared(sc):
        return shared is not None and sc > shared.value

    def rec(u, state):
        nonlocal best, best_path, visited
        opts = first_options if u == 0 else options[u]
        blk = blocks[u]
        last = u == depth - 1
        for idx, (_, vecs) in opts:
            visited += 1
            st = state.push(vecs, blk)
            sc = st.score()
            if sc >= best or cut_shared(sc):
                continue
            path.append(idx)
            if last:
                best = sc
                best_path = tuple(path)
                if shared is not None:
                    with shared.get_lock():
                        if sc < shared.value:
                            shared.value = sc
                path.pop()
                if best <= lb:
                    return True
                # later siblings cannot beat an equal score; keep scanning for smaller
                continue
            if rec(u + 1, st):
                path.pop()
                return True
            path.pop()
        return False

    rec(0, initial_state(problem.objective, problem.q))
    return best, best_path, visited


def _init_worker(shared):
    global _shared_best
    _shared_best = shared


def _run_task(args):
    problem, first = args
    return _dfs(problem, first, sys.maxsize, _shared_best)


def run_search(problem: SearchProblem, workers: int = 1) -> Optional[SearchResult]:
    """Minimise the objective; None only when the problem has no units."""
    if not problem.options:
        return None
    first = list(enumerate(problem.options[0]))
    size = 1
    for opts in problem.options:
        size *= len(opts)
    if workers <= 1 or len(first) < 2 or size < PARALLEL_MIN_SIZE:
        best, path, visited = _dfs(problem, first, sys.maxsize)
    else:
        ntasks = min(len(first), workers * 4)
        chunk = -(-len(first) // ntasks)
        tasks = [first[i:i + chunk] for i in range(0, len(first), chunk)]
        shared = mp.Value("q", sys.maxsize)
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(shared,)) as pool:
            results = list(pool.map(_run_task, [(problem, t) for t in tasks]))
        best, path, visited = sys.maxsize, None, 0
        for value, p, v in results:
            visited += v
            if p is not None and value < best:
                best, path = value, p
    values = []
    for u, idx in enumerate(path):
        values.extend(problem.options[u][idx][0])
    return SearchResult(best, tuple(values), visited)


def exists_state(problem: SearchProblem, predicate) -> Optional[tuple]:
    """Depth-first search for an assignment whose state satisfies a monotone predicate.

    ``predicate(state)`` must stay true once true as columns are added; any
    partial assignment that satisfies it is extended with each later unit's
    first option.  Returns the concatenated values, or None.
    """
    options = problem.options
    depth = len(options)
    path = []

    def rec(u, state):
        if predicate(state):
            return True
        if u == depth:
            return False
        for idx, (_, vecs) in enumerate(options[u]):
            path.append(idx)
            if rec(u + 1, state.push(vecs, problem.blocks[u])):
                return True
            path.pop()
        return False

    if not rec(0, initial_state(problem.objective, problem.q)):
        return None
    values = []
    for u in range(depth):
        idx = path[u] if u < len(path) else 0
        values.extend(options[u][idx][0])
    return tuple(values)
