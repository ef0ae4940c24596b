import random
from itertools import product

from indexcode.cellular import cellular_minsearch
from indexcode.fitting import build_template, compile_problem, minrank_search
from indexcode.gf import rank
from indexcode.search import RANK, SearchProblem, exists_state, run_search
from indexcode.sweeps import random_instance


def test_parallel_matches_serial(inst_a, inst_d):
    serial = minrank_search(inst_a, workers=1)
    parallel = minrank_search(inst_a, workers=4)
    assert serial.n_opt == parallel.n_opt
    assert serial.assignment == parallel.assignment
    assert serial.generator == parallel.generator
    assert cellular_minsearch(inst_d, workers=3).assignment == cellular_minsearch(inst_d).assignment


def test_lexicographically_first_minimiser():
    """The returned assignment is the first minimum-rank one in plain enumeration order."""
    rng = random.Random(3)
    checked = 0
    for _ in range(15):
        inst = random_instance(rng, rng.randint(2, 3))
        tmpl = build_template(inst)
        if tmpl.dof > 12:
            continue
        checked += 1
        # enumeration order of the search: units in order, each unit lexicographic
        best, first = None, None
        for values in product(range(inst.q), repeat=tmpl.dof):
            r = rank(tmpl.instantiate(values))
            if best is None or r < best:
                best, first = r, values
        res = minrank_search(inst, use_prop1=False)
        assert res.n_opt == best
        assert res.assignment == first
    assert checked >= 5


def test_exists_state_none_when_impossible(inst_b):
    problem = compile_problem(build_template(inst_b), RANK)
    assert exists_state(problem, lambda st: st.score() > inst_b.n) is None
    found = exists_state(problem, lambda st: st.score() >= 1)
    assert found is not None and len(found) == build_template(inst_b).dof


def test_empty_problem():
    assert run_search(SearchProblem(2, [], [])) is None
