import random
from itertools import product

import pytest

from indexcode.code import Generator
from indexcode.exceptions import BudgetExceeded
from indexcode.fitting import (apply_prop1, build_template, encode, extract_generator,
                               minrank_search, template_dof)
from indexcode.instance import Instance
from indexcode.oracle import oracle_multisender, verify_decoding
from indexcode.sweeps import random_instance
from indexcode.template import EntryKind


def symbols(tmpl, c):
    return [e.symbol() for e in tmpl.entries[c]]


def test_instance_a_template_shape(inst_a):
    tmpl = build_template(inst_a)
    assert len(tmpl.columns) == 10
    # sender-1 columns then sender-2 columns per receiver; row 3 is split
    f1 = [c for c, col in enumerate(tmpl.columns) if col.sender == 1]
    f2 = [c for c, col in enumerate(tmpl.columns) if col.sender == 2]
    row3_1 = [tmpl.entries[c][2] for c in f1]
    row3_2 = [tmpl.entries[c][2] for c in f2]
    assert [e.kind for e in row3_1[:3]] == [EntryKind.SPLIT] * 3
    assert [e.kind for e in row3_1[3:]] == [EntryKind.FREE] * 2
    assert [e.kind for e in row3_2[3:]] == [EntryKind.FREE] * 2
    assert [(e.dependent, e.value) for e in row3_2[:3]] == [(True, 0), (True, 0), (True, 1)]
    for c in f1:
        assert [e.kind for e in tmpl.entries[c][3:]] == [EntryKind.ZERO] * 2
    for c in f2:
        assert [e.kind for e in tmpl.entries[c][:2]] == [EntryKind.ZERO] * 2


def test_instance_a_column_patterns(inst_a):
    tmpl = build_template(inst_a)
    assert symbols(tmpl, 0) == ["1", "*", "g0", "0", "0"]
    assert symbols(tmpl, 1) == ["0", "0", "-g0", "0", "*"]


def test_dof_formula_matches_construction(inst_a, inst_b):
    for inst in (inst_a, inst_b):
        assert build_template(inst).dof == template_dof(inst)
    # four free side-information entries plus four two-holder splits of message 4
    assert template_dof(inst_b) == 8


def test_single_sender_no_side_info_is_identity():
    inst = Instance(2, 3, 3, [1, 2, 3], [()] * 3, [{1, 2, 3}])
    tmpl = build_template(inst)
    assert tmpl.dof == 0
    assert tmpl.instantiate(()).entries.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    gen = extract_generator(inst, tmpl, ())
    assert gen.length == 3


def test_prop1_leaves_unqualified_receiver(inst_a):
    tmpl = build_template(inst_a)
    reduced = apply_prop1(inst_a, tmpl)
    assert reduced.entries[0] == tmpl.entries[0] and reduced.entries[1] == tmpl.entries[1]


def test_prop1_zeroes_other_sender():
    inst = Instance(2, 2, 2, [1, 2], [{2}, ()], [{1, 2}, {2}])
    reduced = apply_prop1(inst, build_template(inst))
    assert all(e.kind is EntryKind.ZERO for e in reduced.entries[1])
    assert symbols(reduced, 0) == ["1", "*"]


def test_prop1_single_sender_shape():
    inst = Instance(2, 3, 3, [1, 2, 3], [{2}, {3}, {1}], [{1, 2, 3}, {1, 2}])
    reduced = apply_prop1(inst, build_template(inst))
    for c, col in enumerate(reduced.columns):
        if col.sender == 2:
            assert all(e.kind is EntryKind.ZERO for e in reduced.entries[c])
    assert minrank_search(inst).n_opt == 2


def test_instance_b_optimum(inst_b):
    res = minrank_search(inst_b)
    assert res.n_opt == 3
    assert all(verify_decoding(inst_b, res.generator))
    assert oracle_multisender(inst_b).n_opt == 3


def test_instance_b_reference_code_recovered(inst_b):
    gen = minrank_search(inst_b).generator
    assert sorted(gen.items()) == [(1, (1, 0, 0, 1)), (2, (0, 1, 0, 1)), (2, (0, 1, 1, 0))]


def test_cross_sender_side_info_is_useless():
    inst = Instance(2, 2, 2, [1, 2], [{2}, {1}], [{1}, {2}])
    assert minrank_search(inst).n_opt == 2


def test_instance_a_matches_oracle(inst_a):
    assert minrank_search(inst_a).n_opt == oracle_multisender(inst_a).n_opt == 3


def test_budget_exceeded(inst_a):
    with pytest.raises(BudgetExceeded) as err:
        minrank_search(inst_a, budget=100)
    assert err.value.dof == apply_prop1(inst_a, build_template(inst_a)).dof


def test_encode_examples(inst_b):
    gen = Generator.from_assigned(2, 4, 2, [(1, [1, 0, 0, 1]), (2, [0, 1, 0, 1]),
                                            (2, [0, 1, 1, 0])])
    assert encode(gen, [1, 0, 1, 1]) == ((0,), (1, 1))
    assert encode(gen, [0, 0, 0, 0]) == ((0,), (0, 0))
    ident = Generator.from_assigned(2, 3, 1, [(1, [1, 0, 0]), (1, [0, 1, 0]), (1, [0, 0, 1])])
    assert encode(ident, [1, 0, 1]) == ((1, 0, 1),)
    with pytest.raises(ValueError):
        encode(ident, [1, 0])


def _random_instances(seed, count, max_n=4, q=2, senders=2):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        inst = random_instance(rng, rng.randint(1, max_n), num_senders=senders)
        out.append(Instance(q, inst.n, inst.m, inst.wants, inst.side_info, inst.senders))
    return out


def test_every_completion_decodes():
    rng = random.Random(5)
    for inst in _random_instances(11, 25):
        tmpl = build_template(inst)
        for _ in range(5):
            values = [rng.randrange(inst.q) for _ in range(tmpl.dof)]
            mat = tmpl.instantiate(values)
            gen = Generator.from_assigned(
                inst.q, inst.n, inst.num_senders,
                [(col.sender, mat.entries[:, c].tolist()) for c, col in enumerate(tmpl.columns)])
            assert all(verify_decoding(inst, gen))


def test_prop1_never_changes_minimum():
    for inst in _random_instances(3, 40):
        assert minrank_search(inst).n_opt == minrank_search(inst, use_prop1=False).n_opt


def test_adding_side_info_never_hurts():
    rng = random.Random(8)
    for inst in _random_instances(4, 40):
        base = minrank_search(inst).n_opt
        k = rng.randrange(inst.m) + 1
        extra = set(range(1, inst.n + 1)) - inst.side_info[k - 1] - {inst.wants[k - 1]}
        if not extra:
            continue
        side = list(inst.side_info)
        side[k - 1] = side[k - 1] | {rng.choice(sorted(extra))}
        assert minrank_search(inst.with_side_info(side)).n_opt <= base


def test_three_senders_match_oracle():
    for inst in _random_instances(21, 25, max_n=3, senders=3):
        assert minrank_search(inst).n_opt == oracle_multisender(inst).n_opt


def test_ternary_field_matches_oracle():
    for inst in _random_instances(31, 15, max_n=3, q=3):
        assert minrank_search(inst).n_opt == oracle_multisender(inst).n_opt


def test_unequal_receivers_match_oracle():
    rng = random.Random(41)
    for _ in range(25):
        n = rng.randint(1, 3)
        m = rng.randint(1, 4)
        wants = [rng.randint(1, n) for _ in range(m)]
        side = [frozenset(j for j in range(1, n + 1) if j != w and rng.random() < 0.5)
                for w in wants]
        senders = [set(), set()]
        for i in range(1, n + 1):
            senders[rng.randrange(2)].add(i)
            if rng.random() < 0.3:
                senders[rng.randrange(2)].add(i)
        inst = Instance(2, n, m, wants, side, senders)
        assert minrank_search(inst).n_opt == oracle_multisender(inst).n_opt


# general-coefficient fitting matrices, enumerated directly ----------------

def _gauss_rank(columns, q):
    rows = [list(c) for c in columns]
    r = 0
    n = len(rows[0]) if rows else 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], q - 2, q)
        rows[r] = [v * inv % q for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % q:
                f = rows[i][col]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def _general_min_rank(inst):
    """Minimum rank over fitting matrices with arbitrary per-receiver coefficients."""
    q, n, s = inst.q, inst.n, inst.num_senders
    sender_cols = []
    for ms in inst.senders:
        vecs = []
        for vals in product(range(q), repeat=len(ms)):
            v = [0] * n
            for i, a in zip(sorted(ms), vals):
                v[i - 1] = a
            vecs.append(tuple(v))
        sender_cols.append(vecs)
    per_receiver = []
    for k in range(inst.m):
        want = inst.wants[k] - 1
        y = [i - 1 for i in inst.interference(k + 1)]
        options = set()
        for coeffs in product(range(q), repeat=s):
            for cols in product(*sender_cols):
                comb = [sum(a * c[i] for a, c in zip(coeffs, cols)) % q for i in range(n)]
                if comb[want] == 1 and all(comb[i] == 0 for i in y):
                    options.add(cols)
        per_receiver.append(sorted(options))
    best = n
    for choice in product(*per_receiver):
        best = min(best, _gauss_rank([c for cols in choice for c in cols], q))
    return best


@pytest.mark.parametrize("seed", range(6))
def test_unit_coefficients_lose_nothing_binary(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3) if seed % 2 else 2
    inst = random_instance(rng, n)
    assert _general_min_rank(inst) == minrank_search(inst, use_prop1=False).n_opt


@pytest.mark.parametrize("seed", range(3))
def test_unit_coefficients_lose_nothing_ternary(seed):
    rng = random.Random(100 + seed)
    base = random_instance(rng, 2)
    inst = Instance(3, 2, 2, base.wants, base.side_info, base.senders)
    assert _general_min_rank(inst) == minrank_search(inst, use_prop1=False).n_opt
