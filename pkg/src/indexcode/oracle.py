"""Brute-force ground truth: decodability checks and exhaustive generator search.

Nothing here uses fitting matrices.  The searches walk sender-attributed
column sets in order of increasing length and return the first set that
lets every receiver decode.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Optional

from .code import Generator
from .exceptions import CapExceeded
from .gf import new_basis, pack, unit_vector
from .instance import Instance


@dataclass(frozen=True)
class SearchBounds:
    max_n: int = 5
    max_length: Optional[int] = None
    cap: int = 5_000_000


@dataclass(frozen=True)
class OracleResult:
    n_opt: Optional[int]          # None: no code exists
    generator: Optional[Generator]

    @property
    def feasible(self) -> bool:
        return self.n_opt is not None


def _audible(inst: Instance, k: int) -> tuple[int, ...]:
    if inst.coverage is None:
        return tuple(range(1, inst.num_senders + 1))
    return inst.coverage.audible(k)


def _decodes(inst: Instance, k: int, packed_cols) -> bool:
    """Receiver ``k`` recovers its message from ``packed_cols`` plus its side information."""
    n, q = inst.n, inst.q
    basis = new_basis(q)
    for j in inst.side_info[k - 1]:
        basis.add(unit_vector(j - 1, n, q))
    for v in packed_cols:
        basis.add(v)
    return basis.contains(unit_vector(inst.wants[k - 1] - 1, n, q))


def verify_decoding(inst: Instance, gen: Generator) -> tuple[bool, ...]:
    """Per-receiver verdicts; coverage (if any) limits which senders a receiver hears."""
    gen.check_support(inst)
    verdicts = []
    for k in range(1, inst.m + 1):
        verdicts.append(_decodes(inst, k, gen.packed(_audible(inst, k))))
    return tuple(verdicts)


# column pools -----------------------------------------------------------

def _vectors_on(support: list[int], n: int, q: int):
    """Nonzero vectors supported in ``support``, first nonzero entry 1, in lex order."""
    out = []
    for vals in product(range(q), repeat=len(support)):
        if not any(vals):
            continue
        first = next(v for v in vals if v)
        if first != 1:
            continue
        entries = [0] * n
        for i, v in zip(support, vals):
            entries[i - 1] = v
        out.append(tuple(entries))
    return out


def _column_order(vec):
    # x1 < x2 < x1+x2 < x3 < ...: compare from the last message backwards
    return tuple(reversed(vec))


def _multisender_pool(inst: Instance) -> list[tuple[int, tuple]]:
    """Distinct columns any sender can send, each attributed to its lowest holder sender."""
    seen = {}
    for s, ms in enumerate(inst.senders, start=1):
        for vec in _vectors_on(sorted(ms), inst.n, inst.q):
            seen.setdefault(vec, s)
    return [(seen[v], v) for v in sorted(seen, key=_column_order)]


def _cellular_pool(inst: Instance) -> list[tuple[int, tuple]]:
    pool = []
    for s, ms in enumerate(inst.senders, start=1):
        pool.extend((s, v) for v in sorted(_vectors_on(sorted(ms), inst.n, inst.q),
                                           key=_column_order))
    return pool


def _uncoded(inst: Instance) -> Optional[Generator]:
    """Send each wanted message in the clear from a sender its wanters can hear."""
    assigned = []
    for i in sorted(set(inst.wants)):
        used = set()
        for k in range(1, inst.m + 1):
            if inst.wants[k - 1] != i:
                continue
            options = set(inst.holders(i)) & set(_audible(inst, k))
            if not options:
                return None
            if not options & used:
                used.add(min(options))
        col = tuple(1 if r == i - 1 else 0 for r in range(inst.n))
        assigned.extend((s, col) for s in sorted(used))
    return Generator.from_assigned(inst.q, inst.n, inst.num_senders, assigned)


def _search(inst: Instance, pool, bounds: SearchBounds, upper: int) -> Optional[Generator]:
    if inst.n > bounds.max_n:
        raise CapExceeded(f"oracle limited to n <= {bounds.max_n}, got n={inst.n}")
    top = upper - 1 if bounds.max_length is None else min(upper - 1, bounds.max_length)
    total = sum(comb(len(pool), length) for length in range(1, top + 1))
    if total > bounds.cap:
        raise CapExceeded(f"oracle would test {total} column sets (cap {bounds.cap})")
    q = inst.q
    packed = [(s, pack(v, q)) for s, v in pool]
    receivers = [(k, _audible(inst, k)) for k in range(1, inst.m + 1)]
    for length in range(1, top + 1):
        for combo in combinations(range(len(pool)), length):
            ok = True
            for k, audible in receivers:
                cols = [packed[c][1] for c in combo if packed[c][0] in audible]
                if not _decodes(inst, k, cols):
                    ok = False
                    break
            if ok:
                return Generator.from_assigned(q, inst.n, inst.num_senders,
                                               [pool[c] for c in combo])
    if top < upper - 1:
        raise CapExceeded(f"no code of length <= {top}; longer codes were not searched")
    return None


def oracle_multisender(inst: Instance, bounds: SearchBounds = SearchBounds()) -> OracleResult:
    """Shortest code for the all-senders-audible setting, by exhaustion below ``n``."""
    inst = inst.without_coverage()
    found = _search(inst, _multisender_pool(inst), bounds, inst.n)
    if found is not None:
        return OracleResult(found.length, found)
    gen = _uncoded(inst)
    return OracleResult(gen.length, gen)


def oracle_cellular(inst: Instance, bounds: SearchBounds = SearchBounds()) -> OracleResult:
    """Shortest code when each receiver hears only its covering sender(s).

    Returns ``n_opt=None`` when some restricted receiver cannot be served.
    """
    if inst.coverage is None:
        raise ValueError("oracle_cellular needs an instance with coverage")
    found = _search(inst, _cellular_pool(inst), bounds, inst.n)
    if found is not None:
        return OracleResult(found.length, found)
    gen = _uncoded(inst)
    if gen is None:
        return OracleResult(None, None)
    return OracleResult(gen.length, gen)
