"""0-cycles, message connectivity, and which side information is critical.

A message set ``B`` is a 0-cycle when every receiver wanting a message in
``B`` also knows some message in ``B``.  It is message-connected when ``B``
induces a connected subgraph of the message graph (two messages adjacent
iff one sender holds both).  Such sets are exactly what lets a multi-sender
code beat uncoded transmission; everything here is decided by enumerating
subsets, which is fine at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import networkx as nx

from .code import Generator
from .exceptions import CapExceeded
from .fitting import DEFAULT_BUDGET, minrank_search
from .instance import (Instance, MessageGraph, build_message_graph, delete_message,
                       mask_of, members, shared_messages)

ENUM_CAP = 16


@dataclass(frozen=True)
class ZeroCycle:
    messages: frozenset
    receivers: frozenset
    connected: bool


def _check_cap(inst: Instance, cap: int):
    if inst.n > cap:
        raise CapExceeded(f"subset enumeration limited to n <= {cap}, got n={inst.n}")


def in_phi(inst: Instance, mask: int) -> bool:
    """Every receiver wanting a message of the set knows a message of the set."""
    for k in range(inst.m):
        if mask >> (inst.wants[k] - 1) & 1 and not mask & _side_masks(inst)[k]:
            return False
    return True


@lru_cache(maxsize=4096)
def _side_masks(inst: Instance) -> tuple:
    return tuple(mask_of(x) for x in inst.side_info)


@lru_cache(maxsize=4096)
def _phi_masks(inst: Instance) -> tuple:
    """(mask, message-connected) for every nonempty member of the family, by mask."""
    graph = build_message_graph(inst)
    out = []
    for mask in range(1, 1 << inst.n):
        if in_phi(inst, mask):
            out.append((mask, graph.is_connected(members(mask))))
    return tuple(out)


def zero_cycles(inst: Instance, cap: int = ENUM_CAP) -> list[ZeroCycle]:
    _check_cap(inst, cap)
    out = []
    for mask, connected in _phi_masks(inst):
        msgs = frozenset(members(mask))
        recv = frozenset(k for k in range(1, inst.m + 1) if inst.wants[k - 1] in msgs)
        out.append(ZeroCycle(msgs, recv, connected))
    return out


def minimal_zero_cycles(inst: Instance, cap: int = ENUM_CAP) -> list[ZeroCycle]:
    cycles = zero_cycles(inst, cap)
    masks = [mask_of(c.messages) for c in cycles]
    return [c for c, m in zip(cycles, masks)
            if not any(o != m and o & m == o for o in masks)]


def maximum_zero_cycle(inst: Instance, cap: int = ENUM_CAP) -> frozenset:
    """Union of all 0-cycles, itself a 0-cycle (empty when there is none)."""
    _check_cap(inst, cap)
    union = 0
    for mask, _ in _phi_masks(inst):
        union |= mask
    return frozenset(members(union))


def is_message_connected(messages, graph: MessageGraph) -> bool:
    return graph.is_connected(messages)


def _mc_masks(inst: Instance, cap: int):
    _check_cap(inst, cap)
    return [mask for mask, connected in _phi_masks(inst) if connected]


def forms_mc_zero_cycle(inst: Instance, i: int, cap: int = ENUM_CAP) -> bool:
    bit = 1 << (i - 1)
    return any(mask & bit for mask in _mc_masks(inst, cap))


def thm4_predicate(inst: Instance, cap: int = ENUM_CAP) -> bool:
    """True iff no message-connected 0-cycle exists, i.e. uncoded is optimal."""
    return not _mc_masks(inst, cap)


def spanning_tree_code(inst: Instance, messages) -> Generator:
    """Length ``n - 1`` code from a message-connected 0-cycle.

    Sums ``x_i + x_j`` along a spanning tree of the message graph on the
    cycle, each from a sender holding both ends, plus every other message
    in the clear from its lowest holder.
    """
    nodes = set(messages)
    graph = build_message_graph(inst)
    if not nodes or not in_phi(inst, mask_of(nodes)):
        raise ValueError(f"{sorted(nodes)} is not a 0-cycle")
    if not graph.is_connected(nodes):
        raise ValueError(f"{sorted(nodes)} is not message-connected")
    tree = graph.to_networkx().subgraph(nodes)
    assigned = []
    for a, b in sorted(tuple(sorted(e)) for e in nx.minimum_spanning_edges(tree, data=False)):
        sender = min(set(inst.holders(a)) & set(inst.holders(b)))
        col = [0] * inst.n
        col[a - 1] = 1
        col[b - 1] = inst.q - 1   # x_a - x_b; equals x_a + x_b over GF(2)
        assigned.append((sender, col))
    for i in range(1, inst.n + 1):
        if i not in nodes:
            col = [0] * inst.n
            col[i - 1] = 1
            assigned.append((inst.holders(i)[0], col))
    return Generator.from_assigned(inst.q, inst.n, inst.num_senders, assigned)


# criticality -------------------------------------------------------------

def _senders_splitting(inst: Instance, a: int, b: int) -> list[int]:
    return [s for s, ms in enumerate(inst.senders, start=1) if a in ms and b not in ms]


def thm2_uncritical(inst: Instance, a: int, b: int, sender: Optional[int] = None,
                    cap: int = ENUM_CAP) -> bool:
    """Receivers wanting ``a`` can drop ``b`` from their side information.

    Holds for sender ``i`` (with ``a`` in ``M_i`` and ``b`` not) when no
    message-connected 0-cycle contains ``b`` together with a message that
    ``i`` shares with another sender.  Without ``sender``, any such ``i``
    will do.
    """
    candidates = _senders_splitting(inst, a, b)
    if sender is not None:
        if sender not in candidates:
            raise ValueError(f"sender {sender} must hold message {a} but not {b}")
        candidates = [sender]
    if not candidates:
        raise ValueError(f"no sender holds message {a} without message {b}")
    shared = shared_messages(inst)
    mc = _mc_masks(inst, cap)
    bbit = 1 << (b - 1)
    for i in candidates:
        common = mask_of(inst.senders[i - 1] & shared)
        if not any(m & bbit and m & common for m in mc):
            return True
    return False


def _exclusive_sender(inst: Instance, k: int) -> int:
    holders = inst.holders(inst.wants[k - 1])
    if len(holders) != 1:
        raise ValueError(f"message {inst.wants[k - 1]} is shared; use cor2_uncritical")
    return holders[0]


def thm3_uncritical(inst: Instance, k: int, cap: int = ENUM_CAP) -> bool:
    """Receiver ``k`` (wanting an unshared message) can drop side information its sender lacks."""
    i = _exclusive_sender(inst, k)
    risky = inst.senders[i - 1] & shared_messages(inst) & inst.interference(k)
    return not any(forms_mc_zero_cycle(inst, q, cap) for q in risky)


def cor2_uncritical(inst: Instance, k: int, p: int, cap: int = ENUM_CAP) -> bool:
    """Condition under which receiver ``k`` (wanting a shared message) can drop
    its side information outside ``M_p`` for at least one holder ``p``.

    The condition does not say which holder works; ``p`` only has to hold
    the wanted message.
    """
    want = inst.wants[k - 1]
    holders = inst.holders(want)
    if len(holders) < 2:
        raise ValueError(f"message {want} is not shared; use thm3_uncritical")
    if p not in holders:
        raise ValueError(f"sender {p} does not hold message {want}")
    reach = frozenset().union(*(inst.senders[s - 1] for s in holders))
    risky = reach & shared_messages(inst) & inst.interference(k)
    return not any(forms_mc_zero_cycle(inst, q, cap) for q in risky)


@lru_cache(maxsize=65536)
def _n_opt(inst: Instance, budget: int) -> int:
    if inst.coverage is not None:
        from .cellular import cellular_minsearch
        return cellular_minsearch(inst, budget).n_opt
    return minrank_search(inst, budget).n_opt


def optimal_length(inst: Optional[Instance], budget: int = DEFAULT_BUDGET) -> int:
    """Optimal codelength by exhaustive search; 0 for an instance with nothing to send."""
    return 0 if inst is None else _n_opt(inst, budget)


def is_edge_critical_oracle(inst: Instance, k: int, j: int,
                            budget: int = DEFAULT_BUDGET) -> bool:
    if j not in inst.side_info[k - 1]:
        raise ValueError(f"message {j} is not side information of receiver {k}")
    return optimal_length(inst.without_edge(k, j), budget) > optimal_length(inst, budget)


def edges_critical_oracle(inst: Instance, edges, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether deleting all ``edges`` together raises the optimal codelength."""
    side = [set(x) for x in inst.side_info]
    for k, j in edges:
        side[k - 1].discard(j)
    return optimal_length(inst.with_side_info(side), budget) > optimal_length(inst, budget)


def uncoded_equivalence(inst: Instance, i: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Deleting message ``i`` (and its wanters) saves exactly one transmission."""
    return optimal_length(inst, budget) == 1 + optimal_length(delete_message(inst, i), budget)


@dataclass(frozen=True)
class EdgeCriticality:
    receiver: int
    message: int
    thm2: bool
    thm3: bool
    cor2: bool           # edge lies outside every holder's set and the corollary holds
    oracle_critical: Optional[bool]

    @property
    def flagged(self) -> bool:
        return self.thm2 or self.thm3 or self.cor2

    @property
    def consistent(self) -> bool:
        return not (self.flagged and self.oracle_critical)


def edge_flags(inst: Instance, k: int, j: int, cap: int = ENUM_CAP):
    """(thm2, thm3, cor2) flags for side-information edge ``(k, j)``."""
    a = inst.wants[k - 1]
    thm2 = bool(_senders_splitting(inst, a, j)) and thm2_uncritical(inst, a, j, cap=cap)
    holders = inst.holders(a)
    thm3 = False
    cor2 = False
    if len(holders) == 1:
        thm3 = j not in inst.senders[holders[0] - 1] and thm3_uncritical(inst, k, cap)
    else:
        # the removable set is outside M_p for an unnamed holder p, so only
        # edges outside all of them are safe to flag one at a time
        outside_all = all(j not in inst.senders[p - 1] for p in holders)
        cor2 = outside_all and cor2_uncritical(inst, k, holders[0], cap)
    return thm2, thm3, cor2


def criticality_report(inst: Instance, with_oracle: bool = True,
                       budget: int = DEFAULT_BUDGET,
                       cap: int = ENUM_CAP) -> list[EdgeCriticality]:
    """Per-edge flags and oracle verdicts; coverage is ignored (every sender audible)."""
    inst = inst.without_coverage()
    out = []
    for k in range(1, inst.m + 1):
        for j in sorted(inst.side_info[k - 1]):
            thm2, thm3, cor2 = edge_flags(inst, k, j, cap)
            crit = is_edge_critical_oracle(inst, k, j, budget) if with_oracle else None
            out.append(EdgeCriticality(k, j, thm2, thm3, cor2, crit))
    return out


def joint_claims(inst: Instance, cap: int = ENUM_CAP):
    """Edge sets the three conditions say can be deleted together.

    Yields ``(rule, alternatives)``; the claim is that deleting at least one
    of the alternative edge sets leaves the optimal codelength unchanged.
    Only the corollary has more than one alternative (one per holder).
    """
    for a in sorted(set(inst.wants)):
        wanters = [k for k in range(1, inst.m + 1) if inst.wants[k - 1] == a]
        for b in range(1, inst.n + 1):
            if b == a or not _senders_splitting(inst, a, b):
                continue
            edges = tuple((k, b) for k in wanters if b in inst.side_info[k - 1])
            if edges and thm2_uncritical(inst, a, b, cap=cap):
                yield "thm2", (edges,)
    for k in range(1, inst.m + 1):
        side = inst.side_info[k - 1]
        holders = inst.holders(inst.wants[k - 1])
        if len(holders) == 1:
            ms = inst.senders[holders[0] - 1]
            edges = tuple((k, j) for j in sorted(side - ms))
            if edges and thm3_uncritical(inst, k, cap):
                yield "thm3", (edges,)
        elif cor2_uncritical(inst, k, holders[0], cap):
            alts = tuple(tuple((k, j) for j in sorted(side - inst.senders[p - 1]))
                         for p in holders)
            if any(alts):
                yield "cor2", alts
