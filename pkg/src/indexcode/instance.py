"""Index-coding instances: data model, file format and derived graphs.

Messages and receivers are numbered from 1 everywhere in this module, as in
the instance files.  Bit ``i - 1`` of a mask stands for message ``i``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .exceptions import InstanceError


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def mask_of(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << (i - 1)
    return out


def members(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class InfeasibleCoverageWarning(UserWarning):
    """A restricted receiver wants a message its only audible sender lacks."""


@dataclass(frozen=True)
class CoverageProfile:
    """Which sender(s) each receiver can hear in the two-sender cellular setting."""

    r1: frozenset
    r2: frozenset
    rc: frozenset

    def __post_init__(self):
        for name in ("r1", "r2", "rc"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    def audible(self, k: int) -> tuple[int, ...]:
        """Senders (1-based) receiver ``k`` can hear."""
        if k in self.r1:
            return (1,)
        if k in self.r2:
            return (2,)
        return (1, 2)

    def group(self, k: int) -> str:
        if k in self.r1:
            return "1"
        if k in self.r2:
            return "2"
        return "c"


@dataclass(frozen=True)
class Instance:
    """An index-coding instance with one or more senders.

    ``wants[k-1]`` is the message receiver ``k`` demands, ``side_info[k-1]``
    the messages it already knows, and ``senders[s-1]`` the messages sender
    ``s`` holds.  ``coverage`` turns the instance into a two-sender cellular
    one.
    """

    q: int
    n: int
    m: int
    wants: tuple
    side_info: tuple
    senders: tuple
    coverage: Optional[CoverageProfile] = None

    def __post_init__(self):
        object.__setattr__(self, "wants", tuple(int(w) for w in self.wants))
        object.__setattr__(
            self, "side_info", tuple(frozenset(x) for x in self.side_info))
        object.__setattr__(
            self, "senders", tuple(frozenset(s) for s in self.senders))
        self._validate()

    def _validate(self):
        q, n, m = self.q, self.n, self.m
        if not is_prime(q):
            raise InstanceError(f"field size q={q} is not prime")
        if n < 1 or m < 1:
            raise InstanceError("n and m must be at least 1")
        if len(self.wants) != m:
            raise InstanceError(f"expected {m} wanted messages, got {len(self.wants)}")
        if len(self.side_info) != m:
            raise InstanceError(f"expected {m} side-information sets, got {len(self.side_info)}")
        if not self.senders:
            raise InstanceError("at least one sender is required")
        universe = set(range(1, n + 1))
        for k, (w, x) in enumerate(zip(self.wants, self.side_info), start=1):
            if w not in universe:
                raise InstanceError(f"receiver {k} wants out-of-range message {w}")
            if not x <= universe:
                raise InstanceError(f"receiver {k} has out-of-range side information")
            if w in x:
                raise InstanceError(f"receiver {k} already knows its wanted message {w}")
        held = set()
        for s, ms in enumerate(self.senders, start=1):
            if not ms <= universe:
                raise InstanceError(f"sender {s} holds out-of-range messages")
            held |= ms
        if held != universe:
            missing = sorted(universe - held)
            raise InstanceError(f"messages {missing} are held by no sender")
        cov = self.coverage
        if cov is not None:
            if len(self.senders) != 2:
                raise InstanceError("coverage requires exactly two senders")
            if q != 2:
                raise InstanceError("coverage requires q = 2")
            if m != n or any(w != k for k, w in enumerate(self.wants, start=1)):
                raise InstanceError("coverage requires m = n and receiver k wanting message k")
            parts = (cov.r1, cov.r2, cov.rc)
            if (len(cov.r1) + len(cov.r2) + len(cov.rc) != m
                    or frozenset().union(*parts) != frozenset(range(1, m + 1))):
                raise InstanceError("coverage sets must partition the receivers")

    # derived sets -------------------------------------------------------

    @property
    def num_senders(self) -> int:
        return len(self.senders)

    @property
    def is_cellular(self) -> bool:
        return self.coverage is not None

    def interference(self, k: int) -> frozenset:
        """Messages receiver ``k`` neither wants nor knows."""
        return (frozenset(range(1, self.n + 1))
                - {self.wants[k - 1]} - self.side_info[k - 1])

    def holders(self, i: int) -> tuple[int, ...]:
        """Senders (1-based) that hold message ``i``."""
        return tuple(s for s, ms in enumerate(self.senders, start=1) if i in ms)

    def infeasible_receivers(self) -> list[int]:
        """Coverage-restricted receivers whose wanted message no audible sender holds."""
        if self.coverage is None:
            return []
        out = []
        for k in range(1, self.m + 1):
            w = self.wants[k - 1]
            if not any(w in self.senders[s - 1] for s in self.coverage.audible(k)):
                out.append(k)
        return out

    def with_side_info(self, side_info: Sequence[Iterable[int]]) -> "Instance":
        return Instance(self.q, self.n, self.m, self.wants,
                        tuple(frozenset(x) for x in side_info),
                        self.senders, self.coverage)

    def without_edge(self, k: int, j: int) -> "Instance":
        """Copy with message ``j`` removed from receiver ``k``'s side information."""
        side = list(self.side_info)
        side[k - 1] = side[k - 1] - {j}
        return self.with_side_info(side)

    def without_coverage(self) -> "Instance":
        return Instance(self.q, self.n, self.m, self.wants, self.side_info,
                        self.senders, None)


@dataclass(frozen=True)
class MessageGraph:
    """Undirected graph joining two messages iff some sender holds both."""

    n: int
    adjacency: tuple = field(repr=False)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.n + 1)
                for j in sorted(self.adjacency[i - 1]) if i < j]

    def neighbors(self, i: int) -> frozenset:
        return self.adjacency[i - 1]

    def is_connected(self, nodes: Iterable[int]) -> bool:
        """True iff the subgraph induced by ``nodes`` is connected (empty counts as not)."""
        nodes = set(nodes)
        if not nodes:
            return False
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v - 1]:
                if w in nodes and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(nodes)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.edges())
        return g


def build_message_graph(inst: Instance) -> MessageGraph:
    adj = [set() for _ in range(inst.n)]
    for ms in inst.senders:
        for i in ms:
            adj[i - 1].update(ms - {i})
    return MessageGraph(inst.n, tuple(frozenset(a) for a in adj))


def shared_messages(inst: Instance) -> frozenset:
    """Messages held by at least two senders."""
    return frozenset(i for i in range(1, inst.n + 1) if len(inst.holders(i)) >= 2)


# sub-instances ----------------------------------------------------------

def delete_message(inst: Instance, i: int) -> Optional[Instance]:
    """Remove message ``i``, its wanters, and every mention of it.

    Returns None when no receiver is left.  Remaining messages are renumbered
    in order.
    """
    if inst.n == 1:
        return None
    relabel = {old: new for new, old in
               enumerate((v for v in range(1, inst.n + 1) if v != i), start=1)}
    keep = [k for k in range(1, inst.m + 1) if inst.wants[k - 1] != i]
    if not keep:
        return None
    coverage = None
    if inst.coverage is not None:
        # only defined for m = n, f = id where receiver i wants message i
        cov = inst.coverage
        coverage = CoverageProfile(
            *(frozenset(relabel[k] for k in part if k != i)
              for part in (cov.r1, cov.r2, cov.rc)))
    return Instance(
        q=inst.q, n=inst.n - 1, m=len(keep),
        wants=[relabel[inst.wants[k - 1]] for k in keep],
        side_info=[frozenset(relabel[j] for j in inst.side_info[k - 1] if j != i)
                   for k in keep],
        senders=[frozenset(relabel[j] for j in ms if j != i) for ms in inst.senders],
        coverage=coverage)


def induced_subinstance(inst: Instance, nodes: Iterable[int],
                        side_info: Optional[dict] = None,
                        senders: Optional[Sequence[int]] = None) -> Instance:
    """Sub-instance on the message/receiver set ``nodes`` (m = n, f = id only).

    ``side_info`` optionally overrides receiver side information (keys are
    original receiver labels); ``senders`` selects which senders to keep.
    Side information and sender sets are intersected with ``nodes``.
    """
    if inst.m != inst.n or any(w != k for k, w in enumerate(inst.wants, start=1)):
        raise InstanceError("induced sub-instances need m = n and receiver k wanting message k")
    nodes = sorted(set(nodes))
    relabel = {old: new for new, old in enumerate(nodes, start=1)}
    node_set = set(nodes)
    side = []
    for k in nodes:
        x = side_info[k] if side_info is not None else inst.side_info[k - 1]
        side.append(frozenset(relabel[j] for j in x if j in node_set))
    chosen = senders if senders is not None else range(1, inst.num_senders + 1)
    msets = [frozenset(relabel[j] for j in inst.senders[s - 1] if j in node_set)
             for s in chosen]
    coverage = None
    if inst.coverage is not None and senders is None:
        cov = inst.coverage
        coverage = CoverageProfile(
            *(frozenset(relabel[k] for k in part if k in node_set)
              for part in (cov.r1, cov.r2, cov.rc)))
    return Instance(inst.q, len(nodes), len(nodes), list(range(1, len(nodes) + 1)),
                    side, msets, coverage)


# file format -------------------------------------------------------------

def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _keyed_line(line, lineno, keyword, expected_key=None):
    """Parse ``<keyword> <key> : <ints>`` into (key, ints)."""
    head, sep, tail = line.partition(":")
    if not sep:
        raise InstanceError(f"missing ':' in {keyword} line", lineno)
    parts = head.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise InstanceError(f"expected '{keyword} <index> :'", lineno)
    key = parts[1]
    if expected_key is not None and key != str(expected_key):
        raise InstanceError(f"expected {keyword} {expected_key}, got {keyword} {key}", lineno)
    return key, _ints(tail.split(), lineno)


def parse_instance(text: str) -> Instance:
    """Parse an instance file.  Blank lines and ``#`` comments are ignored."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    pos = 0

    def take(keyword):
        nonlocal pos
        if pos >= len(lines):
            raise InstanceError(f"unexpected end of file, expected '{keyword}'")
        lineno, line = lines[pos]
        tokens = line.split()
        if tokens[0] != keyword:
            raise InstanceError(f"expected '{keyword}', got '{tokens[0]}'", lineno)
        pos += 1
        return lineno, line, tokens[1:]

    header = {}
    for key in ("q", "n", "m"):
        lineno, _, rest = take(key)
        vals = _ints(rest, lineno)
        if len(vals) != 1:
            raise InstanceError(f"'{key}' takes exactly one integer", lineno)
        header[key] = (vals[0], lineno)
    q, n, m = (header[k][0] for k in ("q", "n", "m"))
    if not is_prime(q):
        raise InstanceError(f"field size q={q} is not prime", header["q"][1])
    if n < 1 or m < 1:
        raise InstanceError("n and m must be at least 1", header["n"][1])

    lineno, _, rest = take("wants")
    wants = _ints(rest, lineno)
    if len(wants) != m:
        raise InstanceError(f"'wants' needs {m} entries, got {len(wants)}", lineno)
    for w in wants:
        if not 1 <= w <= n:
            raise InstanceError(f"wanted message {w} out of range 1..{n}", lineno)

    side = []
    for k in range(1, m + 1):
        lineno, line, _ = take("side")
        _, vals = _keyed_line(line, lineno, "side", k)
        for j in vals:
            if not 1 <= j <= n:
                raise InstanceError(f"side information {j} out of range 1..{n}", lineno)
        if wants[k - 1] in vals:
            raise InstanceError(
                f"receiver {k} has its wanted message {wants[k - 1]} as side information", lineno)
        side.append(frozenset(vals))

    senders = []
    while pos < len(lines) and lines[pos][1].split()[0] == "sender":
        lineno, line, _ = take("sender")
        _, vals = _keyed_line(line, lineno, "sender", len(senders) + 1)
        for j in vals:
            if not 1 <= j <= n:
                raise InstanceError(f"sender message {j} out of range 1..{n}", lineno)
        senders.append(frozenset(vals))
    if not senders:
        lineno = lines[pos][0] if pos < len(lines) else None
        raise InstanceError("expected at least one 'sender' line", lineno)

    coverage = None
    if pos < len(lines):
        parts = {}
        for key in ("1", "2", "c"):
            lineno, line, _ = take("coverage")
            _, vals = _keyed_line(line, lineno, "coverage", key)
            for k in vals:
                if not 1 <= k <= m:
                    raise InstanceError(f"coverage receiver {k} out of range 1..{m}", lineno)
            parts[key] = frozenset(vals)
        coverage = CoverageProfile(parts["1"], parts["2"], parts["c"])
    if pos < len(lines):
        lineno, line = lines[pos]
        raise InstanceError(f"unexpected trailing line {line!r}", lineno)

    inst = Instance(q, n, m, wants, side, senders, coverage)
    bad = inst.infeasible_receivers()
    if bad:
        warnings.warn(f"receivers {bad} cannot hear any sender holding their wanted message; "
                      "no cellular code exists", InfeasibleCoverageWarning, stacklevel=2)
    return inst


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def render_instance(inst: Instance) -> str:
    def fmt(vals):
        return " ".join(str(v) for v in sorted(vals))

    out = [f"q {inst.q}", f"n {inst.n}", f"m {inst.m}",
           "wants " + " ".join(str(w) for w in inst.wants)]
    for k, x in enumerate(inst.side_info, start=1):
        out.append(f"side {k} : {fmt(x)}".rstrip())
    for s, ms in enumerate(inst.senders, start=1):
        out.append(f"sender {s} : {fmt(ms)}".rstrip())
    if inst.coverage is not None:
        cov = inst.coverage
        for key, part in (("1", cov.r1), ("2", cov.r2), ("c", cov.rc)):
            out.append(f"coverage {key} : {fmt(part)}".rstrip())
    return "\n".join(out) + "\n"
