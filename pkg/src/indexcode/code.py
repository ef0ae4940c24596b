"""Concrete linear index codes: per-sender generator columns and their text form.

Text format, one column per line::

    s1: x1+x4
    s2: x2+2*x3
    s2: 0

Coefficients other than 1 are written ``c*x<i>``; an all-zero column is ``0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import SupportError
from .gf import pack


@dataclass(frozen=True)
class Generator:
    """Per-sender lists of length-``n`` column vectors over GF(q)."""

    q: int
    n: int
    columns: tuple  # columns[s-1] = tuple of column tuples for sender s

    def __post_init__(self):
        cols = tuple(tuple(tuple(int(e) % self.q for e in col) for col in sender)
                     for sender in self.columns)
        for sender in cols:
            for col in sender:
                if len(col) != self.n:
                    raise ValueError(f"column length {len(col)} != n={self.n}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_assigned(cls, q: int, n: int, num_senders: int, assigned):
        """Build from ``(sender, column)`` pairs, keeping their order per sender."""
        per = [[] for _ in range(num_senders)]
        for s, col in assigned:
            per[s - 1].append(tuple(col))
        return cls(q, n, tuple(tuple(p) for p in per))

    @property
    def num_senders(self) -> int:
        return len(self.columns)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.columns)

    @property
    def length(self) -> int:
        return sum(self.lengths)

    def items(self):
        """Yield ``(sender, column)`` pairs in sender order."""
        for s, cols in enumerate(self.columns, start=1):
            for col in cols:
                yield s, col

    def matrix(self) -> np.ndarray:
        cols = [col for _, col in self.items()]
        if not cols:
            return np.zeros((self.n, 0), dtype=np.int64)
        return np.array(cols, dtype=np.int64).T

    def packed(self, senders: Sequence[int] | None = None) -> list:
        return [pack(col, self.q) for s, col in self.items()
                if senders is None or s in senders]

    def check_support(self, inst) -> None:
        """Raise SupportError unless every column only uses its sender's messages."""
        if self.num_senders != inst.num_senders or self.n != inst.n:
            raise SupportError(
                f"generator has {self.num_senders} senders/{self.n} messages, "
                f"instance has {inst.num_senders}/{inst.n}")
        if self.q != inst.q:
            raise SupportError(f"generator over GF({self.q}), instance over GF({inst.q})")
        for s, col in self.items():
            held = inst.senders[s - 1]
            bad = [i for i, e in enumerate(col, start=1) if e and i not in held]
            if bad:
                raise SupportError(f"sender {s} column uses messages {bad} it does not hold")

    def encode(self, x: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """Sub-codeword of each sender: ``x`` restricted to its messages times its columns."""
        if len(x) != self.n:
            raise ValueError(f"message vector has length {len(x)}, expected {self.n}")
        x = [int(v) % self.q for v in x]
        return tuple(
            tuple(sum(a * b for a, b in zip(x, col)) % self.q for col in cols)
            for cols in self.columns)


def format_column(col: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(col, start=1):
        if c == 1:
            terms.append(f"x{i}")
        elif c:
            terms.append(f"{c}*x{i}")
    return "+".join(terms) if terms else "0"


def render_generator(gen: Generator) -> str:
    return "".join(f"s{s}: {format_column(col)}\n" for s, col in gen.items())


_TERM = re.compile(r"^(?:(\d+)\*)?x(\d+)$")


def parse_generator(text: str, q: int, n: int, num_senders: int) -> Generator:
    assigned = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        head = head.strip()
        if not sep or not head.startswith("s") or not head[1:].isdigit():
            raise ValueError(f"line {lineno}: expected 's<i>: <terms>'")
        s = int(head[1:])
        if not 1 <= s <= num_senders:
            raise ValueError(f"line {lineno}: sender {s} out of range 1..{num_senders}")
        col = [0] * n
        body = body.replace(" ", "")
        if body != "0":
            for term in body.split("+"):
                mt = _TERM.match(term)
                if not mt:
                    raise ValueError(f"line {lineno}: bad term {term!r}")
                c = int(mt.group(1)) if mt.group(1) else 1
                i = int(mt.group(2))
                if not 1 <= i <= n:
                    raise ValueError(f"line {lineno}: message x{i} out of range 1..{n}")
                col[i - 1] = (col[i - 1] + c) % q
        assigned.append((s, col))
    return Generator.from_assigned(q, n, num_senders, assigned)
