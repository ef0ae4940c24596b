"""Symbolic fitting-matrix templates shared by the multi-sender and cellular solvers.

A template is a list of columns, each a list of ``n`` entries.  Every entry
is a structural zero, a fixed value, a free value, or one share of a split
group: the entries of one row across the columns a receiver owns, which
must add up to 1 (its wanted message) or 0 (interference).  One share per
group, the one in the last column, is computed from the others, so the
search variables are the free entries plus the remaining shares, taken in
column order and then row order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

from .gf import FieldMatrix, pack


class EntryKind(enum.Enum):
    ZERO = "0"
    FIXED = "fixed"
    FREE = "*"
    SPLIT = "split"


@dataclass(frozen=True)
class Entry:
    kind: EntryKind
    value: int = 0          # FIXED value, or SPLIT group target
    group: int = -1
    dependent: bool = False

    def symbol(self, names=None) -> str:
        if self.kind is EntryKind.ZERO:
            return "0"
        if self.kind is EntryKind.FIXED:
            return str(self.value)
        if self.kind is EntryKind.FREE:
            return "*"
        name = names.get(self.group, f"g{self.group}") if names else f"g{self.group}"
        if self.dependent:
            return f"{self.value}-{name}" if self.value else f"-{name}"
        return name


ZERO = Entry(EntryKind.ZERO)
FREE = Entry(EntryKind.FREE)


def fixed(value: int) -> Entry:
    return Entry(EntryKind.FIXED, value) if value else ZERO


@dataclass(frozen=True)
class Column:
    receiver: int
    sender: int   # sender whose encoder would transmit this column
    block: int    # sender index (multi-sender) or 1/2/3 (cellular blocks)


@dataclass(frozen=True)
class FittingTemplate:
    q: int
    n: int
    columns: tuple
    entries: tuple   # entries[c][r]: column c, message r + 1

    @cached_property
    def variables(self) -> tuple:
        """(column, row) positions of the search variables, in search order."""
        return tuple((c, r) for c, col in enumerate(self.entries)
                     for r, e in enumerate(col)
                     if e.kind is EntryKind.FREE
                     or (e.kind is EntryKind.SPLIT and not e.dependent))

    @property
    def dof(self) -> int:
        return len(self.variables)

    @cached_property
    def groups(self) -> dict:
        out = {}
        for c, col in enumerate(self.entries):
            for r, e in enumerate(col):
                if e.kind is EntryKind.SPLIT:
                    out.setdefault(e.group, []).append((c, r))
        return out

    @cached_property
    def units(self) -> tuple:
        """Runs of consecutive columns owned by the same receiver."""
        out = []
        for c, col in enumerate(self.columns):
            key = col.receiver
            if out and out[-1][0] == key:
                out[-1][1].append(c)
            else:
                out.append((key, [c]))
        return tuple(tuple(cols) for _, cols in out)

    def kind_counts(self) -> dict:
        counts = {k: 0 for k in EntryKind}
        for col in self.entries:
            for e in col:
                counts[e.kind] += 1
        return counts

    # instantiation -------------------------------------------------------

    def column_entries(self, values: Sequence[int]) -> list[list[int]]:
        if len(values) != self.dof:
            raise ValueError(f"assignment has {len(values)} values, template needs {self.dof}")
        q = self.q
        cols = [[0] * self.n for _ in self.columns]
        for c, col in enumerate(self.entries):
            for r, e in enumerate(col):
                if e.kind is EntryKind.FIXED:
                    cols[c][r] = e.value % q
        for (c, r), v in zip(self.variables, values):
            cols[c][r] = v % q
        for group, members in self.groups.items():
            dep = [(c, r) for c, r in members if self.entries[c][r].dependent]
            (dc, dr), = dep
            target = self.entries[dc][dr].value
            cols[dc][dr] = (target - sum(cols[c][r] for c, r in members
                                         if (c, r) != (dc, dr))) % q
        return cols

    def instantiate(self, values: Sequence[int]) -> FieldMatrix:
        return FieldMatrix.from_columns(self.column_entries(values), self.q, rows=self.n)

    def render(self, split_names=None) -> str:
        """Symbolic matrix, one row per message."""
        rows = []
        for r in range(self.n):
            rows.append(" ".join(f"{self.entries[c][r].symbol(split_names):>5}"
                                 for c in range(len(self.columns))))
        return "\n".join(rows)

    # compilation for the search -------------------------------------------

    def unit_variables(self, unit: Sequence[int]) -> list[int]:
        cols = set(unit)
        return [v for v, (c, _) in enumerate(self.variables) if c in cols]

    def unit_options(self, unit: Sequence[int]):
        """All local assignments of a unit in lexicographic order, with packed columns.

        Each column is affine in the unit's variables, so the packed columns
        are a base vector plus one effect vector per variable.
        """
        q, n = self.q, self.n
        local = [self.variables[v] for v in self.unit_variables(unit)]
        pos = {c: i for i, c in enumerate(unit)}
        base = [[0] * n for _ in unit]
        for c in unit:
            for r, e in enumerate(self.entries[c]):
                if e.kind is EntryKind.FIXED:
                    base[pos[c]][r] = e.value % q
                elif e.kind is EntryKind.SPLIT and e.dependent:
                    base[pos[c]][r] = e.value % q
        effects = []
        for c, r in local:
            eff = [[0] * n for _ in unit]
            eff[pos[c]][r] = 1
            e = self.entries[c][r]
            if e.kind is EntryKind.SPLIT:
                for dc, dr in self.groups[e.group]:
                    if self.entries[dc][dr].dependent:
                        eff[pos[dc]][dr] = (eff[pos[dc]][dr] - 1) % q
            effects.append(eff)
        if q == 2:
            base_p = [pack(col, 2) for col in base]
            eff_p = [[pack(col, 2) for col in eff] for eff in effects]
            out = []
            for vals in product((0, 1), repeat=len(local)):
                vecs = list(base_p)
                for bit, eff in zip(vals, eff_p):
                    if bit:
                        for i, e in enumerate(eff):
                            vecs[i] ^= e
                out.append((vals, tuple(vecs)))
            return out
        out = []
        for vals in product(range(q), repeat=len(local)):
            vecs = []
            for i in range(len(unit)):
                col = list(base[i])
                for a, eff in zip(vals, effects):
                    if a:
                        col = [(x + a * y) % q for x, y in zip(col, eff[i])]
                vecs.append(tuple(col))
            out.append((vals, tuple(vecs)))
        return out
