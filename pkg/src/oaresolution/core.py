"""Cells of a full factorial, blockings by factor subsets, and independence.

Cells are coded as integer tuples ``(a_1, ..., a_k)`` with ``0 <= a_i < s_i``
and indexed lexicographically with factor 0 most significant, so the cells of
a 3^3 factorial come out as 000, 001, 002, 010, ...

Factor subsets are tuples of 0-based factor indices in increasing order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "FullFactorial",
    "FractionalDesign",
    "Partition",
    "DesignError",
    "enumerate_cells",
    "blocking_for",
    "trivial_partition",
    "discrete_partition",
    "join",
    "pi",
    "is_independent",
    "normalize_subset",
    "subsets",
    "subset_label",
]


class DesignError(ValueError):
    """Raised for invalid factorials, fractions, or factor subsets."""


@dataclass(frozen=True)
class FullFactorial:
    level_counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(s) for s in self.level_counts)
        if not counts:
            raise DesignError("a factorial needs at least one factor")
        if any(s < 2 for s in counts):
            raise DesignError(f"every factor needs at least 2 levels, got {counts}")
        object.__setattr__(self, "level_counts", counts)

    @property
    def k(self) -> int:
        return len(self.level_counts)

    @property
    def cell_count(self) -> int:
        return math.prod(self.level_counts)

    @property
    def is_symmetric(self) -> bool:
        return len(set(self.level_counts)) == 1

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        acc = 1
        for s in reversed(self.level_counts):
            strides.append(acc)
            acc *= s
        return tuple(reversed(strides))

    def index_of(self, cell: Sequence[int]) -> int:
        if len(cell) != self.k:
            raise DesignError(f"cell {tuple(cell)} does not have {self.k} coordinates")
        idx = 0
        for a, s, stride in zip(cell, self.level_counts, self._strides):
            if not 0 <= a < s:
                raise DesignError(f"level {a} out of range 0..{s - 1} in cell {tuple(cell)}")
            idx += a * stride
        return idx

    def cell_at(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.cell_count:
            raise DesignError(f"cell index {index} out of range")
        return tuple((index // stride) % s for s, stride in zip(self.level_counts, self._strides))

    @cached_property
    def cells(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(s) for s in self.level_counts)))


@dataclass(frozen=True)
class FractionalDesign:
    """A simple fraction: a duplicate-free set of cells of ``parent``.

    ``provenance`` records how the fraction was produced: ``"regular"`` for a
    solution set over GF(s), ``"modular"`` for one over Z/n with n composite,
    ``None`` otherwise. ``ring`` and ``equations`` carry the defining system
    when there is one.
    """

    parent: FullFactorial
    runs: tuple[int, ...]
    provenance: str | None = None
    ring: object = None
    equations: tuple = ()

    def __post_init__(self):
        runs = tuple(int(r) for r in self.runs)
        if not runs:
            raise DesignError("a fraction needs at least one run")
        if any(b <= a for a, b in zip(runs, runs[1:])):
            raise DesignError("runs must be strictly increasing (non-simple design?)")
        if runs[0] < 0 or runs[-1] >= self.parent.cell_count:
            raise DesignError("run index outside the full factorial")
        object.__setattr__(self, "runs", runs)

    @classmethod
    def from_cells(cls, parent: FullFactorial, cells: Iterable[Sequence[int]], **kw) -> "FractionalDesign":
        idx = [parent.index_of(c) for c in cells]
        if len(set(idx)) != len(idx):
            raise DesignError("non-simple design: duplicate runs")
        return cls(parent, tuple(sorted(idx)), **kw)

    @property
    def N(self) -> int:
        return len(self.runs)

    @property
    def k(self) -> int:
        return self.parent.k

    @cached_property
    def run_set(self) -> frozenset[int]:
        return frozenset(self.runs)

    @cached_property
    def cells(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.parent.cell_at(r) for r in self.runs)

    def __eq__(self, other):
        if not isinstance(other, FractionalDesign):
            return NotImplemented
        return self.parent == other.parent and self.runs == other.runs

    def __hash__(self):
        return hash((self.parent, self.runs))

    def __repr__(self):
        return f"FractionalDesign(levels={self.parent.level_counts}, N={self.N})"


@dataclass(frozen=True)
class Partition:
    parent: FullFactorial
    block_of: tuple[int, ...]
    block_count: int

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for cell, b in enumerate(self.block_of):
            out[b].append(cell)
        return out

    def same_as(self, other: "Partition") -> bool:
        """Equality as set partitions, ignoring block numbering."""
        if self.parent != other.parent or self.block_count != other.block_count:
            return False
        return _canonical_labels(self.block_of) == _canonical_labels(other.block_of)


def _canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(b, len(seen)) for b in labels)


def normalize_subset(f: FullFactorial, I: Iterable[int], allow_empty: bool = False) -> tuple[int, ...]:
    subset = tuple(sorted(set(int(i) for i in I)))
    if not subset and not allow_empty:
        raise DesignError("factor subset must be nonempty")
    if subset and (subset[0] < 0 or subset[-1] >= f.k):
        raise DesignError(f"factor subset {subset} outside 0..{f.k - 1}")
    return subset


def subsets(k: int, max_size: int | None = None, include_empty: bool = False) -> list[tuple[int, ...]]:
    """All factor subsets ordered by size, then lexicographically."""
    top = k if max_size is None else min(k, max_size)
    out = [()] if include_empty else []
    for size in range(1, top + 1):
        out.extend(itertools.combinations(range(k), size))
    return out


def subset_label(I: Sequence[int]) -> str:
    """Letter word for a factor subset, e.g. (0, 2) -> 'AC'; the empty set is 'I'."""
    if not I:
        return "I"
    return "".join(chr(ord("A") + i) for i in I)


def enumerate_cells(f: FullFactorial) -> list[tuple[int, ...]]:
    return list(f.cells)


def _blocking(f: FullFactorial, I: tuple[int, ...]) -> Partition:
    counts = [f.level_counts[i] for i in I]
    labels = []
    for cell in f.cells:
        b = 0
        for i, s in zip(I, counts):
            b = b * s + cell[i]
        labels.append(b)
    return Partition(f, tuple(labels), math.prod(counts))


def blocking_for(f: FullFactorial, I: Iterable[int]) -> Partition:
    """The join of the single-factor blockings over ``I``.

    Two cells share a block iff they agree on every factor in ``I``; the block
    id is the mixed-radix code of those coordinates.
    """
    return _blocking(f, normalize_subset(f, I))


def trivial_partition(f: FullFactorial) -> Partition:
    """The one-block partition {T}, used internally as the empty join."""
    return Partition(f, (0,) * f.cell_count, 1)


def discrete_partition(f: FullFactorial) -> Partition:
    return Partition(f, tuple(range(f.cell_count)), f.cell_count)


def join(p: Partition, q: Partition) -> Partition:
    if p.parent != q.parent:
        raise DesignError("cannot join partitions of different factorials")
    ids: dict[tuple[int, int], int] = {}
    labels = tuple(ids.setdefault(pair, len(ids)) for pair in zip(p.block_of, q.block_of))
    return Partition(p.parent, labels, len(ids))


def pi(f: FullFactorial, cells: Iterable[int]) -> Fraction:
    """Uniform measure |A|/|T| of a set of cell indices."""
    return Fraction(len(set(cells)), f.cell_count)


def is_independent(f: FullFactorial, A: Iterable[int], p: Partition) -> tuple[bool, int | None]:
    """Test ``|A ∩ C| |T| == |A| |C|`` for every block ``C`` of ``p``.

    Returns ``(True, None)`` or ``(False, b)`` where ``b`` is the first
    violating block id.
    """
    if p.parent != f:
        raise DesignError("partition belongs to a different factorial")
    A = set(A)
    hits = [0] * p.block_count
    sizes = [0] * p.block_count
    for cell, b in enumerate(p.block_of):
        sizes[b] += 1
        if cell in A:
            hits[b] += 1
    T, n = f.cell_count, len(A)
    for b in range(p.block_count):
        if hits[b] * T != n * sizes[b]:
            return False, b
    return True, None
