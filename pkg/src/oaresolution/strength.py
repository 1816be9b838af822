"""Maximum strength of a simple fraction, computed two independent ways."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .constructors import project
from .core import FractionalDesign, blocking_for, is_independent

__all__ = ["StrengthReport", "strength_by_projection", "strength_by_independence", "cross_check_strength"]


@dataclass(frozen=True)
class StrengthReport:
    """``t_max`` plus the index of every subset up to ``t_max``.

    ``witness`` is ``(K, block)`` for the first subset ``K`` of size
    ``t_max + 1`` that fails, with ``block`` the first offending block id of
    the blocking by ``K``; it is ``None`` when ``t_max == k``.
    ``levels`` is the per-size pass/fail sequence for sizes ``1..k`` as far as
    it was checked.
    """

    t_max: int
    indices: dict[tuple[int, ...], Fraction] = field(default_factory=dict)
    witness: tuple[tuple[int, ...], int] | None = None
    levels: tuple[bool, ...] = ()

    @property
    def index(self) -> Fraction | None:
        """Common index at ``t_max`` when every subset of that size shares it."""
        vals = {v for I, v in self.indices.items() if len(I) == self.t_max}
        if self.t_max == 0:
            return None
        return vals.pop() if len(vals) == 1 else None


def _projection_witness(f: FractionalDesign, K: tuple[int, ...]) -> int:
    counts = project(f, K)
    sizes = [f.parent.level_counts[i] for i in K]
    lam = Fraction(f.N, math.prod(sizes))
    for code, cell in enumerate(itertools.product(*(range(s) for s in sizes))):
        if counts.get(cell, 0) != lam:
            return code
    raise AssertionError("no failing block in a failing projection")


def strength_by_projection(f: FractionalDesign) -> StrengthReport:
    """Largest t such that every t-factor projection is lambda_I full copies."""
    levels = f.parent.level_counts
    indices: dict[tuple[int, ...], Fraction] = {}
    passes = []
    for t in range(1, f.k + 1):
        failing = None
        for I in itertools.combinations(range(f.k), t):
            counts = project(f, I)
            full = math.prod(levels[i] for i in I)
            lam = Fraction(f.N, full)
            if len(counts) != full or any(c != lam for c in counts.values()):
                failing = I
                break
            indices[I] = lam
        passes.append(failing is None)
        if failing is not None:
            for I in list(indices):
                if len(I) == t:
                    del indices[I]
            return StrengthReport(t - 1, indices, (failing, _projection_witness(f, failing)), tuple(passes))
    return StrengthReport(f.k, indices, None, tuple(passes))


def strength_by_independence(f: FractionalDesign) -> StrengthReport:
    """Largest t such that the runs are independent of every t-factor blocking."""
    T = f.parent
    indices: dict[tuple[int, ...], Fraction] = {}
    passes = []
    for t in range(1, f.k + 1):
        level_indices = {}
        for I in itertools.combinations(range(f.k), t):
            blocking = blocking_for(T, I)
            ok, block = is_independent(T, f.runs, blocking)
            if not ok:
                passes.append(False)
                return StrengthReport(t - 1, indices, (I, block), tuple(passes))
            # independence makes every block hold N / |blocks| runs
            level_indices[I] = Fraction(f.N, blocking.block_count)
        passes.append(True)
        indices.update(level_indices)
    return StrengthReport(f.k, indices, None, tuple(passes))


def cross_check_strength(f: FractionalDesign) -> bool:
    a, b = strength_by_projection(f), strength_by_independence(f)
    return a.t_max == b.t_max and a.witness == b.witness
