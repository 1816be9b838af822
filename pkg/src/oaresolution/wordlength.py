"""Generalized wordlength patterns.

Two independent routes:

* character sums, valid for any simple fraction: for every tuple ``u`` of
  levels, ``J(u) = sum_x prod_j exp(2 pi i u_j x_j / s_j)`` over the runs,
  and ``A_i = N^-2 * sum_{wt(u) = i} |J(u)|^2``. Evaluated in floating point,
  then reconstructed as rationals with denominator dividing ``N^2``.
* the MacWilliams transform of the distance distribution with Krawtchouk
  polynomials, exact, symmetric designs only.

For regular fractions the classical wordlength pattern counts the nonzero
vectors of the annihilator space by Hamming weight.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .constructors import affine_field
from .core import DesignError, FractionalDesign

__all__ = [
    "GwlpVector",
    "DistanceDistribution",
    "NumericError",
    "TOLERANCE",
    "gwlp_characters",
    "distance_distribution",
    "krawtchouk",
    "gwlp_krawtchouk",
    "dual_space",
    "regular_wlp",
    "min_positive_index",
]

TOLERANCE = 1e-9


class NumericError(ArithmeticError):
    """Floating evaluation of a character sum failed its consistency check."""


@dataclass(frozen=True)
class GwlpVector:
    """``A_0, ..., A_k`` as exact rationals.

    ``raw`` holds the floating values on the character path before
    reconstruction, ``None`` on exact paths.
    """

    A: tuple[Fraction, ...]
    raw: tuple[float, ...] | None = None

    @property
    def k(self) -> int:
        return len(self.A) - 1

    @property
    def pattern(self) -> tuple[Fraction, ...]:
        """The reported pattern ``(A_1, ..., A_k)``."""
        return self.A[1:]

    @property
    def total(self) -> Fraction:
        return sum(self.A, Fraction(0))


@dataclass(frozen=True)
class DistanceDistribution:
    """``B_d = #{ordered run pairs at Hamming distance d} / N``."""

    B: tuple[Fraction, ...]


def _reconstruct(value: float, max_den: int) -> Fraction:
    q = Fraction(value).limit_denominator(max_den)
    if abs(float(q) - value) > TOLERANCE:
        raise NumericError(f"{value!r} is not within {TOLERANCE} of a rational with denominator <= {max_den}")
    return q


def gwlp_characters(f: FractionalDesign, chunk: int = 1 << 20) -> GwlpVector:
    """GWLP from character sums over all level tuples; works for mixed levels."""
    levels = np.array(f.parent.level_counts)
    X = np.array(f.cells, dtype=np.int64)
    U = np.array(f.parent.cells, dtype=np.int64)
    weights = np.count_nonzero(U, axis=1)
    k, N = f.k, f.N
    sums = np.zeros(k + 1, dtype=np.complex128)
    rows = max(1, chunk // N)
    for start in range(0, len(U), rows):
        block = U[start : start + rows]
        # phase in turns: sum_j (u_j x_j mod s_j) / s_j
        turns = np.zeros((len(block), N))
        for j in range(k):
            turns += np.remainder(np.outer(block[:, j], X[:, j]), levels[j]) / levels[j]
        J = np.exp(2j * np.pi * turns).sum(axis=1)
        np.add.at(sums, weights[start : start + rows], J * np.conj(J))
    raw = sums / N**2
    if np.max(np.abs(raw.imag)) > TOLERANCE:
        raise NumericError(f"character sums left imaginary parts {raw.imag}")
    if np.min(raw.real) < -TOLERANCE:
        raise NumericError(f"negative wordlength entry {raw.real}")
    values = tuple(float(v) for v in raw.real)
    A = tuple(_reconstruct(v, N * N) for v in values)
    if A[0] != 1:
        raise NumericError(f"A_0 reconstructed as {A[0]}")
    return GwlpVector(A, values)


def _require_symmetric(f: FractionalDesign) -> int:
    if not f.parent.is_symmetric:
        raise DesignError("this computation needs a symmetric (single level count) design")
    return f.parent.level_counts[0]


def distance_distribution(f: FractionalDesign) -> DistanceDistribution:
    _require_symmetric(f)
    X = np.array(f.cells, dtype=np.int64)
    counts = np.zeros(f.k + 1, dtype=np.int64)
    for row in X:
        d = np.count_nonzero(X != row, axis=1)
        counts += np.bincount(d, minlength=f.k + 1)
    return DistanceDistribution(tuple(Fraction(int(c), f.N) for c in counts))


def krawtchouk(i: int, d: int, k: int, s: int) -> int:
    return sum((-1) ** r * (s - 1) ** (i - r) * math.comb(d, r) * math.comb(k - d, i - r) for r in range(i + 1))


def gwlp_krawtchouk(f: FractionalDesign) -> GwlpVector:
    """Exact GWLP via the MacWilliams transform of the distance distribution."""
    s = _require_symmetric(f)
    k = f.k
    B = distance_distribution(f).B
    A = tuple(
        sum((krawtchouk(i, d, k, s) * B[d] for d in range(k + 1)), Fraction(0)) / f.N for i in range(k + 1)
    )
    return GwlpVector(A)


def dual_space(f: FractionalDesign) -> list[tuple[int, ...]]:
    """All vectors of the annihilator space of a regular fraction, zero included.

    Uses the span of the defining equations when the fraction carries them,
    otherwise every ``c`` with ``c . x`` constant on the runs.
    """
    ring = affine_field(f)
    if ring is None:
        raise DesignError("the classical wordlength pattern needs a regular fraction")
    k = f.k
    if f.equations and f.provenance == "regular":
        (system,) = f.equations
        span = set()
        for mults in itertools.product(range(ring.order), repeat=len(system.rows)):
            v = (0,) * k
            for c, row in zip(mults, system.rows):
                v = ring.vadd(v, ring.scale(c, row))
            span.add(v)
        return sorted(span)
    cells = f.cells
    return [
        c
        for c in itertools.product(range(ring.order), repeat=k)
        if len({ring.dot(c, x) for x in cells}) == 1
    ]


def regular_wlp(f: FractionalDesign) -> GwlpVector:
    """Counts of defining words by length, ``A_0 = 1``."""
    counts = [0] * (f.k + 1)
    for v in dual_space(f):
        counts[sum(1 for c in v if c)] += 1
    return GwlpVector(tuple(Fraction(c) for c in counts))


def min_positive_index(g: GwlpVector | Sequence) -> int:
    """Smallest ``i >= 1`` with ``A_i > 0``; ``k + 1`` when there is none.

    Accepts a :class:`GwlpVector` or a plain pattern ``(A_1, ..., A_k)``.
    """
    pattern = g.pattern if isinstance(g, GwlpVector) else tuple(g)
    for i, a in enumerate(pattern, 1):
        if (a > TOLERANCE) if isinstance(a, float) else (a > 0):
            return i
    return len(pattern) + 1
