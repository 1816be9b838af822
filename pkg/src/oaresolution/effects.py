"""Interaction contrast spaces, their restrictions to a fraction, and aliasing.

``U_I`` is built bottom-up: the block-constant contrasts of the blocking by
``I`` that are orthogonal to every ``U_J`` with ``J`` a proper subset of
``I``. ``U_()`` is the constant functions. Restricting to the runs of a
fraction gives the spaces whose pairwise relation (equal / orthogonal /
neither) is complete / no / partial aliasing.

For regular fractions the same machinery runs at the level of pencils
(components of interaction such as ``AB^2C``).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import flint

from .constructors import affine_field
from .core import (
    DesignError,
    FractionalDesign,
    FullFactorial,
    Partition,
    blocking_for,
    normalize_subset,
    subsets,
    subset_label,
)
from .exactlinalg import Relation, Subspace, complement_within, relate
from .galois import Ring

__all__ = [
    "AliasStatus",
    "AliasReport",
    "EffectSpace",
    "RestrictedEffectSpace",
    "Pencil",
    "ResourceGuard",
    "ResourceGuardError",
    "DEFAULT_GUARD",
    "contrast_space",
    "interaction_space",
    "restrict_space",
    "classify_alias",
    "alias_table",
    "resolution_max",
    "enumerate_pencils",
    "pencil_partition",
    "pencil_spaces",
    "pencil_alias_table",
    "pencil_alias_classes",
]


class ResourceGuardError(DesignError):
    """The design is too large for exhaustive subset enumeration."""


@dataclass(frozen=True)
class ResourceGuard:
    max_factors: int = 10
    max_cells: int = 4096

    def check(self, f: FullFactorial) -> None:
        if f.k > self.max_factors or f.cell_count > self.max_cells:
            raise ResourceGuardError(
                f"design with k={f.k}, |T|={f.cell_count} exceeds the resource guard "
                f"(k <= {self.max_factors}, |T| <= {self.max_cells})"
            )


DEFAULT_GUARD = ResourceGuard()


class AliasStatus(enum.Enum):
    COMPLETE = "complete"
    UNALIASED = "unaliased"
    PARTIAL = "partial"


_STATUS = {
    Relation.EQUAL: AliasStatus.COMPLETE,
    Relation.ORTHOGONAL: AliasStatus.UNALIASED,
    Relation.NEITHER: AliasStatus.PARTIAL,
}


@dataclass(frozen=True)
class EffectSpace:
    I: tuple[int, ...]
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def label(self) -> str:
        return subset_label(self.I)


@dataclass(frozen=True)
class RestrictedEffectSpace:
    I: tuple[int, ...]
    space: Subspace
    design: FractionalDesign = field(repr=False)

    @property
    def dim(self) -> int:
        return self.space.dim


def _indicator_rows(p: Partition) -> flint.fmpq_mat:
    """Rows ``1_B - pi(B) 1`` for every block but the last."""
    n = p.parent.cell_count
    sizes = [0] * p.block_count
    for b in p.block_of:
        sizes[b] += 1
    m = flint.fmpq_mat(p.block_count - 1, n)
    for row in range(p.block_count - 1):
        mean = flint.fmpq(sizes[row], n)
        for cell, b in enumerate(p.block_of):
            m[row, cell] = (1 if b == row else 0) - mean
    return m


def contrast_space(p: Partition) -> Subspace:
    """Block-constant contrasts of ``p``; dimension ``|blocks| - 1``."""
    return Subspace(p.parent.cell_count, _indicator_rows(p))


@lru_cache(maxsize=None)
def _interaction(levels: tuple[int, ...], I: tuple[int, ...]) -> Subspace:
    f = FullFactorial(levels)
    n = f.cell_count
    if not I:
        return Subspace(n, [[1] * n])
    ambient = contrast_space(blocking_for(f, I))
    lower = Subspace(n)
    for size in range(1, len(I)):
        for J in itertools.combinations(I, size):
            lower = lower + _interaction(levels, J)
    return complement_within(ambient, lower)


def interaction_space(f: FullFactorial, I: Sequence[int]) -> EffectSpace:
    """``U_I``; the empty subset gives the constants."""
    I = normalize_subset(f, I, allow_empty=True)
    return EffectSpace(I, _interaction(f.level_counts, I))


def restrict_space(e: EffectSpace, S: FractionalDesign) -> RestrictedEffectSpace:
    if e.space.ambient_dim != S.parent.cell_count:
        raise DesignError("effect space and fraction belong to different factorials")
    return RestrictedEffectSpace(e.I, e.space.restrict(S.runs), S)


def classify_alias(a: RestrictedEffectSpace, b: RestrictedEffectSpace) -> AliasStatus:
    if a.design != b.design:
        raise DesignError("restricted spaces come from different fractions")
    return _STATUS[relate(a.space, b.space)]


@lru_cache(maxsize=1024)
def _restricted(S: FractionalDesign, I: tuple[int, ...]) -> RestrictedEffectSpace:
    return restrict_space(interaction_space(S.parent, I), S)


@dataclass
class AliasReport:
    """Pairwise aliasing of effects ``I != J`` (``()`` is the mean).

    ``pairs`` is keyed by ``(I, J)`` with ``I`` before ``J`` in size-then-lex
    order. ``r_max`` is the maximum Box-Hunter resolution.
    """

    design: FractionalDesign = field(repr=False)
    max_order: int
    pairs: dict[tuple[tuple[int, ...], tuple[int, ...]], AliasStatus]
    r_max: int

    def status(self, I: Sequence[int], J: Sequence[int]) -> AliasStatus:
        I, J = tuple(sorted(I)), tuple(sorted(J))
        return self.pairs[(I, J)] if (I, J) in self.pairs else self.pairs[(J, I)]

    def aliased_pairs(self):
        return {key: st for key, st in self.pairs.items() if st is not AliasStatus.UNALIASED}


def alias_table(
    f: FractionalDesign, max_order: int | None = None, guard: ResourceGuard = DEFAULT_GUARD
) -> AliasReport:
    guard.check(f.parent)
    order = f.k if max_order is None else max_order
    if not 0 <= order <= f.k:
        raise DesignError(f"max_order must be in 0..{f.k}")
    effects = subsets(f.k, order, include_empty=True)
    pairs = {}
    for I, J in itertools.combinations(effects, 2):
        pairs[(I, J)] = classify_alias(_restricted(f, I), _restricted(f, J))
    return AliasReport(f, order, pairs, resolution_max(f, guard))


def resolution_max(f: FractionalDesign, guard: ResourceGuard = DEFAULT_GUARD) -> int:
    """Smallest ``|I| + |J|`` over aliased pairs ``I != J``; ``k + 1`` if none.

    Pairs are scanned by increasing ``|I| + |J|`` so only the effects needed
    to reach the first aliased pair get constructed.
    """
    guard.check(f.parent)
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for I in subsets(f.k, include_empty=True):
        by_size.setdefault(len(I), []).append(I)
    for total in range(1, 2 * f.k):
        for p in range(0, total // 2 + 1):
            q = total - p
            if q > f.k:
                continue
            left = by_size[p]
            right = by_size[q]
            for I in left:
                for J in right:
                    if p == q and J <= I:
                        continue
                    if classify_alias(_restricted(f, I), _restricted(f, J)) is not AliasStatus.UNALIASED:
                        return total
    return f.k + 1


@dataclass(frozen=True, order=True)
class Pencil:
    """A nonzero coefficient vector modulo scalars, first nonzero entry 1."""

    coeffs: tuple[int, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    @property
    def label(self) -> str:
        out = []
        for i, c in enumerate(self.coeffs):
            if c:
                out.append(chr(ord("A") + i) + ("" if c == 1 else f"^{c}"))
        return "".join(out)

    def __str__(self):
        return self.label


def enumerate_pencils(k: int, ring: Ring) -> list[Pencil]:
    """All ``(s^k - 1)/(s - 1)`` pencils, ordered by support then coefficients."""
    if not ring.is_field:
        raise DesignError(f"pencils need a field, got {ring.label()}")
    out = []
    for I in subsets(k):
        for tail in itertools.product(range(1, ring.order), repeat=len(I) - 1):
            coeffs = [0] * k
            coeffs[I[0]] = 1
            for i, c in zip(I[1:], tail):
                coeffs[i] = c
            out.append(Pencil(tuple(coeffs)))
    return out


def pencil_partition(f: FullFactorial, pencil: Pencil, ring: Ring) -> Partition:
    """Blocks ``{x : c . x = v}`` for the ``s`` values ``v``."""
    return Partition(f, tuple(ring.dot(pencil.coeffs, cell) for cell in f.cells), ring.order)


def _regular_ring(f: FractionalDesign) -> Ring:
    ring = affine_field(f)
    if ring is None:
        raise DesignError("pencil analysis needs a regular fraction (an affine subspace over GF(s))")
    return ring


def pencil_spaces(f: FractionalDesign) -> list[tuple[Pencil, Subspace]]:
    ring = _regular_ring(f)
    T = f.parent
    return [(p, contrast_space(pencil_partition(T, p, ring))) for p in enumerate_pencils(f.k, ring)]


def _restricted_pencils(f: FractionalDesign):
    return [(p, space.restrict(f.runs)) for p, space in pencil_spaces(f)]


def pencil_alias_table(f: FractionalDesign) -> dict[tuple[Pencil, Pencil], AliasStatus]:
    restricted = _restricted_pencils(f)
    return {
        (p, q): _STATUS[relate(a, b)] for (p, a), (q, b) in itertools.combinations(restricted, 2)
    }


def pencil_alias_classes(f: FractionalDesign) -> tuple[list[list[Pencil]], list[Pencil]]:
    """Alias classes of pencils plus the defining class.

    A pencil is defining when its restricted space contains the constants.
    Raises ``AssertionError`` if any two pencils are partially aliased, which
    cannot happen for a regular fraction.
    """
    restricted = _restricted_pencils(f)
    ones = Subspace(f.N, [[1] * f.N])
    defining = [p for p, sp in restricted if sp.dim == 0 or sp.contains(ones)]
    defining_set = set(defining)
    classes: list[list[Pencil]] = []
    reps: list[Subspace] = []
    for p, sp in restricted:
        if p in defining_set:
            continue
        for cls, rep in zip(classes, reps):
            rel = relate(rep, sp)
            if rel is Relation.EQUAL:
                cls.append(p)
                break
            if rel is Relation.NEITHER:
                raise AssertionError(f"pencils {cls[0]} and {p} are partially aliased")
        else:
            classes.append([p])
            reps.append(sp)
    return classes, defining
