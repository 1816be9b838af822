"""Exact rational linear algebra on vectors indexed by cells.

Matrices are FLINT ``fmpq_mat`` objects internally; the public functions
accept plain sequences of ``int``/``Fraction`` rows as well. A
:class:`Subspace` keeps its basis as the nonzero rows of a reduced
row-echelon form, so two subspaces are equal iff their bases are identical.
No floating point is used anywhere in this module.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

import flint

Vector = Sequence[Union[int, Fraction]]
MatrixLike = Union["flint.fmpq_mat", Sequence[Vector]]

__all__ = [
    "LinalgError",
    "Relation",
    "Subspace",
    "as_matrix",
    "to_fraction",
    "inner",
    "rref",
    "rank",
    "nullspace",
    "complement_within",
    "is_orthogonal",
    "project_onto",
    "relate",
]


class LinalgError(ValueError):
    pass


class Relation(enum.Enum):
    EQUAL = "equal"
    ORTHOGONAL = "orthogonal"
    NEITHER = "neither"


def _q(x) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def to_fraction(x) -> Fraction:
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def as_matrix(m: MatrixLike, ncols: int | None = None) -> flint.fmpq_mat:
    if isinstance(m, flint.fmpq_mat):
        return m
    rows = list(m)
    if not rows:
        if ncols is None:
            raise LinalgError("ncols required for an empty matrix")
        return flint.fmpq_mat(0, ncols)
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise LinalgError("ragged matrix")
    return flint.fmpq_mat(len(rows), n, [_q(x) for r in rows for x in r])


def inner(u: Vector, v: Vector) -> Fraction:
    if len(u) != len(v):
        raise LinalgError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v) if a and b), Fraction(0))


def _nonzero_rref(m: flint.fmpq_mat) -> tuple[flint.fmpq_mat, list[int]]:
    if m.nrows() == 0:
        return m, []
    red, r = m.rref()
    n = m.ncols()
    pivots = []
    for i in range(r):
        pivots.append(next(j for j in range(n) if red[i, j] != 0))
    if r == m.nrows():
        return red, pivots
    return flint.fmpq_mat(r, n, [red[i, j] for i in range(r) for j in range(n)]), pivots


def rref(m: MatrixLike) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form: the nonzero rows and the pivot columns."""
    red, pivots = _nonzero_rref(as_matrix(m, ncols=0))
    return [[to_fraction(x) for x in row] for row in red.tolist()], pivots


def rank(m: MatrixLike) -> int:
    mat = as_matrix(m, ncols=0)
    return mat.rank() if mat.nrows() and mat.ncols() else 0


def _nullspace(m: flint.fmpq_mat) -> flint.fmpq_mat:
    n = m.ncols()
    red, pivots = _nonzero_rref(m)
    free = [j for j in range(n) if j not in set(pivots)]
    out = flint.fmpq_mat(len(free), n)
    for row_idx, j in enumerate(free):
        out[row_idx, j] = 1
        for i, pc in enumerate(pivots):
            out[row_idx, pc] = -red[i, j]
    return out


def nullspace(m: MatrixLike, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}``; ``ncols`` is needed when ``m`` has no rows."""
    ns = _nullspace(as_matrix(m, ncols))
    return [[to_fraction(x) for x in row] for row in ns.tolist()]


class Subspace:
    """Span of some vectors in Q^ambient_dim, stored in canonical form."""

    def __init__(self, ambient_dim: int, vectors: MatrixLike = ()):
        m = as_matrix(vectors, ncols=ambient_dim)
        if m.ncols() != ambient_dim:
            raise LinalgError(f"vectors of length {m.ncols()} in ambient dimension {ambient_dim}")
        self.ambient_dim = ambient_dim
        self.mat, self.pivots = _nonzero_rref(m)

    @property
    def dim(self) -> int:
        return self.mat.nrows()

    @cached_property
    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(to_fraction(x) for x in row) for row in self.mat.tolist())

    @cached_property
    def _key(self) -> tuple:
        return (self.ambient_dim, tuple(str(x) for x in self.mat.entries()))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        if other.dim == 0:
            return True
        return _stack(self.mat, other.mat).rank() == self.dim

    def restrict(self, coords: Sequence[int]) -> "Subspace":
        """Image under the coordinate projection onto ``coords``."""
        select = flint.fmpq_mat(self.ambient_dim, len(coords))
        for col, i in enumerate(coords):
            select[i, col] = 1
        return Subspace(len(coords), self.mat * select)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace(self.ambient_dim, _stack(self.mat, other.mat))


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise LinalgError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def _stack(a: flint.fmpq_mat, b: flint.fmpq_mat) -> flint.fmpq_mat:
    n = a.ncols()
    return flint.fmpq_mat(a.nrows() + b.nrows(), n, list(a.entries()) + list(b.entries()))


def complement_within(ambient: Subspace, sub: Subspace) -> Subspace:
    """``{x in ambient : (x, y) = 0 for all y in sub}``."""
    if not ambient.contains(sub):
        raise LinalgError("subspace is not contained in the ambient space")
    if sub.dim == 0:
        return ambient
    gram = sub.mat * ambient.mat.transpose()
    coeffs = _nullspace(gram)
    out = Subspace(ambient.ambient_dim, coeffs * ambient.mat)
    if out.dim != ambient.dim - sub.dim:
        raise LinalgError("orthogonal complement has the wrong dimension")
    return out


def project_onto(space: Subspace, v: Vector) -> list[Fraction]:
    """Orthogonal projection of ``v`` onto ``space``."""
    if len(v) != space.ambient_dim:
        raise LinalgError("vector length does not match the ambient dimension")
    if space.dim == 0:
        return [Fraction(0)] * space.ambient_dim
    B = space.mat
    vec = flint.fmpq_mat(space.ambient_dim, 1, [_q(x) for x in v])
    coeffs = (B * B.transpose()).solve(B * vec)
    return [to_fraction(x) for x in (B.transpose() * coeffs).entries()]


def is_orthogonal(a: Subspace, b: Subspace) -> bool:
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return True
    return all(x == 0 for x in (a.mat * b.mat.transpose()).entries())


def relate(a: Subspace, b: Subspace) -> Relation:
    """Classify two subspaces as equal, orthogonal, or neither.

    A zero space is orthogonal to every nonzero space and equal to another
    zero space. Equality is decided both by canonical form and by rank of
    the stacked bases; the two must agree.
    """
    _check_ambient(a, b)
    if a.dim == 0 and b.dim == 0:
        return Relation.EQUAL
    if is_orthogonal(a, b):
        return Relation.ORTHOGONAL
    if a.dim == b.dim:
        same_form = a == b
        same_rank = _stack(a.mat, b.mat).rank() == a.dim
        if same_form != same_rank:
            raise LinalgError("canonical-form and rank equality tests disagree")
        if same_form:
            return Relation.EQUAL
    return Relation.NEITHER
