"""Building, combining, projecting, and (de)serializing simple fractions.

OA design file format::

    # optional comment lines
    k s_1 s_2 ... s_k
    a_11 a_12 ... a_1k
    ...

Levels are 0-based. Rows may come in any order; written files are sorted.
"""

from __future__ import annotations

import io
import itertools
import os
from collections import Counter
from typing import Iterable, Sequence, TextIO

from .core import DesignError, FractionalDesign, FullFactorial, normalize_subset
from .galois import GF, LinearSystem, Ring, Zmod, factor_prime_power, solution_set

__all__ = [
    "regular_fraction",
    "modular_fraction",
    "full_factorial_design",
    "juxtapose",
    "project",
    "read_design",
    "write_design",
    "parse_design",
    "format_design",
    "affine_field",
]


def _system(ring: Ring, k: int, equations: Sequence[tuple[Sequence[int], int]]) -> LinearSystem:
    rows, rhs = [], []
    for coeffs, b in equations:
        if len(coeffs) != k:
            raise DesignError(f"equation has {len(coeffs)} coefficients for {k} factors")
        rows.append(tuple(coeffs))
        rhs.append(b)
    return LinearSystem(ring, tuple(rows), tuple(rhs))


def regular_fraction(s: int, k: int, equations, modulus=None) -> FractionalDesign:
    """Solution set over GF(s) of ``[(coeffs, rhs), ...]``."""
    return solution_set(_system(GF(s, modulus), k, equations))


def modular_fraction(n: int, k: int, equations) -> FractionalDesign:
    """Solution set over Z/n; regular exactly when ``n`` is prime."""
    return solution_set(_system(Zmod(n), k, equations))


def full_factorial_design(level_counts: Sequence[int]) -> FractionalDesign:
    f = FullFactorial(tuple(level_counts))
    return FractionalDesign(f, tuple(range(f.cell_count)))


def juxtapose(a: FractionalDesign, b: FractionalDesign) -> FractionalDesign:
    """Disjoint union of two fractions of the same factorial."""
    if a.parent != b.parent:
        raise DesignError("fractions belong to different factorials")
    overlap = a.run_set & b.run_set
    if overlap:
        raise DesignError(f"non-simple design: {len(overlap)} runs appear in both fractions")
    return FractionalDesign(a.parent, tuple(sorted(a.runs + b.runs)))


def project(f: FractionalDesign, I: Iterable[int]) -> Counter:
    """Multiset of the runs' coordinates on factors ``I``."""
    idx = normalize_subset(f.parent, I)
    return Counter(tuple(cell[i] for i in idx) for cell in f.cells)


def affine_field(f: FractionalDesign) -> Ring | None:
    """The field over which ``f`` is an affine subspace, if any.

    Used to treat imported symmetric designs as regular fractions. Returns
    ``None`` for mixed levels, non-prime-power ``s``, or non-affine run sets.
    """
    if f.provenance == "regular":
        return f.ring
    if f.provenance == "modular" or not f.parent.is_symmetric:
        return None
    s = f.parent.level_counts[0]
    if factor_prime_power(s) is None:
        return None
    ring = GF(s)
    n, k = f.N, f.k
    dim = 0
    while s**dim < n:
        dim += 1
    if s**dim != n:
        return None
    base = f.cells[0]
    neg = ring.neg
    shifted = {ring.vadd(c, tuple(neg[x] for x in base)) for c in f.cells}
    for u, v in itertools.product(shifted, repeat=2):
        if ring.vadd(u, v) not in shifted:
            return None
    for c in range(2, s):
        if any(ring.scale(c, u) not in shifted for u in shifted):
            return None
    return ring


def parse_design(text: str) -> FractionalDesign:
    header = None
    cells = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise DesignError(f"line {lineno}: expected integers, got {line!r}") from None
        if header is None:
            if len(values) < 2 or values[0] != len(values) - 1:
                raise DesignError(f"line {lineno}: header must be 'k s_1 ... s_k'")
            header = FullFactorial(tuple(values[1:]))
            continue
        if len(values) != header.k:
            raise DesignError(f"line {lineno}: expected {header.k} levels, got {len(values)}")
        for a, s in zip(values, header.level_counts):
            if not 0 <= a < s:
                raise DesignError(f"line {lineno}: level {a} out of range 0..{s - 1}")
        cells.append(tuple(values))
    if header is None:
        raise DesignError("missing header line")
    if not cells:
        raise DesignError("design has no runs")
    return FractionalDesign.from_cells(header, cells)


def format_design(f: FractionalDesign, comments: Sequence[str] = ()) -> str:
    out = io.StringIO()
    for c in comments:
        out.write(f"# {c}\n")
    out.write(" ".join(map(str, (f.k, *f.parent.level_counts))) + "\n")
    for cell in f.cells:
        out.write(" ".join(map(str, cell)) + "\n")
    return out.getvalue()


def read_design(source: str | os.PathLike | TextIO) -> FractionalDesign:
    if hasattr(source, "read"):
        return parse_design(source.read())
    with open(source) as fh:
        return parse_design(fh.read())


def write_design(f: FractionalDesign, target: str | os.PathLike | TextIO, comments: Sequence[str] = ()) -> None:
    text = format_design(f, comments)
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w") as fh:
            fh.write(text)
