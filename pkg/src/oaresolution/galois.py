"""Finite rings GF(p^m) and Z/n with table-driven arithmetic.

Elements are coded as integers ``0..order-1``. For GF(p^m) the code of the
polynomial ``a_0 + a_1 x + ... + a_{m-1} x^{m-1}`` is ``sum(a_i * p**i)``, so
for prime fields the code is the residue itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .core import DesignError, FractionalDesign, FullFactorial

__all__ = [
    "Ring",
    "GF",
    "Zmod",
    "LinearSystem",
    "factor_prime_power",
    "solution_set",
]


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` for prime ``p``, else ``None``."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Multiply coefficient lists (low degree first) modulo a monic ``mod``."""
    m = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for j in range(m + 1):
                prod[d - m + j] = (prod[d - m + j] - c * mod[j]) % p
    return (prod + [0] * m)[:m]


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    m = len(poly) - 1
    if m == 1:
        return True
    # no monic factor of degree 1..m//2
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            rem = list(poly)
            for top in range(m, d - 1, -1):
                c = rem[top]
                if c:
                    for j in range(d + 1):
                        rem[top - d + j] = (rem[top - d + j] - c * divisor[j]) % p
            if not any(rem[:d]):
                return False
    return True


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``m`` (in code order) whose root is primitive."""
    order = p**m
    for tail in itertools.product(range(p), repeat=m):
        poly = list(reversed(tail)) + [1]
        if poly[0] == 0 or not _is_irreducible(poly, p):
            continue
        x = [0, 1] + [0] * (m - 2) if m > 1 else [0]
        power, e = x, 1
        while power != [1] + [0] * (m - 1):
            power = _poly_mulmod(power, x, poly, p)
            e += 1
        if e == order - 1:
            return tuple(poly)
    raise DesignError(f"no primitive polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class Ring:
    """A finite commutative ring given by its operation tables.

    ``kind`` is ``"GF"`` or ``"Z"``; ``modulus`` is the defining polynomial
    (coefficients low degree first) for GF(p^m) with m > 1.
    """

    kind: str
    order: int
    modulus: tuple[int, ...] = ()
    add: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)
    mul: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    @property
    def is_field(self) -> bool:
        return self.kind == "GF" or factor_prime_power(self.order) == (self.order, 1)

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(next(b for b in range(self.order) if self.add[a][b] == 0) for a in range(self.order))

    @cached_property
    def inv(self) -> dict[int, int]:
        """Inverses of the units only."""
        out = {}
        for a in range(self.order):
            for b in range(self.order):
                if self.mul[a][b] == 1:
                    out[a] = b
                    break
        return out

    def dot(self, coeffs: Sequence[int], x: Sequence[int]) -> int:
        acc = 0
        for c, xi in zip(coeffs, x):
            if c and xi:
                acc = self.add[acc][self.mul[c][xi]]
        return acc

    def scale(self, c: int, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.mul[c][x] for x in v)

    def vadd(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.add[a][b] for a, b in zip(u, v))

    def label(self) -> str:
        return f"GF({self.order})" if self.kind == "GF" else f"Z/{self.order}"


def GF(q: int, modulus: Sequence[int] | None = None) -> Ring:
    pm = factor_prime_power(q)
    if pm is None:
        raise DesignError(f"GF({q}) does not exist: {q} is not a prime power")
    p, m = pm
    if m == 1:
        if modulus:
            raise DesignError("prime fields take no modulus polynomial")
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
        return Ring("GF", q, (), add, mul)
    if modulus is None:
        mod = _default_modulus(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise DesignError(f"modulus must be monic of degree {m}, low degree first")
        if not _is_irreducible(mod, p):
            raise DesignError(f"polynomial {mod} is reducible over GF({p})")

    def poly(code: int) -> list[int]:
        return [(code // p**i) % p for i in range(m)]

    def code(coeffs: Sequence[int]) -> int:
        return sum(c * p**i for i, c in enumerate(coeffs))

    add = tuple(
        tuple(code([(x + y) % p for x, y in zip(poly(a), poly(b))]) for b in range(q)) for a in range(q)
    )
    mul = tuple(tuple(code(_poly_mulmod(poly(a), poly(b), list(mod), p)) for b in range(q)) for a in range(q))
    return Ring("GF", q, mod, add, mul)


def Zmod(n: int) -> Ring:
    if n < 2:
        raise DesignError("modulus must be at least 2")
    add = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    mul = tuple(tuple((a * b) % n for b in range(n)) for a in range(n))
    return Ring("Z", n, (), add, mul)


@dataclass(frozen=True)
class LinearSystem:
    """Equations ``rows[e] . x = rhs[e]`` over ``ring``."""

    ring: Ring
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in r) for r in self.rows)
        rhs = tuple(int(b) for b in self.rhs)
        if not rows:
            raise DesignError("a linear system needs at least one equation")
        if len(rows) != len(rhs):
            raise DesignError("one right-hand side per equation")
        k = len(rows[0])
        if k == 0 or any(len(r) != k for r in rows):
            raise DesignError("all equations need the same number of coefficients")
        q = self.ring.order
        for v in itertools.chain(itertools.chain.from_iterable(rows), rhs):
            if not 0 <= v < q:
                raise DesignError(f"value {v} is not an element of {self.ring.label()}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", rhs)

    @property
    def k(self) -> int:
        return len(self.rows[0])


def solution_set(system: LinearSystem) -> FractionalDesign:
    """All cells of the ``s^k`` factorial satisfying every equation."""
    ring = system.ring
    parent = FullFactorial((ring.order,) * system.k)
    runs = tuple(
        idx
        for idx, cell in enumerate(parent.cells)
        if all(ring.dot(row, cell) == b for row, b in zip(system.rows, system.rhs))
    )
    if not runs:
        raise DesignError("inconsistent system: the solution set is empty")
    provenance = "regular" if ring.is_field else "modular"
    return FractionalDesign(parent, runs, provenance=provenance, ring=ring, equations=(system,))
