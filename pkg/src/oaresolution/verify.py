"""Check R_max = t_max + 1 = min{i >= 1 : A_i > 0} on a concrete design.

The three sides come from separate modules: strength from independence of
blockings, resolution from restricted interaction spaces, and the minimum
positive index from the generalized wordlength pattern.
:func:`theorem_witness` builds the explicit non-orthogonal pair of contrasts
showing that resolution ``t_max + 2`` fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DesignError, FractionalDesign, FullFactorial
from .effects import DEFAULT_GUARD, ResourceGuard, interaction_space, resolution_max
from .exactlinalg import inner, project_onto
from .strength import strength_by_independence
from .wordlength import GwlpVector, gwlp_characters, gwlp_krawtchouk, min_positive_index

__all__ = ["TheoremWitness", "VerificationReport", "WitnessError", "theorem_witness", "verify_identities"]


class WitnessError(AssertionError):
    """The witness construction contradicted itself; indicates a bug."""


@dataclass(frozen=True)
class TheoremWitness:
    """Non-orthogonal restricted contrasts for effects ``I`` and ``J``.

    ``B = B' ∩ B''`` where ``B'`` fixes the factors in ``I`` at
    ``levels_I`` and ``B''`` fixes ``J`` at ``levels_J``. ``u`` and ``v``
    are ``1_B' - pi(B') 1`` and ``1_B'' - pi(B'') 1``; when ``J`` is empty
    (maximum strength 0) ``v`` is the constant function 1.
    """

    K: tuple[int, ...]
    I: tuple[int, ...]
    J: tuple[int, ...]
    levels_I: tuple[int, ...]
    levels_J: tuple[int, ...]
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    value: Fraction
    closed_form: Fraction
    component_value: Fraction | None = None


@dataclass(frozen=True)
class VerificationReport:
    t_max: int
    r_max: int
    min_gwlp_index: int
    gwlp: GwlpVector
    witness: TheoremWitness | None

    @property
    def identity_holds(self) -> bool:
        return self.r_max == self.t_max + 1 == self.min_gwlp_index


def _block_levels(f: FullFactorial, K: tuple[int, ...], block: int) -> tuple[int, ...]:
    levels = []
    for i in reversed(K):
        s = f.level_counts[i]
        levels.append(block % s)
        block //= s
    return tuple(reversed(levels))


def _centered_indicator(f: FullFactorial, fixed: dict[int, int]) -> tuple[Fraction, ...]:
    members = [all(cell[i] == r for i, r in fixed.items()) for cell in f.cells]
    mean = Fraction(sum(members), f.cell_count)
    return tuple(Fraction(int(m)) - mean for m in members)


def theorem_witness(f: FractionalDesign, deep: bool = False) -> TheoremWitness:
    """Certificate that ``f`` does not have resolution ``t_max + 2``.

    ``deep`` additionally projects ``u`` onto ``U_I`` and ``v`` onto ``U_J``
    and checks that the restricted components carry the whole inner product.
    """
    T = f.parent
    report = strength_by_independence(f)
    if report.witness is None:
        raise DesignError("no witness exists: the fraction is the full factorial (t_max = k)")
    K, block = report.witness
    rK = _block_levels(T, K, block)
    I, J = K[:1], K[1:]
    levels_I, levels_J = rK[:1], rK[1:]

    u = _centered_indicator(T, dict(zip(I, levels_I)))
    if J:
        v = _centered_indicator(T, dict(zip(J, levels_J)))
    else:
        v = (Fraction(1),) * T.cell_count

    S = f.runs
    value = inner([u[s] for s in S], [v[s] for s in S])
    fixed = dict(zip(K, rK))
    in_B = [all(T.cell_at(s)[i] == r for i, r in fixed.items()) for s in range(T.cell_count)]
    size_B = sum(in_B)
    hits = sum(in_B[s] for s in S)
    n = T.cell_count
    closed = n * (Fraction(hits, n) - Fraction(size_B, n) * Fraction(f.N, n))
    if value != closed:
        raise WitnessError(f"direct inner product {value} differs from closed form {closed}")
    if value == 0:
        raise WitnessError("witness inner product vanished")

    component = None
    if deep:
        uI = project_onto(interaction_space(T, I).space, u)
        vJ = project_onto(interaction_space(T, J).space, v)
        component = inner([uI[s] for s in S], [vJ[s] for s in S])
        if component != value:
            raise WitnessError(f"component inner product {component} differs from {value}")

    return TheoremWitness(K, I, J, levels_I, levels_J, u, v, value, closed, component)


def verify_identities(f: FractionalDesign, guard: ResourceGuard = DEFAULT_GUARD, deep: bool = False) -> VerificationReport:
    guard.check(f.parent)
    t_max = strength_by_independence(f).t_max
    r_max = resolution_max(f, guard)
    gwlp = gwlp_krawtchouk(f) if f.parent.is_symmetric else gwlp_characters(f)
    witness = theorem_witness(f, deep=deep) if t_max < f.k else None
    return VerificationReport(t_max, r_max, min_positive_index(gwlp), gwlp, witness)
