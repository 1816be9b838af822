import itertools
import math
from fractions import Fraction

import pytest

from oaresolution.constructors import full_factorial_design, parse_design
from oaresolution.core import DesignError
from oaresolution.wordlength import (
    GwlpVector,
    NumericError,
    _reconstruct,
    distance_distribution,
    dual_space,
    gwlp_characters,
    gwlp_krawtchouk,
    krawtchouk,
    min_positive_index,
    regular_wlp,
)

from catalog import catalog, random_designs


def pair_polynomial_gwlp(f):
    """Exact GWLP from run pairs: coefficients of prod_j (1 + (s_j - 1) z) or (1 - z)."""
    k = f.k
    total = [Fraction(0)] * (k + 1)
    for x, y in itertools.product(f.cells, repeat=2):
        poly = [1]
        for j, s in enumerate(f.parent.level_counts):
            factor = (1, s - 1) if x[j] == y[j] else (1, -1)
            poly = [
                sum(poly[i - e] * factor[e] for e in (0, 1) if 0 <= i - e < len(poly)) for i in range(len(poly) + 1)
            ]
        for i, c in enumerate(poly):
            total[i] += c
    return tuple(c / f.N**2 for c in total)


def test_four4(four4):
    exact = gwlp_krawtchouk(four4)
    assert exact.pattern == (0, 0, 1, 2)
    chars = gwlp_characters(four4)
    assert chars.A == exact.A
    assert all(abs(r - float(a)) < 1e-9 for r, a in zip(chars.raw, exact.A))
    assert distance_distribution(four4).B == (1, 1, 15, 27, 20)


def test_eighteen(eighteen, components):
    assert gwlp_krawtchouk(eighteen).pattern == (0, 0, Fraction(1, 2))
    assert gwlp_characters(eighteen).pattern == (0, 0, Fraction(1, 2))
    for c in components:
        assert regular_wlp(c).pattern == (0, 0, 2)
        assert gwlp_krawtchouk(c).pattern == (0, 0, 2)
        assert distance_distribution(c).B == (1, 0, 6, 2)
    assert dual_space(components[0]) == [(0, 0, 0), (1, 1, 2), (2, 2, 1)]


def test_dual_space_on_imported_file(gf3):
    imported = parse_design("3 3 3 3\n" + "\n".join(" ".join(map(str, c)) for c in gf3.cells))
    assert dual_space(imported) == dual_space(gf3)
    assert regular_wlp(imported).pattern == (0, 0, 2)
    with pytest.raises(DesignError):
        regular_wlp(parse_design("2 2 2\n0 0\n0 1\n1 0\n"))


def test_full_factorial_and_single_run():
    g = gwlp_krawtchouk(full_factorial_design((3, 3)))
    assert g.A == (1, 0, 0)
    assert min_positive_index(g) == 3
    one = parse_design("3 3 3 3\n0 1 2\n")
    g = gwlp_krawtchouk(one)
    assert g.pattern == (6, 12, 8)
    assert g.total == 27


def test_krawtchouk_small():
    assert krawtchouk(0, 2, 3, 3) == 1
    assert krawtchouk(1, 0, 3, 3) == 6
    assert krawtchouk(1, 1, 3, 2) == 1
    # orthogonality: sum_d C(k,d) (s-1)^d P_i(d) P_j(d) = s^k C(k,i) (s-1)^i [i = j]
    k, s = 4, 3
    for i, j in itertools.product(range(k + 1), repeat=2):
        lhs = sum(math.comb(k, d) * (s - 1) ** d * krawtchouk(i, d, k, s) * krawtchouk(j, d, k, s) for d in range(k + 1))
        assert lhs == (s**k * math.comb(k, i) * (s - 1) ** i if i == j else 0)


def test_paths_agree_with_pair_oracle():
    designs = [f for _, f in catalog()] + random_designs(80, seed=3)
    for f in designs:
        oracle = pair_polynomial_gwlp(f)
        assert gwlp_characters(f).A == oracle
        if f.parent.is_symmetric:
            assert gwlp_krawtchouk(f).A == oracle
        assert sum(oracle) == Fraction(f.parent.cell_count, f.N)


def test_mixed_levels_reject_krawtchouk():
    f = full_factorial_design((2, 3))
    with pytest.raises(DesignError):
        gwlp_krawtchouk(f)
    assert gwlp_characters(f).A == (1, 0, 0)


def test_min_positive_index():
    assert min_positive_index((0, 0, Fraction(1, 2))) == 3
    assert min_positive_index((0.0, 1e-12, 0.3)) == 3
    assert min_positive_index(()) == 1
    assert min_positive_index(GwlpVector((Fraction(1), Fraction(0)))) == 2


def test_reconstruction_rejects_far_values():
    assert _reconstruct(0.5 + 1e-12, 16) == Fraction(1, 2)
    with pytest.raises(NumericError):
        _reconstruct(0.123456789, 4)
