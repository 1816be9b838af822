import io
import itertools
from collections import Counter

import pytest

from oaresolution.constructors import (
    affine_field,
    format_design,
    full_factorial_design,
    juxtapose,
    parse_design,
    project,
    read_design,
    write_design,
)
from oaresolution.core import DesignError

from catalog import catalog


def test_roundtrip_catalog():
    for _, f in catalog():
        g = parse_design(format_design(f))
        assert g == f


def test_file_roundtrip(tmp_path, eighteen):
    path = tmp_path / "eighteen.oa"
    write_design(eighteen, path, comments=["stacked"])
    assert path.read_text().startswith("# stacked\n3 3 3 3\n")
    assert read_design(path) == eighteen
    assert read_design(io.StringIO(path.read_text())) == eighteen


@pytest.mark.parametrize(
    "text, match",
    [
        ("", "no runs|header"),
        ("2 3 3\n", "no runs"),
        ("x y\n0 0\n", "header|integer"),
        ("3 2 2\n0 0\n", "header"),
        ("2 2 2\n0 2\n", "range|level"),
        ("2 2 2\n0 1\n0 1\n", "non-simple"),
        ("2 2 2\n0 1 1\n", "expected 2 levels"),
    ],
)
def test_parse_errors(text, match):
    with pytest.raises(DesignError, match=match):
        parse_design(text)


def test_comments_and_blank_lines():
    f = parse_design("# a comment\n\n2 2 3\n0 2\n# mid\n1 0\n")
    assert f.cells == ((0, 2), (1, 0))


def test_four4_projections(four4):
    for I in itertools.combinations(range(4), 3):
        counts = project(four4, I)
        if 3 in I:
            assert len(counts) == 64 and set(counts.values()) == {1}
        else:
            # half of the 4^3 cells are hit twice, the rest not at all
            assert set(counts.values()) == {2}
            assert len(counts) == 32


def test_juxtapose(components, eighteen):
    a, b = components
    assert eighteen.N == 18
    assert eighteen.run_set == a.run_set | b.run_set
    assert juxtapose(b, a) == eighteen
    with pytest.raises(DesignError, match="non-simple"):
        juxtapose(a, a)
    with pytest.raises(DesignError):
        juxtapose(a, full_factorial_design((3, 3)))


def test_eighteen_columns(eighteen):
    # rows are x, y, z with x + y + 2z in {0, 1} mod 3
    expected = sorted(c for c in itertools.product(range(3), repeat=3) if (c[0] + c[1] + 2 * c[2]) % 3 < 2)
    assert list(eighteen.cells) == expected
    for I in itertools.combinations(range(3), 2):
        assert Counter(project(eighteen, I).values()) == Counter({2: 9})


def test_affine_field(gf3, four4, eighteen):
    assert affine_field(gf3).order == 3
    assert affine_field(parse_design(format_design(gf3))).order == 3
    assert affine_field(four4) is None
    assert affine_field(parse_design(format_design(eighteen))) is None
    assert affine_field(full_factorial_design((2, 3))) is None
