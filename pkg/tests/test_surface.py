from itertools import product
from math import gcd

import pytest

from dp5a2.surface import (
    LINES,
    ProjectivePoint,
    brute_force_points,
    find_lines,
    find_singular_points,
    height,
    in_U,
    is_on_surface,
    jacobian,
    matrix_rank_exact,
    normalize,
    quadric_values,
)

P_SING = ProjectivePoint(0, 0, 1, 0, 0, 0)


def test_known_points_on_surface():
    for p in [
        (1, 0, 0, 0, -1, -1),
        (1, -1, 0, -1, 0, 0),
        (1, 0, 0, 0, 1, -1),
        (1, 1, 0, -1, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 1, 1, 0, -1, 0),
    ]:
        assert is_on_surface(ProjectivePoint(*p)), p


def test_quadric_values_nonzero_off_surface():
    assert any(v != 0 for v in quadric_values(ProjectivePoint(1, 1, 1, 1, 1, 1)))


def test_normalize():
    assert normalize((2, 0, 0, 0, -2, -2)) == ProjectivePoint(1, 0, 0, 0, -1, -1)
    assert normalize((0, 0, -3, 0, 0, 0)) == P_SING
    with pytest.raises(ValueError):
        normalize((0, 0, 0, 0, 0, 0))


def test_height():
    assert height(ProjectivePoint(1, 0, 0, 0, -1, -1)) == 1
    assert height(normalize((2, 0, 0, 0, -4, -2))) == 2


def test_singularity_unique_and_rank():
    sings = find_singular_points(3)
    assert sings == [P_SING]
    assert matrix_rank_exact(jacobian(P_SING)) == 2
    smooth = ProjectivePoint(1, 0, 0, 0, -1, -1)
    assert matrix_rank_exact(jacobian(smooth)) == 3


def test_brute_force_matches_direct_enumeration():
    """Full 6-fold loop oracle at a tiny bound, no solving shortcuts."""
    bound = 3
    expected = set()
    for c in product(range(-bound, bound + 1), repeat=6):
        if all(v == 0 for v in c):
            continue
        # primitive, first nonzero coordinate positive
        g = 0
        for v in c:
            g = gcd(g, v)
        if g != 1:
            continue
        nz = next(v for v in c if v != 0)
        if nz < 0:
            continue
        p = ProjectivePoint(*c)
        if is_on_surface(p):
            expected.add(p)
    assert brute_force_points(bound) == expected


def test_lines_fixture_matches_search():
    assert find_lines(5) == LINES
    assert len(LINES) == 4
    for line in LINES:
        assert line.lies_in_surface()


def test_lines_cover_x0_zero_points():
    for p in brute_force_points(20):
        if p.x0 == 0:
            assert any(p in line for line in LINES), p


def test_in_U():
    assert in_U(ProjectivePoint(1, 0, 0, 0, -1, -1))
    assert not in_U(P_SING)
    # the x0 > 0 line family (s, t, 0, 0, -t, 0)
    assert is_on_surface(ProjectivePoint(1, 1, 0, 0, -1, 0))
    assert not in_U(ProjectivePoint(1, 1, 0, 0, -1, 0))
    with pytest.raises(ValueError):
        in_U(ProjectivePoint(1, 1, 1, 1, 1, 1))


def test_brute_force_points_are_valid():
    pts = brute_force_points(5)
    for p in pts:
        assert is_on_surface(p)
        assert height(p) <= 5
        assert normalize(tuple(p)) == p
