import random
from fractions import Fraction

import pytest

from semimat.linalg import determinant, identity_fractions, solve_linear


def cofactor_det(rows):
    """Independent expansion-by-first-row determinant for small matrices."""
    m = len(rows)
    if m == 0:
        return Fraction(1)
    if m == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(m):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = Fraction(rows[0][j]) * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def test_solve_unique():
    sol = solve_linear([[2, 0], [0, 4]], [1, 1])
    assert sol == [Fraction(1, 2), Fraction(1, 4)]


def test_solve_underdetermined_sets_free_to_zero():
    sol = solve_linear([[1, 1]], [3])
    assert sol is not None
    assert sol[0] + sol[1] == 3
    assert Fraction(0) in sol


def test_solve_inconsistent():
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None
    assert solve_linear([[0, 0]], [1]) is None


def test_solve_random_consistent_systems_exactly():
    rng = random.Random(20260809)
    for _ in range(60):
        m = rng.randrange(1, 6)
        k = rng.randrange(1, 6)
        a = [[Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(k)]
             for _ in range(m)]
        x = [Fraction(rng.randrange(-4, 5)) for _ in range(k)]
        b = [sum(a[i][j] * x[j] for j in range(k)) for i in range(m)]
        sol = solve_linear(a, b)
        assert sol is not None
        for i in range(m):
            assert sum(a[i][j] * sol[j] for j in range(k)) == b[i]


def test_determinant_known_values():
    assert determinant([]) == 1
    assert determinant([[7]]) == 7
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[0, 1], [1, 0]]) == -1  # needs a row swap
    assert determinant([[1, 1], [1, 1]]) == 0
    assert determinant(identity_fractions(5)) == 1


def test_determinant_of_triangular_is_diagonal_product():
    rows = [[Fraction(2), Fraction(5), Fraction(1)],
            [Fraction(0), Fraction(3), Fraction(9)],
            [Fraction(0), Fraction(0), Fraction(4)]]
    assert determinant(rows) == 24


def test_determinant_matches_cofactor_oracle():
    rng = random.Random(99)
    for _ in range(60):
        m = rng.randrange(1, 6)
        rows = [[Fraction(rng.randrange(-3, 4), rng.randrange(1, 3)) for _ in range(m)]
                for _ in range(m)]
        assert determinant(rows) == cofactor_det(rows)


def test_determinant_requires_square():
    with pytest.raises(ValueError):
        determinant([[1, 2]])
