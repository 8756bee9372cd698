import random

from formbench import linalg
from formbench.scalars import GaussianRational
from support import gaussian

ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def random_matrix(rng, rows, cols):
    return [[gaussian(rng) for _ in range(cols)] for _ in range(rows)]


def mat_vec(matrix, vec):
    return [
        sum((row[i] * vec[i] for i in range(len(vec))), ZERO) for row in matrix
    ]


def test_rref_and_rank():
    matrix = [
        [ONE, GaussianRational(2), GaussianRational(3)],
        [GaussianRational(2), GaussianRational(4), GaussianRational(6)],
        [ZERO, ONE, ONE],
    ]
    reduced, pivots = linalg.rref(matrix)
    assert pivots == [0, 1]
    assert linalg.rank(matrix) == 2


def test_nullspace_vectors_annihilate():
    rng = random.Random(3)
    for _ in range(25):
        matrix = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        basis = linalg.nullspace(matrix, len(matrix[0]))
        assert len(basis) == len(matrix[0]) - linalg.rank(matrix)
        for vec in basis:
            assert all(not x for x in mat_vec(matrix, vec))


def test_nullspace_of_empty_matrix():
    assert len(linalg.nullspace([], 3)) == 3


def test_solve_consistent_and_inconsistent():
    rng = random.Random(5)
    for _ in range(25):
        matrix = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        x = [gaussian(rng) for _ in range(len(matrix[0]))]
        b = mat_vec(matrix, x)
        solution = linalg.solve(matrix, b)
        assert solution is not None
        assert mat_vec(matrix, solution) == b
    assert linalg.solve([[ZERO]], [ONE]) is None


def test_determinant_multiplicative():
    rng = random.Random(7)
    for _ in range(15):
        a = random_matrix(rng, 3, 3)
        b = random_matrix(rng, 3, 3)
        product = [
            [sum((a[i][k] * b[k][j] for k in range(3)), ZERO) for j in range(3)]
            for i in range(3)
        ]
        assert linalg.determinant(product) == linalg.determinant(
            a
        ) * linalg.determinant(b)


def test_determinant_ring_matches_field_version():
    rng = random.Random(11)
    for _ in range(15):
        a = random_matrix(rng, 4, 4)
        assert linalg.determinant_ring(a, ONE) == linalg.determinant(a)


def test_quotient_representatives():
    e1 = [ONE, ZERO, ZERO]
    e2 = [ZERO, ONE, ZERO]
    e12 = [ONE, ONE, ZERO]
    reps = linalg.quotient_representatives([e1, e2, e12], [e1])
    assert len(reps) == 1
    assert reps[0] == e2
    # no boundaries: representatives span the cocycles
    reps = linalg.quotient_representatives([e1, e12], [])
    assert len(reps) == 2
