"""Tests for exact linear algebra over Q, Q(zeta_n), Z and F_p."""

import random
from fractions import Fraction

import pytest

from adlercheck.cyclo import gauss_nu, rational
from adlercheck.linalg import (
    LinalgError,
    SparseMatrixFp,
    dense_rank_fp,
    determinant,
    hnf,
    hnf_basis,
    inverse,
    matmul,
    pfaffian,
    rank,
    rank_kernel,
    solve_linear,
    sparse_rank_fp,
    transpose,
    xgcd,
)


def _unimodular(n: int, rng: random.Random) -> list[list[int]]:
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-3, 3)
        u[i] = [a + k * b for a, b in zip(u[i], u[j])]
        if rng.random() < 0.3:
            u[i], u[j] = u[j], u[i]
    return u


def _antisymmetric(n: int, rng: random.Random) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
            m[j][i] = -m[i][j]
    return m


class TestRationalLinearAlgebra:
    def test_rank_and_kernel(self):
        m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        r, kernel = rank_kernel(m)
        assert r == 2
        assert len(kernel) == 1
        assert matmul(m, [[x] for x in kernel[0]]) == [[0], [0], [0]]

    def test_rank_with_fractions(self):
        assert rank([[Fraction(1, 2), 1], [1, 2]]) == 1
        assert rank([]) == 0

    def test_rank_of_transpose(self):
        rng = random.Random(11)
        for rows, cols in ((3, 5), (6, 4), (5, 5)):
            m = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols)] for _ in range(rows)]
            m.append([a + 2 * b for a, b in zip(m[0], m[1])])
            assert rank(m) == rank(transpose(m))

    def test_determinant(self):
        assert determinant([[2, 1], [7, 4]]) == 1
        assert determinant([[Fraction(1, 2), 0], [0, 4]]) == 2
        assert determinant([[1, 2], [2, 4]]) == 0

    def test_determinant_rejects_non_square(self):
        with pytest.raises(LinalgError):
            determinant([[1, 2, 3]])

    def test_inverse(self):
        m = [[2, 1], [7, 4]]
        assert matmul(m, inverse(m)) == [[1, 0], [0, 1]]

    def test_singular_inverse(self):
        with pytest.raises(LinalgError):
            inverse([[1, 2], [2, 4]])

    def test_solve_inconsistent(self):
        with pytest.raises(LinalgError):
            solve_linear([[1, 1], [1, 1]], [1, 2])

    def test_ragged(self):
        with pytest.raises(LinalgError):
            rank_kernel([[1, 2], [3]])


class TestCyclotomicLinearAlgebra:
    def test_rank_over_q_nu(self):
        nu = gauss_nu()
        m = [[rational(1), nu], [nu, nu * nu]]
        assert rank(m) == 1

    def test_solve_over_q_nu(self):
        nu = gauss_nu()
        x = solve_linear([[nu, rational(1)], [rational(0), nu]], [nu + 1, nu])
        assert x == [1, 1]

    def test_determinant_over_q_nu(self):
        nu = gauss_nu()
        assert determinant([[nu, rational(0)], [rational(0), nu.conj()]]) == 5


class TestIntegerLattices:
    def test_xgcd(self):
        x, y, g = xgcd(240, 46)
        assert g == 2
        assert 240 * x + 46 * y == 2

    def test_hnf_shape(self):
        h, u = hnf([[2, 4], [3, 5]])
        assert h == [[1, 1], [0, 2]]
        assert matmul(u, [[2, 4], [3, 5]]) == h
        assert abs(determinant(u)) == 1

    def test_hnf_basis_drops_zero_rows(self):
        assert hnf_basis([[2, 0], [4, 0], [0, 3]]) == [[2, 0], [0, 3]]

    def test_hnf_is_canonical(self):
        a = hnf_basis([[1, 2], [0, 19]])
        b = hnf_basis([[1, 21], [3, 6], [0, 38]])
        assert a == b

    def test_hnf_ignores_unimodular_row_operations(self):
        rng = random.Random(23)
        for _ in range(10):
            m = [[rng.randint(-20, 20) for _ in range(5)] for _ in range(4)]
            u = _unimodular(4, rng)
            assert abs(determinant(u)) == 1
            assert hnf(matmul(u, m))[0] == hnf(m)[0]


class TestPfaffian:
    def test_two_by_two(self):
        assert pfaffian([[0, 5], [-5, 0]]) == 5

    def test_four_by_four(self):
        # Pf = af - be + cd
        a, b, c, d, e, f = 1, 2, 3, 4, 5, 6
        m = [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]]
        assert pfaffian(m) == a * f - b * e + c * d

    def test_square_is_determinant(self):
        rng = random.Random(7)
        for n in (2, 4, 6, 8):
            m = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    m[i][j] = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                    m[j][i] = -m[i][j]
            assert Fraction(pfaffian(m)) ** 2 == determinant(m)

    def test_congruence_scales_by_determinant(self):
        rng = random.Random(29)
        n = 6
        permutation = [[1 if j == k else 0 for j in range(n)] for k in rng.sample(range(n), n)]
        scaling = [[rng.randint(1, 5) if i == j else 0 for j in range(n)] for i in range(n)]
        generic = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        for b in (permutation, scaling, generic):
            a = _antisymmetric(n, rng)
            congruent = matmul(matmul(b, a), transpose(b))
            assert pfaffian(congruent) == determinant(b) * pfaffian(a)

    def test_needs_pivot_swap(self):
        m = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
        assert pfaffian(m) ** 2 == determinant(m) == 1

    def test_rejects_odd_and_symmetric(self):
        with pytest.raises(LinalgError):
            pfaffian([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
        with pytest.raises(LinalgError):
            pfaffian([[0, 1], [1, 0]])


class TestRankModP:
    def test_sparse_matches_dense(self):
        rng = random.Random(19)
        for _ in range(5):
            m = [[rng.choice([0, 0, 0, rng.randint(1, 100)]) for _ in range(12)] for _ in range(10)]
            assert sparse_rank_fp(SparseMatrixFp.from_dense(m, 101)) == dense_rank_fp(m, 101)

    def test_identity_and_zero(self):
        eye = [[1 if i == j else 0 for j in range(100)] for i in range(100)]
        assert sparse_rank_fp(SparseMatrixFp.from_dense(eye, 101)) == 100
        zero = [[0] * 100 for _ in range(100)]
        assert sparse_rank_fp(SparseMatrixFp.from_dense(zero, 101)) == 0

    def test_rational_rank_bounds_modular_rank(self):
        rng = random.Random(31)
        for _ in range(10):
            m = [[rng.randint(-6, 6) for _ in range(6)] for _ in range(5)]
            for p in (2, 3, 5, 7):
                assert rank(m) >= dense_rank_fp(m, p)

    def test_rank_depends_on_prime(self):
        m = [[1, 2], [3, 1]]               # det = -5
        assert dense_rank_fp(m, 5) == 1
        assert dense_rank_fp(m, 7) == 2

    def test_rejects_composite(self):
        with pytest.raises(LinalgError):
            SparseMatrixFp(p=91, ncols=3)
