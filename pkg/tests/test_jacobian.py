"""Tests for the pencil, its Jacobian ring and the group action on R_3."""

from fractions import Fraction

import pytest

from adlercheck.characters import decompose
from adlercheck.jacobian import (
    CERTIFIED,
    INCONCLUSIVE,
    JacobianError,
    Poly9,
    act,
    character_on_r3,
    check_invariance,
    graded_dim,
    hodge_number,
    i2_character,
    ideal_cubic_dim,
    invariance_scalar,
    monomials,
    partial,
    partials,
    pencil,
    pencil_scan,
    smooth_certificate_mod_p,
    tau_weight,
)


class TestPoly9:
    def test_monomial_uses_one_based_variables(self):
        m = Poly9.monomial((1, 1, 6))
        assert m.terms == {(2, 0, 0, 0, 0, 1, 0, 0, 0): 1}

    def test_arithmetic(self):
        x1, x2 = Poly9.monomial((1,)), Poly9.monomial((2,))
        assert (x1 + x2) * (x1 - x2) == Poly9.monomial((1, 1)) - Poly9.monomial((2, 2))
        assert not (x1 - x1)

    def test_partial(self):
        assert Poly9.monomial((3, 3, 1), 5).partial(3) == Poly9.monomial((3, 1), 10)
        assert not Poly9.monomial((2,)).partial(1)

    def test_monomial_count(self):
        assert len(monomials(3)) == 165
        assert len(monomials(0)) == 1
        assert monomials(-1) == ()


class TestPencil:
    def test_term_counts(self, adler, klein):
        assert len(klein.terms) == 9
        assert len(adler.terms) == 12

    def test_first_partial(self, adler):
        expected = Poly9.monomial((1, 6), 2) + Poly9.monomial((3, 3)) + Poly9.monomial((7, 8), -2)
        assert partial(adler, 1) == expected

    def test_euler_identity(self, adler):
        total = Poly9()
        for j, grad in enumerate(partials(adler), start=1):
            total = total + Poly9.monomial((j,)) * grad
        assert total == adler.scale(3)

    def test_rational_parameter(self):
        f = pencil(Fraction(1, 3))
        assert f.coefficient((1, 0, 0, 0, 0, 0, 1, 1, 0)) == Fraction(1, 3)

    def test_lambda_terms(self, klein):
        cross = Poly9.monomial((1, 7, 8)) + Poly9.monomial((2, 3, 5)) + Poly9.monomial((4, 6, 9))
        assert pencil(1) == klein + cross

    def test_monomials_are_tau_invariant(self, adler):
        assert {tau_weight(e) for e in adler.terms} == {0}


class TestGroupAction:
    def test_generators_fix_the_invariant_cubic(self, rep, adler):
        for g in (rep.T.to_dense(), rep.S.to_dense(), rep.M):
            assert invariance_scalar(g, adler) == 1
        check_invariance(adler, rep, "G")

    def test_klein_cubic_is_not_mu_invariant(self, rep, klein):
        assert invariance_scalar(rep.M, klein) is None
        with pytest.raises(JacobianError):
            check_invariance(klein, rep, "G")

    def test_klein_cubic_is_h_invariant(self, rep, klein):
        check_invariance(klein, rep, "H")

    def test_substitution(self):
        swap = [[0, 1] + [0] * 7, [1, 0] + [0] * 7] + [[1 if j == i else 0 for j in range(9)] for i in range(2, 9)]
        assert act(swap, Poly9.monomial((1, 1, 2))) == Poly9.monomial((2, 2, 1))

    def test_scaling_gives_a_scalar(self):
        double = [[2 if i == j else 0 for j in range(9)] for i in range(9)]
        assert invariance_scalar(double, pencil(-2)) == 8

    def test_singular_matrix_is_refused(self):
        singular = [[1] * 9 for _ in range(9)]
        with pytest.raises(JacobianError):
            act(singular, pencil(0))


class TestJacobianRing:
    def test_graded_dimensions(self, adler):
        assert [graded_dim(adler, d) for d in range(4)] == [1, 9, 36, 84]

    def test_ideal_in_degree_three(self, adler, klein):
        assert ideal_cubic_dim(adler) == 81
        assert ideal_cubic_dim(klein) == 81

    def test_klein_hilbert_series(self, klein):
        assert [graded_dim(klein, d) for d in range(4)] == [1, 9, 36, 84]

    def test_graded_dims_survive_a_change_of_coordinates(self):
        f = pencil(Fraction(1, 3))
        g = [[0] * 9 for _ in range(9)]
        for i, (j, c) in enumerate(zip((2, 0, 1, 5, 3, 4, 8, 6, 7), (2, -1, 3, 1, 1, 5, -2, 1, 7))):
            g[i][j] = c
        moved = act(g, f)
        assert moved != f
        assert [graded_dim(moved, d) for d in range(4)] == [graded_dim(f, d) for d in range(4)]

    def test_hodge_numbers_up_to_the_middle(self, adler):
        assert [hodge_number(adler, q) for q in range(4)] == [0, 0, 1, 84]

    def test_duality_needs_a_certificate(self, adler):
        with pytest.raises(JacobianError, match="smoothness certificate"):
            hodge_number(adler, 4)
        with pytest.raises(JacobianError):
            hodge_number(Poly9.monomial((1, 1, 1)), 4)

    @pytest.mark.heavy
    def test_hodge_numbers_of_a_smooth_cubic(self, adler):
        assert [hodge_number(adler, q, prime=101) for q in range(8)] == [0, 0, 1, 84, 84, 1, 0, 0]

    @pytest.mark.heavy
    def test_singular_cubic_is_not_read_by_duality(self):
        with pytest.raises(JacobianError, match="not certified smooth"):
            hodge_number(Poly9.monomial((1, 1, 1)), 4, prime=101)

    def test_hodge_index_range(self, adler):
        with pytest.raises(JacobianError):
            hodge_number(adler, 8)

    @pytest.mark.heavy
    def test_degree_four(self, adler):
        assert graded_dim(adler, 4) == 126


class TestCharacters:
    def test_partials_span_w9bar(self, rep, adler):
        assert decompose(i2_character(adler, rep)) == {"W9bar": 1}

    def test_r3_decomposition(self, rep, adler):
        assert decompose(character_on_r3(adler, rep)) == {
            "W9bar": 1, "W18_1": 1, "W18_3": 1, "W19": 1, "W20_3": 1,
        }

    def test_r3_on_h_is_the_same_along_the_pencil(self, rep, adler, klein):
        expected = {"V0": 1, "V3": 1, "V6": 1, "V9": 4, "V9bar": 5}
        assert decompose(character_on_r3(adler, rep, "H")) == expected
        assert decompose(character_on_r3(klein, rep, "H")) == expected


class TestSmoothness:
    def test_bad_primes(self, adler):
        with pytest.raises(JacobianError):
            smooth_certificate_mod_p(adler, 1)
        with pytest.raises(JacobianError):
            smooth_certificate_mod_p(adler, 91)

    def test_prime_dividing_a_denominator(self):
        with pytest.raises(JacobianError, match="denominator"):
            smooth_certificate_mod_p(pencil(Fraction(1, 3)), 3)

    def test_scan_without_heavy(self, rep):
        rows = pencil_scan([Fraction(0), Fraction(-2)], [101], rep)
        assert [r.dims[3] for r in rows] == [84, 84]
        assert all(r.status == "not checked" for r in rows)
        assert rows[1].to_dict()["lambda"] == "-2"

    @pytest.mark.heavy
    def test_invariant_cubic_is_smooth(self, adler):
        assert smooth_certificate_mod_p(adler, 101) == CERTIFIED

    @pytest.mark.heavy
    def test_klein_cubic_is_smooth(self, klein):
        assert smooth_certificate_mod_p(klein, 101) == CERTIFIED

    @pytest.mark.heavy
    def test_cube_is_singular(self):
        assert smooth_certificate_mod_p(Poly9.monomial((1, 1, 1)), 101) == INCONCLUSIVE
