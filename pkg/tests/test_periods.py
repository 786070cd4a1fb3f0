"""Tests for the period lattices and the invariant polarization."""

import itertools
from fractions import Fraction

import pytest
from sympy import Matrix

from adlercheck.cyclo import gauss_nu, in_z_nu, rational, sqrt_minus_19
from adlercheck.periods import (
    FLAG_DIM,
    NU_MOD,
    LatticeError,
    PeriodLattice,
    apply,
    build_v,
    build_wprime,
    count_stable_subspaces,
    ell,
    flag_quotient,
    flatten,
    form_invariant,
    gram_pfaffian,
    inverse_g,
    jordan_block,
    kernel_chain,
    lattice_lambda,
    lattice_lambda0,
    lattice_lambda8,
    lattice_rows,
    normalisation_check,
    nu_relation_holds,
    polarization_eval,
    printed_v9_expansion,
    q_endomorphism_check,
    reduce_z_nu,
    sqrt_19,
    stability,
    t_coordinates,
    t_lift,
    h1_lattice,
    tower_indices,
    unflatten,
    uniqueness_sweep,
    unit_vector,
    v9_expansion,
    w_in_t_basis,
)
from adlercheck.psl2 import t_matrix


# ── Vectors ─────────────────────────────────────────────────────────


class TestVectors:
    def test_v0_is_all_ones(self):
        assert build_v(0) == tuple(rational(1) for _ in range(9))

    def test_v_is_periodic(self):
        assert build_v(3) == build_v(22)

    def test_tau_shifts_v(self):
        tau = t_matrix().to_dense()
        assert apply(tau, build_v(4)) == build_v(5)

    def test_ell_at_tau_v0_is_nu(self):
        assert ell(0, build_v(1)) == gauss_nu()

    def test_wprime_is_a_fifth_difference(self):
        tau = t_matrix().to_dense()
        z = build_v(0)
        for _ in range(5):
            z = tuple(a - b for a, b in zip(z, apply(tau, z)))
        assert tuple(x * inverse_g() for x in z) == build_wprime(0)

    def test_inverse_of_one_plus_two_nu(self):
        assert inverse_g() * sqrt_minus_19() == 1

    def test_flatten_round_trip(self):
        z = build_wprime(2)
        assert len(flatten(z)) == 162
        assert unflatten(flatten(z)) == z


class TestRelations:
    def test_nu_v0_is_a_sum_over_squares(self):
        assert nu_relation_holds()

    def test_nu_v0_is_not_the_sum_of_v1_to_v9(self):
        nu = gauss_nu()
        total = tuple(sum((build_v(k)[j] for k in range(2, 10)), build_v(1)[j]) for j in range(9))
        assert tuple(nu * x for x in build_v(0)) != total

    def test_v9_expansion(self):
        assert v9_expansion() == printed_v9_expansion()

    def test_nu_residue(self):
        assert (NU_MOD ** 2 + NU_MOD + 5) % 19 == 0
        assert reduce_z_nu(gauss_nu()) == 9
        assert reduce_z_nu(3 - 2 * gauss_nu()) == (3 - 18) % 19

    def test_reduce_rejects_non_members(self):
        with pytest.raises(LatticeError):
            reduce_z_nu(gauss_nu() / 2)


# ── Lattices ────────────────────────────────────────────────────────


class TestLattices:
    def test_rank_is_checked(self):
        with pytest.raises(LatticeError):
            PeriodLattice.from_vectors([build_v(0)])

    def test_lambda0(self):
        lattice = lattice_lambda0()
        assert lattice.rank == 18
        assert lattice.contains(build_v(12))
        assert not lattice.contains(build_wprime(0))
        assert lattice.is_nu_stable()

    def test_lambda8_index(self):
        assert lattice_lambda0().index_in(lattice_lambda8()) == 19 ** 8

    def test_index_requires_containment(self):
        with pytest.raises(LatticeError):
            lattice_lambda8().index_in(lattice_lambda0())

    def test_ell_is_integral_on_lambda8(self):
        for z in lattice_lambda8().basis():
            for k in range(9):
                assert in_z_nu(ell(k, z)) is not None
        assert lattice_lambda8().contains(t_lift(3))

    def test_tau_stability(self):
        tau = t_matrix().to_dense()
        assert stability(tau, lattice_lambda0())
        assert stability(tau, lattice_lambda8())

    def test_tower(self):
        assert tower_indices() == [19] * FLAG_DIM

    def test_lambda4_has_the_explicit_basis(self):
        assert lattice_lambda(4) == h1_lattice()

    def test_lambda_range(self):
        with pytest.raises(LatticeError):
            lattice_lambda(9)


class TestQuotientFlag:
    def test_t_coordinates_of_lifts(self):
        for i in range(1, 9):
            assert t_coordinates(t_lift(i)) == [1 if m == i else 0 for m in range(1, 9)]

    def test_t_coordinates_vanish_on_lambda0(self):
        assert t_coordinates(build_v(5)) == [0] * 8

    def test_w_basis(self):
        assert w_in_t_basis(8) == [1, 0, 0, 0, 0, 0, 0, 0]
        assert w_in_t_basis(7) == [18, 1, 0, 0, 0, 0, 0, 0]

    def test_tau_is_a_single_jordan_block(self):
        flag = flag_quotient()
        assert flag.tau_w == jordan_block()
        assert flag.is_single_block
        assert flag.kernel_dims == list(range(9))
        assert flag.stable_subspace_count == 9


def _all_subspaces(n, p):
    vectors = list(itertools.product(range(p), repeat=n))
    found = {frozenset([(0,) * n])}
    frontier = list(found)
    while frontier:
        grown = []
        for space in frontier:
            for v in vectors:
                if v in space:
                    continue
                bigger = frozenset(
                    tuple((s[i] + c * v[i]) % p for i in range(n)) for s in space for c in range(p)
                )
                if bigger not in found:
                    found.add(bigger)
                    grown.append(bigger)
        frontier = grown
    return found


def _is_stable(matrix, space, p):
    n = len(matrix)
    return all(
        tuple(sum(row[j] * v[j] for j in range(n)) % p for row in matrix) in space for v in space
    )


def _count_by_enumeration(matrix, p):
    return sum(_is_stable(matrix, space, p) for space in _all_subspaces(len(matrix), p))


class TestStableSubspaces:
    def test_enumeration_finds_every_subspace(self):
        assert len(_all_subspaces(3, 3)) == 28
        assert len(_all_subspaces(4, 2)) == 67

    @pytest.mark.parametrize("n, p", [(2, 5), (3, 3), (4, 2)])
    def test_jordan_block_matches_enumeration(self, n, p):
        block = jordan_block(n)
        assert kernel_chain(block, p) == list(range(n + 1))
        assert count_stable_subspaces(kernel_chain(block, p)) == _count_by_enumeration(block, p) == n + 1

    def test_conjugated_block_matches_enumeration(self):
        u = Matrix([[1, 0, 0], [1, 1, 0], [2, 1, 1]])
        conjugate = (u * Matrix(jordan_block(3)) * u.inv_mod(3)).applyfunc(lambda x: x % 3)
        matrix = [[int(x) for x in row] for row in conjugate.tolist()]
        assert matrix != jordan_block(3)
        assert count_stable_subspaces(kernel_chain(matrix, 3)) == _count_by_enumeration(matrix, 3) == 4

    def test_two_blocks_are_refused(self):
        identity = [[1, 0], [0, 1]]
        assert kernel_chain(identity, 3) == [0, 2, 2]
        assert _count_by_enumeration(identity, 3) == 6
        with pytest.raises(LatticeError):
            count_stable_subspaces(kernel_chain(identity, 3))


# ── Polarization ────────────────────────────────────────────────────


class TestPolarization:
    def test_values(self):
        assert polarization_eval(build_v(1), build_v(0)) == 1
        assert polarization_eval(build_v(0), build_v(1)) == -1
        assert polarization_eval(build_v(3), build_v(3)) == 0

    def test_on_z_nu_e1(self):
        e1 = unit_vector(1)
        assert polarization_eval(e1, tuple(gauss_nu() * x for x in e1)) == -1

    def test_scaling(self):
        assert polarization_eval(build_v(1), build_v(0), a=3) == 3

    def test_principal_on_lambda4(self):
        assert gram_pfaffian(lattice_lambda(4)) == 1

    def test_pfaffians_along_the_tower(self, rep):
        rows = lattice_rows(rep)
        assert [r.pfaffian_squared for r in rows] == [Fraction(19 ** 8, 19 ** (2 * j)) for j in range(9)]
        assert [r.index for r in rows] == [19 ** j for j in range(9)]
        assert rows[4].integral
        assert all(r.nu_stable for r in rows)
        assert all(rows[4].stable.values())

    def test_only_lambda4_is_principal(self):
        principal = [(r.j, r.a) for r in uniqueness_sweep() if r.principal]
        assert principal == [(4, 1)]
        assert all(r.pfaffian_squared == r.expected for r in uniqueness_sweep())

    def test_prefactor(self):
        assert sqrt_19() ** 2 == 19
        assert normalisation_check() == {"2/sqrt19": False, "i/sqrt19": True}

    def test_invariance_under_generators(self, rep):
        vectors = [build_v(k) for k in range(4)] + [build_wprime(0)]
        assert form_invariant(rep.T.to_dense(), vectors)
        assert form_invariant(rep.S.to_dense(), vectors)
        assert form_invariant(rep.M, vectors)

    def test_q_endomorphism(self):
        assert q_endomorphism_check()
