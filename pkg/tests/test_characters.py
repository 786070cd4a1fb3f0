"""Tests for the character tables, decompositions and branching to H."""

from fractions import Fraction

import pytest

from adlercheck.characters import (
    CharacterError,
    cubic_forms_character,
    decompose,
    inner_product,
    integrality_check_cor10,
    jacobian_ideal_character,
    middle_cohomology_character,
    orthogonality_defects,
    projector_coefficients,
    projector_trace,
    reconstruct,
    restrict_to_h,
    sym3,
    sym3_dimension,
    table_for,
    table_g,
    table_h,
    tensor,
)
from adlercheck.cyclo import gauss_nu


class TestTables:
    def test_g_table_is_orthogonal(self):
        assert orthogonality_defects(table_g()) == []

    def test_h_table_is_orthogonal(self):
        assert orthogonality_defects(table_h()) == []

    def test_sizes_come_from_enumeration(self):
        assert table_g().order == 3420
        assert table_h().order == 171
        assert len(table_g().irreducibles) == 12
        assert len(table_h().irreducibles) == 11

    def test_unknown_table(self):
        with pytest.raises(CharacterError):
            table_for("K")

    def test_unknown_character(self):
        with pytest.raises(CharacterError):
            table_g().character("W7")

    def test_galois_pairs(self):
        g = table_g()
        assert g.character("W9").conj() == g.character("W9bar")
        assert g.character("W19").is_integral()
        assert not g.character("W9").is_integral()


class TestInnerProducts:
    def test_irreducible_norms(self):
        g = table_g()
        w9 = g.character("W9")
        assert inner_product(w9, w9) == 1
        assert inner_product(w9, g.character("W9bar")) == 0

    def test_tensor_with_trivial(self):
        g = table_g()
        assert tensor(g.trivial(), g.character("W19")) == g.character("W19")

    def test_sym3_values(self):
        nu = gauss_nu()
        values = sym3(table_g().character("W9")).values
        assert list(values) == [165, 3 - nu, 3 - nu.conj(), 0, 0, 3, 0, 0, 0, 0, 0, 5]

    def test_sym3_dimension(self):
        assert sym3_dimension(9) == 165
        assert cubic_forms_character().degree == 165


class TestDecompositions:
    def test_cubic_forms(self):
        assert decompose(cubic_forms_character()) == {
            "T1": 1, "W9bar": 1, "W18_1": 1, "W18_3": 1,
            "W20_1": 1, "W20_2": 1, "W20_3": 2, "W20_4": 1, "W19": 1,
        }

    def test_jacobian_ideal(self):
        assert decompose(jacobian_ideal_character()) == {
            "T1": 1, "W20_1": 1, "W20_2": 1, "W20_3": 1, "W20_4": 1,
        }

    def test_middle_cohomology(self):
        h = middle_cohomology_character()
        assert h.degree == 84
        assert decompose(h) == {"W9bar": 1, "W18_1": 1, "W18_3": 1, "W19": 1, "W20_3": 1}

    def test_reconstruct_inverts_decompose(self):
        h = middle_cohomology_character()
        assert reconstruct(table_g(), decompose(h)) == h

    def test_virtual_character_is_rejected(self):
        g = table_g()
        with pytest.raises(CharacterError) as info:
            decompose(g.trivial() - g.character("W19"))
        assert info.value.multiplicities is not None


class TestBranching:
    def test_restrictions(self):
        g = table_g()
        assert decompose(restrict_to_h(g.character("W18_3"))) == {"V9": 1, "V9bar": 1}
        assert decompose(restrict_to_h(g.character("W19"))) == {"V0": 1, "V9": 1, "V9bar": 1}
        assert decompose(restrict_to_h(g.character("W20_3"))) == {"V3": 1, "V6": 1, "V9": 1, "V9bar": 1}

    def test_w20_family_branches_by_torus_character(self):
        g = table_g()
        for i in range(1, 5):
            expected = {f"V{i}": 1, f"V{9 - i}": 1, "V9": 1, "V9bar": 1}
            assert decompose(restrict_to_h(g.character(f"W20_{i}"))) == expected

    def test_middle_cohomology_on_h(self):
        assert decompose(restrict_to_h(middle_cohomology_character())) == {
            "V0": 1, "V3": 1, "V6": 1, "V9": 4, "V9bar": 5,
        }

    def test_only_g_characters_restrict(self):
        with pytest.raises(CharacterError):
            restrict_to_h(table_h().trivial())


class TestIntegrality:
    def test_galois_sums(self):
        rows = integrality_check_cor10()
        assert [r.name for r in rows] == ["chi0", "chi1", "chi2", "chi3", "chi4"]
        assert all(r.integral for r in rows)
        assert [r.degree for r in rows] == [1, 18, 72, 19, 80]

    def test_subtorus_dimensions(self):
        dims = [r.subtorus_dim for r in integrality_check_cor10()]
        assert dims == [1, 9, 36, 19, 20]
        assert sum(dims) == 85


class TestProjectors:
    def test_projector_trace_counts_multiplicity(self):
        assert projector_trace("W20_3", jacobian_ideal_character()) == 20
        assert projector_trace("W20_3", cubic_forms_character()) == 40
        assert projector_trace("W9", jacobian_ideal_character()) == 0

    def test_identity_coefficient(self):
        coefficients = projector_coefficients("W9")
        assert coefficients["1"] == Fraction(81, 3420)
        assert coefficients["w1"] == gauss_nu().conj() * Fraction(9, 3420)

    @pytest.mark.heavy
    def test_projector_on_w9(self, rep):
        from adlercheck.characters import apply_projector, is_identity, projector_rank
        assert is_identity(apply_projector(rep, "W9"))
        assert projector_rank(apply_projector(rep, "W9bar")) == 0
