from fractions import Fraction

import pytest

from icefold.cyclotomic import Cyclotomic
from icefold.errors import NotInvariant, ValidationError
from icefold.fileformat import load_fixture
from icefold.folding import (
    character_name,
    fold_potential,
    fold_quiver,
    m_space_basis,
    m_space_character,
    multiplicity,
    subgroup_characters,
    verify_gamma,
)
from icefold.groups import FiniteGroup
from icefold.quiver import Potential


class TestSubgroupCharacters:
    def test_trivial_group(self):
        g = FiniteGroup.cyclic(1)
        chars = subgroup_characters(g, g.elements, 1)
        assert chars == [{"g0": 0}]
        assert character_name(chars, 0, g.elements) == "K"

    def test_order_two(self):
        g = FiniteGroup.cyclic(2)
        chars = subgroup_characters(g, g.elements, 2)
        assert len(chars) == 2
        names = {character_name(chars, k, g.elements) for k in range(2)}
        assert names == {"+", "-"}
        # the sign character sends the generator to -1
        minus = next(c for c in chars if c["g1"] == 1)
        assert Cyclotomic.root_of_unity(2, minus["g1"]) == Cyclotomic.rational(2, -1)

    def test_cyclic_four(self):
        g = FiniteGroup.cyclic(4)
        chars = subgroup_characters(g, g.elements, 4)
        assert len(chars) == 4
        exps = sorted(c["g1"] for c in chars)
        assert exps == [0, 1, 2, 3]

    def test_subgroup_of_cyclic_four(self):
        g = FiniteGroup.cyclic(4)
        sub = g.subgroup_elements(["g2"])
        chars = subgroup_characters(g, sub, 4)
        assert len(chars) == 2
        assert sorted(c["g2"] for c in chars) == [0, 2]

    def test_orthogonality(self):
        g = FiniteGroup.cyclic(3)
        chars = subgroup_characters(g, g.elements, 3)
        for i, chi in enumerate(chars):
            for j, psi in enumerate(chars):
                total = Cyclotomic.zero(3)
                for h in g.elements:
                    total = total + Cyclotomic.root_of_unity(3, chi[h] - psi[h])
                assert total == Cyclotomic.rational(3, 3 if i == j else 0)


def wing():
    qf = load_fixture("zl2-potential")
    return qf


class TestMSpaces:
    # the decomposition table of the order-2 example: stabilizer characters
    # are written +/- and K is the trivial character of a trivial stabilizer

    def _mult(self, qf, i, j, tau_exp, rho_exp):
        act = qf.action
        g = act.group
        stab_i = act.stabilizer(i)
        stab_j = act.stabilizer(j)
        chars_j = subgroup_characters(g, stab_j, 2)
        chars_i = subgroup_characters(g, stab_i, 2)
        tau = next(c for c in chars_j if c[stab_j[-1]] == tau_exp)
        rho = next(c for c in chars_i if c[stab_i[-1]] == rho_exp)
        chi = m_space_character(act, 2, i, j, tau)
        return multiplicity(g, 2, stab_i, rho, chi)

    def test_m_1_2_is_plus_and_minus(self):
        qf = wing()
        # frozen arrows 1 -> {2,3}: one copy of each sign character
        assert self._mult(qf, 1, 2, 0, 0) == 1
        assert self._mult(qf, 1, 2, 0, 1) == 1

    def test_m_4_5_is_plus_and_minus(self):
        qf = wing()
        assert self._mult(qf, 4, 5, 0, 0) == 1
        assert self._mult(qf, 4, 5, 0, 1) == 1

    def test_m_4_1_matches_signs(self):
        qf = wing()
        # the fixed arrow c: 4 -> 1 contributes sign-matching copies only
        assert self._mult(qf, 4, 1, 0, 0) == 1
        assert self._mult(qf, 4, 1, 1, 1) == 1
        assert self._mult(qf, 4, 1, 0, 1) == 0
        assert self._mult(qf, 4, 1, 1, 0) == 0

    def test_m_2_4_both_signs(self):
        qf = wing()
        assert self._mult(qf, 2, 4, 0, 0) == 1
        assert self._mult(qf, 2, 4, 1, 0) == 1

    def test_m_5_2_trivial(self):
        qf = wing()
        assert self._mult(qf, 5, 2, 0, 0) == 1

    def test_basis_size(self):
        qf = wing()
        assert len(m_space_basis(qf.action, 1, 2)) == 2  # a and b
        assert len(m_space_basis(qf.action, 5, 2)) == 1  # s only


class TestFoldQuiver:
    def test_z2_example_shape(self):
        qf = wing()
        fq = fold_quiver(qf.action)
        assert len(fq.vertices) == 6
        assert len(fq.quiver.arrows) == 9
        assert len(fq.quiver.frozen_vertices) == 3
        assert len(fq.quiver.frozen_arrows) == 2
        labels = {v.label for v in fq.vertices}
        assert labels == {"(1,+)", "(1,-)", "(2,K)", "(4,+)", "(4,-)", "(5,K)"}

    def test_arrow_names_disambiguated(self):
        qf = wing()
        fq = fold_quiver(qf.action)
        ids = {a.id for a in fq.quiver.arrows}
        assert ids == {
            "x12+", "x12-", "x24+", "x24-", "x41+", "x41-", "x45+", "x45-", "x52",
        }
        assert fq.quiver.frozen_arrows == frozenset({"x12+", "x12-"})

    def test_corner_dimensions(self):
        qf = wing()
        fq = fold_quiver(qf.action)
        res = verify_gamma(fq)
        assert all(count == dim for count, dim in res.values())
        assert sum(count for count, _ in res.values()) == 9

    def test_a3_fold_quiver_unfolds_b2(self):
        qf = load_fixture("a3")
        fq = fold_quiver(qf.action)
        # trivial-stabilizer orbit {1,3} gives one vertex, fixed vertices two
        assert len(fq.vertices) == 6
        verify_gamma(fq)


class TestFoldPotential:
    def test_z2_example_potential(self):
        qf = wing()
        fq = fold_quiver(qf.action)
        wg = fold_potential(fq, qf.potential)
        assert len(wg.terms) == 4
        assert all(abs(c) == 1 for c, _ in wg.terms)
        supports = {frozenset(cyc.arrows) for _, cyc in wg.terms}
        assert supports == {
            frozenset({"x12+", "x24+", "x41+"}),
            frozenset({"x12-", "x24-", "x41-"}),
            frozenset({"x24+", "x45+", "x52"}),
            frozenset({"x24-", "x45-", "x52"}),
        }

    def test_zero_potential(self):
        qf = wing()
        fq = fold_quiver(qf.action)
        assert fold_potential(fq, Potential.zero(qf.quiver)).is_zero()

    def test_non_invariant_rejected(self):
        qf = wing()
        fq = fold_quiver(qf.action)
        w = Potential([(Fraction(1), ("c", "a", "e"))], qf.quiver)
        with pytest.raises(NotInvariant):
            fold_potential(fq, w)

    def test_a5_potential_folds(self):
        qf = load_fixture("a5")
        fq = fold_quiver(qf.action)
        verify_gamma(fq)
        wg = fold_potential(fq, qf.potential)
        assert not wg.is_zero()
        assert all(len(cyc) == 3 for _, cyc in wg.terms)
