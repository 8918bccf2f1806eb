import random
from fractions import Fraction

import pytest

from symsos.groups import (ClosureError, ComplexIrrep, RealIrrep, catalog,
                           character_orthogonality, close_group,
                           load_irrep_table, realify_pair, verify_representation)
from symsos.linalg import mat_identity
from symsos.scalars import Quad
from symsos.fixtures import choi_group_generators

CATALOG_SPECS = ["c2n:1", "c2n:3", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6",
                 "cyclic:8", "cyclic:12", "dihedral:4", "dihedral:5", "dihedral:6",
                 "symmetric:2", "symmetric:3", "symmetric:4", "symmetric:5"]


class TestClosure:
    def test_order_two(self):
        act = close_group([[[Fraction(-1)]]])
        assert act.order == 2
        assert act.inverse_table == [0, 1]

    def test_dihedral_generators_close_to_eight(self):
        d = [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]
        s = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
        act = close_group([d, s])
        assert act.order == 8
        # identity first, multiplication table consistent on sampled triples
        assert act.elements[0].matrix == tuple(map(tuple, mat_identity(2)))
        random.seed(0)
        for _ in range(30):
            a, b, c = (random.randrange(8) for _ in range(3))
            assert act.mult(act.mult(a, b), c) == act.mult(a, act.mult(b, c))

    def test_choi_group_has_96_elements(self):
        act = close_group(choi_group_generators())
        assert act.order == 96

    def test_non_orthogonal_rejected(self):
        with pytest.raises(ClosureError, match="orthogonal"):
            close_group([[[Fraction(2)]]])

    def test_max_order_guard(self):
        d = [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]
        with pytest.raises(ClosureError, match="max_order"):
            close_group([d], max_order=3)


class TestCatalogs:
    def test_dihedral4_irrep_dimensions(self):
        cat = catalog("dihedral:4")
        assert [r.dim for r in cat.irreps] == [1, 1, 1, 1, 2]
        assert cat.check_sum_of_squares()

    def test_symmetric4_dimensions(self):
        cat = catalog("symmetric:4")
        assert [r.dim for r in cat.irreps] == [1, 3, 2, 3, 1]
        assert sum(r.dim ** 2 for r in cat.irreps) == 24

    def test_cyclic4_real_dimensions(self):
        cat = catalog("cyclic:4")
        assert [r.dim for r in cat.irreps] == [1, 1, 2]
        assert cat.check_sum_of_squares()  # 1 + 1 + 4/2*... = 4

    @pytest.mark.parametrize("spec", CATALOG_SPECS)
    def test_catalog_verifies(self, spec):
        cat = catalog(spec)
        assert cat.check_sum_of_squares(), spec
        for r in cat.irreps:
            tol = 1e-40 if r.approximate else None
            assert verify_representation(r, cat.action, tol=tol).ok, (spec, r.label)
        assert character_orthogonality(cat, tol=1e-38).ok, spec

    def test_dihedral4_matches_unitary_table(self):
        cat = catalog("dihedral:4")
        theta5 = cat.irrep("theta5")
        d_idx, s_idx = cat.action.generators
        assert theta5.matrix(d_idx) == [[0, -1], [1, 0]]
        assert theta5.matrix(s_idx) == [[0, 1], [1, 0]]
        # the defining relation s = d s d holds in the representation
        dsd = cat.action.mult(cat.action.mult(d_idx, s_idx), d_idx)
        assert theta5.matrix(dsd) == theta5.matrix(s_idx)

    def test_symmetric3_planar_table_entries(self):
        cat = catalog("symmetric:3")
        theta3 = cat.irrep("theta3")
        g12, g23 = cat.action.generators
        a, b = Fraction(1, 2), Quad.root(3, Fraction(1, 2))
        assert theta3.matrix(g12) == [[-a, b], [b, a]]
        assert theta3.matrix(g23) == [[1, 0], [0, -1]]

    def test_approximate_flagged(self):
        cat = catalog("cyclic:5")
        assert any(r.approximate for r in cat.irreps)
        exact_cat = catalog("cyclic:12")
        assert not any(r.approximate for r in exact_cat.irreps)

    def test_unsupported(self):
        with pytest.raises(ValueError):
            catalog("icosahedral:1")
        with pytest.raises(ValueError):
            catalog("cyclic:5:planar")


class TestVerifyRepresentation:
    def test_trivial_rep_valid(self):
        cat = catalog("dihedral:4")
        triv = RealIrrep("t", 1, "absolutely-real", cat.action,
                         [((Fraction(1),),)] * 2)
        assert verify_representation(triv, cat.action).ok

    def test_corrupted_sign_detected(self):
        cat = catalog("dihedral:4")
        bad = RealIrrep("bad", 2, "absolutely-real", cat.action,
                        [((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0))),
                         ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))])
        report = verify_representation(bad, cat.action)
        assert not report.ok
        assert any("homomorphism" in v for v in report.violations)


class TestRealify:
    def test_c4_pair_gives_quarter_turn(self):
        cat = catalog("cyclic:4")
        rot = cat.irrep("theta3")
        gen = cat.action.generators[0]
        assert rot.kind == "complex-type"
        assert rot.matrix(gen) == [[0, -1], [1, 0]]

    def test_c3_pair_gives_rotation_by_120(self):
        cat = catalog("cyclic:3")
        rot = [r for r in cat.irreps if r.dim == 2][0]
        gen = cat.action.generators[0]
        m = rot.matrix(gen)
        assert m[0][0] == Fraction(-1, 2)
        assert m[1][0] == Quad.root(3, Fraction(1, 2))
        assert verify_representation(rot, cat.action).ok

    def test_absolutely_real_input_rejected(self):
        act = close_group([[[Fraction(-1)]]])
        re = [[[Fraction(-1)]]]
        im = [[[Fraction(0)]]]
        with pytest.raises(ValueError, match="absolutely real"):
            realify_pair(ComplexIrrep(1, re, im), ComplexIrrep(1, re, im), act)


IRREP_TABLE = """
group n=1
generators 1
matrix 1 1
-1
irrep label=trivial dim=1 kind=absolutely-real
matrix 1 1
1
irrep label=sign dim=1 kind=absolutely-real
matrix 1 1
-1
end
"""


class TestIrrepTableFormat:
    def test_load_and_verify(self):
        cat = load_irrep_table(IRREP_TABLE)
        assert cat.action.order == 2
        assert [r.label for r in cat.irreps] == ["trivial", "sign"]

    def test_corrupted_table_rejected(self):
        bad = IRREP_TABLE.replace("label=sign dim=1", "label=sign dim=1") \
            .replace("matrix 1 1\n-1\nend", "matrix 1 1\n2\nend")
        with pytest.raises(ValueError):
            load_irrep_table(bad)
