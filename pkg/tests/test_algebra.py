import pytest

from singq.algebra import (AlgebraError, InvalidStructureError,
                           OperationTable, OrientedSingquandle,
                           ParameterError, Psyquandle, ShadowStructure,
                           affine_singquandle, are_isomorphic,
                           formula_shadow, formula_structure,
                           is_homomorphism, parse_algebra, quandle_from_group,
                           shadow_closure, substructure_closure,
                           validate_psyquandle, validate_quandle,
                           validate_shadow, validate_singquandle)
from singq.exprs import eval_table


def table(n, fn):
    return OperationTable.from_function(n, fn)


class TestQuandleValidation:
    def test_dihedral_is_valid(self):
        assert validate_quandle(table(5, lambda x, y: -x + 2 * y)).valid

    def test_one_element(self):
        assert validate_quandle(OperationTable([[0]])).valid

    def test_addition_fails_idempotency(self):
        report = validate_quandle(table(3, lambda x, y: x + y))
        assert not report.valid
        assert ("quandle.idempotency", (1,)) in report.violations


class TestSingquandleValidation:
    def test_z6_structure(self, z6):
        assert validate_singquandle(z6.star, z6.r1, z6.r2).valid

    def test_projection_maps_are_valid(self):
        star = table(5, lambda x, y: -x + 2 * y)
        r1 = table(5, lambda x, y: x)
        r2 = table(5, lambda x, y: y)
        assert validate_singquandle(star, r1, r2).valid

    def test_zero_maps_fail_with_witness(self):
        star = table(3, lambda x, y: 2 * y - x)
        zero = table(3, lambda x, y: 0)
        report = validate_singquandle(star, zero, zero)
        assert not report.valid
        assert ("singquandle.axiom1", (0, 1, 0)) in report.violations

    def test_quandle_prerequisite_reported(self):
        bad = table(3, lambda x, y: x + y)
        report = validate_singquandle(bad, bad, bad)
        assert ("singquandle.prerequisite_quandle", ()) in report.violations

    def test_star_inverse_is_two_sided(self, z6, z8k):
        for s in (z6, z8k):
            for x in range(s.n):
                for y in range(s.n):
                    assert s.op_inv(s.op(x, y), y) == x
                    assert s.op(s.op_inv(x, y), y) == x


class TestAffineFamily:
    def test_valid_parameters(self):
        s = affine_singquandle(6, 5, 1, 0)
        assert validate_singquandle(s.star, s.r1, s.r2).valid

    def test_non_invertible_a(self):
        with pytest.raises(ParameterError):
            affine_singquandle(4, 2, 1, 0)

    def test_compatibility_condition(self):
        s = affine_singquandle(4, 1, 2, 2)
        assert validate_singquandle(s.star, s.r1, s.r2).valid
        with pytest.raises(ParameterError):
            affine_singquandle(6, 5, 1, 1)


class TestFormulaStructure:
    def test_z8_structures(self):
        formula_structure(8, "5x+4y", "6+5x+6x y", "6+5y+6x y")
        formula_structure(8, "3x-2y", "7x+6y", "2x+3y")

    def test_invalid_formula_reports_witnesses(self):
        with pytest.raises(InvalidStructureError) as exc:
            formula_structure(6, "x", "x", "x")
        assert exc.value.report.violations

    def test_malformed_expression(self):
        with pytest.raises(Exception):
            formula_structure(6, "x +* y", "x", "y")


class TestGroupQuandles:
    def test_abelian_conjugation_is_trivial(self):
        add3 = table(3, lambda x, y: x + y)
        q = quandle_from_group(add3, "conj")
        assert q == table(3, lambda x, y: x)

    def test_core_of_z4_is_dihedral(self):
        add4 = table(4, lambda x, y: x + y)
        q = quandle_from_group(add4, "core")
        assert q == table(4, lambda x, y: 2 * y - x)

    def test_s3_conjugation_quandle(self):
        # elements of S3 as permutation tuples, composed left-to-right
        perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1),
                 (0, 2, 1), (2, 1, 0), (1, 0, 2)]
        index = {p: i for i, p in enumerate(perms)}
        mult = OperationTable(
            [[index[tuple(q[p[i]] for i in range(3))] for q in perms]
             for p in perms])
        q = quandle_from_group(mult, "conj")
        assert validate_quandle(q).valid

    def test_non_group_rejected(self):
        with pytest.raises(AlgebraError):
            quandle_from_group(table(3, lambda x, y: 0), "conj")

    def test_unknown_mode(self):
        add3 = table(3, lambda x, y: x + y)
        with pytest.raises(ParameterError):
            quandle_from_group(add3, "other")


class TestPsyquandle:
    def test_bundled_six_element_structure(self, psy6):
        report = validate_psyquandle(psy6.ut, psy6.ot, psy6.ub, psy6.ob)
        assert report.valid

    def test_biquandle_lift(self, psy6):
        lifted = Psyquandle.from_biquandle(psy6.ut, psy6.ot)
        assert validate_psyquandle(lifted.ut, lifted.ot,
                                   lifted.ub, lifted.ob).valid
        assert lifted.pI_adequate

    def test_constant_action_biquandle(self):
        # x < y = x < y = sigma(x) for a cyclic shift sigma
        n = 4
        shift = table(n, lambda x, y: x + 1)
        lifted = Psyquandle.from_biquandle(shift, shift)
        assert validate_psyquandle(lifted.ut, lifted.ot,
                                   lifted.ub, lifted.ob).valid

    def test_corrupted_table_reports_witness(self, psy6):
        rows = [list(r) for r in psy6.ub.rows]
        rows[0][0] = (rows[0][0] + 1) % psy6.n
        report = validate_psyquandle(psy6.ut, psy6.ot,
                                     OperationTable(rows), psy6.ob)
        assert not report.valid

    def test_pairings_are_bijections(self, psy6):
        seen = {psy6.smap(x, y) for x in range(6) for y in range(6)}
        seen_prime = {psy6.sprime(x, y) for x in range(6) for y in range(6)}
        assert len(seen) == 36 and len(seen_prime) == 36


class TestShadow:
    def test_bundled_shadows_are_valid(self, z8_z6_shadow, z8_z4_shadow_a,
                                       z8_z4_shadow_b):
        for sh in (z8_z6_shadow, z8_z4_shadow_a, z8_z4_shadow_b):
            assert validate_shadow(sh.base, sh.action).valid

    def test_trivial_action(self, z6):
        sh = formula_shadow(z6, 4, "x")
        assert validate_shadow(sh.base, sh.action).valid

    def test_invalid_action_witnessed(self, z8_z4_shadow_a):
        base = z8_z4_shadow_a.base
        rows = eval_table("x+s", 4, ("x", "s"), cols=8)
        report = validate_shadow(base, rows)
        assert not report.valid

    def test_action_inverse(self, z8_z6_shadow):
        sh = z8_z6_shadow
        for x in range(sh.carrier):
            for s in range(sh.base.n):
                assert sh.act_inv(sh.act(x, s), s) == x


class TestHomomorphisms:
    def test_identity(self, z6):
        assert is_homomorphism(list(range(6)), z6, z6)

    def test_constant_map(self, z6):
        for e in range(6):
            expected = z6.r1(e, e) == e and z6.r2(e, e) == e
            assert is_homomorphism([e] * 6, z6, z6) == expected

    def test_random_bijection_usually_fails(self, z6):
        assert not is_homomorphism([1, 0, 2, 3, 4, 5], z6, z6)

    def test_partial_map_rejected(self, z6):
        with pytest.raises(AlgebraError):
            is_homomorphism([0, 1], z6, z6)


class TestIsomorphism:
    def test_reflexive(self, z6):
        f = are_isomorphic(z6, z6)
        assert f is not None and is_homomorphism(f, z6, z6)

    def test_relabeling(self, z6):
        perm = [3, 1, 4, 0, 5, 2]
        moved = z6.relabel(perm)
        f = are_isomorphic(z6, moved)
        assert f is not None and is_homomorphism(f, z6, moved)

    def test_distinguishes_order_two_structures(self):
        triv = formula_structure(2, "x", "x", "y")
        other = formula_structure(2, "x", "x+1", "y+1")
        assert are_isomorphic(triv, other) is None

    def test_symmetric(self, z8k, z6):
        assert are_isomorphic(z6, z8k) is None
        assert are_isomorphic(z8k, z6) is None


class TestClosures:
    def test_empty_and_full(self, z6):
        assert substructure_closure(z6, ()) == frozenset()
        assert substructure_closure(z6, range(6)) == frozenset(range(6))

    def test_z8_seed_matches_naive_fixpoint(self, z8k):
        seed = {0}
        closure = substructure_closure(z8k, seed)
        naive = set(seed)
        changed = True
        while changed:
            changed = False
            for x in list(naive):
                for y in list(naive):
                    for v in (z8k.op(x, y), z8k.op_inv(x, y),
                              z8k.r1(x, y), z8k.r2(x, y)):
                        if v not in naive:
                            naive.add(v)
                            changed = True
        assert closure == frozenset(naive)

    def test_shadow_closure(self, z8_z6_shadow):
        assert shadow_closure(z8_z6_shadow, {0}, ()) == frozenset({0})
        assert shadow_closure(z8_z6_shadow, {0}, range(8)) == frozenset({0, 3})


class TestFileFormat:
    def test_round_trip_verdicts(self):
        text = ("type: singquandle\norder: 6\n"
                "formula: star -x+2y\nformula: r1 3+2x-y\nformula: r2 3+x\n")
        loaded = parse_algebra(text)
        s = loaded.structure
        again = ("type: singquandle\norder: 6\nstar:\n"
                 + "\n".join(" ".join(str(v + 1) for v in row)
                             for row in s.star.rows)
                 + "\nr1:\n"
                 + "\n".join(" ".join(str(v + 1) for v in row)
                             for row in s.r1.rows)
                 + "\nr2:\n"
                 + "\n".join(" ".join(str(v + 1) for v in row)
                             for row in s.r2.rows) + "\n")
        assert parse_algebra(again).structure == s

    def test_unknown_type_rejected(self):
        with pytest.raises(AlgebraError):
            parse_algebra("type: magma\norder: 2\n")

    def test_missing_block_rejected(self):
        with pytest.raises(AlgebraError):
            parse_algebra("type: quandle\norder: 2\n")

    def test_out_of_range_entry_rejected(self):
        with pytest.raises(AlgebraError):
            parse_algebra("type: quandle\norder: 2\nstar:\n1 3\n2 2\n")
