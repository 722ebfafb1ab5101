"""Morphism and derivation validation, named generators, compatibility."""

import numpy as np
import pytest

from baerkit import StructuralError, make_field, make_product, make_zmod
from baerkit.construct import ShiftRingOps, make_skew_triangular, make_upper_triangular
from baerkit.maps import (
    AlphaDerivation,
    MorphismViolation,
    check_derivation,
    check_endomorphism,
    extend_to_triangular,
    fixes_idempotents,
    frobenius,
    identity_morphism,
    inner_derivation,
    is_alpha_compatible,
    is_delta_compatible,
    is_rigid,
    product_swap,
    require_endomorphism,
    shift_ring_compatibility_witness,
    zero_derivation,
)


class TestEndomorphismValidation:
    def test_identity_always_valid(self):
        for n in (2, 5, 12):
            m = identity_morphism(make_zmod(n))
            assert m.is_automorphism
            assert m(3 % n) == 3 % n

    def test_rejects_non_additive_map(self):
        z4 = make_zmod(4)
        out = check_endomorphism(z4, [0, 2, 1, 3])
        assert isinstance(out, MorphismViolation)

    def test_rejects_map_not_fixing_one(self):
        z4 = make_zmod(4)
        out = check_endomorphism(z4, [0, 3, 2, 1])
        assert isinstance(out, MorphismViolation)
        assert out.law == "unital"

    def test_doubling_on_z6_not_unital(self):
        z6 = make_zmod(6)
        out = check_endomorphism(z6, [(2 * a) % 6 for a in range(6)])
        assert isinstance(out, MorphismViolation)

    def test_power_vec(self):
        f8 = make_field(2, 3)
        fr = frobenius(f8)
        # x -> x^2 has order 3 on F_8
        assert (fr.power_vec(3) == np.arange(8)).all()
        assert not (fr.power_vec(1) == np.arange(8)).all()
        assert (fr.power_vec(-1) == fr.power_vec(2)).all()


class TestFrobenius:
    def test_identity_on_prime_field(self):
        fr = frobenius(make_zmod(5))
        assert (fr.vec == np.arange(5)).all()

    def test_f4_frobenius_is_squaring(self):
        f4 = make_field(2, 2)
        fr = frobenius(f4)
        for a in range(4):
            assert fr(a) == f4.mul(a, a)
        assert fr.is_automorphism

    def test_fixed_field_is_prime_field(self):
        f9 = make_field(3, 2)
        fr = frobenius(f9)
        fixed = [a for a in range(9) if fr(a) == a]
        assert len(fixed) == 3


class TestSwapAndExtensions:
    def test_swap_is_involution(self):
        z2 = make_zmod(2)
        r = make_product(z2, z2)
        sw = product_swap(r)
        assert (sw.vec[sw.vec] == np.arange(4)).all()

    def test_swap_needs_identical_factors(self):
        r = make_product(make_zmod(2), make_zmod(3))
        with pytest.raises(StructuralError):
            product_swap(r)

    def test_entrywise_extension_commutes(self):
        f4 = make_field(2, 2)
        fr = frobenius(f4)
        tri = make_skew_triangular(f4, 2, fr.vec, "T")
        ext = extend_to_triangular(fr, tri)
        assert ext.is_automorphism
        # the extension acts entrywise
        ent = tri.structure["entries_of"]
        for a in range(tri.order):
            img = ent(ext(a))
            src = ent(a)
            assert (img == fr.vec[src]).all()


class TestDerivations:
    def test_zero_derivation_valid(self):
        z6 = make_zmod(6)
        d = zero_derivation(z6, identity_morphism(z6))
        assert d.is_zero()
        assert isinstance(check_derivation(z6, d.alpha, d.vec), AlphaDerivation)

    def test_inner_derivation_satisfies_leibniz(self):
        ut = make_upper_triangular(make_zmod(2), 2)
        alpha = identity_morphism(ut)
        for b in range(ut.order):
            d = inner_derivation(ut, alpha, b)
            A, M = ut.add_table, ut.mul_table
            for x in range(ut.order):
                for y in range(ut.order):
                    lhs = d(ut.mul(x, y))
                    rhs = ut.add(ut.mul(d(x), y), ut.mul(alpha(x), d(y)))
                    assert lhs == rhs

    def test_inner_derivation_on_commutative_ring_is_zero(self):
        z6 = make_zmod(6)
        alpha = identity_morphism(z6)
        for b in range(6):
            assert inner_derivation(z6, alpha, b).is_zero()

    def test_rejects_non_derivation_vector(self):
        z4 = make_zmod(4)
        out = check_derivation(z4, identity_morphism(z4), [0, 1, 1, 1])
        assert isinstance(out, MorphismViolation)


class TestCompatibility:
    def test_identity_always_compatible(self):
        for n in (2, 4, 6, 9):
            ok, wit = is_alpha_compatible(identity_morphism(make_zmod(n)))
            assert ok and wit is None

    def test_frobenius_compatible_on_fields(self):
        ok, _ = is_alpha_compatible(frobenius(make_field(2, 2)))
        assert ok

    def test_swap_incompatible_on_z2xz2(self):
        z2 = make_zmod(2)
        r = make_product(z2, z2)
        ok, wit = is_alpha_compatible(product_swap(r))
        assert not ok
        a, b = wit
        z = r.zero
        assert (r.mul(a, b) == z) != (r.mul(a, product_swap(r)(b)) == z)

    def test_zero_derivation_compatible(self):
        z6 = make_zmod(6)
        ok, _ = is_delta_compatible(zero_derivation(z6, identity_morphism(z6)))
        assert ok

    def test_rigid_iff_reduced_for_identity(self):
        # for alpha = id, rigidity is exactly reducedness
        from baerkit.classify import is_reduced

        for n in (2, 4, 6, 8, 9, 12):
            r = make_zmod(n)
            assert is_rigid(identity_morphism(r))[0] == is_reduced(r)

    def test_fixes_idempotents(self):
        z2 = make_zmod(2)
        r = make_product(z2, z2)
        ok, e = fixes_idempotents(product_swap(r))
        assert not ok
        assert r.mul(e, e) == e

    def test_shift_ring_witness_exists(self):
        ops = ShiftRingOps(make_zmod(3))
        wit = shift_ring_compatibility_witness(ops)
        assert wit is not None
        a, b = wit
        assert ops.mul(a, b).is_zero()
        assert not ops.mul(a, ops.alpha(b)).is_zero()
