"""Spec grammar: parse/serialize round trips, positioned errors, builders."""

import numpy as np
import pytest

from baerkit import StructuralError, make_field, make_zmod
from baerkit.specs import (
    SpecError,
    build_derivation,
    build_morphism,
    build_ring,
    parse_derivation_spec,
    parse_morphism_spec,
    parse_spec,
    serialize,
)

ROUND_TRIPS = [
    "zmod 6",
    "field 2 2",
    "product (zmod 2) (zmod 3)",
    "matrix 2 (zmod 2)",
    "upper_triangular 2 (zmod 3)",
    "skew_triangular T 2 (field 2 2) (frobenius)",
    "skew_triangular B 4 (zmod 2) (identity)",
    "quotient (zmod 8) [4]",
    "product (product (zmod 2) (zmod 2)) (zmod 3)",
]


class TestRingSpecs:
    @pytest.mark.parametrize("text", ROUND_TRIPS)
    def test_round_trip(self, text):
        spec = parse_spec(text)
        assert serialize(parse_spec(serialize(spec))) == serialize(spec)

    def test_whitespace_and_parens_normalize(self):
        a = parse_spec("  product   ( zmod 2 )   (zmod 3)")
        b = parse_spec("product (zmod 2) (zmod 3)")
        assert a == b

    def test_build_matches_direct_constructors(self):
        r = build_ring(parse_spec("product (zmod 2) (zmod 3)"))
        assert r.order == 6
        f = build_ring(parse_spec("field 2 3"))
        assert f.order == 8
        q = build_ring(parse_spec("quotient (zmod 16) [4]"))
        assert q.order == 4

    def test_unknown_constructor_position(self):
        with pytest.raises(SpecError) as exc:
            parse_spec("product (zmod 2) (blah 3)")
        assert exc.value.pos == len("product (zmod 2) (")

    def test_trailing_input_rejected(self):
        with pytest.raises(SpecError) as exc:
            parse_spec("zmod 6 zmod 7")
        assert "trailing" in str(exc.value)

    def test_truncated_input(self):
        with pytest.raises(SpecError):
            parse_spec("product (zmod 2)")

    def test_empty_spec(self):
        with pytest.raises(SpecError):
            parse_spec("   ")

    def test_non_integer_argument(self):
        with pytest.raises(SpecError) as exc:
            parse_spec("zmod six")
        assert exc.value.pos == 5

    def test_unknown_family(self):
        with pytest.raises(SpecError):
            parse_spec("skew_triangular X 2 (zmod 2) (identity)")

    def test_unterminated_list(self):
        with pytest.raises(SpecError):
            parse_spec("quotient (zmod 8) [4")


class TestMorphismSpecs:
    def test_round_trip(self):
        for text in ("identity", "frobenius", "swap", "entrywise (frobenius)",
                     "table [0 1 2 3]"):
            expr = parse_morphism_spec(text)
            assert parse_morphism_spec(_reser(expr)) == expr

    def test_build_identity_and_frobenius(self):
        f4 = make_field(2, 2)
        ident = build_morphism(f4, "identity")
        assert (ident.vec == np.arange(4)).all()
        fr = build_morphism(f4, "frobenius")
        for a in range(4):
            assert fr(a) == f4.mul(a, a)

    def test_build_table_validates(self):
        z4 = make_zmod(4)
        assert build_morphism(z4, "table [0 1 2 3]").is_automorphism
        with pytest.raises(StructuralError):
            build_morphism(z4, "table [0 2 1 3]")

    def test_entrywise_needs_family_ring(self):
        with pytest.raises(StructuralError):
            build_morphism(make_zmod(4), "entrywise (identity)")

    def test_trailing_rejected(self):
        with pytest.raises(SpecError):
            parse_morphism_spec("identity swap")


class TestDerivationSpecs:
    def test_round_trip(self):
        for text in ("zero", "inner 3", "table [0 0 0 0]"):
            expr = parse_derivation_spec(text)
            assert parse_derivation_spec(_reser(expr)) == expr

    def test_build_zero(self):
        z6 = make_zmod(6)
        from baerkit.maps import identity_morphism

        d = build_derivation(z6, identity_morphism(z6), "zero")
        assert d.is_zero()

    def test_build_inner_validates(self):
        from baerkit.construct import make_skew_triangular
        from baerkit.maps import frobenius, identity_morphism

        f4 = make_field(2, 2)
        tri = make_skew_triangular(f4, 2, frobenius(f4).vec, "T")
        d = build_derivation(tri, identity_morphism(tri), "inner 2")
        assert not d.is_zero()

    def test_bad_table_rejected(self):
        z4 = make_zmod(4)
        from baerkit.maps import identity_morphism

        with pytest.raises(StructuralError):
            build_derivation(z4, identity_morphism(z4), "table [0 1 1 1]")


def _reser(expr):
    from baerkit.specs import _serialize

    return _serialize(expr)
