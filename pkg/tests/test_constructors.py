"""Constructor tests: documented id layouts, family laws, brute-force products."""

import numpy as np
import pytest

from baerkit import (
    OrderCapExceeded,
    StructuralError,
    make_field,
    make_matrix,
    make_product,
    make_quotient,
    make_upper_triangular,
    make_zmod,
    validate_axioms,
)
from baerkit.construct import (
    ShiftRingOps,
    make_skew_triangular,
    smallest_irreducible,
)
from baerkit.ring import two_sided_ideal


class TestZmod:
    def test_ids_are_residues(self):
        r = make_zmod(10)
        assert r.mul(7, 8) == 56 % 10
        assert r.add(7, 8) == 5

    def test_minimum_size(self):
        with pytest.raises(StructuralError):
            make_zmod(1)

    def test_cap(self):
        with pytest.raises(OrderCapExceeded):
            make_zmod(100, order_cap=50)


class TestField:
    def test_rejects_composite_characteristic(self):
        with pytest.raises(StructuralError):
            make_field(4, 1)

    def test_f4_structure(self):
        f4 = make_field(2, 2)
        assert f4.order == 4
        assert validate_axioms(f4) == []
        # multiplicative group has order 3: a^3 = 1 for every nonzero a
        for a in range(4):
            if a == f4.zero:
                continue
            assert f4.mul(f4.mul(a, a), a) == f4.one

    def test_f4_has_no_zero_divisors(self):
        f4 = make_field(2, 2)
        for a in range(1, 4):
            for b in range(1, 4):
                assert f4.mul(a, b) != 0

    @pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (5, 2)])
    def test_prime_power_fields_are_fields(self, p, k):
        f = make_field(p, k)
        assert validate_axioms(f) == []
        # every nonzero element invertible
        for a in range(f.order):
            if a == f.zero:
                continue
            assert any(f.mul(a, b) == f.one for b in range(f.order))

    def test_smallest_irreducible_is_irreducible(self):
        # x^2 + x + 1 is the first monic irreducible of degree 2 over Z_2
        assert smallest_irreducible(2, 2) == [1, 1, 1]


class TestProduct:
    def test_id_layout(self):
        r = make_product(make_zmod(3), make_zmod(4))
        # id = id1 * 4 + id2
        a = 2 * 4 + 3
        b = 1 * 4 + 2
        prod = r.mul(a, b)
        assert prod == ((2 * 1) % 3) * 4 + (3 * 2) % 4

    def test_componentwise_units(self):
        r = make_product(make_zmod(2), make_zmod(3))
        assert r.one == 1 * 3 + 1
        assert validate_axioms(r) == []


class TestQuotient:
    def test_z16_mod_4(self):
        z16 = make_zmod(16)
        q = make_quotient(z16, two_sided_ideal(z16, [4]))
        assert q.order == 4
        assert validate_axioms(q) == []
        # isomorphic to Z4: the class of 1 has additive order 4
        x = q.one
        acc = q.zero
        for _ in range(3):
            acc = q.add(acc, x)
            assert acc != q.zero
        assert q.add(acc, x) == q.zero

    def test_requires_validated_ideal(self):
        z16 = make_zmod(16)
        from baerkit.ring import ElementSet

        with pytest.raises(StructuralError):
            make_quotient(z16, ElementSet(z16, [0, 4], "two_sided_ideal"))


class TestMatrix:
    def test_m2_z2_order_and_laws(self):
        m = make_matrix(make_zmod(2), 2)
        assert m.order == 16
        assert validate_axioms(m) == []

    def test_matrix_product_matches_hand_example(self):
        m = make_matrix(make_zmod(2), 2)
        # row-major little-endian ids: entry (i, j) has weight 2^(2i + j)
        e00, e01, e10, e11 = 1, 2, 4, 8
        assert m.mul(e01, e10) == e00
        assert m.mul(e10, e01) == e11
        assert m.mul(e01, e01) == m.zero
        assert m.one == e00 + e11


def _brute_product(r, a, b):
    """Entrywise skew product recomputed from the structural decode."""
    st = r.structure
    base, nm, sig = st["base"], st["n_mat"], st["sigma"]
    spow = [np.arange(base.order)]
    for _ in range(nm - 1):
        spow.append(sig[spow[-1]])
    ea, eb = st["entries_of"](a), st["entries_of"](b)
    out = np.full((nm, nm), base.zero, dtype=np.int64)
    for i in range(nm):
        for j in range(i, nm):
            acc = base.zero
            for k in range(i, j + 1):
                acc = base.add_table[acc, base.mul_table[ea[i, k], spow[k - i][eb[k, j]]]]
            out[i, j] = acc
    return out


SKEW_CASES = [
    ("full", 2, make_zmod(3), None),
    ("full", 3, make_zmod(2), None),
    ("S", 3, make_zmod(2), None),
    ("T", 2, make_zmod(4), None),
    ("T", 3, make_zmod(2), None),
    ("A", 4, make_zmod(2), None),
    ("B", 4, make_zmod(2), None),
    ("T", 2, make_field(2, 2), "frobenius"),
]


class TestSkewTriangular:
    @pytest.mark.parametrize("family,n,base,twist", SKEW_CASES,
                             ids=lambda v: str(getattr(v, "provenance", v)))
    def test_products_match_bruteforce(self, family, n, base, twist):
        from baerkit.maps import frobenius

        sigma = frobenius(base).vec if twist else np.arange(base.order)
        r = make_skew_triangular(base, n, sigma, family)
        assert validate_axioms(r) == []
        rng = np.random.default_rng(0)
        for _ in range(80):
            a, b = map(int, rng.integers(0, r.order, 2))
            expected = _brute_product(r, a, b)
            assert (r.structure["entries_of"](r.mul(a, b)) == expected).all()

    def test_t_family_is_truncated_polynomials(self):
        # T over Z_2 with n = 2: elements a + bt with t^2 = 0
        r = make_skew_triangular(make_zmod(2), 2, np.arange(2), "T")
        assert r.order == 4
        enc = r.structure["encode"]
        t = enc([0, 1])
        assert r.mul(t, t) == r.zero

    def test_sigma_must_fix_one(self):
        base = make_zmod(4)
        bad = np.array([0, 2, 1, 3])
        with pytest.raises(StructuralError):
            make_skew_triangular(base, 2, bad, "T")

    def test_b_family_needs_even_size(self):
        with pytest.raises(StructuralError):
            make_skew_triangular(make_zmod(2), 3, np.arange(2), "B")

    def test_upper_triangular_agrees_with_full_family(self):
        base = make_zmod(3)
        ut = make_upper_triangular(base, 2)
        full = make_skew_triangular(base, 2, np.arange(3), "full")
        assert (ut.add_table == full.add_table).all()
        assert (ut.mul_table == full.mul_table).all()


class TestShiftRing:
    def test_zero_product_with_twisted_nonzero(self):
        ops = ShiftRingOps(make_zmod(2))
        a = ops.indicator(1)
        b = ops.indicator(0)
        assert ops.mul(a, b).is_zero()
        twisted = ops.mul(a, ops.alpha(b))
        assert not twisted.is_zero()
        assert twisted == a

    def test_shift_moves_support(self):
        ops = ShiftRingOps(make_zmod(2))
        e = ops.indicator(3)
        assert ops.alpha(e).support == ((4, 1),)
