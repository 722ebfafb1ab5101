"""Ordered monoids and monoid algebras: order axioms, convolution oracles,
idempotent enumeration, and the transfer suite."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from baerkit import StructuralError, make_field, make_zmod
from baerkit.construct import make_upper_triangular
from baerkit.monoid import (
    MonoidElement,
    NkMonoid,
    QPlusMonoid,
    enumerate_box_idempotents,
    enumerate_support_idempotents,
    head_and_membership_check,
    monoid_constant,
    monoid_mul,
    monoid_term,
    monoid_transfer_suite,
    order_axiom_check,
    product_dominates_factors,
)


class TestOrders:
    @pytest.mark.parametrize("order", NkMonoid.ORDERS)
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_axioms_hold(self, order, k):
        ok, info = order_axiom_check(NkMonoid(k, order), samples=2_000)
        assert ok, info

    def test_qplus_axioms_hold(self):
        ok, info = order_axiom_check(QPlusMonoid(), samples=2_000)
        assert ok, info

    def test_lex_vs_revlex_disagree(self):
        m = NkMonoid(2, "lex")
        r = NkMonoid(2, "revlex")
        assert m.leq((0, 5), (1, 0))
        assert not r.leq((0, 5), (1, 0))

    def test_grlex_by_total_degree_first(self):
        g = NkMonoid(2, "grlex")
        assert g.leq((0, 2), (3, 0))
        assert not g.leq((3, 0), (0, 2))

    def test_rejects_unknown_order(self):
        with pytest.raises(StructuralError):
            NkMonoid(2, "colex")

    def test_validate_rejects_negatives(self):
        with pytest.raises(StructuralError):
            NkMonoid(2).validate((1, -1))
        with pytest.raises(StructuralError):
            QPlusMonoid().validate(Fraction(-1, 2))

    def test_box_is_sorted(self):
        m = NkMonoid(2, "revlex")
        box = m.box((2, 2))
        assert len(box) == 9
        assert box[0] == (0, 0)
        keys = [m.key(g) for g in box]
        assert keys == sorted(keys)

    def test_product_dominates_factors(self):
        m = NkMonoid(2, "lex")
        assert product_dominates_factors(m, (1, 0), (0, 3))
        q = QPlusMonoid()
        assert product_dominates_factors(q, Fraction(1, 2), Fraction(1, 3))
        with pytest.raises(StructuralError):
            product_dominates_factors(q, Fraction(0), Fraction(0))


def naive_convolution(f, g):
    """Dictionary convolution with plain loops."""
    base, monoid = f.base, f.monoid
    out = {}
    for gg, a in f.terms.items():
        for hh, b in g.terms.items():
            k = monoid.op(gg, hh)
            out[k] = base.add(out.get(k, base.zero), base.mul(a, b))
    return MonoidElement(base, monoid, out)


class TestAlgebra:
    def test_terms_sorted_and_cleaned(self):
        z6 = make_zmod(6)
        m = NkMonoid(2, "lex")
        e = MonoidElement(z6, m, {(1, 0): 2, (0, 1): 3, (2, 2): 0})
        assert list(e.terms) == [(0, 1), (1, 0)]
        assert e.least() == ((0, 1), 3)

    @pytest.mark.parametrize("order", NkMonoid.ORDERS)
    def test_mul_matches_naive(self, order):
        z6 = make_zmod(6)
        m = NkMonoid(2, order)
        rng = np.random.default_rng(3)
        supp = m.box((2, 2))
        for _ in range(80):
            f = MonoidElement(z6, m, {
                supp[int(i)]: int(v)
                for i, v in zip(rng.integers(0, len(supp), 3), rng.integers(0, 6, 3))
            })
            g = MonoidElement(z6, m, {
                supp[int(i)]: int(v)
                for i, v in zip(rng.integers(0, len(supp), 3), rng.integers(0, 6, 3))
            })
            assert monoid_mul(f, g) == naive_convolution(f, g)

    def test_qplus_mul_matches_naive(self):
        f4 = make_field(2, 2)
        q = QPlusMonoid()
        supp = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2)]
        rng = np.random.default_rng(4)
        for _ in range(60):
            f = MonoidElement(f4, q, {s: int(v) for s, v in zip(supp, rng.integers(0, 4, 4))})
            g = MonoidElement(f4, q, {s: int(v) for s, v in zip(supp, rng.integers(0, 4, 4))})
            assert monoid_mul(f, g) == naive_convolution(f, g)

    def test_support_bound_truncates(self):
        z6 = make_zmod(6)
        m = NkMonoid(1, "lex")
        f = MonoidElement(z6, m, {(1,): 1, (2,): 1})
        g = MonoidElement(z6, m, {(1,): 1, (3,): 1})
        full = monoid_mul(f, g)
        cut = monoid_mul(f, g, support_bound=(3,))
        assert set(cut.terms) == {k for k in full.terms if k <= (3,)}

    def test_k1_lex_matches_skew_polynomials(self):
        # N^1 algebra over any base with the identity twist is exactly the
        # untruncated polynomial ring; cross-module oracle against skewext
        from baerkit.maps import identity_morphism
        from baerkit.skewext import SkewContext, SkewSeries, skew_mul

        z6 = make_zmod(6)
        m = NkMonoid(1, "lex")
        N = 3
        ctx = SkewContext(z6, identity_morphism(z6), 2 * N, kind="polynomial")
        rng = np.random.default_rng(7)
        for _ in range(50):
            ca = [int(v) for v in rng.integers(0, 6, N + 1)]
            cb = [int(v) for v in rng.integers(0, 6, N + 1)]
            pa = SkewSeries(ctx, ca + [0] * N)
            pb = SkewSeries(ctx, cb + [0] * N)
            ma = MonoidElement(z6, m, {(i,): v for i, v in enumerate(ca)})
            mb = MonoidElement(z6, m, {(i,): v for i, v in enumerate(cb)})
            prod = monoid_mul(ma, mb)
            expect = skew_mul(pa, pb)
            for d in range(2 * N + 1):
                c = expect.coeffs[d] if d < len(expect.coeffs) else 0
                assert prod.terms.get((d,), 0) == c


class TestIdempotents:
    @pytest.mark.parametrize("order", ["lex", "revlex"])
    def test_box_enumeration_matches_bruteforce(self, order):
        z4 = make_zmod(4)
        m = NkMonoid(2, order)
        box = (1, 1)
        fast, skipped = enumerate_box_idempotents(z4, m, box)
        positions = m.box(box)
        slow = []
        for vec in itertools.product(range(4), repeat=len(positions)):
            cand = MonoidElement(z4, m, dict(zip(positions, vec)))
            if monoid_mul(cand, cand) == cand:
                slow.append(cand)
        assert {tuple(e.terms.items()) for e in fast} == {
            tuple(e.terms.items()) for e in slow
        }
        assert skipped >= 0

    def test_enumeration_is_exact_not_truncated(self):
        # every returned element genuinely squares to itself, untruncated
        z6 = make_zmod(6)
        m = NkMonoid(2, "lex")
        out, _ = enumerate_box_idempotents(z6, m, (1, 1))
        for e in out:
            assert monoid_mul(e, e) == e

    def test_support_enumeration_qplus(self):
        z4 = make_zmod(4)
        q = QPlusMonoid()
        supp = [Fraction(0), Fraction(1, 2), Fraction(1)]
        out = enumerate_support_idempotents(z4, q, supp)
        slow = []
        for vec in itertools.product(range(4), repeat=3):
            cand = MonoidElement(z4, q, dict(zip(supp, vec)))
            if monoid_mul(cand, cand) == cand:
                slow.append(cand)
        assert {tuple(e.terms.items()) for e in out} == {
            tuple(e.terms.items()) for e in slow
        }

    def test_head_and_membership_universal(self):
        for base in (make_zmod(6), make_upper_triangular(make_zmod(2), 2)):
            out, _ = enumerate_box_idempotents(base, NkMonoid(2, "lex"), (1, 1))
            for e in out:
                assert head_and_membership_check(e)

    def test_head_check_rejects_non_idempotent(self):
        z6 = make_zmod(6)
        bad = monoid_constant(z6, NkMonoid(1, "lex"), 2)
        with pytest.raises(StructuralError):
            head_and_membership_check(bad)


class TestTransferSuite:
    @pytest.mark.parametrize("order", ["lex", "revlex"])
    def test_nk_box_suite_passes(self, order):
        for base in (make_zmod(6), make_field(2, 2), make_upper_triangular(make_zmod(2), 2)):
            res = monoid_transfer_suite(base, NkMonoid(2, order), box=(2, 2))
            assert res.passed, res.counterexample
            assert res.bounds["order"] == f"N^2:{order}"

    def test_qplus_support_suite_passes(self):
        supp = [Fraction(0), Fraction(1, 2), Fraction(1)]
        for base in (make_zmod(6), make_field(2, 2)):
            res = monoid_transfer_suite(base, QPlusMonoid(), support=supp)
            assert res.passed, res.counterexample
            assert res.bounds["support"] == ["0", "1/2", "1"]

    def test_needs_box_or_support(self):
        with pytest.raises(StructuralError):
            monoid_transfer_suite(make_zmod(6), NkMonoid(2, "lex"))

    def test_check_names_stable(self):
        res = monoid_transfer_suite(make_zmod(4), NkMonoid(2, "lex"), box=(1, 1))
        assert [c["name"] for c in res.checks] == [
            "head_and_membership",
            "annihilator_verified",
        ]
