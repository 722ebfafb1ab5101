"""Positive ordered monoids and their algebras with finite support.

Two families ship: (N u {0})^k under lex, revlex, or graded-lex, and the
non-negative rationals under the usual order with exact Fraction arithmetic.
All are totally ordered, translation invariant, positive, and cancellative;
order_axiom_check re-verifies that on samples instead of trusting it.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .ring import (
    FiniteRing,
    StructuralError,
    principal_right_ideal,
    right_annihilator,
    two_sided_ideal,
)
from . import classify as _classify
from .report import SuiteResult


class NkMonoid:
    """(N u {0})^k under componentwise addition, totally ordered."""

    ORDERS = ("lex", "revlex", "grlex")

    def __init__(self, k: int, order: str = "lex"):
        if order not in self.ORDERS:
            raise StructuralError(f"unknown order tag {order!r}")
        if k < 1:
            raise StructuralError("dimension must be positive")
        self.k = k
        self.order = order

    @property
    def identity(self) -> tuple:
        return (0,) * self.k

    def op(self, g: tuple, h: tuple) -> tuple:
        return tuple(a + b for a, b in zip(g, h))

    def key(self, g: tuple):
        if self.order == "lex":
            return g
        if self.order == "revlex":
            return tuple(reversed(g))
        return (sum(g), g)  # grlex: total degree, lex tiebreak

    def leq(self, g: tuple, h: tuple) -> bool:
        return self.key(g) <= self.key(h)

    def validate(self, g) -> tuple:
        g = tuple(int(x) for x in g)
        if len(g) != self.k or any(x < 0 for x in g):
            raise StructuralError(f"not an element of N^{self.k}: {g}")
        return g

    def box(self, bound: tuple) -> list[tuple]:
        """All elements componentwise <= bound, sorted by the monoid order."""
        ranges = [range(b + 1) for b in bound]
        return sorted(itertools.product(*ranges), key=self.key)

    def tag(self) -> str:
        return f"N^{self.k}:{self.order}"


class QPlusMonoid:
    """Non-negative rationals under addition and the usual order."""

    order = "rational-usual"

    @property
    def identity(self) -> Fraction:
        return Fraction(0)

    def op(self, g: Fraction, h: Fraction) -> Fraction:
        return g + h

    def key(self, g: Fraction) -> Fraction:
        return g

    def leq(self, g: Fraction, h: Fraction) -> bool:
        return g <= h

    def validate(self, g) -> Fraction:
        g = Fraction(g)
        if g < 0:
            raise StructuralError(f"not a non-negative rational: {g}")
        return g

    def tag(self) -> str:
        return "Q+:usual"


def order_axiom_check(monoid, samples: int = 10_000, seed: int = 0):
    """Totality, translation invariance, positivity, cancellativity.

    N^k is exhaustive below componentwise bound 4 plus random samples;
    Q+ uses random small fractions.  Returns (True, None) or (False, info).
    """
    rng = np.random.default_rng(seed)
    mu = monoid.identity

    if isinstance(monoid, NkMonoid):
        triples = list(itertools.product(monoid.box((4,) * monoid.k), repeat=2))
        elems = monoid.box((4,) * monoid.k)
        extra = [
            tuple(int(x) for x in rng.integers(0, 50, size=monoid.k))
            for _ in range(max(0, samples - len(triples)))
        ]
        pool = elems + extra
    else:
        pool = [Fraction(int(rng.integers(0, 30)), int(rng.integers(1, 12)))
                for _ in range(samples)]

    for _ in range(samples):
        g, h, s = (pool[int(rng.integers(0, len(pool)))] for _ in range(3))
        if not monoid.leq(mu, g):
            return False, {"axiom": "positivity", "g": g}
        kg, kh = monoid.key(g), monoid.key(h)
        if not (kg <= kh or kh <= kg):
            return False, {"axiom": "totality", "g": g, "h": h}
        if kg < kh:
            if not monoid.key(monoid.op(s, g)) < monoid.key(monoid.op(s, h)):
                return False, {"axiom": "left_translation", "g": g, "h": h, "s": s}
            if not monoid.key(monoid.op(g, s)) < monoid.key(monoid.op(h, s)):
                return False, {"axiom": "right_translation", "g": g, "h": h, "s": s}
        if monoid.op(s, g) == monoid.op(s, h) and g != h:
            return False, {"axiom": "cancellativity", "g": g, "h": h, "s": s}
    return True, None


def product_dominates_factors(monoid, g, h) -> bool:
    """If k = gh differs from the identity, both g <= k and h <= k."""
    g, h = monoid.validate(g), monoid.validate(h)
    k = monoid.op(g, h)
    if k == monoid.identity:
        raise StructuralError("product equals the identity")
    return monoid.leq(g, k) and monoid.leq(h, k)


# ---------------------------------------------------------------------------
# algebra elements


class MonoidElement:
    """Finite-support map monoid element -> base id, least term first."""

    __slots__ = ("base", "monoid", "terms")

    def __init__(self, base: FiniteRing, monoid, terms: dict):
        clean = {monoid.validate(g): v for g, v in terms.items() if v != base.zero}
        self.base = base
        self.monoid = monoid
        self.terms = dict(sorted(clean.items(), key=lambda kv: monoid.key(kv[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def least(self):
        """(g_0, coefficient) of the smallest support element."""
        if not self.terms:
            return None
        g = next(iter(self.terms))
        return g, self.terms[g]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonoidElement)
            and self.base is other.base
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        lbl = self.base.label
        return " + ".join(f"{lbl(v)}*{g}" for g, v in self.terms.items()) or "0"


def monoid_mul(f: MonoidElement, g: MonoidElement, support_bound=None) -> MonoidElement:
    """Convolution product; terms above support_bound (monoid order) are
    dropped, which quotients by the ideal of high terms (positivity makes
    the high terms an ideal)."""
    base = f.base
    monoid = f.monoid
    A, M = base.add_table, base.mul_table
    out: dict = {}
    for gg, a in f.terms.items():
        for hh, b in g.terms.items():
            k = monoid.op(gg, hh)
            if support_bound is not None and not monoid.leq(k, support_bound):
                continue
            cur = out.get(k, base.zero)
            out[k] = int(A[cur, int(M[a, b])])
    return MonoidElement(base, monoid, out)


def monoid_constant(base: FiniteRing, monoid, a: int) -> MonoidElement:
    return MonoidElement(base, monoid, {monoid.identity: a})


def monoid_term(base: FiniteRing, monoid, a: int, g) -> MonoidElement:
    return MonoidElement(base, monoid, {g: a})


# ---------------------------------------------------------------------------
# idempotent enumeration (exact, never truncated)


def enumerate_box_idempotents(base: FiniteRing, monoid: NkMonoid, box: tuple,
                              max_results: int = 100_000):
    """Exact idempotents supported inside the box, plus a skip count.

    Coefficients are solved in increasing monoid order (positivity makes
    each equation depend only on earlier positions), then candidates whose
    square leaves the box are verified exactly and dropped if they fail.
    """
    A, M = base.add_table, base.mul_table
    ids = np.arange(base.order)
    positions = monoid.box(box)
    assert positions[0] == monoid.identity
    out: list[MonoidElement] = []
    skipped = 0
    stack = [[int(e0)] for e0 in _classify.idempotents(base).members()]
    stack.reverse()
    while stack:
        prefix = stack.pop()
        k = len(prefix)
        if k == len(positions):
            cand = MonoidElement(base, monoid, dict(zip(positions, prefix)))
            if monoid_mul(cand, cand) == cand:
                out.append(cand)
                if len(out) > max_results:
                    raise StructuralError("idempotent enumeration exceeded max_results")
            else:
                skipped += 1
            continue
        target = positions[k]
        e0 = prefix[0]
        fixed = dict(zip(positions, prefix))
        mid = base.zero
        for g, a in fixed.items():
            if g == monoid.identity or a == base.zero:
                continue
            rest = tuple(t - s for t, s in zip(target, g))
            if any(x < 0 for x in rest) or rest == monoid.identity:
                continue
            if rest in fixed:
                mid = int(A[mid, M[a, fixed[rest]]])
        rhs = A[A[M[e0, :], M[ids, e0]], mid]
        for v in np.nonzero(rhs == ids)[0][::-1]:
            stack.append(prefix + [int(v)])
    return out, skipped


def enumerate_support_idempotents(base: FiniteRing, monoid, support: Iterable,
                                  max_results: int = 100_000) -> list[MonoidElement]:
    """Exact idempotents with support inside an explicit finite set.

    Brute force over coefficient assignments; meant for small supports such
    as {0, 1/2, 1} over the rationals.
    """
    supp = sorted((monoid.validate(g) for g in support), key=monoid.key)
    out = []
    for vec in itertools.product(range(base.order), repeat=len(supp)):
        cand = MonoidElement(base, monoid, dict(zip(supp, vec)))
        if monoid_mul(cand, cand) == cand:
            out.append(cand)
            if len(out) > max_results:
                raise StructuralError("idempotent enumeration exceeded max_results")
    return out


def head_and_membership_check(e: MonoidElement) -> bool:
    """For an exact nonzero idempotent: the least support element is the
    identity, its coefficient is a base idempotent, and every coefficient
    lies in R e_0 R."""
    base = e.base
    if not monoid_mul(e, e) == e:
        raise StructuralError("input is not an exact idempotent")
    if e.is_zero():
        return True
    g0, e0 = e.least()
    if g0 != e.monoid.identity or base.mul(e0, e0) != e0:
        return False
    ideal = two_sided_ideal(base, [e0])
    return all(v in ideal for v in e.terms.values())


# ---------------------------------------------------------------------------
# transfer suite


def monoid_transfer_suite(base: FiniteRing, monoid, box=None, support=None,
                          monomials=None) -> SuiteResult:
    """Exact-idempotent membership plus the bounded annihilator check.

    For N^k pass `box`; for explicit supports (Q+) pass `support`.
    `monomials` is the sampling set for the forward direction; defaults to
    the enumeration support.
    """
    checks: list[dict] = []
    counter: Optional[dict] = None
    M = base.mul_table

    if box is not None:
        idems, skipped = enumerate_box_idempotents(base, monoid, box)
        bounds = {"box": list(box), "order": monoid.tag(), "skipped": skipped}
        if monomials is None:
            monomials = monoid.box(box)
    elif support is not None:
        idems = enumerate_support_idempotents(base, monoid, support)
        bounds = {"support": [str(s) for s in support], "order": monoid.tag()}
        if monomials is None:
            monomials = sorted((monoid.validate(s) for s in support), key=monoid.key)
    else:
        raise StructuralError("need a box or an explicit support")

    z = base.zero
    spot = idems[::max(1, len(idems) // 32)]

    # enumeration already verified exactness, so only the head and the
    # membership are rechecked here; the per head two sided ideal is cached
    # because head_and_membership_check recomputes it on every call
    ok = all(head_and_membership_check(e) for e in spot)
    ideal_flags: dict[int, np.ndarray] = {}
    for e in idems:
        if not ok:
            break
        if e.is_zero():
            continue
        g0, e0 = e.least()
        if g0 != monoid.identity or int(M[e0, e0]) != e0:
            ok = False
            counter = {"check": "head", "e": repr(e)}
            break
        flags = ideal_flags.get(e0)
        if flags is None:
            flags = np.zeros(base.order, dtype=bool)
            flags[two_sided_ideal(base, [e0]).ids_array()] = True
            ideal_flags[e0] = flags
        vals = np.fromiter(e.terms.values(), dtype=np.int64)
        if not flags[vals].all():
            ok = False
            counter = {"check": "membership", "e": repr(e)}
            break
    checks.append({"name": "head_and_membership", "passed": ok, "count": len(idems)})
    all_ok = ok

    # e (r x^s) c places e_g r c at g s, and cancellativity keeps those
    # positions distinct, so the forward direction over every monomial
    # collapses to: each coefficient v of e satisfies v R c = 0.  The dead
    # and kills tables make the per idempotent cost two boolean gathers;
    # _monoid_annihilator_spot_check reruns the literal products on a slice.
    ok = True
    verified = 0
    witness: dict[int, tuple] = {}
    for e in idems:
        e0 = base.zero if e.is_zero() else e.least()[1]
        info = witness.get(e0)
        if info is None:
            c = _classify.cp_baer_witness(base, e0)
            if c is None:
                ok = False
                counter = counter or {"check": "witness_missing", "e0": int(e0)}
                break
            dead = (M[:, c][M] == z).all(axis=1)
            ann = right_annihilator(base, principal_right_ideal(base, e0))
            ann_ids = ann.ids_array()
            fail0 = None
            if ann.mask != principal_right_ideal(base, c).mask:
                fail0 = {"check": "base_annihilator", "e0": int(e0)}
            elif not (M[c, ann_ids] == ann_ids).all():
                a = int(ann_ids[np.argmax(M[c, ann_ids] != ann_ids)])
                fail0 = {"check": "c_fixes_annihilator", "a": a}
            kills = (M[:, ann_ids] == z).all(axis=1) if ann_ids.size else \
                np.ones(base.order, dtype=bool)
            info = (c, dead, kills, fail0, ann_ids)
            witness[e0] = info
        c, dead, kills, fail0, ann_ids = info
        fail = None
        vals = np.fromiter(e.terms.values(), dtype=np.int64)
        if vals.size and not dead[vals].all():
            v = int(vals[np.argmax(~dead[vals])])
            r = int(np.argmax(M[M[v, :], c] != z))
            fail = {"check": "forward", "r": r, "s": str(monoid.identity)}
        elif fail0 is not None:
            fail = fail0
        elif vals.size and not kills[vals].all():
            v = int(vals[np.argmax(~kills[vals])])
            a = int(ann_ids[np.argmax(M[v, ann_ids] != z)])
            fail = {"check": "annihilator_kills_e", "a": a}
        if fail is not None:
            ok = False
            counter = counter or fail
            break
        verified += 1
    if ok:
        sub = _monoid_annihilator_spot_check(base, monoid, spot, witness, monomials)
        if sub is not None:
            ok = False
            counter = counter or sub
    checks.append({"name": "annihilator_verified", "passed": ok, "idempotents": verified})
    all_ok = all_ok and ok

    return SuiteResult(suite="monoid-transfer", passed=all_ok, bounds=bounds,
                       checks=checks, counterexample=counter)


def _monoid_annihilator_spot_check(base, monoid, sample, witness, monomials):
    """Literal product version of the annihilator check on a slice.

    Guards the coefficientwise reduction in the main loop; None on success.
    """
    for e in sample:
        e0 = base.zero if e.is_zero() else e.least()[1]
        c = witness[e0][0]
        cc = monoid_constant(base, monoid, c)
        for r in base.elements():
            for s in monomials:
                mono = monoid_term(base, monoid, r, s)
                if not monoid_mul(monoid_mul(e, mono), cc).is_zero():
                    return {"check": "forward_spot", "r": int(r), "s": str(s)}
    return None
