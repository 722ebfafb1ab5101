"""Bounded skew polynomial and power-series arithmetic over a finite base.

Everything here is exact: a "series" is a finite coefficient list, a product
is computed with the twist rule x*a = alpha(a)*x, and every universal claim
a suite makes is quantified only up to the bound it records.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .ring import (
    ElementSet,
    FiniteRing,
    StructuralError,
    principal_right_ideal,
    right_annihilator,
    two_sided_ideal,
)
from .maps import RingMorphism, is_alpha_compatible
from . import classify as _classify
from .report import SuiteResult


class SkewContext:
    """Shared (base, alpha, kind, bound) for skew series arithmetic.

    kind is "polynomial" (exact finite polynomials) or "series" (coefficients
    tracked up to x^bound, higher ones discarded).
    """

    KINDS = ("polynomial", "series")

    def __init__(self, base: FiniteRing, alpha: RingMorphism, bound: int, kind: str = "polynomial"):
        if kind not in self.KINDS:
            raise StructuralError(f"unknown series kind {kind!r}")
        if alpha.ring is not base:
            raise StructuralError("alpha is not an endomorphism of the base ring")
        if bound < 0:
            raise StructuralError("bound must be non-negative")
        self.base = base
        self.alpha = alpha
        self.bound = bound
        self.kind = kind
        self._apow: dict[int, np.ndarray] = {0: np.arange(base.order)}
        self._poly_view: Optional["SkewContext"] = None

    def alpha_pow(self, k: int) -> np.ndarray:
        if k not in self._apow:
            self._apow[k] = self.alpha.power_vec(k)
        return self._apow[k]

    def same(self, other: "SkewContext") -> bool:
        return (
            self.base is other.base
            and self.alpha is other.alpha
            and self.kind == other.kind
            and self.bound == other.bound
        )


class SkewSeries:
    """Coefficient vector ``c_0 + c_1 x + ... `` over a SkewContext."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: SkewContext, coeffs: Iterable[int]):
        cs = list(coeffs)
        z = ctx.base.zero
        if ctx.kind == "polynomial":
            while cs and cs[-1] == z:
                cs.pop()
        else:
            cs = cs[: ctx.bound + 1]
            while len(cs) < ctx.bound + 1:
                cs.append(z)
        self.ctx = ctx
        self.coeffs = tuple(cs)

    def is_zero(self) -> bool:
        z = self.ctx.base.zero
        return all(c == z for c in self.coeffs)

    def degree(self) -> int:
        z = self.ctx.base.zero
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i] != z:
                return i
        return -1

    def coeff(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.base.zero

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SkewSeries)
            and self.ctx.same(other.ctx)
            and self._trimmed() == other._trimmed()
        )

    def _trimmed(self) -> tuple:
        z = self.ctx.base.zero
        cs = list(self.coeffs)
        while cs and cs[-1] == z:
            cs.pop()
        return tuple(cs)

    def __hash__(self) -> int:
        return hash(self._trimmed())

    def __repr__(self) -> str:
        lbl = self.ctx.base.label
        terms = [f"{lbl(c)}*x^{i}" for i, c in enumerate(self.coeffs) if c != self.ctx.base.zero]
        return " + ".join(terms) if terms else "0"


def constant(ctx: SkewContext, a: int) -> SkewSeries:
    return SkewSeries(ctx, [a])


def monomial(ctx: SkewContext, a: int, t: int) -> SkewSeries:
    return SkewSeries(ctx, [ctx.base.zero] * t + [a])


def _raw_mul(ctx: SkewContext, f: tuple, g: tuple, limit: Optional[int]) -> list[int]:
    """Coefficient list of f*g with c_k = sum_{i+j=k} f_i alpha^i(g_j)."""
    base = ctx.base
    A, M = base.add_table, base.mul_table
    top = len(f) + len(g) - 2 if f and g else -1
    if limit is not None:
        top = min(top, limit)
    out = [base.zero] * (top + 1)
    for i, fi in enumerate(f):
        if fi == base.zero or i > top:
            continue
        av = ctx.alpha_pow(i)
        for j, gj in enumerate(g):
            k = i + j
            if k > top:
                break
            term = int(M[fi, av[gj]])
            out[k] = int(A[out[k], term])
    return out


def skew_mul(f: SkewSeries, g: SkewSeries) -> SkewSeries:
    if not f.ctx.same(g.ctx):
        raise StructuralError("mismatched skew contexts")
    ctx = f.ctx
    limit = ctx.bound if ctx.kind == "series" else None
    return SkewSeries(ctx, _raw_mul(ctx, f.coeffs, g.coeffs, limit))


def skew_mul_exact(f: SkewSeries, g: SkewSeries) -> SkewSeries:
    """Untruncated product, used by the bounded verifiers regardless of kind.

    Operands only need to share base and twist; the result lives in the
    polynomial view so chained exact products compose.
    """
    if f.ctx.base is not g.ctx.base or f.ctx.alpha is not g.ctx.alpha:
        raise StructuralError("mismatched skew contexts")
    poly_ctx = _poly_view(f.ctx)
    return SkewSeries(poly_ctx, _raw_mul(f.ctx, f.coeffs, g.coeffs, None))


def _poly_view(ctx: SkewContext) -> SkewContext:
    # cached on the context itself; an id keyed table would go stale when
    # ids get recycled across garbage collections
    if ctx.kind == "polynomial":
        return ctx
    if ctx._poly_view is None:
        view = SkewContext(ctx.base, ctx.alpha, ctx.bound, "polynomial")
        view._apow = ctx._apow
        ctx._poly_view = view
    return ctx._poly_view


def skew_add(f: SkewSeries, g: SkewSeries) -> SkewSeries:
    if not f.ctx.same(g.ctx):
        raise StructuralError("mismatched skew contexts")
    A = f.ctx.base.add_table
    width = max(len(f.coeffs), len(g.coeffs))
    return SkewSeries(f.ctx, [int(A[f.coeff(i), g.coeff(i)]) for i in range(width)])


# ---------------------------------------------------------------------------
# idempotent enumeration


def enumerate_idempotents(ctx: SkewContext, max_results: int = 100_000) -> list[SkewSeries]:
    """All degree <= bound solutions of e(x)^2 = e(x) in the truncation.

    Solved coefficientwise: the x^k equation pins e_k once e_0..e_{k-1} are
    fixed, so a DFS over base elements per level finds everything.
    """
    base, N = ctx.base, ctx.bound
    A, M = base.add_table, base.mul_table
    ids = np.arange(base.order)
    out: list[SkewSeries] = []
    stack = [[int(e0)] for e0 in _classify.idempotents(base).members()]
    stack.reverse()
    while stack:
        prefix = stack.pop()
        k = len(prefix)
        if k == N + 1:
            out.append(SkewSeries(ctx, prefix))
            if len(out) > max_results:
                raise StructuralError("idempotent enumeration exceeded max_results")
            continue
        e0 = prefix[0]
        mid = base.zero
        for i in range(1, k):
            term = int(M[prefix[i], ctx.alpha_pow(i)[prefix[k - i]]])
            mid = int(A[mid, term])
        # e_k = e_0 e_k + e_k alpha^k(e_0) + (middle terms)
        rhs = A[A[M[e0, :], M[ids, ctx.alpha_pow(k)[e0]]], mid]
        for v in np.nonzero(rhs == ids)[0][::-1]:
            stack.append(prefix + [int(v)])
    return out


def coefficient_ideal_check(e: SkewSeries) -> bool:
    """Every coefficient of the idempotent lies in the ideal R e_0 R."""
    ctx = e.ctx
    base = ctx.base
    sq = _raw_mul(ctx, e.coeffs, e.coeffs, ctx.bound)
    sq += [base.zero] * (ctx.bound + 1 - len(sq))
    if any(sq[i] != e.coeff(i) for i in range(ctx.bound + 1)):
        raise StructuralError("input is not idempotent in the truncation")
    ideal = two_sided_ideal(base, [e.coeff(0)])
    return all(c in ideal for c in e.coeffs)


def is_left_semicentral_bounded(e: SkewSeries) -> bool:
    """r x^t * e == e * r x^t * e for every base r and t <= bound."""
    ctx = e.ctx
    for r in ctx.base.elements():
        for t in range(ctx.bound + 1):
            f = monomial(ctx, r, t)
            if not skew_mul(f, e) == skew_mul(skew_mul(e, f), e):
                return False
    return True


def semicentral_structure_check(e: SkewSeries) -> bool:
    """Structure of a left-semicentral truncated idempotent.

    Checks: e_0 left semicentral in the base; e_0 e_i = e_i for all i;
    e_i e_0 = 0 for i >= 1; and the mutual principal-ideal containments
    e_0*e = e, e*e_0 = e_0 inside the truncation.
    """
    ctx = e.ctx
    base = ctx.base
    if not is_left_semicentral_bounded(e):
        raise StructuralError("input is not left semicentral within the bound")
    e0 = e.coeff(0)
    if e0 not in _classify.semicentral(base, "left"):
        return False
    M = base.mul_table
    for i, c in enumerate(e.coeffs):
        if int(M[e0, c]) != c:
            return False
        if i >= 1 and int(M[c, e0]) != base.zero:
            return False
    c0 = constant(ctx, e0)
    return skew_mul(c0, e) == e and skew_mul(e, c0) == c0


# ---------------------------------------------------------------------------
# annihilator construction and bounded verification


class AnnihilatorUnavailable(StructuralError):
    def __init__(self, idempotent: int):
        super().__init__(f"base has no annihilator witness for idempotent {idempotent}")
        self.idempotent = idempotent


def annihilator_generator(e: SkewSeries) -> int:
    """The base witness c with r(e_0 R) = cR, validated before returning."""
    base = e.ctx.base
    e0 = e.coeff(0)
    c = _classify.cp_baer_witness(base, e0)
    if c is None:
        raise AnnihilatorUnavailable(e0)
    assert base.mul(c, c) == c
    assert c in _classify.semicentral(base, "left")
    return c


def _base_annihilator_of_row(base: FiniteRing, e0: int) -> ElementSet:
    return right_annihilator(base, principal_right_ideal(base, e0))


def verify_annihilator_bounded(e: SkewSeries, c: int, D: int) -> SuiteResult:
    """Both inclusions of r(e(x)R[x;alpha]) = cR[x;alpha], verified to degree D.

    Forward: e(x) * r x^t * c = 0 exactly for every base r and t <= D.
    Reverse: the coefficient reduction: r(e_0R) = cR in the base, the
    annihilator set is stable under alpha powers up to D, and each of its
    members is fixed by c and kills e(x) from the right.
    """
    ctx = e.ctx
    base = ctx.base
    M = base.mul_table
    checks: list[dict] = []
    counter: Optional[dict] = None
    e0 = e.coeff(0)

    ok = True
    for r in base.elements():
        if not ok:
            break
        for t in range(D + 1):
            prod = skew_mul_exact(skew_mul_exact(e, monomial(ctx, r, t)), constant(ctx, c))
            if not prod.is_zero():
                ok = False
                counter = {"check": "forward", "r": int(r), "t": t,
                           "product": list(prod.coeffs)}
                break
    checks.append({"name": "forward_product_vanishes", "passed": ok, "bound": D})
    all_ok = ok

    ann = _base_annihilator_of_row(base, e0)
    cR = principal_right_ideal(base, c)
    ok = ann.mask == cR.mask
    if not ok and counter is None:
        counter = {"check": "base_annihilator", "ann": ann.ids(), "cR": cR.ids()}
    checks.append({"name": "base_annihilator_is_cR", "passed": ok})
    all_ok = all_ok and ok

    ok = True
    for a in ann.members():
        for l in range(1, D + 1):
            if int(ctx.alpha_pow(l)[a]) not in ann:
                ok = False
                break
        if not ok:
            if counter is None:
                counter = {"check": "alpha_stability", "a": int(a)}
            break
    checks.append({"name": "annihilator_alpha_stable", "passed": ok, "bound": D})
    all_ok = all_ok and ok

    ok = True
    for a in ann.members():
        if int(M[c, a]) != a:
            ok = False
            if counter is None:
                counter = {"check": "c_fixes_annihilator", "a": int(a)}
            break
        prod = skew_mul_exact(e, constant(ctx, a))
        if not prod.is_zero():
            ok = False
            if counter is None:
                counter = {"check": "annihilator_kills_e", "a": int(a)}
            break
    checks.append({"name": "reverse_coefficient_reduction", "passed": ok, "bound": D})
    all_ok = all_ok and ok

    return SuiteResult(
        suite="annihilator-bounded",
        passed=all_ok,
        bounds={"N": ctx.bound, "D": D, "kind": ctx.kind},
        checks=checks,
        counterexample=counter,
    )


def polynomial_transfer_suite(base: FiniteRing, alpha: RingMorphism,
                              N: int = 4, D: int = 6, kind: str = "polynomial") -> SuiteResult:
    """Full bounded transfer check for one (base, alpha) pair.

    Enumerates the truncated idempotents, checks coefficient membership, and
    runs the annihilator construction and verification for each.
    """
    ctx = SkewContext(base, alpha, N, kind)
    compat, wit = is_alpha_compatible(alpha)
    checks: list[dict] = [{"name": "alpha_compatible", "passed": compat}]
    if not compat:
        return SuiteResult(
            suite="skew-transfer", passed=False,
            bounds={"N": N, "D": D, "kind": kind}, checks=checks,
            counterexample={"check": "alpha_compatible", "pair": list(wit)},
        )
    idems = enumerate_idempotents(ctx)
    if kind == "polynomial":
        # keep genuine polynomial idempotents, not just truncation solutions
        idems = [e for e in idems if skew_mul(e, e) == e]
    counter: Optional[dict] = None

    ok = all(coefficient_ideal_check(e) for e in idems)
    checks.append({"name": "coefficient_ideal_membership", "passed": ok, "count": len(idems)})
    all_ok = ok

    ok = True
    one = constant(ctx, base.one)
    members = {s._trimmed() for s in idems}
    for e in idems:
        comp = SkewSeries(ctx, [int(base.add_table[base.neg_table[ci], oi])
                                for ci, oi in [(e.coeff(i), one.coeff(i))
                                               for i in range(N + 1)]])
        if comp._trimmed() not in members:
            ok = False
            counter = {"check": "complement_closure", "e": list(e.coeffs)}
            break
    checks.append({"name": "complement_closure", "passed": ok})
    all_ok = all_ok and ok

    verified = 0
    ok = True
    for e in idems:
        try:
            c = annihilator_generator(e)
        except AnnihilatorUnavailable as exc:
            ok = False
            counter = counter or {"check": "witness_missing", "e0": exc.idempotent}
            break
        sub = verify_annihilator_bounded(e, c, D)
        if not sub.passed:
            ok = False
            counter = counter or {"e": list(e.coeffs), "c": int(c), **(sub.counterexample or {})}
            break
        verified += 1
    checks.append({"name": "annihilator_verified", "passed": ok, "idempotents": verified, "bound": D})
    all_ok = all_ok and ok

    return SuiteResult(
        suite="skew-transfer", passed=all_ok,
        bounds={"N": N, "D": D, "kind": kind}, checks=checks, counterexample=counter,
    )


# ---------------------------------------------------------------------------
# serieswise zero-product scan


def serieswise_armendariz_check(base: FiniteRing, alpha: RingMorphism, N: int,
                                sample_cap: int = 200_000, seed: int = 0):
    """Does f*g = 0 (exact) force all pairwise coefficient products to zero?

    Scans all pairs of coefficient vectors of degree <= N when the pair count
    fits under sample_cap, otherwise a seeded random sample.  Returns
    (True, None, mode) or (False, (f_coeffs, g_coeffs), mode).
    """
    ctx = SkewContext(base, alpha, N, "polynomial")
    n = base.order
    M = base.mul_table
    total = n ** (2 * (N + 1))

    def bad_pair(fc, gc):
        prod = _raw_mul(ctx, fc, gc, None)
        if any(x != base.zero for x in prod):
            return False
        return any(int(M[a, b]) != base.zero for a in fc for b in gc)

    if total <= sample_cap:
        vecs = _all_vectors(n, N + 1)
        for fc in vecs:
            for gc in vecs:
                if bad_pair(fc, gc):
                    return False, (tuple(fc), tuple(gc)), "exhaustive"
        return True, None, "exhaustive"
    rng = np.random.default_rng(seed)
    for _ in range(sample_cap):
        fc = [int(x) for x in rng.integers(0, n, size=N + 1)]
        gc = [int(x) for x in rng.integers(0, n, size=N + 1)]
        if bad_pair(fc, gc):
            return False, (tuple(fc), tuple(gc)), "sampled"
    return True, None, "sampled"


def _all_vectors(n: int, length: int) -> list[list[int]]:
    out = [[]]
    for _ in range(length):
        out = [v + [c] for v in out for c in range(n)]
    return out


# ---------------------------------------------------------------------------
# bounded semiprime transfer


def semiprime_transfer_check(base: FiniteRing, alpha: RingMorphism, N: int = 4) -> SuiteResult:
    """Base semiprime vs a bounded nilpotent-witness scan in the extension.

    A witness is a nonzero f with support <= 2 and degree <= N such that
    f (r x^t) f = 0 exactly for every r and every t <= N; such an f spans a
    nilpotent ideal window.  The extension-side direction is bounded (support
    and degree limited) and the check is labelled accordingly; the base side
    is the exact semiprime oracle.
    """
    from . import classify as _classify

    compat, wit = is_alpha_compatible(alpha)
    checks: list[dict] = [{"name": "alpha_compatible", "passed": compat}]
    if not compat:
        return SuiteResult(
            suite="semiprime-transfer", passed=False, bounds={"N": N},
            checks=checks, counterexample={"check": "alpha_compatible", "pair": list(wit)},
        )
    base_ok = _classify.is_semiprime(base)
    witness = _bounded_nilpotent_witness(base, alpha, N)
    checks.append({"name": "base_semiprime_oracle", "passed": True, "value": base_ok})
    checks.append({
        "name": "bounded_witness_scan",
        "passed": True,
        "witness_found": witness is not None,
        "direction": "bounded (support <= 2, degree <= N)",
    })
    agree = base_ok == (witness is None)
    checks.append({"name": "oracle_agreement", "passed": agree})
    counter = None
    if not agree:
        counter = {"base_semiprime": base_ok, "witness": witness}
    return SuiteResult(
        suite="semiprime-transfer", passed=agree, bounds={"N": N},
        checks=checks, counterexample=counter,
    )


def _bounded_nilpotent_witness(base: FiniteRing, alpha: RingMorphism, N: int):
    """Smallest-support f with f (R x^t) f = 0 for all t <= N, or None.

    Scans monomials a x^i, then two-term a x^i + b x^j (i < j, a, b nonzero).
    A term-by-term degree count keeps each product condition separate, so
    everything vectorizes over the carrier.
    """
    n = base.order
    M, A, z = base.mul_table, base.add_table, base.zero
    pows = [alpha.power_vec(k) for k in range(2 * N + 1)]
    ids = np.arange(n)

    def mono_mask(i: int) -> np.ndarray:
        # mask[a] iff a alpha^i(r) alpha^{i+t}(a) = 0 for all r, t <= N
        ok = np.ones(n, dtype=bool)
        for t in range(N + 1):
            w = M[:, pows[i]]                       # [a, r] -> a alpha^i(r)
            y = M[w, pows[i + t][:, None]]          # [a, r] -> (..) alpha^{i+t}(a)
            ok &= (y == z).all(axis=1)
        return ok

    for i in range(N + 1):
        mask = mono_mask(i)
        mask[z] = False
        if mask.any():
            a = int(np.nonzero(mask)[0][0])
            return {"coeffs": {i: a}}

    for i in range(N + 1):
        mi = mono_mask(i)
        for j in range(i + 1, N + 1):
            mj = mono_mask(j)
            if not (mi.any() and mj.any()):
                continue
            mid = np.ones((n, n), dtype=bool)
            for t in range(N + 1):
                # cross terms share degree i + j + t and must cancel jointly
                p = M[M[:, pows[i]][:, :, None], pows[i + t][None, None, :]]
                q = M[M[:, pows[j]][:, :, None], pows[j + t][None, None, :]]
                mid &= (A[p, q.transpose(2, 1, 0)] == z).all(axis=1)
            hit = mi[:, None] & mj[None, :] & mid
            hit[z, :] = False
            hit[:, z] = False
            if hit.any():
                a, b = map(int, np.argwhere(hit)[0])
                return {"coeffs": {i: a, j: b}}
    return None


# ---------------------------------------------------------------------------
# skew Laurent window


@dataclass(frozen=True)
class JordanPair:
    """x^{-i} a x^{i}; with a bijective twist every pair normalizes to i = 0."""

    i: int
    a: int

    def normalize(self, ctx: SkewContext) -> "JordanPair":
        if self.i == 0:
            return self
        return JordanPair(0, int(ctx.alpha_pow(-self.i)[self.a]))


def jordan_mul(ctx: SkewContext, p: JordanPair, q: JordanPair) -> JordanPair:
    """(x^{-i} a x^i)(x^{-j} b x^j) = x^{-(i+j)} alpha^j(a) alpha^i(b) x^{i+j}."""
    a = int(ctx.alpha_pow(q.i)[p.a])
    b = int(ctx.alpha_pow(p.i)[q.a])
    return JordanPair(p.i + q.i, int(ctx.base.mul_table[a, b]))


class LaurentElement:
    """Finite support map exponent -> base id; products are exact."""

    __slots__ = ("ctx", "support")

    def __init__(self, ctx: SkewContext, support: dict[int, int]):
        self.ctx = ctx
        self.support = {k: v for k, v in sorted(support.items()) if v != ctx.base.zero}

    def is_zero(self) -> bool:
        return not self.support

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentElement) and self.support == other.support

    def __hash__(self) -> int:
        return hash(tuple(self.support.items()))

    def __repr__(self) -> str:
        lbl = self.ctx.base.label
        return " + ".join(f"{lbl(v)}*x^{k}" for k, v in self.support.items()) or "0"


def laurent_mul(f: LaurentElement, g: LaurentElement) -> LaurentElement:
    ctx = f.ctx
    base = ctx.base
    A, M = base.add_table, base.mul_table
    out: dict[int, int] = {}
    for k, a in f.support.items():
        av = ctx.alpha_pow(k)
        for l, b in g.support.items():
            term = int(M[a, av[b]])
            cur = out.get(k + l, base.zero)
            out[k + l] = int(A[cur, term])
    return LaurentElement(ctx, out)


def laurent_window_suite(base: FiniteRing, alpha: RingMorphism, window: int = 3,
                         exhaustive_cap: int = 20_000) -> SuiteResult:
    """Window checks for the skew Laurent ring with a bijective twist.

    (a) conjugate-pair normalization collapses to the base and round-trips;
    (b) left semicentrality of x^{-i} e x^{i} matches that of e, checked by
        the pair product formula over the window;
    (c) over a semicommutative compatible base, idempotent Laurent elements
        supported in [-window, window] are the base idempotents.
    """
    if not alpha.is_automorphism:
        raise StructuralError("laurent window needs a bijective twist")
    ctx = SkewContext(base, alpha, window, "polynomial")
    checks: list[dict] = []
    counter: Optional[dict] = None

    ok = True
    for a in base.elements():
        for i in range(window + 1):
            p = JordanPair(i, a).normalize(ctx)
            if p.i != 0 or int(ctx.alpha_pow(i)[p.a]) != a:
                ok = False
                counter = {"check": "normalization", "i": i, "a": int(a)}
                break
        if not ok:
            break
    checks.append({"name": "pair_normalization", "passed": ok, "window": window})
    all_ok = ok

    sl = _classify.semicentral(base, "left")
    ok = True
    for e in _classify.idempotents(base).members():
        base_sc = e in sl
        for i in range(window + 1):
            p = JordanPair(i, e)
            pair_sc = True
            for j in range(window + 1):
                for b in base.elements():
                    q = JordanPair(j, b)
                    lhs = jordan_mul(ctx, q, p).normalize(ctx)
                    rhs = jordan_mul(ctx, jordan_mul(ctx, p, q), p).normalize(ctx)
                    if lhs != rhs:
                        pair_sc = False
                        break
                if not pair_sc:
                    break
            if pair_sc != base_sc:
                ok = False
                counter = counter or {"check": "semicentral_transfer", "e": int(e), "i": i}
                break
        if not ok:
            break
    checks.append({"name": "semicentral_transfer", "passed": ok, "window": window})
    all_ok = all_ok and ok

    semicomm = _classify.is_semicommutative(base)
    compat, _ = is_alpha_compatible(alpha)
    if semicomm and compat:
        base_idems = set(_classify.idempotents(base).members())
        ok = True
        exps = list(range(-window, window + 1))
        width = len(exps)
        if base.order ** width <= exhaustive_cap:
            mode = "exhaustive"
            candidates = (
                LaurentElement(ctx, dict(zip(exps, vec)))
                for vec in _all_vectors(base.order, width)
            )
        else:
            mode = "support<=2"
            candidates = _small_support_laurent(ctx, exps)
        for f in candidates:
            if laurent_mul(f, f) == f:
                if set(f.support) - {0} or (f.support.get(0, base.zero) not in base_idems):
                    ok = False
                    counter = counter or {"check": "idempotent_collapse",
                                          "support": dict(f.support)}
                    break
        checks.append({"name": "idempotent_collapse", "passed": ok,
                       "window": window, "mode": mode})
        all_ok = all_ok and ok
    else:
        checks.append({"name": "idempotent_collapse", "passed": True,
                       "skipped": "base not semicommutative+compatible"})

    return SuiteResult(
        suite="laurent-window", passed=all_ok,
        bounds={"W": window}, checks=checks, counterexample=counter,
    )


def _small_support_laurent(ctx: SkewContext, exps: list[int]):
    n = ctx.base.order
    for k in exps:
        for a in range(n):
            yield LaurentElement(ctx, {k: a})
    for ki in range(len(exps)):
        for kj in range(ki + 1, len(exps)):
            for a in range(1, n):
                for b in range(1, n):
                    yield LaurentElement(ctx, {exps[ki]: a, exps[kj]: b})


# ---------------------------------------------------------------------------
# two commuting variables, plain coefficients


class MultiSeries:
    """Truncated series in two commuting variables, coefficients in an array."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base: FiniteRing, coeffs: np.ndarray):
        self.base = base
        self.coeffs = np.asarray(coeffs, dtype=np.int64)

    def is_zero(self) -> bool:
        return bool((self.coeffs == self.base.zero).all())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiSeries)
            and self.base is other.base
            and self.coeffs.shape == other.coeffs.shape
            and bool((self.coeffs == other.coeffs).all())
        )

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())


def multi_mul(f: MultiSeries, g: MultiSeries, shape: Optional[tuple] = None) -> MultiSeries:
    """Product truncated to `shape`; exact when shape covers the degree sum."""
    base = f.base
    A, M = base.add_table, base.mul_table
    if shape is None:
        shape = f.coeffs.shape
    out = np.full(shape, base.zero, dtype=np.int64)
    fi, fj = f.coeffs.shape
    gi, gj = g.coeffs.shape
    for i1 in range(fi):
        for j1 in range(fj):
            a = int(f.coeffs[i1, j1])
            if a == base.zero:
                continue
            for i2 in range(min(gi, shape[0] - i1)):
                for j2 in range(min(gj, shape[1] - j1)):
                    b = int(g.coeffs[i2, j2])
                    if b == base.zero:
                        continue
                    k, l = i1 + i2, j1 + j2
                    out[k, l] = int(A[out[k, l], M[a, b]])
    return MultiSeries(base, out)


def _multi_exact_mul(f: MultiSeries, g: MultiSeries) -> MultiSeries:
    shape = (f.coeffs.shape[0] + g.coeffs.shape[0] - 1,
             f.coeffs.shape[1] + g.coeffs.shape[1] - 1)
    return multi_mul(f, g, shape)


def multi_constant(base: FiniteRing, a: int, shape: tuple) -> MultiSeries:
    out = np.full(shape, base.zero, dtype=np.int64)
    out[0, 0] = a
    return MultiSeries(base, out)


def enumerate_multivar_idempotents(base: FiniteRing, N1: int, N2: int,
                                   max_results: int = 100_000) -> list[MultiSeries]:
    """Truncated idempotents in two commuting variables.

    Coefficients are solved in (total degree, lex) order; the equation at a
    position only involves already-fixed positions plus the head terms.
    """
    A, M = base.add_table, base.mul_table
    ids = np.arange(base.order)
    positions = sorted(
        ((i, j) for i in range(N1 + 1) for j in range(N2 + 1)),
        key=lambda p: (p[0] + p[1], p),
    )
    assert positions[0] == (0, 0)
    out: list[MultiSeries] = []
    stack = [[int(e0)] for e0 in _classify.idempotents(base).members()]
    stack.reverse()
    while stack:
        prefix = stack.pop()
        k = len(prefix)
        if k == len(positions):
            arr = np.full((N1 + 1, N2 + 1), base.zero, dtype=np.int64)
            for pos, val in zip(positions, prefix):
                arr[pos] = val
            out.append(MultiSeries(base, arr))
            if len(out) > max_results:
                raise StructuralError("idempotent enumeration exceeded max_results")
            continue
        target = positions[k]
        e0 = prefix[0]
        fixed = dict(zip(positions, prefix))
        mid = base.zero
        for (i1, j1), a in fixed.items():
            if (i1, j1) == (0, 0):
                continue
            i2, j2 = target[0] - i1, target[1] - j1
            if (i2, j2) in fixed and (i2, j2) != (0, 0):
                mid = int(A[mid, M[a, fixed[(i2, j2)]]])
        rhs = A[A[M[e0, :], M[ids, e0]], mid]
        for v in np.nonzero(rhs == ids)[0][::-1]:
            stack.append(prefix + [int(v)])
    return out


def multivar_suite(base: FiniteRing, N1: int = 2, N2: int = 2, D: int = 2) -> SuiteResult:
    """Coefficient membership, semicentral structure, and the annihilator
    construction for truncated idempotents in two commuting variables."""
    checks: list[dict] = []
    counter: Optional[dict] = None
    shape = (N1 + 1, N2 + 1)
    idems = enumerate_multivar_idempotents(base, N1, N2)
    M = base.mul_table
    z = base.zero
    # all checks below are vectorised over the stacked coefficient rows;
    # the element level routines rerun on a slice to guard the reductions
    E = np.stack([e.coeffs.ravel() for e in idems]) if idems else \
        np.empty((0, shape[0] * shape[1]), dtype=np.int64)
    heads = E[:, 0] if len(idems) else np.empty(0, dtype=np.int64)
    spot = idems[::max(1, len(idems) // 32)]

    ok = True
    for e0 in np.unique(heads):
        flags = np.zeros(base.order, dtype=bool)
        flags[two_sided_ideal(base, [int(e0)]).ids_array()] = True
        rows = np.flatnonzero(heads == e0)
        good = flags[E[rows]].all(axis=1)
        if not good.all():
            ok = False
            bad = int(rows[np.argmax(~good)])
            counter = {"check": "coefficient_membership",
                       "e": idems[bad].coeffs.tolist()}
            break
    checks.append({"name": "coefficient_ideal_membership", "passed": ok, "count": len(idems)})
    all_ok = ok

    sl = _classify.semicentral(base, "left")
    sl_flags = np.zeros(base.order, dtype=bool)
    sl_flags[sl.ids_array()] = True
    ok = True
    if len(idems):
        sc = _multivar_left_semicentral_mask(base, E, shape)
        assert all(sc[i] == _multivar_left_semicentral(idems[i], shape)
                   for i in range(0, len(idems), max(1, len(idems) // 32)))
        rows = np.flatnonzero(sc)
        e0s = heads[rows]
        # c0 e = e means e0 fixes every coefficient on the left; e c0 = c0
        # means right products collapse back to the constant e0
        left = (M[e0s[:, None], E[rows]] == E[rows]).all(axis=1)
        right_prod = M[E[rows], e0s[:, None]]
        right = (right_prod[:, 0] == e0s) & (right_prod[:, 1:] == z).all(axis=1)
        good = sl_flags[e0s] & left & right
        if not good.all():
            ok = False
            bad = int(rows[np.argmax(~good)])
            counter = counter or {"check": "semicentral_structure",
                                  "e": idems[bad].coeffs.tolist()}
    checks.append({"name": "semicentral_structure", "passed": ok})
    all_ok = all_ok and ok

    # e (r x^s y^t) c places e_g r c at g + (s, t) and those positions stay
    # distinct, so the forward direction over every monomial collapses to
    # v R c = 0 per coefficient v of e; same collapse for the reverse checks
    ok = True
    verified = 0
    witness: dict[int, int] = {}
    for e0 in np.unique(heads):
        if not ok:
            break
        e0 = int(e0)
        c = _classify.cp_baer_witness(base, e0)
        if c is None:
            ok = False
            counter = counter or {"check": "witness_missing", "e0": e0}
            break
        witness[e0] = c
        rows = np.flatnonzero(heads == e0)
        dead = (M[:, c][M] == z).all(axis=1)
        good = dead[E[rows]].all(axis=1)
        if not good.all():
            ok = False
            bad = rows[np.argmax(~good)]
            v = int(E[bad][np.argmax(~dead[E[bad]])])
            counter = counter or {"check": "forward",
                                  "r": int(np.argmax(M[M[v, :], c] != z)),
                                  "s": 0, "t": 0}
            break
        ann = _base_annihilator_of_row(base, e0)
        ann_ids = ann.ids_array()
        if ann.mask != principal_right_ideal(base, c).mask:
            ok = False
            counter = counter or {"check": "base_annihilator", "e0": e0, "c": int(c)}
            break
        if not (M[c, ann_ids] == ann_ids).all():
            ok = False
            a = int(ann_ids[np.argmax(M[c, ann_ids] != ann_ids)])
            counter = counter or {"check": "c_fixes_annihilator", "a": a}
            break
        kills = (M[:, ann_ids] == z).all(axis=1) if ann_ids.size else \
            np.ones(base.order, dtype=bool)
        good = kills[E[rows]].all(axis=1)
        if not good.all():
            ok = False
            bad = rows[np.argmax(~good)]
            v = int(E[bad][np.argmax(~kills[E[bad]])])
            counter = counter or {"check": "annihilator_kills_e",
                                  "a": int(ann_ids[np.argmax(M[v, ann_ids] != z)])}
            break
        verified += len(rows)
    if ok:
        for e in spot:
            sub = _verify_multivar_annihilator(e, witness[int(e.coeffs[0, 0])], D)
            if sub is not None:
                ok = False
                counter = counter or sub
                break
    checks.append({"name": "annihilator_verified", "passed": ok,
                   "idempotents": verified, "bound": D})
    all_ok = all_ok and ok

    return SuiteResult(
        suite="multivar", passed=all_ok,
        bounds={"N1": N1, "N2": N2, "D": D}, checks=checks, counterexample=counter,
    )


def _multivar_left_semicentral_mask(base: FiniteRing, E: np.ndarray,
                                    shape: tuple) -> np.ndarray:
    """Rows of E with f e = e f e for every constant f, truncated to shape.

    E stacks ravelled coefficient grids; the convolution runs once per
    position pair over all rows and all constants at once.
    """
    A, M = base.add_table, base.mul_table
    n = base.order
    pos = [(i, j) for i in range(shape[0]) for j in range(shape[1])]
    index = {p: t for t, p in enumerate(pos)}
    out = np.empty(E.shape[0], dtype=bool)
    for lo in range(0, E.shape[0], 4096):
        chunk = E[lo:lo + 4096]
        m = chunk.shape[0]
        lhs = M[np.arange(n)[None, None, :], chunk[:, :, None]]
        mid = M[chunk[:, :, None], np.arange(n)[None, None, :]]
        rhs = np.full((m, len(pos), n), base.zero, dtype=np.int64)
        for (i1, j1) in pos:
            for (i2, j2) in pos:
                if i1 + i2 >= shape[0] or j1 + j2 >= shape[1]:
                    continue
                t = index[(i1 + i2, j1 + j2)]
                g, h = index[(i1, j1)], index[(i2, j2)]
                rhs[:, t, :] = A[rhs[:, t, :], M[mid[:, g, :], chunk[:, h, None]]]
        out[lo:lo + 4096] = (lhs == rhs).all(axis=(1, 2))
    return out


def _multivar_left_semicentral(e: MultiSeries, shape: tuple) -> bool:
    base = e.base
    for r in base.elements():
        arr = np.full(shape, base.zero, dtype=np.int64)
        arr[0, 0] = r
        f = MultiSeries(base, arr)
        if not multi_mul(f, e, shape) == multi_mul(multi_mul(e, f, shape), e, shape):
            return False
    return True


def _verify_multivar_annihilator(e: MultiSeries, c: int, D: int) -> Optional[dict]:
    """None on success, else a counterexample payload."""
    base = e.base
    M = base.mul_table
    e0 = int(e.coeffs[0, 0])
    one = (1, 1)
    cc = multi_constant(base, c, one)
    for r in base.elements():
        for s in range(D + 1):
            for t in range(D + 1):
                mono = np.full((s + 1, t + 1), base.zero, dtype=np.int64)
                mono[s, t] = r
                prod = _multi_exact_mul(_multi_exact_mul(e, MultiSeries(base, mono)), cc)
                if not prod.is_zero():
                    return {"check": "forward", "r": int(r), "s": s, "t": t}
    ann = _base_annihilator_of_row(base, e0)
    if ann.mask != principal_right_ideal(base, c).mask:
        return {"check": "base_annihilator", "e0": e0, "c": int(c)}
    for a in ann.members():
        if int(M[c, a]) != a:
            return {"check": "c_fixes_annihilator", "a": int(a)}
        prod = _multi_exact_mul(e, multi_constant(base, a, one))
        if not prod.is_zero():
            return {"check": "annihilator_kills_e", "a": int(a)}
    return None
