"""Truncated skew inverse power series x^{-1}-adic arithmetic.

Elements are finite heads sum a_i x^{-i}, i = 0..bound, over a finite base
with a bijective twist alpha and a twisted derivation delta.  The commutation
rule is x*a = alpha(a)*x + delta(a); pushed through the inverse it becomes
the expansion

    x^{-1} a = sum_{i>=1} alphainv((-delta o alphainv)^{i-1})(a) x^{-i}

and every product below reduces to iterating that operator.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .ring import (
    FiniteRing,
    StructuralError,
    principal_right_ideal,
    right_annihilator,
    two_sided_ideal,
)
from .maps import (
    AlphaDerivation,
    RingMorphism,
    is_alpha_compatible,
    is_delta_compatible,
)
from . import classify as _classify
from .report import SuiteResult


class InverseContext:
    def __init__(self, base: FiniteRing, alpha: RingMorphism, delta: AlphaDerivation, bound: int):
        if alpha.ring is not base or delta.ring is not base:
            raise StructuralError("maps are not over the given base")
        if not alpha.is_automorphism:
            raise StructuralError("the twist must be bijective")
        if delta.alpha is not alpha:
            raise StructuralError("derivation is twisted by a different map")
        self.base = base
        self.alpha = alpha
        self.delta = delta
        self.bound = bound
        self._apow: dict[int, np.ndarray] = {0: np.arange(base.order)}
        # x^{-1}a expansion coefficients 1..bound, cached per element
        self._xinv: dict[int, tuple] = {}
        self._rep: dict[tuple[int, int], tuple] = {}

    def alpha_pow(self, k: int) -> np.ndarray:
        if k not in self._apow:
            self._apow[k] = self.alpha.power_vec(k)
        return self._apow[k]

    def is_compatible(self) -> bool:
        return is_alpha_compatible(self.alpha)[0] and is_delta_compatible(self.delta)[0]

    def xinv_expansion(self, a: int) -> tuple:
        """Coefficients (c_1, .., c_bound) of x^{-1}a."""
        if a not in self._xinv:
            ainv = self.alpha_pow(-1)
            dvec = self.delta.vec
            neg = self.base.neg_table
            cur = a  # (-delta o alphainv)^{i-1}(a)
            out = []
            for _ in range(self.bound):
                out.append(int(ainv[cur]))
                cur = int(neg[dvec[ainv[cur]]])
            self._xinv[a] = tuple(out)
        return self._xinv[a]

    def rep(self, i: int, a: int) -> tuple:
        """Coefficients 0..bound of x^{-i}a as an inverse series head."""
        N = self.bound
        if i == 0:
            out = [self.base.zero] * (N + 1)
            out[0] = a
            return tuple(out)
        key = (i, a)
        if key not in self._rep:
            A = self.base.add_table
            exp = self.xinv_expansion(a)  # x^{-1}a lives in degrees 1..N
            out = [self.base.zero] * (N + 1)
            for m, cm in enumerate(exp, start=1):
                if cm == self.base.zero:
                    continue
                inner = self.rep(i - 1, cm)  # x^{-(i-1)} c_m
                for d, v in enumerate(inner):
                    if v == self.base.zero or d + m > N:
                        continue
                    out[d + m] = int(A[out[d + m], v])
            self._rep[key] = tuple(out)
        return self._rep[key]

    def same(self, other: "InverseContext") -> bool:
        return (
            self.base is other.base and self.alpha is other.alpha
            and self.delta is other.delta and self.bound == other.bound
        )


class InverseSeries:
    """Head coefficients (a_0, .., a_bound) of sum a_i x^{-i}."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: InverseContext, coeffs: Iterable[int]):
        cs = list(coeffs)[: ctx.bound + 1]
        while len(cs) < ctx.bound + 1:
            cs.append(ctx.base.zero)
        self.ctx = ctx
        self.coeffs = tuple(cs)

    def is_zero(self) -> bool:
        z = self.ctx.base.zero
        return all(c == z for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InverseSeries)
            and self.ctx.same(other.ctx)
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        lbl = self.ctx.base.label
        terms = [f"{lbl(c)}*x^-{i}" for i, c in enumerate(self.coeffs) if c != self.ctx.base.zero]
        return " + ".join(terms) if terms else "0"


def inv_constant(ctx: InverseContext, a: int) -> InverseSeries:
    return InverseSeries(ctx, [a])


def inv_monomial(ctx: InverseContext, a: int, t: int) -> InverseSeries:
    return InverseSeries(ctx, [ctx.base.zero] * t + [a])


def xinv_times(ctx: InverseContext, a: int, terms: Optional[int] = None) -> InverseSeries:
    """The expansion of x^{-1}a, up to `terms` coefficients."""
    t = ctx.bound if terms is None else terms
    if t > ctx.bound:
        raise StructuralError("terms beyond the context bound")
    exp = ctx.xinv_expansion(a)[:t]
    return InverseSeries(ctx, (ctx.base.zero,) + exp)


def inv_mul(f: InverseSeries, g: InverseSeries) -> InverseSeries:
    if not f.ctx.same(g.ctx):
        raise StructuralError("mismatched inverse-series contexts")
    ctx = f.ctx
    base = ctx.base
    A, M = base.add_table, base.mul_table
    N = ctx.bound
    out = [base.zero] * (N + 1)
    for i, ai in enumerate(f.coeffs):
        if ai == base.zero:
            continue
        for j, bj in enumerate(g.coeffs):
            if bj == base.zero or i + j > N:
                continue
            # a_i x^{-i} b_j x^{-j} = a_i * (x^{-i} b_j) shifted by j
            for d, v in enumerate(ctx.rep(i, bj)):
                k = d + j
                if v == base.zero or k > N:
                    continue
                out[k] = int(A[out[k], M[ai, v]])
    return InverseSeries(ctx, out)


def x_times(f: InverseSeries) -> list[int]:
    """Coefficients 0..bound-1 of x*f; the top coefficient is untracked
    because it would need a_{bound+1}."""
    ctx = f.ctx
    base = ctx.base
    A = base.add_table
    av, dv = ctx.alpha.vec, ctx.delta.vec
    out = [base.zero] * ctx.bound
    for i, ai in enumerate(f.coeffs):
        if ai == base.zero:
            continue
        if i >= 1 and i - 1 < ctx.bound:
            out[i - 1] = int(A[out[i - 1], av[ai]])
        if i < ctx.bound:
            out[i] = int(A[out[i], dv[ai]])
    return out


# ---------------------------------------------------------------------------
# idempotents


def enumerate_inverse_idempotents(ctx: InverseContext, max_results: int = 100_000) -> list[InverseSeries]:
    """Solutions of e^2 = e in the truncation, solved coefficientwise.

    The x^{-k} coefficient of the square only involves e_0..e_k, with e_k
    entering as e_0 e_k + e_k alphainv^k(e_0), so the usual DFS applies.
    """
    base, N = ctx.base, ctx.bound
    A, M = base.add_table, base.mul_table
    ids = np.arange(base.order)
    out: list[InverseSeries] = []
    stack = [[int(e0)] for e0 in _classify.idempotents(base).members()]
    stack.reverse()
    while stack:
        prefix = stack.pop()
        k = len(prefix)
        if k == N + 1:
            out.append(InverseSeries(ctx, prefix))
            if len(out) > max_results:
                raise StructuralError("idempotent enumeration exceeded max_results")
            continue
        e0 = prefix[0]
        mid = base.zero
        for i in range(1, k):
            ai = prefix[i]
            if ai == base.zero:
                continue
            for j in range(0, k - i + 1):
                bj = prefix[j]
                if bj == base.zero:
                    continue
                v = ctx.rep(i, bj)[k - j]
                if v != base.zero:
                    mid = int(A[mid, M[ai, v]])
        head = int(ctx.rep(k, e0)[k])  # leading term of x^{-k} e_0
        rhs = A[A[M[e0, :], M[ids, head]], mid]
        for v in np.nonzero(rhs == ids)[0][::-1]:
            stack.append(prefix + [int(v)])
    return out


def inverse_coefficient_ideal_check(e: InverseSeries) -> bool:
    """Every coefficient lies in R e_0 R."""
    base = e.ctx.base
    if not inv_mul(e, e) == e:
        raise StructuralError("input is not idempotent in the truncation")
    ideal = two_sided_ideal(base, [e.coeffs[0]])
    return all(c in ideal for c in e.coeffs)


def inverse_structure_check(e: InverseSeries) -> bool:
    """For left-semicentral truncated idempotents: the principal right ideal
    of e matches that of its constant term, via e_0*e = e and e*e_0 = e_0."""
    ctx = e.ctx
    base = ctx.base
    if not _inverse_left_semicentral(e):
        raise StructuralError("input is not left semicentral within the bound")
    e0 = e.coeffs[0]
    if e0 not in _classify.semicentral(base, "left"):
        return False
    c0 = inv_constant(ctx, e0)
    return inv_mul(c0, e) == e and inv_mul(e, c0) == c0


def _inverse_left_semicentral(e: InverseSeries) -> bool:
    ctx = e.ctx
    for r in ctx.base.elements():
        for t in range(ctx.bound + 1):
            f = inv_monomial(ctx, r, t)
            if not inv_mul(f, e) == inv_mul(inv_mul(e, f), e):
                return False
    return True


# ---------------------------------------------------------------------------
# operator orbit


def operator_orbit(ctx: InverseContext, a: int, cap: int = 10_000) -> set[int]:
    """Closure of {a} under alpha, alpha inverse, and delta; always finite."""
    av = ctx.alpha.vec
    iv = ctx.alpha.inverse_vec
    dv = ctx.delta.vec
    seen = {a}
    frontier = [a]
    while frontier:
        if len(seen) > cap:
            raise StructuralError("operator orbit exceeded cap")
        x = frontier.pop()
        for nxt in (int(av[x]), int(iv[x]), int(dv[x])):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def operator_orbit_annihilation_check(ctx: InverseContext, e: int, a: int):
    """Given eRa = 0, does eRw = 0 for every operator word w applied to a?

    Returns (True, orbit_size) or (False, failing_element).
    """
    base = ctx.base
    M = base.mul_table
    row = M[M[e, :], a]
    if (row != base.zero).any():
        raise StructuralError("hypothesis eRa = 0 fails")
    for w in operator_orbit(ctx, a):
        if (M[M[e, :], w] != base.zero).any():
            return False, int(w)
    return True, len(operator_orbit(ctx, a))


def semicentral_stability_check(ctx: InverseContext, c: int, samples: int = 32, seed: int = 0):
    """c x^{-n} c = x^{-n} c for n <= bound, then c p c = p c on sampled p."""
    base = ctx.base
    if base.mul(c, c) != c or c not in _classify.semicentral(base, "left"):
        raise StructuralError("input is not a left semicentral idempotent")
    cc = inv_constant(ctx, c)
    for n_ in range(1, ctx.bound + 1):
        xc = InverseSeries(ctx, ctx.rep(n_, c))
        if not inv_mul(cc, xc) == xc:
            return False, {"n": n_}
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        p = InverseSeries(ctx, [int(x) for x in rng.integers(0, base.order, size=ctx.bound + 1)])
        pc = inv_mul(p, cc)
        if not inv_mul(cc, pc) == pc:
            return False, {"p": list(p.coeffs)}
    return True, None


# ---------------------------------------------------------------------------
# transfer suite


def inverse_transfer_suite(ctx: InverseContext, D: Optional[int] = None) -> SuiteResult:
    """Bounded two-way annihilator check for every truncated idempotent."""
    base = ctx.base
    M = base.mul_table
    if D is None:
        D = ctx.bound
    checks: list[dict] = []
    counter: Optional[dict] = None

    compat = ctx.is_compatible()
    checks.append({"name": "context_compatible", "passed": compat})
    if not compat:
        return SuiteResult(suite="inverse-transfer", passed=False,
                           bounds={"N": ctx.bound, "D": D}, checks=checks)

    idems = enumerate_inverse_idempotents(ctx)
    ok = all(inverse_coefficient_ideal_check(e) for e in idems)
    checks.append({"name": "coefficient_ideal_membership", "passed": ok, "count": len(idems)})
    all_ok = ok

    ok = True
    verified = 0
    for e in idems:
        e0 = e.coeffs[0]
        c = _classify.cp_baer_witness(base, e0)
        if c is None:
            ok = False
            counter = {"check": "witness_missing", "e0": int(e0)}
            break
        cc = inv_constant(ctx, c)
        fail = None
        for r in base.elements():
            for t in range(min(D, ctx.bound) + 1):
                prod = inv_mul(inv_mul(e, inv_monomial(ctx, r, t)), cc)
                if not prod.is_zero():
                    fail = {"check": "forward", "r": int(r), "t": t}
                    break
            if fail:
                break
        if fail is None:
            ann = right_annihilator(base, principal_right_ideal(base, e0))
            if ann.mask != principal_right_ideal(base, c).mask:
                fail = {"check": "base_annihilator", "e0": int(e0)}
            else:
                for a in ann.members():
                    good, _info = operator_orbit_annihilation_check(ctx, e0, a)
                    if not good:
                        fail = {"check": "orbit_annihilation", "a": int(a)}
                        break
                    if int(M[c, a]) != a or not inv_mul(e, inv_constant(ctx, a)).is_zero():
                        fail = {"check": "reverse_membership", "a": int(a)}
                        break
        if fail is not None:
            ok = False
            counter = counter or {"e": list(e.coeffs), "c": int(c), **fail}
            break
        verified += 1
    checks.append({"name": "annihilator_verified", "passed": ok,
                   "idempotents": verified, "bound": D})
    all_ok = all_ok and ok

    return SuiteResult(suite="inverse-transfer", passed=all_ok,
                       bounds={"N": ctx.bound, "D": D}, checks=checks,
                       counterexample=counter)


def primeness_window_check(ctx: InverseContext, kind: str = "auto") -> SuiteResult:
    """Lowest-coefficient obstruction to zero products over the base.

    For a compatible prime base: any nonzero truncated f, g with f R g = 0
    would force lowest coefficients a, b with a * alphainv^u(r b) = 0 for all
    r; the check rules that out for every nonzero (a, b) and u <= bound.
    Semiprime bases get the diagonal (f = g) version.
    """
    base = ctx.base
    M = base.mul_table
    checks: list[dict] = []
    counter: Optional[dict] = None
    compat = ctx.is_compatible()
    checks.append({"name": "context_compatible", "passed": compat})
    if kind == "auto":
        kind = "prime" if _classify.is_prime(base) else (
            "semiprime" if _classify.is_semiprime(base) else "none")
    checks.append({"name": "base_kind", "passed": kind != "none", "kind": kind})
    if not compat or kind == "none":
        return SuiteResult(suite="primeness-window", passed=False,
                           bounds={"N": ctx.bound}, checks=checks)

    ok = True
    nonzero = [a for a in base.elements() if a != base.zero]
    for u in range(ctx.bound + 1):
        tw = ctx.alpha_pow(-u)
        for a in nonzero:
            if kind == "prime":
                partners = nonzero
            else:
                partners = [a]
            for b in partners:
                rb = tw[M[:, b]]
                if (M[a, rb] == base.zero).all():
                    ok = False
                    counter = {"a": int(a), "b": int(b), "u": u}
                    break
            if not ok:
                break
        if not ok:
            break
    checks.append({"name": "lowest_coefficient_obstruction", "passed": ok, "bound": ctx.bound})
    return SuiteResult(suite="primeness-window", passed=ok and compat,
                       bounds={"N": ctx.bound}, checks=checks, counterexample=counter)
