"""Ring family constructors.

Every constructor returns a validated :class:`FiniteRing` with canonical,
documented element ids:

* ``make_zmod(n)`` -- id = residue.
* ``make_field(p, k)`` -- id = sum c_i p^i where the element is the
  polynomial sum c_i t^i modulo the lexicographically smallest monic
  irreducible of degree k (smallest meaning: first hit when counting the
  non-leading coefficient vector upward in base p, c_0 least significant).
* ``make_product(R1, R2)`` -- id = id1 * |R2| + id2.
* ``make_matrix(R, n)`` -- entries row-major, id = sum entry_t |R|^t with
  t = 0 the (0,0) entry (little-endian).
* triangular families -- free parameters in the documented order, id =
  sum param_t |R|^t (little-endian).
* ``make_quotient(R, I)`` -- cosets labelled by their smallest member id,
  listed in increasing representative order.

The infinite shift ring of the compatibility counterexample deliberately
lives outside :class:`FiniteRing`; only computable element operations are
provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .ring import (
    DEFAULT_ORDER_CAP,
    ElementSet,
    FiniteRing,
    OrderCapExceeded,
    StructuralError,
)

_CHUNK = 512  # row-chunk size for big table builds


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise OrderCapExceeded(f"construction of order {order} exceeds cap {cap}")


# ---------------------------------------------------------------------------
# modular rings and finite fields


def make_zmod(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if n < 2:
        raise StructuralError("zmod requires n >= 2")
    _check_cap(n, order_cap)
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    r = FiniteRing(add, mul, 0, 1 % n, provenance=f"zmod({n})")
    r.structure = {"family": "zmod", "n": n}
    return r


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num by monic den over Z_p (coefficient lists, c_0 first)."""
    num = list(num)
    dn = len(den) - 1
    while len(num) - 1 >= dn and any(num):
        lead = num[-1]
        if lead == 0:
            num.pop()
            continue
        shift = len(num) - 1 - dn
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - lead * c) % p
        while num and num[-1] == 0:
            num.pop()
    return num


def _irreducible(poly: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree 1..deg//2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            div = [(code // p**i) % p for i in range(d)] + [1]
            if not _poly_mod(poly, div, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> list[int]:
    """Monic irreducible of degree k over Z_p, first in the documented order."""
    for code in range(p**k):
        poly = [(code // p**i) % p for i in range(k)] + [1]
        if _irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # cannot happen


def make_field(p: int, k: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if not _is_prime(p):
        raise StructuralError(f"{p} is not prime")
    if k < 1:
        raise StructuralError("field degree must be >= 1")
    n = p**k
    _check_cap(n, order_cap)
    if k == 1:
        r = make_zmod(p)
        r.provenance = f"field({p},1)"
        r.structure = {"family": "field", "p": p, "k": 1, "irreducible": [0, 1]}
        return r
    irr = smallest_irreducible(p, k)
    digits = np.array([[(e // p**i) % p for i in range(k)] for e in range(n)])
    add = np.zeros((n, n), dtype=np.int64)
    for i in range(k):
        d = (digits[:, i][:, None] + digits[:, i][None, :]) % p
        add += d * p**i
    # reduction of t^m for m >= k down to degree < k
    red = np.zeros((2 * k - 1, k), dtype=np.int64)
    for m in range(k):
        red[m, m] = 1
    for m in range(k, 2 * k - 1):
        # t^m = t * t^(m-1) reduced
        prev = red[m - 1]
        shifted = np.zeros(k + 1, dtype=np.int64)
        shifted[1:] = prev
        # fold t^k via t^k = -sum irr[i] t^i
        carry = shifted[k]
        out = shifted[:k].copy()
        for i in range(k):
            out[i] = (out[i] - carry * irr[i]) % p
        red[m] = out % p
    mul = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        conv = np.zeros((n, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            if digits[a, i] == 0:
                continue
            for j in range(k):
                conv[:, i + j] += digits[a, i] * digits[:, j]
        reduced = (conv @ red) % p
        mul[a] = reduced @ (p ** np.arange(k))
    labels = []
    for e in range(n):
        terms = [f"{digits[e, i]}t^{i}" for i in range(k) if digits[e, i]]
        labels.append("+".join(terms) if terms else "0")
    r = FiniteRing(add, mul, 0, 1, provenance=f"field({p},{k})", element_labels=labels)
    r.structure = {"family": "field", "p": p, "k": k, "irreducible": irr}
    return r


# ---------------------------------------------------------------------------
# products and quotients


def make_product(r1: FiniteRing, r2: FiniteRing, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    n1, n2 = r1.order, r2.order
    _check_cap(n1 * n2, order_cap)
    add = (r1.add_table[:, None, :, None].astype(np.int64) * n2
           + r2.add_table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    mul = (r1.mul_table[:, None, :, None].astype(np.int64) * n2
           + r2.mul_table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    r = FiniteRing(
        add, mul,
        r1.zero * n2 + r2.zero, r1.one * n2 + r2.one,
        provenance=f"product({r1.provenance},{r2.provenance})",
    )
    r.structure = {"family": "product", "factors": (r1, r2)}
    return r


def make_quotient(r: FiniteRing, ideal: ElementSet, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if ideal.ring is not r:
        raise StructuralError("ideal belongs to a different ring")
    if not (ideal.flavor == "two_sided_ideal" and ideal.recheck_flavor()):
        raise StructuralError("quotient requires a validated two-sided ideal")
    ids = np.array(ideal.ids())
    rep = r.add_table[:, ids].min(axis=1)  # smallest member of each coset
    reps = np.unique(rep)
    _check_cap(len(reps), order_cap)
    index = {int(v): i for i, v in enumerate(reps)}
    lookup = np.zeros(r.order, dtype=np.int64)
    for v, i in index.items():
        lookup[v] = i
    add = lookup[rep[r.add_table[np.ix_(reps, reps)]]]
    mul = lookup[rep[r.mul_table[np.ix_(reps, reps)]]]
    q = FiniteRing(
        add, mul, index[int(rep[r.zero])], index[int(rep[r.one])],
        provenance=f"quotient({r.provenance})",
    )
    q.structure = {"family": "quotient", "base": r, "reps": reps}
    return q


# ---------------------------------------------------------------------------
# matrix and skew triangular families


def _sigma_powers(base: FiniteRing, sigma: np.ndarray, count: int) -> list[np.ndarray]:
    pows = [np.arange(base.order)]
    for _ in range(count - 1):
        pows.append(sigma[pows[-1]])
    return pows


def _sigma_vec(base: FiniteRing, sigma) -> np.ndarray:
    vec = getattr(sigma, "vec", sigma)
    vec = np.asarray(vec, dtype=np.int64)
    if vec.shape != (base.order,):
        raise StructuralError("sigma vector has wrong length for the base ring")
    return vec


@dataclass
class _EntryFamily:
    """A subring of skew upper triangular matrices cut out by a parameter map."""

    base: FiniteRing
    n_mat: int
    sigma: np.ndarray
    n_params: int
    params_to_entries: Callable[[np.ndarray], np.ndarray]   # (N,P) -> (N,n,n)
    entries_to_params: Callable[[np.ndarray], np.ndarray]   # (N,n,n) -> (N,P)
    name: str


def _check_generator_closure(fam: _EntryFamily, entries: np.ndarray,
                             spow: list[np.ndarray], powers: np.ndarray) -> None:
    """Exact closure check on one-hot parameter generators.

    The layout is additive in the params and matrix multiplication is
    biadditive, so every product is an entrywise sum of generator products;
    the family is an additive subgroup, hence closure on generators gives
    closure everywhere.
    """
    base, nm = fam.base, fam.n_mat
    m = base.order
    A, M = base.add_table, base.mul_table
    gen_ids = [int(v * powers[t]) for t in range(fam.n_params) for v in range(1, m)]
    gens = entries[gen_ids]                              # (G, nm, nm)
    g = len(gens)
    prod = np.full((g, g, nm, nm), base.zero, dtype=np.int64)
    for i in range(nm):
        for j in range(i, nm):
            acc = None
            for k in range(i, j + 1):
                term = M[gens[:, i, k][:, None], spow[k - i][gens[:, k, j]][None, :]]
                acc = term if acc is None else A[acc, term]
            prod[:, :, i, j] = acc
    flat = prod.reshape(-1, nm, nm)
    back = fam.params_to_entries(fam.entries_to_params(flat))
    if not (back == flat).all():
        raise StructuralError(f"{fam.name}: family is not closed under multiplication")


def _build_entry_ring(fam: _EntryFamily, order_cap: int) -> FiniteRing:
    base, nm = fam.base, fam.n_mat
    m = base.order
    order = m**fam.n_params
    _check_cap(order, order_cap)
    powers = m ** np.arange(fam.n_params)
    all_params = np.zeros((order, fam.n_params), dtype=np.int64)
    for t in range(fam.n_params):
        all_params[:, t] = (np.arange(order) // powers[t]) % m
    entries = fam.params_to_entries(all_params)          # (order, nm, nm)
    # consistency of the layout itself
    if not (fam.entries_to_params(entries) == all_params).all():
        raise StructuralError(f"{fam.name}: parameter layout does not round-trip")
    spow = _sigma_powers(base, fam.sigma, nm)
    A, M = base.add_table, base.mul_table
    # addition acts componentwise on the parameters (the layouts are linear),
    # so the add table never needs the entry matrices
    add = np.zeros((order, order), dtype=np.int64)
    for t in range(fam.n_params):
        col = all_params[:, t]
        add += A[col[:, None], col[None, :]].astype(np.int64) * int(powers[t])
    _check_generator_closure(fam, entries, spow, powers)
    mul = np.zeros((order, order), dtype=np.int64)
    for lo in range(0, order, _CHUNK):
        hi = min(lo + _CHUNK, order)
        ea = entries[lo:hi]                              # (c, nm, nm)
        prod_entries = np.full((hi - lo, order, nm, nm), base.zero, dtype=np.int16)
        for i in range(nm):
            for j in range(i, nm):
                acc = None
                for k in range(i, j + 1):
                    term = M[ea[:, i, k][:, None], spow[k - i][entries[:, k, j]][None, :]]
                    acc = term if acc is None else A[acc, term]
                prod_entries[:, :, i, j] = acc
        params = fam.entries_to_params(prod_entries.reshape(-1, nm, nm))
        mul[lo:hi] = (params.astype(np.int64) @ powers).reshape(hi - lo, order)
    zero_e = np.full((1, nm, nm), base.zero, dtype=np.int64)
    one_e = zero_e.copy()
    for i in range(nm):
        one_e[0, i, i] = base.one
    zid = int(fam.entries_to_params(zero_e)[0] @ powers)
    oid = int(fam.entries_to_params(one_e)[0] @ powers)
    r = FiniteRing(add, mul, zid, oid, provenance=fam.name)
    r.structure = {
        "family": fam.name.split("(")[0],
        "base": base,
        "n_mat": nm,
        "sigma": fam.sigma,
        "n_params": fam.n_params,
        "decode": lambda eid: tuple(int((eid // powers[t]) % m) for t in range(fam.n_params)),
        "encode": lambda params: int(sum(int(p) * int(powers[t]) for t, p in enumerate(params))),
        "entries_of": lambda eid: fam.params_to_entries(
            np.array([[int((eid // powers[t]) % m) for t in range(fam.n_params)]])
        )[0],
    }
    return r


def _upper_positions(nm: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(nm) for j in range(i, nm)]


def make_skew_triangular(
    base: FiniteRing,
    n: int,
    sigma,
    family: str,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteRing:
    """Skew upper triangular matrix families over ``base``.

    family: "full" (every upper entry free), "S" (constant main diagonal),
    "T" (constant diagonals, isomorphic to truncated skew polynomials),
    "A" (diagonal offsets below n//2 constant, the rest free),
    "B" ("A" plus one extra free summand at position (0, n//2 - 1); n even,
    n >= 4).
    """
    if n < 1:
        raise StructuralError("matrix size must be >= 1")
    sigma_vec = _sigma_vec(base, sigma)
    if int(sigma_vec[base.one]) != base.one:
        raise StructuralError("sigma must fix 1")
    z = base.zero
    name = f"{family}({base.provenance},{n})"

    if family == "full":
        pos = _upper_positions(n)

        def p2e(params):
            out = np.full((len(params), n, n), z, dtype=np.int64)
            for t, (i, j) in enumerate(pos):
                out[:, i, j] = params[:, t]
            return out

        def e2p(entries):
            return np.stack([entries[:, i, j] for (i, j) in pos], axis=1)

        fam = _EntryFamily(base, n, sigma_vec, len(pos), p2e, e2p, name)
    elif family == "S":
        pos = [(i, j) for i in range(n) for j in range(i + 1, n)]

        def p2e(params):
            out = np.full((len(params), n, n), z, dtype=np.int64)
            for i in range(n):
                out[:, i, i] = params[:, 0]
            for t, (i, j) in enumerate(pos):
                out[:, i, j] = params[:, t + 1]
            return out

        def e2p(entries):
            cols = [entries[:, 0, 0]] + [entries[:, i, j] for (i, j) in pos]
            return np.stack(cols, axis=1)

        fam = _EntryFamily(base, n, sigma_vec, 1 + len(pos), p2e, e2p, name)
    elif family == "T":

        def p2e(params):
            out = np.full((len(params), n, n), z, dtype=np.int64)
            for i in range(n):
                for j in range(i, n):
                    out[:, i, j] = params[:, j - i]
            return out

        def e2p(entries):
            return np.stack([entries[:, 0, d] for d in range(n)], axis=1)

        fam = _EntryFamily(base, n, sigma_vec, n, p2e, e2p, name)
    elif family in ("A", "B"):
        h = n // 2
        free_pos = [(i, i + d) for d in range(h, n) for i in range(n - d)]
        extra = family == "B"
        if extra and (n % 2 != 0 or n < 4):
            raise StructuralError("family B needs even n >= 4")
        spot = (0, h - 1)  # 1-indexed (1, k) with n = 2k

        def p2e(params):
            out = np.full((len(params), n, n), z, dtype=np.int64)
            for d in range(h):
                for i in range(n - d):
                    out[:, i, i + d] = params[:, d]
            for t, (i, j) in enumerate(free_pos):
                out[:, i, j] = params[:, h + t]
            if extra:
                out[:, spot[0], spot[1]] = base.add_table[
                    out[:, spot[0], spot[1]], params[:, -1]
                ]
            return out

        def e2p(entries):
            # constant diagonals are read off row 1 so the B summand at
            # (0, h-1) does not contaminate them; n >= 2 in this branch
            row = 1 if (extra or n > 1) else 0
            consts = [entries[:, row, row + d] if row + d < n else entries[:, 0, d]
                      for d in range(h)]
            cols = consts + [entries[:, i, j] for (i, j) in free_pos]
            if extra:
                diff = base.add_table[
                    entries[:, spot[0], spot[1]],
                    base.neg_table[consts[h - 1]],
                ]
                cols = cols + [diff]
            return np.stack(cols, axis=1)

        fam = _EntryFamily(base, n, sigma_vec, h + len(free_pos) + (1 if extra else 0), p2e, e2p, name)
    else:
        raise StructuralError(f"unknown triangular family {family!r}")
    return _build_entry_ring(fam, order_cap)


def make_upper_triangular(base: FiniteRing, n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Ordinary upper triangular matrices (skew "full" family with identity twist)."""
    r = make_skew_triangular(base, n, np.arange(base.order), "full", order_cap)
    r.provenance = f"upper_triangular({base.provenance},{n})"
    return r


def make_matrix(base: FiniteRing, n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Full n x n matrix ring over ``base``; entries row-major, little-endian ids."""
    m = base.order
    pos = [(i, j) for i in range(n) for j in range(n)]
    order = m ** len(pos)
    _check_cap(order, order_cap)
    powers = m ** np.arange(len(pos))
    all_params = np.zeros((order, len(pos)), dtype=np.int64)
    for t in range(len(pos)):
        all_params[:, t] = (np.arange(order) // powers[t]) % m
    ent = {p: all_params[:, t] for t, p in enumerate(pos)}
    A, M = base.add_table, base.mul_table
    add = np.zeros((order, order), dtype=np.int64)
    mul = np.zeros((order, order), dtype=np.int64)
    for lo in range(0, order, _CHUNK):
        hi = min(lo + _CHUNK, order)
        for t, (i, j) in enumerate(pos):
            add[lo:hi] += A[ent[(i, j)][lo:hi][:, None], ent[(i, j)][None, :]] * powers[t]
            acc = None
            for k in range(n):
                term = M[ent[(i, k)][lo:hi][:, None], ent[(k, j)][None, :]]
                acc = term if acc is None else A[acc, term]
            mul[lo:hi] += acc * powers[t]
    zid = 0
    oid = int(sum(base.one * powers[t] for t, (i, j) in enumerate(pos) if i == j))
    r = FiniteRing(add, mul, zid, oid, provenance=f"matrix({base.provenance},{n})")
    r.structure = {"family": "matrix", "base": base, "n_mat": n}
    return r


# ---------------------------------------------------------------------------
# shift ring (infinite; computable elements only)


@dataclass(frozen=True)
class ShiftRingElement:
    """lambda * 1 + finitely supported tail over the index set Z."""

    scalar: int
    support: tuple[tuple[int, int], ...]  # sorted (index, field id), nonzero

    def is_zero(self) -> bool:
        return self.scalar == 0 and not self.support


class ShiftRingOps:
    """Arithmetic of the commutative regular ring F*1 + (direct sum of F over Z)
    together with its index-shift automorphism."""

    def __init__(self, field: FiniteRing):
        st = field.structure
        if st.get("family") not in ("field", "zmod") or (
            st.get("family") == "zmod" and not _is_prime(st["n"])
        ):
            raise StructuralError("shift ring needs a field of coefficients")
        self.field = field

    def _norm(self, scalar: int, supp: dict[int, int]) -> ShiftRingElement:
        items = tuple(sorted((i, v) for i, v in supp.items() if v != self.field.zero))
        return ShiftRingElement(scalar, items)

    def zero(self) -> ShiftRingElement:
        return ShiftRingElement(self.field.zero, ())

    def one(self) -> ShiftRingElement:
        return ShiftRingElement(self.field.one, ())

    def indicator(self, index: int, value: Optional[int] = None) -> ShiftRingElement:
        v = self.field.one if value is None else value
        return self._norm(self.field.zero, {index: v})

    def add(self, a: ShiftRingElement, b: ShiftRingElement) -> ShiftRingElement:
        F = self.field
        supp = dict(a.support)
        for i, v in b.support:
            supp[i] = F.add(supp.get(i, F.zero), v)
        return self._norm(F.add(a.scalar, b.scalar), supp)

    def mul(self, a: ShiftRingElement, b: ShiftRingElement) -> ShiftRingElement:
        # (l + s)(m + t) = lm + [i -> l t_i + s_i m + s_i t_i]
        F = self.field
        supp: dict[int, int] = {}
        bt = dict(b.support)
        for i in set(dict(a.support)) | set(bt):
            s_i = dict(a.support).get(i, F.zero)
            t_i = bt.get(i, F.zero)
            val = F.add(F.add(F.mul(a.scalar, t_i), F.mul(s_i, b.scalar)), F.mul(s_i, t_i))
            supp[i] = val
        return self._norm(F.mul(a.scalar, b.scalar), supp)

    def alpha(self, a: ShiftRingElement) -> ShiftRingElement:
        """Index shift automorphism: the summand at index i maps to index i+1."""
        return self._norm(a.scalar, {i + 1: v for i, v in a.support})
