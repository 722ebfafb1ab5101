"""Exact finite-ring engine: tables, axiom validation, ideals, annihilators.

A ring is a finite carrier ``{0, .., n-1}`` of element ids with fully
materialized addition and multiplication tables.  All set machinery works on
ids; no semantic values are ever hashed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 4096

# Exhaustive O(n^3) law scans are done up to this order; above it the scan
# falls back to seeded random sampling (recorded in the returned report).
EXHAUSTIVE_VALIDATION_CAP = 512


class StructuralError(ValueError):
    """Malformed table or mismatched-ring input, as opposed to an axiom failure."""


class OrderCapExceeded(StructuralError):
    """Requested construction would exceed the configured carrier cap."""


@dataclass(frozen=True)
class AxiomViolation:
    law: str
    witness: tuple


class FiniteRing:
    """A finite associative ring with identity, given by explicit tables.

    Immutable after construction; safe to share between workers.
    """

    def __init__(
        self,
        add_table: np.ndarray,
        mul_table: np.ndarray,
        zero: int,
        one: int,
        provenance: str = "?",
        element_labels: Optional[Sequence[str]] = None,
        order_cap: int = DEFAULT_ORDER_CAP,
    ):
        add_table = np.ascontiguousarray(add_table, dtype=np.int32)
        mul_table = np.ascontiguousarray(mul_table, dtype=np.int32)
        n = add_table.shape[0]
        if n > order_cap:
            raise OrderCapExceeded(f"ring order {n} exceeds cap {order_cap}")
        if n < 2:
            raise StructuralError("ring must have at least two elements (0 != 1)")
        for name, t in (("add", add_table), ("mul", mul_table)):
            if t.shape != (n, n):
                raise StructuralError(f"{name} table is not {n}x{n}")
            if t.min() < 0 or t.max() >= n:
                raise StructuralError(f"{name} table entry out of range 0..{n - 1}")
        if zero == one:
            raise StructuralError("zero and one coincide")
        self.order = n
        self.add_table = add_table
        self.mul_table = mul_table
        self.zero = int(zero)
        self.one = int(one)
        self.provenance = provenance
        self.element_labels = list(element_labels) if element_labels else None
        # negation: for each a the unique b with a + b = zero
        neg = np.full(n, -1, dtype=np.int32)
        rows, cols = np.nonzero(add_table == zero)
        neg[rows] = cols
        if (neg < 0).any():
            raise StructuralError("addition table has no additive inverse for some element")
        self.neg_table = neg
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self.neg_table.setflags(write=False)
        # attached by constructors when a structural decode exists
        self.structure: dict = {}

    # -- element arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        if self.element_labels:
            return self.element_labels[a]
        return str(a)

    def __repr__(self) -> str:
        return f"FiniteRing(order={self.order}, provenance={self.provenance!r})"

    # Identity-based equality is intentional: rings are compared by object,
    # sets carry a reference to their ring.

    def opposite(self) -> "FiniteRing":
        """The opposite ring (multiplication transposed)."""
        op = FiniteRing(
            self.add_table, self.mul_table.T.copy(), self.zero, self.one,
            provenance=f"op({self.provenance})", element_labels=self.element_labels,
        )
        return op


# ---------------------------------------------------------------------------
# element sets


class ElementSet:
    """A subset of a ring's carrier, stored as a bitset over ids.

    An optional flavor ("right_ideal", "left_ideal", "two_sided_ideal")
    records what closure the set was built with; :meth:`recheck_flavor`
    re-verifies it from the tables.
    """

    __slots__ = ("ring", "mask", "flavor")

    def __init__(self, ring: FiniteRing, members: Iterable[int], flavor: Optional[str] = None):
        mask = 0
        for m in members:
            if not 0 <= m < ring.order:
                raise StructuralError(f"element id {m} out of range")
            mask |= 1 << m
        self.ring = ring
        self.mask = mask
        self.flavor = flavor

    @classmethod
    def from_mask(cls, ring: FiniteRing, mask: int, flavor: Optional[str] = None) -> "ElementSet":
        s = cls.__new__(cls)
        s.ring = ring
        s.mask = mask
        s.flavor = flavor
        return s

    @classmethod
    def from_bool(cls, ring: FiniteRing, flags: np.ndarray, flavor: Optional[str] = None) -> "ElementSet":
        flags = np.asarray(flags, dtype=bool)
        packed = np.packbits(flags.astype(np.uint8), bitorder="little")
        mask = int.from_bytes(packed.tobytes(), "little")
        return cls.from_mask(ring, mask, flavor)

    @classmethod
    def from_ids_array(cls, ring: FiniteRing, ids: np.ndarray, flavor: Optional[str] = None) -> "ElementSet":
        flags = np.zeros(ring.order, dtype=bool)
        flags[ids] = True
        return cls.from_bool(ring, flags, flavor)

    def members(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def ids(self) -> list[int]:
        return self.ids_array().tolist()

    def ids_array(self) -> np.ndarray:
        nbytes = (self.ring.order + 7) // 8
        raw = np.frombuffer(self.mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        flags = np.unpackbits(raw, bitorder="little", count=self.ring.order)
        return np.flatnonzero(flags)

    def __contains__(self, a: int) -> bool:
        return bool((self.mask >> a) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.ring is other.ring
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.ring), self.mask))

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._same_ring(other)
        return ElementSet.from_mask(self.ring, self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._same_ring(other)
        return ElementSet.from_mask(self.ring, self.mask & other.mask)

    def issubset(self, other: "ElementSet") -> bool:
        self._same_ring(other)
        return self.mask & ~other.mask == 0

    def is_zero(self) -> bool:
        return self.mask == (1 << self.ring.zero)

    def _same_ring(self, other: "ElementSet") -> None:
        if self.ring is not other.ring:
            raise StructuralError("element sets belong to different rings")

    def recheck_flavor(self) -> bool:
        if self.flavor == "right_ideal":
            return _is_right_ideal(self.ring, self)
        if self.flavor == "left_ideal":
            return _is_left_ideal(self.ring, self)
        if self.flavor == "two_sided_ideal":
            return _is_right_ideal(self.ring, self) and _is_left_ideal(self.ring, self)
        return True

    def __repr__(self) -> str:
        return f"ElementSet({sorted(self.members())}, flavor={self.flavor})"


def whole_ring(ring: FiniteRing) -> ElementSet:
    return ElementSet.from_mask(ring, (1 << ring.order) - 1, "two_sided_ideal")


def zero_set(ring: FiniteRing) -> ElementSet:
    return ElementSet(ring, [ring.zero], "two_sided_ideal")


def _is_right_ideal(ring: FiniteRing, s: ElementSet) -> bool:
    ids = s.ids()
    if ring.zero not in s:
        return False
    if ids:
        idx = np.array(ids)
        if not np.isin(ring.add_table[np.ix_(idx, idx)], idx).all():
            return False
        if not np.isin(ring.mul_table[idx, :], idx).all():
            return False
    return True


def _is_left_ideal(ring: FiniteRing, s: ElementSet) -> bool:
    ids = s.ids()
    if ring.zero not in s:
        return False
    if ids:
        idx = np.array(ids)
        if not np.isin(ring.add_table[np.ix_(idx, idx)], idx).all():
            return False
        if not np.isin(ring.mul_table[:, idx], idx).all():
            return False
    return True


# ---------------------------------------------------------------------------
# axiom validation


def validate_axioms(ring: FiniteRing, rng_seed: int = 0) -> list[AxiomViolation]:
    """Scan the ring laws; empty result means all axioms hold.

    Orders above ``EXHAUSTIVE_VALIDATION_CAP`` are checked on a seeded random
    sample of triples instead of the full cube (the pairwise laws stay
    exhaustive); callers that need the distinction can compare the order.
    """
    n = ring.order
    A, M = ring.add_table, ring.mul_table
    violations: list[AxiomViolation] = []
    z, o = ring.zero, ring.one

    # abelian group laws (pairwise, always exhaustive)
    if not (A[z, :] == np.arange(n)).all():
        a = int(np.nonzero(A[z, :] != np.arange(n))[0][0])
        violations.append(AxiomViolation("additive_identity", (z, a)))
    if not (A == A.T).all():
        a, b = map(int, np.argwhere(A != A.T)[0])
        violations.append(AxiomViolation("additive_commutativity", (a, b)))
    if not (M[o, :] == np.arange(n)).all():
        a = int(np.nonzero(M[o, :] != np.arange(n))[0][0])
        violations.append(AxiomViolation("left_multiplicative_identity", (o, a)))
    if not (M[:, o] == np.arange(n)).all():
        a = int(np.nonzero(M[:, o] != np.arange(n))[0][0])
        violations.append(AxiomViolation("right_multiplicative_identity", (a, o)))

    if n <= EXHAUSTIVE_VALIDATION_CAP:
        first = _scan_triples(ring, range(n))
    else:
        rng = np.random.default_rng(rng_seed)
        first = _scan_sampled_triples(ring, rng, 200_000)
    violations.extend(first)
    return violations


def _scan_sampled_triples(ring: FiniteRing, rng, count: int) -> list[AxiomViolation]:
    """Vectorized law scan on a seeded sample of (a, b, c) triples."""
    n = ring.order
    A, M = ring.add_table, ring.mul_table
    a = rng.integers(0, n, size=count)
    b = rng.integers(0, n, size=count)
    c = rng.integers(0, n, size=count)
    out: list[AxiomViolation] = []
    laws = (
        ("left_distributivity", M[a, A[b, c]], A[M[a, b], M[a, c]], (a, b, c)),
        ("right_distributivity", M[A[b, c], a], A[M[b, a], M[c, a]], (b, c, a)),
        ("additive_associativity", A[A[a, b], c], A[a, A[b, c]], (a, b, c)),
        ("multiplicative_associativity", M[M[a, b], c], M[a, M[b, c]], (a, b, c)),
    )
    for name, lhs, rhs, order in laws:
        bad = lhs != rhs
        if bad.any():
            i = int(np.nonzero(bad)[0][0])
            out.append(AxiomViolation(name, tuple(int(v[i]) for v in order)))
    return out


def _scan_triples(ring: FiniteRing, a_range: Iterable[int]) -> list[AxiomViolation]:
    A, M = ring.add_table, ring.mul_table
    out: list[AxiomViolation] = []
    seen: set[str] = set()
    for a in a_range:
        # left distributivity: a(b+c) = ab + ac
        lhs = M[a, A]                      # [b, c] -> a*(b+c)
        rhs = A[M[a, :][:, None], M[a, :][None, :]]  # [b, c] -> ab + ac
        if "left_distributivity" not in seen and not (lhs == rhs).all():
            b, c = map(int, np.argwhere(lhs != rhs)[0])
            out.append(AxiomViolation("left_distributivity", (a, b, c)))
            seen.add("left_distributivity")
        # right distributivity: (b+c)a = ba + ca
        lhs = M[A, a]
        rhs = A[M[:, a][:, None], M[:, a][None, :]]
        if "right_distributivity" not in seen and not (lhs == rhs).all():
            b, c = map(int, np.argwhere(lhs != rhs)[0])
            out.append(AxiomViolation("right_distributivity", (b, c, a)))
            seen.add("right_distributivity")
        # associativity
        lhs = A[A[a, :], :]
        rhs = A[a, A]
        if "additive_associativity" not in seen and not (lhs == rhs).all():
            b, c = map(int, np.argwhere(lhs != rhs)[0])
            out.append(AxiomViolation("additive_associativity", (a, b, c)))
            seen.add("additive_associativity")
        lhs = M[M[a, :], :]
        rhs = M[a, M]
        if "multiplicative_associativity" not in seen and not (lhs == rhs).all():
            b, c = map(int, np.argwhere(lhs != rhs)[0])
            out.append(AxiomViolation("multiplicative_associativity", (a, b, c)))
            seen.add("multiplicative_associativity")
        if len(seen) == 4:
            break
    return out


# ---------------------------------------------------------------------------
# ideal machinery


def _additive_closure(ring: FiniteRing, seed_ids: np.ndarray) -> np.ndarray:
    """Closure of a set of ids under addition (seed must contain zero)."""
    flags = np.zeros(ring.order, dtype=bool)
    flags[seed_ids] = True
    size = int(flags.sum())
    while True:
        if size == ring.order:
            return np.arange(ring.order)
        cur = np.flatnonzero(flags)
        flags[ring.add_table[np.ix_(cur, cur)]] = True
        grown = int(flags.sum())
        if grown == size:
            return cur
        size = grown


def right_ideal(ring: FiniteRing, generators: ElementSet | Iterable[int]) -> ElementSet:
    """Smallest right ideal containing the generators."""
    gens = generators.ids() if isinstance(generators, ElementSet) else list(generators)
    if isinstance(generators, ElementSet) and generators.ring is not ring:
        raise StructuralError("generators belong to a different ring")
    if not gens:
        return zero_set(ring)
    flags = np.zeros(ring.order, dtype=bool)
    flags[ring.mul_table[np.array(gens), :]] = True
    flags[ring.zero] = True
    if len(gens) == 1:
        # gR is already additively closed: g*r + g*s = g*(r + s)
        return ElementSet.from_bool(ring, flags, "right_ideal")
    closed = _additive_closure(ring, np.flatnonzero(flags))
    return ElementSet(ring, closed.tolist(), "right_ideal")


def left_ideal(ring: FiniteRing, generators: ElementSet | Iterable[int]) -> ElementSet:
    gens = generators.ids() if isinstance(generators, ElementSet) else list(generators)
    if not gens:
        return zero_set(ring)
    flags = np.zeros(ring.order, dtype=bool)
    flags[ring.mul_table[:, np.array(gens)]] = True
    flags[ring.zero] = True
    if len(gens) == 1:
        return ElementSet.from_bool(ring, flags, "left_ideal")
    closed = _additive_closure(ring, np.flatnonzero(flags))
    return ElementSet(ring, closed.tolist(), "left_ideal")


def two_sided_ideal(ring: FiniteRing, generators: ElementSet | Iterable[int]) -> ElementSet:
    gens = generators.ids() if isinstance(generators, ElementSet) else list(generators)
    if not gens:
        return zero_set(ring)
    flags = np.zeros(ring.order, dtype=bool)
    flags[ring.mul_table[:, np.array(gens)]] = True            # r*g
    rg = np.flatnonzero(flags)
    flags[:] = False
    flags[ring.mul_table[rg, :]] = True                        # r*g*s
    flags[ring.zero] = True
    closed = _additive_closure(ring, np.flatnonzero(flags))
    return ElementSet(ring, closed.tolist(), "two_sided_ideal")


def sum_of_right_ideals(ring: FiniteRing, ideals: Sequence[ElementSet]) -> ElementSet:
    for i in ideals:
        if i.ring is not ring:
            raise StructuralError("mixed rings in ideal sum")
    # each summand is already an additive subgroup, so pairwise sumsets are
    # closed in one step and no fixpoint iteration is needed
    cur = np.array([ring.zero])
    flags = np.zeros(ring.order, dtype=bool)
    flags[ring.zero] = True
    for i in ideals:
        flags[:] = False
        flags[ring.add_table[np.ix_(cur, i.ids_array())]] = True
        flags[ring.zero] = True
        cur = np.flatnonzero(flags)
    return ElementSet.from_bool(ring, flags, "right_ideal")


def right_annihilator(ring: FiniteRing, s: ElementSet | Iterable[int]) -> ElementSet:
    """``{a : x*a = 0 for all x in s}``; always a right ideal."""
    ids = s.ids() if isinstance(s, ElementSet) else list(s)
    if not ids:
        return whole_ring(ring)
    ok = (ring.mul_table[np.array(ids), :] == ring.zero).all(axis=0)
    flavor = "right_ideal"
    if isinstance(s, ElementSet) and s.flavor == "two_sided_ideal":
        flavor = "two_sided_ideal"
    out = ElementSet.from_bool(ring, ok, flavor)
    if flavor == "two_sided_ideal":
        assert out.recheck_flavor(), "annihilator of a two-sided ideal must be two-sided"
    return out


def left_annihilator(ring: FiniteRing, s: ElementSet | Iterable[int]) -> ElementSet:
    ids = s.ids() if isinstance(s, ElementSet) else list(s)
    if not ids:
        return whole_ring(ring)
    ok = (ring.mul_table[:, np.array(ids)] == ring.zero).all(axis=1)
    flavor = "left_ideal"
    if isinstance(s, ElementSet) and s.flavor == "two_sided_ideal":
        flavor = "two_sided_ideal"
    return ElementSet.from_bool(ring, ok, flavor)


def principal_right_ideal(ring: FiniteRing, a: int) -> ElementSet:
    """aR, which distributivity makes a right ideal already."""
    row = np.unique(ring.mul_table[a, :])
    return ElementSet(ring, row.tolist(), "right_ideal")


def is_essential_right_submodule(ring: FiniteRing, n_sub: ElementSet, m_mod: ElementSet) -> bool:
    """True iff every nonzero cyclic submodule of M meets N nontrivially."""
    if not n_sub.issubset(m_mod):
        raise StructuralError("N is not contained in M")
    zero = ring.zero
    for m in m_mod.members():
        if m == zero:
            continue
        cyc = right_ideal(ring, [m])
        inter = cyc & n_sub
        if inter.mask == (1 << zero) or inter.mask == 0:
            return False
    return True
