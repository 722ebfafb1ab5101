"""Ring endomorphisms and twisted derivations as validated id vectors.

Morphisms are stored densely (image id per element id); named generators
(identity, Frobenius, product swap, entrywise triangular extension) compile
down to vectors before validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ring import FiniteRing, StructuralError
from . import classify as _classify
from .construct import ShiftRingOps


@dataclass(frozen=True)
class MorphismViolation:
    law: str
    witness: tuple


class RingMorphism:
    """A validated unital ring endomorphism of a finite ring."""

    def __init__(self, ring: FiniteRing, vec: np.ndarray, name: str = "table"):
        self.ring = ring
        self.vec = np.ascontiguousarray(vec, dtype=np.int64)
        self.vec.setflags(write=False)
        self.name = name
        self.is_endomorphism = True
        uniq = np.unique(self.vec)
        self.is_injective = uniq.size == ring.order
        # on a finite carrier injective = surjective
        self.is_automorphism = self.is_injective
        if self.is_automorphism:
            inv = np.empty(ring.order, dtype=np.int64)
            inv[self.vec] = np.arange(ring.order)
            inv.setflags(write=False)
            self.inverse_vec: Optional[np.ndarray] = inv
        else:
            self.inverse_vec = None

    def __call__(self, a: int) -> int:
        return int(self.vec[a])

    def inverse(self, a: int) -> int:
        if self.inverse_vec is None:
            raise StructuralError("morphism is not bijective")
        return int(self.inverse_vec[a])

    def power_vec(self, k: int) -> np.ndarray:
        """Vector of the k-th compositional power; negative k uses the inverse."""
        n = self.ring.order
        out = np.arange(n)
        step = self.vec if k >= 0 else self.inverse_vec
        if step is None:
            raise StructuralError("negative power of a non-bijective morphism")
        for _ in range(abs(k)):
            out = step[out]
        return out

    def __repr__(self) -> str:
        return f"RingMorphism({self.name!r} on {self.ring.provenance})"


def check_endomorphism(ring: FiniteRing, vec, name: str = "table"):
    """Validate a candidate endomorphism vector.

    Returns a RingMorphism, or the first MorphismViolation found.  Maps not
    fixing 1 are rejected outright.
    """
    vec = np.asarray(vec, dtype=np.int64)
    if vec.shape != (ring.order,) or vec.min() < 0 or vec.max() >= ring.order:
        raise StructuralError("morphism vector malformed")
    if int(vec[ring.one]) != ring.one:
        return MorphismViolation("unital", (ring.one,))
    A, M = ring.add_table, ring.mul_table
    bad = vec[A] != A[np.ix_(vec, vec)]
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return MorphismViolation("additivity", (a, b))
    bad = vec[M] != M[np.ix_(vec, vec)]
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return MorphismViolation("multiplicativity", (a, b))
    return RingMorphism(ring, vec, name)


def require_endomorphism(ring: FiniteRing, vec, name: str = "table") -> RingMorphism:
    out = check_endomorphism(ring, vec, name)
    if isinstance(out, MorphismViolation):
        raise StructuralError(f"not an endomorphism: {out.law} at {out.witness}")
    return out


class AlphaDerivation:
    """A validated twisted derivation d with d(ab) = d(a)b + alpha(a)d(b)."""

    def __init__(self, ring: FiniteRing, alpha: RingMorphism, vec: np.ndarray, name: str = "table"):
        self.ring = ring
        self.alpha = alpha
        self.vec = np.ascontiguousarray(vec, dtype=np.int64)
        self.vec.setflags(write=False)
        self.name = name

    def __call__(self, a: int) -> int:
        return int(self.vec[a])

    def is_zero(self) -> bool:
        return bool((self.vec == self.ring.zero).all())

    def __repr__(self) -> str:
        return f"AlphaDerivation({self.name!r} on {self.ring.provenance})"


def check_derivation(ring: FiniteRing, alpha: RingMorphism, vec, name: str = "table"):
    vec = np.asarray(vec, dtype=np.int64)
    if vec.shape != (ring.order,) or vec.min() < 0 or vec.max() >= ring.order:
        raise StructuralError("derivation vector malformed")
    A, M = ring.add_table, ring.mul_table
    bad = vec[A] != A[np.ix_(vec, vec)]
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return MorphismViolation("additivity", (a, b))
    av = alpha.vec
    lhs = vec[M]
    rhs = A[M[np.ix_(vec, np.arange(ring.order))], M[np.ix_(av, vec)]]
    bad = lhs != rhs
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return MorphismViolation("twisted_leibniz", (a, b))
    return AlphaDerivation(ring, alpha, vec, name)


def require_derivation(ring: FiniteRing, alpha: RingMorphism, vec, name: str = "table") -> AlphaDerivation:
    out = check_derivation(ring, alpha, vec, name)
    if isinstance(out, MorphismViolation):
        raise StructuralError(f"not a derivation: {out.law} at {out.witness}")
    return out


# ---------------------------------------------------------------------------
# named generators


def identity_morphism(ring: FiniteRing) -> RingMorphism:
    return RingMorphism(ring, np.arange(ring.order), "identity")


def frobenius(field: FiniteRing) -> RingMorphism:
    st = field.structure
    if st.get("family") == "zmod":
        p = st["n"]
    elif st.get("family") == "field":
        p = st["p"]
    else:
        raise StructuralError("frobenius needs a field constructed by make_field/make_zmod")
    vec = np.arange(field.order)
    out = np.full(field.order, field.one, dtype=np.int64)
    e = p
    base = vec.copy()
    while e:
        if e & 1:
            out = field.mul_table[out, base]
        base = field.mul_table[base, base]
        e >>= 1
    return require_endomorphism(field, out, "frobenius")


def product_swap(ring: FiniteRing) -> RingMorphism:
    st = ring.structure
    if st.get("family") != "product":
        raise StructuralError("swap needs a product ring")
    r1, r2 = st["factors"]
    if r1.order != r2.order or not (
        (r1.add_table == r2.add_table).all() and (r1.mul_table == r2.mul_table).all()
    ):
        raise StructuralError("swap needs identical factors")
    n2 = r2.order
    ids = np.arange(ring.order)
    vec = (ids % n2) * n2 + ids // n2
    return require_endomorphism(ring, vec, "swap")


def zero_derivation(ring: FiniteRing, alpha: RingMorphism) -> AlphaDerivation:
    return AlphaDerivation(ring, alpha, np.full(ring.order, ring.zero), "zero")


def inner_derivation(ring: FiniteRing, alpha: RingMorphism, b: int) -> AlphaDerivation:
    """d(a) = b*a - alpha(a)*b, validated (not assumed)."""
    M, A, neg = ring.mul_table, ring.add_table, ring.neg_table
    vec = A[M[b, :], neg[M[alpha.vec, b]]]
    return require_derivation(ring, alpha, vec, f"inner({ring.label(b)})")


def extend_to_triangular(morphism: RingMorphism, tri: FiniteRing) -> RingMorphism:
    """Entrywise extension of a base endomorphism to a triangular family ring.

    Requires that the base map commutes with the family's twist.
    """
    st = tri.structure
    if "sigma" not in st or "n_params" not in st:
        raise StructuralError("target is not a triangular family ring")
    base: FiniteRing = st["base"]
    if morphism.ring is not base:
        raise StructuralError("morphism is not over the family's base ring")
    sigma = st["sigma"]
    clash = morphism.vec[sigma] != sigma[morphism.vec]
    if clash.any():
        a = int(np.nonzero(clash)[0][0])
        raise StructuralError(f"map does not commute with the twist; witness element {a}")
    vec = _entrywise_vec(tri, morphism.vec)
    return require_endomorphism(tri, vec, f"entrywise({morphism.name})")


def extend_derivation_to_triangular(
    delta: AlphaDerivation, alpha_ext: RingMorphism, tri: FiniteRing
) -> AlphaDerivation:
    st = tri.structure
    base: FiniteRing = st["base"]
    if delta.ring is not base:
        raise StructuralError("derivation is not over the family's base ring")
    sigma = st["sigma"]
    clash = delta.vec[sigma] != sigma[delta.vec]
    if clash.any():
        a = int(np.nonzero(clash)[0][0])
        raise StructuralError(f"derivation does not commute with the twist; witness element {a}")
    vec = _entrywise_vec(tri, delta.vec)
    return require_derivation(tri, alpha_ext, vec, f"entrywise({delta.name})")


def _entrywise_vec(tri: FiniteRing, base_vec: np.ndarray) -> np.ndarray:
    st = tri.structure
    m = st["base"].order
    p = st["n_params"]
    ids = np.arange(tri.order)
    out = np.zeros(tri.order, dtype=np.int64)
    for t in range(p):
        digit = (ids // m**t) % m
        out += base_vec[digit] * m**t
    return out


# ---------------------------------------------------------------------------
# compatibility, rigidity, idempotent fixing


def is_alpha_compatible(alpha: RingMorphism):
    """(True, None) or (False, (a, b)) with ab = 0 xor a*alpha(b) = 0."""
    M = alpha.ring.mul_table
    z = alpha.ring.zero
    bad = (M == z) != (M[:, alpha.vec] == z)
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return False, (a, b)
    return True, None


def is_delta_compatible(delta: AlphaDerivation):
    M = delta.ring.mul_table
    z = delta.ring.zero
    bad = (M == z) & (M[:, delta.vec] != z)
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return False, (a, b)
    return True, None


def is_compatible_pair(alpha: RingMorphism, delta: AlphaDerivation) -> bool:
    return is_alpha_compatible(alpha)[0] and is_delta_compatible(delta)[0]


def is_rigid(alpha: RingMorphism):
    """(True, None) or (False, a) with a*alpha(a) = 0 and a nonzero."""
    ring = alpha.ring
    ids = np.arange(ring.order)
    prod = ring.mul_table[ids, alpha.vec]
    bad = (prod == ring.zero) & (ids != ring.zero)
    if bad.any():
        return False, int(np.nonzero(bad)[0][0])
    return True, None


def fixes_idempotents(alpha: RingMorphism, scope: str = "all"):
    """Does alpha fix every idempotent (scope="all") or every left
    semicentral idempotent (scope="left-semicentral")?  Returns
    (verdict, failing idempotent or None)."""
    ring = alpha.ring
    if scope == "all":
        targets = _classify.idempotents(ring)
    elif scope == "left-semicentral":
        targets = _classify.semicentral(ring, "left")
    else:
        raise StructuralError(f"unknown scope {scope!r}")
    for e in targets.members():
        if int(alpha.vec[e]) != e:
            return False, e
    return True, None


# ---------------------------------------------------------------------------
# shift-ring probe (infinite carrier, sampled support window)


def shift_ring_compatibility_witness(ops: ShiftRingOps, window: int = 3):
    """Search indicator pairs in [-window, window] for ab = 0, a*shift(b) != 0.

    Returns (a, b) or None; the shift automorphism of the demo ring always
    yields one.
    """
    for i in range(-window, window + 1):
        for j in range(-window, window + 1):
            a = ops.indicator(i)
            b = ops.indicator(j)
            if ops.mul(a, b).is_zero() and not ops.mul(a, ops.alpha(b)).is_zero():
                return a, b
    return None
