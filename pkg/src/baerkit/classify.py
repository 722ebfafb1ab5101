"""Idempotent structure and annihilator-condition classifiers.

All predicates are exhaustive table scans.  Flags whose scan is cubic in the
order (Baer, Rickart, quasi-Baer, principal-annihilator variants, primeness,
semicommutativity) are skipped above a configurable cap and reported as such;
the annihilator-of-idempotent machinery stays available up to the carrier cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .ring import (
    ElementSet,
    FiniteRing,
    _additive_closure,
    left_ideal,
    right_annihilator,
    right_ideal,
    sum_of_right_ideals,
    two_sided_ideal,
    whole_ring,
    zero_set,
)

DEFAULT_CLASSIFY_CAP = 1024


# ---------------------------------------------------------------------------
# idempotent structure


def idempotents(ring: FiniteRing) -> ElementSet:
    ids = np.arange(ring.order)
    flags = ring.mul_table[ids, ids] == ids
    return ElementSet.from_bool(ring, flags)


def semicentral(ring: FiniteRing, side: str) -> ElementSet:
    """Idempotents e with re = ere for all r ("left") or er = ere ("right")."""
    M = ring.mul_table
    out = []
    for e in idempotents(ring).members():
        if side == "left":
            ok = (M[:, e] == M[e, M[:, e]]).all()
        elif side == "right":
            ok = (M[e, :] == M[M[e, :], e]).all()
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        if ok:
            out.append(e)
    return ElementSet(ring, out)


def central_idempotents(ring: FiniteRing) -> ElementSet:
    return semicentral(ring, "left") & semicentral(ring, "right")


# ---------------------------------------------------------------------------
# elementwise ring properties


def is_reduced(ring: FiniteRing) -> bool:
    ids = np.arange(ring.order)
    sq = ring.mul_table[ids, ids]
    return not ((sq == ring.zero) & (ids != ring.zero)).any()


def is_reversible(ring: FiniteRing) -> bool:
    z = (ring.mul_table == ring.zero)
    return bool((z == z.T).all())


def is_semicommutative(ring: FiniteRing) -> bool:
    M, z = ring.mul_table, ring.zero
    for a in range(ring.order):
        zero_b = np.nonzero(M[a, :] == z)[0]
        if zero_b.size == 0:
            continue
        # (a*r)*b for all r, restricted to the b with a*b = 0
        arb = M[M[a, :], :][:, zero_b]
        if (arb != z).any():
            return False
    return True


def is_prime(ring: FiniteRing) -> bool:
    M, z = ring.mul_table, ring.zero
    for a in range(ring.order):
        if a == z:
            continue
        dead = (M[M[a, :], :] == z).all(axis=0)  # b with aRb = 0
        dead[z] = False
        if dead.any():
            return False
    return True


def nilpotent_elements(ring: FiniteRing) -> ElementSet:
    out = []
    for a in range(ring.order):
        x = a
        seen = set()
        while x not in seen:
            seen.add(x)
            if x == ring.zero:
                out.append(a)
                break
            x = ring.mul(x, a)
    return ElementSet(ring, out)


def _set_is_nilpotent(ring: FiniteRing, ideal: ElementSet) -> bool:
    """Is the (two-sided) ideal nilpotent under set products with additive closure?"""
    cur = np.array(ideal.ids())
    zero_only = np.array([ring.zero])
    while True:
        if cur.size == 1 and cur[0] == ring.zero:
            return True
        prod = np.unique(ring.mul_table[np.ix_(cur, cur)])
        closed = _additive_closure(ring, np.append(prod, ring.zero))
        if closed.size >= cur.size and np.array_equal(closed, cur):
            return False
        if closed.size == 1 and closed[0] == ring.zero:
            return True
        if closed.size >= cur.size:
            # did not shrink; a nilpotent chain must strictly descend
            return False
        cur = closed


def prime_radical(ring: FiniteRing) -> ElementSet:
    """Largest nilpotent ideal.

    A finite ring is artinian, so this is the Jacobson radical
    {a : 1 - r*a is a unit for every r}.  Nil ideals always sit inside the
    Jacobson radical, and the asserts below verify the converse inclusion
    by checking the result really is a nilpotent two-sided ideal.
    """
    A, M, neg = ring.add_table, ring.mul_table, ring.neg_table
    # one-sided inverses are two-sided in a finite ring
    unit = (M == ring.one).any(axis=1)
    shifted = A[ring.one, neg[M]]  # entry (r, a) holds 1 - r*a
    flags = unit[shifted].all(axis=0)
    rad = ElementSet.from_bool(ring, flags, "two_sided_ideal")
    assert rad.recheck_flavor(), "prime radical must be a two-sided ideal"
    assert _set_is_nilpotent(ring, rad), "prime radical must be nilpotent"
    return rad


def is_semiprime(ring: FiniteRing) -> bool:
    return prime_radical(ring).is_zero()


# ---------------------------------------------------------------------------
# idempotent-generated annihilator machinery


def _idempotent_right_ideals(ring: FiniteRing) -> dict[int, int]:
    """mask(eR) -> smallest generating idempotent e (id order)."""
    out: dict[int, int] = {}
    M = ring.mul_table
    for e in idempotents(ring).members():
        mask = 0
        for v in np.unique(M[e, :]):
            mask |= 1 << int(v)
        out.setdefault(mask, e)
    return out


def _intersection_closure(masks: set[int]) -> set[int]:
    closed = set(masks)
    frontier = set(masks)
    while frontier:
        new = set()
        for f in frontier:
            for m in closed:
                inter = f & m
                if inter not in closed and inter not in new:
                    new.add(inter)
        closed |= new
        frontier = new
    return closed


def is_baer(ring: FiniteRing) -> bool:
    """Every subset annihilator idempotent-generated; subset annihilators are
    exactly the intersections of single-element annihilators."""
    egen = _idempotent_right_ideals(ring)
    base = {right_annihilator(ring, [s]).mask for s in range(ring.order)}
    for mask in _intersection_closure(base):
        if mask not in egen:
            return False
    return True


def is_rickart(ring: FiniteRing) -> bool:
    egen = _idempotent_right_ideals(ring)
    return all(right_annihilator(ring, [s]).mask in egen for s in range(ring.order))


def is_quasi_baer(ring: FiniteRing) -> bool:
    """Annihilators of two-sided ideals; an ideal is a sum of principal ones,
    so its annihilator is an intersection of principal-ideal annihilators.
    r(RaR) = {x : aRx = 0} because R is unital, so the principal ideal is
    never materialized."""
    egen = _idempotent_right_ideals(ring)
    M, z = ring.mul_table, ring.zero
    base = set()
    for a in range(ring.order):
        ar = np.unique(M[a, :])
        ann = (M[ar, :] == z).all(axis=0)
        base.add(ElementSet.from_bool(ring, ann).mask)
    for mask in _intersection_closure(base):
        if mask not in egen:
            return False
    return True


def is_right_pq_baer(ring: FiniteRing) -> bool:
    egen = _idempotent_right_ideals(ring)
    M = ring.mul_table
    for a in range(ring.order):
        ar = np.unique(M[a, :])
        ann = (M[ar, :] == ring.zero).all(axis=0)
        mask = 0
        for v in np.nonzero(ann)[0]:
            mask |= 1 << int(v)
        if mask not in egen:
            return False
    return True


def is_right_cp_baer(ring: FiniteRing):
    """(verdict, witnesses e -> c, failing e or None)."""
    egen = _idempotent_right_ideals(ring)
    witnesses: dict[int, int] = {}
    for e in idempotents(ring).members():
        ann = right_annihilator(ring, right_ideal(ring, [e]))
        c = egen.get(ann.mask)
        if c is None:
            return False, witnesses, e
        witnesses[e] = c
    return True, witnesses, None


def cp_baer_witness(ring: FiniteRing, e: int) -> Optional[int]:
    """First idempotent c (id order) with cR = r(eR), or None."""
    ann = right_annihilator(ring, right_ideal(ring, [e]))
    return _idempotent_right_ideals(ring).get(ann.mask)


@dataclass
class EquivalenceVerdict:
    definition: bool
    trace_form: bool
    right_semicentral_form: bool
    finite_sum_form: bool

    @property
    def all_agree(self) -> bool:
        return len({self.definition, self.trace_form,
                    self.right_semicentral_form, self.finite_sum_form}) == 1


def cp_baer_equivalences(ring: FiniteRing) -> EquivalenceVerdict:
    """Evaluate the four characterizations independently.

    (a) every r(eR) is cR for idempotent c; (b) the same through r(ReR);
    (c) r(eR) = r(f) for some right semicentral idempotent f; (d) the
    annihilator of every finite sum of idempotent-generated right ideals is
    idempotent-generated.
    """
    idem = list(idempotents(ring).members())
    egen = _idempotent_right_ideals(ring)
    # (a)
    a_ok = is_right_cp_baer(ring)[0]
    # (b) via the two-sided ideal ReR
    b_ok = True
    for e in idem:
        ann_tr = right_annihilator(ring, two_sided_ideal(ring, [e]))
        ann_e = right_annihilator(ring, right_ideal(ring, [e]))
        if ann_tr.mask != ann_e.mask or ann_e.mask not in egen:
            b_ok = False
            break
    # (c) r(eR) = r({f}) with f right semicentral
    sr = list(semicentral(ring, "right").members())
    c_ok = True
    for e in idem:
        ann_e = right_annihilator(ring, right_ideal(ring, [e]))
        if not any(right_annihilator(ring, [f]).mask == ann_e.mask for f in sr):
            c_ok = False
            break
    # (d) sums of idempotent-generated right ideals: closure under pairwise sum
    sums = {right_ideal(ring, [e]).mask for e in idem}
    frontier = set(sums)
    union_cache: dict[int, int] = {}
    while frontier:
        new = set()
        for f in frontier:
            for m in sums:
                u = f | m
                if u == f or u == m or u in sums:
                    s = u  # the union is already an additively closed sum
                else:
                    s = union_cache.get(u)
                    if s is None:
                        s = sum_of_right_ideals(
                            ring,
                            [ElementSet.from_mask(ring, f, "right_ideal"),
                             ElementSet.from_mask(ring, m, "right_ideal")],
                        ).mask
                        union_cache[u] = s
                if s not in sums and s not in new:
                    new.add(s)
        sums |= new
        frontier = new
    d_ok = True
    for mask in sums:
        ann = right_annihilator(ring, ElementSet.from_mask(ring, mask, "right_ideal"))
        if ann.mask not in egen:
            d_ok = False
            break
    return EquivalenceVerdict(a_ok, b_ok, c_ok, d_ok)


def is_right_i_extending(ring: FiniteRing):
    """(verdict, witnesses e -> c, failing e or None): every ReR essential in
    some cR with c idempotent."""
    witnesses: dict[int, int] = {}
    idem = list(idempotents(ring).members())
    # cyclic right ideal masks, shared across all the essentiality scans
    cyc = [right_ideal(ring, [m]).mask for m in range(ring.order)]
    zbit = 1 << ring.zero
    for e in idem:
        nmask = two_sided_ideal(ring, [e]).mask
        found = None
        for c in idem:
            crmask = cyc[c]
            if nmask & ~crmask:
                continue
            rest = crmask & ~zbit
            essential = True
            while rest:
                low = rest & -rest
                if (cyc[low.bit_length() - 1] & nmask & ~zbit) == 0:
                    essential = False
                    break
                rest ^= low
            if essential:
                found = c
                break
        if found is None:
            return False, witnesses, e
        witnesses[e] = found
    return True, witnesses, None


# ---------------------------------------------------------------------------
# full report


@dataclass
class PropertyReport:
    ring: str
    order: int
    idempotents: list[int]
    left_semicentral: list[int]
    right_semicentral: list[int]
    central_idempotents: list[int]
    radical: list[int]
    flags: dict[str, Optional[bool]]
    witnesses: dict[str, dict[int, int]] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ring": self.ring,
            "order": self.order,
            "idempotents": self.idempotents,
            "left_semicentral": self.left_semicentral,
            "right_semicentral": self.right_semicentral,
            "central_idempotents": self.central_idempotents,
            "radical": self.radical,
            "flags": dict(self.flags),
            "witnesses": {k: {str(e): c for e, c in v.items()} for k, v in self.witnesses.items()},
            "skipped": list(self.skipped),
        }


IMPLICATIONS = [
    ("baer", "quasi_baer"),
    ("quasi_baer", "right_pq_baer"),
    ("right_pq_baer", "right_cp_baer"),
    ("abelian", "right_cp_baer"),
    ("abelian", "left_cp_baer"),
    ("reduced", "reversible"),
    ("reversible", "semicommutative"),
    ("prime", "semiprime"),
]


def check_implications(report: PropertyReport) -> list[str]:
    """Implication-chain violations within one report (skipped flags vacuous)."""
    bad = []
    f = report.flags
    for pre, post in IMPLICATIONS:
        if f.get(pre) is True and f.get(post) is False:
            bad.append(f"{pre} => {post}")
    if f.get("semiprime") is True:
        if not (report.left_semicentral == report.central_idempotents == report.right_semicentral):
            bad.append("semiprime => semicentral sets central")
    return bad


def classify(ring: FiniteRing, cap: int = DEFAULT_CLASSIFY_CAP) -> PropertyReport:
    idem = idempotents(ring)
    sl = semicentral(ring, "left")
    sr = semicentral(ring, "right")
    ci = sl & sr
    flags: dict[str, Optional[bool]] = {}
    witnesses: dict[str, dict[int, int]] = {}
    skipped: list[str] = []

    flags["abelian"] = idem.mask == ci.mask
    flags["reduced"] = is_reduced(ring)
    flags["reversible"] = is_reversible(ring)

    rad = prime_radical(ring)
    flags["semiprime"] = rad.is_zero()

    heavy = ring.order > cap
    for name, fn in (
        ("semicommutative", is_semicommutative),
        ("prime", is_prime),
        ("baer", is_baer),
        ("rickart", is_rickart),
        ("quasi_baer", is_quasi_baer),
    ):
        if heavy:
            flags[name] = None
            skipped.append(name)
        else:
            flags[name] = fn(ring)
    if heavy:
        flags["right_pq_baer"] = None
        flags["left_pq_baer"] = None
        skipped += ["right_pq_baer", "left_pq_baer"]
    else:
        flags["right_pq_baer"] = is_right_pq_baer(ring)
        flags["left_pq_baer"] = is_right_pq_baer(ring.opposite())

    ok, wit, _ = is_right_cp_baer(ring)
    flags["right_cp_baer"] = ok
    witnesses["right_cp_baer"] = wit
    ok, wit, _ = is_right_cp_baer(ring.opposite())
    flags["left_cp_baer"] = ok
    witnesses["left_cp_baer"] = wit

    if heavy:
        flags["right_I_extending"] = None
        flags["left_I_extending"] = None
        skipped += ["right_I_extending", "left_I_extending"]
    else:
        ok, wit, _ = is_right_i_extending(ring)
        flags["right_I_extending"] = ok
        witnesses["right_I_extending"] = wit
        ok, wit, _ = is_right_i_extending(ring.opposite())
        flags["left_I_extending"] = ok
        witnesses["left_I_extending"] = wit

    return PropertyReport(
        ring=ring.provenance,
        order=ring.order,
        idempotents=idem.ids(),
        left_semicentral=sl.ids(),
        right_semicentral=sr.ids(),
        central_idempotents=ci.ids(),
        radical=rad.ids(),
        flags=flags,
        witnesses=witnesses,
        skipped=skipped,
    )
