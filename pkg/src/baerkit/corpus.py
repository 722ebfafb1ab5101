"""The deterministic ring corpus and the extension-context corpus.

Everything is generated as spec text first, so reports and cache keys stay
stable; builders skip entries whose carrier would exceed the order cap and
record the skip.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .ring import DEFAULT_ORDER_CAP, FiniteRing, OrderCapExceeded
from . import specs
from .maps import is_alpha_compatible


def ring_spec_texts() -> list[str]:
    out: list[str] = []
    for n in range(2, 33):
        out.append(f"zmod {n}")
    for p, k in ((2, 2), (2, 3), (2, 4), (3, 2), (5, 2)):
        out.append(f"field {p} {k}")
    for a in range(2, 14):
        for b in range(a, 14):
            out.append(f"product (zmod {a}) (zmod {b})")
    for a in (2, 3, 4, 5):
        out.append(f"product (zmod {a}) (field 2 2)")
    out.append("product (field 2 2) (field 2 2)")
    out.append("quotient (zmod 16) [4]")
    out.append("quotient (zmod 27) [9]")
    out.append("quotient (zmod 32) [8]")
    for m in (2, 3, 4, 5):
        out.append(f"matrix 2 (zmod {m})")
    out.append("matrix 2 (field 2 2)")
    for m in range(2, 16):
        out.append(f"upper_triangular 2 (zmod {m})")
    out.append("upper_triangular 2 (field 2 2)")
    for b in ("zmod 2", "zmod 3", "field 2 2"):
        out.append(f"upper_triangular 3 ({b})")
    base_sigma = [
        ("zmod 2", "identity"),
        ("zmod 3", "identity"),
        ("zmod 4", "identity"),
        ("zmod 6", "identity"),
        ("field 2 2", "identity"),
        ("field 2 2", "frobenius"),
    ]
    for family in ("full", "S", "T", "A", "B"):
        sizes = (4,) if family == "B" else (2, 3, 4)
        for n in sizes:
            for b, s in base_sigma:
                out.append(f"skew_triangular {family} {n} ({b}) ({s})")
    return out


def build_corpus(order_cap: int = DEFAULT_ORDER_CAP):
    """Yields (spec_text, ring_or_None); None marks a cap skip."""
    for text in ring_spec_texts():
        spec = specs.parse_spec(text)
        try:
            ring = specs.build_ring(spec, order_cap)
        except OrderCapExceeded:
            yield text, None
            continue
        yield text, ring


def extension_pair_texts() -> list[tuple[str, str]]:
    """(ring spec, alpha spec) contexts for the bounded extension suites.

    Compatibility is not guaranteed here; suite drivers filter with
    is_alpha_compatible and record what they skipped.
    """
    out: list[tuple[str, str]] = [
        ("zmod 2", "identity"),
        ("zmod 3", "identity"),
        ("zmod 4", "identity"),
        ("zmod 6", "identity"),
        ("zmod 8", "identity"),
        ("zmod 9", "identity"),
        ("zmod 12", "identity"),
        ("field 2 2", "identity"),
        ("field 2 2", "frobenius"),
        ("field 2 3", "frobenius"),
        ("field 3 2", "frobenius"),
        ("product (zmod 2) (zmod 3)", "identity"),
        ("product (zmod 2) (zmod 2)", "identity"),
        ("product (zmod 2) (zmod 2)", "swap"),
        ("upper_triangular 2 (zmod 2)", "identity"),
        ("upper_triangular 2 (zmod 3)", "identity"),
        ("skew_triangular T 2 (zmod 2) (identity)", "identity"),
        ("skew_triangular T 3 (zmod 2) (identity)", "identity"),
        ("skew_triangular T 2 (zmod 3) (identity)", "identity"),
        ("skew_triangular T 2 (field 2 2) (frobenius)", "entrywise frobenius"),
        ("skew_triangular A 4 (zmod 2) (identity)", "identity"),
        ("skew_triangular B 4 (zmod 2) (identity)", "identity"),
    ]
    return out


def build_extension_pairs(order_cap: int = DEFAULT_ORDER_CAP,
                          compatible_only: bool = True):
    """Yields (ring_spec_text, alpha_spec_text, ring, alpha)."""
    for rtext, atext in extension_pair_texts():
        ring = specs.build_ring(specs.parse_spec(rtext), order_cap)
        alpha = specs.build_morphism(ring, atext)
        if compatible_only and not is_alpha_compatible(alpha)[0]:
            continue
        yield rtext, atext, ring, alpha


def inverse_context_texts() -> list[tuple[str, str, str]]:
    """(ring spec, alpha spec, delta spec) for the inverse-series suites."""
    out: list[tuple[str, str, str]] = []
    for rtext, atext in extension_pair_texts():
        out.append((rtext, atext, "zero"))
    # inner derivations delta_b(a) = ba - alpha(a)b; compatibility is checked
    # by the suite drivers, which skip contexts failing the hypothesis
    for b in (1, 2, 3):
        out.append(("skew_triangular T 2 (zmod 2) (identity)", "identity", f"inner {b}"))
    for b in (1, 2, 3, 5):
        out.append(("upper_triangular 2 (zmod 2)", "identity", f"inner {b}"))
    # nonzero compatible inner derivations live over twisted truncated bases
    for b in (2, 3, 5):
        out.append(("skew_triangular T 2 (field 2 2) (frobenius)", "identity", f"inner {b}"))
    out.append(("skew_triangular T 2 (field 2 2) (frobenius)", "entrywise frobenius", "inner 1"))
    for b in (2, 3):
        out.append(("skew_triangular A 4 (zmod 2) (identity)", "identity", f"inner {b}"))
    return out


def frobenius_family_texts() -> list[str]:
    """The skew triangular instances over F_q with the Frobenius twist."""
    out = []
    for q_spec in ("zmod 2", "field 2 2"):
        for family in ("T", "A"):
            for n in (2, 3, 4):
                out.append(f"skew_triangular {family} {n} ({q_spec}) (frobenius)")
        out.append(f"skew_triangular B 4 ({q_spec}) (frobenius)")
    return out


# ---------------------------------------------------------------------------
# mining enumeration


def mine_spec_texts(family: str, max_order: int) -> Iterator[str]:
    """Deterministic spec streams for the miner."""
    if family == "zmod":
        for n in range(2, max_order + 1):
            yield f"zmod {n}"
    elif family == "product":
        for a in range(2, max_order // 2 + 1):
            for b in range(a, max_order // a + 1):
                if a * b <= max_order:
                    yield f"product (zmod {a}) (zmod {b})"
    elif family == "matrix":
        for m in range(2, max_order + 1):
            if m ** 4 <= max_order:
                yield f"matrix 2 (zmod {m})"
    elif family == "upper_triangular":
        for m in range(2, max_order + 1):
            if m ** 3 <= max_order:
                yield f"upper_triangular 2 (zmod {m})"
    elif family == "skew_triangular":
        base_sigma = [
            ("zmod 2", "identity"), ("zmod 3", "identity"), ("zmod 4", "identity"),
            ("field 2 2", "identity"), ("field 2 2", "frobenius"),
        ]
        orders = {"zmod 2": 2, "zmod 3": 3, "zmod 4": 4, "field 2 2": 4}
        for fam in ("full", "S", "T", "A", "B"):
            sizes = (4,) if fam == "B" else (2, 3, 4)
            for n in sizes:
                for b, s in base_sigma:
                    m = orders[b]
                    if _family_order(fam, n, m) <= max_order:
                        yield f"skew_triangular {fam} {n} ({b}) ({s})"
    else:
        raise ValueError(f"unknown mining family {family!r}")


def _family_order(fam: str, n: int, m: int) -> int:
    upper = n * (n + 1) // 2
    h = n // 2
    free = sum(n - d for d in range(h, n))
    params = {
        "full": upper,
        "S": 1 + n * (n - 1) // 2,
        "T": n,
        "A": h + free,
        "B": h + free + 1,
    }[fam]
    return m ** params
