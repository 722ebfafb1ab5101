"""Suite dispatch: spec text in, report dict out.

This is the single entry point the service and the CLI share.  A report's
`passed` field means "no contract check failed"; property values that are
legitimately true or false for a given ring (classification flags, the
serieswise zero-product property) live in the payload instead.
"""

from __future__ import annotations

import time
from typing import Optional

from .ring import DEFAULT_ORDER_CAP, OrderCapExceeded, validate_axioms
from . import classify as _classify
from . import corpus, invseries, monoid, skewext, specs
from .report import ReportCache, run_report
from .specs import SpecError

SUITES = (
    "classify", "prop14", "thm12-poly", "thm12-series", "thm38-multivar",
    "laurent", "spa", "monoid-t1", "inverse-thm24", "prop241", "example13",
)

DEFAULT_BOUNDS = {
    "n": 4,          # truncation degree for enumeration
    "d": 6,          # verification degree
    "window": 3,     # laurent window
    "order_cap": DEFAULT_ORDER_CAP,
    "seed": 0,
}


class InputError(ValueError):
    """Bad spec, unknown suite, or malformed bounds (exit code 2 territory)."""


def _merged_bounds(bounds: Optional[dict]) -> dict:
    out = dict(DEFAULT_BOUNDS)
    for k, v in (bounds or {}).items():
        if v is None:
            continue
        if k not in out and k not in ("monoid",):
            raise InputError(f"unknown bound {k!r}")
        out[k] = v
    return out


def _build_context(spec_text: str, alpha_text: Optional[str],
                   delta_text: Optional[str], cap: int):
    try:
        spec = specs.parse_spec(spec_text)
        ring = specs.build_ring(spec, cap)
        alpha = specs.build_morphism(ring, alpha_text or "identity")
        delta = specs.build_derivation(ring, alpha, delta_text or "zero")
    except (SpecError, OrderCapExceeded) as exc:
        raise InputError(str(exc)) from exc
    return spec, ring, alpha, delta


def run_suite(suite: str, spec_text: str, alpha_text: Optional[str] = None,
              delta_text: Optional[str] = None, bounds: Optional[dict] = None,
              cache: Optional[ReportCache] = None, timing: bool = False) -> dict:
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    b = _merged_bounds(bounds)
    spec_key = _canonical_spec_key(spec_text, alpha_text, delta_text)
    cache_bounds = dict(b)
    if cache is not None:
        hit = cache.get(spec_key, suite, cache_bounds)
        if hit is not None:
            return hit
    t0 = time.monotonic()
    payload, passed = _dispatch(suite, spec_text, alpha_text, delta_text, b)
    elapsed = time.monotonic() - t0 if timing else None
    report = run_report(spec_key, suite, cache_bounds, payload, passed, elapsed)
    if cache is not None:
        cache.put(spec_key, suite, cache_bounds, report)
    return report


def _canonical_spec_key(spec_text: str, alpha_text: Optional[str],
                        delta_text: Optional[str]) -> str:
    try:
        parts = [specs.parse_spec(spec_text).serialize()]
        if alpha_text:
            parts.append("alpha=" + specs._serialize(specs.parse_morphism_spec(alpha_text)))
        if delta_text and delta_text != "zero":
            parts.append("delta=" + specs._serialize(specs.parse_derivation_spec(delta_text)))
    except SpecError as exc:
        raise InputError(str(exc)) from exc
    return "; ".join(parts)


def _dispatch(suite: str, spec_text: str, alpha_text: Optional[str],
              delta_text: Optional[str], b: dict):
    cap = b["order_cap"]

    if suite == "example13":
        return _example13(spec_text)

    spec, ring, alpha, delta = _build_context(spec_text, alpha_text, delta_text, cap)

    if suite == "classify":
        rep = _classify.classify(ring)
        violations = _classify.check_implications(rep)
        payload = rep.to_dict()
        payload["implication_violations"] = violations
        return payload, not violations

    if suite == "prop14":
        verdicts = [_classify.cp_baer_equivalences(ring)]
        payload = {
            "checks": [{
                "name": "four_characterizations_agree",
                "passed": v.all_agree,
                "definition": v.definition,
            } for v in verdicts]
        }
        return payload, all(v.all_agree for v in verdicts)

    if suite in ("thm12-poly", "thm12-series"):
        kind = "polynomial" if suite == "thm12-poly" else "series"
        res = skewext.polynomial_transfer_suite(ring, alpha, b["n"], b["d"], kind)
        return {"checks": res.checks, "suite": res.to_dict()}, res.passed

    if suite == "thm38-multivar":
        res = skewext.multivar_suite(ring, min(b["n"], 2), min(b["n"], 2), b["d"])
        return {"checks": res.checks, "suite": res.to_dict()}, res.passed

    if suite == "laurent":
        res = skewext.laurent_window_suite(ring, alpha, b["window"])
        return {"checks": res.checks, "suite": res.to_dict()}, res.passed

    if suite == "spa":
        holds, witness, mode = skewext.serieswise_armendariz_check(
            ring, alpha, min(b["n"], 2), seed=b["seed"])
        payload = {
            "serieswise_armendariz": holds,
            "mode": mode,
            "checks": [{"name": "zero_product_scan", "passed": True, "mode": mode}],
        }
        if witness is not None:
            payload["witness"] = [list(witness[0]), list(witness[1])]
        return payload, True

    if suite == "monoid-t1":
        mon_spec = b.get("monoid", "nk 2 lex")
        mon, box, support = _parse_monoid(mon_spec, b)
        if support is not None:
            res = monoid.monoid_transfer_suite(ring, mon, support=support)
        else:
            res = monoid.monoid_transfer_suite(ring, mon, box=box)
        return {"checks": res.checks, "suite": res.to_dict()}, res.passed

    if suite == "inverse-thm24":
        ctx = invseries.InverseContext(ring, alpha, delta, min(b["n"], 3))
        res = invseries.inverse_transfer_suite(ctx, b["d"])
        return {"checks": res.checks, "suite": res.to_dict()}, res.passed

    if suite == "prop241":
        ctx = invseries.InverseContext(ring, alpha, delta, min(b["n"], 3))
        res = invseries.primeness_window_check(ctx)
        return {"checks": res.checks, "suite": res.to_dict()}, res.passed

    raise InputError(f"unhandled suite {suite!r}")


def _parse_monoid(mon_spec: str, b: dict):
    toks = mon_spec.split()
    if toks and toks[0] == "nk":
        if len(toks) != 3:
            raise InputError("monoid spec: nk <dimension> <lex|revlex|grlex>")
        try:
            mon = monoid.NkMonoid(int(toks[1]), toks[2])
        except Exception as exc:
            raise InputError(str(exc)) from exc
        box = tuple([min(b["n"], 2)] * mon.k)
        return mon, box, None
    if toks and toks[0] == "qplus":
        from fractions import Fraction

        support = [Fraction(t) for t in toks[1:]] or [Fraction(0), Fraction(1, 2), Fraction(1)]
        return monoid.QPlusMonoid(), None, support
    raise InputError(f"unknown monoid spec {mon_spec!r}")


def _example13(spec_text: str):
    """Shift-ring zero-product demo: ab = 0 while a*alpha(b) != 0."""
    from .construct import ShiftRingOps
    from .maps import shift_ring_compatibility_witness

    from .ring import StructuralError

    try:
        spec = specs.parse_spec(spec_text or "zmod 2")
        field = specs.build_ring(spec, DEFAULT_ORDER_CAP)
        ops = ShiftRingOps(field)
    except (SpecError, StructuralError) as exc:
        raise InputError(str(exc)) from exc
    a = ops.indicator(1)
    bb = ops.indicator(0)
    ab = ops.mul(a, bb)
    a_alpha_b = ops.mul(a, ops.alpha(bb))
    witness = shift_ring_compatibility_witness(ops)
    payload = {
        "a": {"support": list(a.support)},
        "b": {"support": list(bb.support)},
        "ab_zero": ab.is_zero(),
        "a_alpha_b_nonzero": not a_alpha_b.is_zero(),
        "a_alpha_b_equals_a": a_alpha_b == a,
        "compatibility_witness_found": witness is not None,
        "checks": [
            {"name": "zero_product", "passed": ab.is_zero()},
            {"name": "twisted_product_nonzero", "passed": not a_alpha_b.is_zero()},
            {"name": "compatibility_witness", "passed": witness is not None},
        ],
    }
    passed = all(c["passed"] for c in payload["checks"])
    return payload, passed


# ---------------------------------------------------------------------------
# mining


class PredicateError(InputError):
    pass


def parse_predicate(text: str):
    """Tiny boolean language over flag names: &, |, !, parentheses."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "&|!()":
            tokens.append(ch)
            i += 1
        else:
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            if j == i:
                raise PredicateError(f"bad character {ch!r} in predicate")
            tokens.append(text[i:j])
            i = j
    pos = 0

    def parse_or():
        nonlocal pos
        node = parse_and()
        while pos < len(tokens) and tokens[pos] == "|":
            pos += 1
            node = ("or", node, parse_and())
        return node

    def parse_and():
        nonlocal pos
        node = parse_not()
        while pos < len(tokens) and tokens[pos] == "&":
            pos += 1
            node = ("and", node, parse_not())
        return node

    def parse_not():
        nonlocal pos
        if pos < len(tokens) and tokens[pos] == "!":
            pos += 1
            return ("not", parse_not())
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            node = parse_or()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise PredicateError("unbalanced parenthesis")
            pos += 1
            return node
        if pos >= len(tokens) or tokens[pos] in "&|!()":
            raise PredicateError("expected a flag name")
        name = tokens[pos]
        pos += 1
        return ("flag", name)

    tree = parse_or()
    if pos != len(tokens):
        raise PredicateError("trailing input in predicate")
    return tree


def eval_predicate(tree, flags: dict) -> Optional[bool]:
    """Three-valued: None (skipped flag) propagates."""
    op = tree[0]
    if op == "flag":
        if tree[1] not in flags:
            raise PredicateError(f"unknown flag {tree[1]!r}")
        return flags[tree[1]]
    if op == "not":
        v = eval_predicate(tree[1], flags)
        return None if v is None else not v
    a, b2 = eval_predicate(tree[1], flags), eval_predicate(tree[2], flags)
    if op == "and":
        if a is False or b2 is False:
            return False
        if a is None or b2 is None:
            return None
        return True
    if a is True or b2 is True:
        return True
    if a is None or b2 is None:
        return None
    return False


def mine(family: str, predicate: str, max_order: int = 64,
         cache: Optional[ReportCache] = None, limit: Optional[int] = None):
    """Classify a deterministic family stream, yield specs matching the predicate."""
    tree = parse_predicate(predicate)
    found = []
    for text in corpus.mine_spec_texts(family, max_order):
        report = run_suite("classify", text, cache=cache)
        flags = report["result"]["flags"]
        if eval_predicate(tree, flags) is True:
            found.append({"spec": text, "flags": flags})
            if limit is not None and len(found) >= limit:
                break
    return found


# ---------------------------------------------------------------------------
# explain


FLAG_DEFINITIONS = {
    "baer": "Every subset's right annihilator is generated by an idempotent.",
    "rickart": "Every single element's right annihilator is generated by an idempotent.",
    "quasi_baer": "Every two-sided ideal's right annihilator is generated by an idempotent.",
    "right_pq_baer": "The right annihilator of every principal right ideal is generated by an idempotent.",
    "left_pq_baer": "The left-sided mirror of right_pq_baer, computed on the opposite ring.",
    "right_cp_baer": "For every idempotent e there is an idempotent c with r(eR) = cR.",
    "left_cp_baer": "The left-sided mirror of right_cp_baer, computed on the opposite ring.",
    "abelian": "Every idempotent is central.",
    "reduced": "No nonzero nilpotent elements.",
    "reversible": "ab = 0 implies ba = 0.",
    "semicommutative": "ab = 0 implies aRb = 0.",
    "prime": "aRb = 0 forces a = 0 or b = 0.",
    "semiprime": "aRa = 0 forces a = 0 (zero prime radical).",
    "right_I_extending": "Every ideal ReR is essential in some cR, c idempotent.",
    "left_I_extending": "The left-sided mirror of right_I_extending, computed on the opposite ring.",
}


def explain(flag: str) -> str:
    if flag not in FLAG_DEFINITIONS:
        raise InputError(
            f"unknown flag {flag!r}; known: {', '.join(sorted(FLAG_DEFINITIONS))}")
    return FLAG_DEFINITIONS[flag]
