"""JSON documents for sequences, bases, classifications and realizations.

Parsing reports the JSON path of the offending value, e.g. ``$.index.cycle[1]``.
"""

from __future__ import annotations

import json
from typing import Any

from toroidal.arith import FactoredNat, PrimeSet
from toroidal.basis import (
    Check,
    DerivedPatterns,
    Genus,
    PeriodicPatterns,
    SetClassification,
    StagePattern,
    ToroidalBasisSpec,
    Verdict,
    Violation,
)
from toroidal.construct import RealizationResult
from toroidal.limitgroup import (
    CumulativeProducts,
    DirectLimitClass,
    EnumeratedPrimes,
    Periodic,
    RefinementReport,
    SequenceSpec,
    Variant,
)

SCHEMA = 1


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "$") -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON ({e.msg}) at line {e.lineno}, column {e.colno}") from None


def _obj(doc: Any, path: str, keys: tuple[str, ...] = ()) -> dict:
    if not isinstance(doc, dict):
        raise ParseError("expected an object", path)
    for k in keys:
        if k not in doc:
            raise ParseError(f"missing field {k!r}", path)
    return doc


def _list(doc: Any, path: str) -> list:
    if not isinstance(doc, list):
        raise ParseError("expected an array", path)
    return doc


def parse_nat(doc: Any, path: str = "$") -> FactoredNat:
    if isinstance(doc, bool) or not isinstance(doc, (str, int)):
        raise ParseError("expected a factored integer string", path)
    if isinstance(doc, int) and doc < 0:
        raise ParseError("expected a nonnegative integer", path)
    try:
        return FactoredNat.parse(doc)
    except ValueError as e:
        raise ParseError(str(e), path) from None


def parse_prime_set(doc: Any, path: str = "$") -> PrimeSet:
    if not isinstance(doc, str):
        raise ParseError("expected a prime set string such as '{2,3}' or 'all\\{2}'", path)
    try:
        return PrimeSet.parse(doc)
    except ValueError as e:
        raise ParseError(str(e), path) from None


def parse_sequence(doc: Any, path: str = "$") -> SequenceSpec:
    d = _obj(doc, path, ("kind",))
    kind = d["kind"]
    try:
        if kind == "periodic":
            pre = [parse_nat(x, f"{path}.pre[{i}]") for i, x in enumerate(_list(d.get("pre", []), f"{path}.pre"))]
            cyc = [parse_nat(x, f"{path}.cycle[{i}]") for i, x in enumerate(_list(d.get("cycle"), f"{path}.cycle"))]
            return Periodic(pre, cyc)
        if kind == "primes":
            return EnumeratedPrimes(parse_prime_set(d.get("source"), f"{path}.source"))
        if kind == "cumulative":
            return CumulativeProducts(parse_prime_set(d.get("source"), f"{path}.source"))
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e), path) from None
    raise ParseError(f"unknown sequence kind {kind!r}", f"{path}.kind")


def dump_sequence(s: SequenceSpec) -> dict:
    if isinstance(s, Periodic):
        return {"kind": "periodic", "pre": [str(t) for t in s.pre], "cycle": [str(t) for t in s.cycle]}
    kind = "primes" if isinstance(s, EnumeratedPrimes) else "cumulative"
    return {"kind": kind, "source": str(s.source)}


def parse_genus(doc: Any, path: str = "$") -> Genus:
    if doc in ("unknown", "infinite"):
        return Genus(doc)
    if isinstance(doc, dict) and set(doc) == {"known"}:
        g = doc["known"]
        if isinstance(g, int) and not isinstance(g, bool) and g >= 0:
            return Genus.known(g)
    raise ParseError('expected "unknown", "infinite" or {"known": g}', path)


def dump_genus(g: Genus) -> Any:
    return {"known": g.value} if g.kind == "known" else g.kind


def parse_stage(doc: Any, path: str) -> StagePattern:
    d = _obj(doc, path, ("strands", "clasps"))
    vals = [d["strands"], d["clasps"], d.get("factor")]
    if any(isinstance(v, bool) or not isinstance(v, (int, type(None))) for v in vals) or vals[0] is None or vals[1] is None:
        raise ParseError("stage counts must be integers", path)
    try:
        return StagePattern(*vals)
    except ValueError as e:
        raise ParseError(str(e), path) from None


def dump_stage(p: StagePattern) -> dict:
    return {"strands": p.strands, "clasps": p.clasps, "factor": p.factor}


def parse_patterns(doc: Any, path: str):
    d = _obj(doc, path, ("kind",))
    if d["kind"] in ("torus", "whitehead"):
        return DerivedPatterns(d["kind"])
    if d["kind"] == "periodic":
        pre = tuple(parse_stage(x, f"{path}.pre[{i}]") for i, x in enumerate(_list(d.get("pre", []), f"{path}.pre")))
        cyc = tuple(parse_stage(x, f"{path}.cycle[{i}]") for i, x in enumerate(_list(d.get("cycle"), f"{path}.cycle")))
        if not cyc:
            raise ParseError("pattern cycle must be nonempty", f"{path}.cycle")
        return PeriodicPatterns(pre, cyc)
    raise ParseError(f"unknown pattern kind {d['kind']!r}", f"{path}.kind")


def dump_patterns(p) -> dict | None:
    if p is None:
        return None
    if isinstance(p, DerivedPatterns):
        return {"kind": p.rule}
    return {"kind": "periodic", "pre": [dump_stage(s) for s in p.pre], "cycle": [dump_stage(s) for s in p.cycle]}


def parse_basis(doc: Any, path: str = "$") -> ToroidalBasisSpec:
    d = _obj(doc, path, ("winding", "index"))
    label = d.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label must be a string", f"{path}.label")
    return ToroidalBasisSpec(
        parse_sequence(d["winding"], f"{path}.winding"),
        parse_sequence(d["index"], f"{path}.index"),
        parse_genus(d.get("genus", "unknown"), f"{path}.genus"),
        parse_patterns(d["patterns"], f"{path}.patterns") if d.get("patterns") is not None else None,
        label,
    )


def dump_basis(b: ToroidalBasisSpec) -> dict:
    return {
        "winding": dump_sequence(b.winding),
        "index": dump_sequence(b.index),
        "genus": dump_genus(b.genus),
        "patterns": dump_patterns(b.patterns),
        "label": b.label,
    }


def dump_class(c: DirectLimitClass) -> dict:
    prof = None
    if c.profile is not None:
        prof = {
            "infinite_support": str(c.profile.infinite_support),
            "unit_tail": str(c.profile.unit_tail),
            "explicit": {str(p): h for p, h in c.profile.explicit},
        }
    return {
        "group": c.describe(),
        "variant": c.variant.value,
        "number_like": c.number_like,
        "radical": None if c.radical is None else str(c.radical),
        "prime_divisors": str(c.prime_divisors),
        "profile": prof,
    }


def _verdict(v: Verdict) -> dict:
    return {"value": v.value.value, "reason": v.reason}


def _check(c: Check) -> dict:
    return {"passes": c.passes, "reason": c.reason}


def dump_classification(c: SetClassification) -> dict:
    if c.cellular:
        return {"cellular": True}
    sol = c.solenoid_verdict
    return {
        "cellular": False,
        "h1": dump_class(c.h1),
        "trivial": c.trivial,
        "self_index": dump_class(c.self_index),
        "weakly_tame": _verdict(c.weakly_tame),
        "flow_realizable": _verdict(c.flow_realizable),
        "homeo_necessary": _check(c.homeo_necessary),
        "local_homeo_necessary": _check(c.local_homeo_necessary),
        "solenoid": {"kind": sol.kind, "n": sol.n},
    }


def dump_violation(v: Violation) -> dict:
    return {"code": v.code, "stage": v.stage, "message": v.message}


def dump_result(r: RealizationResult, preview: int = 6) -> dict:
    return {
        "basis": dump_basis(r.basis),
        "recipes": [dump_stage(p) for p in r.recipes(preview)],
        "transcript": list(r.transcript),
    }


def dump_refinement(r: RefinementReport) -> dict:
    return {
        "original": dump_class(r.original),
        "interleaved": dump_class(r.interleaved),
        "induced": dump_class(r.induced),
        "induced_sequence": dump_sequence(r.induced_sequence),
        "passed": r.passed,
    }


def group_row(c: DirectLimitClass) -> str:
    if c.variant is Variant.ZERO:
        return "G = 0 (infinitely many zero arrows)"
    if c.variant is Variant.FREE_CYCLIC:
        return "G = Z, number-like ~ 1"
    if c.number_like:
        return f"G = Z[1/{c.radical.value}], number-like ~ {c.radical.value}"
    return f"G not finitely generated, not number-like, prime divisors {c.prime_divisors}"
