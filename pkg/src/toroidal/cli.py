"""``toroidal`` command line.

Exit codes: 0 success, 1 precondition or validation failure, 2 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

from toroidal import documents as doc
from toroidal.basis import Tri, classify_set, validate
from toroidal.construct import construct_trivial, construct_unknotted, fixture_families
from toroidal.limitgroup import canonical_form, classify, classes_isomorphic, materialize, refine_and_check

VERBS = (
    "classify-group",
    "iso",
    "classify-set",
    "construct",
    "construct-trivial",
    "refine-check",
    "materialize",
    "fixtures",
)


@dataclass
class Report:
    verb: str
    result: dict
    warnings: list[str] = field(default_factory=list)
    exit_code: int = 0
    rows: list[tuple[str, str]] = field(default_factory=list, compare=False)

    def to_dict(self) -> dict:
        return {
            "schema": doc.SCHEMA,
            "verb": self.verb,
            "exit_code": self.exit_code,
            "warnings": list(self.warnings),
            "result": self.result,
        }


def emit_report(r: Report, fmt: str = "structured") -> str:
    if fmt == "structured":
        return json.dumps(r.to_dict(), indent=2, sort_keys=True) + "\n"
    rows = list(r.rows) + [("warning", w) for w in r.warnings]
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def parse_report(text: str) -> Report:
    d = json.loads(text)
    if d.get("schema") != doc.SCHEMA:
        raise ValueError(f"unsupported report schema {d.get('schema')!r}")
    return Report(d["verb"], d["result"], d["warnings"], d["exit_code"])


# ---------------------------------------------------------------------------
# verbs


def _class_rows(prefix: str, c) -> list[tuple[str, str]]:
    return [(prefix, doc.group_row(c)), (f"{prefix} prime divisors", str(c.prime_divisors))]


def _classify_group(d: Any, depth: int) -> Report:
    s = doc.parse_sequence(d)
    c = classify(s)
    res = {"class": doc.dump_class(c), "canonical_form": doc.dump_sequence(canonical_form(s))}
    return Report("classify-group", res, rows=_class_rows("group", c))


def _iso(d: Any, depth: int) -> Report:
    d = doc._obj(d, "$", ("a", "b"))
    a, b = doc.parse_sequence(d["a"], "$.a"), doc.parse_sequence(d["b"], "$.b")
    ca, cb = classify(a), classify(b)
    iso = classes_isomorphic(ca, cb)
    res = {"isomorphic": iso, "a": doc.dump_class(ca), "b": doc.dump_class(cb)}
    rows = _class_rows("a", ca) + _class_rows("b", cb) + [("isomorphic", "yes" if iso else "no")]
    return Report("iso", res, rows=rows)


def _load_basis(d: Any):
    if isinstance(d, dict) and set(d) == {"fixture"}:
        cat = fixture_families()
        if d["fixture"] not in cat:
            raise doc.ParseError(f"unknown fixture {d['fixture']!r}", "$.fixture")
        return cat[d["fixture"]]
    return doc.parse_basis(d)


def _set_rows(c) -> list[tuple[str, str]]:
    if c.cellular:
        return [("cellular", "yes (not a toroidal set)")]
    return [
        ("cellular", "no"),
        *_class_rows("H1", c.h1),
        ("trivial", "yes" if c.trivial else "no"),
        *_class_rows("self-index", c.self_index),
        ("weakly tame", str(c.weakly_tame)),
        ("flow realizable", str(c.flow_realizable)),
        ("homeo necessary", str(c.homeo_necessary)),
        ("local homeo necessary", str(c.local_homeo_necessary)),
        ("solenoid", str(c.solenoid_verdict)),
    ]


def _set_report(verb: str, b) -> Report:
    violations = validate(b)
    c = classify_set(b)
    warnings = []
    if not c.cellular and c.weakly_tame.value is Tri.UNDETERMINED:
        warnings.append(f"weak tameness undetermined: {c.weakly_tame.reason}")
    res = {
        "basis": doc.dump_basis(b),
        "violations": [doc.dump_violation(v) for v in violations],
        "classification": doc.dump_classification(c),
    }
    rows = [("label", b.label or "-")] + [("violation", str(v)) for v in violations] + _set_rows(c)
    code = 1 if violations or c.cellular else 0
    return Report(verb, res, warnings, code, rows)


def _classify_set(d: Any, depth: int) -> Report:
    return _set_report("classify-set", _load_basis(d))


def _result_report(verb: str, r) -> Report:
    res = doc.dump_result(r)
    rows = [("basis winding", str(r.basis.winding)), ("basis index", str(r.basis.index)), ("genus", str(r.basis.genus))]
    rows += [("recipe", f"strands {p.strands}, clasps {p.clasps}, factor {p.factor if p.factor else '-'}") for p in r.recipes()]
    rows += [("step", s) for s in r.transcript]
    return Report(verb, res, rows=rows)


def _construct(d: Any, depth: int) -> Report:
    d = doc._obj(d, "$", ("h", "n"))
    h, n = doc.parse_sequence(d["h"], "$.h"), doc.parse_sequence(d["n"], "$.n")
    return _result_report("construct", construct_unknotted(h, n))


def _construct_trivial(d: Any, depth: int) -> Report:
    d = doc._obj(d, "$", ("n",))
    return _result_report("construct-trivial", construct_trivial(doc.parse_sequence(d["n"], "$.n")))


def _pairs(d: Any, path: str) -> list[tuple]:
    out = []
    for i, item in enumerate(doc._list(d, path)):
        item = doc._list(item, f"{path}[{i}]")
        if len(item) != 2:
            raise doc.ParseError("expected a pair [M, M']", f"{path}[{i}]")
        out.append((doc.parse_nat(item[0], f"{path}[{i}][0]"), doc.parse_nat(item[1], f"{path}[{i}][1]")))
    return out


def _refine_check(d: Any, depth: int) -> Report:
    d = doc._obj(d, "$", ("sequence", "split"))
    s = doc.parse_sequence(d["sequence"], "$.sequence")
    split = doc._obj(d["split"], "$.split", ("cycle",))
    r = refine_and_check(s, _pairs(split.get("pre", []), "$.split.pre"), _pairs(split["cycle"], "$.split.cycle"))
    rows = (
        _class_rows("original", r.original)
        + _class_rows("interleaved", r.interleaved)
        + _class_rows("induced", r.induced)
        + [("passed", "yes" if r.passed else "no")]
    )
    return Report("refine-check", doc.dump_refinement(r), exit_code=0 if r.passed else 1, rows=rows)


def _materialize(d: Any, depth: int) -> Report:
    s = doc.parse_sequence(d)
    terms = [str(t) for t in materialize(s, depth)]
    return Report("materialize", {"depth": depth, "terms": terms}, rows=[(str(j), t) for j, t in enumerate(terms, 1)])


def _fixtures(d: Any, depth: int) -> Report:
    res, rows = {}, []
    for name, b in fixture_families().items():
        c = classify_set(b)
        res[name] = {
            "label": b.label,
            "basis": doc.dump_basis(b),
            "violations": [doc.dump_violation(v) for v in validate(b)],
            "classification": doc.dump_classification(c),
        }
        rows.append(
            (
                name,
                f"H1 {c.h1.describe()}; N {c.self_index.describe()}; flow {c.flow_realizable.value.value}; "
                f"homeo {'passes' if c.homeo_necessary.passes else 'obstructed'}",
            )
        )
    return Report("fixtures", {"fixtures": res}, rows=rows)


HANDLERS: dict[str, Callable[[Any, int], Report]] = {
    "classify-group": _classify_group,
    "iso": _iso,
    "classify-set": _classify_set,
    "construct": _construct,
    "construct-trivial": _construct_trivial,
    "refine-check": _refine_check,
    "materialize": _materialize,
    "fixtures": _fixtures,
}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toroidal", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--in", dest="infile", metavar="FILE", help="read the input document from FILE")
    src.add_argument("--inline", metavar="DOC", help="input document given inline")
    p.add_argument("--fixture", metavar="NAME", help="use a named fixture as the input basis")
    p.add_argument("--format", choices=("table", "structured"), default="structured")
    p.add_argument("--depth", type=int, default=1000, help="truncation depth for materialize (default 1000)")
    return p


def _error(verb: str, code: int, message: str) -> Report:
    return Report(verb, {"error": message}, exit_code=code, rows=[("error", message)])


def run(argv: list[str] | None = None) -> Report:
    args = _parser().parse_args(argv)
    try:
        if args.verb == "fixtures":
            data = None
        elif args.fixture is not None:
            data = {"fixture": args.fixture}
        elif args.infile is not None:
            with open(args.infile, encoding="utf-8") as fh:
                data = doc.loads(fh.read())
        elif args.inline is not None:
            data = doc.loads(args.inline)
        else:
            data = doc.loads(sys.stdin.read())
        if args.depth < 0:
            raise doc.ParseError("--depth must be nonnegative")
        return HANDLERS[args.verb](data, args.depth)
    except (doc.ParseError, OSError) as e:
        return _error(args.verb, 2, f"parse error: {e}")
    except ValueError as e:
        return _error(args.verb, 1, str(e))


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    report = run(argv)
    out = emit_report(report, args.format)
    stream = sys.stdout if report.exit_code != 2 or args.format == "structured" else sys.stderr
    stream.write(out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
