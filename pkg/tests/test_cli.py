import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from toroidal.cli import Report, emit_report, main, parse_report, run
from toroidal.construct import fixture_families

GOLDEN = Path(__file__).parent / "golden"


def structured(argv):
    r = run(argv)
    return r, json.loads(emit_report(r))


def test_classify_group_dyadic():
    r, d = structured(["classify-group", "--inline", '{"kind":"periodic","pre":[],"cycle":["2"]}'])
    c = d["result"]["class"]
    assert r.exit_code == 0 and d["schema"] == 1
    assert c["variant"] == "non-finitely-generated" and c["number_like"]
    assert c["radical"] == "2" and c["prime_divisors"] == "{2}"


def test_classify_set_whitehead():
    r, d = structured(["classify-set", "--inline", '{"fixture":"whitehead"}'])
    c = d["result"]["classification"]
    assert r.exit_code == 0
    assert c["trivial"] and c["self_index"]["group"] == "Z[1/2]"
    assert c["flow_realizable"]["value"] == "no" and c["homeo_necessary"]["passes"]


def test_construct_z_over_three():
    doc = '{"h":{"kind":"periodic","cycle":["1"]},"n":{"kind":"periodic","cycle":["3"]}}'
    r, d = structured(["construct", "--inline", doc])
    assert r.exit_code == 0
    assert d["result"]["recipes"] == [{"strands": 1, "clasps": 1, "factor": None}]


def test_table_rows():
    out = emit_report(run(["classify-group", "--inline", '{"kind":"periodic","cycle":["0"]}']), "table")
    assert "G = 0 (infinitely many zero arrows)" in out
    out = emit_report(run(["classify-group", "--inline", '{"kind":"periodic","cycle":["1"]}']), "table")
    assert "G = Z, number-like ~ 1" in out


def test_fixtures_verb_lists_catalog():
    r = run(["fixtures"])
    assert len(r.rows) >= 8 and set(r.result["fixtures"]) == set(fixture_families())


@pytest.mark.parametrize(
    "argv,code",
    [
        (["iso", "--inline", "{bad"], 2),
        (["classify-group", "--inline", '{"kind":"periodic","cycle":["q"]}'], 2),
        (["classify-set", "--inline", '{"fixture":"nope"}'], 2),
        (["construct", "--inline", '{"h":{"kind":"periodic","cycle":["1"]},"n":{"kind":"periodic","cycle":["1"]}}'], 1),
        (["construct-trivial", "--inline", '{"n":{"kind":"periodic","cycle":["3"]}}'], 1),
        (["classify-set", "--inline", '{"winding":{"kind":"periodic","cycle":["0"]},"index":{"kind":"periodic","cycle":["0"]}}'], 1),
        (["classify-set", "--inline", '{"winding":{"kind":"periodic","cycle":["1"]},"index":{"kind":"periodic","cycle":["2"]}}'], 1),
        (["refine-check", "--inline", '{"sequence":{"kind":"periodic","cycle":["6"]},"split":{"cycle":[["2","2"]]}}'], 1),
    ],
)
def test_exit_codes(argv, code):
    assert run(argv).exit_code == code


def test_unknown_verb_exits_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2


def test_undetermined_is_a_warning_not_a_failure():
    doc = '{"winding":{"kind":"periodic","cycle":["1"]},"index":{"kind":"periodic","cycle":["3"]},"genus":"unknown"}'
    r = run(["classify-set", "--inline", doc])
    assert r.exit_code == 0 and r.warnings


def test_refine_check_and_materialize():
    doc = '{"sequence":{"kind":"periodic","cycle":["2","3"]},"split":{"cycle":[["1","2"],["3","1"]]}}'
    assert run(["refine-check", "--inline", doc]).result["passed"]
    r = run(["materialize", "--inline", '{"kind":"primes","source":"all"}', "--depth", "5"])
    assert r.result["terms"] == ["2", "3", "5", "7", "11"]


def test_input_from_file(tmp_path):
    f = tmp_path / "s.json"
    f.write_text('{"a":{"kind":"periodic","cycle":["2"]},"b":{"kind":"periodic","cycle":["4"]}}')
    assert run(["iso", "--in", str(f)]).result["isomorphic"]


def test_report_round_trip():
    for argv in (["fixtures"], ["classify-set", "--fixture", "solenoid-primes"]):
        r = run(argv)
        again = parse_report(emit_report(r))
        assert again == Report(r.verb, r.result, r.warnings, r.exit_code)
        assert emit_report(again) == emit_report(r)


def golden_text(name):
    return emit_report(run(["classify-set", "--fixture", name]))


@pytest.mark.parametrize("name", sorted(fixture_families()))
def test_golden_fixture_reports(name):
    path = GOLDEN / f"{name}.json"
    if os.environ.get("TOROIDAL_REGEN_GOLDEN"):
        path.write_text(golden_text(name))
    assert path.read_text() == golden_text(name)


def test_console_script_matches_library():
    out = subprocess.run(
        [sys.executable, "-m", "toroidal.cli", "classify-set", "--fixture", "whitehead"],
        capture_output=True,
        text=True,
        check=True,
    ).stdout
    assert out == golden_text("whitehead")
