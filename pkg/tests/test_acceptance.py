"""The ten acceptance criteria, one test each.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import json
import random
import subprocess
import sys
from pathlib import Path

from gen import periodic, rand_basis, rand_periodic_basis, rand_periodic_ints, rand_plan, rand_split
from oracles import divides_by_count, divides_by_period_scan, naive_primes, naive_radical
from toroidal.arith import FactoredNat, PrimeSet
from toroidal.basis import (
    Genus,
    block_basis,
    cech_h1,
    classifications_equivalent,
    classify_set,
    flow_realizable,
    is_cellular,
    is_weakly_tame,
    self_index,
    two_divides_consistency,
    validate,
)
from toroidal.cli import emit_report, run
from toroidal.construct import (
    Mode,
    RealizationRequest,
    construct,
    construct_trivial,
    fixture_families,
    verify_roundtrip,
)
from toroidal.limitgroup import (
    CumulativeProducts,
    EnumeratedPrimes,
    Periodic,
    Variant,
    classify,
    constant,
    is_number_like,
    isomorphic,
    refine_and_check,
)

CORPUS = 1000
PRIMES_97 = naive_primes(97)
ALL = PrimeSet.all_except()


def classification(name):
    r = run(["classify-set", "--fixture", name])
    assert r.exit_code == 0
    return json.loads(emit_report(r))["result"]["classification"]


def test_criterion_01_dyadic_solenoid():
    """criterion 1: dyadic solenoid fixture classification"""
    c = classification("solenoid-2")
    for key in ("h1", "self_index"):
        assert c[key]["group"] == "Z[1/2]"
        assert c[key]["number_like"] and c[key]["radical"] == "2"
        assert c[key]["prime_divisors"] == "{2}"
    assert c["flow_realizable"]["value"] == "no"
    assert c["homeo_necessary"]["passes"]


def test_criterion_02_whitehead_continuum():
    """criterion 2: Whitehead continuum fixture classification"""
    c = classification("whitehead")
    assert c["trivial"] and c["h1"]["group"] == "0"
    assert c["self_index"]["group"] == "Z[1/2]" and c["self_index"]["radical"] == "2"
    assert c["flow_realizable"]["value"] == "no"
    assert c["homeo_necessary"]["passes"]


def test_criterion_03_prime_solenoid():
    """criterion 3: j-th prime solenoid is obstructed for homeomorphisms and local homeomorphisms"""
    c = classification("solenoid-primes")
    assert c["self_index"]["prime_divisors"] == "{}"
    assert not c["self_index"]["number_like"]
    assert not c["homeo_necessary"]["passes"]
    assert not c["local_homeo_necessary"]["passes"]


def test_criterion_04_divisor_oracle():
    """criterion 4: symbolic divisor sets match period scans on 1000 random specs, primes <= 97"""
    rng = random.Random(4)
    mismatches = []
    for _ in range(CORPUS):
        pre, cyc = rand_periodic_ints(rng)
        divs = classify(periodic(pre, cyc)).prime_divisors
        for p in PRIMES_97:
            scan = divides_by_period_scan(p, pre, cyc)
            count = divides_by_count(p, pre, cyc, 1000)
            if not (p in divs) == scan == count:
                mismatches.append((pre, cyc, p))
    assert mismatches == []


def test_criterion_05_basis_independence():
    """criterion 5: refinement checks and block plans never change the classification"""
    rng = random.Random(5)
    failures = []
    done = 0
    while done < CORPUS:
        pre, cyc = rand_periodic_ints(rng, zero_rate=0)
        s = periodic(pre, cyc)
        split_pre = [rand_split(rng, t) for t in pre]
        split_cyc = [rand_split(rng, t) for t in cyc]
        if not refine_and_check(s, split_pre, split_cyc).passed:
            failures.append(("refine", pre, cyc, split_pre, split_cyc))
        done += 1
    plans = 0
    while plans < CORPUS:
        b = rand_periodic_basis(rng)
        if validate(b):
            continue
        plan = rand_plan(rng, b.winding, b.index)
        blocked = block_basis(b, plan)
        if validate(blocked) or not classifications_equivalent(classify_set(b), classify_set(blocked)):
            failures.append(("plan", b, plan))
        plans += 1
    assert failures == []


def test_criterion_06_number_like_exhaustive():
    """criterion 6: constant m is isomorphic to constant rad(m) for every m in 2..500"""
    bad = []
    for m in range(2, 501):
        rad = naive_radical(m)
        if not isomorphic(constant(m), constant(rad)) or is_number_like(constant(m)) != FactoredNat.parse(rad):
            bad.append(m)
    assert bad == []


ODD = PrimeSet.all_except([2])


def grid():
    pairs = []
    for h in (constant(1), constant(3), periodic([], [1, 5]), periodic([2], [9])):
        for n in (constant(3), constant(5), periodic([], [3, 7]), periodic([1], [15])):
            pairs.append((h, n))
    for h in (constant(2), periodic([], [2, 3]), constant(4)):
        for n in (constant(2), constant(6), periodic([], [3, 4])):
            pairs.append((h, n))
    for h in (constant(1), constant(3), periodic([], [5, 1])):
        for n in (EnumeratedPrimes(ALL), EnumeratedPrimes(ODD), CumulativeProducts(ODD)):
            pairs.append((h, n))
    for h in (constant(2), periodic([], [2, 9])):
        pairs.append((h, CumulativeProducts(ALL)))
    return pairs


def test_criterion_07_construct_round_trip_grid():
    """criterion 7: unknotted construction round-trips on a grid spanning all three sequence kinds"""
    pairs = grid()
    assert len(pairs) >= 20
    assert {type(n) for _, n in pairs} == {Periodic, EnumeratedPrimes, CumulativeProducts}
    failures = []
    for h, n in pairs:
        req = RealizationRequest(h, n)
        r = construct(req)
        ok = verify_roundtrip(r, req)
        for _, w, m, p in r.basis.stages(25):
            ok = ok and 2 * p.clasps + w.value == m.value and w.value % 2 == m.value % 2
        if not ok:
            failures.append((str(h), str(n)))
    assert failures == []


def test_criterion_08_trivial_construction():
    """criterion 8: genus-one trivial construction for Z[1/2], Z[1/6], cycle [2,4] and cumulative products"""
    targets = [constant(2), constant(6), periodic([], [2, 4]), CumulativeProducts(ALL)]
    for n in targets:
        r = construct_trivial(n)
        c = classify_set(r.basis)
        assert c.trivial and r.basis.genus == Genus.known(1)
        assert isomorphic(r.basis.index, n)
        assert verify_roundtrip(r, RealizationRequest(None, n, Mode.TRIVIAL_GENUS_ONE))
    assert not classify_set(construct_trivial(CumulativeProducts(ALL)).basis).homeo_necessary.passes


def test_criterion_09_consistency_lattice():
    """criterion 9: parity, self-index ~ 1, flow and genus-contradiction rules on 1000 random valid specs"""
    rng = random.Random(9)
    valid = flagged_checked = 0
    failures = []
    while valid < CORPUS:
        b = rand_basis(rng)
        v = validate(b)
        if is_cellular(b) or any(x.code in ("parity", "dominance") for x in v):
            continue
        h1, trivial = cech_h1(b)
        ni = self_index(b)
        triple = b.genus.kind == "known" and b.genus.value >= 1 and not trivial and ni.variant is not Variant.FREE_CYCLIC
        if triple:
            flagged_checked += 1
            if not any(x.code == "genus-contradiction" for x in v):
                failures.append(("unflagged", b))
            continue
        if v:
            failures.append(("spurious", b, v))
            continue
        valid += 1
        if not two_divides_consistency(b):
            failures.append(("parity", b))
        if ni.variant is Variant.FREE_CYCLIC and h1.variant is not Variant.FREE_CYCLIC:
            failures.append(("N~1", b))
        if flow_realizable(b) != is_weakly_tame(b):
            failures.append(("flow", b))
    assert flagged_checked > 100
    assert failures == []


def test_criterion_10_golden_byte_identical():
    """criterion 10: structured reports for every fixture are byte-identical across two runs"""

    def once(name):
        cmd = [sys.executable, "-m", "toroidal.cli", "classify-set", "--fixture", name, "--format", "structured"]
        return subprocess.run(cmd, capture_output=True, check=True).stdout

    golden = Path(__file__).parent / "golden"
    for name in sorted(fixture_families()):
        first, second = once(name), once(name)
        assert first == second
        assert first == (golden / f"{name}.json").read_bytes()
