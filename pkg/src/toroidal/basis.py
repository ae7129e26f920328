"""Toroidal sets described by a standard basis of nested solid tori.

A basis is recorded combinatorially: for each stage ``j`` the winding number
``w_j`` and the geometric index ``N_j`` of ``T_{j+1}`` inside ``T_j``, plus a
declared genus.  Cohomology is the limit of the windings, the self-index the
limit of the indices, and the realizability verdicts follow from those two
groups together with the genus.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import lcm
from typing import Callable, Iterator, Union

from toroidal.arith import FactoredNat, prime_index
from toroidal.limitgroup import (
    BlockPlan,
    CumulativeProducts,
    DirectLimitClass,
    EnumeratedPrimes,
    Periodic,
    SequenceSpec,
    Variant,
    classes_isomorphic,
    classify,
    constant,
    group_blocks,
    iter_terms,
    parity_pattern,
)

__all__ = [
    "Check",
    "DerivedPatterns",
    "Genus",
    "NotToroidalError",
    "PeriodicPatterns",
    "SetClassification",
    "SolenoidVerdict",
    "StagePattern",
    "ToroidalBasisSpec",
    "Tri",
    "Verdict",
    "Violation",
    "block_basis",
    "cech_h1",
    "classify_set",
    "classify_solenoid",
    "flow_realizable",
    "homeo_necessary",
    "is_cellular",
    "is_weakly_tame",
    "local_homeo_necessary",
    "self_index",
    "two_divides_consistency",
    "validate",
]

# Safety net for scans whose termination is guaranteed mathematically.
_SCAN_CAP = 200_000


class NotToroidalError(ValueError):
    pass


@dataclass(frozen=True)
class Genus:
    kind: str  # "unknown" | "known" | "infinite"
    value: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("unknown", "known", "infinite"):
            raise ValueError(f"unknown genus kind {self.kind!r}")
        if (self.kind == "known") != (self.value is not None):
            raise ValueError("only a known genus carries a value")
        if self.value is not None and self.value < 0:
            raise ValueError("genus is nonnegative")

    @classmethod
    def unknown(cls) -> Genus:
        return cls("unknown")

    @classmethod
    def known(cls, g: int) -> Genus:
        return cls("known", g)

    @classmethod
    def infinite(cls) -> Genus:
        return cls("infinite")

    def __str__(self) -> str:
        return str(self.value) if self.kind == "known" else self.kind


@dataclass(frozen=True)
class StagePattern:
    """Integer recipe for one nesting stage.

    ``strands`` parallel core curves and ``clasps`` Whitehead curves joined
    into one unknotted curve, optionally followed by a torus winding
    monotonically ``factor`` times inside it.
    """

    strands: int
    clasps: int
    factor: int | None = None

    def __post_init__(self) -> None:
        if self.strands < 0 or self.clasps < 0 or (self.factor is not None and self.factor < 1):
            raise ValueError("stage pattern counts must be nonnegative, factor >= 1")

    @property
    def winding(self) -> int:
        return self.strands * (self.factor or 1)

    @property
    def index(self) -> int:
        return (self.strands + 2 * self.clasps) * (self.factor or 1)


def pattern_index(p: StagePattern) -> tuple[int, int]:
    return p.winding, p.index


@dataclass(frozen=True)
class PeriodicPatterns:
    pre: tuple[StagePattern, ...] = ()
    cycle: tuple[StagePattern, ...] = ()

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("pattern cycle must be nonempty")

    def windings(self) -> Periodic:
        return Periodic([p.winding for p in self.pre], [p.winding for p in self.cycle])

    def indices(self) -> Periodic:
        return Periodic([p.index for p in self.pre], [p.index for p in self.cycle])

    def stage(self, j: int, w: FactoredNat, n: FactoredNat) -> StagePattern:
        if j <= len(self.pre):
            return self.pre[j - 1]
        return self.cycle[(j - len(self.pre) - 1) % len(self.cycle)]


@dataclass(frozen=True)
class DerivedPatterns:
    """Stage patterns computed from ``(w_j, N_j)`` by a fixed rule.

    ``"torus"``: ``w_j`` strands and ``(N_j - w_j) / 2`` clasps.
    ``"whitehead"``: one clasp composed with ``N_j / 2`` monotone turns.
    """

    rule: str

    def __post_init__(self) -> None:
        if self.rule not in ("torus", "whitehead"):
            raise ValueError(f"unknown pattern rule {self.rule!r}")

    def stage(self, j: int, w: FactoredNat, n: FactoredNat) -> StagePattern:
        if self.rule == "torus":
            return StagePattern(w.value, (n.value - w.value) // 2)
        return StagePattern(0, 1, n.value // 2)


Patterns = Union[PeriodicPatterns, DerivedPatterns]


@dataclass(frozen=True)
class ToroidalBasisSpec:
    winding: SequenceSpec
    index: SequenceSpec
    genus: Genus = Genus("unknown")
    patterns: Patterns | None = None
    label: str = ""

    def stages(self, n: int) -> Iterator[tuple[int, FactoredNat, FactoredNat, StagePattern | None]]:
        for j, (w, m) in enumerate(zip(iter_terms(self.winding), iter_terms(self.index)), start=1):
            if j > n:
                return
            yield j, w, m, (self.patterns.stage(j, w, m) if self.patterns else None)


# ---------------------------------------------------------------------------
# exact stagewise comparison of two sequences


def _horizon(a: Periodic, b: Periodic) -> int:
    return max(len(a.pre), len(b.pre)) + lcm(len(a.cycle), len(b.cycle))


def _threshold(s: EnumeratedPrimes | CumulativeProducts) -> tuple[int, int]:
    """``(J, e)`` such that from stage ``J`` on all exclusions lie behind the
    enumeration, i.e. the ``j``-th source prime is the ``(j + e)``-th prime."""
    excl = s.source.listed
    e = len(excl)
    if not excl:
        return 1, 0
    return max(1, prime_index(excl[-1]) - e + 1), e


def _scan(a: SequenceSpec, b: SequenceSpec, bad: Callable[[int, int], bool], upto: int | None) -> int | None:
    for j, (x, y) in enumerate(zip(iter_terms(a), iter_terms(b)), start=1):
        if upto is not None and j > upto:
            return None
        if j > _SCAN_CAP:
            raise RuntimeError("stagewise scan did not terminate")
        if bad(x.value, y.value):
            return j
    return None


def _max_value(s: Periodic) -> int:
    return max(t.value for t in s.pre + s.cycle)


def first_domination_failure(w: SequenceSpec, n: SequenceSpec) -> int | None:
    """First stage with ``w_j > N_j``, or ``None`` if there is none."""
    bad = lambda x, y: x > y  # noqa: E731
    if isinstance(w, Periodic) and isinstance(n, Periodic):
        return _scan(w, n, bad, _horizon(w, n))
    if isinstance(w, Periodic):
        # n is strictly increasing; once it passes max(w) nothing can fail.
        bound = _max_value(w)
        for j, (x, y) in enumerate(zip(iter_terms(w), iter_terms(n)), start=1):
            if x.value > y.value:
                return j
            if y.value >= bound:
                return None
    if isinstance(n, Periodic):
        # w is unbounded, so a failure exists.
        return _scan(w, n, bad, None)
    jw, a = _threshold(w)
    jn, b = _threshold(n)
    J = max(jw, jn)
    hit = _scan(w, n, bad, J)
    if hit is not None:
        return hit
    # Beyond J both sources enumerate consecutive primes; the ratio N_j / w_j
    # is monotone and the cases below are exact.
    if isinstance(w, EnumeratedPrimes) and isinstance(n, EnumeratedPrimes):
        return None
    if isinstance(w, EnumeratedPrimes) and isinstance(n, CumulativeProducts):
        return None
    if isinstance(w, CumulativeProducts) and isinstance(n, CumulativeProducts) and b >= a:
        return None
    return _scan(w, n, bad, None)


def first_parity_mismatch(a: SequenceSpec, b: SequenceSpec) -> int | None:
    pa = Periodic(*parity_pattern(a))
    pb = Periodic(*parity_pattern(b))
    return _scan(pa, pb, lambda x, y: x != y, _horizon(pa, pb))


def first_difference(a: SequenceSpec, b: SequenceSpec) -> int | None:
    """First stage where two sequences differ, or ``None`` if they are equal."""
    if isinstance(a, Periodic) and isinstance(b, Periodic):
        return _scan(a, b, lambda x, y: x != y, _horizon(a, b))
    if type(a) is type(b) and a.source == b.source:
        return None
    # Different sources or kinds always part ways at some finite stage.
    return _scan(a, b, lambda x, y: x != y, None)


def _first_odd_or_zero(s: SequenceSpec) -> int | None:
    bits_pre, bits_cyc = parity_pattern(s)
    if isinstance(s, Periodic):
        for j, t in enumerate(s.pre + s.cycle, start=1):
            if t.value % 2 or t.is_zero:
                return j
        return None
    for j, bit in enumerate(bits_pre + bits_cyc, start=1):
        if bit:
            return j
    return None


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str  # "parity" | "dominance" | "pattern" | "genus-contradiction"
    message: str
    stage: int | None = None

    def __str__(self) -> str:
        where = f" (stage {self.stage})" if self.stage is not None else ""
        return f"{self.code}{where}: {self.message}"


def _term(s: SequenceSpec, j: int) -> FactoredNat:
    return s.term(j)


def validate(b: ToroidalBasisSpec) -> list[Violation]:
    out: list[Violation] = []
    j = first_parity_mismatch(b.winding, b.index)
    if j is not None:
        out.append(Violation("parity", f"w={_term(b.winding, j)} and N={_term(b.index, j)} differ in parity", j))
    j = first_domination_failure(b.winding, b.index)
    if j is not None:
        out.append(Violation("dominance", f"w={_term(b.winding, j)} exceeds N={_term(b.index, j)}", j))
    out.extend(_pattern_violations(b))
    if not is_cellular(b) and b.genus.kind == "known" and b.genus.value >= 1:
        h1, ni = classify(b.winding), classify(b.index)
        if h1.variant is not Variant.ZERO and ni.variant is not Variant.FREE_CYCLIC:
            out.append(
                Violation(
                    "genus-contradiction",
                    "finite positive genus with nonzero H1 makes the set weakly tame, "
                    "which requires self-index ~ 1, but it is " + ni.describe(),
                )
            )
    return out


def _pattern_violations(b: ToroidalBasisSpec) -> list[Violation]:
    p = b.patterns
    if p is None:
        return []
    if isinstance(p, PeriodicPatterns):
        out = []
        j = first_difference(p.windings(), b.winding)
        if j is not None:
            out.append(Violation("pattern", f"pattern winding {_term(p.windings(), j)} != w={_term(b.winding, j)}", j))
        j = first_difference(p.indices(), b.index)
        if j is not None:
            out.append(Violation("pattern", f"pattern index {_term(p.indices(), j)} != N={_term(b.index, j)}", j))
        return out
    if p.rule == "torus":
        # w_j strands and (N_j - w_j)/2 clasps reproduce (w_j, N_j) exactly
        # when parity and dominance hold, which validate checks separately.
        return []
    out = []
    j = first_difference(b.winding, constant(0))
    if j is not None:
        out.append(Violation("pattern", f"whitehead stages need w=0, got {_term(b.winding, j)}", j))
    j = _first_odd_or_zero(b.index)
    if j is not None:
        out.append(Violation("pattern", f"whitehead stages need even N >= 2, got {_term(b.index, j)}", j))
    return out


# ---------------------------------------------------------------------------
# classification


def is_cellular(b: ToroidalBasisSpec) -> bool:
    return classify(b.index).variant is Variant.ZERO


def _require_toroidal(b: ToroidalBasisSpec) -> None:
    if is_cellular(b):
        raise NotToroidalError("not a toroidal set: infinitely many stages have index 0")


def cech_h1(b: ToroidalBasisSpec) -> tuple[DirectLimitClass, bool]:
    """First Cech cohomology and the triviality flag."""
    _require_toroidal(b)
    h1 = classify(b.winding)
    return h1, h1.variant is Variant.ZERO


def self_index(b: ToroidalBasisSpec) -> DirectLimitClass:
    _require_toroidal(b)
    return classify(b.index)


def _two_divides(c: DirectLimitClass) -> bool:
    return c.variant is Variant.ZERO or 2 in c.prime_divisors


def two_divides_consistency(b: ToroidalBasisSpec) -> bool:
    h1, _ = cech_h1(b)
    return _two_divides(h1) == _two_divides(self_index(b))


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Verdict:
    value: Tri
    reason: str

    def __str__(self) -> str:
        return f"{self.value.value} ({self.reason})"


@dataclass(frozen=True)
class Check:
    """A necessary-condition check; passing is not a realizability proof."""

    passes: bool
    reason: str

    def __str__(self) -> str:
        return ("passes" if self.passes else "obstructed") + f" ({self.reason})"


def is_weakly_tame(b: ToroidalBasisSpec) -> Verdict:
    h1, trivial = cech_h1(b)
    sim1 = self_index(b).variant is Variant.FREE_CYCLIC
    g = b.genus
    if g.kind == "infinite":
        return Verdict(Tri.NO, "infinite genus")
    if g.kind == "known" and g.value == 0:
        if sim1:
            return Verdict(Tri.YES, "genus 0 and self-index ~ 1")
        return Verdict(Tri.NO, "genus 0 and self-index not ~ 1")
    if g.kind == "known":
        if trivial:
            return Verdict(Tri.NO, f"genus {g.value} and trivial cohomology")
        return Verdict(Tri.YES, f"genus {g.value} and nontrivial cohomology")
    # Unknown genus: every alternative (0, positive finite, infinite) must agree.
    if trivial and not sim1:
        return Verdict(Tri.NO, "trivial with self-index not ~ 1, whatever the genus")
    return Verdict(Tri.UNDETERMINED, "genus not declared")


def flow_realizable(b: ToroidalBasisSpec) -> Verdict:
    return is_weakly_tame(b)


def homeo_necessary(b: ToroidalBasisSpec) -> Check:
    ni = self_index(b)
    if b.genus.kind == "infinite":
        return Check(False, "infinite genus")
    if not ni.number_like:
        return Check(False, "self-index is not number-like")
    return Check(True, "necessary conditions only")


def local_homeo_necessary(b: ToroidalBasisSpec) -> Check:
    if not self_index(b).number_like:
        return Check(False, "self-index is not number-like")
    return Check(True, "necessary conditions only")


@dataclass(frozen=True)
class SolenoidVerdict:
    kind: str  # "not-generalized-solenoid" | "n-adic" | "not-homeo-realizable"
    n: int | None = None

    def __str__(self) -> str:
        return f"{self.n}-adic solenoid" if self.kind == "n-adic" else self.kind


def _regroups_to_at_least_two(s: SequenceSpec) -> bool:
    # Stages with w = N = 1 are concentric and can be absorbed into a
    # neighbour, so what matters is no zero stage and infinitely many >= 2.
    if isinstance(s, Periodic):
        return all(not t.is_zero for t in s.pre + s.cycle) and any(t.value >= 2 for t in s.cycle)
    return True


def classify_solenoid(b: ToroidalBasisSpec) -> SolenoidVerdict:
    monotone = first_difference(b.winding, b.index) is None and _regroups_to_at_least_two(b.index)
    if not monotone or b.genus != Genus.known(0):
        return SolenoidVerdict("not-generalized-solenoid")
    rad = classify(b.index).radical
    if rad is not None and not rad.is_one():
        return SolenoidVerdict("n-adic", rad.value)
    return SolenoidVerdict("not-homeo-realizable")


@dataclass(frozen=True)
class SetClassification:
    cellular: bool
    h1: DirectLimitClass | None = None
    trivial: bool | None = None
    self_index: DirectLimitClass | None = None
    weakly_tame: Verdict | None = None
    flow_realizable: Verdict | None = None
    homeo_necessary: Check | None = None
    local_homeo_necessary: Check | None = None
    solenoid_verdict: SolenoidVerdict | None = None


def classify_set(b: ToroidalBasisSpec) -> SetClassification:
    if is_cellular(b):
        return SetClassification(cellular=True)
    h1, trivial = cech_h1(b)
    wt = is_weakly_tame(b)
    return SetClassification(
        cellular=False,
        h1=h1,
        trivial=trivial,
        self_index=self_index(b),
        weakly_tame=wt,
        flow_realizable=flow_realizable(b),
        homeo_necessary=homeo_necessary(b),
        local_homeo_necessary=local_homeo_necessary(b),
        solenoid_verdict=classify_solenoid(b),
    )


def classifications_equivalent(a: SetClassification, b: SetClassification) -> bool:
    """Fieldwise equality, comparing groups up to isomorphism."""
    if a.cellular or b.cellular:
        return a.cellular == b.cellular
    return (
        classes_isomorphic(a.h1, b.h1)
        and classes_isomorphic(a.self_index, b.self_index)
        and a.trivial == b.trivial
        and a.weakly_tame.value == b.weakly_tame.value
        and a.flow_realizable.value == b.flow_realizable.value
        and a.homeo_necessary.passes == b.homeo_necessary.passes
        and a.local_homeo_necessary.passes == b.local_homeo_necessary.passes
        and a.solenoid_verdict == b.solenoid_verdict
    )


def block_basis(b: ToroidalBasisSpec, plan: BlockPlan) -> ToroidalBasisSpec:
    """Pass to the subsequence of tori picked out by ``plan``."""
    return ToroidalBasisSpec(
        group_blocks(b.winding, plan),
        group_blocks(b.index, plan),
        b.genus,
        None,
        b.label,
    )
