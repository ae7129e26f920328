"""Direct limits of ``Z --m1--> Z --m2--> Z --> ...``.

Sequences are described finitely by one of three kinds:

* :class:`Periodic` -- a preperiod followed by a repeating cycle;
* :class:`EnumeratedPrimes` -- term ``j`` is the ``j``-th prime of a cofinite set;
* :class:`CumulativeProducts` -- term ``j`` is the product of the first ``j``
  primes of a cofinite set.

The limit is a subgroup of Q determined up to isomorphism by its height
profile: for every prime ``p`` the total exponent of ``p`` along the
sequence, which is either infinite or finite.  Two nonzero limits are
isomorphic exactly when they have the same infinite-height primes and their
finite heights differ at only finitely many primes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence, Union

from toroidal.arith import FactoredNat, PrimeSet, product

__all__ = [
    "BlockPlan",
    "CumulativeProducts",
    "DirectLimitClass",
    "EnumeratedPrimes",
    "HeightProfile",
    "Periodic",
    "RefinementReport",
    "SequenceSpec",
    "TailParity",
    "Variant",
    "canonical_form",
    "classify",
    "constant",
    "drop_prefix",
    "eventual_parity",
    "group_blocks",
    "is_number_like",
    "isomorphic",
    "materialize",
    "prime_divisors",
    "refine_and_check",
]


def _fn(x: FactoredNat | int | str) -> FactoredNat:
    if isinstance(x, FactoredNat):
        return x
    return FactoredNat.parse(x)


@dataclass(frozen=True)
class Periodic:
    pre: tuple[FactoredNat, ...]
    cycle: tuple[FactoredNat, ...]

    def __init__(self, pre: Sequence = (), cycle: Sequence = (1,)) -> None:
        object.__setattr__(self, "pre", tuple(_fn(x) for x in pre))
        object.__setattr__(self, "cycle", tuple(_fn(x) for x in cycle))
        if not self.cycle:
            raise ValueError("periodic sequence needs a nonempty cycle")

    def term(self, j: int) -> FactoredNat:
        if j <= len(self.pre):
            return self.pre[j - 1]
        return self.cycle[(j - len(self.pre) - 1) % len(self.cycle)]

    def __str__(self) -> str:
        pre = ",".join(map(str, self.pre))
        cyc = ",".join(map(str, self.cycle))
        return f"[{pre}]({cyc})^inf"


@dataclass(frozen=True)
class EnumeratedPrimes:
    source: PrimeSet

    def __post_init__(self) -> None:
        if self.source.is_finite():
            raise ValueError("enumerated-primes sequence needs an infinite source")

    def term(self, j: int) -> FactoredNat:
        return FactoredNat(((self.source.nth(j), 1),))

    def __str__(self) -> str:
        return f"primes({self.source})"


@dataclass(frozen=True)
class CumulativeProducts:
    source: PrimeSet

    def __post_init__(self) -> None:
        if self.source.is_finite():
            raise ValueError("cumulative-products sequence needs an infinite source")

    def term(self, j: int) -> FactoredNat:
        return FactoredNat(tuple((p, 1) for p in self.source.first(j)))

    def __str__(self) -> str:
        return f"cumulative({self.source})"


SequenceSpec = Union[Periodic, EnumeratedPrimes, CumulativeProducts]


def constant(m: FactoredNat | int | str) -> Periodic:
    return Periodic((), (m,))


def iter_terms(s: SequenceSpec) -> Iterator[FactoredNat]:
    if isinstance(s, Periodic):
        yield from s.pre
        while True:
            yield from s.cycle
    elif isinstance(s, EnumeratedPrimes):
        for p in s.source:
            yield FactoredNat(((p, 1),))
    else:
        acc: list[tuple[int, int]] = []
        for p in s.source:
            acc.append((p, 1))
            yield FactoredNat(tuple(acc))


def materialize(s: SequenceSpec, n: int) -> list[FactoredNat]:
    """The first ``n`` terms, exactly."""
    if n < 0:
        raise ValueError("term count must be nonnegative")
    out = []
    if n == 0:
        return out
    for t in iter_terms(s):
        out.append(t)
        if len(out) == n:
            break
    return out


class Variant(enum.Enum):
    ZERO = "zero"
    FREE_CYCLIC = "free-cyclic"
    NON_FINITELY_GENERATED = "non-finitely-generated"


@dataclass(frozen=True)
class HeightProfile:
    """Total ``p``-adic content of a sequence, split three ways.

    ``infinite_support`` holds primes of infinite height, ``unit_tail`` primes
    of height exactly one beyond ``explicit``, and ``explicit`` the remaining
    primes of positive finite height.  All other primes have height 0.
    """

    infinite_support: PrimeSet
    unit_tail: PrimeSet = PrimeSet()
    explicit: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.infinite_support.cofinite or not self.unit_tail.cofinite:
            a, b = self.infinite_support, self.unit_tail
            finite = a if a.is_finite() else b
            other = b if finite is a else a
            if any(p in other for p in finite.listed):
                raise ValueError("height profile parts overlap")
        else:
            raise ValueError("height profile parts overlap")
        for p, h in self.explicit:
            if h < 1 or p in self.infinite_support or p in self.unit_tail:
                raise ValueError("height profile parts overlap")

    def height(self, p: int) -> int | None:
        """Height of ``p``; ``None`` stands for infinity."""
        if p in self.infinite_support:
            return None
        h = dict(self.explicit).get(p, 0)
        return h if h else (1 if p in self.unit_tail else 0)


@dataclass(frozen=True)
class DirectLimitClass:
    """Isomorphism class of the limit group.

    For the zero group every element is divisible by every prime, so
    ``prime_divisors`` is the set of all primes there.
    """

    variant: Variant
    number_like: bool
    radical: FactoredNat | None
    prime_divisors: PrimeSet
    profile: HeightProfile | None = field(default=None, compare=False)

    def describe(self) -> str:
        if self.variant is Variant.ZERO:
            return "0"
        if self.variant is Variant.FREE_CYCLIC:
            return "Z"
        if self.number_like:
            return f"Z[1/{self.radical.value}]"
        return f"rank-1, not number-like, divisors {self.prime_divisors}"


def _zero_class() -> DirectLimitClass:
    return DirectLimitClass(Variant.ZERO, False, None, PrimeSet.all_except())


def _profile(s: SequenceSpec) -> HeightProfile | None:
    """Exact height profile, or ``None`` when the limit is zero."""
    if isinstance(s, EnumeratedPrimes):
        return HeightProfile(PrimeSet.finite(), unit_tail=s.source)
    if isinstance(s, CumulativeProducts):
        return HeightProfile(s.source)
    if any(t.is_zero for t in s.cycle):
        return None
    infinite = {p for t in s.cycle for p in t.support}
    # Terms up to the last zero of the preperiod do not reach the limit.
    tail = list(s.pre)
    for i in range(len(tail) - 1, -1, -1):
        if tail[i].is_zero:
            tail = tail[i + 1 :]
            break
    explicit: dict[int, int] = {}
    for t in tail:
        for p, e in t.factors:
            if p not in infinite:
                explicit[p] = explicit.get(p, 0) + e
    return HeightProfile(PrimeSet.finite(infinite), explicit=tuple(sorted(explicit.items())))


def classify(s: SequenceSpec) -> DirectLimitClass:
    prof = _profile(s)
    if prof is None:
        return _zero_class()
    if isinstance(s, Periodic) and all(t.is_one() for t in s.cycle):
        return DirectLimitClass(Variant.FREE_CYCLIC, True, FactoredNat.one(), PrimeSet.finite(), prof)
    number_like = prof.infinite_support.is_finite() and prof.unit_tail.is_finite()
    rad = FactoredNat(tuple((p, 1) for p in prof.infinite_support.listed)) if number_like else None
    return DirectLimitClass(Variant.NON_FINITELY_GENERATED, number_like, rad, prof.infinite_support, prof)


def prime_divisors(s: SequenceSpec) -> PrimeSet:
    """Primes dividing infinitely many terms."""
    cls = classify(s)
    if cls.variant is Variant.ZERO:
        raise ValueError("divisor set undefined for G = 0")
    return cls.prime_divisors


def is_number_like(s: SequenceSpec) -> FactoredNat | None:
    """The radical ``m0`` with ``G = Z[1/m0]``, or ``None``."""
    return classify(s).radical


def classes_isomorphic(a: DirectLimitClass, b: DirectLimitClass) -> bool:
    if a.variant is Variant.ZERO or b.variant is Variant.ZERO:
        return a.variant is b.variant
    pa, pb = a.profile, b.profile
    return pa.infinite_support == pb.infinite_support and pa.unit_tail.sym_diff_finite(pb.unit_tail)


def isomorphic(a: SequenceSpec, b: SequenceSpec) -> bool:
    return classes_isomorphic(classify(a), classify(b))


def _runs_from(cycle: Sequence[FactoredNat], marks: Sequence[bool]) -> tuple[int, list[FactoredNat]]:
    """Rotate ``cycle`` to its first marked term and fold each run of unmarked
    terms into the marked term before it.  Returns the rotation offset and the
    folded cycle."""
    start = marks.index(True)
    rot = list(cycle[start:]) + list(cycle[:start])
    rmarks = list(marks[start:]) + list(marks[:start])
    folded: list[FactoredNat] = []
    for t, m in zip(rot, rmarks):
        if m:
            folded.append(t)
        else:
            folded[-1] = folded[-1] * t
    return start, folded


def canonical_form(s: SequenceSpec) -> SequenceSpec:
    """All-zero, all-one, or all terms ``>= 2`` with no preperiod."""
    if not isinstance(s, Periodic):
        return s
    if any(t.is_zero for t in s.cycle):
        return Periodic((), (FactoredNat.zero(),))
    if all(t.is_one() for t in s.cycle):
        return Periodic((), (FactoredNat.one(),))
    _, folded = _runs_from(s.cycle, [not t.is_one() for t in s.cycle])
    return Periodic((), folded)


def drop_prefix(s: SequenceSpec, k: int) -> SequenceSpec:
    if k < 0:
        raise ValueError("cannot drop a negative number of terms")
    if isinstance(s, Periodic):
        if k <= len(s.pre):
            return Periodic(s.pre[k:], s.cycle)
        r = (k - len(s.pre)) % len(s.cycle)
        return Periodic((), s.cycle[r:] + s.cycle[:r])
    if isinstance(s, EnumeratedPrimes):
        return EnumeratedPrimes(s.source.without(s.source.first(k)))
    if k == 0:
        return s
    raise ValueError("a shifted cumulative-products sequence has no finite description")


@dataclass(frozen=True)
class BlockPlan:
    """Leading block sizes, then a constant tail block size."""

    prefix: tuple[int, ...] = ()
    tail: int = 1

    def __post_init__(self) -> None:
        if self.tail < 1 or any(b < 1 for b in self.prefix):
            raise ValueError("block sizes must be positive")


def _regroup(s: Periodic, start: int, size: int) -> tuple[list[FactoredNat], list[FactoredNat]]:
    """Blocks of ``size`` consecutive terms from 0-based position ``start``."""
    L = len(s.cycle)
    first_periodic = max(0, -(-(len(s.pre) - start) // size))
    pre = [product(s.term(start + i * size + t + 1) for t in range(size)) for i in range(first_periodic)]
    n_cycle = L // gcd(L, size)
    base = start + first_periodic * size
    cyc = [product(s.term(base + i * size + t + 1) for t in range(size)) for i in range(n_cycle)]
    return pre, cyc


def group_blocks(s: SequenceSpec, plan: BlockPlan) -> Periodic:
    """Replace consecutive blocks of arrows by their composites."""
    if not isinstance(s, Periodic):
        raise ValueError("block grouping is defined for periodic sequences only")
    if plan.tail % len(s.cycle):
        raise ValueError("tail block must cover whole periods")
    pos, head = 0, []
    for b in plan.prefix:
        head.append(product(s.term(pos + t + 1) for t in range(b)))
        pos += b
    pre, cyc = _regroup(s, pos, plan.tail)
    return Periodic(head + pre, cyc)


@dataclass(frozen=True)
class TailParity:
    kind: str  # "all-odd" | "all-even" | "mixed" | "zero-tailed"
    start: int | None = None

    def __str__(self) -> str:
        return self.kind if self.start is None else f"{self.kind} from {self.start}"


def parity_pattern(s: SequenceSpec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Terms modulo 2 as an eventually periodic bit sequence."""
    if isinstance(s, Periodic):
        return tuple(t.value % 2 for t in s.pre), tuple(t.value % 2 for t in s.cycle)
    has_two = 2 in s.source
    if isinstance(s, EnumeratedPrimes):
        return ((0,) if has_two else ()), (1,)
    return (), ((0,) if has_two else (1,))


def eventual_parity(s: SequenceSpec) -> TailParity:
    if isinstance(s, Periodic) and any(t.is_zero for t in s.cycle):
        return TailParity("zero-tailed")
    pre, cyc = parity_pattern(s)
    if len(set(cyc)) > 1:
        return TailParity("mixed")
    bit = cyc[0]
    start = len(pre) + 1
    while start > 1 and pre[start - 2] == bit:
        start -= 1
    return TailParity("all-odd" if bit else "all-even", start)


@dataclass(frozen=True)
class RefinementReport:
    original: DirectLimitClass
    interleaved: DirectLimitClass
    induced: DirectLimitClass
    induced_sequence: Periodic
    passed: bool


def refine_and_check(
    s: Periodic,
    split_pre: Sequence[tuple],
    split_cycle: Sequence[tuple],
) -> RefinementReport:
    """Interleave a factorization ``N_j = M_j * M'_j`` and regroup it both ways.

    ``split_pre`` and ``split_cycle`` give ``(M_j, M'_j)`` for the preperiod
    and the cycle of ``s``.  Pairing the interleaved sequence from the start
    recovers ``s``; pairing it after dropping one arrow yields the induced
    sequence ``N'_j = M'_j * M_{j+1}``.  All three limits must agree.
    """
    if not isinstance(s, Periodic):
        raise ValueError("refinement needs a periodic sequence")
    if len(split_pre) != len(s.pre) or len(split_cycle) != len(s.cycle):
        raise ValueError("split must match the preperiod and cycle of the sequence")
    pairs_pre = [(_fn(a), _fn(b)) for a, b in split_pre]
    pairs_cyc = [(_fn(a), _fn(b)) for a, b in split_cycle]
    for (a, b), t in zip(pairs_pre + pairs_cyc, s.pre + s.cycle):
        if t.is_zero:
            raise ValueError("refinement needs nonzero terms")
        if a * b != t:
            raise ValueError(f"split {a}*{b} does not multiply back to {t}")
    inter = Periodic([x for ab in pairs_pre for x in ab], [x for ab in pairs_cyc for x in ab])
    paired_pre, paired_cyc = _regroup(inter, 0, 2)
    shifted_pre, shifted_cyc = _regroup(inter, 1, 2)
    paired = Periodic(paired_pre, paired_cyc)
    shifted = Periodic(shifted_pre, shifted_cyc)

    # N'_j = M'_j * M_{j+1}, built directly from the split.
    def m(j: int) -> FactoredNat:
        return pairs_pre[j - 1][0] if j <= len(pairs_pre) else pairs_cyc[(j - len(pairs_pre) - 1) % len(pairs_cyc)][0]

    def m_prime(j: int) -> FactoredNat:
        return pairs_pre[j - 1][1] if j <= len(pairs_pre) else pairs_cyc[(j - len(pairs_pre) - 1) % len(pairs_cyc)][1]

    n_pre = len(pairs_pre)
    induced = Periodic(
        [m_prime(j) * m(j + 1) for j in range(1, n_pre + 1)],
        [m_prime(j) * m(j + 1) for j in range(n_pre + 1, n_pre + 1 + len(pairs_cyc))],
    )
    c_orig, c_inter, c_shift = classify(s), classify(inter), classify(shifted)
    c_induced = classify(induced)
    passed = (
        classes_isomorphic(classify(paired), c_orig)
        and classes_isomorphic(c_shift, c_induced)
        and classes_isomorphic(c_inter, c_orig)
        and classes_isomorphic(c_induced, c_orig)
    )
    return RefinementReport(c_orig, c_inter, c_induced, induced, passed)
