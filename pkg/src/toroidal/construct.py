"""Build nested-torus recipes with prescribed cohomology and self-index.

Both builders rewrite the requested sequences only by dropping finitely many
arrows, prepending finitely many arrows, or composing consecutive arrows,
so the requested groups are preserved exactly.  Every rewrite is logged in
the transcript.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from toroidal.arith import FactoredNat, PrimeSet, product
from toroidal.basis import (
    DerivedPatterns,
    Genus,
    PeriodicPatterns,
    StagePattern,
    ToroidalBasisSpec,
    is_cellular,
    validate,
)
from toroidal.limitgroup import (
    CumulativeProducts,
    EnumeratedPrimes,
    Periodic,
    SequenceSpec,
    Variant,
    _runs_from,
    canonical_form,
    classify,
    constant,
    isomorphic,
    iter_terms,
)

__all__ = [
    "Mode",
    "PreconditionError",
    "RealizationRequest",
    "RealizationResult",
    "construct",
    "construct_trivial",
    "construct_unknotted",
    "fixture_families",
    "verify_roundtrip",
]


class PreconditionError(ValueError):
    pass


class Mode(enum.Enum):
    UNKNOTTED = "unknotted"
    TRIVIAL_GENUS_ONE = "trivial-genus-one"


@dataclass(frozen=True)
class RealizationRequest:
    target_h: SequenceSpec | None
    target_n: SequenceSpec
    mode: Mode = Mode.UNKNOTTED


@dataclass(frozen=True)
class RealizationResult:
    basis: ToroidalBasisSpec
    transcript: tuple[str, ...]
    # Sizes of the N-blocks composed for dominance, one per emitted stage
    # of the periodic builder (empty otherwise).
    block_sizes: tuple[int, ...] = field(default=(), compare=False)

    def recipes(self, count: int | None = None) -> list[StagePattern]:
        """Stage patterns: the full description when periodic, else a preview."""
        p = self.basis.patterns
        if isinstance(p, PeriodicPatterns):
            return list(p.pre + p.cycle)
        n = 6 if count is None else count
        return [pat for _, _, _, pat in self.basis.stages(n)]


def _two_divides(s: SequenceSpec) -> bool:
    c = classify(s)
    return c.variant is Variant.ZERO or 2 in c.prime_divisors


def _fold_even(s: Periodic) -> Periodic:
    """Group a preperiod-free cycle so that every arrow is even."""
    marks = [t.value % 2 == 0 for t in s.cycle]
    if all(marks):
        return s
    _, folded = _runs_from(s.cycle, marks)
    return Periodic((), folded)


def _normalize_parity(s: Periodic, even: bool, name: str, log: list[str]) -> Periodic:
    canon = canonical_form(s)
    if canon != s:
        log.append(f"canonical form of {name}: {s} -> {canon}")
    if even:
        folded = _fold_even(canon)
        if folded != canon:
            log.append(f"parity: grouped {name} so each arrow contains an even one: {canon} -> {folded}")
        return folded
    # Canonical odd cycles are already all odd; the preperiod was dropped.
    return canon


def _check_unknotted(h: SequenceSpec, n: SequenceSpec) -> None:
    cn = classify(n)
    if cn.variant is Variant.ZERO:
        raise PreconditionError("N is zero")
    if cn.variant is Variant.FREE_CYCLIC:
        raise PreconditionError("N is ~1")
    if _two_divides(h) != _two_divides(n):
        raise PreconditionError("2-consistency violated: 2 | H must hold exactly when 2 | N")
    if not isinstance(h, Periodic):
        raise PreconditionError("kind pair unsupported: H must be periodic")


def construct_unknotted(h: SequenceSpec, n: SequenceSpec) -> RealizationResult:
    """Genus-0 basis with cohomology ``lim w`` = H and self-index ``lim N`` = N."""
    _check_unknotted(h, n)
    even = _two_divides(n)
    log: list[str] = []
    if isinstance(n, Periodic):
        return _unknotted_periodic(h, n, even, log)
    return _unknotted_increasing(h, n, even, log)


def _unknotted_periodic(h: Periodic, n: Periodic, even: bool, log: list[str]) -> RealizationResult:
    hw = _normalize_parity(h, even, "H", log)
    nn = _normalize_parity(n, even, "N", log)
    # Pair each winding with the shortest run of N-arrows whose composite
    # dominates it.  The state (position in w cycle, position in N cycle)
    # is finite, so the stage sequence is eventually periodic.
    Lw, Ln = len(hw.cycle), len(nn.cycle)
    seen: dict[tuple[int, int], int] = {}
    stages: list[tuple[FactoredNat, FactoredNat, int]] = []
    iw = jn = 0
    while (iw, jn) not in seen:
        seen[(iw, jn)] = len(stages)
        w = hw.cycle[iw]
        block = [nn.cycle[jn]]
        jn = (jn + 1) % Ln
        while product(block).value < w.value:
            block.append(nn.cycle[jn])
            jn = (jn + 1) % Ln
        stages.append((w, product(block), len(block)))
        iw = (iw + 1) % Lw
    start = seen[(iw, jn)]
    sizes = [s for _, _, s in stages]
    if any(s > 1 for s in sizes):
        log.append(f"dominance: composed N-arrows in greedy-minimal blocks of sizes {sizes} (one admissible choice)")
    pats = [StagePattern(w.value, (m.value - w.value) // 2) for w, m, _ in stages]
    log.append("solve: clasps k_j = (n_j - w_j) / 2 at each stage: " + ", ".join(f"(w {p.strands}, k {p.clasps})" for p in pats))
    log.append("genus stamp 0: every stage is an unknotted torus pattern")
    basis = ToroidalBasisSpec(
        Periodic([w for w, _, _ in stages[:start]], [w for w, _, _ in stages[start:]]),
        Periodic([m for _, m, _ in stages[:start]], [m for _, m, _ in stages[start:]]),
        Genus.known(0),
        PeriodicPatterns(tuple(pats[:start]), tuple(pats[start:])),
    )
    return RealizationResult(basis, tuple(log), tuple(sizes))


def _unknotted_increasing(h: Periodic, n: SequenceSpec, even: bool, log: list[str]) -> RealizationResult:
    hw = _normalize_parity(h, even, "H", log)
    c = product(hw.cycle)
    if len(hw.cycle) > 1:
        log.append(f"grouped one full period of H into the constant arrow {c}")
    # N is strictly increasing; pad H with small arrows of the right parity
    # until N has caught up with c for good.
    pads: list[FactoredNat] = []
    for m in iter_terms(n):
        if m.value >= c.value and m.value % 2 == c.value % 2:
            break
        pads.append(FactoredNat.one() if m.value % 2 else FactoredNat.zero())
    if pads:
        log.append(f"dominance: prefixed H with {len(pads)} arrow(s) {[str(p) for p in pads]} matching the parity of N")
    log.append("solve: clasps k_j = (n_j - w_j) / 2 at each stage")
    log.append("genus stamp 0: every stage is an unknotted torus pattern")
    basis = ToroidalBasisSpec(Periodic(pads, [c]), n, Genus.known(0), DerivedPatterns("torus"))
    return RealizationResult(basis, tuple(log))


def construct_trivial(n: SequenceSpec) -> RealizationResult:
    """Genus-1 basis with trivial cohomology and self-index ``lim N``."""
    cn = classify(n)
    if cn.variant is Variant.ZERO:
        raise PreconditionError("N is zero")
    if 2 not in cn.prime_divisors:
        raise PreconditionError("construct_trivial requires 2 | N")
    log: list[str] = []
    if isinstance(n, Periodic):
        nn = _normalize_parity(n, True, "N", log)
        pats = PeriodicPatterns((), tuple(StagePattern(0, 1, t.value // 2) for t in nn.cycle))
    elif isinstance(n, CumulativeProducts):
        nn = n  # 2 is the first source prime, so every arrow is already even.
        pats = DerivedPatterns("whitehead")
    else:
        raise PreconditionError("kind pair unsupported")
    log.append("stages: a Whitehead clasp followed by n_j/2 monotone turns, index 2 * n_j/2 = n_j")
    log.append("genus stamp 1: the first torus is a nontrivially knotted companion; Whitehead stages keep genus 1")
    basis = ToroidalBasisSpec(constant(0), nn, Genus.known(1), pats)
    return RealizationResult(basis, tuple(log))


def construct(req: RealizationRequest) -> RealizationResult:
    if req.mode is Mode.TRIVIAL_GENUS_ONE:
        return construct_trivial(req.target_n)
    return construct_unknotted(req.target_h, req.target_n)


def verify_roundtrip(r: RealizationResult, req: RealizationRequest) -> bool:
    b = r.basis
    if b.patterns is None or validate(b) or is_cellular(b):
        return False
    if req.mode is Mode.TRIVIAL_GENUS_ONE:
        h_ok = classify(b.winding).variant is Variant.ZERO
        genus = Genus.known(1)
    else:
        h_ok = isomorphic(b.winding, req.target_h)
        genus = Genus.known(0)
    return h_ok and b.genus == genus and isomorphic(b.index, req.target_n)


def fixture_families() -> dict[str, ToroidalBasisSpec]:
    """Named reference towers."""
    every = PrimeSet.all_except()
    odd = PrimeSet.all_except([2])

    def sol(label: str, s: SequenceSpec, genus: Genus = Genus.known(0)) -> ToroidalBasisSpec:
        return ToroidalBasisSpec(s, s, genus, DerivedPatterns("torus"), label)

    cat = {
        "unknot": ToroidalBasisSpec(constant(1), constant(1), Genus.known(0), PeriodicPatterns((), (StagePattern(1, 0),)), "concentric unknotted tori"),
        "solenoid-2": sol("dyadic solenoid", constant(2)),
        "solenoid-3": sol("3-adic solenoid", constant(3)),
        "solenoid-6": sol("6-adic solenoid", constant(6)),
        "solenoid-primes": sol("j-th prime solenoid", EnumeratedPrimes(every)),
        "solenoid-coprime": sol("pairwise-coprime solenoid on the odd primes", EnumeratedPrimes(odd)),
        "solenoid-factorial": sol("factorial-style solenoid", CumulativeProducts(every)),
        "solenoid-2-knotted": sol("dyadic solenoid in a knotted torus", constant(2), Genus.infinite()),
        "whitehead": ToroidalBasisSpec(
            constant(0), constant(2), Genus.known(0), PeriodicPatterns((), (StagePattern(0, 1),)), "Whitehead continuum"
        ),
    }
    na1 = construct_unknotted(constant(1), CumulativeProducts(odd)).basis
    cat["nonattract-1"] = ToroidalBasisSpec(na1.winding, na1.index, na1.genus, na1.patterns, "H = Z, self-index divisors = odd primes")
    na2 = construct_trivial(CumulativeProducts(every)).basis
    cat["nonattract-2"] = ToroidalBasisSpec(na2.winding, na2.index, na2.genus, na2.patterns, "trivial, genus 1, divisors = all primes")
    return cat

