"""Exact factored-integer arithmetic and finite/cofinite prime sets.

Every multiplier in a direct sequence is carried as a :class:`FactoredNat`,
so products of arbitrarily long blocks never materialise huge plain values
unless a caller asks for ``.value``.
"""

from __future__ import annotations

import bisect
import enum
import re
from dataclasses import dataclass
from functools import cached_property
from math import isqrt
from typing import Iterable, Iterator

__all__ = [
    "FACTOR_BOUND",
    "FactoredNat",
    "Parity",
    "PrimeSet",
    "factor",
    "is_prime",
    "nth_prime",
    "parity",
    "primes_upto",
    "radical",
    "valuation",
]

# Plain values above this are refused by ``factor``; factored literals are not.
FACTOR_BOUND = 2**63 - 1

_SPF_LIMIT = 1 << 21
_TRIAL_LIMIT = 10**7


class _Sieve:
    """Lazily grown prime table plus a smallest-prime-factor table."""

    def __init__(self) -> None:
        self.limit = 0
        self.primes: list[int] = []
        self._flags = bytearray()
        self._spf: list[int] = []
        self._grow(1 << 12)

    def _grow(self, limit: int) -> None:
        flags = bytearray([1]) * (limit + 1)
        flags[0] = flags[1] = 0
        for p in range(2, isqrt(limit) + 1):
            if flags[p]:
                flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
        self._flags = flags
        self.primes = [i for i in range(limit + 1) if flags[i]]
        self.limit = limit
        self._spf = []

    def ensure(self, n: int) -> None:
        if n > self.limit:
            limit = self.limit
            while limit < n:
                limit *= 2
            self._grow(limit)

    def is_prime(self, n: int) -> bool:
        return bool(self._flags[n])

    def spf(self) -> list[int]:
        if not self._spf:
            size = min(self.limit, _SPF_LIMIT) + 1
            spf = list(range(size))
            for p in reversed(self.primes):
                if p * p >= size:
                    continue
                spf[p * p :: p] = [p] * len(range(p * p, size, p))
            self._spf = spf
        return self._spf


_SIEVE = _Sieve()

# Deterministic witness set for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n <= _SIEVE.limit:
        return _SIEVE.is_prime(n)
    for p in _SIEVE.primes[:64]:
        if n % p == 0:
            return False
    return _miller_rabin(n)


def primes_upto(n: int) -> list[int]:
    """All primes ``<= n`` in increasing order."""
    _SIEVE.ensure(n)
    return _SIEVE.primes[: bisect.bisect_right(_SIEVE.primes, n)]


def iter_primes(start: int = 2) -> Iterator[int]:
    """Primes ``>= start`` in increasing order, without end."""
    idx = bisect.bisect_left(_SIEVE.primes, start)
    while True:
        if idx >= len(_SIEVE.primes):
            _SIEVE.ensure(_SIEVE.limit * 2)
            idx = bisect.bisect_left(_SIEVE.primes, start)
            continue
        p = _SIEVE.primes[idx]
        yield p
        start = p + 1
        idx += 1


def nth_prime(j: int) -> int:
    """The ``j``-th prime, 1-based (``nth_prime(1) == 2``)."""
    if j < 1:
        raise ValueError("prime index is 1-based")
    while len(_SIEVE.primes) < j:
        _SIEVE.ensure(_SIEVE.limit * 2)
    return _SIEVE.primes[j - 1]


def prime_index(p: int) -> int:
    """1-based position of the prime ``p`` in the list of all primes."""
    _SIEVE.ensure(p)
    return bisect.bisect_left(_SIEVE.primes, p) + 1


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    ZERO = "zero"


_LITERAL = re.compile(r"^\d+(\^\d+)?(\*\d+(\^\d+)?)*$")


@dataclass(frozen=True)
class FactoredNat:
    """A nonnegative integer held as ``((p, e), ...)`` with increasing primes.

    The empty factor tuple is 1; ``is_zero`` marks 0.
    """

    factors: tuple[tuple[int, int], ...] = ()
    is_zero: bool = False

    def __post_init__(self) -> None:
        if self.is_zero and self.factors:
            raise ValueError("zero carries no prime factors")
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise ValueError(f"bad factorization entry {p}^{e}")
            last = p

    @classmethod
    def zero(cls) -> FactoredNat:
        return cls(is_zero=True)

    @classmethod
    def one(cls) -> FactoredNat:
        return cls()

    @classmethod
    def from_map(cls, exps: dict[int, int]) -> FactoredNat:
        return cls(tuple(sorted((p, e) for p, e in exps.items() if e)))

    @classmethod
    def parse(cls, text: str | int) -> FactoredNat:
        """Read ``0``, ``1``, a decimal integer, or ``p1^e1*p2^e2*...``."""
        if isinstance(text, bool):
            raise ValueError(f"not a factored integer: {text!r}")
        if isinstance(text, int):
            return factor(text)
        s = text.strip().replace(" ", "")
        if not _LITERAL.match(s):
            raise ValueError(f"not a factored integer: {text!r}")
        if "*" not in s and "^" not in s:
            return factor(int(s))
        exps: dict[int, int] = {}
        for part in s.split("*"):
            base, _, exp = part.partition("^")
            p, e = int(base), int(exp or 1)
            if p == 0:
                if e == 0:
                    raise ValueError("0^0 is not allowed")
                return cls.zero()
            if p == 1:
                continue
            if not is_prime(p):
                # Composite bases are factored when they are small enough.
                for q, f in factor(p).factors:
                    exps[q] = exps.get(q, 0) + f * e
                continue
            exps[p] = exps.get(p, 0) + e
        return cls.from_map(exps)

    @cached_property
    def value(self) -> int:
        if self.is_zero:
            return 0
        v = 1
        for p, e in self.factors:
            v *= p**e
        return v

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_one(self) -> bool:
        return not self.is_zero and not self.factors

    def __mul__(self, other: FactoredNat) -> FactoredNat:
        if not isinstance(other, FactoredNat):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return FactoredNat.zero()
        exps = self.as_dict()
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        return FactoredNat.from_map(exps)

    def __int__(self) -> int:
        return self.value

    def __lt__(self, other: FactoredNat) -> bool:
        return self.value < other.value

    def __le__(self, other: FactoredNat) -> bool:
        return self.value <= other.value

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)

    def __repr__(self) -> str:
        return f"FactoredNat({self})"


def product(terms: Iterable[FactoredNat]) -> FactoredNat:
    acc = FactoredNat.one()
    for t in terms:
        acc = acc * t
    return acc


def factor(n: int) -> FactoredNat:
    """Factor a plain nonnegative integer by trial division over the sieve."""
    if n < 0:
        raise ValueError("factor expects a nonnegative integer")
    if n == 0:
        return FactoredNat.zero()
    if n > FACTOR_BOUND:
        raise ValueError(
            f"{n} exceeds the factorization bound {FACTOR_BOUND}; "
            "pass it as a factored literal such as '2^80*3'"
        )
    exps: dict[int, int] = {}
    if n <= _SPF_LIMIT:
        _SIEVE.ensure(n)
        spf = _SIEVE.spf()
        while n > 1:
            p = spf[n]
            exps[p] = exps.get(p, 0) + 1
            n //= p
        return FactoredNat(tuple(sorted(exps.items())))
    if is_prime(n):
        return FactoredNat(((n, 1),))
    for p in iter_primes():
        if p * p > n:
            break
        if p > _TRIAL_LIMIT:
            raise ValueError(f"{n} has no prime factor below {_TRIAL_LIMIT}; refusing to factor")
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = e
            if n > 1 and is_prime(n):
                break
    if n > 1:
        exps[n] = exps.get(n, 0) + 1
    return FactoredNat(tuple(sorted(exps.items())))


def _nonzero(n: FactoredNat, what: str) -> None:
    if n.is_zero:
        raise ValueError(f"{what} of zero undefined")


def radical(n: FactoredNat) -> FactoredNat:
    _nonzero(n, "radical")
    return FactoredNat(tuple((p, 1) for p, _ in n.factors))


def valuation(p: int, n: FactoredNat) -> int:
    _nonzero(n, "valuation")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return n.as_dict().get(p, 0)


def parity(n: FactoredNat) -> Parity:
    if n.is_zero:
        return Parity.ZERO
    return Parity.EVEN if n.factors and n.factors[0][0] == 2 else Parity.ODD


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes, or the complement of one.

    ``listed`` holds the members of a finite set and the exclusions of a
    cofinite one; it is kept sorted and duplicate-free.
    """

    listed: tuple[int, ...] = ()
    cofinite: bool = False

    def __post_init__(self) -> None:
        if list(self.listed) != sorted(set(self.listed)):
            raise ValueError("prime set listing must be sorted and duplicate-free")
        for p in self.listed:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def finite(cls, primes: Iterable[int] = ()) -> PrimeSet:
        return cls(tuple(sorted(set(primes))))

    @classmethod
    def all_except(cls, primes: Iterable[int] = ()) -> PrimeSet:
        return cls(tuple(sorted(set(primes))), cofinite=True)

    @classmethod
    def parse(cls, text: str) -> PrimeSet:
        s = text.replace(" ", "")
        if s == "all":
            return cls.all_except()
        m = re.fullmatch(r"all\\\{([\d,]*)\}", s) or re.fullmatch(r"\{([\d,]*)\}", s)
        if not m:
            raise ValueError(f"not a prime set: {text!r}")
        body = m.group(1)
        items = [int(x) for x in body.split(",")] if body else []
        if len(items) != len(set(items)):
            raise ValueError(f"duplicate primes in {text!r}")
        if s.startswith("all"):
            return cls.all_except(items)
        return cls.finite(items)

    def __contains__(self, p: int) -> bool:
        return (p in self.listed) != self.cofinite and is_prime(p)

    def is_finite(self) -> bool:
        return not self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.listed

    def sym_diff_finite(self, other: PrimeSet) -> bool:
        return self.cofinite == other.cofinite

    def __iter__(self) -> Iterator[int]:
        if not self.cofinite:
            yield from self.listed
            return
        excluded = set(self.listed)
        for p in iter_primes():
            if p not in excluded:
                yield p

    def nth(self, j: int) -> int:
        """The ``j``-th smallest member, 1-based."""
        if j < 1:
            raise ValueError("prime set index is 1-based")
        if not self.cofinite:
            if j > len(self.listed):
                raise ValueError(f"finite prime set has only {len(self.listed)} elements")
            return self.listed[j - 1]
        # The j-th member sits at prime index j + (#exclusions below it).
        k = j
        for q in self.listed:
            if prime_index(q) <= k:
                k += 1
            else:
                break
        return nth_prime(k)

    def first(self, j: int) -> list[int]:
        out = []
        for p in self:
            if len(out) == j:
                break
            out.append(p)
        return out

    def without(self, primes: Iterable[int]) -> PrimeSet:
        drop = set(primes)
        if self.cofinite:
            return PrimeSet.all_except(set(self.listed) | drop)
        return PrimeSet.finite(p for p in self.listed if p not in drop)

    def __str__(self) -> str:
        body = ",".join(map(str, self.listed))
        if self.cofinite:
            return "all" if not self.listed else "all\\{" + body + "}"
        return "{" + body + "}"

    def __repr__(self) -> str:
        return f"PrimeSet({self})"


def contains(s: PrimeSet, p: int) -> bool:
    return p in s


def nth_element(s: PrimeSet, j: int) -> int:
    return s.nth(j)
