"""Independent reference computations on plain integers.

Nothing here imports the library's arithmetic; these are deliberately
naive so they can serve as ground truth.
"""

from __future__ import annotations


def naive_factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def naive_is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def naive_primes(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if naive_is_prime(p)]


def naive_radical(n: int) -> int:
    r = 1
    for p in naive_factor(n):
        r *= p
    return r


def terms(pre: list[int], cycle: list[int], n: int) -> list[int]:
    out = list(pre[:n])
    while len(out) < n:
        out.extend(cycle)
    return out[:n]


def divides_by_period_scan(p: int, pre: list[int], cycle: list[int]) -> bool:
    """p divides the limit iff p divides some arrow that repeats forever."""
    return any(t % p == 0 for t in cycle)


def divides_by_count(p: int, pre: list[int], cycle: list[int], depth: int = 1000) -> bool:
    """p divides infinitely many arrows iff it divides some arrow late in a long truncation."""
    seq = terms(pre, cycle, depth)
    late = seq[depth // 2 :]
    return sum(1 for t in late if t % p == 0) > 0


def periodic_group(pre: list[int], cycle: list[int]) -> tuple[str, int | None]:
    """("zero" | "Z" | "Z[1/m]", radical) for an eventually periodic sequence."""
    if 0 in cycle:
        return "zero", None
    prod = 1
    for t in cycle:
        prod *= t
    if prod == 1:
        return "Z", 1
    return "Z[1/m]", naive_radical(prod)

