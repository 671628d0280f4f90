"""Compositions, bounded weak compositions and partitions.

Every generator is lazy and yields in lexicographic order, so a consumer can
take a prefix (``itertools.islice``) without materializing the whole stream.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Iterator, Sequence

from .errors import UsageError

__all__ = [
    "Composition",
    "Partition",
    "compositions",
    "all_compositions",
    "bounded_compositions",
    "weak_compositions",
    "partitions_bounded_length",
    "multinomial_partition_coeff",
    "prefix_sums",
]


@dataclass(frozen=True)
class Composition:
    """An ordered sequence of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if not self.parts or any(p < 1 for p in self.parts):
            raise UsageError(f"composition parts must be positive: {list(self.parts)}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def prefix_sums(self) -> tuple[int, ...]:
        return prefix_sums(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of positive parts."""

    parts: tuple[int, ...]
    multiplicities: dict = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise UsageError(f"partition parts must be positive: {list(self.parts)}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "multiplicities", dict(Counter(parts)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicity(self, i: int) -> int:
        """t_i: how many times ``i`` occurs as a part."""
        return self.multiplicities.get(i, 0)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


def prefix_sums(parts: Sequence[int]) -> tuple[int, ...]:
    """Block boundaries ``(0, l1, l1+l2, ...)``."""
    return (0, *itertools.accumulate(parts))


def compositions(n: int, m: int) -> Iterator[Composition]:
    """Compositions of ``n`` into exactly ``m`` positive parts."""
    if m <= 0 or m > n:
        return
    # cut sets come out of combinations() in lex order, and so do the parts
    for cuts in itertools.combinations(range(1, n), m - 1):
        bounds = (0, *cuts, n)
        yield Composition(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def all_compositions(n: int, max_parts: int | None = None) -> Iterator[Composition]:
    """Every composition of ``n`` with at most ``max_parts`` parts, lex order."""
    if n < 1:
        return
    limit = n if max_parts is None else min(n, max_parts)

    def rec(rest, room):
        if rest == 0:
            yield ()
            return
        if room == 0:
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first, room - 1):
                yield (first, *tail)

    for parts in rec(n, limit):
        yield Composition(parts)


def bounded_compositions(k: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Tuples ``(k_1..k_m)`` with ``0 <= k_i <= bounds[i]`` summing to ``k``."""
    bounds = tuple(bounds)
    if not bounds:
        raise UsageError("bounds must be nonempty")
    if k < 0:
        return
    # suffix capacity lets us prune branches that can no longer reach k
    cap = list(itertools.accumulate(reversed(bounds)))[::-1] + [0]
    m = len(bounds)
    current = [0] * m

    def rec(i, rest):
        if i == m - 1:
            if rest <= bounds[i]:
                current[i] = rest
                yield tuple(current)
            return
        lo = max(0, rest - cap[i + 1])
        for v in range(lo, min(bounds[i], rest) + 1):
            current[i] = v
            yield from rec(i + 1, rest - v)

    if k <= cap[0]:
        yield from rec(0, k)


def weak_compositions(k: int, m: int) -> Iterator[tuple[int, ...]]:
    """All ``m``-tuples of nonnegative integers summing to ``k``."""
    if m < 1:
        raise UsageError("need at least one part")
    return bounded_compositions(k, (max(k, 0),) * m)


def partitions_bounded_length(k: int, m: int) -> Iterator[Partition]:
    """Partitions of ``k`` with at most ``m`` parts, lex order on the decreasing part lists."""
    if k < 1 or m < 1:
        return

    def rec(rest, largest, room):
        if rest == 0:
            yield ()
            return
        if room == 0:
            return
        for first in range(1, min(rest, largest) + 1):
            for tail in rec(rest - first, first, room - 1):
                yield (first, *tail)

    for parts in rec(k, k, m):
        yield Partition(parts)


def multinomial_partition_coeff(m: int, lam: Partition | Sequence[int]) -> int:
    """``m! / ((m - l)! * prod t_i!)`` with ``l`` the length of the partition."""
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    if lam.length > m:
        raise UsageError(f"partition {lam} has more than m={m} parts")
    denom = factorial(m - lam.length) * prod(factorial(t) for t in lam.multiplicities.values())
    return factorial(m) // denom
