"""Elementary and complete homogeneous symmetric functions over any ring.

``elementary`` and ``complete`` use the O(n*k) generating-function recurrences;
the ``*_bruteforce`` variants sum monomials literally and exist to check them.

The convolution right-hand sides (block splitting, repeated blocks, squared
variables) all route their summation through :func:`symconv._hooks.accumulate`.
"""

from __future__ import annotations

import enum
import itertools
from typing import Sequence

from ._hooks import accumulate
from .enumeration import (
    bounded_compositions,
    multinomial_partition_coeff,
    partitions_bounded_length,
    prefix_sums,
)
from .errors import UsageError
from .ring import RingElement, product

__all__ = [
    "SymKind",
    "elementary",
    "complete",
    "symmetric",
    "elementary_bruteforce",
    "complete_bruteforce",
    "merge_convolution",
    "theorem1_rhs",
    "repeated_blocks_rhs",
    "girard_waring_rhs",
]


class SymKind(enum.Enum):
    ELEMENTARY = "e"
    COMPLETE = "h"

    @classmethod
    def parse(cls, token) -> "SymKind":
        if isinstance(token, cls):
            return token
        t = str(token).lower()
        if t in ("e", "elementary"):
            return cls.ELEMENTARY
        if t in ("h", "complete"):
            return cls.COMPLETE
        raise UsageError(f"unknown symmetric function kind {token!r} (use e or h)")


def elementary(k: int, vals: Sequence[RingElement]) -> RingElement:
    """e_k(vals); 1 for k == 0 and 0 for k < 0 or k > len(vals)."""
    n = len(vals)
    if k < 0 or k > n:
        return 0
    table: list[RingElement] = [1] + [0] * k
    for j, x in enumerate(vals, start=1):
        for i in range(min(j, k), 0, -1):
            table[i] = table[i] + x * table[i - 1]
    return table[k]


def complete(k: int, vals: Sequence[RingElement]) -> RingElement:
    """h_k(vals), the sum of all degree-k monomials.

    Nonzero for k > len(vals) in general; 0 for k < 0 or for an empty
    sequence with k >= 1.
    """
    if k < 0:
        return 0
    if k == 0:
        return 1
    if not vals:
        return 0
    table: list[RingElement] = [1] + [0] * k
    for x in vals:
        for i in range(1, k + 1):
            table[i] = table[i] + x * table[i - 1]
    return table[k]


def symmetric(kind, k: int, vals: Sequence[RingElement]) -> RingElement:
    return (elementary if SymKind.parse(kind) is SymKind.ELEMENTARY else complete)(k, vals)


def _table(kind: SymKind, top: int, vals: Sequence[RingElement]) -> list[RingElement]:
    """[f_0(vals), ..., f_top(vals)] in one pass of the recurrence."""
    table: list[RingElement] = [1] + [0] * top
    if kind is SymKind.ELEMENTARY:
        for j, x in enumerate(vals, start=1):
            for i in range(min(j, top), 0, -1):
                table[i] = table[i] + x * table[i - 1]
    else:
        for x in vals:
            for i in range(1, top + 1):
                table[i] = table[i] + x * table[i - 1]
    return table


def elementary_bruteforce(k: int, vals: Sequence[RingElement]) -> RingElement:
    if k < 0:
        return 0
    total: RingElement = 0
    for idx in itertools.combinations(range(len(vals)), k):
        total = total + product(vals[i] for i in idx)
    return total


def complete_bruteforce(k: int, vals: Sequence[RingElement]) -> RingElement:
    if k < 0:
        return 0
    total: RingElement = 0
    for idx in itertools.combinations_with_replacement(range(len(vals)), k):
        total = total + product(vals[i] for i in idx)
    return total


def merge_convolution(kind, k: int, a: Sequence[RingElement], b: Sequence[RingElement]) -> RingElement:
    """sum_{i=0..k} f_{k-i}(a) * f_i(b), which equals f_k(a + b)."""
    kind = SymKind.parse(kind)
    if k < 0:
        return 0
    fa = _table(kind, k, a)
    fb = _table(kind, k, b)
    return accumulate(fa[k - i] * fb[i] for i in range(k + 1))


def theorem1_rhs(kind, k: int, composition: Sequence[int], vals: Sequence[RingElement]) -> RingElement:
    """Block-split form of f_k(vals).

    ``vals`` is cut into consecutive blocks of sizes given by ``composition``
    and the product of per-block f_{k_i} is summed over all (k_1..k_m) with
    sum k. For the elementary kind k_i is capped at the block size (larger
    indices vanish); the complete kind has no such cap.
    """
    kind = SymKind.parse(kind)
    parts = tuple(composition)
    if sum(parts) != len(vals):
        raise UsageError(
            f"composition {list(parts)} sums to {sum(parts)}, but there are {len(vals)} values"
        )
    if k < 0:
        return 0
    cuts = prefix_sums(parts)
    blocks = [vals[a:b] for a, b in zip(cuts, cuts[1:])]
    if kind is SymKind.ELEMENTARY:
        bounds = parts
    else:
        bounds = (k,) * len(parts)
    tables = [_table(kind, min(k, bd), blk) for blk, bd in zip(blocks, bounds)]
    return accumulate(
        product(t[ki] for t, ki in zip(tables, ks))
        for ks in bounded_compositions(k, bounds)
    )


def repeated_blocks_rhs(kind, k: int, m: int, vals: Sequence[RingElement]) -> RingElement:
    """sum over partitions lam of k with at most m parts of multinomial * f_lam(vals)."""
    kind = SymKind.parse(kind)
    if k < 1 or m < 1:
        raise UsageError("k and m must be positive")
    table = _table(kind, k, vals)
    return accumulate(
        multinomial_partition_coeff(m, lam)
        * product(table[i] ** t for i, t in sorted(lam.multiplicities.items()))
        for lam in partitions_bounded_length(k, m)
    )


def girard_waring_rhs(k: int, vals: Sequence[RingElement]) -> RingElement:
    """sum_{i=-k..k} (-1)^i e_{k+i}(vals) e_{k-i}(vals), which equals e_k of the squares."""
    if k < 1:
        raise UsageError("k must be positive")
    table = _table(SymKind.ELEMENTARY, 2 * k, vals)
    return accumulate(
        (-1) ** (i % 2) * table[k + i] * table[k - i] for i in range(-k, k + 1)
    )
