"""Summation and q-shift primitives used by every convolution side.

Both primitives consult a context-local mutation setting that is ``None``
in normal use. The test suite switches it on (via :func:`mutate`) to perturb
exactly one summand per evaluation and confirm that the identity checker
notices; nothing in the library or CLI ever enables it.
"""

from __future__ import annotations

import contextlib
import contextvars
from typing import Iterable, Iterator

from .ring import RingElement, UPoly

_MUTATION: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "symconv_mutation", default=None
)
_MODES = ("sign", "exponent")


@contextlib.contextmanager
def mutate(mode: str) -> Iterator[None]:
    if mode not in _MODES:
        raise ValueError(f"unknown mutation mode {mode!r}")
    token = _MUTATION.set(mode)
    try:
        yield
    finally:
        _MUTATION.reset(token)


def accumulate(summands: Iterable[RingElement]) -> RingElement:
    """Exact sum of ``summands``.

    Under the ``sign`` mutation the first nonzero summand enters negated.
    """
    flip = _MUTATION.get() == "sign"
    total: RingElement = 0
    for s in summands:
        if flip and s != 0:
            s = -s
            flip = False
        total = total + s
    return total


class ShiftCounter:
    """Tracks whether the ``exponent`` mutation has been spent within one sum."""

    __slots__ = ("pending",)

    def __init__(self) -> None:
        self.pending = _MUTATION.get() == "exponent"

    def shift(self, poly: UPoly, exponent: int) -> UPoly:
        """``poly * q**exponent``; negative exponents must divide exactly."""
        if self.pending and poly:
            exponent += 1
            self.pending = False
        return poly.shift(exponent)
