"""Exact commutative-ring arithmetic: integers, univariate and sparse multivariate polynomials.

Python's ``int`` plays the role of the arbitrary-precision integer ring. The two
polynomial classes are immutable, keep no zero coefficients and render to a
canonical text form that :func:`parse_upoly` / :func:`parse_mpoly` read back.

Integers mix freely with either polynomial type (they are constants), but two
polynomials from different rings (different indeterminate, different arity)
refuse to combine.
"""

from __future__ import annotations

import re
from functools import reduce
from operator import mul
from typing import Mapping, Union

from .errors import ConsistencyError, UsageError

__all__ = [
    "UPoly",
    "MPoly",
    "RingElement",
    "ring_of",
    "ring_add",
    "ring_mul",
    "substitute_variables",
    "eval_at_one",
    "render",
    "parse_upoly",
    "parse_mpoly",
    "symbolic_variables",
]


def _coeff_term(c: int, mono: str) -> str:
    """Render ``|c| * mono`` without the sign; ``mono`` may be empty."""
    c = abs(c)
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


def _join_terms(terms: list[tuple[int, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (c, mono) in enumerate(terms):
        body = _coeff_term(c, mono)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class UPoly:
    """Polynomial in one named indeterminate with integer coefficients.

    >>> q = UPoly.monomial(1)
    >>> str((1 + q) * (1 + q))
    '1 + 2*q + q^2'
    """

    __slots__ = ("var", "_c")

    def __init__(self, coeffs: Mapping[int, int] | None = None, var: str = "q"):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if e < 0:
                    raise UsageError(f"negative exponent {e} is not representable")
                if v:
                    c[int(e)] = int(v)
        self.var = var
        self._c = c

    @classmethod
    def _raw(cls, c: dict, var: str) -> "UPoly":
        p = object.__new__(cls)
        p.var = var
        p._c = c
        return p

    @classmethod
    def constant(cls, value: int, var: str = "q") -> "UPoly":
        return cls({0: value}, var)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, var: str = "q") -> "UPoly":
        return cls({exponent: coeff}, var)

    # -- inspection ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    @property
    def low_degree(self) -> int:
        return min(self._c) if self._c else -1

    def coefficients(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._c.items())

    def coefficient_list(self) -> list[int]:
        return [self._c.get(e, 0) for e in range(self.degree + 1)]

    def __getitem__(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "UPoly | None":
        if isinstance(other, UPoly):
            if other.var != self.var:
                raise UsageError(
                    f"cannot combine polynomials in {self.var!r} and {other.var!r}"
                )
            return other
        if isinstance(other, int):
            return UPoly._raw({0: other} if other else {}, self.var)
        if isinstance(other, MPoly):
            raise UsageError("cannot combine univariate and multivariate polynomials")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in o._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return UPoly._raw(c, self.var)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly._raw({e: -v for e, v in self._c.items()}, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in o._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return UPoly._raw({e: v for e, v in c.items() if v}, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        if not isinstance(n, int) or n < 0:
            raise UsageError("polynomial powers need a nonnegative integer exponent")
        result = UPoly._raw({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exponent: int) -> "UPoly":
        """Multiply by ``var**exponent``.

        A negative exponent divides by the monomial and raises
        :class:`ConsistencyError` if the division is not exact.
        """
        if exponent < 0 and self._c and self.low_degree + exponent < 0:
            raise ConsistencyError(
                f"{self} is not divisible by {self.var}^{-exponent}"
            )
        return UPoly._raw({e + exponent: v for e, v in self._c.items()}, self.var)

    def exact_div(self, other) -> "UPoly":
        """Quotient of an exact polynomial division over the integers."""
        d = self._coerce(other)
        if d is None or not d:
            raise UsageError("division by zero polynomial")
        rem = dict(self._c)
        dd = d.degree
        lead = d._c[dd]
        quot: dict[int, int] = {}
        while rem and max(rem) >= dd:
            top = max(rem)
            q, r = divmod(rem[top], lead)
            if r:
                raise ConsistencyError(f"{self} / {d} has a non-integral quotient")
            shift = top - dd
            quot[shift] = q
            for e, v in d._c.items():
                k = e + shift
                s = rem.get(k, 0) - q * v
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        if rem:
            raise ConsistencyError(f"{d} does not divide {self}")
        return UPoly._raw(quot, self.var)

    def __call__(self, value):
        """Evaluate at ``value`` (Horner's rule); ``value`` may be any ring element."""
        result = 0
        for e in range(self.degree, -1, -1):
            result = result * value + self._c.get(e, 0)
        return result

    # -- comparison and rendering -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.var == other.var and self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self._c.get(0, 0))
        return hash((self.var, frozenset(self._c.items())))

    def __str__(self) -> str:
        terms = []
        for e, c in self.coefficients():
            mono = "" if e == 0 else (self.var if e == 1 else f"{self.var}^{e}")
            terms.append((c, mono))
        return _join_terms(terms)

    def __repr__(self) -> str:
        return f"UPoly({str(self)!r}, var={self.var!r})"


def _grlex_key(exps: tuple) -> tuple:
    return (sum(exps), tuple(-a for a in exps))


class MPoly:
    """Sparse polynomial in ``x1..xn`` with integer coefficients.

    Terms are stored as ``{exponent_tuple: coefficient}``. Rendering orders
    terms by total degree, then lexicographically with higher powers of
    lower-indexed variables first (``x1^2 + x1*x2 + x2^2``).
    """

    __slots__ = ("arity", "_t")

    def __init__(self, terms: Mapping[tuple, int] | None = None, arity: int = 0):
        t = {}
        if terms:
            for exps, v in terms.items():
                exps = tuple(int(a) for a in exps)
                if len(exps) != arity:
                    raise UsageError(f"exponent vector {exps} does not have length {arity}")
                if any(a < 0 for a in exps):
                    raise UsageError(f"negative exponent in {exps}")
                if v:
                    t[exps] = t.get(exps, 0) + int(v)
        self.arity = arity
        self._t = {k: v for k, v in t.items() if v}

    @classmethod
    def _raw(cls, t: dict, arity: int) -> "MPoly":
        p = object.__new__(cls)
        p.arity = arity
        p._t = t
        return p

    @classmethod
    def variable(cls, index: int, arity: int) -> "MPoly":
        """The indeterminate ``x<index>`` (1-based) in a ring of ``arity`` variables."""
        if not 1 <= index <= arity:
            raise UsageError(f"variable x{index} outside x1..x{arity}")
        exps = [0] * arity
        exps[index - 1] = 1
        return cls._raw({tuple(exps): 1}, arity)

    @classmethod
    def constant(cls, value: int, arity: int) -> "MPoly":
        return cls._raw({(0,) * arity: value} if value else {}, arity)

    def terms(self) -> list[tuple[tuple, int]]:
        """(exponent vector, coefficient) pairs in canonical order."""
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]))

    def __getitem__(self, exps: tuple) -> int:
        return self._t.get(tuple(exps), 0)

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_constant(self) -> bool:
        return not self._t or set(self._t) == {(0,) * self.arity}

    def degrees(self) -> set[int]:
        """Total degrees of the monomials present."""
        return {sum(e) for e in self._t}

    def _coerce(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            if other.arity != self.arity:
                raise UsageError(
                    f"cannot combine polynomials in {self.arity} and {other.arity} variables"
                )
            return other
        if isinstance(other, int):
            return MPoly.constant(other, self.arity)
        if isinstance(other, UPoly):
            raise UsageError("cannot combine univariate and multivariate polynomials")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for e, v in o._t.items():
            s = t.get(e, 0) + v
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MPoly._raw(t, self.arity)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({e: -v for e, v in self._t.items()}, self.arity)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t: dict[tuple, int] = {}
        for e1, v1 in self._t.items():
            for e2, v2 in o._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + v1 * v2
        return MPoly._raw({e: v for e, v in t.items() if v}, self.arity)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise UsageError("polynomial powers need a nonnegative integer exponent")
        result = MPoly.constant(1, self.arity)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.arity == other.arity and self._t == other._t
        if isinstance(other, int):
            return self._t == MPoly.constant(other, self.arity)._t
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self._t.get((0,) * self.arity, 0))
        return hash((self.arity, frozenset(self._t.items())))

    def __str__(self) -> str:
        terms = []
        for exps, c in self.terms():
            factors = []
            for i, a in enumerate(exps, start=1):
                if a == 1:
                    factors.append(f"x{i}")
                elif a > 1:
                    factors.append(f"x{i}^{a}")
            terms.append((c, "*".join(factors)))
        return _join_terms(terms)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r}, arity={self.arity})"


RingElement = Union[int, UPoly, MPoly]


def ring_of(a: RingElement) -> tuple:
    """A hashable tag identifying the ring ``a`` lives in."""
    if isinstance(a, bool):
        raise UsageError("booleans are not ring elements")
    if isinstance(a, int):
        return ("ZZ",)
    if isinstance(a, UPoly):
        return ("ZZ[]", a.var)
    if isinstance(a, MPoly):
        return ("ZZ[x]", a.arity)
    raise UsageError(f"{type(a).__name__} is not a supported ring element")


def _same_ring(a: RingElement, b: RingElement) -> None:
    if ring_of(a) != ring_of(b):
        raise UsageError(f"operands from different rings: {ring_of(a)} vs {ring_of(b)}")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    """Strict sum: both operands must come from the same ring."""
    _same_ring(a, b)
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    """Strict product: both operands must come from the same ring."""
    _same_ring(a, b)
    return a * b


def substitute_variables(p: MPoly, images: Mapping[Union[int, str], RingElement]) -> RingElement:
    """Apply the ring homomorphism ``x_i -> images[i]`` to ``p``.

    Keys are 1-based variable indices or names like ``"x3"``. Integer images mix
    with polynomial ones; polynomial images must share one ring.
    """
    table: dict[int, RingElement] = {}
    for key, img in images.items():
        idx = int(key[1:]) if isinstance(key, str) and key.startswith("x") else int(key)
        table[idx] = img
    poly_rings = {ring_of(v) for v in table.values() if not isinstance(v, int)}
    if len(poly_rings) > 1:
        raise UsageError(f"images live in different rings: {sorted(poly_rings)}")

    result: RingElement = 0
    for exps, c in p._t.items():
        term: RingElement = c
        for i, a in enumerate(exps, start=1):
            if not a:
                continue
            if i not in table:
                raise UsageError(f"no image given for x{i}")
            term = term * table[i] ** a
        result = result + term
    return result


def eval_at_one(p: RingElement) -> int:
    """Sum of coefficients, i.e. the value at ``q = 1``."""
    if isinstance(p, int):
        return p
    if isinstance(p, UPoly):
        return sum(v for _, v in p.coefficients())
    if isinstance(p, MPoly):
        return sum(p._t.values())
    raise UsageError(f"cannot evaluate {type(p).__name__} at one")


def render(value: RingElement) -> str:
    """Canonical text of any ring element."""
    return str(value)


def symbolic_variables(n: int) -> list[MPoly]:
    """``[x1, ..., xn]`` as elements of the n-variable polynomial ring."""
    return [MPoly.variable(i, n) for i in range(1, n + 1)]


# -- parsing ------------------------------------------------------------------

_SPLIT = re.compile(r" ([+-]) ")
_FACTOR = re.compile(r"^([A-Za-z]\w*?)(?:\^(\d+))?$")


def _split_terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if not text:
        raise UsageError("empty polynomial text")
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    pieces = _SPLIT.split(text)
    out = [(sign, pieces[0])]
    for op, body in zip(pieces[1::2], pieces[2::2]):
        out.append((-1 if op == "-" else 1, body))
    return out


def _parse_term(body: str) -> tuple[int, list[tuple[str, int]]]:
    factors = body.split("*")
    coeff = 1
    if factors[0].isdigit():
        coeff = int(factors[0])
        factors = factors[1:]
    powers = []
    for f in factors:
        m = _FACTOR.match(f)
        if not m:
            raise UsageError(f"malformed factor {f!r}")
        powers.append((m.group(1), int(m.group(2) or 1)))
    return coeff, powers


def parse_upoly(text: str, var: str = "q") -> UPoly:
    """Inverse of ``str(UPoly)``."""
    if text.strip() == "0":
        return UPoly(var=var)
    c: dict[int, int] = {}
    for sign, body in _split_terms(text):
        coeff, powers = _parse_term(body)
        e = 0
        for name, a in powers:
            if name != var:
                raise UsageError(f"unexpected indeterminate {name!r} (expected {var!r})")
            e += a
        c[e] = c.get(e, 0) + sign * coeff
    return UPoly(c, var)


_XVAR = re.compile(r"^x(\d+)$")


def parse_mpoly(text: str, arity: int | None = None) -> MPoly:
    """Inverse of ``str(MPoly)``; ``arity`` defaults to the highest index seen."""
    parsed = []
    top = 0
    if text.strip() != "0":
        for sign, body in _split_terms(text):
            coeff, powers = _parse_term(body)
            idx = []
            for name, a in powers:
                m = _XVAR.match(name)
                if not m or int(m.group(1)) < 1:
                    raise UsageError(f"unexpected variable {name!r}")
                idx.append((int(m.group(1)), a))
                top = max(top, int(m.group(1)))
            parsed.append((sign * coeff, idx))
    if arity is None:
        arity = top
    elif top > arity:
        raise UsageError(f"variable x{top} exceeds arity {arity}")
    t: dict[tuple, int] = {}
    for coeff, idx in parsed:
        exps = [0] * arity
        for i, a in idx:
            exps[i - 1] += a
        key = tuple(exps)
        t[key] = t.get(key, 0) + coeff
    return MPoly(t, arity)


def product(values, start: RingElement = 1) -> RingElement:
    return reduce(mul, values, start)
