"""Special numbers obtained by specializing e_k and h_k.

r-Stirling and r-Whitney numbers are *only* computed here through their
symmetric-function characterizations; the classical recurrences live in the
test suite as independent oracles.

Index conventions::

    [N, K]_r     = e_{N-K}(r, r+1, ..., N-1)              (N >= r)
    {N, K}_r     = h_{N-K}(r, r+1, ..., K)                (K >= r-1)
    w_{p,r}(N,K) = (-1)^(N-K) e_{N-K}(r, p+r, ..., (N-1)p+r)
    W_{p,r}(N,K) = h_{N-K}(r, p+r, ..., Kp+r)

An empty specialization sequence gives e_0 = h_0 = 1, so for instance
{r-1, r-1}_r = 1; anything outside these ranges is 0.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import ConsistencyError, UsageError
from .ring import UPoly, product
from .symfun import SymKind, complete, elementary

__all__ = [
    "q_pochhammer",
    "q_binomial",
    "q_binomial_from_pochhammer",
    "q_binomial_via_symfun",
    "q_powers",
    "binomial",
    "r_stirling_first",
    "r_stirling_second",
    "r_whitney_first",
    "r_whitney_second",
    "falling_factorial",
    "whitney_defining_check",
    "WhitneyCheck",
]


def q_powers(n: int, start: int = 0) -> list[UPoly]:
    """``[q^start, ..., q^(start+n-1)]``."""
    return [UPoly.monomial(start + i) for i in range(n)]


@lru_cache(maxsize=None)
def q_pochhammer(n: int) -> UPoly:
    """(q; q)_n = (1 - q)(1 - q^2)...(1 - q^n)."""
    if n < 0:
        raise UsageError("(q;q)_n needs n >= 0")
    result = UPoly.constant(1)
    for j in range(1, n + 1):
        result = result * UPoly({0: 1, j: -1})
    return result


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> UPoly:
    """Gaussian binomial via the q-Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    if n < 0 or k < 0 or k > n:
        return UPoly()
    if k == 0 or k == n:
        return UPoly.constant(1)
    return q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)


def q_binomial_from_pochhammer(n: int, k: int) -> UPoly:
    """(q;q)_n / ((q;q)_k (q;q)_{n-k}) by exact polynomial division."""
    if n < 0 or k < 0 or k > n:
        return UPoly()
    return q_pochhammer(n).exact_div(q_pochhammer(k) * q_pochhammer(n - k))


def q_binomial_via_symfun(n: int, k: int, kind) -> UPoly:
    """Gaussian binomial read off e_k or h_k of ``1, q, ..., q^(n-1)``.

    Elementary gives [n, k]_q after removing the factor q^(k choose 2);
    Complete gives [n+k-1, k]_q directly.
    """
    kind = SymKind.parse(kind)
    if k < 0:
        return UPoly()
    vals = q_powers(n)
    if kind is SymKind.ELEMENTARY:
        value = elementary(k, vals)
        if isinstance(value, int):
            return UPoly.constant(value)
        try:
            return value.shift(-(k * (k - 1) // 2))
        except ConsistencyError as exc:
            raise ConsistencyError(f"e_{k}(1..q^{n - 1}) not divisible by q^C({k},2)") from exc
    value = complete(k, vals)
    return value if isinstance(value, UPoly) else UPoly.constant(value)


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        out = out * (n - k + i) // i
    return out


@lru_cache(maxsize=None)
def r_stirling_first(n: int, k: int, r: int) -> int:
    """Unsigned r-Stirling number of the first kind [n, k]_r."""
    if r < 1:
        raise UsageError("r must be positive")
    if n < r or k < 0 or k > n:
        return 0
    return elementary(n - k, list(range(r, n)))


@lru_cache(maxsize=None)
def r_stirling_second(n: int, k: int, r: int) -> int:
    """r-Stirling number of the second kind {n, k}_r."""
    if r < 1:
        raise UsageError("r must be positive")
    if k < r - 1 or n < k:
        return 0
    return complete(n - k, list(range(r, k + 1)))


def _arith(p: int, r: int, count: int) -> list[int]:
    return [r + i * p for i in range(count)]


@lru_cache(maxsize=None)
def r_whitney_first(p: int, r: int, n: int, k: int) -> int:
    """Signed r-Whitney number of the first kind w_{p,r}(n, k)."""
    if p < 1 or r < 1:
        raise UsageError("p and r must be positive")
    if k < 0 or k > n:
        return 0
    d = n - k
    return (-1) ** d * elementary(d, _arith(p, r, n))


@lru_cache(maxsize=None)
def r_whitney_second(p: int, r: int, n: int, k: int) -> int:
    """r-Whitney number of the second kind W_{p,r}(n, k)."""
    if p < 1 or r < 1:
        raise UsageError("p and r must be positive")
    if k < 0 or k > n:
        return 0
    return complete(n - k, _arith(p, r, k + 1))


@lru_cache(maxsize=None)
def falling_factorial(n: int) -> UPoly:
    """(x)_n = x(x-1)...(x-n+1) as a polynomial in x."""
    if n < 0:
        raise UsageError("(x)_n needs n >= 0")
    return product((UPoly({0: -j, 1: 1}, var="x") for j in range(n)), UPoly.constant(1, "x"))


class WhitneyCheck:
    """Outcome of :func:`whitney_defining_check`; truthy iff both relations hold."""

    __slots__ = ("first_kind", "second_kind")

    def __init__(self, first_kind: bool, second_kind: bool):
        self.first_kind = first_kind
        self.second_kind = second_kind

    def __bool__(self) -> bool:
        return self.first_kind and self.second_kind

    def __repr__(self) -> str:
        return f"WhitneyCheck(first_kind={self.first_kind}, second_kind={self.second_kind})"


def whitney_defining_check(p: int, r: int, n: int) -> WhitneyCheck:
    """Check both connection relations between (x)_n and powers of (px + r).

    p^n (x)_n = sum_k w_{p,r}(n,k) (px+r)^k  and
    (px+r)^n  = sum_k p^k W_{p,r}(n,k) (x)_k, as polynomial identities in x.
    """
    if n < 0:
        raise UsageError("n must be nonnegative")
    lin = UPoly({0: r, 1: p}, var="x")
    powers = [lin ** k for k in range(n + 1)]
    first = sum((r_whitney_first(p, r, n, k) * powers[k] for k in range(n + 1)), UPoly(var="x"))
    second = sum(
        (p ** k * r_whitney_second(p, r, n, k) * falling_factorial(k) for k in range(n + 1)),
        UPoly(var="x"),
    )
    return WhitneyCheck(
        first_kind=(p ** n * falling_factorial(n) == first),
        second_kind=(powers[n] == second),
    )
