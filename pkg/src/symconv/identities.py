"""Registry of checkable convolution identities.

Each :class:`Identity` evaluates its two sides separately. ``lhs`` and
``rhs`` are the left and right sides exactly as the identity is usually
displayed; one of them is the convolution (a sum assembled through
:func:`symconv._hooks.accumulate`) and the other is a direct evaluation from
definitions or specializations. ``convolution_side`` records which is which.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from ._hooks import ShiftCounter, accumulate
from .enumeration import (
    multinomial_partition_coeff,
    partitions_bounded_length,
    prefix_sums,
    weak_compositions,
)
from .errors import UsageError
from .grid import Bound, CompositionPolicy, ParameterGrid
from .ring import RingElement, eval_at_one, product, render, symbolic_variables
from .special import (
    binomial,
    q_binomial,
    r_stirling_first,
    r_stirling_second,
    r_whitney_first,
    r_whitney_second,
)
from .symfun import (
    elementary,
    girard_waring_rhs,
    merge_convolution,
    repeated_blocks_rhs,
    symmetric,
    theorem1_rhs,
)

__all__ = [
    "Identity",
    "InstanceResult",
    "REGISTRY",
    "IDENTITY_IDS",
    "get_identity",
    "list_identities",
    "check_instance",
    "limit_counterpart",
    "format_params",
]


@dataclass(frozen=True)
class Identity:
    id: str
    signature: tuple[str, ...]
    formula: str
    constraints: str
    loops: tuple[str, ...]
    default_grid: ParameterGrid
    domain: Callable[[dict], str | None]
    lhs: Callable[[dict], RingElement]
    rhs: Callable[[dict], RingElement]
    convolution_side: str = "rhs"
    composition_total: Bound | None = None
    symbolic: bool = False
    q_exponent: bool = False

    def points(self, grid: ParameterGrid | None = None) -> Iterator[dict]:
        """Grid points in canonical order, with out-of-domain points skipped."""
        grid = grid or self.default_grid
        for params in grid.points(self.loops, self.composition_total):
            if self.domain(params) is None:
                yield params

    def side(self, which: str, params: dict) -> RingElement:
        return (self.lhs if which == "lhs" else self.rhs)(params)

    @property
    def direct_side(self) -> str:
        return "lhs" if self.convolution_side == "rhs" else "rhs"


@dataclass(frozen=True)
class InstanceResult:
    identity: str
    params: dict
    lhs: str
    rhs: str
    equal: bool

    def to_dict(self) -> dict:
        return {"params": params_to_json(self.params), "lhs": self.lhs, "rhs": self.rhs}


def params_to_json(params: dict) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}


def format_params(params: dict) -> str:
    """Compact ``n=5;k=3;composition=2+1+2`` rendering used in text and csv output."""
    out = []
    for key, value in params.items():
        if isinstance(value, (tuple, list)):
            value = "+".join(map(str, value))
        out.append(f"{key}={value}")
    return ";".join(out)


# -- helpers -----------------------------------------------------------------


def _require(*checks: tuple[bool, str]) -> str | None:
    for ok, message in checks:
        if not ok:
            return message
    return None


def _composition_ok(params: dict, total: int) -> tuple[bool, str]:
    comp = params.get("composition")
    ok = comp is not None and len(comp) > 0 and min(comp) >= 1 and sum(comp) == total
    return ok, f"composition must have positive parts summing to {total}"


def _qsum(terms) -> RingElement:
    """Sum of ``q^exponent * poly`` over ``(exponent, poly)`` pairs.

    Terms whose polynomial factor vanishes are dropped before the exponent
    is applied, so a formally negative exponent on a zero term is harmless;
    any other negative exponent must divide exactly.
    """
    shifter = ShiftCounter()
    return accumulate(shifter.shift(poly, exp) for exp, poly in terms if poly)


def _e2(parts) -> int:
    return elementary(2, list(parts))


# -- symmetric-function identities -------------------------------------------


def _thm1_lhs(p):
    return symmetric(p["kind"], p["k"], symbolic_variables(p["n"]))


def _thm1_rhs(p):
    return theorem1_rhs(p["kind"], p["k"], p["composition"], symbolic_variables(p["n"]))


def _cor1_1_lhs(p):
    return symmetric(p["kind"], p["k"], symbolic_variables(p["n"]) * p["m"])


def _cor1_1_rhs(p):
    return repeated_blocks_rhs(p["kind"], p["k"], p["m"], symbolic_variables(p["n"]))


def _cor1_2_lhs(p):
    return elementary(p["k"], [x * x for x in symbolic_variables(p["n"])])


def _cor1_2_rhs(p):
    return girard_waring_rhs(p["k"], symbolic_variables(p["n"]))


def _eq2_1_lhs(p):
    return symmetric(p["kind"], p["k"], symbolic_variables(p["n"] + p["t"]))


def _eq2_1_rhs(p):
    xs = symbolic_variables(p["n"] + p["t"])
    return merge_convolution(p["kind"], p["k"], xs[: p["n"]], xs[p["n"]:])


# -- binomial identities -----------------------------------------------------


def _vandermonde_lhs(p):
    n, t, k = p["n"], p["t"], p["k"]
    return accumulate(binomial(t, i) * binomial(n - t, k - i) for i in range(k + 1))


def _vandermonde_m_lhs(p):
    lam = p["composition"]
    return accumulate(
        product(binomial(li, ki) for li, ki in zip(lam, ks))
        for ks in weak_compositions(p["k"], len(lam))
    )


def _vandermonde_h_lhs(p):
    lam = p["composition"]
    return accumulate(
        product(binomial(li + ki - 1, ki) for li, ki in zip(lam, ks))
        for ks in weak_compositions(p["k"], len(lam))
    )


def _eq4_1_lhs(p):
    n = p["n"]
    return accumulate(
        product(binomial(n, ki) for ki in ks) for ks in weak_compositions(p["k"], p["m"])
    )


def _eq4_2_lhs(p):
    n = p["n"]
    return accumulate(
        product(binomial(n + ki - 1, ki) for ki in ks)
        for ks in weak_compositions(p["k"], p["m"])
    )


def _partition_sum(p, factor):
    m = p["m"]
    return accumulate(
        multinomial_partition_coeff(m, lam)
        * product(factor(i) ** t for i, t in sorted(lam.multiplicities.items()))
        for lam in partitions_bounded_length(p["k"], m)
    )


def _cor4_7_lhs(p):
    n = p["n"]
    return _partition_sum(p, lambda i: binomial(n, i))


def _cor4_8_lhs(p):
    n = p["n"]
    return _partition_sum(p, lambda i: binomial(n + i - 1, i))


# -- r-Stirling / r-Whitney identities ---------------------------------------


def _eq1_2_lhs(p):
    r, t, k, n = p["r"], p["t"], p["k"], p["n"]
    return accumulate(
        r_stirling_first(t, t - i, r) * r_stirling_first(n, k + i, t) for i in range(n - k + 1)
    )


def _eq1_3_lhs(p):
    r, t, k, n = p["r"], p["t"], p["k"], p["n"]
    return accumulate(
        r_stirling_second(t + i, t, r) * r_stirling_second(n - i, k, t + 1)
        for i in range(n - k + 1)
    )


def _cor3_1_rhs(p):
    pp, r, lam = p["p"], p["r"], p["composition"]
    a = prefix_sums(lam)
    return accumulate(
        product(
            r_whitney_first(pp, a[i] * pp + r, lam[i], lam[i] - ks[i]) for i in range(len(lam))
        )
        for ks in weak_compositions(p["k"], len(lam))
    )


def _cor3_2_rhs(p):
    pp, r, lam = p["p"], p["r"], p["composition"]
    a = prefix_sums(lam)
    return accumulate(
        product(
            r_whitney_second(pp, a[i] * pp + r, lam[i] + ks[i] - 1, lam[i] - 1)
            for i in range(len(lam))
        )
        for ks in weak_compositions(p["k"], len(lam))
    )


def _cor3_3_rhs(p):
    pp, r, n, k, t = p["p"], p["r"], p["n"], p["k"], p["t"]
    return accumulate(
        r_whitney_first(pp, r, t, t - i) * r_whitney_first(pp, t * pp + r, n - t, k - t + i)
        for i in range(n - k + 1)
    )


def _cor3_4_rhs(p):
    pp, r, n, k, t = p["p"], p["r"], p["n"], p["k"], p["t"]
    return accumulate(
        r_whitney_second(pp, r, t - 1 + i, t - 1) * r_whitney_second(pp, t * pp + r, n - t - i, k - t)
        for i in range(n - k + 1)
    )


def _cor3_5_rhs(p):
    r, lam = p["r"], p["composition"]
    a = prefix_sums(lam)
    return accumulate(
        product(
            r_stirling_first(r + a[i + 1], r + a[i + 1] - ks[i], r + a[i]) for i in range(len(lam))
        )
        for ks in weak_compositions(p["k"], len(lam))
    )


def _cor3_6_rhs(p):
    r, lam = p["r"], p["composition"]
    a = prefix_sums(lam)
    return accumulate(
        product(
            r_stirling_second(r + a[i + 1] - 1 + ks[i], r + a[i + 1] - 1, r + a[i])
            for i in range(len(lam))
        )
        for ks in weak_compositions(p["k"], len(lam))
    )


def _block1_rhs(p):
    r, m, n = p["r"], p["m"], p["n"]
    return accumulate(
        product(
            r_stirling_first(r + i * n, r + i * n - ks[i - 1], r + (i - 1) * n)
            for i in range(1, m + 1)
        )
        for ks in weak_compositions(p["k"], m)
    )


def _block2_rhs(p):
    r, m, n = p["r"], p["m"], p["n"]
    return accumulate(
        product(
            r_stirling_second(r + i * n + ks[i - 1], r + i * n, r + 1 + (i - 1) * n)
            for i in range(1, m + 1)
        )
        for ks in weak_compositions(p["k"], m)
    )


# -- q-identities ------------------------------------------------------------


def _cor4_1_lhs(p):
    lam = p["composition"]
    a = prefix_sums(lam)
    return _qsum(
        (
            sum(a[i] * ks[i] for i in range(1, len(lam))) - _e2(ks),
            product((q_binomial(li, ki) for li, ki in zip(lam, ks)), 1),
        )
        for ks in weak_compositions(p["k"], len(lam))
    )


def _cor4_2_lhs(p):
    lam = p["composition"]
    a = prefix_sums(lam)
    return _qsum(
        (
            sum(a[i] * ks[i] for i in range(1, len(lam))),
            product((q_binomial(li + ki - 1, ki) for li, ki in zip(lam, ks)), 1),
        )
        for ks in weak_compositions(p["k"], len(lam))
    )


def _cor4_3_lhs(p):
    n = p["n"]
    return _qsum(
        (
            n * sum(i * ki for i, ki in enumerate(ks)) - _e2(ks),
            product((q_binomial(n, ki) for ki in ks), 1),
        )
        for ks in weak_compositions(p["k"], p["m"])
    )


def _cor4_4_lhs(p):
    n = p["n"]
    return _qsum(
        (
            n * sum(i * ki for i, ki in enumerate(ks)),
            product((q_binomial(n + ki - 1, ki) for ki in ks), 1),
        )
        for ks in weak_compositions(p["k"], p["m"])
    )


def _qvandermonde_lhs(p):
    n, t, k = p["n"], p["t"], p["k"]
    return _qsum(
        ((k - i) * (t - i), q_binomial(t, i) * q_binomial(n - t, k - i)) for i in range(k + 1)
    )


def _qvandermonde_h_lhs(p):
    n, t, k = p["n"], p["t"], p["k"]
    return _qsum(
        ((k - i) * t, q_binomial(t - 1 + i, i) * q_binomial(n - t + k - i, k - i))
        for i in range(k + 1)
    )


# -- registry ----------------------------------------------------------------


def _grid(kinds=("e", "h"), compositions=CompositionPolicy(), **ranges) -> ParameterGrid:
    return ParameterGrid(ranges=ranges, kinds=kinds, compositions=compositions)


_KIND_OK = lambda p: (p.get("kind") in ("e", "h"), "kind must be e or h")  # noqa: E731


def _dom_thm1(p):
    return _require(_KIND_OK(p), (p["n"] >= 1, "n >= 1"), (p["k"] >= 0, "k >= 0"),
                    _composition_ok(p, p["n"]))


def _dom_cor1_1(p):
    return _require(_KIND_OK(p), (p["n"] >= 1, "n >= 1"), (p["m"] >= 1, "m >= 1"),
                    (p["k"] >= 1, "k >= 1"))


def _dom_cor1_2(p):
    return _require((p["n"] >= 1, "n >= 1"), (p["k"] >= 1, "k >= 1"))


def _dom_eq2_1(p):
    return _require(_KIND_OK(p), (p["n"] >= 0 and p["t"] >= 0, "n, t >= 0"),
                    (p["n"] + p["t"] >= 1, "n + t >= 1"), (p["k"] >= 0, "k >= 0"))


def _dom_vandermonde(p):
    return _require((0 <= p["t"] <= p["n"], "0 <= t <= n"), (p["k"] >= 0, "k >= 0"))


def _dom_comp_n(p):
    return _require((p["n"] >= 1, "n >= 1"), (p["k"] >= 0, "k >= 0"), _composition_ok(p, p["n"]))


def _dom_nmk(p):
    return _require((p["n"] >= 1, "n >= 1"), (p["m"] >= 1, "m >= 1"), (p["k"] >= 0, "k >= 0"))


def _dom_nmk_pos(p):
    return _require((p["n"] >= 1, "n >= 1"), (p["m"] >= 1, "m >= 1"), (p["k"] >= 1, "k >= 1"))


def _dom_rstirling_split(p):
    return _require((1 <= p["r"] < p["t"] <= p["k"] < p["n"], "1 <= r < t <= k < n"))


def _dom_whitney_pr(p):
    return (p["p"] >= 1 and p["r"] >= 1, "p, r >= 1")


def _dom_cor3_1(p):
    return _require(_dom_whitney_pr(p), (p["n"] >= 1, "n >= 1"), (p["k"] >= 0, "k >= 0"),
                    _composition_ok(p, p["n"]))


def _dom_cor3_2(p):
    return _require(_dom_whitney_pr(p), (p["n"] >= 0, "n >= 0"), (p["k"] >= 0, "k >= 0"),
                    _composition_ok(p, p["n"] + 1))


def _dom_cor3_3(p):
    return _require(_dom_whitney_pr(p), (1 <= p["k"] <= p["n"], "1 <= k <= n"),
                    (1 <= p["t"] <= p["n"] - 1, "1 <= t <= n-1"))


def _dom_cor3_4(p):
    return _require(_dom_whitney_pr(p), (1 <= p["k"] <= p["n"], "1 <= k <= n"),
                    (1 <= p["t"] <= p["n"] - 1, "1 <= t <= n-1"), (p["t"] <= p["k"], "t <= k"))


def _dom_cor3_5(p):
    return _require((1 <= p["r"] < p["n"], "1 <= r < n"), (p["k"] >= 0, "k >= 0"),
                    _composition_ok(p, p["n"] - p["r"]))


def _dom_cor3_6(p):
    return _require((1 <= p["r"] <= p["n"], "1 <= r <= n"), (p["k"] >= 0, "k >= 0"),
                    _composition_ok(p, p["n"] + 1 - p["r"]))


def _dom_block(p):
    return _require((p["r"] >= 1, "r >= 1"), (p["m"] >= 1, "m >= 1"), (p["n"] >= 1, "n >= 1"),
                    (p["k"] >= 0, "k >= 0"))


def _dom_qvandermonde_h(p):
    return _require((1 <= p["t"] <= p["n"], "1 <= t <= n"), (p["k"] >= 0, "k >= 0"))


_PQ = {"p": (1, 3), "r": (1, 3)}

_IDENTITIES = [
    Identity(
        "thm1", ("kind", "n", "k", "composition"),
        "f_k(x_1..x_n) = sum_{k_1+..+k_m=k} prod_i f_{k_i}(x_{a_{i-1}+1}..x_{a_i})",
        "composition of n; k >= 0; f in {e, h}",
        ("kind", "n", "k", "composition"),
        _grid(n=(1, 6), k=(0, "n")),
        _dom_thm1, _thm1_lhs, _thm1_rhs, composition_total="n", symbolic=True,
    ),
    Identity(
        "cor1_1", ("kind", "n", "m", "k"),
        "f_k(x_1..x_n repeated m times) = sum_{lam |- k, l(lam) <= m} multinomial(m; m-l, lam) f_lam(x_1..x_n)",
        "n, m, k >= 1",
        ("kind", "n", "m", "k"),
        _grid(n=(1, 4), m=(1, 3), k=(1, 6)),
        _dom_cor1_1, _cor1_1_lhs, _cor1_1_rhs, symbolic=True,
    ),
    Identity(
        "cor1_2", ("n", "k"),
        "e_k(x_1^2..x_n^2) = sum_{i=-k..k} (-1)^i e_{k+i}(x) e_{k-i}(x)",
        "n, k >= 1",
        ("n", "k"),
        _grid(kinds=(), n=(1, 6), k=(1, "n")),
        _dom_cor1_2, _cor1_2_lhs, _cor1_2_rhs, symbolic=True,
    ),
    Identity(
        "vandermonde", ("n", "t", "k"),
        "sum_{i=0..k} C(t,i) C(n-t,k-i) = C(n,k)",
        "0 <= t <= n; k >= 0",
        ("n", "t", "k"),
        _grid(kinds=(), n=(0, 12), t=(0, "n"), k=(0, "n+1")),
        _dom_vandermonde, _vandermonde_lhs, lambda p: binomial(p["n"], p["k"]),
        convolution_side="lhs",
    ),
    Identity(
        "vandermonde_m", ("n", "k", "composition"),
        "sum_{k_1+..+k_m=k} prod_i C(lam_i,k_i) = C(lam_1+..+lam_m, k)",
        "composition of n; k >= 0",
        ("n", "k", "composition"),
        _grid(kinds=(), n=(1, 8), k=(0, "n+1")),
        _dom_comp_n, _vandermonde_m_lhs, lambda p: binomial(p["n"], p["k"]),
        convolution_side="lhs", composition_total="n",
    ),
    Identity(
        "vandermonde_h", ("n", "k", "composition"),
        "sum_{k_1+..+k_m=k} prod_i C(lam_i+k_i-1,k_i) = C(lam_1+..+lam_m+k-1, k)",
        "composition of n; k >= 0",
        ("n", "k", "composition"),
        _grid(kinds=(), n=(1, 8), k=(0, 8)),
        _dom_comp_n, _vandermonde_h_lhs, lambda p: binomial(p["n"] + p["k"] - 1, p["k"]),
        convolution_side="lhs", composition_total="n",
    ),
    Identity(
        "eq1_2", ("r", "t", "k", "n"),
        "sum_{i=0..n-k} [t over t-i]_r [n over k+i]_t = [n over k]_r",
        "r < t <= k < n",
        ("n", "k", "t", "r"),
        _grid(kinds=(), n=(2, 10), k=(1, "n-1"), t=(2, "k"), r=(1, "t-1")),
        _dom_rstirling_split, _eq1_2_lhs, lambda p: r_stirling_first(p["n"], p["k"], p["r"]),
        convolution_side="lhs",
    ),
    Identity(
        "eq1_3", ("r", "t", "k", "n"),
        "sum_{i=0..n-k} {t+i over t}_r {n-i over k}_{t+1} = {n over k}_r",
        "r < t <= k < n",
        ("n", "k", "t", "r"),
        _grid(kinds=(), n=(2, 10), k=(1, "n-1"), t=(2, "k"), r=(1, "t-1")),
        _dom_rstirling_split, _eq1_3_lhs, lambda p: r_stirling_second(p["n"], p["k"], p["r"]),
        convolution_side="lhs",
    ),
    Identity(
        "eq2_1", ("kind", "n", "t", "k"),
        "f_k(x_1..x_n, y_1..y_t) = sum_{i=0..k} f_{k-i}(x_1..x_n) f_i(y_1..y_t)",
        "n, t >= 0 with n + t >= 1; k >= 0",
        ("kind", "n", "t", "k"),
        _grid(n=(0, 4), t=(0, 4), k=(0, "n+t+1")),
        _dom_eq2_1, _eq2_1_lhs, _eq2_1_rhs, symbolic=True,
    ),
    Identity(
        "cor3_1", ("p", "r", "n", "k", "composition"),
        "w_{p,r}(n,n-k) = sum_{k_1+..+k_m=k} prod_i w_{p,a_{i-1}p+r}(lam_i, lam_i-k_i)",
        "p, r >= 1; composition of n; k >= 0",
        ("p", "r", "n", "k", "composition"),
        _grid(kinds=(), **_PQ, n=(1, 8), k=(0, "n"), parts=(1, 3)),
        _dom_cor3_1, lambda p: r_whitney_first(p["p"], p["r"], p["n"], p["n"] - p["k"]),
        _cor3_1_rhs, composition_total="n",
    ),
    Identity(
        "cor3_2", ("p", "r", "n", "k", "composition"),
        "W_{p,r}(n+k,n) = sum_{k_1+..+k_m=k} prod_i W_{p,a_{i-1}p+r}(lam_i+k_i-1, lam_i-1)",
        "p, r >= 1; composition of n+1; k >= 0",
        ("p", "r", "n", "k", "composition"),
        _grid(kinds=(), **_PQ, n=(1, 8), k=(0, "n"), parts=(1, 3)),
        _dom_cor3_2, lambda p: r_whitney_second(p["p"], p["r"], p["n"] + p["k"], p["n"]),
        _cor3_2_rhs, composition_total="n+1",
    ),
    Identity(
        "cor3_3", ("p", "r", "n", "k", "t"),
        "w_{p,r}(n,k) = sum_{i=0..n-k} w_{p,r}(t,t-i) w_{p,tp+r}(n-t,k-t+i)",
        "p, r >= 1; 1 <= k <= n; 1 <= t <= n-1",
        ("p", "r", "n", "k", "t"),
        _grid(kinds=(), **_PQ, n=(2, 8), k=(1, "n"), t=(1, "n-1")),
        _dom_cor3_3, lambda p: r_whitney_first(p["p"], p["r"], p["n"], p["k"]), _cor3_3_rhs,
    ),
    Identity(
        "cor3_4", ("p", "r", "n", "k", "t"),
        "W_{p,r}(n,k) = sum_{i=0..n-k} W_{p,r}(t-1+i,t-1) W_{p,tp+r}(n-t-i,k-t)",
        "p, r >= 1; 1 <= k <= n; 1 <= t <= min(k, n-1)",
        ("p", "r", "n", "k", "t"),
        _grid(kinds=(), **_PQ, n=(2, 8), k=(1, "n"), t=(1, "min(k, n-1)")),
        _dom_cor3_4, lambda p: r_whitney_second(p["p"], p["r"], p["n"], p["k"]), _cor3_4_rhs,
    ),
    Identity(
        "cor3_5", ("r", "n", "k", "composition"),
        "[n over n-k]_r = sum_{k_1+..+k_m=k} prod_i [r+a_i over r+a_i-k_i]_{r+a_{i-1}}",
        "1 <= r < n; composition of n-r; k >= 0",
        ("r", "n", "k", "composition"),
        _grid(kinds=(), r=(1, 3), n=("r+1", 8), k=(0, "n-r"), parts=(1, 3)),
        _dom_cor3_5, lambda p: r_stirling_first(p["n"], p["n"] - p["k"], p["r"]),
        _cor3_5_rhs, composition_total="n-r",
    ),
    Identity(
        "cor3_6", ("r", "n", "k", "composition"),
        "{n+k over n}_r = sum_{k_1+..+k_m=k} prod_i {r+a_i-1+k_i over r+a_i-1}_{r+a_{i-1}}",
        "1 <= r <= n; composition of n+1-r; k >= 0",
        ("r", "n", "k", "composition"),
        _grid(kinds=(), r=(1, 3), n=("r", 8), k=(0, 8), parts=(1, 3)),
        _dom_cor3_6, lambda p: r_stirling_second(p["n"] + p["k"], p["n"], p["r"]),
        _cor3_6_rhs, composition_total="n+1-r",
    ),
    Identity(
        "rstirling_block_1", ("r", "m", "n", "k"),
        "[r+mn over r+mn-k]_r = sum_{k_1+..+k_m=k} prod_i [r+in over r+in-k_i]_{r+(i-1)n}",
        "r, m, n >= 1; k >= 0",
        ("r", "m", "n", "k"),
        _grid(kinds=(), r=(1, 3), m=(1, 3), n=(1, 8), k=(0, "m*n")),
        _dom_block,
        lambda p: r_stirling_first(p["r"] + p["m"] * p["n"], p["r"] + p["m"] * p["n"] - p["k"], p["r"]),
        _block1_rhs,
    ),
    Identity(
        "rstirling_block_2", ("r", "m", "n", "k"),
        "{r+mn+k over r+mn}_{r+1} = sum_{k_1+..+k_m=k} prod_i {r+in+k_i over r+in}_{r+1+(i-1)n}",
        "r, m, n >= 1; k >= 0",
        ("r", "m", "n", "k"),
        _grid(kinds=(), r=(1, 3), m=(1, 3), n=(1, 8), k=(0, 8)),
        _dom_block,
        lambda p: r_stirling_second(p["r"] + p["m"] * p["n"] + p["k"], p["r"] + p["m"] * p["n"], p["r"] + 1),
        _block2_rhs,
    ),
    Identity(
        "cor4_1", ("n", "k", "composition"),
        "sum_{k_1+..+k_m=k} q^{a_1k_2+..+a_{m-1}k_m - e_2(k_1..k_m)} prod_i [lam_i over k_i]_q = [n over k]_q",
        "composition of n; k >= 0",
        ("n", "k", "composition"),
        _grid(kinds=(), n=(1, 8), k=(0, "n+2"), parts=(1, 3)),
        _dom_comp_n, _cor4_1_lhs, lambda p: q_binomial(p["n"], p["k"]),
        convolution_side="lhs", composition_total="n", q_exponent=True,
    ),
    Identity(
        "cor4_2", ("n", "k", "composition"),
        "sum_{k_1+..+k_m=k} q^{a_1k_2+..+a_{m-1}k_m} prod_i [lam_i+k_i-1 over k_i]_q = [n+k-1 over k]_q",
        "composition of n; k >= 0",
        ("n", "k", "composition"),
        _grid(kinds=(), n=(1, 8), k=(0, "n+2"), parts=(1, 3)),
        _dom_comp_n, _cor4_2_lhs, lambda p: q_binomial(p["n"] + p["k"] - 1, p["k"]),
        convolution_side="lhs", composition_total="n", q_exponent=True,
    ),
    Identity(
        "cor4_3", ("n", "m", "k"),
        "sum_{k_1+..+k_m=k} q^{n(k_2+2k_3+..+(m-1)k_m) - e_2(k_1..k_m)} prod_i [n over k_i]_q = [mn over k]_q",
        "n, m >= 1; k >= 0",
        ("n", "m", "k"),
        _grid(kinds=(), n=(1, 8), m=(1, 3), k=(0, "n+2")),
        _dom_nmk, _cor4_3_lhs, lambda p: q_binomial(p["m"] * p["n"], p["k"]),
        convolution_side="lhs", q_exponent=True,
    ),
    Identity(
        "cor4_4", ("n", "m", "k"),
        "sum_{k_1+..+k_m=k} q^{n(k_2+2k_3+..+(m-1)k_m)} prod_i [n+k_i-1 over k_i]_q = [mn+k-1 over k]_q",
        "n, m >= 1; k >= 0",
        ("n", "m", "k"),
        _grid(kinds=(), n=(1, 8), m=(1, 3), k=(0, "n+2")),
        _dom_nmk, _cor4_4_lhs, lambda p: q_binomial(p["m"] * p["n"] + p["k"] - 1, p["k"]),
        convolution_side="lhs", q_exponent=True,
    ),
    Identity(
        "qvandermonde", ("n", "t", "k"),
        "sum_{i=0..k} q^{(k-i)(t-i)} [t over i]_q [n-t over k-i]_q = [n over k]_q",
        "0 <= t <= n; k >= 0",
        ("n", "t", "k"),
        _grid(kinds=(), n=(1, 8), t=(0, "n"), k=(0, "n+2")),
        _dom_vandermonde, _qvandermonde_lhs, lambda p: q_binomial(p["n"], p["k"]),
        convolution_side="lhs", q_exponent=True,
    ),
    Identity(
        "qvandermonde_h", ("n", "t", "k"),
        "sum_{i=0..k} q^{(k-i)t} [t-1+i over i]_q [n-t+k-i over k-i]_q = [n+k over k]_q",
        "1 <= t <= n; k >= 0",
        ("n", "t", "k"),
        _grid(kinds=(), n=(1, 8), t=(1, "n"), k=(0, "n+2")),
        _dom_qvandermonde_h, _qvandermonde_h_lhs, lambda p: q_binomial(p["n"] + p["k"], p["k"]),
        convolution_side="lhs", q_exponent=True,
    ),
    Identity(
        "cor4_5", ("n", "k", "composition"),
        "sum_{k_1+..+k_m=k} prod_i C(lam_i, k_i) = C(n, k)",
        "composition of n; k >= 0",
        ("n", "k", "composition"),
        _grid(kinds=(), n=(1, 8), k=(0, 8)),
        _dom_comp_n, _vandermonde_m_lhs, lambda p: binomial(p["n"], p["k"]),
        convolution_side="lhs", composition_total="n",
    ),
    Identity(
        "cor4_6", ("n", "k", "composition"),
        "sum_{k_1+..+k_m=k} prod_i C(lam_i+k_i-1, k_i) = C(n+k-1, k)",
        "composition of n; k >= 0",
        ("n", "k", "composition"),
        _grid(kinds=(), n=(1, 8), k=(0, 8)),
        _dom_comp_n, _vandermonde_h_lhs, lambda p: binomial(p["n"] + p["k"] - 1, p["k"]),
        convolution_side="lhs", composition_total="n",
    ),
    Identity(
        "eq4_1", ("n", "m", "k"),
        "sum_{k_1+..+k_m=k} prod_i C(n, k_i) = C(mn, k)",
        "n, m >= 1; k >= 0",
        ("n", "m", "k"),
        _grid(kinds=(), n=(1, 8), m=(1, 8), k=(0, 8)),
        _dom_nmk, _eq4_1_lhs, lambda p: binomial(p["m"] * p["n"], p["k"]),
        convolution_side="lhs",
    ),
    Identity(
        "eq4_2", ("n", "m", "k"),
        "sum_{k_1+..+k_m=k} prod_i C(n+k_i-1, k_i) = C(mn+k-1, k)",
        "n, m >= 1; k >= 0",
        ("n", "m", "k"),
        _grid(kinds=(), n=(1, 8), m=(1, 8), k=(0, 8)),
        _dom_nmk, _eq4_2_lhs, lambda p: binomial(p["m"] * p["n"] + p["k"] - 1, p["k"]),
        convolution_side="lhs",
    ),
    Identity(
        "cor4_7", ("n", "m", "k"),
        "sum_{lam |- k, l(lam) <= m} multinomial(m; m-l, lam) prod_i C(n, i)^{t_i(lam)} = C(mn, k)",
        "n, m, k >= 1",
        ("n", "m", "k"),
        _grid(kinds=(), n=(1, 8), m=(1, 8), k=(1, 8)),
        _dom_nmk_pos, _cor4_7_lhs, lambda p: binomial(p["m"] * p["n"], p["k"]),
        convolution_side="lhs",
    ),
    Identity(
        "cor4_8", ("n", "m", "k"),
        "sum_{lam |- k, l(lam) <= m} multinomial(m; m-l, lam) prod_i C(n+i-1, i)^{t_i(lam)} = C(mn+k-1, k)",
        "n, m, k >= 1",
        ("n", "m", "k"),
        _grid(kinds=(), n=(1, 8), m=(1, 8), k=(1, 8)),
        _dom_nmk_pos, _cor4_8_lhs, lambda p: binomial(p["m"] * p["n"] + p["k"] - 1, p["k"]),
        convolution_side="lhs",
    ),
]

REGISTRY: dict[str, Identity] = {ident.id: ident for ident in _IDENTITIES}
IDENTITY_IDS: tuple[str, ...] = tuple(REGISTRY)


def get_identity(identity_id: str) -> Identity:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UsageError(
            f"unknown identity {identity_id!r}; valid ids: {', '.join(IDENTITY_IDS)}"
        ) from None


def list_identities() -> list[tuple[str, tuple[str, ...], str, str]]:
    """(id, parameter signature, formula, domain constraints) for every identity."""
    return [(i.id, i.signature, i.formula, i.constraints) for i in _IDENTITIES]


def _normalize(ident: Identity, params: dict) -> dict:
    missing = [name for name in ident.signature if name not in params]
    if missing:
        raise UsageError(f"{ident.id}: missing parameter(s) {', '.join(missing)}")
    out = {}
    for name in ident.loops:
        value = params[name]
        if name == "composition":
            value = tuple(int(v) for v in value)
        elif name == "kind":
            value = {"elementary": "e", "complete": "h"}.get(str(value).lower(), str(value).lower())
        else:
            value = int(value)
        out[name] = value
    return out


def check_instance(identity_id: str, params: dict) -> InstanceResult:
    """Evaluate both sides of one identity instance and compare them exactly."""
    ident = get_identity(identity_id)
    params = _normalize(ident, params)
    violation = ident.domain(params)
    if violation is not None:
        raise UsageError(f"{identity_id}: domain constraint violated: {violation}")
    lhs = ident.lhs(params)
    rhs = ident.rhs(params)
    return InstanceResult(identity_id, params, render(lhs), render(rhs), lhs == rhs)


# q-identity -> (integer identity, parameter map) for the q = 1 limit
_LIMITS: dict[str, tuple[str, Callable[[dict], dict]]] = {
    "cor4_1": ("cor4_5", dict),
    "cor4_2": ("cor4_6", dict),
    "cor4_3": ("eq4_1", dict),
    "cor4_4": ("eq4_2", dict),
    "qvandermonde": ("vandermonde", dict),
    "qvandermonde_h": (
        "vandermonde_h",
        lambda p: {"n": p["n"] + 1, "k": p["k"], "composition": (p["t"], p["n"] + 1 - p["t"])},
    ),
}


def limit_counterpart(identity_id: str, params: dict) -> tuple[str, dict, bool]:
    """Compare a q-identity instance at q = 1 with its integer counterpart.

    Returns ``(integer_id, integer_params, ok)`` where ``ok`` means both
    sides evaluated at one agree with the corresponding integer sides.
    """
    if identity_id not in _LIMITS:
        raise UsageError(f"{identity_id} has no q = 1 counterpart")
    ident = get_identity(identity_id)
    params = _normalize(ident, params)
    int_id, mapping = _LIMITS[identity_id]
    int_ident = get_identity(int_id)
    int_params = _normalize(int_ident, mapping(params))
    ok = (
        eval_at_one(ident.lhs(params)) == int_ident.lhs(int_params)
        and eval_at_one(ident.rhs(params)) == int_ident.rhs(int_params)
    )
    return int_id, int_params, ok


Q_IDENTITIES: tuple[str, ...] = tuple(_LIMITS)
