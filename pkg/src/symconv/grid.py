"""Parameter grids: inclusive integer ranges whose bounds may depend on earlier parameters."""

from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass, field, replace
from typing import Iterator, Union

from .enumeration import all_compositions
from .errors import UsageError

Bound = Union[int, str]

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
}
_FUNCS = {"min": min, "max": max}


def eval_bound(bound: Bound, env: dict) -> int:
    """Evaluate an int or a small arithmetic expression like ``"n+2"`` or ``"min(k, n-1)"``."""
    if isinstance(bound, int):
        return bound
    try:
        tree = ast.parse(str(bound), mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"bad bound expression {bound!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise UsageError(f"bound {bound!r} refers to unknown parameter {node.id!r}")
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        raise UsageError(f"unsupported syntax in bound {bound!r}")

    return ev(tree)


@dataclass(frozen=True)
class CompositionPolicy:
    """Which compositions a composition-valued parameter ranges over."""

    mode: str = "all"  # all | first | explicit
    first: int = 0
    explicit: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "CompositionPolicy":
        text = text.strip()
        if text == "all":
            return cls()
        if text.startswith("first:"):
            try:
                count = int(text[6:])
            except ValueError:
                raise UsageError(f"bad composition policy {text!r}") from None
            if count < 1:
                raise UsageError("first:N needs N >= 1")
            return cls("first", first=count)
        if text.startswith("explicit:"):
            try:
                comps = tuple(
                    tuple(int(p) for p in chunk.split("+"))
                    for chunk in text[9:].split(";")
                    if chunk
                )
            except ValueError:
                raise UsageError(f"bad composition list in {text!r}") from None
            if not comps or any(not c or min(c) < 1 for c in comps):
                raise UsageError(f"bad composition list in {text!r}")
            return cls("explicit", explicit=comps)
        raise UsageError(f"unknown composition policy {text!r} (all, first:N, explicit:2+1;3)")

    def describe(self):
        if self.mode == "all":
            return "all"
        if self.mode == "first":
            return f"first:{self.first}"
        return "explicit:" + ";".join("+".join(map(str, c)) for c in self.explicit)

    def select(self, total: int, min_parts: int, max_parts: int) -> Iterator[tuple[int, ...]]:
        if self.mode == "explicit":
            for c in self.explicit:
                if sum(c) == total and min_parts <= len(c) <= max_parts:
                    yield c
            return
        stream = (
            c.parts
            for c in all_compositions(total, max_parts)
            if len(c.parts) >= min_parts
        )
        if self.mode == "first":
            stream = itertools.islice(stream, self.first)
        yield from stream


@dataclass(frozen=True)
class ParameterGrid:
    """Inclusive ranges per parameter plus kind and composition policies.

    ``ranges`` maps a parameter name to ``(lo, hi)``; either end can be an
    expression over parameters that come earlier in the identity's loop order.
    The special range ``parts`` bounds the number of parts of a composition.
    """

    ranges: dict = field(default_factory=dict)
    kinds: tuple[str, ...] = ("e", "h")
    compositions: CompositionPolicy = CompositionPolicy()

    def with_range(self, name: str, lo: Bound | None = None, hi: Bound | None = None) -> "ParameterGrid":
        old_lo, old_hi = self.ranges.get(name, (None, None))
        ranges = dict(self.ranges)
        ranges[name] = (old_lo if lo is None else lo, old_hi if hi is None else hi)
        return replace(self, ranges=ranges)

    def describe(self, loops: tuple[str, ...]) -> dict:
        out: dict = {}
        for name in loops:
            if name == "kind":
                out["kind"] = list(self.kinds)
            elif name == "composition":
                out["composition"] = self.compositions.describe()
                if "parts" in self.ranges:
                    out["parts"] = list(self.ranges["parts"])
            else:
                out[name] = list(self.ranges[name])
        return out

    def points(self, loops: tuple[str, ...], composition_total: Bound | None) -> Iterator[dict]:
        """All parameter assignments in canonical (nested-loop) order."""

        def rec(i: int, env: dict):
            if i == len(loops):
                yield dict(env)
                return
            name = loops[i]
            if name == "kind":
                for kind in self.kinds:
                    env["kind"] = kind
                    yield from rec(i + 1, env)
                env.pop("kind", None)
                return
            if name == "composition":
                total = eval_bound(composition_total, env)
                lo, hi = self.ranges.get("parts", (1, max(total, 1)))
                lo, hi = eval_bound(lo, env), eval_bound(hi, env)
                for comp in self.compositions.select(total, lo, hi):
                    env["composition"] = comp
                    yield from rec(i + 1, env)
                env.pop("composition", None)
                return
            if name not in self.ranges:
                raise UsageError(f"grid has no range for parameter {name!r}")
            lo, hi = self.ranges[name]
            for v in range(eval_bound(lo, env), eval_bound(hi, env) + 1):
                env[name] = v
                yield from rec(i + 1, env)
            env.pop(name, None)

        yield from rec(0, {})
