"""Command-line interface: ``symconv compute | enumerate | verify``.

Exit status is 0 on success (every identity held), 1 when a counterexample
was found and 2 for usage or domain errors.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
from dataclasses import replace

from . import special
from .enumeration import all_compositions, bounded_compositions, compositions, partitions_bounded_length
from .errors import UsageError
from .grid import CompositionPolicy
from .identities import IDENTITY_IDS, REGISTRY, format_params, get_identity, list_identities
from .ring import render, symbolic_variables
from .runner import run_grid
from .symfun import SymKind, symmetric

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2
FORMAT_ENV = "SYMCONV_FORMAT"
FORMATS = ("text", "json", "csv")

SYMBOLIC_MAX = 8
# upper limits accepted for grid overrides
OVERRIDE_CAPS = {"n": 40, "k": 60, "m": 8, "p": 20, "r": 20, "t": 40}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def parse_values(spec: str) -> list:
    """``1,2,3`` | ``q-powers:n`` | ``symbolic:n`` -> list of ring elements."""
    spec = spec.strip()
    for prefix in ("q-powers:", "symbolic:"):
        if spec.startswith(prefix):
            try:
                n = int(spec[len(prefix):])
            except ValueError:
                raise UsageError(f"bad count in {spec!r}") from None
            if n < 0:
                raise UsageError("value count must be nonnegative")
            if prefix == "q-powers:":
                return special.q_powers(n)
            if n > SYMBOLIC_MAX:
                raise UsageError(f"symbolic:n is limited to n <= {SYMBOLIC_MAX}")
            return symbolic_variables(n)
    if not spec:
        return []
    return _int_list(spec)


# -- output ------------------------------------------------------------------


def _emit_value(fmt: str, subject: str, params: dict, value) -> str:
    text = render(value)
    if fmt == "json":
        return json.dumps({"subject": subject, "params": params, "value": text})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["subject", *params, "value"])
        w.writerow([subject, *params.values(), text])
        return buf.getvalue().rstrip("\n")
    return text


# -- subcommands -------------------------------------------------------------


def cmd_compute(args) -> int:
    s = args.subject
    if s == "symfun":
        kind = SymKind.parse(args.kind)
        vals = parse_values(args.values)
        value = symmetric(kind, args.k, vals)
        params = {"kind": kind.value, "k": args.k, "values": args.values}
    elif s == "rstirling":
        fn = {"1": special.r_stirling_first, "2": special.r_stirling_second}.get(args.kind)
        if fn is None:
            raise UsageError("--kind must be 1 or 2")
        if args.r < 1:
            raise UsageError("--r must be positive")
        value = fn(args.n, args.k, args.r)
        params = {"kind": args.kind, "n": args.n, "k": args.k, "r": args.r}
    elif s == "rwhitney":
        fn = {"1": special.r_whitney_first, "2": special.r_whitney_second}.get(args.kind)
        if fn is None:
            raise UsageError("--kind must be 1 or 2")
        if args.p < 1 or args.r < 1:
            raise UsageError("--p and --r must be positive")
        value = fn(args.p, args.r, args.n, args.k)
        params = {"kind": args.kind, "p": args.p, "r": args.r, "n": args.n, "k": args.k}
    elif s == "qbinom":
        value = special.q_binomial(args.n, args.k)
        params = {"n": args.n, "k": args.k}
    elif s == "binom":
        value = special.binomial(args.n, args.k)
        params = {"n": args.n, "k": args.k}
    elif s == "pochhammer":
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        value = special.q_pochhammer(args.n)
        params = {"n": args.n}
    else:  # falling
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        value = special.falling_factorial(args.n)
        params = {"n": args.n}
    print(_emit_value(args.format, s, params, value))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    s = args.subject
    if s == "compositions":
        if args.n < 1:
            raise UsageError("--n must be positive")
        stream = compositions(args.n, args.m) if args.m is not None else all_compositions(args.n)
        rows = [list(c.parts) for c in stream]
    elif s == "bounded":
        bounds = _int_list(args.bounds)
        if not bounds or min(bounds) < 1:
            raise UsageError("--bounds needs at least one entry, all >= 1")
        rows = [list(t) for t in bounded_compositions(args.k, bounds)]
    else:
        maxlen = args.maxlen if args.maxlen is not None else args.k
        rows = [list(p.parts) for p in partitions_bounded_length(args.k, maxlen)]

    if args.format == "json":
        print(json.dumps(rows))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["index", "parts"])
        for i, row in enumerate(rows):
            w.writerow([i, "+".join(map(str, row))])
    else:
        for row in rows:
            print(json.dumps(row))
    return EXIT_OK


def _load_config(path: str | None) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser()
    if path:
        if not os.path.exists(path):
            raise UsageError(f"config file {path!r} not found")
        try:
            cfg.read(path)
        except configparser.Error as exc:
            raise UsageError(f"cannot parse config file: {exc}") from None
    return cfg


def _config_int(cfg, section: str, key: str) -> int | None:
    for sec in (section, "verify"):
        if cfg.has_option(sec, key):
            try:
                return cfg.getint(sec, key)
            except ValueError:
                raise UsageError(f"config [{sec}] {key} must be an integer") from None
    return None


def _grid_for(ident, args, cfg):
    grid = ident.default_grid
    for name in OVERRIDE_CAPS:
        flag = getattr(args, f"{name}_max")
        value = flag if flag is not None else _config_int(cfg, ident.id, f"{name}_max")
        if value is None:
            continue
        target = name
        if name not in grid.ranges:
            if name == "m" and "parts" in grid.ranges:
                target = "parts"
            else:
                continue
        cap = OVERRIDE_CAPS[name]
        if ident.symbolic and name == "n":
            cap = SYMBOLIC_MAX
        if not 0 <= value <= cap:
            raise UsageError(f"--{name}-max for {ident.id} must be within 0..{cap}")
        grid = grid.with_range(target, hi=value)
    policy = args.compositions
    if policy is None:
        for sec in (ident.id, "verify"):
            if cfg.has_option(sec, "compositions"):
                policy = cfg.get(sec, "compositions")
                break
    if policy is not None:
        grid = replace(grid, compositions=CompositionPolicy.parse(policy))
    return grid


def _selected_ids(ids: list[str]) -> list[str]:
    if not ids or ids == ["all"]:
        return list(IDENTITY_IDS)
    out = []
    for i in ids:
        if i == "all":
            out.extend(IDENTITY_IDS)
        else:
            get_identity(i)
            out.append(i)
    return list(dict.fromkeys(out))


def cmd_verify(args, cfg) -> int:
    if args.list:
        rows = list_identities()
        if args.format == "json":
            print(json.dumps([
                {"identity": i, "signature": list(sig), "formula": f, "constraints": c}
                for i, sig, f, c in rows
            ], indent=1))
        else:
            for i, sig, f, c in rows:
                print(f"{i:18} ({', '.join(sig)})  {f}  [{c}]")
        return EXIT_OK

    ids = _selected_ids(args.ids)
    grids = {i: _grid_for(REGISTRY[i], args, cfg) for i in ids}

    if args.show_grids:
        described = {i: g.describe(REGISTRY[i].loops) for i, g in grids.items()}
        if args.format == "json":
            print(json.dumps(described, indent=1))
        else:
            for i, d in described.items():
                print(f"{i:18} {json.dumps(d)}")
        return EXIT_OK

    workers = args.workers
    if workers is None:
        workers = _config_int(cfg, "verify", "workers") or 1
    if workers < 1:
        raise UsageError("--workers must be positive")

    keep = args.format == "csv"
    reports = [run_grid(i, grids[i], workers=workers, keep_instances=keep) for i in ids]

    if args.format == "json":
        print(json.dumps([r.to_dict(timing=not args.no_timing) for r in reports], indent=1))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["identity", "params", "lhs", "rhs", "equal"])
        for r in reports:
            for res in r.instances:
                w.writerow([r.identity, format_params(res.params), res.lhs, res.rhs, str(res.equal).lower()])
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            timing = "" if args.no_timing else f"  ({r.millis} ms)"
            print(f"{status} {r.identity:18} checked={r.checked} failed={r.failed}{timing}")
            for f in r.failures:
                print(f"    {format_params(f.params)}: lhs = {f.lhs} ; rhs = {f.rhs}")
        total = sum(r.checked for r in reports)
        bad = sum(r.failed for r in reports)
        print(f"{len(reports)} identities, {total} instances, {bad} failures")

    return EXIT_OK if all(r.passed for r in reports) else EXIT_COUNTEREXAMPLE


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None,
                        help=f"output format (default: ${FORMAT_ENV} or text)")
    common.add_argument("--config", default=None, help="INI file with grid overrides")

    parser = _Parser(prog="symconv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    comp = sub.add_parser("compute", help="compute a single value")
    csub = comp.add_subparsers(dest="subject", required=True, parser_class=_Parser)
    p = csub.add_parser("symfun", parents=[common], help="e_k or h_k of a value list")
    p.add_argument("--kind", required=True, help="e or h")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--values", required=True, help="1,2,3 | q-powers:n | symbolic:n")
    p = csub.add_parser("rstirling", parents=[common], help="r-Stirling numbers")
    p.add_argument("--kind", required=True, choices=("1", "2"))
    for name in ("n", "k", "r"):
        p.add_argument(f"--{name}", type=int, required=True)
    p = csub.add_parser("rwhitney", parents=[common], help="r-Whitney numbers")
    p.add_argument("--kind", required=True, choices=("1", "2"))
    for name in ("p", "r", "n", "k"):
        p.add_argument(f"--{name}", type=int, required=True)
    for name, helptext in (("qbinom", "Gaussian binomial [n,k]_q"), ("binom", "binomial C(n,k)")):
        p = csub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
    for name, helptext in (("pochhammer", "(q;q)_n"), ("falling", "falling factorial (x)_n")):
        p = csub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--n", type=int, required=True)

    enum = sub.add_parser("enumerate", help="list compositions or partitions")
    esub = enum.add_subparsers(dest="subject", required=True, parser_class=_Parser)
    p = esub.add_parser("compositions", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="exact number of parts (default: any)")
    p = esub.add_parser("bounded", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bounds", required=True, help="comma-separated upper bounds")
    p = esub.add_parser("partitions", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--maxlen", type=int, default=None)

    ver = sub.add_parser("verify", parents=[common], help="check identities over parameter grids")
    ver.add_argument("ids", nargs="*", help="identity ids or 'all' (default)")
    for name in OVERRIDE_CAPS:
        ver.add_argument(f"--{name}-max", type=int, default=None, dest=f"{name}_max")
    ver.add_argument("--compositions", default=None, help="all | first:N | explicit:2+1;3")
    ver.add_argument("--workers", type=int, default=None)
    ver.add_argument("--show-grids", action="store_true")
    ver.add_argument("--list", action="store_true", help="list registered identities")
    ver.add_argument("--no-timing", action="store_true", help="omit wall-clock times")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _load_config(getattr(args, "config", None))
        if args.format is None:
            args.format = cfg.get("verify", "format", fallback=None) or os.environ.get(FORMAT_ENV, "text")
        if args.format not in FORMATS:
            raise UsageError(f"unknown output format {args.format!r}")
        if args.command == "compute":
            return cmd_compute(args)
        if args.command == "enumerate":
            return cmd_enumerate(args)
        return cmd_verify(args, cfg)
    except UsageError as exc:
        print(f"symconv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
