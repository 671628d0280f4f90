"""Acceptance gate: one group of tests per criterion, summarized at the end of the run."""

import json
import random
import time
from contextlib import redirect_stdout
from io import StringIO

import pytest

from symconv._hooks import mutate
from symconv.cli import main
from symconv.enumeration import bounded_compositions, multinomial_partition_coeff, partitions_bounded_length
from symconv.identities import IDENTITY_IDS, Q_IDENTITIES, REGISTRY, limit_counterpart
from symconv.ring import symbolic_variables
from symconv.runner import run_grid
from symconv.special import q_powers, r_stirling_first, r_stirling_second, r_whitney_first, r_whitney_second, whitney_defining_check
from symconv.symfun import complete, complete_bruteforce, elementary, elementary_bruteforce, theorem1_rhs

from .oracles import esym, hsym

criterion = pytest.mark.criterion


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def _verify_json(*argv):
    buf = StringIO()
    with redirect_stdout(buf):
        code = main(["verify", *argv, "--format", "json", "--no-timing"])
    return code, json.loads(buf.getvalue())


# -- 1 -----------------------------------------------------------------------


@criterion(1, "block convolution symbolic sweep, n <= 6")
def test_theorem1_sweep():
    rep, secs = _timed(lambda: run_grid("thm1", workers=1))
    expected = 2 * sum(2 ** (n - 1) * (n + 1) for n in range(1, 7))
    print(f"thm1: {rep.checked} instances, {rep.failed} failures, {secs:.1f} s")
    assert rep.checked == expected == 768
    assert rep.failed == 0
    assert secs < 60


# -- 2 -----------------------------------------------------------------------


@criterion(2, "DP vs brute-force enumeration, n <= 7, k <= 9")
def test_oracle_equivalence():
    rng = random.Random(20240611)

    def sweep():
        count = 0
        for n in range(0, 8):
            seqs = [[rng.randint(-2, 3) for _ in range(n)] for _ in range(50)]
            seqs.append(q_powers(n))
            for vals in seqs:
                for k in range(0, 10):
                    e, h = elementary(k, vals), complete(k, vals)
                    assert e == elementary_bruteforce(k, vals) == esym(k, vals)
                    assert h == complete_bruteforce(k, vals) == hsym(k, vals)
                    count += 1
        return count

    count, secs = _timed(sweep)
    print(f"oracle equivalence: {count} (sequence, k) pairs, {secs:.1f} s")
    assert secs < 30


# -- 3 -----------------------------------------------------------------------


@criterion(3, "worked examples: five summands, coefficients 3, 6, 3, 3")
def test_five_summand_structure():
    tuples = list(bounded_compositions(3, (2, 1, 2)))
    # degree taken from blocks {x1,x2}, {x3}, {x4,x5} in each listed summand
    listed = {(0, 1, 2), (1, 0, 2), (1, 1, 1), (2, 0, 1), (2, 1, 0)}
    assert len(tuples) == 5 and set(tuples) == listed
    xs = symbolic_variables(5)
    assert theorem1_rhs("e", 3, (2, 1, 2), xs) == elementary(3, xs)


@criterion(3, "worked examples: five summands, coefficients 3, 6, 3, 3")
def test_multinomial_coefficients():
    lams = {p.parts: multinomial_partition_coeff(3, p) for p in partitions_bounded_length(4, 3)}
    assert lams == {(2, 1, 1): 3, (3, 1): 6, (2, 2): 3, (4,): 3}


# -- 4 -----------------------------------------------------------------------


@criterion(4, "r-Stirling convolutions for 1 <= r < t <= k < n <= 10")
@pytest.mark.parametrize("identity_id", ["eq1_2", "eq1_3"])
def test_rstirling_convolutions(identity_id):
    rep, secs = _timed(lambda: run_grid(identity_id))
    expected = sum(
        1 for n in range(2, 11) for k in range(1, n) for t in range(2, k + 1) for r in range(1, t)
    )
    print(f"{identity_id}: {rep.checked} instances, {secs:.1f} s")
    assert rep.checked == expected and rep.failed == 0
    assert secs < 10


# -- 5 -----------------------------------------------------------------------

WHITNEY_IDS = ["cor3_1", "cor3_2", "cor3_3", "cor3_4", "cor3_5", "cor3_6",
               "rstirling_block_1", "rstirling_block_2"]


@criterion(5, "r-Whitney suite, p = 1 reduction, defining relations")
def test_whitney_suite():
    def sweep():
        reports = [run_grid(i) for i in WHITNEY_IDS]
        for p in range(1, 5):
            for r in range(1, 5):
                for n in range(0, 9):
                    assert whitney_defining_check(p, r, n), (p, r, n)
        for r in range(1, 5):
            for n in range(0, 9):
                for k in range(0, n + 1):
                    assert r_whitney_second(1, r, n, k) == r_stirling_second(n + r, k + r, r)
                    assert (-1) ** (n - k) * r_whitney_first(1, r, n, k) == r_stirling_first(n + r, k + r, r)
        return reports

    reports, secs = _timed(sweep)
    for rep in reports:
        print(f"{rep.identity}: {rep.checked} instances, {rep.failed} failures")
        assert rep.checked > 0 and rep.failed == 0
    assert secs < 120


# -- 6 -----------------------------------------------------------------------

Q_INT_IDS = ["cor4_5", "cor4_6", "cor4_7", "cor4_8", "eq4_1", "eq4_2", "vandermonde", "vandermonde_h"]


@criterion(6, "q-suite, integer counterparts, q = 1 limits")
def test_q_suite():
    def sweep():
        reports = [run_grid(i) for i in (*Q_IDENTITIES, *Q_INT_IDS)]
        limits = 0
        for qid in Q_IDENTITIES:
            for params in REGISTRY[qid].points():
                _, _, ok = limit_counterpart(qid, params)
                assert ok, (qid, params)
                limits += 1
        return reports, limits

    (reports, limits), secs = _timed(sweep)
    for rep in reports:
        print(f"{rep.identity}: {rep.checked} instances, {rep.failed} failures")
        assert rep.checked > 0 and rep.failed == 0
    print(f"q = 1 limits checked: {limits}")
    assert secs < 120


# -- 7 -----------------------------------------------------------------------


@criterion(7, "mutation hook yields counterexamples and exit 1 on every identity")
@pytest.mark.parametrize("mode", ["sign", "exponent"])
def test_mutation_detected(mode):
    ids = IDENTITY_IDS if mode == "sign" else Q_IDENTITIES
    for identity_id in ids:
        with mutate(mode):
            code, reports = _verify_json(identity_id, "--workers", "1")
        assert code == 1, identity_id
        assert reports[0]["failed"] >= 1 and reports[0]["failures"], identity_id
    print(f"{mode}: {len(ids)} identities caught")


# -- 8 -----------------------------------------------------------------------


@criterion(8, "verify all: identical JSON for 1 and 4 workers")
def test_determinism():
    code1, one = _verify_json("all", "--workers", "1")
    code4, four = _verify_json("all", "--workers", "4")
    assert code1 == code4 == 0
    assert json.dumps(one, sort_keys=False) == json.dumps(four, sort_keys=False)
    assert len(one) == len(IDENTITY_IDS)
