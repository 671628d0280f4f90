import pytest

import symconv.identities as identities_mod
import symconv.symfun as symfun_mod
from symconv._hooks import mutate
from symconv.errors import UsageError
from symconv.grid import CompositionPolicy, ParameterGrid
from symconv.identities import (
    IDENTITY_IDS,
    Q_IDENTITIES,
    REGISTRY,
    check_instance,
    format_params,
    get_identity,
    limit_counterpart,
    list_identities,
)
from symconv.runner import run_grid

from .oracles import r_stirling1_rec, r_stirling2_rec


def test_listing():
    rows = list_identities()
    assert len(rows) == len(IDENTITY_IDS) == 29
    ids = [r[0] for r in rows]
    assert ids[0] == "thm1" and "eq1_2" in ids and "cor4_8" in ids
    thm1 = dict((r[0], r[1]) for r in rows)["thm1"]
    assert thm1 == ("kind", "n", "k", "composition")
    constraints = {r[0]: r[3] for r in rows}
    assert "r" in constraints["eq1_3"] and "t" in constraints["eq1_3"]
    with pytest.raises(UsageError, match="valid ids"):
        get_identity("nosuch")


def test_check_instance_examples():
    res = check_instance("eq1_2", {"r": 1, "t": 2, "k": 2, "n": 3})
    assert res.lhs == res.rhs == "3" and res.equal
    # direct oracle: [3, 2]_1 via the classical recurrence
    assert int(res.rhs) == r_stirling1_rec(3, 2, 1)
    res = check_instance("thm1", {"kind": "e", "n": 5, "k": 3, "composition": [2, 1, 2]})
    assert res.equal and res.lhs.startswith("x1*x2*x3")
    res = check_instance("qvandermonde", {"n": 2, "t": 1, "k": 1})
    assert res.lhs == res.rhs == "1 + q"
    res = check_instance("eq1_3", {"r": 1, "t": 2, "k": 2, "n": 4})
    assert res.equal and int(res.lhs) == r_stirling2_rec(4, 2, 1)


def test_domain_violation():
    with pytest.raises(UsageError, match="domain constraint violated"):
        check_instance("eq1_2", {"r": 2, "t": 2, "k": 3, "n": 4})
    with pytest.raises(UsageError, match="domain constraint violated"):
        check_instance("thm1", {"kind": "e", "n": 5, "k": 3, "composition": [2, 2]})
    with pytest.raises(UsageError, match="missing parameter"):
        check_instance("vandermonde", {"n": 3})


def test_format_params():
    assert format_params({"n": 5, "k": 3, "composition": (2, 1, 2)}) == "n=5;k=3;composition=2+1+2"


@pytest.mark.parametrize("identity_id", IDENTITY_IDS)
def test_sides_are_independent(identity_id, monkeypatch):
    # the direct side must not route through the summation hook
    ident = REGISTRY[identity_id]
    params = next(ident.points())

    def boom(_):
        raise RuntimeError("convolution path used")

    monkeypatch.setattr(symfun_mod, "accumulate", boom)
    monkeypatch.setattr(identities_mod, "accumulate", boom)
    ident.side(ident.direct_side, params)
    with pytest.raises(RuntimeError):
        ident.side(ident.convolution_side, params)


@pytest.mark.parametrize("identity_id", IDENTITY_IDS)
def test_instance_equality_is_string_equality(identity_id):
    for params in list(REGISTRY[identity_id].points())[:25]:
        res = check_instance(identity_id, params)
        assert res.equal == (res.lhs == res.rhs) and res.equal


@pytest.mark.parametrize("identity_id", Q_IDENTITIES)
def test_limit_counterparts(identity_id):
    for params in REGISTRY[identity_id].points():
        int_id, _, ok = limit_counterpart(identity_id, params)
        assert ok, (identity_id, params)
        assert int_id in REGISTRY
    with pytest.raises(UsageError):
        limit_counterpart("thm1", {"kind": "e", "n": 1, "k": 0, "composition": [1]})


def test_cor4_7_matches_eq4_1_totals():
    for n in range(1, 6):
        for m in range(1, 5):
            for k in range(1, 7):
                p = {"n": n, "m": m, "k": k}
                a = check_instance("cor4_7", p)
                b = check_instance("eq4_1", p)
                assert a.lhs == b.lhs == b.rhs


def test_run_grid_examples():
    ident = get_identity("cor1_2")
    rep = run_grid("cor1_2", ident.default_grid.with_range("n", hi=5))
    assert rep.checked == 15 and rep.passed
    assert run_grid("cor3_3").passed
    empty = run_grid("vandermonde", get_identity("vandermonde").default_grid.with_range("n", hi=-1))
    assert empty.checked == 0 and empty.passed and empty.failures == []


def test_run_grid_reports_grid_and_json():
    rep = run_grid("eq1_2")
    d = rep.to_dict(timing=False)
    assert set(d) == {"identity", "grid", "checked", "failed", "failures"}
    assert d["checked"] == 330 and "millis" in rep.to_dict()


def test_failure_cap_and_mutation():
    with mutate("sign"):
        rep = run_grid("vandermonde", failure_cap=3)
    assert rep.failed > 3 and len(rep.failures) == 3
    assert not rep.failures[0].equal


def test_first_policy():
    base = get_identity("thm1").default_grid
    grid = ParameterGrid(base.ranges, kinds=("e",), compositions=CompositionPolicy.parse("first:1"))
    rep = run_grid("thm1", grid, keep_instances=True)
    # one composition per n: sum over n of (n + 1) values of k
    assert rep.checked == sum(n + 1 for n in range(1, 7))
    # lexicographically first composition of n is all ones
    assert all(r.params["composition"] == (1,) * r.params["n"] for r in rep.instances)


def test_bad_workers():
    with pytest.raises(UsageError):
        run_grid("eq1_2", workers=0)
