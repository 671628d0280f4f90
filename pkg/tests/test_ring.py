import pytest
from hypothesis import given, settings, strategies as st

from symconv.errors import ConsistencyError, UsageError
from symconv.ring import (
    MPoly,
    UPoly,
    eval_at_one,
    parse_mpoly,
    parse_upoly,
    ring_add,
    ring_mul,
    substitute_variables,
    symbolic_variables,
)
from symconv.symfun import elementary

from .oracles import esym, poly_mul, trim

q = UPoly.monomial(1)
x1, x2, x3 = symbolic_variables(3)

coeff = st.integers(-5, 5)
upolys = st.dictionaries(st.integers(0, 6), coeff, max_size=5).map(UPoly)
mpolys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), coeff, max_size=5
).map(lambda t: MPoly(t, 3))
ints = st.integers(-10**20, 10**20)


# -- examples ----------------------------------------------------------------


def test_add_examples():
    p = 1 + 2 * q**2
    assert ring_add(UPoly(), p) == p
    assert ring_add(1 + q, 1 - q) == 2
    assert str((1 + q) + (1 - q)) == "2"
    x1x2 = MPoly.variable(1, 2) * MPoly.variable(2, 2)
    assert str(ring_add(x1x2, x1x2)) == "2*x1*x2"


def test_mul_examples():
    p = 3 + q**3
    assert ring_mul(UPoly.constant(1), p) == p
    assert str(ring_mul(1 + q, 1 + q)) == "1 + 2*q + q^2"
    lhs = ring_mul(1 - q, 1 - q**2)
    # dense brute-force product of coefficient lists
    assert lhs.coefficient_list() == trim(poly_mul([1, -1], [1, 0, -1]))
    assert str(lhs) == "1 - q - q^2 + q^3"


def test_mixed_rings_rejected():
    with pytest.raises(UsageError):
        ring_add(q, UPoly.monomial(1, var="x"))
    with pytest.raises(UsageError):
        ring_mul(q, x1)
    with pytest.raises(UsageError):
        ring_add(3, q)
    with pytest.raises(UsageError):
        x1 + MPoly.variable(1, 2)


def test_integers_are_unbounded():
    big = 2**200 + 1
    assert ring_mul(big, big) == 2**400 + 2**201 + 1
    assert str(UPoly.constant(big) * q) == f"{big}*q"


def test_canonical_zero():
    assert UPoly({3: 0}) == UPoly()
    assert str(UPoly()) == "0"
    assert str(x1 - x1) == "0"
    assert (q - q) == 0 and hash(q - q) == hash(0)


def test_negative_exponents_not_representable():
    with pytest.raises(UsageError):
        UPoly({-1: 1})
    with pytest.raises(ConsistencyError):
        (1 + q).shift(-1)
    assert (q**2 + q**3).shift(-2) == 1 + q


def test_exact_division():
    a = (1 + q + q**2) * (1 - q**3)
    assert a.exact_div(1 - q**3) == 1 + q + q**2
    with pytest.raises(ConsistencyError):
        (1 + q**2).exact_div(1 + q)


def test_substitute_examples():
    p = x1 + x2
    squares = substitute_variables(p, {1: x1 * x1, 2: x2 * x2})
    assert str(squares) == "x1^2 + x2^2"
    assert substitute_variables(x1 * x2, {"x1": 1, "x2": q}) == q
    e2 = elementary(2, [x1, x2, x3])
    image = substitute_variables(e2, {1: 1, 2: q, 3: q**2})
    assert image == esym(2, [UPoly.constant(1), q, q**2])
    assert str(image) == "q + q^2 + q^3"


def test_substitute_missing_image():
    with pytest.raises(UsageError):
        substitute_variables(x1 * x3, {1: 2})
    with pytest.raises(UsageError):
        substitute_variables(x1 + x2, {1: q, 2: UPoly.monomial(1, var="x")})


def test_eval_at_one_examples():
    assert eval_at_one(1 + q + 2 * q**2 + q**3 + q**4) == 6
    assert eval_at_one(UPoly()) == 0
    assert eval_at_one(UPoly.constant(-7)) == -7


def test_rendering():
    assert str(-q + 3 * q**4) == "-q + 3*q^4"
    assert str(UPoly({0: -1, 2: -2})) == "-1 - 2*q^2"
    assert str(x1**2 + x1 * x2 + x2**2 + 1) == "1 + x1^2 + x1*x2 + x2^2"
    assert str(MPoly({(1, 0, 2): -3}, 3)) == "-3*x1*x3^2"


def test_parse_examples():
    assert parse_upoly("1 + q + 2*q^2") == 1 + q + 2 * q**2
    assert parse_upoly("-x + x^3", var="x") == UPoly({1: -1, 3: 1}, var="x")
    assert parse_mpoly("x1^2*x3 - 2*x2", arity=3) == x1**2 * x3 - 2 * x2
    with pytest.raises(UsageError):
        parse_upoly("1 + z")


# -- properties --------------------------------------------------------------


@pytest.mark.parametrize("elements", [ints, upolys, mpolys], ids=["int", "upoly", "mpoly"])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_axioms(elements, data):
    a, b, c = (data.draw(elements) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a and a * 1 == a
    assert a + (-a) == 0


@settings(max_examples=60, deadline=None)
@given(mpolys, mpolys, upolys, upolys, upolys)
def test_substitution_is_homomorphism(a, b, i1, i2, i3):
    images = {1: i1, 2: i2, 3: i3}
    sub = lambda p: substitute_variables(p, images)  # noqa: E731
    assert sub(a + b) == sub(a) + sub(b)
    assert sub(a * b) == sub(a) * sub(b)


@settings(max_examples=100, deadline=None)
@given(upolys, upolys)
def test_eval_at_one_multiplicative(a, b):
    assert eval_at_one(a * b) == eval_at_one(a) * eval_at_one(b)
    assert eval_at_one(a) == a(1)


@settings(max_examples=100, deadline=None)
@given(upolys, mpolys)
def test_render_parse_round_trip(u, m):
    assert parse_upoly(str(u)) == u
    assert str(parse_upoly(str(u))) == str(u)
    assert parse_mpoly(str(m), arity=3) == m
    assert str(parse_mpoly(str(m), arity=3)) == str(m)
