import pytest
from hypothesis import given, strategies as st

from qcluster.qlaurent import NotDivisible, QLaurent

q = QLaurent.q_power


def poly(d):
    return QLaurent(d)


laurents = st.dictionaries(st.integers(-8, 8), st.integers(-30, 30),
                           max_size=6).map(QLaurent)
nonzero_laurents = laurents.filter(lambda x: not x.is_zero())


def test_additive_identity():
    x = q(2) + q(-2)
    assert x + QLaurent.zero() == x


def test_doubling():
    assert q(1) + q(1) == QLaurent({1: 2})


def test_cancellation():
    x = q(2) - q(-2)
    y = q(-2) - q(2)
    assert (x + y).is_zero()


def test_inverse_pair():
    assert q(1) * q(-1) == QLaurent.one()


def test_quantum_two_squared():
    two = QLaurent.quantum_integer(2)
    assert two == q(2) + q(-2)
    assert (two * two).terms == {4: 1, 0: 2, -4: 1}


def test_quantum_integer_identity():
    three = QLaurent.quantum_integer(3)
    assert three.terms == {4: 1, 0: 1, -4: 1}
    lhs = (q(2) - q(-2)) * three
    assert lhs == q(6) - q(-6)


def test_exact_div_quotient():
    a = q(4) - q(-4)           # q^2 - q^-2
    b = q(2) - q(-2)           # q - q^-1
    assert a.exact_div(b) == q(2) + q(-2)


def test_self_division():
    x = poly({3: 2, -1: 5, 0: -7})
    assert x.exact_div(x) == QLaurent.one()


def test_not_divisible():
    with pytest.raises(NotDivisible):
        (q(2) + QLaurent.one()).exact_div(q(2) - QLaurent.one())


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QLaurent.one().exact_div(QLaurent.zero())


def test_bar_examples():
    assert q(1).bar() == q(-1)
    two = QLaurent.quantum_integer(2)
    assert two.bar() == two
    assert QLaurent.zero().is_positive()
    assert two.is_positive()
    assert not (q(2) - q(-2)).is_positive()


def test_json_round_trip():
    x = poly({3: -2, 0: 11, -5: 1})
    assert QLaurent.from_json(x.to_json()) == x
    assert x.to_json() == {"-5": "1", "0": "11", "3": "-2"}


def test_str_rendering():
    assert str(QLaurent.zero()) == "0"
    assert str(q(1)) == "q^{1/2}"
    assert str(q(2) - q(-2)) == "q - q^-1"


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(laurents, nonzero_laurents)
def test_exact_div_round_trip(a, b):
    assert (a * b).exact_div(b) == a


@given(laurents, laurents)
def test_bar_is_a_ring_map(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(laurents)
def test_bar_involution(a):
    assert a.bar().bar() == a
