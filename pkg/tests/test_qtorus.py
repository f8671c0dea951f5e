import pytest
from hypothesis import given, settings, strategies as st

from qcluster.qlaurent import NotDivisible, QLaurent
from qcluster.qtorus import SkewForm, TorusElement, left_divide, monomial, weyl

q = QLaurent.q_power


def form(*rows):
    return SkewForm.from_rows(rows)


F12 = form([0, 1], [-1, 0])  # pi_12 = 1
E1, E2 = (1, 0), (0, 1)


def test_identity_monomial():
    one = monomial(F12, (0, 0))
    x = monomial(F12, (2, -1), QLaurent.quantum_integer(2))
    assert one * x == x and x * one == x


def test_self_commutation():
    m = monomial(F12, E1)
    assert m * m == monomial(F12, (2, 0))


def test_basis_product_rule():
    assert monomial(F12, E1) * monomial(F12, E2) == monomial(F12, (1, 1), q(1))
    assert monomial(F12, E2) * monomial(F12, E1) == monomial(F12, (1, 1), q(-1))


def test_commutation_exponent():
    a = monomial(F12, (2, 1))
    b = monomial(F12, (0, 3))
    # a b = q^Pi(alpha,beta) b a with Pi = 2*3*pi_12 = 6
    assert a * b == (b * a).scale(q(2 * 6))


def test_binomial_product():
    f = form([0, 2], [-2, 0])
    a = monomial(f, E1) + monomial(f, E2)
    b = monomial(f, E1) - monomial(f, E2)
    got = a * b
    want = (monomial(f, (2, 0)) - monomial(f, (2, 0), QLaurent.zero())
            - monomial(f, (1, 1), q(2) - q(-2)) - monomial(f, (0, 2)))
    assert got == want


def test_weyl_basis_collapse():
    assert weyl(F12, (1, 1)) == monomial(F12, (1, 1))
    assert weyl(F12, (2, 1)) == monomial(F12, (2, 1))


def test_weyl_on_frame():
    frame = (monomial(F12, E1), monomial(F12, E2))
    # [A1 A2] = q^{x2 x1 pi_21 / 2} A1 A2 = q^{-1/2} q^{1/2} M^{(1,1)}
    assert weyl(F12, (1, 1), frame, F12) == monomial(F12, (1, 1))


def test_weyl_permutation_invariance():
    pi = form([0, 3, -1], [-3, 0, 2], [1, -2, 0])
    x = (2, 1, 3)
    frame = tuple(monomial(pi, tuple(1 if j == i else 0 for j in range(3)))
                  for i in range(3))
    base = weyl(pi, x, frame, pi)
    for perm in ((1, 0, 2), (2, 1, 0), (1, 2, 0)):
        pi_p = form(*[[pi.pi[a][b] for b in perm] for a in perm])
        x_p = tuple(x[a] for a in perm)
        frame_p = tuple(frame[a] for a in perm)
        assert weyl(pi, x_p, frame_p, pi_p) == base


def test_weyl_negative_power_guard():
    frame = (monomial(F12, E1) + monomial(F12, E2), monomial(F12, E2))
    with pytest.raises(NotDivisible):
        weyl(F12, (-1, 0), frame, F12)


def test_left_divide_monomial_case():
    a = monomial(F12, (1, 2), q(3))
    x = monomial(F12, (0, 1)) + monomial(F12, (-1, 3), QLaurent.quantum_integer(2))
    assert left_divide(a, a * x) == x


def test_left_divide_two_terms():
    a = monomial(F12, E1)
    c = monomial(F12, E1) + monomial(F12, E2)
    got = left_divide(a, c)
    # multiply-back oracle pins the coefficient: M^e1 q^{-1/2} M^{e2-e1} = M^e2
    assert got == monomial(F12, (0, 0)) + monomial(F12, (-1, 1), q(-1))
    assert a * got == c


def test_left_divide_not_divisible():
    a = monomial(F12, E1) + monomial(F12, E2)
    c = monomial(F12, E1)
    with pytest.raises(NotDivisible):
        left_divide(a, c)


def test_left_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        left_divide(TorusElement.zero(F12), monomial(F12, E1))


def test_bar_element():
    m = monomial(F12, (3, -2))
    assert m.bar() == m
    scaled = m.scale(q(1))
    assert scaled.bar() == m.scale(q(-1))
    assert scaled.bar().bar() == scaled


def test_bar_antihomomorphism():
    a = monomial(F12, E1, q(1)) + monomial(F12, (1, 1))
    b = monomial(F12, E2) + monomial(F12, (0, 2), q(-3))
    assert (a * b).bar() == b.bar() * a.bar()


def test_json_round_trip():
    x = monomial(F12, (1, -2), QLaurent.quantum_integer(3)) + monomial(F12, (0, 0))
    assert TorusElement.from_json(F12, x.to_json()) == x


def test_rank_mismatch():
    with pytest.raises(ValueError):
        monomial(F12, (1, 2, 3))
    f3 = form([0, 0, 0], [0, 0, 0], [0, 0, 0])
    with pytest.raises(ValueError):
        monomial(F12, (1, 0)) * monomial(f3, (0, 0, 0))


def test_skew_form_validation():
    with pytest.raises(ValueError):
        form([0, 1], [1, 0])
    with pytest.raises(ValueError):
        form([1, 0], [0, 1])


# -- randomized properties ---------------------------------------------------

def elements(pi, n, max_terms=3):
    vec = st.tuples(*([st.integers(-3, 3)] * n))
    coeff = st.dictionaries(st.integers(-4, 4), st.integers(-9, 9),
                            min_size=1, max_size=2).map(QLaurent)
    return st.dictionaries(vec, coeff, max_size=max_terms) \
             .map(lambda d: TorusElement(pi, d))


PI3 = form([0, 2, -1], [-2, 0, 3], [1, -3, 0])


@settings(max_examples=60, deadline=None)
@given(elements(PI3, 3), elements(PI3, 3), elements(PI3, 3))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_monomial_commutation(alpha, beta):
    a = monomial(PI3, alpha)
    b = monomial(PI3, beta)
    assert a * b == (b * a).scale(q(2 * PI3.pairing(alpha, beta)))


@settings(max_examples=60, deadline=None)
@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)),
       elements(PI3, 3).filter(lambda x: not x.is_zero()))
def test_left_divide_round_trip(alpha, x):
    a = monomial(PI3, alpha, q(1))
    assert left_divide(a, a * x) == x
