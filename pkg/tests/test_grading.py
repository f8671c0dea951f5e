import pytest

from qcluster import grading, qseed, surface
from qcluster.grading import (DegreeImbalance, NoConvergence, NotKronecker,
                              asymptotic_degree, dt_on_degrees)

W1 = (1, 0)
W2 = (0, 1)
Z = (0, 0)


def test_triangle_plus_initial_degrees():
    degs = surface.initial_degrees(surface.triangle_dt(0, 1))
    assert degs[0] == (W1, W2, W1)           # interior weight 1
    assert degs[1] == (W2, W2, (2, 0))       # interior weight 2
    assert degs[2] == (W1, W1, Z)            # arcs on the (m, m+) edge
    assert degs[3] == (W2, W2, Z)
    assert degs[6] == (W1, Z, W1)
    assert degs[7] == (W2, Z, W2)


def test_triangle_minus_initial_degrees():
    degs = surface.initial_degrees(surface.triangle_dt(0, -1))
    assert degs[0] == (W1, W1, W2)
    assert degs[1] == (W2, (2, 0), W2)


def test_degrees_dominant_on_all_builds():
    for name in ("I", "II", "III", "IV", "V", "flip", "w1", "w2"):
        for d in surface.initial_degrees(surface.case_dt(name)):
            assert grading.is_dominant(d)


def test_propagation_on_triangle():
    seed = surface.build_seed(surface.triangle_dt(0, 1), with_frame=False)
    new = grading.propagate(seed, 0)
    want = grading.sub(grading.add(seed.degrees[1], seed.degrees[2]),
                       seed.degrees[0])
    assert new == want
    # cross-check by web end counting: the replaced variable is the minus
    # decoration's interior weight-1 web
    assert new == (W2, W1, W1)


def test_propagation_balance_along_flip():
    dt = surface.case_dt("flip")
    seed = surface.build_seed(dt, with_frame=False)
    for k in surface.FLIP_CORE_WORD:
        grading.propagate(seed, k)   # raises on imbalance
        seed = qseed.mutate(seed, k)


def test_imbalance_fault_injection():
    seed = surface.build_seed(surface.triangle_dt(0, 1), with_frame=False)
    degs = list(seed.degrees)
    degs[2] = grading.add(degs[2], ((1, 0), Z, Z))
    broken = qseed.QuantumSeed(seed.weights, seed.unfrozen, seed.b2, seed.pi,
                               None, seed.names, tuple(degs))
    with pytest.raises(DegreeImbalance):
        grading.propagate(broken, 0)


def test_dt_on_degrees_square():
    relab = surface.dt_transform(surface.case_dt("I"))
    d = (W1, W2, Z, Z)
    assert dt_on_degrees(d, relab) == (Z, W1, W2, Z)
    out = d
    for _ in range(4):
        out = dt_on_degrees(out, relab)
    assert out == d


def test_asymptotic_weight1():
    seed = surface.build_seed(surface.case_dt("w1"), with_frame=False)
    seed = qseed.mutate(seed, 3)
    rep = asymptotic_degree(seed, 0, 4, 20)
    assert rep.limit == (((2, 0),) * 4)
    assert rep.stabilized_at is not None
    relab = surface.dt_transform(surface.case_dt("w1"))
    assert dt_on_degrees(rep.limit, relab) == rep.limit


def test_asymptotic_weight2():
    seed = surface.build_seed(surface.case_dt("w2"), with_frame=False)
    seed = qseed.mutate_word(seed, (2, 3, 2, 1))
    rep = asymptotic_degree(seed, 3, 5, 20)
    assert rep.limit == (((2, 1),) * 4)


def test_asymptotic_recurrence_is_linear():
    seed = surface.build_seed(surface.case_dt("w1"), with_frame=False)
    seed = qseed.mutate(seed, 3)
    rep = asymptotic_degree(seed, 0, 4, 20)
    flat = [tuple(x for p in d for x in p) for d in rep.history]
    for t in range(rep.stabilized_at, len(flat)):
        assert all(a - 2 * b + c == 0
                   for a, b, c in zip(flat[t], flat[t - 1], flat[t - 2]))


def test_asymptotic_nmax_zero():
    seed = surface.build_seed(surface.case_dt("w1"), with_frame=False)
    seed = qseed.mutate(seed, 3)
    rep = asymptotic_degree(seed, 0, 4, 0)
    assert rep.limit is None
    assert rep.history == (seed.degrees[0],)


def test_not_kronecker():
    seed = surface.build_seed(surface.case_dt("w1"), with_frame=False)
    with pytest.raises(NotKronecker):
        asymptotic_degree(seed, 0, 4, 5)    # before the preparing mutation
    seed = qseed.mutate(seed, 3)
    with pytest.raises(NotKronecker):
        asymptotic_degree(seed, 0, 1, 5)    # mixed weights


def test_no_convergence_with_tiny_budget():
    seed = surface.build_seed(surface.case_dt("w1"), with_frame=False)
    seed = qseed.mutate(seed, 3)
    with pytest.raises(NoConvergence):
        asymptotic_degree(seed, 0, 4, 1)
