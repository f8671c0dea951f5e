"""Ensemble degrees of cluster variables.

A degree vector assigns to every special point a pair (c1, c2), read as
c1*w1 + c2*w2 in the weight lattice.  Degrees propagate through mutation
by the homogeneity rule: both exchange monomials must carry the same
degree, and the new variable's degree is that common value minus the old
variable's degree.
"""
from __future__ import annotations

from dataclasses import dataclass

DegreeVector = tuple[tuple[int, int], ...]


class DegreeImbalance(ValueError):
    """The two exchange monomials fail to carry equal degrees."""


class NotKronecker(ValueError):
    """The requested vertex pair does not span a double-arrow subquiver."""


class NoConvergence(ValueError):
    """The degree recurrence did not stabilize within the step budget."""


def zero_degree(n_points: int) -> DegreeVector:
    return tuple((0, 0) for _ in range(n_points))


def add(a: DegreeVector, b: DegreeVector) -> DegreeVector:
    return tuple((x1 + y1, x2 + y2) for (x1, x2), (y1, y2) in zip(a, b))


def scale(a: DegreeVector, c: int) -> DegreeVector:
    return tuple((c * x1, c * x2) for (x1, x2) in a)


def sub(a: DegreeVector, b: DegreeVector) -> DegreeVector:
    return add(a, scale(b, -1))


def is_dominant(a: DegreeVector) -> bool:
    return all(x1 >= 0 and x2 >= 0 for x1, x2 in a)


def total(a: DegreeVector) -> tuple[int, int]:
    return (sum(x1 for x1, _ in a), sum(x2 for _, x2 in a))


# -- initial degrees on a decorated triangle ---------------------------------
#
# For a triangle with corners (m, m+, m-) in ccw order:
#   sign +: interior wt-1 (w1, w2, w1);  interior wt-2 (w2, w2, 2w1)
#   sign -: interior wt-1 (w1, w1, w2);  interior wt-2 (w2, 2w1, w2)
# A type-s arc contributes w_s at each endpoint.

_INTERIOR_DEGREES = {
    (1, 1): ((1, 0), (0, 1), (1, 0)),
    (1, 2): ((0, 1), (0, 1), (2, 0)),
    (-1, 1): ((1, 0), (1, 0), (0, 1)),
    (-1, 2): ((0, 1), (2, 0), (0, 1)),
}


def interior_degree(n_points: int, corner_points: tuple[int, int, int],
                    sign: int, weight: int) -> DegreeVector:
    """Degree of a triangle's interior variable; corners given as special
    point indices in the order (m, next, prev)."""
    vals = _INTERIOR_DEGREES[(1 if sign > 0 else -1, weight)]
    out = [(0, 0)] * n_points
    for p, v in zip(corner_points, vals):
        out[p] = (out[p][0] + v[0], out[p][1] + v[1])
    return tuple(out)


def arc_degree(n_points: int, p: int, q: int, weight: int) -> DegreeVector:
    out = [(0, 0)] * n_points
    v = (1, 0) if weight == 1 else (0, 1)
    for pt in (p, q):
        out[pt] = (out[pt][0] + v[0], out[pt][1] + v[1])
    return tuple(out)


# -- propagation --------------------------------------------------------------

def propagate(seed, k: int) -> DegreeVector:
    """Degree of the variable replacing k; raises DegreeImbalance."""
    if seed.degrees is None:
        raise ValueError("seed carries no degrees")
    n = seed.n
    pos = zero_degree(len(seed.degrees[0]))
    neg = zero_degree(len(seed.degrees[0]))
    for j in range(n):
        b_jk2 = seed.b2[j][k]
        if b_jk2 > 0:
            pos = add(pos, scale(seed.degrees[j], b_jk2 // 2))
        elif b_jk2 < 0:
            neg = add(neg, scale(seed.degrees[j], -b_jk2 // 2))
    if pos != neg:
        raise DegreeImbalance(
            f"exchange monomials at {seed.names[k]} are inhomogeneous: {pos} vs {neg}")
    return sub(pos, seed.degrees[k])


def dt_on_degrees(degrees: DegreeVector, relabeling: dict[int, int]) -> DegreeVector:
    out = [(0, 0)] * len(degrees)
    for p, v in enumerate(degrees):
        out[relabeling.get(p, p)] = v
    return tuple(out)


@dataclass(frozen=True)
class AsymptoticReport:
    history: tuple[DegreeVector, ...]   # degree of each new variable in turn
    stabilized_at: int | None           # first index with vanishing 2nd difference
    limit: DegreeVector | None          # per-pair slope at vertex i over weight d_i


def asymptotic_degree(seed, i: int, j: int, nmax: int) -> AsymptoticReport:
    """Alternating mutation at (i, j), nmax pairs; degree growth analysis.

    The reported limit is the stabilized degree increment of the variable
    at vertex i across one (mu_i mu_j) period, divided by the weight d_i.
    Convergence requires three consecutive exact zero second differences
    of the new-variable degree sequence.
    """
    from . import qseed  # local import to avoid a cycle

    # Kronecker precondition: equal weights and exactly two parallel arrows
    # between i and j (|sigma_ij| = 2, i.e. |b2| = 4 at equal weights).
    d_i, d_j = seed.weights[i], seed.weights[j]
    if d_i != d_j or abs(seed.b2[j][i]) != 4:
        raise NotKronecker(
            f"vertices {seed.names[i]}, {seed.names[j]} do not span a double arrow")
    if nmax == 0:
        return AsymptoticReport((seed.degrees[i],), None, None)
    cur = seed
    history: list[DegreeVector] = []
    for _ in range(nmax):
        cur = qseed.mutate(cur, i)
        history.append(cur.degrees[i])
        cur = qseed.mutate(cur, j)
        history.append(cur.degrees[j])
    flat = [tuple(x for p in d for x in p) for d in history]
    stab = None
    run = 0
    for t in range(2, len(flat)):
        second = [a - 2 * b + c for a, b, c in zip(flat[t], flat[t - 1], flat[t - 2])]
        if all(x == 0 for x in second):
            run += 1
            if run >= 3 and stab is None:
                stab = t - run + 1
        else:
            run = 0
            stab = None
    if stab is None:
        raise NoConvergence(f"no stable recurrence within {nmax} pairs")
    # per-pair increment at vertex i = history[-2] - history[-4]
    inc = sub(history[-2], history[-4])
    if any(x % d_i for pair in inc for x in pair):
        raise NoConvergence("per-pair increment is not divisible by the weight")
    limit = tuple((x1 // d_i, x2 // d_i) for x1, x2 in inc)
    return AsymptoticReport(tuple(history), stab, limit)
