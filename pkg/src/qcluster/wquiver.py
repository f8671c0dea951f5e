"""Weighted quivers with vertex weights in {1, 2}.

The structure matrix sigma is stored doubled (``sigma2``), so a dashed
half-arrow contributes 1 and a solid arrow 2.  Conversion to and from
exchange matrices follows sigma_ij = eps_ij * gcd(d_i, d_j) / d_i with
eps the transposed exchange matrix, and round-trips exactly.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence


class FrozenMutation(ValueError):
    """Mutation requested at a frozen vertex."""


class NonIntegral(ValueError):
    """An operation produced a non-(half-)integral arrow count."""


class WeightMismatch(ValueError):
    """Identified vertices carry different weights."""


class DoubleIdentification(ValueError):
    """A vertex appears in more than one identification."""


def _pos(x: int) -> int:
    return x if x > 0 else 0


@dataclass(frozen=True)
class WeightedQuiver:
    weights: tuple[int, ...]
    sigma2: tuple[tuple[int, ...], ...]
    frozen: frozenset[int] = field(default_factory=frozenset)
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.n
        if any(w not in (1, 2) for w in self.weights):
            raise ValueError("vertex weights must be 1 or 2")
        if len(self.sigma2) != n or any(len(r) != n for r in self.sigma2):
            raise ValueError("sigma2 must be n x n")
        for i in range(n):
            for j in range(n):
                if self.sigma2[i][j] != -self.sigma2[j][i]:
                    raise ValueError("sigma2 must be skew-symmetric")
        if not self.labels:
            object.__setattr__(self, "labels",
                               tuple(f"v{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def unfrozen(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.frozen

    # -- conversion -----------------------------------------------------

    def to_exchange(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...], frozenset[int]]:
        """Return (B2, weights, frozen) with B2 = 2 * B, b_ij = eps_ji."""
        n = self.n
        d = self.weights
        b2 = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                # eps_ij = d_i * sigma_ij / gcd(d_i, d_j); b_ji = eps_ij
                num = d[i] * self.sigma2[i][j]
                den = math.gcd(d[i], d[j])
                if num % den:
                    raise NonIntegral(f"entry ({i},{j}) is not half-integral")
                b2[j][i] = num // den
        return tuple(tuple(r) for r in b2), self.weights, self.frozen

    def to_dot(self) -> str:
        """DOT export; weight-2 vertices doubled, half-arrows dashed."""
        lines = ["digraph quiver {"]
        for i in range(self.n):
            shape = "doublecircle" if self.weights[i] == 2 else "circle"
            style = ', style=filled, fillcolor="gray90"' if i in self.frozen else ""
            lines.append(f'  n{i} [label="{self.labels[i]}", shape={shape}{style}];')
        for i in range(self.n):
            for j in range(self.n):
                v = self.sigma2[i][j]
                if v <= 0:
                    continue
                solid, half = divmod(v, 2)
                for _ in range(solid):
                    lines.append(f"  n{i} -> n{j};")
                if half:
                    lines.append(f"  n{i} -> n{j} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "weights": list(self.weights),
            "sigma2": [list(r) for r in self.sigma2],
            "frozen": sorted(self.frozen),
            "labels": list(self.labels),
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> WeightedQuiver:
        d = json.loads(text)
        return cls(tuple(d["weights"]),
                   tuple(tuple(r) for r in d["sigma2"]),
                   frozenset(d["frozen"]),
                   tuple(d.get("labels") or ()))


def from_exchange(b2: Sequence[Sequence[int]], weights: Sequence[int],
                  frozen: Iterable[int], labels: Sequence[str] = ()) -> WeightedQuiver:
    """Build the weighted quiver of an exchange matrix (B stored doubled)."""
    n = len(weights)
    d = list(weights)
    s2 = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # sigma_ij = eps_ij gcd(d_i,d_j) / d_i, eps_ij = b_ji
            num = b2[j][i] * math.gcd(d[i], d[j])
            if num % d[i]:
                raise NonIntegral(f"sigma entry ({i},{j}) is not half-integral")
            s2[i][j] = num // d[i]
    return WeightedQuiver(tuple(d), tuple(tuple(r) for r in s2),
                          frozenset(frozen), tuple(labels))


def mutate_quiver(q: WeightedQuiver, k: int) -> WeightedQuiver:
    """Weight-sensitive quiver mutation at an unfrozen vertex k."""
    if k in q.frozen:
        raise FrozenMutation(f"vertex {k} is frozen")
    n = q.n
    d = q.weights
    s = q.sigma2
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -s[i][j]
            else:
                alpha = 2 if (d[i] == d[j] and d[i] != d[k]) else 1
                delta = (_pos(s[i][k]) * _pos(s[k][j])
                         - _pos(-s[i][k]) * _pos(-s[k][j])) * alpha
                if delta % 2:
                    raise NonIntegral("mutation produced a quarter-arrow")
                out[i][j] = s[i][j] + delta // 2
    return replace(q, sigma2=tuple(tuple(r) for r in out))


def amalgamate(parts: Sequence[WeightedQuiver],
               identifications: Sequence[tuple[tuple[int, int], tuple[int, int]]],
               unfreeze_identified: bool = True) -> WeightedQuiver:
    """Glue quivers along identified vertex pairs.

    ``identifications`` is a list of ((part, vertex), (part, vertex)) pairs.
    Arrow counts add on identified pairs, so opposite half-arrows cancel and
    parallel ones combine.  Identified vertices become unfrozen exactly when
    ``unfreeze_identified`` is set (interior-edge gluing).
    """
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n
    parent = list(range(total))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen: set[int] = set()
    glued: set[int] = set()
    for (p1, v1), (p2, v2) in identifications:
        a = offsets[p1] + v1
        b = offsets[p2] + v2
        if a in seen or b in seen:
            raise DoubleIdentification(f"vertex identified twice: {(p1, v1)}, {(p2, v2)}")
        seen.update((a, b))
        if parts[p1].weights[v1] != parts[p2].weights[v2]:
            raise WeightMismatch(f"weights differ at {(p1, v1)} ~ {(p2, v2)}")
        parent[find(a)] = find(b)
        glued.update((a, b))

    reps = sorted({find(x) for x in range(total)})
    index = {r: i for i, r in enumerate(reps)}
    m = len(reps)
    weights = [0] * m
    labels = [""] * m
    frozen: set[int] = set()
    for pi, p in enumerate(parts):
        for v in range(p.n):
            g = index[find(offsets[pi] + v)]
            weights[g] = p.weights[v]
            if not labels[g]:
                labels[g] = p.labels[v]
            if v in p.frozen:
                frozen.add(g)
    if unfreeze_identified:
        frozen -= {index[find(x)] for x in glued}
    s2 = [[0] * m for _ in range(m)]
    for pi, p in enumerate(parts):
        for i in range(p.n):
            for j in range(p.n):
                gi = index[find(offsets[pi] + i)]
                gj = index[find(offsets[pi] + j)]
                s2[gi][gj] += p.sigma2[i][j]
    return WeightedQuiver(tuple(weights), tuple(tuple(r) for r in s2),
                          frozenset(frozen), tuple(labels))


# ----------------------------------------------------------------------
# Base triangle quivers.
#
# Local vertex order on a decorated triangle with distinguished corner m
# and corners (m, m+, m-) in counterclockwise order:
#   0: interior weight 1      1: interior weight 2
#   2: weight 1 on edge (m,  m+)   3: weight 2 on edge (m,  m+)
#   4: weight 1 on edge (m+, m-)   5: weight 2 on edge (m+, m-)
#   6: weight 1 on edge (m-, m )   7: weight 2 on edge (m-, m )
#
# The '+' matrix is pinned by the printed unfrozen rows together with the
# within-edge half-arrows; every frozen cross entry is forced by the five
# quadrilateral cross-checks.  The '-' matrix equals mu1 mu2 mu1 of '+'.
# ----------------------------------------------------------------------

TRIANGLE_WEIGHTS = (1, 2, 1, 2, 1, 2, 1, 2)

BASE_PLUS_SIGMA2 = (
    (0, 2, 2, -2, -2, 0, -2, 0),
    (-2, 0, 0, 2, 0, 2, 2, -2),
    (-2, 0, 0, 1, 2, 0, 0, 0),
    (2, -2, -1, 0, 0, 0, 0, 0),
    (2, 0, -2, 0, 0, -1, 0, 0),
    (0, -2, 0, 0, 1, 0, 0, 2),
    (2, -2, 0, 0, 0, 0, 0, 1),
    (0, 2, 0, 0, 0, -2, -1, 0),
)

BASE_MINUS_SIGMA2 = (
    (0, -2, 2, 0, 2, 0, -2, 2),
    (2, 0, -2, 2, 0, -2, 0, -2),
    (-2, 2, 0, -1, 0, 0, 0, 0),
    (0, -2, 1, 0, 0, 2, 0, 0),
    (-2, 0, 0, 0, 0, 1, 2, 0),
    (0, 2, 0, -2, -1, 0, 0, 0),
    (2, 0, 0, 0, -2, 0, 0, -1),
    (-2, 2, 0, 0, 0, 0, 1, 0),
)


def base_triangle_quiver(sign: int, labels: Sequence[str] = ()) -> WeightedQuiver:
    """The decorated-triangle quiver for sign +1 or -1, all edges frozen."""
    sigma2 = BASE_PLUS_SIGMA2 if sign > 0 else BASE_MINUS_SIGMA2
    return WeightedQuiver(TRIANGLE_WEIGHTS, sigma2,
                          frozenset(range(2, 8)), tuple(labels))
