"""Quantum seeds: mutation, exchange-relation prediction, exploration.

A seed carries the doubled exchange matrix B2, the integral compatibility
form Pi, the weights, the frozen/unfrozen split, and (optionally) a toric
frame: one torus element per index, all expressed in the initial ambient
torus.  Mutated variables are re-expressed there by exact left division,
so every mutation doubles as a machine check of the Laurent property.
"""
from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from . import grading
from .qlaurent import NotDivisible, QLaurent
from .qtorus import SkewForm, TorusElement, left_divide, monomial, weyl
from .wquiver import FrozenMutation


class LaurentFailure(ArithmeticError):
    """A mutated variable failed to divide back into the ambient torus."""


class IllegalPermutation(ValueError):
    """The permutation mixes frozen with unfrozen indices or weights."""


class CompatibilityFailure(ValueError):
    """B^T Pi does not equal (2D, 0) on the unfrozen rows."""


@dataclass(frozen=True)
class QuantumSeed:
    weights: tuple[int, ...]
    unfrozen: frozenset[int]
    b2: tuple[tuple[int, ...], ...]        # doubled exchange matrix
    pi: SkewForm
    frame: tuple[TorusElement, ...] | None = None
    names: tuple[str, ...] = ()
    degrees: tuple[grading.DegreeVector, ...] | None = None

    def __post_init__(self):
        n = self.n
        if len(self.b2) != n or any(len(r) != n for r in self.b2):
            raise ValueError("B2 must be n x n")
        if self.pi.n != n:
            raise ValueError("Pi size mismatch")
        for i in range(n):
            for j in range(n):
                if self.weights[i] * self.b2[i][j] != -self.weights[j] * self.b2[j][i]:
                    raise ValueError("DB must be skew-symmetric")
                if self.b2[i][j] % 2 and (i in self.unfrozen or j in self.unfrozen):
                    raise ValueError("half-integral B entry outside frozen x frozen")
        if not self.names:
            object.__setattr__(self, "names",
                               tuple(f"e{i + 1}" for i in range(n)))
        if self.frame is not None and len(self.frame) != n:
            raise ValueError("frame length mismatch")
        if self.degrees is not None and len(self.degrees) != n:
            raise ValueError("degrees length mismatch")

    @property
    def n(self) -> int:
        return len(self.weights)

    def b(self, i: int, j: int) -> int:
        """Integer b_ij; raises on genuinely half-integral entries."""
        v = self.b2[i][j]
        if v % 2:
            raise ValueError(f"b[{i}][{j}] is half-integral")
        return v // 2

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def to_json(self) -> str:
        data = {
            "n": self.n,
            "unfrozen": sorted(self.unfrozen),
            "weights": list(self.weights),
            "B2": [list(r) for r in self.b2],
            "Pi": self.pi.to_json(),
            "names": list(self.names),
        }
        if self.frame is not None:
            # each element carries its ambient form, which is the initial
            # torus form and differs from the current Pi after mutations
            data["frame"] = [{"pi": x.form.to_json(), "terms": x.to_json()}
                             for x in self.frame]
        if self.degrees is not None:
            data["degrees"] = [[list(p) for p in d] for d in self.degrees]
        return json.dumps(data, indent=1)

    @classmethod
    def from_json(cls, text: str) -> QuantumSeed:
        d = json.loads(text)
        pi = SkewForm.from_rows(d["Pi"])
        frame = None
        if d.get("frame") is not None:
            frame = tuple(
                TorusElement.from_json(SkewForm.from_rows(t["pi"]), t["terms"])
                for t in d["frame"])
        degrees = None
        if d.get("degrees") is not None:
            degrees = tuple(tuple(tuple(p) for p in dv) for dv in d["degrees"])
        return cls(tuple(d["weights"]), frozenset(d["unfrozen"]),
                   tuple(tuple(r) for r in d["B2"]), pi, frame,
                   tuple(d["names"]), degrees)


def initial_frame(pi: SkewForm) -> tuple[TorusElement, ...]:
    """Basis monomials of the ambient torus."""
    n = pi.n
    return tuple(monomial(pi, tuple(1 if j == i else 0 for j in range(n)))
                 for i in range(n))


@dataclass(frozen=True)
class ExchangeRelation:
    """A_k A'_k = q^(m2/2) * ([prod A_j^pos] + q^gap [prod A_j^neg])."""

    k: int
    m2: int                      # doubled exponent of the overall prefactor
    gap: int                     # d_k; the inner factor is q^gap
    pos: tuple[int, ...]
    neg: tuple[int, ...]
    names: tuple[str, ...] = ()

    def coefficient_pair(self) -> tuple[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]]:
        """((2*power on pos, pos), (2*power on neg, neg)) for exact comparison."""
        return ((self.m2, self.pos), (self.m2 + 2 * self.gap, self.neg))

    def _mono(self, exps: Sequence[int]) -> str:
        parts = []
        for j, e in enumerate(exps):
            if e == 0:
                continue
            nm = self.names[j] if self.names else f"e{j + 1}"
            parts.append(nm if e == 1 else f"{nm}^{e}")
        return "[" + " ".join(parts) + "]" if parts else "1"

    @staticmethod
    def _qpow(doubled: int) -> str:
        if doubled == 0:
            return ""
        if doubled == 2:
            return "q"
        if doubled % 2 == 0:
            return f"q^{doubled // 2}"
        return f"q^{{{doubled}/2}}"

    def format(self) -> str:
        nm = self.names[self.k] if self.names else f"e{self.k + 1}"
        pre = self._qpow(self.m2)
        inner = f"{self._mono(self.pos)} + {self._qpow(2 * self.gap)} {self._mono(self.neg)}"
        if pre:
            return f"{nm} {nm}' = {pre}({inner})"
        return f"{nm} {nm}' = {inner}"


def predict_exchange(seed: QuantumSeed, k: int) -> ExchangeRelation:
    """The structured quantum exchange relation at k, without mutating."""
    if k not in seed.unfrozen:
        raise FrozenMutation(f"index {seed.names[k]} is frozen")
    n = seed.n
    pos = [0] * n
    neg = [0] * n
    m2 = 0
    for j in range(n):
        b_jk = seed.b(j, k)
        if b_jk > 0:
            pos[j] = b_jk
            m2 += b_jk * seed.pi.pi[k][j]
        elif b_jk < 0:
            neg[j] = -b_jk
    return ExchangeRelation(k, m2, seed.weights[k], tuple(pos), tuple(neg),
                            seed.names)


def _ef_matrices(seed: QuantumSeed, k: int, eps: int) -> tuple[list[list[int]], list[list[int]]]:
    n = seed.n
    E = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    F = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        if i == k:
            E[i][k] = -1
        else:
            E[i][k] = max(-eps * seed.b(i, k), 0)
    for j in range(n):
        if j == k:
            F[k][j] = -1
        else:
            F[k][j] = max(eps * seed.b(k, j), 0)
    return E, F


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(a)
    m = len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(m)]
            for i in range(n)]


def mutate(seed: QuantumSeed, k: int, eps: int = 1) -> QuantumSeed:
    """Quantum seed mutation at the unfrozen index k.

    B and Pi transform through the elementary matrices; the new cluster
    variable is built from the asymmetric exchange relation and divided
    back into the ambient torus.  A division failure means the seed data
    (B, Pi, frame) are inconsistent and is raised as LaurentFailure.
    """
    if k not in seed.unfrozen:
        raise FrozenMutation(f"index {seed.names[k]} is frozen")
    E, F = _ef_matrices(seed, k, eps)
    b2_new = tuple(tuple(r) for r in _matmul(_matmul(E, [list(r) for r in seed.b2]), F))
    ET = [list(r) for r in zip(*E)]
    pi_new = SkewForm.from_rows(_matmul(_matmul(ET, [list(r) for r in seed.pi.pi]), E))

    frame_new = None
    if seed.frame is not None:
        rel = predict_exchange(seed, k)
        ambient = seed.frame[0].form
        rhs = weyl(ambient, rel.pos, seed.frame, seed.pi) \
            + weyl(ambient, rel.neg, seed.frame, seed.pi).scale(
                QLaurent.q_power(2 * rel.gap))
        rhs = rhs.scale(QLaurent.q_power(rel.m2))
        try:
            new_var = left_divide(seed.frame[k], rhs)
        except NotDivisible as exc:
            raise LaurentFailure(
                f"mutation at {seed.names[k]} left the ambient torus") from exc
        frame_new = tuple(new_var if i == k else x
                          for i, x in enumerate(seed.frame))

    degrees_new = None
    if seed.degrees is not None:
        deg_k = grading.propagate(seed, k)
        degrees_new = tuple(deg_k if i == k else d
                            for i, d in enumerate(seed.degrees))

    return replace(seed, b2=b2_new, pi=pi_new, frame=frame_new,
                   degrees=degrees_new)


def mutate_word(seed: QuantumSeed, word: Iterable[int]) -> QuantumSeed:
    """Apply mutations left to right: the first listed index acts first."""
    for k in word:
        seed = mutate(seed, k)
    return seed


def permute(seed: QuantumSeed, sigma: Sequence[int]) -> QuantumSeed:
    """Relabel by sigma (old index -> new index)."""
    n = seed.n
    if sorted(sigma) != list(range(n)):
        raise IllegalPermutation("not a permutation")
    inv = [0] * n
    for old, new in enumerate(sigma):
        inv[new] = old
    for old, new in enumerate(sigma):
        if seed.weights[old] != seed.weights[new]:
            raise IllegalPermutation("permutation mixes weights")
        if (old in seed.unfrozen) != (new in seed.unfrozen):
            raise IllegalPermutation("permutation mixes frozen and unfrozen")
    b2 = tuple(tuple(seed.b2[inv[i]][inv[j]] for j in range(n)) for i in range(n))
    pi = SkewForm.from_rows([[seed.pi.pi[inv[i]][inv[j]] for j in range(n)]
                             for i in range(n)])
    frame = None
    if seed.frame is not None:
        frame = tuple(seed.frame[inv[i]] for i in range(n))
    degrees = None
    if seed.degrees is not None:
        degrees = tuple(seed.degrees[inv[i]] for i in range(n))
    names = tuple(seed.names[inv[i]] for i in range(n))
    return replace(seed, b2=b2, pi=pi, frame=frame, degrees=degrees, names=names)


# -- reports -------------------------------------------------------------

@dataclass(frozen=True)
class RowReport:
    index: int
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    rows: tuple[RowReport, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self) -> list[RowReport]:
        return [r for r in self.rows if not r.ok]


def check_compatibility(seed: QuantumSeed) -> Report:
    """Verify sum_k b_ki pi_kj = 2 d_i delta_ij for unfrozen i, all j."""
    rows = []
    n = seed.n
    for i in sorted(seed.unfrozen):
        bad = []
        for j in range(n):
            v2 = sum(seed.b2[t][i] * seed.pi.pi[t][j] for t in range(n))
            want2 = 4 * seed.weights[i] if i == j else 0
            if v2 != want2:
                bad.append((j, v2))
        rows.append(RowReport(i, not bad, "" if not bad else
                              f"row {seed.names[i]}: offending columns {bad}"))
    return Report(tuple(rows))


def require_compatibility(seed: QuantumSeed):
    rep = check_compatibility(seed)
    if not rep.ok:
        raise CompatibilityFailure("; ".join(r.detail for r in rep.failures()))


def check_bar_invariance(seed: QuantumSeed) -> Report:
    if seed.frame is None:
        raise ValueError("seed carries no frame")
    rows = []
    for i, x in enumerate(seed.frame):
        ok = x.bar() == x
        rows.append(RowReport(i, ok, "" if ok else f"{seed.names[i]} moves under bar"))
    return Report(tuple(rows))


def check_positivity(seed: QuantumSeed) -> Report:
    if seed.frame is None:
        raise ValueError("seed carries no frame")
    rows = []
    for i, x in enumerate(seed.frame):
        ok = all(c.is_positive() for c in x.support.values())
        rows.append(RowReport(i, ok, "" if ok else
                              f"{seed.names[i]} has a negative coefficient"))
    return Report(tuple(rows))


def check_frame_commutation(seed: QuantumSeed,
                            indices: Iterable[int] | None = None) -> Report:
    """frame[i] frame[j] = q^pi_ij frame[j] frame[i].

    Checks all pairs by default; ``indices`` restricts the first leg
    (useful after deep mutation runs where the variables are large).
    """
    if seed.frame is None:
        raise ValueError("seed carries no frame")
    rows = []
    n = seed.n
    for i in (range(n) if indices is None else indices):
        ok = True
        detail = ""
        for j in range(n):
            if j == i:
                continue
            lhs = seed.frame[i] * seed.frame[j]
            rhs = (seed.frame[j] * seed.frame[i]).scale(
                QLaurent.q_power(2 * seed.pi.pi[i][j]))
            if lhs != rhs:
                ok = False
                detail = f"pair ({seed.names[i]}, {seed.names[j]})"
                break
        rows.append(RowReport(i, ok, detail))
    return Report(tuple(rows))


# -- canonical forms and exploration ------------------------------------

def _blocks(seed: QuantumSeed) -> list[list[int]]:
    groups: dict[tuple[bool, int], list[int]] = {}
    for i in range(seed.n):
        groups.setdefault((i in seed.unfrozen, seed.weights[i]), []).append(i)
    return [groups[key] for key in sorted(groups)]


def canonical_form(seed: QuantumSeed) -> tuple:
    """A key invariant under weight- and frozenness-preserving relabelings.

    Minimizes the permuted (B2, Pi, degrees) data lexicographically over
    all block-preserving permutations.  The degree vectors are needed to
    separate seeds whose (B, Pi) pairs are permutation-isomorphic but
    whose clusters differ (the triangle's rotations are the basic case);
    they are omitted when the seed carries none.  Exhaustive over the
    blocks (adequate for desk-scale ranks), with rowwise early abort
    against the best candidate so far.
    """
    n = seed.n
    blocks = _blocks(seed)
    b2 = seed.b2
    pim = seed.pi.pi
    degs = seed.degrees
    best: list[tuple] | None = None
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        inv = [old for perm in parts for old in perm]  # new index -> old index
        rows: list[tuple] = []
        verdict = -1 if best is None else 0
        for i in range(n):
            bi = b2[inv[i]]
            pi_i = pim[inv[i]]
            row = tuple(bi[inv[j]] for j in range(n)) \
                + tuple(pi_i[inv[j]] for j in range(n)) \
                + (degs[inv[i]] if degs is not None else ())
            if verdict == 0:
                ref = best[i]
                if row < ref:
                    verdict = -1
                elif row > ref:
                    verdict = 1
                    break
            rows.append(row)
        if verdict == -1:
            best = rows
    blocksig = tuple((len(b), b[0] in seed.unfrozen, seed.weights[b[0]])
                     for b in blocks)
    return (blocksig, tuple(best))


@dataclass
class ExchangeGraph:
    vertices: dict[tuple, QuantumSeed]
    edges: set[tuple[tuple, int, tuple]]
    truncated: bool = False

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def undirected_edges(self) -> set[frozenset]:
        return {frozenset((a, b)) for a, _, b in self.edges if a != b}

    def to_dot(self) -> str:
        ids = {k: i for i, k in enumerate(self.vertices)}
        lines = ["graph exchange {"]
        for k, i in ids.items():
            lines.append(f'  s{i} [label="{i}"];')
        for e in sorted((min(ids[a], ids[b]), max(ids[a], ids[b]), k)
                        for a, k, b in self.edges if a != b):
            lines.append(f'  s{e[0]} -- s{e[1]} [label="{e[2] + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        ids = {k: i for i, k in enumerate(self.vertices)}
        return json.dumps({
            "vertices": len(ids),
            "edges": sorted({(min(ids[a], ids[b]), max(ids[a], ids[b]), k)
                             for a, k, b in self.edges if a != b}),
            "truncated": self.truncated,
        })


def explore(seed: QuantumSeed, depth: int | None = None,
            track_frames: bool = False, budget: int = 10000) -> ExchangeGraph:
    """BFS over unfrozen mutations with canonical-form deduplication.

    Frames are dropped unless requested (they are the expensive part);
    degree vectors are kept, since the canonical keys need them.
    """
    start = seed if track_frames else replace(seed, frame=None)
    key0 = canonical_form(start)
    graph = ExchangeGraph({key0: start}, set())
    frontier = [(start, key0)]
    level = 0
    while frontier and (depth is None or level < depth):
        level += 1
        nxt = []
        for s, key in frontier:
            for k in sorted(s.unfrozen):
                s2 = mutate(s, k)
                key2 = canonical_form(s2)
                graph.edges.add((key, k, key2))
                if key2 not in graph.vertices:
                    if len(graph.vertices) >= budget:
                        warnings.warn("exploration truncated by node budget")
                        graph.truncated = True
                        return graph
                    graph.vertices[key2] = s2
                    nxt.append((s2, key2))
        frontier = nxt
    return graph
