"""Decorated triangulations of unpunctured marked surfaces.

Surfaces are purely combinatorial: triangles with counterclockwise corner
lists, edge-slot gluings, and special points named by their corners.  The
stock builders cover the triangle and the quadrilateral, whose seeds and
mutation words are exercised by the acceptance suite; the data model and
the amalgamation path stay general.

Triangle slot convention: slot s joins corners (c_s, c_{s+1 mod 3}).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace

from . import grading, qseed, webcat
from .qtorus import SkewForm
from .qseed import QuantumSeed
from .wquiver import WeightedQuiver, amalgamate, base_triangle_quiver


class BoundaryEdge(ValueError):
    """A flip was requested at a boundary edge."""


class MissingPi(ValueError):
    """No compatibility-form fixture covers this surface."""


@dataclass(frozen=True)
class DecoratedTriangle:
    corners: tuple[str, str, str]   # counterclockwise
    m: str                          # distinguished corner
    sign: int                       # +1 or -1

    def __post_init__(self):
        if self.m not in self.corners:
            raise ValueError("distinguished corner must be one of the corners")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def roles(self) -> tuple[str, str, str]:
        """(m, next, prev) counterclockwise from the distinguished corner."""
        i = self.corners.index(self.m)
        return (self.corners[i], self.corners[(i + 1) % 3],
                self.corners[(i + 2) % 3])


Gluing = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class DecoratedTriangulation:
    triangles: tuple[DecoratedTriangle, ...]
    gluings: tuple[Gluing, ...]
    boundary: tuple[tuple[str, ...], ...]   # special points, ccw per component

    def __post_init__(self):
        used: set[tuple[int, int]] = set()
        for (a, b) in self.gluings:
            for slot in (a, b):
                if slot in used:
                    raise ValueError(f"edge slot {slot} glued twice")
                used.add(slot)
        if any(not comp for comp in self.boundary):
            raise ValueError("every boundary component needs a special point")

    # -- bookkeeping ----------------------------------------------------

    @property
    def special_points(self) -> tuple[str, ...]:
        return tuple(p for comp in self.boundary for p in comp)

    def point_index(self, name: str) -> int:
        return self.special_points.index(name)

    def glued_partner(self, t: int, s: int) -> tuple[int, int] | None:
        for (a, b) in self.gluings:
            if (t, s) == a:
                return b
            if (t, s) == b:
                return a
        return None

    def edge_key(self, t: int, s: int) -> tuple[tuple[int, int], ...]:
        partner = self.glued_partner(t, s)
        if partner is None:
            return ((t, s),)
        return tuple(sorted([(t, s), partner]))

    def edge_keys(self) -> list[tuple[tuple[int, int], ...]]:
        seen = []
        for t in range(len(self.triangles)):
            for s in range(3):
                k = self.edge_key(t, s)
                if k not in seen:
                    seen.append(k)
        return seen

    def slot_corners(self, t: int, s: int) -> tuple[str, str]:
        c = self.triangles[t].corners
        return c[s], c[(s + 1) % 3]

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "triangles": [{"corners": list(t.corners),
                           "m": t.corners.index(t.m),
                           "sign": "+" if t.sign > 0 else "-"}
                          for t in self.triangles],
            "gluings": [[a[0], a[1], b[0], b[1]] for a, b in self.gluings],
            "specialPoints": [list(comp) for comp in self.boundary],
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> DecoratedTriangulation:
        d = json.loads(text)
        tris = []
        for td in d["triangles"]:
            corners = tuple(td["corners"])
            m = td["m"]
            if isinstance(m, int):
                m = corners[m]
            sign = 1 if td["sign"] in ("+", 1) else -1
            tris.append(DecoratedTriangle(corners, m, sign))
        gl = tuple(((g[0], g[1]), (g[2], g[3])) for g in d["gluings"])
        bd = tuple(tuple(comp) for comp in d["specialPoints"])
        return cls(tuple(tris), gl, bd)


# -- stock builders ---------------------------------------------------------

def triangle_dt(m: int = 0, sign: int = 1) -> DecoratedTriangulation:
    corners = ("P0", "P1", "P2")
    return DecoratedTriangulation(
        (DecoratedTriangle(corners, corners[m % 3], sign),), (),
        (corners,))


SQUARE_CORNERS = ("A", "D", "C", "B")   # counterclockwise
_LOWER_TRI = ("A", "D", "B")
_UPPER_TRI = ("D", "C", "B")


def square_dt(dec_lower: tuple[str, int], dec_upper: tuple[str, int]) -> DecoratedTriangulation:
    """Quadrilateral with diagonal B--D; triangles (A,D,B) and (D,C,B)."""
    t0 = DecoratedTriangle(_LOWER_TRI, dec_lower[0], dec_lower[1])
    t1 = DecoratedTriangle(_UPPER_TRI, dec_upper[0], dec_upper[1])
    # T0 slot 1 = (D, B) glued to T1 slot 2 = (B, D)
    return DecoratedTriangulation((t0, t1), (((0, 1), (1, 2)),),
                                  (SQUARE_CORNERS,))


CASE_DECORATIONS = {
    "I": (("B", 1), ("D", 1)),
    "II": (("B", 1), ("B", 1)),
    "III": (("A", 1), ("C", 1)),
    "IV": (("D", 1), ("C", 1)),
    "V": (("B", 1), ("C", 1)),
    "flip": (("B", 1), ("D", -1)),
    "w1": (("D", 1), ("D", -1)),
    "w2": (("A", 1), ("D", -1)),
}


def case_dt(name: str) -> DecoratedTriangulation:
    return square_dt(*CASE_DECORATIONS[name])


# -- seed construction -------------------------------------------------------

def seed_layout(dt: DecoratedTriangulation) -> list[tuple]:
    """Vertex descriptors in seed order.

    Descriptors are ("tri", t, weight) and ("edge", edge_key, weight).
    The stock polygons reproduce the reference labelings: a lone triangle
    lists its interior pair then the edges (m, m+), (m+, m-), (m-, m);
    the quadrilateral lists lower interiors, the diagonal pair, upper
    interiors, then left, bottom, right, top boundary arcs.
    """
    if len(dt.triangles) == 1 and not dt.gluings:
        tri = dt.triangles[0]
        mi = tri.corners.index(tri.m)
        order: list[tuple] = [("tri", 0, 1), ("tri", 0, 2)]
        for r in range(3):
            key = dt.edge_key(0, (mi + r) % 3)
            order += [("edge", key, 1), ("edge", key, 2)]
        return order
    if (len(dt.triangles) == 2 and len(dt.gluings) == 1
            and dt.triangles[0].corners == _LOWER_TRI
            and dt.triangles[1].corners == _UPPER_TRI):
        diag = dt.edge_key(0, 1)
        left = dt.edge_key(0, 2)
        bottom = dt.edge_key(0, 0)
        right = dt.edge_key(1, 0)
        top = dt.edge_key(1, 1)
        order = [("tri", 0, 1), ("tri", 0, 2), ("edge", diag, 1), ("edge", diag, 2),
                 ("tri", 1, 1), ("tri", 1, 2)]
        for key in (left, bottom, right, top):
            order += [("edge", key, 1), ("edge", key, 2)]
        return order
    order = []
    for t in range(len(dt.triangles)):
        order += [("tri", t, 1), ("tri", t, 2)]
    for key in dt.edge_keys():
        order += [("edge", key, 1), ("edge", key, 2)]
    return order


def _local_edge_vertex(tri: DecoratedTriangle, s: int, weight: int) -> int:
    """Local base-quiver index of the weight-w vertex on edge slot s."""
    mi = tri.corners.index(tri.m)
    r = (s - mi) % 3
    return 2 + 2 * r + (weight - 1)


def amalgamated_quiver(dt: DecoratedTriangulation) -> tuple[WeightedQuiver, list[tuple]]:
    """Glue the decorated-triangle quivers; returns (quiver, descriptors).

    descriptors[i] names the glued quiver's vertex i.
    """
    parts = []
    part_desc: list[list[tuple]] = []
    for t, tri in enumerate(dt.triangles):
        desc: list[tuple] = [None] * 8
        desc[0] = ("tri", t, 1)
        desc[1] = ("tri", t, 2)
        for s in range(3):
            key = dt.edge_key(t, s)
            for w in (1, 2):
                desc[_local_edge_vertex(tri, s, w)] = ("edge", key, w)
        parts.append(base_triangle_quiver(tri.sign))
        part_desc.append(desc)
    idents = []
    for (t1, s1), (t2, s2) in dt.gluings:
        for w in (1, 2):
            idents.append(((t1, _local_edge_vertex(dt.triangles[t1], s1, w)),
                           (t2, _local_edge_vertex(dt.triangles[t2], s2, w))))
    glued, maps = amalgamate_with_maps(parts, idents)
    descriptors: list[tuple] = [None] * glued.n
    for t, desc in enumerate(part_desc):
        for local, d in enumerate(desc):
            descriptors[maps[t][local]] = d
    return glued, descriptors


def amalgamate_with_maps(parts, idents):
    """amalgamate() plus the part-local -> glued index maps."""
    marked = []
    for pi, p in enumerate(parts):
        labels = tuple(f"{pi}:{v}" for v in range(p.n))
        marked.append(replace(p, labels=labels))
    glued = amalgamate(marked, idents)
    # reconstruct the maps through union-find replay
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (p1, v1), (p2, v2) in idents:
        parent[find(offsets[p1] + v1)] = find(offsets[p2] + v2)
    reps = sorted({find(x) for x in range(total)})
    index = {r: i for i, r in enumerate(reps)}
    maps = [[index[find(offsets[pi] + v)] for v in range(p.n)]
            for pi, p in enumerate(parts)]
    return glued, maps


def auto_pi(dt: DecoratedTriangulation) -> SkewForm:
    """Compatibility form from the web catalog, in seed order."""
    if len(dt.triangles) == 1 and not dt.gluings:
        tri = dt.triangles[0]
        webs = webcat.triangle_catalog(tri.corners.index(tri.m), tri.sign)
        return webcat.pi_matrix(webs)
    if (len(dt.triangles) == 2 and len(dt.gluings) == 1
            and dt.triangles[0].corners == _LOWER_TRI
            and dt.triangles[1].corners == _UPPER_TRI):
        t0, t1 = dt.triangles
        webs = webcat.quadrilateral_catalog((t0.m, t0.sign), (t1.m, t1.sign))
        return webcat.pi_matrix(webs)
    raise MissingPi("no web catalog covers this surface; supply Pi explicitly")


def initial_degrees(dt: DecoratedTriangulation,
                    layout: list[tuple] | None = None) -> tuple[grading.DegreeVector, ...]:
    """Per-variable ensemble degrees of the built seed."""
    layout = layout or seed_layout(dt)
    npts = len(dt.special_points)
    out = []
    for desc in layout:
        if desc[0] == "tri":
            _, t, w = desc
            tri = dt.triangles[t]
            pts = tuple(dt.point_index(c) for c in tri.roles())
            out.append(grading.interior_degree(npts, pts, tri.sign, w))
        else:
            _, key, w = desc
            t, s = key[0]
            p, q = dt.slot_corners(t, s)
            out.append(grading.arc_degree(npts, dt.point_index(p),
                                          dt.point_index(q), w))
    return tuple(out)


def build_seed(dt: DecoratedTriangulation, pi: SkewForm | str = "auto",
               with_frame: bool = True, with_degrees: bool = True,
               check: bool = True) -> QuantumSeed:
    """Amalgamate, convert, attach Pi and the initial toric frame."""
    glued, descriptors = amalgamated_quiver(dt)
    layout = seed_layout(dt)
    if sorted(map(repr, layout)) != sorted(map(repr, descriptors)):
        raise ValueError("layout does not cover the glued quiver")
    perm = [descriptors.index(d) for d in layout]
    b2_raw, weights_raw, frozen_raw = glued.to_exchange()
    n = glued.n
    b2 = tuple(tuple(b2_raw[perm[i]][perm[j]] for j in range(n)) for i in range(n))
    weights = tuple(weights_raw[perm[i]] for i in range(n))
    unfrozen = frozenset(i for i in range(n) if perm[i] not in frozen_raw)
    form = pi if isinstance(pi, SkewForm) else auto_pi(dt)
    if form.n != n:
        raise MissingPi("Pi size does not match the seed")
    names = tuple(f"e{i + 1}" for i in range(n))
    frame = qseed.initial_frame(form) if with_frame else None
    degrees = initial_degrees(dt, layout) if with_degrees else None
    seed = QuantumSeed(weights, unfrozen, b2, form, frame, names, degrees)
    if check:
        qseed.require_compatibility(seed)
    return seed


# -- structured mutation words ----------------------------------------------

@dataclass(frozen=True)
class TriangleWords:
    """Mutation words attached to one triangle of a triangulation."""

    rotate: tuple[int, int]            # one rotation step of the decoration
    change_sign: tuple[int, int, int]  # decoration sign change


def rotation_sequence(dt: DecoratedTriangulation, t: int = 0) -> TriangleWords:
    """Words resolved to triangle t's interior vertices (weight 1 then 2).

    Applying ``rotate`` moves the distinguished corner one step clockwise
    on a plus triangle and one step counterclockwise on a minus one;
    ``change_sign`` flips the sign in place.
    """
    layout = seed_layout(dt)
    i1 = layout.index(("tri", t, 1))
    i2 = layout.index(("tri", t, 2))
    return TriangleWords((i1, i2), (i1, i2, i1))


def rotated_dt(dt: DecoratedTriangulation, t: int = 0) -> DecoratedTriangulation:
    """Decoration after one ``rotate`` word on triangle t."""
    tri = dt.triangles[t]
    i = tri.corners.index(tri.m)
    step = -1 if tri.sign > 0 else 1
    new = replace(tri, m=tri.corners[(i + step) % 3])
    return replace(dt, triangles=tuple(new if j == t else x
                                       for j, x in enumerate(dt.triangles)))


def sign_changed_dt(dt: DecoratedTriangulation, t: int = 0) -> DecoratedTriangulation:
    tri = dt.triangles[t]
    new = replace(tri, sign=-tri.sign)
    return replace(dt, triangles=tuple(new if j == t else x
                                       for j, x in enumerate(dt.triangles)))


@dataclass(frozen=True)
class FlipResult:
    word: tuple[int, ...]               # full word, normalization included
    relabeling: tuple[int, ...]         # old seed index -> flipped seed index
    point_map: dict[int, int]           # old special point -> flipped special point
    flipped: DecoratedTriangulation     # canonical form of the flipped square
    normalized: DecoratedTriangulation  # decoration at which the 8-step word starts


# the 8-step flip word on the canonical square, after normalization to
# lower = (B, +), upper = (D, -): diagonal pair, both interiors, diagonal pair
FLIP_CORE_WORD = (2, 3, 0, 1, 4, 5, 2, 3)

# old seed index -> index in the canonical relabeled flipped square
FLIP_RELABELING = (4, 5, 2, 3, 0, 1, 12, 13, 6, 7, 8, 9, 10, 11)

# corner names rotate one step when the flipped square is put back into
# canonical position (old A, D, C, B become the new B, A, D, C)
FLIP_POINT_MAP = {0: 3, 1: 0, 2: 1, 3: 2}

_FLIP_START = (("B", 1), ("D", -1))
_FLIP_END = (("D", 1), ("B", -1))   # in the rotated corner names of the flipped square


def _normalization_word(dt: DecoratedTriangulation) -> tuple[tuple[int, ...], DecoratedTriangulation]:
    """Rotation/sign words bringing the square to the flip start position."""
    word: list[int] = []
    cur = dt
    for t, target in ((0, _FLIP_START[0]), (1, _FLIP_START[1])):
        tw = rotation_sequence(cur, t)
        if cur.triangles[t].sign != target[1]:
            word += list(tw.change_sign)
            cur = sign_changed_dt(cur, t)
        for _ in range(3):
            if cur.triangles[t].m == target[0]:
                break
            word += list(tw.rotate)
            cur = rotated_dt(cur, t)
        else:
            raise AssertionError("rotation failed to reach the target corner")
    return tuple(word), cur


def flip_sequence(dt: DecoratedTriangulation, edge: tuple[int, int] = (0, 1)) -> FlipResult:
    """Realize the diagonal flip of the canonical quadrilateral.

    The decoration is first normalized by rotation/sign words, then the
    2+4+2 word is applied.  The relabeling identifies the resulting seed
    with ``build_seed`` of the returned flipped triangulation (corner
    names rotated one step so the new diagonal is again B--D).
    """
    if dt.glued_partner(*edge) is None:
        raise BoundaryEdge(f"edge slot {edge} is on the boundary")
    if not (len(dt.triangles) == 2
            and dt.triangles[0].corners == _LOWER_TRI
            and dt.triangles[1].corners == _UPPER_TRI):
        raise NotImplementedError("flips are implemented on the canonical square")
    norm_word, normalized = _normalization_word(dt)
    flipped = square_dt(*_FLIP_END)
    return FlipResult(norm_word + FLIP_CORE_WORD, FLIP_RELABELING,
                      dict(FLIP_POINT_MAP), flipped, normalized)


def dt_transform(dt: DecoratedTriangulation) -> dict[int, int]:
    """Special-point relabeling p -> next point along its boundary, ccw."""
    out = {}
    offset = 0
    for comp in dt.boundary:
        k = len(comp)
        for i in range(k):
            out[offset + i] = offset + (i + 1) % k
        offset += k
    return out
