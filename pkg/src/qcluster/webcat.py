"""Boundary-end skeletons of the catalog webs on polygons.

Only end data is modeled: each web records, per special point, an ordered
list of (angular rank, end type).  Commutation exponents between two webs
in a common cluster are computed from this data alone:

    pi(a, b) = sum over shared points, over end pairs (x in a, y in b):
               s(x, y) * w(x, y)

with w = 2 when both ends have type 2 (else 1) and s = +1/-1/0 according
to whether x's rank exceeds / is below / ties y's rank.  Parallel arcs
along one edge share a ray, hence contribute 0 to each other.

Rank layout at a special point, sweeping from the incoming boundary edge
to the outgoing one (counterclockwise through the surface):

    0                : arcs hugging the incoming edge
    10 + slot        : interior legs of the first incident triangle
    50               : arcs hugging the diagonal (quadrilateral corners)
    60 + slot        : interior legs of the second incident triangle
    100              : arcs hugging the outgoing edge

The leg slots inside one triangle depend only on its sign and on the
corner's role relative to the distinguished corner m; the two conventions
below are mirror images of each other and are pinned by the oracle suite
(the stated commutation exponents and exchange-relation coefficients).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .qtorus import SkewForm

End = tuple[int, int]  # (rank, type)


class PolygonMismatch(ValueError):
    """The two skeletons live on polygons of different sizes."""


@dataclass(frozen=True)
class WebSkeleton:
    name: str
    weight: int
    n_points: int
    ends: tuple[tuple[End, ...], ...]  # indexed by special point
    symmetry: str | None = None

    def __post_init__(self):
        if len(self.ends) != self.n_points:
            raise ValueError("end table must cover every special point")
        for block in self.ends:
            ranks = [r for r, _ in block]
            if sorted(ranks) != ranks or len(set(ranks)) != len(ranks):
                raise ValueError("ranks within one corner must strictly increase")

    def to_json(self):
        return {
            "name": self.name,
            "weight": self.weight,
            "ends": {f"p{i}": [{"rank": r, "type": t} for r, t in block]
                     for i, block in enumerate(self.ends) if block},
            "symmetry": self.symmetry,
        }


def pi_of(a: WebSkeleton, b: WebSkeleton) -> int:
    """Commutation exponent of a over b from end data."""
    if a.n_points != b.n_points:
        raise PolygonMismatch(f"{a.name} on {a.n_points}-gon vs {b.name} on {b.n_points}-gon")
    total = 0
    for pa, pb in zip(a.ends, b.ends):
        for ra, ta in pa:
            for rb, tb in pb:
                if ra == rb:
                    continue
                w = 2 if (ta == 2 and tb == 2) else 1
                total += w if ra > rb else -w
    return total


def pi_matrix(cluster: list[WebSkeleton]) -> SkewForm:
    n = len(cluster)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = pi_of(cluster[i], cluster[j])
            rows[i][j] = v
            rows[j][i] = -v
    return SkewForm.from_rows(rows)


def endpoint_degree(a: WebSkeleton) -> tuple[tuple[int, int], ...]:
    """Per special point, (#type-1 ends, #type-2 ends)."""
    out = []
    for block in a.ends:
        c1 = sum(1 for _, t in block if t == 1)
        c2 = sum(1 for _, t in block if t == 2)
        out.append((c1, c2))
    return tuple(out)


def dt_on_skeleton(a: WebSkeleton, relabeling: dict[int, int]) -> WebSkeleton:
    """Permute the special-point blocks; angular ranks are preserved."""
    ends = [()] * a.n_points
    for p, block in enumerate(a.ends):
        ends[relabeling.get(p, p)] = block
    return WebSkeleton(a.name, a.weight, a.n_points, tuple(ends), a.symmetry)


# ----------------------------------------------------------------------
# Interior-leg slot conventions, one per (sign, corner role).
#
# Roles: 0 = the distinguished corner m, 1 = next counterclockwise,
# 2 = previous.  Keys give the slots of the two interior webs' ends and
# their types at that role.
# ----------------------------------------------------------------------

# sign +1: weight-1 web has ends (1 at m, 2 at next, 1 at prev);
#          weight-2 web has ends (2 at m, 2 at next, two 1s at prev).
_LEGS_PLUS = {
    0: (((0, 1),), ((1, 2),)),
    1: (((1, 2),), ((0, 2),)),
    2: (((0, 1),), ((1, 1), (3, 1))),
}
# sign -1 is the mirror image: weight-1 (1 at m, 1 at next, 2 at prev);
#          weight-2 (2 at m, two 1s at next, 2 at prev).
_LEGS_MINUS = {
    0: (((1, 1),), ((0, 2),)),
    1: (((4, 1),), ((1, 1), (3, 1))),
    2: (((0, 2),), ((1, 2),)),
}

_RANK_EDGE_IN = 0
_RANK_BLOCK_A = 10
_RANK_DIAG = 50
_RANK_BLOCK_B = 60
_RANK_EDGE_OUT = 100


def _interior_ends(sign: int, role: int, which: int, offset: int) -> tuple[End, ...]:
    table = _LEGS_PLUS if sign > 0 else _LEGS_MINUS
    return tuple((offset + slot, t) for slot, t in table[role][which])


def _arc(n_points: int, p_out: int, p_in: int, wtype: int,
         rank_out: int, rank_in: int, name: str) -> WebSkeleton:
    """Arc with one end at p_out (rank_out) and one at p_in (rank_in)."""
    ends: list[tuple[End, ...]] = [()] * n_points
    ends[p_out] = ((rank_out, wtype),)
    ends[p_in] = ((rank_in, wtype),)
    return WebSkeleton(name, wtype, n_points, tuple(ends))


def triangle_catalog(m: int, sign: int) -> list[WebSkeleton]:
    """The eight catalog webs on a triangle with special points 0,1,2 ccw.

    Returned order matches the seed labeling: interior weight-1, interior
    weight-2, then (weight-1, weight-2) arcs along the edges (m, m+),
    (m+, m-), (m-, m).
    """
    nxt, prv = (m + 1) % 3, (m + 2) % 3
    corners = {0: m, 1: nxt, 2: prv}
    webs = []
    for which, weight in ((0, 1), (1, 2)):
        ends: list[tuple[End, ...]] = [()] * 3
        for role, corner in corners.items():
            ends[corner] = _interior_ends(sign, role, which, _RANK_BLOCK_A)
        webs.append(WebSkeleton(f"e{which + 1}", weight, 3, tuple(ends)))
    for base, (p, q) in zip((3, 5, 7), ((m, nxt), (nxt, prv), (prv, m))):
        for off, t in ((0, 1), (1, 2)):
            webs.append(_arc(3, p, q, t, _RANK_EDGE_OUT, _RANK_EDGE_IN,
                             f"e{base + off}"))
    return webs


# Quadrilateral with special points A=0, D=1, C=2, B=3 in ccw order and
# diagonal B--D; lower triangle (A, D, B), upper triangle (D, C, B).
SQUARE_POINTS = {"A": 0, "D": 1, "C": 2, "B": 3}
_SQUARE_CCW = "ADCB"
_LOWER = "ADB"
_UPPER = "DCB"
# boundary edges as (out-corner, in-corner) in ccw order, paper labels
_SQUARE_EDGES = {
    (6, 7): ("B", "A"),    # left: e7, e8
    (8, 9): ("A", "D"),    # bottom: e9, e10
    (10, 11): ("D", "C"),  # right: e11, e12
    (12, 13): ("C", "B"),  # top: e13, e14
}


def _roles(tri: str, m: str) -> tuple[str, str, str]:
    cs = [c for c in _SQUARE_CCW if c in tri]
    i = cs.index(m)
    return cs[i], cs[(i + 1) % 3], cs[(i + 2) % 3]


def quadrilateral_catalog(dec_lower: tuple[str, int],
                          dec_upper: tuple[str, int]) -> list[WebSkeleton]:
    """The fourteen catalog webs for a decorated square, in seed order.

    ``dec_lower``/``dec_upper`` are (distinguished corner letter, sign) for
    the triangles (A,D,B) and (D,C,B).  At the shared corners D and B the
    two triangles' leg blocks are separated by the diagonal rays; the
    triangle swept first (counterclockwise from the incoming boundary
    edge) takes the lower block.
    """
    webs: list[WebSkeleton | None] = [None] * 14
    for tri, (mc, sign), idx0 in ((_LOWER, dec_lower, 0), (_UPPER, dec_upper, 4)):
        roles = _roles(tri, mc)
        legs1: list[tuple[End, ...]] = [()] * 4
        legs2: list[tuple[End, ...]] = [()] * 4
        for role, corner in enumerate(roles):
            if corner == "A":
                off = _RANK_BLOCK_A
            elif corner == "C":
                off = _RANK_BLOCK_A
            elif corner == "D":
                off = _RANK_BLOCK_A if tri == _LOWER else _RANK_BLOCK_B
            else:  # corner B: the upper triangle comes first in the sweep
                off = _RANK_BLOCK_B if tri == _LOWER else _RANK_BLOCK_A
            p = SQUARE_POINTS[corner]
            legs1[p] = _interior_ends(sign, role, 0, off)
            legs2[p] = _interior_ends(sign, role, 1, off)
        webs[idx0] = WebSkeleton(f"e{idx0 + 1}", 1, 4, tuple(legs1))
        webs[idx0 + 1] = WebSkeleton(f"e{idx0 + 2}", 2, 4, tuple(legs2))
    for off, t in ((0, 1), (1, 2)):
        ends: list[tuple[End, ...]] = [()] * 4
        ends[SQUARE_POINTS["D"]] = ((_RANK_DIAG, t),)
        ends[SQUARE_POINTS["B"]] = ((_RANK_DIAG, t),)
        webs[2 + off] = WebSkeleton(f"e{3 + off}", t, 4, tuple(ends))
    for (i1, _i2), (p_out, p_in) in _SQUARE_EDGES.items():
        for off, t in ((0, 1), (1, 2)):
            webs[i1 + off] = _arc(4, SQUARE_POINTS[p_out], SQUARE_POINTS[p_in], t,
                                  _RANK_EDGE_OUT, _RANK_EDGE_IN, f"e{i1 + off + 1}")
    return [w for w in webs if w is not None]


def pinwheel() -> WebSkeleton:
    """The rotation-invariant square web: two type-1 ends at every corner."""
    block = ((10, 1), (11, 1))
    return WebSkeleton("pinwheel", 2, 4, (block, block, block, block),
                       symmetry="rot4")


def catalog_to_json(polygon: int, webs: list[WebSkeleton]):
    return {"polygon": polygon, "webs": [w.to_json() for w in webs]}
