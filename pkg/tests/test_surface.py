import pytest

from qcluster import grading, qseed, surface
from qcluster.qseed import canonical_form, mutate_word, permute
from qcluster.surface import (BoundaryEdge, DecoratedTriangulation, MissingPi,
                              build_seed, case_dt, dt_transform, flip_sequence,
                              rotation_sequence, square_dt, triangle_dt)


def light(dt):
    return build_seed(dt, with_frame=False)


def test_triangle_seed_shape():
    seed = build_seed(triangle_dt(0, 1))
    assert seed.n == 8
    assert sorted(seed.unfrozen) == [0, 1]
    assert seed.weights == (1, 2, 1, 2, 1, 2, 1, 2)
    assert seed.names == tuple(f"e{i}" for i in range(1, 9))
    # the stated unfrozen rows of the transposed exchange matrix
    eps1 = tuple(seed.b2[j][0] // 2 for j in range(8))
    eps2 = tuple(seed.b2[j][1] // 2 for j in range(8))
    assert eps1 == (0, 1, 1, -1, -1, 0, -1, 0)
    assert eps2 == (-2, 0, 0, 1, 0, 1, 2, -1)


def test_quadrilateral_seed_shape():
    seed = build_seed(case_dt("I"))
    assert seed.n == 14
    assert sorted(seed.unfrozen) == [0, 1, 2, 3, 4, 5]
    x3 = tuple(seed.b2[j][2] // 2 for j in range(14))
    x4 = tuple(seed.b2[j][3] // 2 for j in range(14))
    assert x3 == (1, -1, 0, 1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0)
    assert x4 == (0, 1, -2, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, -1)


def test_case_iii_columns():
    seed = build_seed(case_dt("III"))
    x3 = tuple(seed.b2[j][2] // 2 for j in range(14))
    x4 = tuple(seed.b2[j][3] // 2 for j in range(14))
    assert x3 == (1, 0, 0, -1, 1, 0, 0, 0, -1, 0, 0, 0, -1, 0)
    assert x4 == (0, -1, 2, 0, 0, -1, 0, 1, 0, 0, 0, 1, 0, 0)


def test_all_cases_compatible():
    for name in ("I", "II", "III", "IV", "V", "flip", "w1", "w2"):
        seed = build_seed(case_dt(name))
        assert qseed.check_compatibility(seed).ok


def test_surface_json_round_trip():
    dt = case_dt("IV")
    dt2 = DecoratedTriangulation.from_json(dt.to_json())
    assert dt2 == dt
    dt3 = triangle_dt(2, -1)
    assert DecoratedTriangulation.from_json(dt3.to_json()) == dt3


def test_rotation_words_follow_decorations():
    dt = triangle_dt(0, 1)
    words = rotation_sequence(dt)
    assert words.rotate == (0, 1)
    assert words.change_sign == (0, 1, 0)
    seed = light(dt)
    rotated = mutate_word(seed, words.rotate)
    assert canonical_form(rotated) == canonical_form(light(surface.rotated_dt(dt)))
    flipped = mutate_word(seed, words.change_sign)
    assert canonical_form(flipped) == canonical_form(light(surface.sign_changed_dt(dt)))


def test_rotation_three_times_is_identity():
    dt = triangle_dt(1, -1)
    seed = build_seed(dt)
    words = rotation_sequence(dt)
    out = mutate_word(seed, words.rotate * 3)
    assert out == seed


def test_minus_rotation_direction():
    dt = triangle_dt(0, -1)
    seed = light(dt)
    rotated = mutate_word(seed, rotation_sequence(dt).rotate)
    # a minus decoration rotates counterclockwise
    assert canonical_form(rotated) == canonical_form(light(triangle_dt(1, -1)))


def test_flip_boundary_guard():
    with pytest.raises(BoundaryEdge):
        flip_sequence(case_dt("I"), (0, 0))


def test_flip_from_the_start_configuration():
    dt = case_dt("flip")
    res = flip_sequence(dt)
    assert res.word == surface.FLIP_CORE_WORD
    seed = mutate_word(build_seed(dt), res.word)
    relabeled = permute(seed, list(res.relabeling))
    target = build_seed(res.flipped)
    assert relabeled.b2 == target.b2
    assert relabeled.pi == target.pi
    moved = tuple(grading.dt_on_degrees(d, res.point_map) for d in relabeled.degrees)
    assert moved == target.degrees


def test_flip_normalizes_other_decorations():
    dt = case_dt("II")
    res = flip_sequence(dt)
    assert len(res.word) > 8
    assert res.normalized.triangles[0].m == "B"
    assert res.normalized.triangles[0].sign == 1
    assert res.normalized.triangles[1].m == "D"
    assert res.normalized.triangles[1].sign == -1
    seed = mutate_word(light(dt), res.word)
    relabeled = permute(seed, list(res.relabeling))
    target = light(res.flipped)
    assert relabeled.b2 == target.b2 and relabeled.pi == target.pi


def test_flip_intermediate_quivers_match_figure_steps():
    # after the first diagonal pair, the four interior mutations commute
    seed = light(case_dt("flip"))
    s2 = mutate_word(seed, (2, 3))
    for a, b in ((0, 1), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)):
        assert s2.b2[a][b] == 0
    import itertools
    results = {mutate_word(s2, perm).b2
               for perm in itertools.permutations((0, 1, 4, 5))}
    assert len(results) == 1


def test_double_flip_involution():
    dt = case_dt("flip")
    res = flip_sequence(dt)
    res2 = flip_sequence(res.flipped)
    twice = mutate_word(light(res.flipped), res2.word)
    twice = permute(twice, list(res2.relabeling))
    assert twice.b2 == light(res2.flipped).b2


def test_dt_transform_orders():
    sq = case_dt("I")
    relab = dt_transform(sq)
    assert relab == {0: 1, 1: 2, 2: 3, 3: 0}
    composed = {p: p for p in range(4)}
    for _ in range(4):
        composed = {p: relab[v] for p, v in composed.items()}
    assert composed == {p: p for p in range(4)}
    tri = triangle_dt(0, 1)
    r3 = dt_transform(tri)
    composed = {p: p for p in range(3)}
    for _ in range(3):
        composed = {p: r3[v] for p, v in composed.items()}
    assert composed == {p: p for p in range(3)}


def test_missing_pi_for_unknown_surface():
    # a strip of two triangles glued along a non-canonical pattern
    t0 = surface.DecoratedTriangle(("P", "Q", "R"), "P", 1)
    t1 = surface.DecoratedTriangle(("Q", "P", "S"), "Q", 1)
    dt = DecoratedTriangulation((t0, t1), (((0, 0), (1, 0)),),
                                (("P", "Q", "R", "S"),))
    with pytest.raises(MissingPi):
        build_seed(dt)


def test_build_seed_with_explicit_pi():
    dt = case_dt("V")
    auto = build_seed(dt)
    explicit = build_seed(dt, pi=auto.pi)
    assert explicit == auto


def test_glued_slot_validation():
    t0 = surface.DecoratedTriangle(("A", "D", "B"), "B", 1)
    t1 = surface.DecoratedTriangle(("D", "C", "B"), "D", 1)
    with pytest.raises(ValueError):
        DecoratedTriangulation((t0, t1),
                               (((0, 1), (1, 2)), ((0, 1), (1, 0))),
                               (("A", "D", "C", "B"),))
