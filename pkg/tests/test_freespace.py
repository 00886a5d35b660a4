from fractions import Fraction
from random import Random

import pytest

from exactmetric import (
    AffineMap,
    DomainError,
    Isometry,
    LipschitzWitness,
    Molecule,
    PointedSpace,
    action_from_closure,
    aell_norm_dual,
    aell_norm_primal,
    affine_extend,
    decompose_affine,
    enumerate_isometries,
    fixed_point,
    moving_lower_bound,
    norm_distance,
    rebase,
)
from exactmetric.randgen import (
    cycle_space,
    rand_coeffs,
    rand_metric_space,
    rand_pointed,
    rotation_action,
)

from conftest import space_from_rows

F = Fraction


def test_point_molecule_norm_is_basepoint_distance(line013_pointed):
    m = Molecule.point(line013_pointed, "3")
    assert aell_norm_dual(m)[0] == 3
    assert aell_norm_primal(m)[0] == 3


def test_point_difference_norm_is_distance(line013_pointed):
    m = Molecule.point(line013_pointed, "1") - Molecule.point(line013_pointed, "3")
    assert aell_norm_dual(m)[0] == 2


def test_line_two_a_minus_b(line013_pointed):
    m = Molecule.make(line013_pointed, {"1": F(2), "3": F(-1)})
    dual, witness = aell_norm_dual(m)
    primal, plan = aell_norm_primal(m)
    assert dual == 3 and primal == 3
    assert witness.pair(m) == 3


def test_primal_plan_point_difference(line013_pointed):
    m = Molecule.point(line013_pointed, "1") - Molecule.point(line013_pointed, "3")
    cost, plan = aell_norm_primal(m)
    assert cost == 2
    assert plan == (("1", "3", F(1)),)


def test_primal_sum_ships_from_basepoint(line013_pointed):
    m = Molecule.make(line013_pointed, {"1": F(1), "3": F(1)})
    cost, _ = aell_norm_primal(m)
    assert cost == 4  # one unit each from the basepoint


def test_zero_molecule(line013_pointed):
    z = Molecule.zero(line013_pointed)
    assert aell_norm_dual(z)[0] == 0
    assert aell_norm_primal(z) == (F(0), ())


def test_norm_distance_examples(line013_pointed):
    a = Molecule.make(line013_pointed, {"1": F(2), "3": F(-1)})
    assert norm_distance(a, a) == 0
    assert norm_distance(a, Molecule.zero(line013_pointed)) == 3


def test_norm_distance_space_mismatch(line013_pointed):
    other = PointedSpace(line013_pointed.space, 1)
    with pytest.raises(DomainError):
        norm_distance(
            Molecule.zero(line013_pointed), Molecule.zero(other)
        )


def test_witness_validation(line013_pointed):
    with pytest.raises(DomainError):
        LipschitzWitness(line013_pointed, {"0": F(1), "1": F(0), "3": F(0)})
    with pytest.raises(DomainError):
        LipschitzWitness(line013_pointed, {"0": F(0), "1": F(2), "3": F(0)})


def test_affine_extend_identity(line013_pointed):
    m = Molecule.make(line013_pointed, {"1": F(2)})
    g = Isometry.identity(line013_pointed.space)
    assert affine_extend(g, m) == m


def test_affine_extend_basepoint_fixing_is_linear():
    sp = space_from_rows(["*", "a", "b"], [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    pointed = PointedSpace(sp, 0)
    g = Isometry(sp, (0, 2, 1))  # swap a, b; fixes *
    m = Molecule.make(pointed, {"a": F(3, 2)})
    out = affine_extend(g, m)
    assert out.as_dict() == {"b": F(3, 2)}


def test_affine_extend_swap_with_basepoint():
    sp = space_from_rows(["*", "a"], [[0, 1], [1, 0]])
    pointed = PointedSpace(sp, 0)
    g = Isometry(sp, (1, 0))
    m = Molecule.point(pointed, "a")
    out = affine_extend(g, m)
    assert out == Molecule.zero(pointed)
    assert norm_distance(m, out) == 1


def test_affine_extension_is_group_action():
    c5 = cycle_space(5)
    pointed = PointedSpace(c5, 0)
    isos = enumerate_isometries(c5)
    rng = Random(23)
    m = Molecule.make(pointed, rand_coeffs(rng, pointed))
    for g in isos:
        for h in isos:
            assert affine_extend(g.compose(h), m) == \
                affine_extend(g, affine_extend(h, m))


def test_affine_extension_preserves_norm_distance():
    c5 = cycle_space(5)
    pointed = PointedSpace(c5, 0)
    rng = Random(29)
    v = Molecule.make(pointed, rand_coeffs(rng, pointed))
    w = Molecule.make(pointed, rand_coeffs(rng, pointed))
    for g in enumerate_isometries(c5):
        assert norm_distance(affine_extend(g, v), affine_extend(g, w)) == \
            norm_distance(v, w)


def test_decompose_identity(line013_pointed):
    amap = decompose_affine(lambda m: m, line013_pointed)
    assert amap.translation == Molecule.zero(line013_pointed)
    for x in ("1", "3"):
        assert amap.columns[x] == Molecule.point(line013_pointed, x)


def test_decompose_translation(line013_pointed):
    shift = Molecule.make(line013_pointed, {"1": F(1)})
    amap = decompose_affine(lambda m: m + shift, line013_pointed)
    assert amap.translation == shift
    assert amap.columns["3"] == Molecule.point(line013_pointed, "3")


def test_decompose_isometry_extension():
    sp = space_from_rows(["*", "a", "b"], [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    pointed = PointedSpace(sp, 0)
    g = Isometry(sp, (0, 2, 1))
    amap = decompose_affine(lambda m: affine_extend(g, m), pointed)
    assert amap.translation == Molecule.zero(pointed)
    assert amap.columns["a"] == Molecule.point(pointed, "b")
    # recomposition reproduces the map on basis molecules
    for x in ("a", "b"):
        assert amap.apply(Molecule.point(pointed, x)) == \
            affine_extend(g, Molecule.point(pointed, x))


def test_decompose_rejects_non_affine(line013_pointed):
    def squash(m):
        return Molecule.make(
            line013_pointed, {x: v * v for x, v in m.coeffs}
        )

    with pytest.raises(DomainError):
        decompose_affine(squash, line013_pointed)


def test_affine_map_from_isometry_matches_extension():
    c4 = cycle_space(4)
    pointed = PointedSpace(c4, 0)
    rng = Random(31)
    for g in enumerate_isometries(c4):
        amap = AffineMap.from_isometry(g, pointed)
        for _ in range(5):
            m = Molecule.make(pointed, rand_coeffs(rng, pointed))
            assert amap.apply(m) == affine_extend(g, m)


def test_rebase_same_basepoint_is_identity(line013_pointed):
    m = Molecule.make(line013_pointed, {"1": F(2), "3": F(-1)})
    assert rebase(m, "0") == m


def test_rebase_zero_molecule_lands_on_old_basepoint(line013_pointed):
    out = rebase(Molecule.zero(line013_pointed), "3")
    assert out.pointed.basepoint_label == "3"
    assert out.as_dict() == {"0": F(1)}
    assert aell_norm_dual(out)[0] == 3  # distance between the two basepoints


def test_rebase_preserves_pairwise_norm_distances():
    rng = Random(37)
    for _ in range(30):
        sp = rand_metric_space(rng, rng.randint(2, 6))
        pointed = rand_pointed(rng, sp)
        m1 = Molecule.make(pointed, rand_coeffs(rng, pointed, 4))
        m2 = Molecule.make(pointed, rand_coeffs(rng, pointed, 4))
        target = rng.choice(sp.points)
        assert norm_distance(m1, m2) == \
            norm_distance(rebase(m1, target), rebase(m2, target))


def test_moving_lower_bound_c12():
    action = rotation_action(12)
    space = action.space
    pointed = PointedSpace(space, 0)
    g6 = action.images[action.group.index("g6")]
    v = Molecule.make(pointed, {"1": F(2)})
    w = Molecule.make(pointed, {"1": F(-1, 2)})
    bound = moving_lower_bound(pointed, ["0", "1"], g6, v, w)
    assert bound == 5
    assert norm_distance(affine_extend(g6, v), w) >= bound


def test_moving_lower_bound_equal_molecules_still_separate():
    action = rotation_action(12)
    pointed = PointedSpace(action.space, 0)
    g6 = action.images[action.group.index("g6")]
    v = Molecule.make(pointed, {"1": F(1)})
    bound = moving_lower_bound(pointed, ["0", "1"], g6, v, v)
    assert bound == 5
    assert norm_distance(affine_extend(g6, v), v) >= bound


def test_moving_lower_bound_zero_gap():
    action = rotation_action(4)
    pointed = PointedSpace(action.space, 0)
    ident = action.images[action.group.identity]
    v = Molecule.make(pointed, {"1": F(1)})
    assert moving_lower_bound(pointed, ["0", "1"], ident, v, v) == 0


def test_moving_lower_bound_rejects_outside_support():
    action = rotation_action(6)
    pointed = PointedSpace(action.space, 0)
    g = action.images[3]
    v = Molecule.make(pointed, {"4": F(1)})
    with pytest.raises(DomainError):
        moving_lower_bound(pointed, ["0", "1"], g, v, v)


def test_fixed_point_trivial_group(line013_pointed):
    action = action_from_closure(line013_pointed.space, [])
    seed = Molecule.make(line013_pointed, {"1": F(2)})
    assert fixed_point(action, seed) == seed


def test_fixed_point_swap():
    sp = space_from_rows(["*", "a", "b"], [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    pointed = PointedSpace(sp, 0)
    g = Isometry(sp, (0, 2, 1))
    action = action_from_closure(sp, [g])
    bary = fixed_point(action, Molecule.point(pointed, "a"))
    assert bary.as_dict() == {"a": F(1, 2), "b": F(1, 2)}


def test_fixed_point_c6_with_hub():
    # 6-cycle plus a hub equidistant from everything; rotations fix the hub
    rows = [
        [0, 1, 2, 3, 2, 1, 2],
        [1, 0, 1, 2, 3, 2, 2],
        [2, 1, 0, 1, 2, 3, 2],
        [3, 2, 1, 0, 1, 2, 2],
        [2, 3, 2, 1, 0, 1, 2],
        [1, 2, 3, 2, 1, 0, 2],
        [2, 2, 2, 2, 2, 2, 0],
    ]
    sp = space_from_rows(["0", "1", "2", "3", "4", "5", "*"], rows)
    pointed = PointedSpace(sp, 6)
    rot = Isometry(sp, (1, 2, 3, 4, 5, 0, 6))
    action = action_from_closure(sp, [rot])
    assert action.group.order == 6
    bary = fixed_point(action, Molecule.point(pointed, "0"))
    assert bary.as_dict() == {p: F(1, 6) for p in sp.points[:6]}


def test_strong_duality_random():
    rng = Random(41)
    for _ in range(200):
        sp = rand_metric_space(rng, rng.randint(2, 9))
        pointed = rand_pointed(rng, sp)
        m = Molecule.make(pointed, rand_coeffs(rng, pointed))
        assert aell_norm_dual(m)[0] == aell_norm_primal(m)[0]


def test_uniform_metric_free_norm_differs_from_l1():
    # with every distance equal to 1 the norm of a difference of two unit
    # vectors is 1, not the coordinate-sum 2; the identification with the
    # sum norm needs the two-point distances through the basepoint to add up
    labels = ["*", "a", "b", "c"]
    rows = [[0 if i == j else 1 for j in range(4)] for i in range(4)]
    pointed = PointedSpace(space_from_rows(labels, rows), 0)
    diff = Molecule.point(pointed, "a") - Molecule.point(pointed, "b")
    assert aell_norm_dual(diff)[0] == 1
    assert sum(abs(v) for _, v in diff.coeffs) == 2
