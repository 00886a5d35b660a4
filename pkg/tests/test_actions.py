from fractions import Fraction
from itertools import permutations
from random import Random

import pytest

from exactmetric import (
    DomainError,
    GroupAction,
    Isometry,
    action_from_closure,
    cyclic_group,
    enumerate_isometries,
    is_strongly_moving_on,
    moving_gap,
    orbit,
    orbit_diameter,
)
from exactmetric.randgen import cycle_space, rand_metric_space, rotation_action

from conftest import space_from_rows

F = Fraction


def brute_force_isometries(space):
    out = []
    n = space.n
    for perm in permutations(range(n)):
        if all(
            space.dist[perm[i]][perm[j]] == space.dist[i][j]
            for i in range(n)
            for j in range(n)
        ):
            out.append(perm)
    return out


def test_rigid_space_has_only_identity(line013):
    isos = enumerate_isometries(line013)
    assert [g.perm for g in isos] == [(0, 1, 2)]


def test_equilateral_triangle_has_six():
    sp = space_from_rows(["a", "b", "c"], [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    isos = enumerate_isometries(sp)
    assert len(isos) == 6
    assert [g.perm for g in isos] == brute_force_isometries(sp)


def test_c6_has_twelve():
    c6 = cycle_space(6)
    isos = enumerate_isometries(c6)
    assert len(isos) == 12
    assert [g.perm for g in isos] == brute_force_isometries(c6)


def test_enumeration_matches_brute_force_random():
    rng = Random(17)
    palette = [F(1), F(2)]
    for _ in range(20):
        sp = rand_metric_space(rng, rng.randint(2, 5), palette=palette)
        assert [g.perm for g in enumerate_isometries(sp)] == \
            brute_force_isometries(sp)


def test_isometries_form_a_group():
    c5 = cycle_space(5)
    isos = enumerate_isometries(c5)
    perms = {g.perm for g in isos}
    for g in isos:
        assert g.inverse().perm in perms
        for h in isos:
            assert g.compose(h).perm in perms


def test_pseudometric_rejected():
    sp = space_from_rows(["a", "b"], [[0, 0], [0, 0]], pseudo=True)
    with pytest.raises(DomainError):
        enumerate_isometries(sp)


def test_non_isometry_rejected(line013):
    with pytest.raises(DomainError):
        Isometry(line013, (1, 0, 2))
    with pytest.raises(DomainError):
        Isometry(line013, (0, 0, 2))


def test_homomorphism_law_enforced():
    c4 = cycle_space(4)
    rot = Isometry(c4, (1, 2, 3, 0))
    group = cyclic_group(4)
    bad = (
        Isometry.identity(c4), rot, rot.compose(rot), rot,
    )
    with pytest.raises(DomainError):
        GroupAction(group, c4, bad)


def test_moving_gap_whole_space_is_zero():
    action = rotation_action(6)
    gap, _ = moving_gap(action, list(action.space.points))
    assert gap == 0


def test_moving_gap_c6_singleton():
    action = rotation_action(6)
    gap, witness = moving_gap(action, ["0"])
    assert gap == 3
    assert action.images[action.group.index(witness)].apply_label("0") == "3"


def test_moving_gap_c6_pair():
    action = rotation_action(6)
    gap, witness = moving_gap(action, ["0", "1"])
    assert gap == 2
    assert witness == "g3"


def test_strongly_moving_family_certificates():
    action = rotation_action(6)
    ok, _ = is_strongly_moving_on(action, [["0"]], F(3))
    assert ok
    ok, failing = is_strongly_moving_on(
        action, [list(action.space.points)], F(1)
    )
    assert not ok and set(failing) == set(action.space.points)
    ok, _ = is_strongly_moving_on(action, [["0"], ["0", "1"]], F(2))
    assert ok


def test_orbit_trivial_action(line013):
    action = action_from_closure(line013, [])
    assert orbit(action, "1") == ["1"]
    assert orbit_diameter(action, "1") == 0


def test_orbit_c6():
    action = rotation_action(6)
    assert orbit(action, "0") == list(action.space.points)
    assert orbit_diameter(action, "0") == 3


def test_orbit_size_divides_group_order():
    c6 = cycle_space(6)
    action = action_from_closure(c6, enumerate_isometries(c6))
    for x in c6.points:
        assert action.group.order % len(orbit(action, x)) == 0


def test_epsilon_net_bounds_gap():
    # an epsilon-net of the whole orbit cannot be moved by epsilon or more
    action = rotation_action(6)
    net = ["0", "2", "4"]  # every point lies within distance 1 < 3/2
    gap, _ = moving_gap(action, net)
    assert gap < F(3, 2)
