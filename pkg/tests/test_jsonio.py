import json
from fractions import Fraction
from random import Random

import pytest

from exactmetric import DomainError, StructuralError
from exactmetric.jsonio import (
    action_from_json,
    action_to_json,
    format_rational,
    group_from_json,
    group_to_json,
    katetov_from_json,
    katetov_to_json,
    molecule_from_json,
    molecule_to_json,
    parse_rational,
    pointed_from_json,
    pseudometric_from_json,
    pseudometric_to_json,
    space_from_json,
    space_to_json,
)
from exactmetric.randgen import (
    rand_coeffs,
    rand_group,
    rand_invariant_pseudometric,
    rand_katetov,
    rand_metric_space,
    rand_pointed,
    rotation_action,
)
from exactmetric.freespace import Molecule

F = Fraction


def test_parse_rational_forms():
    assert parse_rational(3) == 3
    assert parse_rational("3") == 3
    assert parse_rational("-7/2") == F(-7, 2)
    assert parse_rational("4/6") == F(2, 3)


def test_parse_rational_rejections():
    for bad in (True, None, 1.5, "x", "1/0", []):
        with pytest.raises(StructuralError):
            parse_rational(bad)


def test_format_rational_is_reduced():
    assert format_rational(F(4, 6)) == "2/3"
    assert format_rational(F(5)) == "5"
    assert format_rational(F(-1, 2)) == "-1/2"


def test_space_round_trip_is_bit_exact():
    rng = Random(73)
    for _ in range(25):
        sp = rand_metric_space(rng, rng.randint(1, 6))
        blob = json.dumps(space_to_json(sp), sort_keys=True)
        assert space_from_json(json.loads(blob)) == sp
        # encoding again produces the identical byte string
        assert json.dumps(space_to_json(space_from_json(json.loads(blob))),
                          sort_keys=True) == blob


def test_space_loader_validates():
    data = {
        "points": ["a", "b", "c"],
        "dist": [["0", "1", "3"], ["1", "0", "1"], ["3", "1", "0"]],
    }
    with pytest.raises(DomainError):
        space_from_json(data)


def test_space_loader_shape_errors():
    with pytest.raises(StructuralError):
        space_from_json({"points": ["a"]})
    with pytest.raises(StructuralError):
        space_from_json({"points": ["a", "b"], "dist": [["0", "1"]]})


def test_pointed_requires_basepoint():
    data = space_to_json(rand_metric_space(Random(1), 3))
    with pytest.raises(StructuralError):
        pointed_from_json(data)
    data["basepoint"] = data["points"][0]
    pointed = pointed_from_json(data)
    assert pointed.basepoint_label == data["points"][0]


def test_katetov_round_trip():
    rng = Random(79)
    for _ in range(20):
        sp = rand_metric_space(rng, rng.randint(2, 5))
        pts = list(sp.points)
        rng.shuffle(pts)
        supp = tuple(sorted(pts[: rng.randint(1, sp.n)]))
        f = rand_katetov(rng, sp, supp)
        assert katetov_from_json(katetov_to_json(f)) == f


def test_group_round_trip():
    rng = Random(83)
    for _ in range(10):
        group = rand_group(rng)
        assert group_from_json(group_to_json(group)) == group


def test_pseudometric_round_trip_and_shape_check():
    rng = Random(89)
    pm = rand_invariant_pseudometric(rng, rand_group(rng, max_order=8))
    data = pseudometric_to_json(pm)
    assert pseudometric_from_json(data) == pm
    data["pseudometric"] = data["pseudometric"][:-1]
    with pytest.raises(StructuralError):
        pseudometric_from_json(data)


def test_action_round_trip():
    action = rotation_action(6)
    assert action_from_json(action_to_json(action)) == action


def test_action_from_generators_only():
    action = rotation_action(5)
    data = action_to_json(action)
    data["images"] = {"g1": data["images"]["g1"]}
    assert action_from_json(data) == action


def test_action_missing_generators_rejected():
    action = rotation_action(6)
    data = action_to_json(action)
    data["images"] = {"g2": data["images"]["g2"]}  # generates only half
    with pytest.raises(DomainError):
        action_from_json(data)


def test_molecule_round_trip():
    rng = Random(97)
    for _ in range(20):
        sp = rand_metric_space(rng, rng.randint(2, 6))
        pointed = rand_pointed(rng, sp)
        m = Molecule.make(pointed, rand_coeffs(rng, pointed))
        assert molecule_from_json(molecule_to_json(m)) == m


def test_molecule_basepoint_inside_space_record():
    rng = Random(101)
    sp = rand_metric_space(rng, 3)
    data = {
        "space": space_to_json(sp, basepoint=sp.points[0]),
        "coeffs": {sp.points[1]: "1"},
    }
    m = molecule_from_json(data)
    assert m.pointed.basepoint_label == sp.points[0]
    with pytest.raises(StructuralError):
        molecule_from_json({"space": space_to_json(sp), "coeffs": {}})
