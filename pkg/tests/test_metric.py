from fractions import Fraction
from random import Random

import pytest

from exactmetric import (
    DomainError,
    FiniteMetricSpace,
    StructuralError,
    restrict,
    set_distance,
    validate,
)
from exactmetric.randgen import rand_metric_space

from conftest import space_from_rows


def test_two_point_space_is_valid():
    sp = space_from_rows(["a", "b"], [[0, 1], [1, 0]])
    assert validate(sp).ok


def test_triangle_violation_reports_witness():
    sp = space_from_rows(["a", "b", "c"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    report = validate(sp)
    assert not report.ok
    assert report.axiom == "triangle"
    assert set(report.witness) == {"a", "b", "c"}


def test_separation_violation():
    sp = space_from_rows(["a", "b"], [[0, 0], [0, 0]])
    report = validate(sp)
    assert not report.ok and report.axiom == "separation"
    assert validate(space_from_rows(["a", "b"], [[0, 0], [0, 0]], pseudo=True)).ok


def test_symmetry_and_diagonal_checks():
    sp = space_from_rows(["a", "b"], [[0, 1], [2, 0]])
    assert validate(sp).axiom == "symmetry"
    sp = space_from_rows(["a", "b"], [[1, 1], [1, 0]])
    assert validate(sp).axiom == "diagonal"


def test_shape_mismatch_is_structural():
    with pytest.raises(StructuralError):
        FiniteMetricSpace(("a", "b"), ((Fraction(0),),))
    with pytest.raises(StructuralError):
        FiniteMetricSpace(("a", "a"), ((Fraction(0), Fraction(0)),) * 2)


def test_set_distance_examples(line013):
    assert set_distance(line013, ["0"], ["3"]) == 3
    assert set_distance(line013, ["0", "1"], ["1", "3"]) == 0
    assert set_distance(line013, ["0", "1"], ["3"]) == 2
    assert set_distance(line013, ["3"], ["0", "1"]) == 2  # symmetric


def test_set_distance_empty_set_rejected(line013):
    with pytest.raises(DomainError):
        set_distance(line013, [], ["0"])


def test_restrict_full_is_identity(line013):
    assert restrict(line013, ["0", "1", "3"]) == line013


def test_restrict_line_to_endpoints(line013):
    sub = restrict(line013, ["0", "3"])
    assert sub.points == ("0", "3")
    assert sub.d_label("0", "3") == 3


def test_restrict_empty_rejected(line013):
    with pytest.raises(DomainError):
        restrict(line013, [])


def test_restrict_pseudometric_with_duplicate_point():
    sp = space_from_rows(
        ["a", "b", "c"], [[0, 0, 2], [0, 0, 2], [2, 2, 0]], pseudo=True
    )
    sub = restrict(sp, ["a", "b"])
    assert sub.pseudo and validate(sub).ok


def test_restrict_of_random_valid_space_always_validates():
    rng = Random(42)
    for _ in range(50):
        sp = rand_metric_space(rng, rng.randint(2, 7))
        pts = list(sp.points)
        rng.shuffle(pts)
        sub = pts[: rng.randint(1, len(pts))]
        assert validate(restrict(sp, sub)).ok
