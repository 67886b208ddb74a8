import logging
import math

import numpy as np
import pytest

from modules.exceptions import DimensionError, NotInConeError, ZeroVectorError
from services.cone_cpn import delta, e_region
from services.cone_general import (
    ConeSpec,
    Membership,
    complexify_birkhoff,
    coordinate_spec,
    delta_general,
    e_region_general,
    has_independent_functionals,
    member,
    member_R,
    pair_family,
)
from services.contraction import random_cone_vector
from services.region_geometry import Disk, region_mod_bounds
from tests.conftest import LOG2, interior_pairs, near_circle, z_grid

SIGN_SPEC = ConeSpec(np.array([[1, 1], [1, -1]]))


def _same_disks(left, right, tol=1e-9):
    for disk in left:
        assert any(abs(disk.center - other.center) <= tol and abs(disk.radius - other.radius) <= tol for other in right)


def test_cone_spec_rejects_bad_families():
    with pytest.raises(DimensionError):
        ConeSpec(np.zeros((0, 2)))
    with pytest.raises(DimensionError):
        ConeSpec(np.array([[1, 0], [0, 0]]))
    with pytest.raises(DimensionError):
        ConeSpec(np.array([[1, np.inf]]))


def test_cone_spec_is_read_only():
    spec = coordinate_spec(3)
    assert spec.dimension == 3
    assert spec.size == 3
    with pytest.raises(ValueError):
        spec.functionals[0, 0] = 5


def test_member_examples():
    spec = coordinate_spec(2)
    assert member(spec, [1, 1j]) is Membership.INSIDE
    assert member(spec, [1, -1]) is Membership.OUTSIDE
    assert member(SIGN_SPEC, [2, 1]) is Membership.INSIDE
    assert member(SIGN_SPEC, [1, 2]) is Membership.OUTSIDE


def test_member_R_examples():
    spec = coordinate_spec(2)
    assert member_R(spec, [1, 1j]) is Membership.INSIDE
    assert member_R(spec, [1, -1j]) is Membership.OUTSIDE
    # ℂ₊ⁿ contains points whose coordinates leave the first quadrant
    assert member(spec, [1j, -1 + 1j]) is Membership.INSIDE
    assert member_R(spec, [1j, -1 + 1j]) is Membership.OUTSIDE


def test_member_rejects_zero_and_wrong_length():
    with pytest.raises(ZeroVectorError):
        member(coordinate_spec(2), [0, 0])
    with pytest.raises(DimensionError):
        member(coordinate_spec(2), [1, 1, 1])


def test_pair_family_drops_degenerate_pairs():
    assert pair_family(coordinate_spec(2), [1, 1], [2, 1]).pairs == ((0, 1),)
    assert pair_family(coordinate_spec(2), [1, 1], [3, 3]).pairs == ()


def test_e_region_general_two_functional_example():
    region = e_region_general(SIGN_SPEC, [2, 1], [3, 1])
    _same_disks([Disk(5 / 3, 1 / 3), Disk(4 / 3, 0), Disk(2, 0)], region.disks)
    assert len(region.parts) == 3
    assert region_mod_bounds(region) == pytest.approx((4 / 3, 2.0), abs=1e-12)


def test_delta_general_two_functional_example():
    assert delta_general(SIGN_SPEC, [2, 1], [3, 1]) == pytest.approx(math.log(1.5), abs=1e-12)


def test_delta_general_rejects_points_outside_the_cone():
    with pytest.raises(NotInConeError):
        delta_general(SIGN_SPEC, [1, 2], [3, 1])


def test_e_region_general_matches_coordinate_cone(rng):
    for n in (2, 3, 4):
        spec = coordinate_spec(n)
        for x, y in interior_pairs(rng, n, 20):
            general = e_region_general(spec, x, y)
            direct = e_region(x, y)
            assert general.is_bounded
            _same_disks(general.disks, direct.disks)
            _same_disks(direct.disks, general.disks)


def test_delta_general_specializes_to_delta(rng):
    for n in (2, 3, 5):
        spec = coordinate_spec(n)
        for x, y in interior_pairs(rng, n, 40):
            assert delta_general(spec, x, y) == pytest.approx(delta(x, y), rel=1e-8, abs=1e-10)


@pytest.mark.parametrize("factor", [1e-12, 1e12, 1e-150, 1e150])
def test_delta_general_ignores_scale_of_either_vector(factor):
    assert delta_general(coordinate_spec(2), [1, 1], factor * np.array([2, 1])) == pytest.approx(LOG2, abs=1e-12)
    assert delta_general(coordinate_spec(2), factor * np.array([1, 1]), [2, 1]) == pytest.approx(LOG2, abs=1e-12)
    assert delta_general(SIGN_SPEC, [2, 1], factor * np.array([3, 1])) == pytest.approx(math.log(1.5), abs=1e-12)


def test_e_region_general_scales_with_y():
    region = e_region_general(SIGN_SPEC, [2, 1], 1e12 * np.array([3, 1]))
    _same_disks([Disk(5e12 / 3, 1e12 / 3), Disk(4e12 / 3, 0), Disk(2e12, 0)], region.disks, tol=1e-2)
    assert pair_family(coordinate_spec(2), [1, 1], [2e-12, 1e-12]).pairs == ((0, 1),)


def test_delta_general_colinear_is_zero():
    assert delta_general(SIGN_SPEC, [2, 1], [4j, 2j]) == 0.0


def test_complexify_birkhoff_examples(caplog):
    spec = complexify_birkhoff([[1, 0], [0, 1]])
    assert np.array_equal(spec.functionals, np.eye(2))
    assert has_independent_functionals(spec)

    with caplog.at_level(logging.WARNING):
        single = complexify_birkhoff([[1, 1]])
    assert not has_independent_functionals(single)
    assert "not proper" in caplog.text


def test_complexify_birkhoff_needs_generators():
    with pytest.raises(DimensionError):
        complexify_birkhoff([])


def test_complexified_coordinate_cone_matches_delta(rng):
    spec = complexify_birkhoff(np.eye(3))
    for x, y in interior_pairs(rng, 3, 100):
        assert abs(delta_general(spec, x, y) - delta(x, y)) <= 1e-10


def _sign_cone_pairs(rng, count):
    # x = S⁻¹u with u interior in ℂ₊² puts x inside the cone of SIGN_SPEC
    inverse = np.linalg.inv(SIGN_SPEC.functionals)
    return [(inverse @ u, inverse @ v) for u, v in interior_pairs(rng, 2, count)]


def test_e_region_general_membership_matches_cone_exit(rng):
    cases = [(SIGN_SPEC, pair) for pair in _sign_cone_pairs(rng, 10)]
    cases += [(complexify_birkhoff(np.eye(3)), pair) for pair in interior_pairs(rng, 3, 10)]
    checked = 0
    for spec, (x, y) in cases:
        region = e_region_general(spec, x, y)
        assert region.is_bounded
        for z in z_grid(region):
            if near_circle(region, z):
                continue
            assert region.contains(z) == (member(spec, z * x - y) is Membership.OUTSIDE)
            checked += 1
    assert checked > 10000


def test_e_region_general_contains_hull_of_centers(rng):
    cases = [(SIGN_SPEC, pair) for pair in _sign_cone_pairs(rng, 20)]
    cases += [(coordinate_spec(4), pair) for pair in interior_pairs(rng, 4, 20)]
    for spec, (x, y) in cases:
        region = e_region_general(spec, x, y)
        centers = np.array([d.center for d in region.disks if d.radius > 0])
        for weights in rng.dirichlet(np.ones(centers.size), size=20):
            assert region.contains(complex(weights @ centers), tol=1e-9)


@pytest.mark.acceptance
def test_delta_general_triangle_inequality_on_complexified_cones(rng):
    for n in (2, 3, 4):
        spec = complexify_birkhoff(np.eye(n))
        for _ in range(300):
            x, y, z = (random_cone_vector(n, rng) for _ in range(3))
            assert delta_general(spec, x, z) <= delta_general(spec, x, y) + delta_general(spec, y, z) + 1e-9
