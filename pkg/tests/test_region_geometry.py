import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.exceptions import GeometryError
from services.region_geometry import (
    INF,
    Disk,
    DiskComplement,
    HalfPlane,
    MoebiusMap,
    Region,
    disk_rhp_diameter,
    hyperbolic_center,
    moebius_image_rhp,
    omega_alpha_distance,
    poincare_complement_disk,
    region_mod_bounds,
    rhp_poincare,
    rhp_union_diameter,
    sector_upper_bound,
    separating_line_bound,
)
from tests.conftest import LOG2, LOG4

complex_entries = st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False)


def test_moebius_image_disk_example():
    image = moebius_image_rhp(MoebiusMap(a=2, b=1, c=1, d=1))
    assert isinstance(image, Disk)
    assert abs(image.center - 1.5) < 1e-12
    assert abs(image.radius - 0.5) < 1e-12


def test_moebius_image_identity_is_right_half_plane():
    image = moebius_image_rhp(MoebiusMap(a=1, b=0, c=0, d=1))
    assert isinstance(image, HalfPlane)
    assert abs(image.normal - 1) < 1e-12
    assert abs(image.offset) < 1e-12


def test_moebius_image_reciprocal_is_right_half_plane():
    image = moebius_image_rhp(MoebiusMap(a=0, b=1, c=1, d=0))
    assert isinstance(image, HalfPlane)
    assert abs(image.normal - 1) < 1e-12
    assert abs(image.offset) < 1e-12


def test_moebius_image_pole_in_right_half_plane_gives_complement():
    # φ(w) = 1/(w − 1): pole at 1
    image = moebius_image_rhp(MoebiusMap(a=0, b=1, c=1, d=-1))
    assert isinstance(image, DiskComplement)
    assert image.contains(100.0)
    assert not image.contains(-0.5)


def test_degenerate_moebius_map_rejected():
    with pytest.raises(GeometryError):
        MoebiusMap(a=1, b=2, c=2, d=4)


@settings(max_examples=60, deadline=None)
@given(complex_entries, complex_entries, complex_entries, complex_entries, st.floats(0.05, 5.0), st.floats(-5.0, 5.0))
def test_moebius_image_contains_images_of_right_half_plane_points(a, b, c, d, re, im):
    scale = max(abs(a), abs(b), abs(c), abs(d))
    if scale < 1e-3 or abs(a * d - b * c) < 1e-3 * scale * scale:
        return
    phi = MoebiusMap(a, b, c, d)
    w = complex(re, im)
    z = phi(w)
    if not np.isfinite(z) or abs(z) > 1e6:
        return
    assert moebius_image_rhp(phi).contains(z, tol=1e-6)


@settings(max_examples=40, deadline=None)
@given(complex_entries, complex_entries, complex_entries, complex_entries, st.floats(0.1, 3.0), st.floats(-3.0, 3.0))
def test_moebius_inverse_round_trip(a, b, c, d, re, im):
    scale = max(abs(a), abs(b), abs(c), abs(d))
    if scale < 1e-2 or abs(a * d - b * c) < 1e-2 * scale * scale:
        return
    phi = MoebiusMap(a, b, c, d)
    w = complex(re, im)
    z = phi(w)
    if not np.isfinite(z) or abs(z) > 1e6:
        return
    back = phi.inverse()(z)
    assert abs(back - w) <= 1e-6 * max(1.0, abs(w))
    assert abs(phi.compose(phi.inverse())(w) - w) <= 1e-6 * max(1.0, abs(w))


def test_region_mod_bounds_examples():
    region = Region((Disk(1.5, 0.5), Disk(2, 0), Disk(1, 0)))
    assert region_mod_bounds(region) == pytest.approx((1.0, 2.0), abs=1e-12)
    assert region_mod_bounds(Region((Disk(1.25, 0.75),))) == pytest.approx((0.5, 2.0), abs=1e-12)
    assert region_mod_bounds(Region((HalfPlane(1, 1.0),))) == (1.0, INF)


def test_region_mod_bounds_empty_region():
    with pytest.raises(GeometryError):
        region_mod_bounds(Region(()))


def test_simplified_drops_covered_points():
    region = Region((Disk(2, 0), Disk(1.5, 0.5), Disk(1, 0), Disk(1.5, 0.5)))
    assert region.simplified().parts == (Disk(1.5, 0.5),)


def test_rhp_poincare_examples():
    assert rhp_poincare(1, 3) == pytest.approx(math.log(3), abs=1e-12)
    assert rhp_poincare(2 + 1j, 2 + 1j) == 0.0
    assert rhp_poincare(1 + 1j, 1 - 1j) == pytest.approx(2 * math.log(1 + math.sqrt(2)), abs=1e-12)


def test_rhp_poincare_rejects_left_half_plane():
    with pytest.raises(GeometryError):
        rhp_poincare(-1, 1)


@settings(max_examples=60, deadline=None)
@given(*[st.tuples(st.floats(0.05, 10.0), st.floats(-10.0, 10.0)) for _ in range(3)])
def test_rhp_poincare_is_a_metric(p, q, r):
    a, b, c = complex(*p), complex(*q), complex(*r)
    assert rhp_poincare(a, b) == pytest.approx(rhp_poincare(b, a), rel=1e-9, abs=1e-12)
    assert rhp_poincare(a, c) <= rhp_poincare(a, b) + rhp_poincare(b, c) + 1e-9


def test_disk_rhp_diameter_examples():
    assert disk_rhp_diameter(Disk(1.25, 0.75)) == pytest.approx(LOG4, abs=1e-12)
    assert disk_rhp_diameter(Disk(3 + 1j, 0)) == 0.0
    assert disk_rhp_diameter(Disk(2, 1)) == pytest.approx(math.log(3), abs=1e-12)


def test_disk_touching_imaginary_axis_rejected():
    with pytest.raises(GeometryError):
        disk_rhp_diameter(Disk(1, 1))


def test_hyperbolic_center_of_symmetric_disk():
    center, radius = hyperbolic_center(Disk(1.25, 0.75))
    assert abs(center - 1.0) < 1e-12
    assert radius == pytest.approx(LOG2, abs=1e-12)


def test_rhp_union_diameter_examples():
    single = rhp_union_diameter([Disk(1.25, 0.75)])
    assert single.lower == pytest.approx(LOG4, abs=1e-12)
    assert single.upper == pytest.approx(LOG4, abs=1e-12)

    twice = rhp_union_diameter([Disk(1.25, 0.75), Disk(1.25, 0.75)])
    assert twice == single

    points = rhp_union_diameter([Disk(1, 0), Disk(3, 0)])
    assert points.lower == pytest.approx(math.log(3), abs=1e-12)
    assert points.upper == pytest.approx(math.log(3), abs=1e-12)


def test_rhp_union_diameter_brackets_boundary_samples(rng):
    disks = [Disk(2 + 1j, 0.8), Disk(3 - 0.5j, 1.2), Disk(1.5, 0.3)]
    estimate = rhp_union_diameter(disks, samples=128)
    assert estimate.lower <= estimate.upper + 1e-12
    points = [d.center + d.radius * np.exp(1j * t) for d in disks for t in rng.uniform(0, 2 * np.pi, 60)]
    sampled = max(rhp_poincare(p, q) for p in points for q in points)
    assert sampled <= estimate.upper + 1e-9
    assert estimate.lower >= sampled - 1e-3


def test_rhp_union_diameter_needs_enough_samples():
    with pytest.raises(GeometryError):
        rhp_union_diameter([Disk(1.25, 0.75)], samples=8)


def test_poincare_complement_disk_examples():
    assert poincare_complement_disk(Disk(1.5, 0.5)) == pytest.approx(LOG2, abs=1e-12)
    assert poincare_complement_disk(Disk(1.25, 0.75)) == pytest.approx(LOG4, abs=1e-12)
    assert poincare_complement_disk(Disk(2, 1e-9)) < 1e-8


def test_poincare_complement_disk_containing_zero():
    with pytest.raises(GeometryError):
        poincare_complement_disk(Disk(0.5, 1.0))


def test_omega_alpha_distance_examples():
    assert omega_alpha_distance(1, 2, 1) == pytest.approx(LOG2, abs=1e-12)
    assert omega_alpha_distance(1, 2, 2.7) == pytest.approx(2.7 * LOG2, abs=1e-12)
    assert omega_alpha_distance(3, 3, 5) == 0.0
    with pytest.raises(GeometryError):
        omega_alpha_distance(1, 2, 0.5)


def test_sector_upper_bound_single_disk_is_at_least_exact_value():
    bound = sector_upper_bound(Region((Disk(1.5, 0.5),)))
    assert LOG2 <= bound < math.inf


def test_sector_upper_bound_wide_spread_is_infinite():
    region = Region((Disk(1, 0), Disk(1j, 0), Disk(-1, 0)))
    assert sector_upper_bound(region) == INF


def test_sector_upper_bound_points_on_one_circle_is_infinite():
    region = Region((Disk(1, 0), Disk(np.exp(0.3j), 0)))
    assert sector_upper_bound(region) == INF


def test_sector_upper_bound_real_points_use_smallest_alpha():
    # Θ = 0 admits every α ≥ 1; the tightest is α = 1
    assert sector_upper_bound(Region((Disk(1, 0), Disk(2, 0)))) == pytest.approx(LOG2, abs=1e-12)


def test_separating_line_bound_below_exponential_bound():
    region = Region((Disk(1.5, 0.5), Disk(1.6 + 0.3j, 0.4)))
    a, b = region_mod_bounds(region)
    delta = math.log(b / a)
    assert separating_line_bound(region) <= math.pi * math.sqrt(2) * math.exp(delta / 2) + 1e-12


def test_separating_line_bound_needs_a_separating_direction():
    region = Region((Disk(1, 0), Disk(-1, 0)))
    assert separating_line_bound(region) == INF


def test_disk_rhp_diameter_matches_boundary_samples(rng):
    # 64 equispaced angles include 0 and π, the ends of the horizontal geodesic diameter
    angles = 2 * np.pi * np.arange(64) / 64
    for _ in range(20):
        radius = rng.uniform(0.05, 2.0)
        disk = Disk(complex(radius + rng.uniform(0.05, 3.0), rng.uniform(-3.0, 3.0)), radius)
        boundary = disk.center + disk.radius * np.exp(1j * angles)
        sampled = max(rhp_poincare(p, q) for p in boundary for q in boundary)
        assert sampled == pytest.approx(disk_rhp_diameter(disk), abs=1e-6)


def test_poincare_complement_disk_is_rotation_invariant(rng):
    for _ in range(50):
        modulus = rng.uniform(0.5, 5.0)
        disk = Disk(modulus * np.exp(1j * rng.uniform(0, 2 * np.pi)), rng.uniform(0.0, 0.95) * modulus)
        value = poincare_complement_disk(disk)
        for theta in rng.uniform(0, 2 * np.pi, 4):
            rotated = Disk(disk.center * np.exp(1j * theta), disk.radius)
            assert poincare_complement_disk(rotated) == pytest.approx(value, rel=1e-12, abs=1e-12)


def test_region_mod_bounds_of_unions_agree_with_sampled_membership(rng):
    for _ in range(20):
        disks = [
            Disk(complex(rng.uniform(-4, 4), rng.uniform(-4, 4)), rng.uniform(0.0, 1.5))
            for _ in range(int(rng.integers(2, 5)))
        ]
        region = Region(tuple(disks))
        low, high = region_mod_bounds(region)

        samples = rng.uniform(-6, 6, 4000) + 1j * rng.uniform(-6, 6, 4000)
        inside = [z for z in samples if region.contains(z)]
        assert all(low - 1e-12 <= abs(z) <= high + 1e-12 for z in inside)

        # the nearest and farthest points of each disk along its center ray are members
        extremes = []
        for disk in disks:
            direction = disk.center / abs(disk.center) if disk.center != 0 else 1.0
            extremes += [disk.center - disk.radius * direction, disk.center + disk.radius * direction]
            if abs(disk.center) <= disk.radius:
                extremes.append(0j)
        assert all(region.contains(z) for z in extremes)
        assert min(abs(z) for z in extremes) == pytest.approx(low, abs=1e-12)
        assert max(abs(z) for z in extremes) == pytest.approx(high, abs=1e-12)
