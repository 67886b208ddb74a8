import json
import math

import numpy as np
import pytest

from services.contraction import random_cone_vector

LOG2 = math.log(2.0)
LOG4 = math.log(4.0)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def symmetric_2x2():
    return np.array([[2, 1], [1, 2]], dtype=np.complex128)


@pytest.fixture
def rank_one_2x2():
    return np.array([[1, 1], [1, 1]], dtype=np.complex128)


@pytest.fixture
def identity_2x2():
    return np.eye(2, dtype=np.complex128)


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document to a temp file and return its path as str"""
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def write_text(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def interior_pairs(rng, n, count):
    return [(random_cone_vector(n, rng), random_cone_vector(n, rng)) for _ in range(count)]


def matrix_payload(A):
    return {"matrix": [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in np.asarray(A, dtype=complex)]}


def vectors_payload(vectors):
    return {"vectors": [[{"re": float(z.real), "im": float(z.imag)} for z in v] for v in np.asarray(vectors, dtype=complex)]}


def z_grid(region, size=25):
    """size×size grid over the bounding box of the region's disks, widened by half on each side"""
    disks = region.disks
    re_lo = min(d.center.real - d.radius for d in disks)
    re_hi = max(d.center.real + d.radius for d in disks)
    im_lo = min(d.center.imag - d.radius for d in disks)
    im_hi = max(d.center.imag + d.radius for d in disks)
    pad = 0.5 * max(re_hi - re_lo, im_hi - im_lo, 1e-3)
    re = np.linspace(re_lo - pad, re_hi + pad, size)
    im = np.linspace(im_lo - pad, im_hi + pad, size)
    return (re[:, None] + 1j * im[None, :]).ravel()


def near_circle(region, z, gap=1e-6):
    """Whether z sits within gap (relative) of a disk boundary or a point part"""
    return any(abs(abs(z - d.center) - d.radius) <= gap * max(1.0, abs(d.center), d.radius) for d in region.disks)
