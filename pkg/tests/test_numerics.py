import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import Polynomial

from modules.exceptions import DimensionError
from services.numerics import (
    ORACLE_MAX_DIM,
    as_matrix,
    characteristic_polynomial,
    eigenvalues,
    mat_apply,
    polynomial_roots,
    sort_by_modulus,
)


def test_mat_apply_examples():
    assert np.allclose(mat_apply(np.eye(2), [1, 2]), [1, 2])
    assert np.allclose(mat_apply([[2, 1], [1, 2]], [1, 0]), [2, 1])
    assert np.allclose(mat_apply([[0, 1j], [1j, 0]], [1, 1]), [1j, 1j])


def test_mat_apply_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_apply(np.eye(2), [1, 2, 3])


def test_as_matrix_rejects_non_square():
    with pytest.raises(DimensionError):
        as_matrix([[1, 2, 3], [4, 5, 6]])


def test_characteristic_polynomial_examples():
    assert np.allclose(characteristic_polynomial([[2, 1], [1, 2]]).coef, [3, -4, 1])
    assert np.allclose(characteristic_polynomial([[1, 1], [1, 1]]).coef, [0, -2, 1])
    expected = Polynomial.fromroots([1.0, 2.0, 3.0]).coef
    assert np.allclose(characteristic_polynomial(np.diag([1.0, 2.0, 3.0])).coef, expected)


def test_characteristic_polynomial_size_limit():
    with pytest.raises(DimensionError):
        characteristic_polynomial(np.eye(ORACLE_MAX_DIM + 1))


def _same_roots(found, expected, tol=1e-9):
    found = list(found)
    for root in expected:
        index = int(np.argmin([abs(z - root) for z in found]))
        assert abs(found.pop(index) - root) < tol
    assert not found


def test_polynomial_roots_examples():
    _same_roots(polynomial_roots(Polynomial([3, -4, 1])), [3, 1])
    _same_roots(polynomial_roots(Polynomial([1, 0, 1])), [1j, -1j])
    unity = [np.exp(2j * np.pi * k / 3) for k in range(3)]
    _same_roots(polynomial_roots(Polynomial([-1, 0, 0, 1])), unity)


def test_polynomial_roots_degree_zero():
    with pytest.raises(DimensionError):
        polynomial_roots(Polynomial([2.0]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=6, unique=True))
def test_polynomial_roots_recover_prescribed_roots(lattice):
    roots = [complex(re, im) / 2.0 for re, im in lattice]
    p = Polynomial.fromroots(roots)
    found = polynomial_roots(p)
    assert found.size == len(roots)
    # Backward error: every returned root nearly annihilates p
    scale = np.polynomial.polynomial.polyval(np.abs(found), np.abs(p.coef))
    assert np.all(np.abs(p(found)) <= 1e-9 * np.maximum(scale, 1.0))


def test_eigenvalues_examples():
    assert np.allclose(eigenvalues([[2, 1], [1, 2]]), [3, 1])
    assert np.allclose(eigenvalues([[1, 1], [1, 1]]), [2, 0], atol=1e-10)
    assert np.allclose(eigenvalues([[1, 5], [0, 2]]), [2, 1])


def test_sort_by_modulus_breaks_ties_by_real_then_imaginary_part():
    assert np.allclose(sort_by_modulus([1j, -1, 1, -1j]), [1, 1j, -1j, -1])


def test_eigenvalues_match_numpy_on_random_matrices(rng):
    for n in range(2, 7):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        ours = eigenvalues(A)
        reference = sort_by_modulus(np.linalg.eigvals(A))
        assert np.allclose(np.abs(ours), np.abs(reference), atol=1e-8)


def test_eigenvalues_sum_to_the_trace(rng):
    for n in range(2, 9):
        for _ in range(5):
            A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            assert abs(np.sum(eigenvalues(A)) - np.trace(A)) <= 1e-8 * np.linalg.norm(A)
