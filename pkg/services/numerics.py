"""
Complex vector/matrix plumbing and a brute-force eigenvalue oracle

The oracle (characteristic polynomial + simultaneous root iteration) is for
cross-checking certificates only. Certification code never calls it.
"""
import logging
from typing import List, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from numpy.typing import ArrayLike, NDArray

from modules.config import settings
from modules.exceptions import ConvergenceError, DimensionError

logger = logging.getLogger(__name__)

ComplexVector = NDArray[np.complex128]
ComplexMatrix = NDArray[np.complex128]

ORACLE_MAX_DIM = settings.ORACLE_MAX_DIM
# Irrational starting rotation for the root iteration
_INIT_ROTATION = np.sqrt(2.0) - 1.0


def as_vector(v: ArrayLike) -> ComplexVector:
    """
    Coerce input to a finite, non-empty complex vector

    Args:
        v: Anything numpy can turn into a 1-D array

    Returns:
        complex128 copy of the input
    """
    arr = np.array(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a non-empty vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError("vector has non-finite entries")
    return arr


def as_matrix(A: ArrayLike) -> ComplexMatrix:
    """
    Coerce input to a finite square complex matrix

    Args:
        A: Anything numpy can turn into a 2-D array

    Returns:
        complex128 copy of the input
    """
    arr = np.array(A, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError("matrix has non-finite entries")
    return arr


def mat_apply(A: ArrayLike, x: ArrayLike) -> ComplexVector:
    """(Ax)_k = Σ_j a_kj x_j"""
    A = as_matrix(A)
    x = as_vector(x)
    if A.shape[1] != x.size:
        raise DimensionError(f"matrix is {A.shape[0]}x{A.shape[1]} but vector has length {x.size}")
    return A @ x


def characteristic_polynomial(A: ArrayLike) -> Polynomial:
    """
    Monic p(λ) = det(λI − A) by the Faddeev–LeVerrier recurrence

    Args:
        A: Square matrix, n ≤ ORACLE_MAX_DIM

    Returns:
        Polynomial with ascending coefficients c_0 … c_n, c_n = 1
    """
    A = as_matrix(A)
    n = A.shape[0]
    if n > ORACLE_MAX_DIM:
        raise DimensionError(f"oracle is limited to n ≤ {ORACLE_MAX_DIM}, got {n}")

    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    identity = np.eye(n, dtype=np.complex128)
    M = np.zeros_like(A)
    for k in range(1, n + 1):
        M = A @ M + coeffs[n - k + 1] * identity
        coeffs[n - k] = -np.trace(A @ M) / k
    return Polynomial(coeffs)


def _backward_error(coeffs: NDArray, z: NDArray) -> NDArray:
    """|p(z)| relative to Σ|c_j||z|^j, the natural evaluation scale"""
    value = np.polynomial.polynomial.polyval(z, coeffs)
    scale = np.polynomial.polynomial.polyval(np.abs(z), np.abs(coeffs))
    return np.abs(value) / np.maximum(scale, np.finfo(float).tiny)


def polynomial_roots(p: Polynomial, tol: float = 1e-12, max_iter: int = 500) -> ComplexVector:
    """
    All roots of p by Aberth–Ehrlich simultaneous iteration

    Starts from equispaced points on the circle of radius 1 + max|c_i| (monic
    normalization), rotated by an irrational angle.

    Args:
        p: Polynomial of degree ≥ 1
        tol: Relative backward error accepted for each root
        max_iter: Iteration cap

    Returns:
        Array of deg(p) roots
    """
    coeffs = np.trim_zeros(np.asarray(p.coef, dtype=np.complex128), "b")
    degree = coeffs.size - 1
    if degree < 1:
        raise DimensionError("polynomial must have degree ≥ 1")
    coeffs = coeffs / coeffs[-1]
    if degree == 1:
        return np.array([-coeffs[0]], dtype=np.complex128)

    deriv = np.polynomial.polynomial.polyder(coeffs)
    radius = 1.0 + np.max(np.abs(coeffs[:-1]))
    angles = 2.0 * np.pi * np.arange(degree) / degree + _INIT_ROTATION
    z = radius * np.exp(1j * angles)

    polish_left = 2
    for iteration in range(max_iter):
        done = _backward_error(coeffs, z) <= tol
        if np.all(done):
            if polish_left == 0:
                logger.debug(f"Aberth converged after {iteration} iterations (degree {degree})")
                return z
            polish_left -= 1

        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.polynomial.polynomial.polyval(z, coeffs) / np.polynomial.polynomial.polyval(z, deriv)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            repulsion = np.sum(1.0 / diff, axis=1) - 1.0
            step = ratio / (1.0 - ratio * repulsion)
        bad = ~np.isfinite(step)
        if np.any(bad):
            # Derivative vanished or two iterates collided: nudge and continue
            step[bad] = 1e-8 * radius * (1.0 + 1.0j)
        if polish_left == 2:
            step[done] = 0.0
        z = z - step

    raise ConvergenceError(f"root iteration did not converge in {max_iter} iterations (degree {degree})")


def _is_triangular(A: ComplexMatrix) -> bool:
    return bool(np.array_equal(A, np.triu(A)) or np.array_equal(A, np.tril(A)))


def sort_by_modulus(values: ArrayLike) -> ComplexVector:
    """Descending modulus, ties broken by descending real then imaginary part"""
    values = np.asarray(values, dtype=np.complex128)
    # Round keys so that rounding noise does not split exact ties
    keys: List[Tuple[float, float, float]] = [
        (-round(abs(v), 12), -round(v.real, 12), -round(v.imag, 12)) for v in values
    ]
    order = sorted(range(values.size), key=lambda i: keys[i])
    return values[order]


def eigenvalues(A: ArrayLike) -> ComplexVector:
    """
    Eigenvalues of A sorted by modulus descending (verification oracle)

    Triangular matrices return their diagonal directly.
    """
    A = as_matrix(A)
    if A.shape[0] > ORACLE_MAX_DIM:
        raise DimensionError(f"oracle is limited to n ≤ {ORACLE_MAX_DIM}, got {A.shape[0]}")
    if _is_triangular(A):
        return sort_by_modulus(np.diag(A))
    return sort_by_modulus(polynomial_roots(characteristic_polynomial(A)))
