"""Entanglement diagnostics for two-qubit pure states and rank-2 projectors.

Separability of the rank-2 projectors is decided by the positivity of the
partial transpose, which is necessary and sufficient in 2x2 dimensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    det2,
    hermitian_eigenvalues,
    is_hermitian,
    normalize,
    outer,
    partial_transpose,
)
from .states import BipartiteKet, OrthonormalBasis, coefficient_matrix

CONCURRENCE_ZERO_TOL = 1e-9
SEPARABILITY_TOL = 1e-9
PSD_ATOL = 1e-10


@dataclass(frozen=True)
class SeparabilityCertificate:
    """PPT verdict for a positive semidefinite 4x4 operator.

    The raw minimum partial-transpose eigenvalue is kept so callers can
    recognize boundary cases instead of trusting the boolean alone.
    """

    min_pt_eigenvalue: float
    is_separable: bool
    tolerance: float = SEPARABILITY_TOL


@dataclass(frozen=True)
class ProductDecomposition:
    """Conditional decomposition |psi> = n0 |0>|eta0> + n1 |1>|eta1>
    with respect to the first party's computational basis."""

    eta0: np.ndarray
    eta1: np.ndarray
    n0: float
    n1: float
    is_product: bool
    overlap: float  # |<eta0|eta1>|; 1 when the branches coincide


def concurrence(k: BipartiteKet) -> float:
    """Entanglement of a two-qubit pure state: |det M| for the coefficient
    matrix M. Ranges over [0, 1]; 0 means product, 1 maximally entangled."""
    return float(abs(det2(coefficient_matrix(k))))


def product_decomposition(k: BipartiteKet) -> ProductDecomposition:
    """Split a ket over the first party's computational outcomes.

    The state is product exactly when the two conditional branches point in
    the same direction (or one branch vanishes).
    """
    c = k.amplitudes.reshape(2, 2)
    n0 = float(np.linalg.norm(c[0]))
    n1 = float(np.linalg.norm(c[1]))
    eta0 = normalize(c[0]) if n0 > 1e-12 else np.array([1.0, 0.0], dtype=complex)
    eta1 = normalize(c[1]) if n1 > 1e-12 else np.array([1.0, 0.0], dtype=complex)
    if n0 < CONCURRENCE_ZERO_TOL or n1 < CONCURRENCE_ZERO_TOL:
        overlap = 1.0
        is_product = True
    else:
        overlap = float(abs(np.vdot(eta0, eta1)))
        is_product = overlap > 1.0 - CONCURRENCE_ZERO_TOL
    eta0.setflags(write=False)
    eta1.setflags(write=False)
    return ProductDecomposition(eta0, eta1, n0, n1, is_product, overlap)


def pair_projector(b: OrthonormalBasis, i: int, j: int, complement: bool = False) -> np.ndarray:
    """Rank-2 projector onto span{states[i], states[j]} (or its orthocomplement)."""
    if i == j:
        raise ValueError("pair projector needs two distinct states")
    p = outer(b[i].amplitudes) + outer(b[j].amplitudes)
    return np.eye(4, dtype=complex) - p if complement else p


def separability_certificate(m) -> SeparabilityCertificate:
    """PPT certificate for a Hermitian PSD operator on two qubits."""
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m):
        raise ValueError("operator is not Hermitian")
    if float(np.linalg.eigvalsh(m)[0]) < -PSD_ATOL:
        raise ValueError("operator is not positive semidefinite")
    min_pt = float(hermitian_eigenvalues(partial_transpose(m))[0])
    return SeparabilityCertificate(
        min_pt_eigenvalue=min_pt,
        is_separable=min_pt >= -SEPARABILITY_TOL,
    )


def _sqrt_clamped(x: float) -> float:
    # closed-form radicands are nonnegative up to roundoff
    return math.sqrt(x) if x > 0.0 else 0.0


def pt_spectrum_p12_closed(alpha: float, beta: float) -> np.ndarray:
    """Closed-form partial-transpose spectrum of the projector onto the first
    two family states (equivalently the last two), for every gamma.

    Returned as (e1, e2, e3, e4) with e1 + e2 = e3 + e4 = 1; e1*e3 < 0
    unless cos(4 alpha) = cos(4 beta), which makes the projector NPT almost
    everywhere.
    """
    x = _sqrt_clamped(2.0 + math.cos(4 * alpha) - math.cos(4 * beta))
    y = _sqrt_clamped(2.0 - math.cos(4 * alpha) + math.cos(4 * beta))
    r2 = math.sqrt(2.0)
    return np.array(
        [
            0.25 * (2.0 - r2 * x),
            0.25 * (2.0 + r2 * x),
            0.25 * (2.0 - r2 * y),
            0.25 * (2.0 + r2 * y),
        ]
    )


def pt_spectrum_cross_closed(alpha: float, beta: float) -> np.ndarray:
    """Closed-form partial-transpose spectrum of the four cross-pair
    projectors (1,3), (1,4), (2,3), (2,4) of the three-angle family at
    gamma = pi/4 (the only gamma where this form applies).

    e3 is negative except on the measure-zero set sin(2 alpha) = -sin(2 beta).
    """
    s2a, s2b = math.sin(2 * alpha), math.sin(2 * beta)
    d = (s2a + s2b) ** 2 * (
        18.0 - 12.0 * s2a * s2b - math.cos(4 * alpha) - math.cos(4 * beta)
    )
    root = 2.0 * math.sqrt(2.0) * _sqrt_clamped(d)
    lo = _sqrt_clamped(16.0 - root)
    hi = _sqrt_clamped(16.0 + root)
    return np.array(
        [
            0.125 * (4.0 - lo),
            0.125 * (4.0 + lo),
            0.125 * (4.0 - hi),
            0.125 * (4.0 + hi),
        ]
    )
