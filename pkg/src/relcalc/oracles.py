"""Independent brute-force oracles used for cross-checking results.

Everything here is deliberately written against raw numpy least squares and
pseudoinverses, away from the subspace/relation machinery, so that an oracle
never shares a code path with the computation it checks.
"""

from __future__ import annotations

import numpy as np


def _sqrt_psd(matrix: np.ndarray) -> np.ndarray:
    sym = (matrix + matrix.conj().T) / 2
    eigs, vecs = np.linalg.eigh(sym)
    top = float(eigs[-1]) if eigs.size else 0.0
    # flush rounding-level eigenvalues so the root keeps the kernel exact
    eigs = np.where(eigs >= 1e-12 * max(top, 0.0) + 1e-14, eigs, 0.0)
    return (vecs * np.sqrt(eigs)) @ vecs.conj().T


def _null_basis(matrix: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape[1] == 0:
        return np.zeros((0, 0), dtype=complex)
    if matrix.shape[0] == 0:
        return np.eye(matrix.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(matrix)
    cutoff = rtol * (s[0] if s.size else 0.0) + 1e-12
    rank = int(np.count_nonzero(s > cutoff))
    return vh[rank:].conj().T


def weighted_min_over_span(weight: np.ndarray, span: np.ndarray, b: np.ndarray) -> float:
    """min over y in the column span of ||y - b|| in the weight seminorm,
    solved as an ordinary least-squares problem in the span coordinates."""
    w_half = _sqrt_psd(weight)
    if span.shape[1] == 0:
        return float(np.linalg.norm(w_half @ b))
    coeff, *_ = np.linalg.lstsq(w_half @ span, w_half @ b, rcond=None)
    return float(np.linalg.norm(w_half @ (span @ coeff - b)))


def minimize_seminorm_over_coset(
    weight: np.ndarray, point: np.ndarray, directions: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """argmin of the weight seminorm over point + span(directions).

    Returns a minimizer and a basis of the directions along which the
    seminorm stays minimal (the affine argmin set is minimizer + span of those).
    """
    w_half = _sqrt_psd(weight)
    if directions.shape[1] == 0:
        return point.copy(), directions
    coeff, *_ = np.linalg.lstsq(w_half @ directions, -(w_half @ point), rcond=None)
    minimizer = point + directions @ coeff
    flat = directions @ _null_basis(w_half @ directions)
    return minimizer, flat


def spline_kkt(T: np.ndarray, V: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Equality-constrained least squares by null-space reduction of the
    stationarity system: parametrize V x = b, minimize ||T x|| over the
    parameters.  Returns (min value, a minimizer, argmin directions)."""
    x_feasible, *_ = np.linalg.lstsq(V, b, rcond=None)
    Z = _null_basis(V)
    if Z.shape[1]:
        coeff, *_ = np.linalg.lstsq(T @ Z, -(T @ x_feasible), rcond=None)
        minimizer = x_feasible + Z @ coeff
        flat = Z @ _null_basis(T @ Z)
    else:
        minimizer = x_feasible
        flat = Z
    return float(np.linalg.norm(T @ minimizer)), minimizer, flat


def smoothing_normal_equations(T: np.ndarray, V: np.ndarray, b: np.ndarray, rho: float) -> np.ndarray:
    """Stationarity solve (T*T + rho V*V) x = rho V* b via pseudoinverse."""
    lhs = T.conj().T @ T + rho * (V.conj().T @ V)
    rhs = rho * (V.conj().T @ b)
    return np.linalg.pinv(lhs) @ rhs
