"""Abstract splines (minimal ||Tx|| under V x = b) and the associated
quadratic smoothing trade-off min ||Tx||^2 + rho ||Vx - b||^2.

The interpolation problem reduces to a weighted inclusion with weight T*T;
the smoothing problem is an orthogonal projection onto the range pairs
{(Tx, Vx)} after rescaling the second slot by sqrt(rho).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError
from .subspaces import Coset, Subspace, Tolerance, _tol, null_space
from .relations import apply, identity_minus, parts
from .weighted import Weight, make_pws
from . import oracles


@dataclass(frozen=True)
class SplineProblem:
    """Data for min ||T x|| subject to V x = b; V must be surjective."""

    T: np.ndarray
    V: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        T = np.asarray(self.T, dtype=complex)
        V = np.asarray(self.V, dtype=complex)
        b = np.asarray(self.b, dtype=complex)
        if T.ndim != 2 or V.ndim != 2 or b.ndim != 1:
            raise ValueError("T and V must be matrices, b a vector")
        if T.shape[1] != V.shape[1]:
            raise ValueError(
                f"T acts on C^{T.shape[1]} but V acts on C^{V.shape[1]}"
            )
        if b.shape[0] != V.shape[0]:
            raise ValueError(f"b has length {b.shape[0]}, expected {V.shape[0]}")
        if np.linalg.matrix_rank(V) < V.shape[0]:
            raise ValueError("V must be surjective (full row rank)")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class SmoothingProblem:
    base: SplineProblem
    rho: float

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError("rho must be positive")


@dataclass(frozen=True)
class SplineSolution:
    exists: bool
    spline_set: Coset
    min_value: float


@dataclass(frozen=True)
class SmoothingSolution:
    argmin_set: Coset
    min_value: float


@dataclass(frozen=True)
class ProjectionBlocks:
    """The four operator blocks of the orthogonal projector onto {(Tx, Vx)}."""

    tt: np.ndarray
    tv: np.ndarray
    vt: np.ndarray
    vv: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.block([[self.tt, self.tv], [self.vt, self.vv]])


def spline_solve(p: SplineProblem, tol: Tolerance | None = None) -> SplineSolution:
    """Interpolating splines as the reduction of a feasible point.

    Take any x~ with V x~ = b; the spline set is (I - P) x~ for the weighted
    projection P with weight T*T onto ker V.  The result must not depend on
    the feasible point chosen, the objective must be constant on the set, and
    every member must still interpolate -- all three are checked.
    """
    x_feasible, *_ = np.linalg.lstsq(p.V, p.b, rcond=None)
    weight = Weight(p.T.conj().T @ p.T, "psd")
    ker_v = null_space(p.V, tol)
    proj = make_pws(weight, ker_v, tol)
    if not parts(proj, tol).dom.contains_vector(x_feasible, tol):
        # a psd weight is always complementable here, so this cannot happen
        raise ConsistencyError("feasible point escaped the projection domain")
    reducer = identity_minus(proj, tol)
    spline_set = apply(reducer, x_feasible, tol)
    min_value = float(np.linalg.norm(p.T @ spline_set.point))
    if spline_set.direction.dim:
        second = spline_set.point + spline_set.direction.basis[:, 0]
        other = float(np.linalg.norm(p.T @ second))
        if abs(other - min_value) > 1e-8 * (1.0 + min_value):
            raise ConsistencyError("objective varies across the spline set")
    _check_interpolation(p, spline_set, tol)
    if ker_v.dim:
        alternative = apply(reducer, x_feasible + ker_v.basis[:, 0], tol)
        if not spline_set.equals(alternative, tol):
            raise ConsistencyError("spline set depends on the feasible point chosen")
    return SplineSolution(exists=True, spline_set=spline_set, min_value=min_value)


def _check_interpolation(p: SplineProblem, spline_set: Coset, tol: Tolerance | None):
    tol_ = _tol(tol)
    scale = max(1.0, float(np.linalg.norm(p.b)))
    thresh = max(1e-9 * scale, tol_.residual(scale, p.V.shape[0]) * 10)
    if np.linalg.norm(p.V @ spline_set.point - p.b) > thresh:
        raise ConsistencyError("spline representative misses the interpolation constraint")
    if spline_set.direction.dim:
        drift = np.linalg.norm(p.V @ spline_set.direction.basis, axis=0)
        if np.any(drift > thresh):
            raise ConsistencyError("spline set directions leave the constraint set")


def smooth_solve(p: SmoothingProblem, tol: Tolerance | None = None) -> SmoothingSolution:
    """Minimize ||Tx||^2 + rho ||Vx - b||^2 by a rescaled orthogonal projection.

    Stacking T over sqrt(rho) V turns the objective into a single Euclidean
    distance, solved by least squares; the argmin set is a coset of
    ker T cap ker V.  The stationarity route (T*T + rho V*V) x = rho V* b is
    recomputed and must agree.
    """
    T, V, b, rho = p.base.T, p.base.V, p.base.b, p.rho
    root = np.sqrt(rho)
    stacked = np.vstack([T, root * V])
    target = np.concatenate([np.zeros(T.shape[0], dtype=complex), root * b])
    x_star, *_ = np.linalg.lstsq(stacked, target, rcond=None)
    direction = null_space(stacked, tol)
    min_value = float(np.linalg.norm(stacked @ x_star - target))
    argmin = Coset.of(x_star, direction)

    x_check = oracles.smoothing_normal_equations(T, V, b, rho)
    check_value = float(np.linalg.norm(stacked @ x_check - target))
    if abs(check_value - min_value) > 1e-8 * (1.0 + min_value):
        raise ConsistencyError("stationarity route reaches a different objective value")
    if not argmin.contains(x_check, tol):
        raise ConsistencyError("stationarity solution lies outside the argmin set")
    return SmoothingSolution(argmin_set=argmin, min_value=min_value)


def projection_m(T: np.ndarray, V: np.ndarray, tol: Tolerance | None = None) -> ProjectionBlocks:
    """Blocks of the orthogonal projector onto the range pairs {(Tx, Vx)}.

    Each block has the form (row) (T*T + V*V)^+ (column)*; the assembled
    matrix is idempotent, selfadjoint and has the stacked column space of
    (T; V) as its range.
    """
    T = np.asarray(T, dtype=complex)
    V = np.asarray(V, dtype=complex)
    if T.ndim != 2 or V.ndim != 2 or T.shape[1] != V.shape[1]:
        raise ValueError("T and V must be matrices with a common domain")
    core = np.linalg.pinv(T.conj().T @ T + V.conj().T @ V)
    return ProjectionBlocks(
        tt=T @ core @ T.conj().T,
        tv=T @ core @ V.conj().T,
        vt=V @ core @ T.conj().T,
        vv=V @ core @ V.conj().T,
    )
