"""Complex subspace arithmetic on orthonormal bases, with one shared tolerance policy.

Everything downstream (relations, multivalued projections, the solvers) reduces
to rank decisions and residual comparisons made in this module, so the cutoff
rules live here and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError

DEFAULT_ABS_EPS = 1e-10
REL_EPS_PER_DIM = 1e-12


@dataclass(frozen=True)
class Tolerance:
    """Mixed absolute/relative thresholds for rank cuts and subspace comparisons.

    A singular value survives the rank cut when
    ``sigma >= rel_eps * sigma_max + abs_eps``.  When ``rel_eps`` is None it
    defaults to ``REL_EPS_PER_DIM`` times the larger matrix dimension, so the
    relative part scales with the problem size.
    """

    abs_eps: float = DEFAULT_ABS_EPS
    rel_eps: float | None = None

    def __post_init__(self):
        if self.abs_eps < 0:
            raise ValueError("abs_eps must be nonnegative")
        if self.rel_eps is not None and self.rel_eps < 0:
            raise ValueError("rel_eps must be nonnegative")

    def _rel(self, dim: int) -> float:
        if self.rel_eps is not None:
            return self.rel_eps
        return REL_EPS_PER_DIM * max(dim, 1)

    def rank_cutoff(self, sigma_max: float, shape) -> float:
        return self._rel(max(shape)) * sigma_max + self.abs_eps

    def residual(self, scale: float, dim: int) -> float:
        """Acceptance threshold for a residual norm at the given data scale."""
        return self._rel(dim) * scale + self.abs_eps


DEFAULT_TOL = Tolerance()


def _tol(tol: Tolerance | None) -> Tolerance:
    return DEFAULT_TOL if tol is None else tol


def _phase_canonical(basis: np.ndarray) -> np.ndarray:
    """Rotate each column so its first significant entry is real and positive."""
    if basis.shape[1] == 0:
        return basis
    mags = np.abs(basis)
    significant = mags > 1e-6 * mags.max(axis=0, keepdims=True)
    lead = significant.argmax(axis=0)  # first True per column
    pivots = basis[lead, np.arange(basis.shape[1])]
    return basis * (pivots.conj() / np.abs(pivots))


class Subspace:
    """A linear subspace of C^n held as an n x k matrix with orthonormal columns.

    The zero subspace is the k = 0 case, not a special sentinel.  Instances are
    immutable; all operations return new objects.
    """

    __slots__ = ("basis",)

    def __init__(self, basis: np.ndarray, validate: bool = True):
        basis = np.array(basis, dtype=complex)
        if basis.ndim != 2:
            raise ValueError("basis must be a 2-d array of column vectors")
        if basis.shape[1] > basis.shape[0]:
            raise ValueError(
                f"basis has {basis.shape[1]} columns in ambient dimension {basis.shape[0]}"
            )
        if validate and basis.shape[1]:
            gram = basis.conj().T @ basis
            if not np.allclose(gram, np.eye(basis.shape[1]), atol=1e-8):
                raise ValueError("basis columns are not orthonormal")
        basis.setflags(write=False)
        self.basis = basis

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def project(self, v: np.ndarray) -> np.ndarray:
        v = _as_vector(v, self.ambient_dim, "vector")
        return self.basis @ (self.basis.conj().T @ v)

    def contains_vector(self, v: np.ndarray, tol: Tolerance | None = None) -> bool:
        tol = _tol(tol)
        v = _as_vector(v, self.ambient_dim, "vector")
        resid = np.linalg.norm(v - self.project(v))
        scale = max(1.0, float(np.linalg.norm(v)))
        return resid <= tol.residual(scale, self.ambient_dim)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _as_vector(v, n: int, label: str) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"{label} must be 1-dimensional")
    if v.shape[0] != n:
        raise DimensionMismatchError(f"{label} has length {v.shape[0]}, expected {n}")
    return v


def _check_same_ambient(s1: Subspace, s2: Subspace):
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}"
        )


def full_space(n: int) -> Subspace:
    return Subspace(np.eye(n, dtype=complex), validate=False)


def zero_space(n: int) -> Subspace:
    return Subspace(np.zeros((n, 0), dtype=complex), validate=False)


def orthonormalize(vectors, tol: Tolerance | None = None, *, ambient_dim: int | None = None) -> Subspace:
    """Span of the given vectors as a Subspace.

    Accepts a sequence of equal-length 1-d vectors or an (n, k) array whose
    columns span the subspace.  ``ambient_dim`` is required only for an empty
    input.  Rank is decided by the tolerance's singular-value cutoff.
    """
    tol = _tol(tol)
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        mat = np.asarray(vectors, dtype=complex)
    else:
        vecs = [np.asarray(v, dtype=complex) for v in vectors]
        if any(v.ndim != 1 for v in vecs):
            raise ValueError("spanning vectors must be 1-dimensional")
        if vecs:
            n = vecs[0].shape[0]
            for i, v in enumerate(vecs):
                if v.shape[0] != n:
                    raise DimensionMismatchError(
                        f"vector {i} has length {v.shape[0]}, expected {n}"
                    )
            mat = np.column_stack(vecs)
        else:
            if ambient_dim is None:
                raise ValueError("ambient_dim is required for an empty span")
            mat = np.zeros((ambient_dim, 0), dtype=complex)
    if mat.shape[1] == 0 or mat.shape[0] == 0:
        return Subspace(np.zeros((mat.shape[0], 0), dtype=complex), validate=False)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    rank = int(np.count_nonzero(s >= tol.rank_cutoff(float(s[0]), mat.shape)))
    return Subspace(_phase_canonical(u[:, :rank]), validate=False)


def null_space(matrix: np.ndarray, tol: Tolerance | None = None) -> Subspace:
    """Right null space {x : matrix @ x = 0} as a Subspace of the column domain."""
    tol = _tol(tol)
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    q, p = matrix.shape
    if p == 0:
        return zero_space(0)
    if q == 0:
        return full_space(p)
    _, s, vh = np.linalg.svd(matrix, full_matrices=True)
    rank = int(np.count_nonzero(s >= tol.rank_cutoff(float(s[0]), matrix.shape))) if s.size else 0
    return Subspace(_phase_canonical(vh[rank:].conj().T), validate=False)


def subspace_sum(s1: Subspace, s2: Subspace, tol: Tolerance | None = None) -> Subspace:
    _check_same_ambient(s1, s2)
    if s1.dim == 0:
        return s2
    if s2.dim == 0:
        return s1
    return orthonormalize(np.hstack([s1.basis, s2.basis]), tol)


def subspace_complement(s: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Orthogonal complement, computed from a full SVD of the basis."""
    tol = _tol(tol)
    if s.dim == 0:
        return full_space(s.ambient_dim)
    u, sv, _ = np.linalg.svd(s.basis, full_matrices=True)
    rank = int(np.count_nonzero(sv >= tol.rank_cutoff(float(sv[0]), s.basis.shape)))
    return Subspace(_phase_canonical(u[:, rank:]), validate=False)


def subspace_intersect(s1: Subspace, s2: Subspace, tol: Tolerance | None = None) -> Subspace:
    # de Morgan in the subspace lattice: (S1^perp + S2^perp)^perp
    _check_same_ambient(s1, s2)
    return subspace_complement(
        subspace_sum(subspace_complement(s1, tol), subspace_complement(s2, tol), tol), tol
    )


def lattice_op(kind: str, s1: Subspace, s2: Subspace | None = None, tol: Tolerance | None = None) -> Subspace:
    """Dispatch form of the lattice operations: sum, intersect, complement."""
    if kind == "complement":
        if s2 is not None:
            raise ValueError("complement takes a single subspace")
        return subspace_complement(s1, tol)
    if s2 is None:
        raise ValueError(f"{kind} requires two subspaces")
    if kind == "sum":
        return subspace_sum(s1, s2, tol)
    if kind == "intersect":
        return subspace_intersect(s1, s2, tol)
    raise ValueError(f"unknown lattice operation {kind!r}")


def project(s: Subspace, v: np.ndarray) -> np.ndarray:
    """Orthogonal projection of v onto the subspace."""
    return s.project(v)


def subspace_contains(outer: Subspace, inner: Subspace, tol: Tolerance | None = None) -> bool:
    """Whether inner is contained in outer, tested columnwise on the inner basis."""
    tol = _tol(tol)
    _check_same_ambient(outer, inner)
    if inner.dim == 0:
        return True
    if inner.dim > outer.dim:
        return False
    resid = inner.basis - outer.basis @ (outer.basis.conj().T @ inner.basis)
    thresh = tol.residual(1.0, outer.ambient_dim)
    return bool(np.all(np.linalg.norm(resid, axis=0) <= thresh))


def subspace_equals(s1: Subspace, s2: Subspace, tol: Tolerance | None = None) -> bool:
    _check_same_ambient(s1, s2)
    return s1.dim == s2.dim and subspace_contains(s1, s2, tol)


def compare(kind: str, s1: Subspace, s2: Subspace, tol: Tolerance | None = None) -> bool:
    """Dispatch form of the comparison predicates: equals, contains."""
    if kind == "equals":
        return subspace_equals(s1, s2, tol)
    if kind == "contains":
        return subspace_contains(s1, s2, tol)
    raise ValueError(f"unknown comparison {kind!r}")


def matrix_image(matrix: np.ndarray, s: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Image of the subspace under a matrix, matrix @ S."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape[1] != s.ambient_dim:
        raise DimensionMismatchError(
            f"matrix has {matrix.shape[1]} columns, subspace ambient is {s.ambient_dim}"
        )
    if s.dim == 0:
        return zero_space(matrix.shape[0])
    return orthonormalize(matrix @ s.basis, tol)


def matrix_preimage(matrix: np.ndarray, s: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Preimage {x : matrix @ x in S}."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape[0] != s.ambient_dim:
        raise DimensionMismatchError(
            f"matrix has {matrix.shape[0]} rows, subspace ambient is {s.ambient_dim}"
        )
    residual_map = matrix - s.basis @ (s.basis.conj().T @ matrix)
    return null_space(residual_map, tol)


@dataclass(frozen=True, eq=False)
class Coset:
    """An affine set point + direction; the empty set is a value, not an error."""

    ambient_dim: int
    point: np.ndarray | None
    direction: Subspace | None

    @classmethod
    def of(cls, point: np.ndarray, direction: Subspace) -> "Coset":
        point = _as_vector(point, direction.ambient_dim, "coset point")
        return cls(direction.ambient_dim, point, direction)

    @classmethod
    def empty(cls, ambient_dim: int) -> "Coset":
        return cls(ambient_dim, None, None)

    @property
    def is_empty(self) -> bool:
        return self.point is None

    def contains(self, v: np.ndarray, tol: Tolerance | None = None) -> bool:
        if self.is_empty:
            return False
        v = _as_vector(v, self.ambient_dim, "vector")
        return self.direction.contains_vector(v - self.point, tol)

    def translate(self, delta: np.ndarray) -> "Coset":
        if self.is_empty:
            return self
        delta = _as_vector(delta, self.ambient_dim, "translation")
        return Coset(self.ambient_dim, self.point + delta, self.direction)

    def min_norm_point(self) -> np.ndarray:
        if self.is_empty:
            raise ValueError("empty coset has no points")
        return self.point - self.direction.project(self.point)

    def equals(self, other: "Coset", tol: Tolerance | None = None) -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("cosets live in different ambient spaces")
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return subspace_equals(self.direction, other.direction, tol) and self.contains(
            other.point, tol
        )

    def __repr__(self):
        if self.is_empty:
            return f"Coset(empty, ambient={self.ambient_dim})"
        return f"Coset(dim={self.direction.dim}, ambient={self.ambient_dim})"
