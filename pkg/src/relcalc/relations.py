"""Linear relations as graph subspaces of C^n x C^m, with the full calculus.

A relation from C^n to C^m is any subspace of the product, stored here by an
orthonormal basis of the graph with inputs stacked on top of outputs.  A
relation is (the graph of) an operator exactly when its multivalued part
``mul T = {y : (0, y) in T}`` is trivial.
"""

from __future__ import annotations

from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatchError
from .subspaces import (
    Coset,
    Subspace,
    Tolerance,
    _as_vector,
    _tol,
    full_space,
    null_space,
    orthonormalize,
    subspace_intersect,
    subspace_contains,
    subspace_sum,
)


class LinearRelation:
    """A subspace of C^{dim_in} x C^{dim_out} with derived dom/ran/ker/mul."""

    def __init__(self, dim_in: int, dim_out: int, graph: Subspace):
        if graph.ambient_dim != dim_in + dim_out:
            raise DimensionMismatchError(
                f"graph ambient {graph.ambient_dim} != dim_in + dim_out = {dim_in + dim_out}"
            )
        self.dim_in = dim_in
        self.dim_out = dim_out
        self.graph = graph

    @property
    def in_block(self) -> np.ndarray:
        return self.graph.basis[: self.dim_in]

    @property
    def out_block(self) -> np.ndarray:
        return self.graph.basis[self.dim_in :]

    @property
    def is_square(self) -> bool:
        return self.dim_in == self.dim_out

    @cached_property
    def _default_parts(self) -> "RelationParts":
        return _compute_parts(self, _tol(None))

    @property
    def dom(self) -> Subspace:
        return self._default_parts.dom

    @property
    def ran(self) -> Subspace:
        return self._default_parts.ran

    @property
    def ker(self) -> Subspace:
        return self._default_parts.ker

    @property
    def mul(self) -> Subspace:
        return self._default_parts.mul

    def __repr__(self):
        return (
            f"LinearRelation({self.dim_in}->{self.dim_out}, graph dim {self.graph.dim})"
        )


class RelationParts(NamedTuple):
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


class Restriction(NamedTuple):
    relation: "LinearRelation"
    image: Subspace


def _input_axis(n: int, m: int) -> Subspace:
    basis = np.zeros((n + m, n), dtype=complex)
    basis[:n] = np.eye(n)
    return Subspace(basis, validate=False)


def _output_axis(n: int, m: int) -> Subspace:
    basis = np.zeros((n + m, m), dtype=complex)
    basis[n:] = np.eye(m)
    return Subspace(basis, validate=False)


def _compute_parts(T: LinearRelation, tol: Tolerance) -> RelationParts:
    n, m = T.dim_in, T.dim_out
    dom = orthonormalize(T.in_block, tol, ambient_dim=n)
    ran = orthonormalize(T.out_block, tol, ambient_dim=m)
    ker_pairs = subspace_intersect(T.graph, _input_axis(n, m), tol)
    ker = orthonormalize(ker_pairs.basis[:n], tol, ambient_dim=n)
    mul_pairs = subspace_intersect(T.graph, _output_axis(n, m), tol)
    mul = orthonormalize(mul_pairs.basis[n:], tol, ambient_dim=m)
    return RelationParts(dom, ran, ker, mul)


def parts(T: LinearRelation, tol: Tolerance | None = None) -> RelationParts:
    """Domain, range, kernel and multivalued part of the relation."""
    if tol is None:
        return T._default_parts
    return _compute_parts(T, tol)


# ---------------------------------------------------------------------------
# constructors


def from_graph_basis(dim_in: int, dim_out: int, vectors, tol: Tolerance | None = None) -> LinearRelation:
    graph = orthonormalize(vectors, tol, ambient_dim=dim_in + dim_out)
    if graph.ambient_dim != dim_in + dim_out:
        raise DimensionMismatchError(
            f"graph vectors have length {graph.ambient_dim}, expected {dim_in + dim_out}"
        )
    return LinearRelation(dim_in, dim_out, graph)


def graph_of_matrix(matrix: np.ndarray, tol: Tolerance | None = None) -> LinearRelation:
    """The relation {(x, A x)} of a matrix A."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = matrix.shape
    stacked = np.vstack([np.eye(n, dtype=complex), matrix])
    return LinearRelation(n, m, orthonormalize(stacked, tol))


def identity_on(s: Subspace) -> LinearRelation:
    """{(u, u) : u in S} on the ambient space of S."""
    b = s.basis / np.sqrt(2.0)
    return LinearRelation(s.ambient_dim, s.ambient_dim, Subspace(np.vstack([b, b]), validate=False))


def zero_on(s: Subspace) -> LinearRelation:
    """S x {0}: everything in S is sent to zero."""
    n = s.ambient_dim
    return LinearRelation(n, n, Subspace(np.vstack([s.basis, np.zeros_like(s.basis)]), validate=False))


def product_of_subspaces(m: Subspace, n: Subspace) -> LinearRelation:
    """M x N as a relation: dom M, constant value set N."""
    top = np.vstack([m.basis, np.zeros((n.ambient_dim, m.dim), dtype=complex)])
    bot = np.vstack([np.zeros((m.ambient_dim, n.dim), dtype=complex), n.basis])
    return LinearRelation(m.ambient_dim, n.ambient_dim, Subspace(np.hstack([top, bot]), validate=False))


def eye_relation(n: int) -> LinearRelation:
    return identity_on(full_space(n))


def make_relation(kind: str, *args, tol: Tolerance | None = None) -> LinearRelation:
    """Dispatch constructor covering all the primitive relation shapes."""
    if kind == "graph_of_matrix":
        return graph_of_matrix(*args, tol=tol)
    if kind == "from_graph_basis":
        return from_graph_basis(*args, tol=tol)
    if kind == "identity_on":
        return identity_on(*args)
    if kind == "zero_on":
        return zero_on(*args)
    if kind == "product_of_subspaces":
        return product_of_subspaces(*args)
    raise ValueError(f"unknown relation constructor {kind!r}")


# ---------------------------------------------------------------------------
# the calculus


def invert(T: LinearRelation) -> LinearRelation:
    """{(y, x) : (x, y) in T}; dom and ran, ker and mul swap roles."""
    swapped = np.vstack([T.out_block, T.in_block])
    return LinearRelation(T.dim_out, T.dim_in, Subspace(swapped, validate=False))


def adjoint(T: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """{(u, v) : <y, u> = <x, v> for every (x, y) in T}.

    One linear condition per graph basis vector; the adjoint graph is the null
    space of the stacked condition matrix read in C^{dim_out} x C^{dim_in}.
    """
    cond = np.hstack([T.out_block.conj().T, -T.in_block.conj().T])
    return LinearRelation(T.dim_out, T.dim_in, null_space(cond, tol))


def compose(R: LinearRelation, T: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """R T = {(x, y) : (x, z) in T and (z, y) in R for some z}."""
    if T.dim_out != R.dim_in:
        raise DimensionMismatchError(
            f"inner dimensions differ: T maps into C^{T.dim_out}, R is defined on C^{R.dim_in}"
        )
    n, k, e = T.dim_in, T.dim_out, R.dim_out
    dT, dR = T.graph.dim, R.graph.dim
    # triples (x, z, y) with (x, z) in T:
    cyl_t = np.zeros((n + k + e, dT + e), dtype=complex)
    cyl_t[: n + k, :dT] = T.graph.basis
    cyl_t[n + k :, dT:] = np.eye(e)
    # triples with (z, y) in R:
    cyl_r = np.zeros((n + k + e, n + dR), dtype=complex)
    cyl_r[:n, :n] = np.eye(n)
    cyl_r[n:, n:] = R.graph.basis
    inter = subspace_intersect(
        Subspace(cyl_t, validate=False), Subspace(cyl_r, validate=False), tol
    )
    pairs = np.vstack([inter.basis[:n], inter.basis[n + k :]])
    return LinearRelation(n, e, orthonormalize(pairs, tol, ambient_dim=n + e))


def op_sum(T: LinearRelation, S: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """T + S = {(x, y + z) : (x, y) in T and (x, z) in S}."""
    _check_same_shape(T, S)
    n, m = T.dim_in, T.dim_out
    dT, dS = T.graph.dim, S.graph.dim
    # triples (x, y, z) with (x, y) in T and (x, z) in S
    cyl_t = np.zeros((n + 2 * m, dT + m), dtype=complex)
    cyl_t[: n + m, :dT] = T.graph.basis
    cyl_t[n + m :, dT:] = np.eye(m)
    cyl_s = np.zeros((n + 2 * m, dS + m), dtype=complex)
    cyl_s[:n, :dS] = S.in_block
    cyl_s[n + m :, :dS] = S.out_block
    cyl_s[n : n + m, dS:] = np.eye(m)
    inter = subspace_intersect(
        Subspace(cyl_t, validate=False), Subspace(cyl_s, validate=False), tol
    )
    pairs = np.vstack([inter.basis[:n], inter.basis[n : n + m] + inter.basis[n + m :]])
    return LinearRelation(n, m, orthonormalize(pairs, tol, ambient_dim=n + m))


def cw_sum(T: LinearRelation, S: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """Componentwise sum: the subspace sum of the two graphs."""
    _check_same_shape(T, S)
    return LinearRelation(T.dim_in, T.dim_out, subspace_sum(T.graph, S.graph, tol))


def scale(T: LinearRelation, lam: complex, tol: Tolerance | None = None) -> LinearRelation:
    """{(x, lam * y) : (x, y) in T}; lam = 0 collapses onto dom T x {0}."""
    stacked = np.vstack([T.in_block, lam * T.out_block])
    return LinearRelation(T.dim_in, T.dim_out, orthonormalize(stacked, tol, ambient_dim=T.dim_in + T.dim_out))


def identity_minus(T: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """I - T on a square relation, with the operator-like sum."""
    if not T.is_square:
        raise DimensionMismatchError("identity_minus needs a square relation")
    return op_sum(eye_relation(T.dim_in), scale(T, -1.0, tol), tol)


def restrict(T: LinearRelation, m: Subspace, tol: Tolerance | None = None) -> Restriction:
    """T restricted to inputs in M, plus the image T(M)."""
    if m.ambient_dim != T.dim_in:
        raise DimensionMismatchError(
            f"restriction subspace ambient {m.ambient_dim} != dim_in {T.dim_in}"
        )
    n, mm = T.dim_in, T.dim_out
    cyl = np.zeros((n + mm, m.dim + mm), dtype=complex)
    cyl[:n, : m.dim] = m.basis
    cyl[n:, m.dim :] = np.eye(mm)
    inter = subspace_intersect(T.graph, Subspace(cyl, validate=False), tol)
    restricted = LinearRelation(n, mm, inter)
    img = orthonormalize(inter.basis[n:], tol, ambient_dim=mm)
    return Restriction(restricted, img)


def image(T: LinearRelation, m: Subspace, tol: Tolerance | None = None) -> Subspace:
    """T(M) = {y : (x, y) in T for some x in M}."""
    return restrict(T, m, tol).image


def closure(T: LinearRelation) -> LinearRelation:
    """Topological closure; the identity in finite dimensions, kept for symmetry."""
    return T


def apply(T: LinearRelation, x: np.ndarray, tol: Tolerance | None = None) -> Coset:
    """The value T x = y + mul T, or the empty coset when x is outside dom T."""
    x = _as_vector(x, T.dim_in, "input vector")
    p = parts(T, tol)
    if not p.dom.contains_vector(x, tol):
        return Coset.empty(T.dim_out)
    F, H = T.in_block, T.out_block
    if F.shape[1] == 0:
        return Coset.of(np.zeros(T.dim_out, dtype=complex), p.mul)
    coeff, *_ = np.linalg.lstsq(F, x, rcond=None)
    return Coset.of(H @ coeff, p.mul)


def apply_to_coset(T: LinearRelation, c: Coset, tol: Tolerance | None = None) -> Coset:
    """Image of an affine set under the relation: {y : (x, y) in T, x in c}."""
    if c.ambient_dim != T.dim_in:
        raise DimensionMismatchError(
            f"coset ambient {c.ambient_dim} != dim_in {T.dim_in}"
        )
    if c.is_empty:
        return Coset.empty(T.dim_out)
    if c.direction.dim == 0:
        return apply(T, c.point, tol)
    dom = parts(T, tol).dom
    # feasible representative: least-squares shift of the point into dom T
    proj = dom.projector()
    lhs = c.direction.basis - proj @ c.direction.basis
    rhs = -(c.point - proj @ c.point)
    t, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    y1 = c.point + c.direction.basis @ t
    resid = float(np.linalg.norm(y1 - proj @ y1))
    if resid > _tol(tol).residual(max(1.0, float(np.linalg.norm(y1))), T.dim_in):
        return Coset.empty(T.dim_out)
    value = apply(T, y1, tol)
    if value.is_empty:
        return value
    feasible_dir = subspace_intersect(c.direction, dom, tol)
    return Coset.of(value.point, image(T, feasible_dir, tol))


def relation_contains(outer: LinearRelation, inner: LinearRelation, tol: Tolerance | None = None) -> bool:
    """Graph containment inner <= outer."""
    _check_same_shape(outer, inner)
    return subspace_contains(outer.graph, inner.graph, tol)


def relation_equals(T: LinearRelation, S: LinearRelation, tol: Tolerance | None = None) -> bool:
    """Relation equality is graph-subspace equality."""
    _check_same_shape(T, S)
    return T.graph.dim == S.graph.dim and subspace_contains(T.graph, S.graph, tol)


def is_operator(T: LinearRelation, tol: Tolerance | None = None) -> bool:
    return parts(T, tol).mul.dim == 0


def as_matrix(T: LinearRelation, tol: Tolerance | None = None) -> np.ndarray:
    """Realize an everywhere-defined single-valued relation as its matrix."""
    tol = _tol(tol)
    p = parts(T, tol)
    if p.mul.dim != 0 or p.dom.dim != T.dim_in:
        raise ValueError("relation is not an everywhere-defined operator")
    F = T.in_block
    if F.shape[0] != F.shape[1]:
        raise ValueError("graph dimension is inconsistent with an operator")
    return T.out_block @ np.linalg.inv(F)


def _check_same_shape(T: LinearRelation, S: LinearRelation):
    if T.dim_in != S.dim_in or T.dim_out != S.dim_out:
        raise DimensionMismatchError(
            f"relation shapes differ: {T.dim_in}->{T.dim_out} vs {S.dim_in}->{S.dim_out}"
        )
