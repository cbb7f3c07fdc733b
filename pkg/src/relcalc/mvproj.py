"""Multivalued projections, their 2x2 block representations, and the
sub/super/idempotent taxonomy.

A multivalued projection is a relation E with E^2 = E and ran E contained in
dom E; it is determined by its range M and kernel N through
``P(M, N) = I_M cw+ (N x {0})``.  Block representations split a square
relation along a subspace S into four corner relations whose generated
relation reproduces the original.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, NotRepresentableError
from .subspaces import (
    Subspace,
    Tolerance,
    orthonormalize,
    subspace_complement,
    subspace_contains,
    subspace_equals,
    subspace_intersect,
    subspace_sum,
    zero_space,
)
from .relations import (
    LinearRelation,
    compose,
    cw_sum,
    graph_of_matrix,
    identity_minus,
    identity_on,
    image,
    invert,
    op_sum,
    parts,
    product_of_subspaces,
    relation_contains,
    relation_equals,
    restrict,
    scale,
    zero_on,
)


@dataclass(frozen=True)
class BlockRep:
    """2x2 block splitting of a square relation along S.

    The four corners are relations stored in ambient coordinates: ``a`` acts
    inside S, ``d`` inside the orthogonal complement, ``b`` maps the
    complement into S and ``c`` the other way around.
    """

    splitter: Subspace
    co_splitter: Subspace
    a: LinearRelation
    b: LinearRelation
    c: LinearRelation
    d: LinearRelation

    def generate(self, tol: Tolerance | None = None) -> LinearRelation:
        """The relation generated by the four blocks.

        Columns pair a and c (shared input in S), rows pair the two columns by
        summing inputs and outputs componentwise.
        """
        left = op_sum(self.a, self.c, tol)
        right = op_sum(self.b, self.d, tol)
        return cw_sum(left, right, tol)


@dataclass(frozen=True)
class Classification:
    is_sub: bool
    is_super: bool
    is_idempotent: bool
    is_mvproj: bool
    canonical: tuple[Subspace, Subspace, Subspace] | None = None


@dataclass(frozen=True)
class SuperIdempotent:
    relation: LinearRelation
    canonical: tuple[Subspace, Subspace, Subspace]
    is_idempotent: bool


def make_pmn(m: Subspace, n: Subspace, tol: Tolerance | None = None) -> LinearRelation:
    """The multivalued projection with range M and kernel N.

    dom = M + N and mul = M cap N; squares to itself and maps into its domain.
    """
    return cw_sum(identity_on(m), zero_on(n), tol)


def classify(E: LinearRelation, tol: Tolerance | None = None) -> Classification:
    """Sub/super/idempotent flags by comparing E^2 against E as graphs.

    Super-idempotents also get their canonical triple (range-like part,
    kernel, multivalued part), checked by rebuilding the relation from it.
    """
    if not E.is_square:
        raise ValueError("classification needs a square relation")
    E2 = compose(E, E, tol)
    is_sub = relation_contains(E, E2, tol)
    is_super = relation_contains(E2, E, tol)
    is_idem = is_sub and is_super
    p = parts(E, tol)
    is_mvproj = is_idem and subspace_contains(p.dom, p.ran, tol)
    canonical = None
    if is_super:
        m = parts(identity_minus(E, tol), tol).ker
        n, s = p.ker, p.mul
        rebuilt = cw_sum(
            make_pmn(m, n, tol), product_of_subspaces(zero_space(E.dim_in), s), tol
        )
        if not relation_equals(rebuilt, E, tol):
            raise ConsistencyError(
                "canonical super-idempotent data failed to reproduce the relation"
            )
        canonical = (m, n, s)
    return Classification(is_sub, is_super, is_idem, is_mvproj, canonical)


def decompose(P: LinearRelation, tol: Tolerance | None = None) -> tuple[LinearRelation, Subspace]:
    """Split a multivalued projection into an operator part plus {0} x (M cap N).

    The operator part projects onto M minus the overlap along N; its graph is
    orthogonal to the purely multivalued remainder, and their componentwise
    sum restores the input.
    """
    if not P.is_square:
        raise ValueError("decompose needs a square relation")
    E2 = compose(P, P, tol)
    p = parts(P, tol)
    if not (relation_equals(E2, P, tol) and subspace_contains(p.dom, p.ran, tol)):
        raise ValueError("input is not a multivalued projection")
    m, n = p.ran, p.ker
    overlap = subspace_intersect(m, n, tol)
    reduced = subspace_intersect(m, subspace_complement(overlap, tol), tol)
    return make_pmn(reduced, n, tol), overlap


def representable(T: LinearRelation, s: Subspace, tol: Tolerance | None = None) -> bool:
    """Whether T splits into blocks along S: the orthogonal projection onto S
    must keep both dom T and mul T inside themselves."""
    if not T.is_square:
        raise ValueError("representability needs a square relation")
    p = parts(T, tol)
    proj = s.projector()
    dom_img = orthonormalize(proj @ p.dom.basis, tol, ambient_dim=T.dim_in)
    mul_img = orthonormalize(proj @ p.mul.basis, tol, ambient_dim=T.dim_in)
    return subspace_contains(p.dom, dom_img, tol) and subspace_contains(p.mul, mul_img, tol)


def canonical_blocks(T: LinearRelation, s: Subspace, tol: Tolerance | None = None) -> BlockRep:
    """The four corner relations P_S T|_S, P_S T|_{S-perp}, and so on."""
    if not representable(T, s, tol):
        raise NotRepresentableError("relation admits no block splitting along this subspace")
    s_perp = subspace_complement(s, tol)
    proj_s = graph_of_matrix(s.projector(), tol)
    proj_p = graph_of_matrix(s_perp.projector(), tol)
    on_s = restrict(T, s, tol).relation
    on_p = restrict(T, s_perp, tol).relation
    return BlockRep(
        splitter=s,
        co_splitter=s_perp,
        a=compose(proj_s, on_s, tol),
        b=compose(proj_s, on_p, tol),
        c=compose(proj_p, on_s, tol),
        d=compose(proj_p, on_p, tol),
    )


def coefficient_x(m: Subspace, n: Subspace, tol: Tolerance | None = None) -> LinearRelation:
    """The off-diagonal coefficient of the projection with range M, kernel N.

    Built directly as {(n - P_M n, -P_M n) : n in N}; cross-checked against
    the composed form -P_M ((I - P_M)|_N)^(-1), which must give the same
    graph.  dom x is the N-shadow on the complement of M; mul x = M cap N.
    """
    if m.ambient_dim != n.ambient_dim:
        raise ValueError("range and kernel must share an ambient space")
    dim = m.ambient_dim
    proj = m.projector()
    onto_m = proj @ n.basis
    stacked = np.vstack([n.basis - onto_m, -onto_m])
    x_direct = LinearRelation(dim, dim, orthonormalize(stacked, tol, ambient_dim=2 * dim))
    co_proj = np.eye(dim, dtype=complex) - proj
    restricted = restrict(graph_of_matrix(co_proj, tol), n, tol).relation
    x_composed = compose(scale(graph_of_matrix(proj, tol), -1.0, tol), invert(restricted), tol)
    if not relation_equals(x_direct, x_composed, tol):
        raise ConsistencyError("two constructions of the off-diagonal coefficient disagree")
    return x_direct


def assemble_representation(m: Subspace, n: Subspace, tol: Tolerance | None = None) -> BlockRep:
    """Block form (identity-on-M, x; 0, 0) of the projection with range M, kernel N."""
    m_perp = subspace_complement(m, tol)
    return BlockRep(
        splitter=m,
        co_splitter=m_perp,
        a=identity_on(m),
        b=coefficient_x(m, n, tol),
        c=zero_on(m),
        d=zero_on(m_perp),
    )


def build_super(
    m: Subspace,
    s1: Subspace,
    s2: Subspace,
    x: LinearRelation,
    tol: Tolerance | None = None,
) -> SuperIdempotent:
    """Super-idempotent generated by (identity-on-M, x cw+ {0}xS1; {0}xS2-padded 0, 0).

    Requires S1 inside M, S2 inside the complement of M, and x mapping the
    complement into M.  Idempotency is decided by the containment
    x(S2) <= S1 + mul x and cross-checked against literal graph squaring;
    disagreement raises instead of picking a side.
    """
    dim = m.ambient_dim
    m_perp = subspace_complement(m, tol)
    if not subspace_contains(m, s1, tol):
        raise ValueError("s1 must be contained in the base subspace")
    if not subspace_contains(m_perp, s2, tol):
        raise ValueError("s2 must be contained in the complement of the base subspace")
    px = parts(x, tol)
    if not subspace_contains(m, px.ran, tol):
        raise ValueError("ran x must be contained in the base subspace")
    if not subspace_contains(m_perp, px.dom, tol):
        raise ValueError("dom x must be contained in the complement of the base subspace")

    nothing = zero_space(dim)
    b_block = cw_sum(x, product_of_subspaces(nothing, s1), tol)
    c_block = cw_sum(zero_on(m), product_of_subspaces(nothing, s2), tol)
    rep = BlockRep(m, m_perp, identity_on(m), b_block, c_block, zero_on(m_perp))
    E = rep.generate(tol)

    # closed-form canonical triple.  The first component only absorbs the part
    # of S2 on which x takes a value inside S1 (mod mul x); on the rest the
    # relation is not locally idempotent and ker(I - E) stays at M.
    anchored = subspace_intersect(x.graph, product_of_subspaces(s2, s1).graph, tol)
    anchored_dom = orthonormalize(anchored.basis[:dim], tol, ambient_dim=dim)
    neg_x = orthonormalize(x.in_block - x.out_block, tol, ambient_dim=dim)
    canonical = (
        subspace_sum(m, anchored_dom, tol),
        subspace_sum(neg_x, subspace_intersect(s1, m, tol), tol),
        subspace_sum(subspace_sum(s1, px.mul, tol), s2, tol),
    )
    pe = parts(E, tol)
    direct = (parts(identity_minus(E, tol), tol).ker, pe.ker, pe.mul)
    for closed_form, computed in zip(canonical, direct):
        if not subspace_equals(closed_form, computed, tol):
            raise ConsistencyError("closed-form canonical triple disagrees with ker/mul data")

    criterion = subspace_contains(subspace_sum(s1, px.mul, tol), image(x, s2, tol), tol)
    squared = relation_equals(compose(E, E, tol), E, tol)
    if criterion != squared:
        raise ConsistencyError(
            f"idempotency criterion ({criterion}) disagrees with graph squaring ({squared})"
        )
    return SuperIdempotent(relation=E, canonical=canonical, is_idempotent=squared)
