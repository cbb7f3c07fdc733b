"""relcalc: a finite-dimensional calculus of linear relations and multivalued
projections, applied to weighted least-squares inclusions, abstract splines
and quadratic smoothing.

Subspaces of C^n carry the geometry; relations are subspaces of products;
projections, weighted companions, shorted operators and the solvers are all
built on top of that substrate.
"""

from .errors import (
    ConsistencyError,
    DimensionMismatchError,
    NoSolutionError,
    NotRepresentableError,
    ProblemFormatError,
)
from .subspaces import (
    Coset,
    Subspace,
    Tolerance,
    compare,
    full_space,
    lattice_op,
    matrix_image,
    matrix_preimage,
    null_space,
    orthonormalize,
    project,
    subspace_complement,
    subspace_contains,
    subspace_equals,
    subspace_intersect,
    subspace_sum,
    zero_space,
)
from .relations import (
    LinearRelation,
    RelationParts,
    adjoint,
    apply,
    apply_to_coset,
    as_matrix,
    closure,
    compose,
    cw_sum,
    eye_relation,
    from_graph_basis,
    graph_of_matrix,
    identity_minus,
    identity_on,
    image,
    invert,
    is_operator,
    make_relation,
    op_sum,
    parts,
    product_of_subspaces,
    relation_contains,
    relation_equals,
    restrict,
    scale,
    zero_on,
)
from .mvproj import (
    BlockRep,
    Classification,
    SuperIdempotent,
    assemble_representation,
    build_super,
    canonical_blocks,
    classify,
    coefficient_x,
    decompose,
    make_pmn,
    representable,
)
from .weighted import (
    ComplementabilityReport,
    KreinClassification,
    Weight,
    complementability,
    krein_classify,
    make_pws,
    psd_sqrt,
    shorted,
    w_companion,
)
from .lss import LssProblem, LssSolution, check_normal, solve, w1w2_solve
from .splines import (
    ProjectionBlocks,
    SmoothingProblem,
    SmoothingSolution,
    SplineProblem,
    SplineSolution,
    projection_m,
    smooth_solve,
    spline_solve,
)

__version__ = "0.1.0"

__all__ = [
    "BlockRep",
    "Classification",
    "ComplementabilityReport",
    "ConsistencyError",
    "Coset",
    "DimensionMismatchError",
    "KreinClassification",
    "LinearRelation",
    "LssProblem",
    "LssSolution",
    "NoSolutionError",
    "NotRepresentableError",
    "ProblemFormatError",
    "ProjectionBlocks",
    "RelationParts",
    "SmoothingProblem",
    "SmoothingSolution",
    "SplineProblem",
    "SplineSolution",
    "Subspace",
    "SuperIdempotent",
    "Tolerance",
    "Weight",
    "adjoint",
    "apply",
    "apply_to_coset",
    "as_matrix",
    "assemble_representation",
    "build_super",
    "canonical_blocks",
    "check_normal",
    "classify",
    "closure",
    "coefficient_x",
    "compare",
    "complementability",
    "compose",
    "cw_sum",
    "decompose",
    "eye_relation",
    "from_graph_basis",
    "full_space",
    "graph_of_matrix",
    "identity_minus",
    "identity_on",
    "image",
    "invert",
    "is_operator",
    "krein_classify",
    "lattice_op",
    "make_pmn",
    "make_pws",
    "make_relation",
    "matrix_image",
    "matrix_preimage",
    "null_space",
    "op_sum",
    "orthonormalize",
    "parts",
    "product_of_subspaces",
    "project",
    "projection_m",
    "psd_sqrt",
    "relation_contains",
    "relation_equals",
    "representable",
    "restrict",
    "scale",
    "shorted",
    "smooth_solve",
    "solve",
    "spline_solve",
    "subspace_complement",
    "subspace_contains",
    "subspace_equals",
    "subspace_intersect",
    "subspace_sum",
    "w1w2_solve",
    "w_companion",
    "zero_on",
    "zero_space",
]
