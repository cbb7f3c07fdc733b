"""Multivalued projections: oblique, overlapping, and their block form.

A projection here is determined by a range M and a kernel N that may overlap
and need not fill the space; P(M, N) squares to itself with dom = M + N and
multivalued part M cap N.
"""

import numpy as np

from relcalc import (
    apply,
    assemble_representation,
    build_super,
    classify,
    coefficient_x,
    compose,
    decompose,
    from_graph_basis,
    make_pmn,
    orthonormalize,
    parts,
    relation_equals,
    zero_space,
)

e1 = orthonormalize([np.array([1.0, 0.0])])
diag = orthonormalize([np.array([1.0, 1.0])])

# an oblique projection onto the diagonal along the first axis
p = make_pmn(diag, e1)
print("P^2 = P:", relation_equals(compose(p, p), p))
print("P e2 =", np.round(apply(p, np.array([0.0, 1.0])).point, 6))

# range and kernel may overlap: the overlap becomes the multivalued part
q = make_pmn(e1, e1)
print("overlapping case: dom dim", parts(q).dom.dim, "mul dim", parts(q).mul.dim)

# the operator part and the purely multivalued tail split orthogonally
op_part, overlap = decompose(q)
print("operator part sends e1 to", np.round(apply(op_part, np.array([1.0, 0.0])).point, 6),
      "and the tail lives on a subspace of dim", overlap.dim)

# the 2x2 block form along the range: (identity, x; 0, 0)
rep = assemble_representation(e1, diag)
print("block form regenerates P(M, N):",
      relation_equals(rep.generate(), make_pmn(e1, diag)))

# the off-diagonal coefficient x in isolation: here it sends (0, t) to (-t, 0)
x = coefficient_x(e1, diag)
print("x(0, 1) =", np.round(apply(x, np.array([0.0, 1.0])).point, 6))

# super-idempotents: E contained in E^2, built from a base subspace, two
# padding subspaces and a coefficient relation
e1_3 = orthonormalize([np.eye(3)[0]])
e2_3 = orthonormalize([np.eye(3)[1]])
x3 = from_graph_basis(3, 3, [np.array([0.0, 1.0, 0.0, 1.0, 0.0, 0.0])])  # e2 -> e1
built = build_super(e1_3, zero_space(3), e2_3, x3)
print("escaping coefficient values break idempotency:", not built.is_idempotent)
flags = classify(built.relation)
print("classification:", "super" if flags.is_super else "not super",
      "/", "idempotent" if flags.is_idempotent else "not idempotent")
