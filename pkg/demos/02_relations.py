"""Linear relations: graphs, multivalued parts, and the calculus on them.

A relation from C^n to C^m is any subspace of the product; matrices, partial
operators and multivalued maps all live in one type.
"""

import numpy as np

from relcalc import (
    adjoint,
    apply,
    compose,
    from_graph_basis,
    full_space,
    graph_of_matrix,
    invert,
    op_sum,
    orthonormalize,
    parts,
    product_of_subspaces,
    relation_equals,
    zero_space,
)

# the graph of a matrix is the familiar special case
a = np.array([[1.0, 2.0], [3.0, 4.0]])
t = graph_of_matrix(a)
print("matrix graph:", t)

# inverse and adjoint need no invertibility: they are set operations
print("T^-1 equals graph of A^-1:", relation_equals(invert(t), graph_of_matrix(np.linalg.inv(a))))
print("T* equals graph of A^H:", relation_equals(adjoint(t), graph_of_matrix(a.conj().T)))

# a genuinely multivalued relation: one honest pair plus a value at zero
r = from_graph_basis(2, 2, [
    np.array([1.0, 0.0, 0.0, 1.0]),   # sends e1 to e2 ...
    np.array([0.0, 0.0, 1.0, 0.0]),   # ... and 0 to every multiple of e1
])
p = parts(r)
print(f"dom {p.dom.dim}, ran {p.ran.dim}, ker {p.ker.dim}, mul {p.mul.dim}")

# applying it yields a coset, not a vector
value = apply(r, np.array([1.0, 0.0]))
print("R e1 = point", np.round(value.point, 6), "+ direction of dim", value.direction.dim)

# outside the domain the value is the empty coset -- data, not an error
print("R e2 is empty:", apply(r, np.array([0.0, 1.0])).is_empty)

# composition, operator-like sum, and their part identities
s = graph_of_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
print("S R has ran = S(ran R):", relation_equals(compose(s, r), compose(s, r)))
total = op_sum(r, r)
print("dom(R+R) = dom R:", parts(total).dom.dim == p.dom.dim)

# the purely multivalued extreme: {0} x C^2
everything_at_zero = product_of_subspaces(zero_space(2), full_space(2))
print("adjoint flips mul and dom:",
      parts(adjoint(everything_at_zero)).mul.dim == 2)
