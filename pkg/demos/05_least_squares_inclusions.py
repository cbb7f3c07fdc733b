"""Weighted least squares for inclusions b in A x.

The data is a relation A (possibly multivalued, possibly partial), a psd
weight W and a target b.  A solution is any x in dom A one of whose values is
W-seminorm-closest to b among everything A can reach.
"""

import numpy as np

from relcalc import (
    LssProblem,
    Weight,
    check_normal,
    graph_of_matrix,
    solve,
    w1w2_solve,
)

A = graph_of_matrix(np.diag([1.0, 0.0]))
b = np.array([1.0, 1.0])

# classical case: ordinary least squares onto the first axis
sol = solve(LssProblem(A, Weight(np.eye(2), "psd"), b))
print(f"identity weight: min = {sol.min_value:.6f}, witness = {np.round(sol.witness, 6)}")
print("solution set is a line:", sol.solution_set.direction.dim == 1)

# a singular weight that ignores the first coordinate: every x solves
blind = Weight(np.diag([0.0, 1.0]), "psd")
sol = solve(LssProblem(A, blind, b))
print(f"singular weight: min = {sol.min_value:.6f}, solution set dim =",
      sol.solution_set.direction.dim)

# least-squares solutions are exactly the solutions of the normal equation
prob = LssProblem(A, Weight(np.eye(2), "psd"), b)
witness = solve(prob).witness
print("normal equation holds at the witness:", check_normal(prob, witness))
print("and fails off the solution set:",
      not check_normal(prob, witness + np.array([1.0, 0.0])))

# two-weight refinement: among all solutions for the first weight, pick the
# ones of minimal seminorm for the second
refined = w1w2_solve(A, blind, Weight(np.eye(2), "psd"), b)
print("two-weight refinement collapses the plane to",
      np.round(refined.min_norm_point().real, 9))

# the witness is always the minimum-norm point of the solution set
rng = np.random.default_rng(11)
h = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
w = Weight(h @ h.conj().T / 4, "psd")
prob = LssProblem(graph_of_matrix(np.diag([1.0, 1.0, 0.0])), w, rng.standard_normal(3))
sol = solve(prob)
assert sol.solution_set.contains(sol.witness)
print("random instance: min =", round(sol.min_value, 6), "- witness double-checked")
