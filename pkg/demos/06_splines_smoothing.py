"""Interpolating splines and quadratic smoothing.

Splines minimize ||T x|| subject to V x = b; smoothing trades the constraint
for a penalty rho ||V x - b||^2.  As the penalty grows the smoothing optimum
climbs toward the constrained one.
"""

import numpy as np

from relcalc import (
    SmoothingProblem,
    SplineProblem,
    projection_m,
    smooth_solve,
    spline_solve,
)

T = np.eye(2)
V = np.array([[1.0, 0.0]])
b = np.array([1.0])
problem = SplineProblem(T, V, b)

sol = spline_solve(problem)
print(f"spline: minimizer {np.round(sol.spline_set.point.real, 6)}, value {sol.min_value:.6f}")

for rho in (1.0, 10.0, 100.0):
    smooth = smooth_solve(SmoothingProblem(problem, rho))
    print(f"  rho = {rho:>5}: argmin {np.round(smooth.argmin_set.point.real, 6)}"
          f", value {smooth.min_value:.6f}")
print("the penalized minima increase toward the constrained value"
      f" {sol.min_value:.6f}")

# a degenerate objective: when T vanishes on ker V the whole feasible set wins
flat = spline_solve(SplineProblem(V, V, np.array([2.0])))
print("objective blind to the constraint kernel -> spline set dim:",
      flat.spline_set.direction.dim)

# the orthogonal projector onto the pairs {(Tx, Vx)}, in four operator blocks
blocks = projection_m(T, V)
full = blocks.matrix()
print("projector onto the pair range: idempotent",
      bool(np.linalg.norm(full @ full - full) < 1e-12),
      "selfadjoint", bool(np.linalg.norm(full - full.conj().T) < 1e-12))

# its residual at (0, b) reproduces the rho = 1 smoothing minimum
paired = np.concatenate([np.zeros(2), b]).astype(complex)
residual = np.linalg.norm(paired - full @ paired)
unit = smooth_solve(SmoothingProblem(problem, 1.0))
print(f"projector residual {residual:.6f} == smoothing minimum {unit.min_value:.6f}")
