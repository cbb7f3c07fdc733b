"""Interpolating splines, quadratic smoothing, and the pair-range projector."""

import numpy as np
import pytest

from relcalc import (
    SmoothingProblem,
    SplineProblem,
    compose,
    graph_of_matrix,
    invert,
    null_space,
    orthonormalize,
    projection_m,
    smooth_solve,
    spline_solve,
    subspace_equals,
)
from relcalc import oracles

from genutil import cmat, cvec


def random_spline_problem(rng, max_dim=6):
    n = int(rng.integers(2, max_dim + 1))
    e = int(rng.integers(1, max_dim + 1))
    k = int(rng.integers(1, n + 1))  # V surjective needs k <= n
    T = cmat(rng, e, n)
    if rng.random() < 0.3:
        T = T @ np.diag([0.0] * (n // 2) + [1.0] * (n - n // 2))  # rank-deficient T
    V = cmat(rng, k, n)
    b = cvec(rng, k)
    return SplineProblem(T, V, b)


class TestSplineSolve:
    def test_minimal_norm_interpolant(self):
        sol = spline_solve(SplineProblem(np.eye(2), np.array([[1.0, 0.0]]), np.array([1.0])))
        assert sol.exists
        assert np.allclose(sol.spline_set.point, [1.0, 0.0])
        assert sol.spline_set.direction.dim == 0
        assert abs(sol.min_value - 1.0) < 1e-12

    def test_objective_blind_to_constraint_kernel(self):
        # T = V: the objective is constant on the feasible set, so every
        # solution of V x = b is a spline
        v = np.array([[1.0, 1.0]])
        sol = spline_solve(SplineProblem(v, v, np.array([2.0])))
        feasible_dir = null_space(v)
        assert subspace_equals(sol.spline_set.direction, feasible_dir)
        assert np.allclose(v @ sol.spline_set.point, [2.0])

    def test_rejects_non_surjective_constraint(self):
        with pytest.raises(ValueError):
            SplineProblem(np.eye(2), np.array([[1.0, 0.0], [2.0, 0.0]]), np.array([1.0, 2.0]))

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_constrained_least_squares_oracle(self, seed):
        rng = np.random.default_rng(6000 + seed)
        p = random_spline_problem(rng)
        sol = spline_solve(p)
        oracle_min, oracle_point, oracle_flat = oracles.spline_kkt(p.T, p.V, p.b)
        assert abs(sol.min_value - oracle_min) < 1e-8
        assert sol.spline_set.contains(oracle_point)
        assert subspace_equals(
            sol.spline_set.direction,
            orthonormalize(oracle_flat, ambient_dim=p.T.shape[1]),
        )

    def test_bulk_oracle_agreement(self):
        # value and argmin-direction agreement across a wide randomized sweep
        rng = np.random.default_rng(6500)
        failures = 0
        for _ in range(1000):
            p = random_spline_problem(rng)
            sol = spline_solve(p)
            oracle_min, oracle_point, oracle_flat = oracles.spline_kkt(p.T, p.V, p.b)
            ok = abs(sol.min_value - oracle_min) < 1e-8
            ok &= sol.spline_set.contains(oracle_point)
            ok &= subspace_equals(
                sol.spline_set.direction,
                orthonormalize(oracle_flat, ambient_dim=p.T.shape[1]),
            )
            failures += not ok
        assert failures == 0


class TestSmoothSolve:
    def test_balanced_tradeoff(self):
        base = SplineProblem(np.eye(2), np.array([[1.0, 0.0]]), np.array([1.0]))
        sol = smooth_solve(SmoothingProblem(base, 1.0))
        assert np.allclose(sol.argmin_set.point, [0.5, 0.0])
        assert abs(sol.min_value - np.sqrt(2) / 2) < 1e-12

    def test_zero_target_costs_nothing(self):
        base = SplineProblem(np.eye(2), np.array([[1.0, 0.0]]), np.array([0.0]))
        sol = smooth_solve(SmoothingProblem(base, 3.0))
        assert sol.argmin_set.contains(np.zeros(2))
        assert sol.min_value < 1e-12

    def test_penalty_sweep_approaches_constrained_minimum(self):
        rng = np.random.default_rng(20)
        p = random_spline_problem(rng)
        constrained = spline_solve(p).min_value
        values = [smooth_solve(SmoothingProblem(p, rho)).min_value for rho in (1.0, 10.0, 100.0)]
        assert values[0] <= values[1] + 1e-12 <= values[2] + 2e-12
        assert all(v <= constrained + 1e-9 for v in values)
        gaps = [abs(constrained - v) for v in values]
        assert gaps[2] <= gaps[0] + 1e-12

    def test_rho_must_be_positive(self):
        base = SplineProblem(np.eye(2), np.array([[1.0, 0.0]]), np.array([1.0]))
        with pytest.raises(ValueError):
            SmoothingProblem(base, 0.0)

    @pytest.mark.parametrize("rho", [0.1, 1.0, 10.0])
    @pytest.mark.parametrize("seed", range(10))
    def test_matches_stationarity_oracle(self, seed, rho):
        rng = np.random.default_rng(6100 + seed)
        p = random_spline_problem(rng)
        sol = smooth_solve(SmoothingProblem(p, rho))
        x = oracles.smoothing_normal_equations(p.T, p.V, p.b, rho)
        value = np.sqrt(
            np.linalg.norm(p.T @ x) ** 2 + rho * np.linalg.norm(p.V @ x - p.b) ** 2
        )
        assert abs(sol.min_value - value) < 1e-8
        assert sol.argmin_set.contains(x)
        # the reported minimum is exactly the objective of the reported point
        x_star = sol.argmin_set.point
        direct = np.sqrt(
            np.linalg.norm(p.T @ x_star) ** 2 + rho * np.linalg.norm(p.V @ x_star - p.b) ** 2
        )
        assert abs(direct - sol.min_value) < 1e-10


class TestProjectionBlocks:
    def test_trivial_second_map(self):
        blocks = projection_m(np.eye(2), np.zeros((1, 2)))
        assert np.allclose(blocks.tt, np.eye(2))
        assert np.allclose(blocks.tv, 0) and np.allclose(blocks.vt, 0) and np.allclose(blocks.vv, 0)

    def test_explicit_two_by_two(self):
        blocks = projection_m(np.eye(2), np.array([[1.0, 0.0]]))
        assert np.allclose(blocks.tt, np.diag([0.5, 1.0]))
        assert np.allclose(blocks.vv, [[0.5]])
        full = blocks.matrix()
        assert np.linalg.norm(full @ full - full) < 1e-9
        assert np.linalg.norm(full - full.conj().T) < 1e-9

    @pytest.mark.parametrize("seed", range(20))
    def test_projector_axioms_and_range(self, seed):
        rng = np.random.default_rng(6200 + seed)
        p = random_spline_problem(rng)
        full = projection_m(p.T, p.V).matrix()
        assert np.linalg.norm(full @ full - full) < 1e-9
        assert np.linalg.norm(full - full.conj().T) < 1e-9
        stacked = np.vstack([p.T, p.V])
        got = orthonormalize(full, ambient_dim=full.shape[0])
        assert subspace_equals(got, orthonormalize(stacked))

    @pytest.mark.parametrize("seed", range(15))
    def test_pair_range_as_relation_quotient(self, seed):
        # the range pairs {(Tx, Vx)} coincide with the graph of V after T-inverse
        rng = np.random.default_rng(6300 + seed)
        p = random_spline_problem(rng)
        quotient = compose(graph_of_matrix(p.V), invert(graph_of_matrix(p.T)))
        stacked = orthonormalize(np.vstack([p.T, p.V]))
        assert subspace_equals(quotient.graph, stacked)

    @pytest.mark.parametrize("seed", range(10))
    def test_reproduces_unit_penalty_minimum(self, seed):
        rng = np.random.default_rng(6400 + seed)
        p = random_spline_problem(rng)
        full = projection_m(p.T, p.V).matrix()
        paired = np.concatenate([np.zeros(p.T.shape[0], dtype=complex), p.b])
        residual = float(np.linalg.norm(paired - full @ paired))
        sol = smooth_solve(SmoothingProblem(p, 1.0))
        assert abs(residual - sol.min_value) < 1e-8
