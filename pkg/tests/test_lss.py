"""Weighted least-squares inclusions: solve, the normal equation, two-weight refinement."""

import numpy as np
import pytest

from relcalc import (
    LssProblem,
    NoSolutionError,
    Weight,
    check_normal,
    complementability,
    full_space,
    graph_of_matrix,
    make_pws,
    null_space,
    orthonormalize,
    parts,
    product_of_subspaces,
    psd_sqrt,
    solve,
    subspace_complement,
    subspace_equals,
    subspace_sum,
    w1w2_solve,
    zero_space,
)
from relcalc import oracles

from genutil import cmat, cvec, random_psd, random_relation, random_subspace

E2_LINE = orthonormalize([np.array([0.0, 1.0])])


def borderline_neutral_weight():
    """Accepted-psd weight whose top-left block vanishes: eigenvalues are
    {~1, -1e-12}, inside the psd acceptance band, and span(e1) is W-neutral."""
    return np.array([[0.0, 1e-6], [1e-6, 1.0]])


def classic_problem():
    return LssProblem(
        graph_of_matrix(np.diag([1.0, 0.0])),
        Weight(np.eye(2), "psd"),
        np.array([1.0, 1.0]),
    )


class TestSolveExamples:
    def test_classical_projection_onto_axis(self):
        sol = solve(classic_problem())
        assert sol.exists
        assert abs(sol.min_value - 1.0) < 1e-12
        assert np.allclose(sol.witness, [1.0, 0.0])
        assert subspace_equals(sol.solution_set.direction, E2_LINE)
        assert sol.solution_set.contains(np.array([1.0, 7.0]))

    def test_everything_relation_solves_exactly(self):
        everything = product_of_subspaces(full_space(2), full_space(2))
        sol = solve(LssProblem(everything, Weight(np.eye(2), "psd"), np.array([2.0, 3.0])))
        assert sol.exists and sol.min_value < 1e-12
        assert sol.solution_set.direction.dim == 2

    def test_degenerate_weight_widens_solution_set(self):
        sol = solve(
            LssProblem(
                graph_of_matrix(np.diag([1.0, 0.0])),
                Weight(np.diag([0.0, 1.0]), "psd"),
                np.array([1.0, 1.0]),
            )
        )
        assert sol.exists and abs(sol.min_value - 1.0) < 1e-12
        assert sol.solution_set.direction.dim == 2

    def test_unsolvable_is_reported_not_raised(self):
        # A truly psd weight is always complementable in finite dimensions, so
        # the no-solution branch only opens through a borderline weight: this
        # one pairs the range against its complement and is psd up to 1e-12.
        a = graph_of_matrix(np.diag([1.0, 0.0]))
        w = Weight(borderline_neutral_weight(), "psd")
        assert w.borderline
        sol = solve(LssProblem(a, w, np.array([0.0, 1.0])))
        assert not sol.exists and sol.witness is None
        assert sol.solution_set.is_empty and np.isnan(sol.min_value)


class TestSolveInvariants:
    @pytest.mark.parametrize("seed", range(25))
    def test_existence_minimum_and_structure(self, seed):
        rng = np.random.default_rng(5000 + seed)
        n = int(rng.integers(2, 7))
        a = random_relation(rng, n, n)
        w = Weight(random_psd(rng, n), "psd")
        b = cvec(rng, n)
        prob = LssProblem(a, w, b)
        sol = solve(prob)
        ran_a = parts(a).ran
        # existence matches direct membership in ran A + companion
        dom = parts(make_pws(w, ran_a)).dom
        assert sol.exists == dom.contains_vector(b)
        if not sol.exists:
            return
        oracle_min = oracles.weighted_min_over_span(w.matrix, ran_a.basis, b)
        assert abs(sol.min_value - oracle_min) < 1e-8
        # attainment: members of the output coset meet the minimum, outsiders miss it
        w_half = psd_sqrt(w.matrix)
        outputs = sol.minimizing_outputs
        for _ in range(3):
            member = outputs.point
            if outputs.direction.dim:
                member = member + outputs.direction.basis @ cvec(rng, outputs.direction.dim)
            assert abs(np.linalg.norm(w_half @ (member - b)) - sol.min_value) < 1e-8
        lively = [
            s_vec
            for s_vec in ran_a.basis.T
            if np.linalg.norm(w_half @ s_vec) > 1e-3 and not outputs.contains(outputs.point + s_vec)
        ]
        for s_vec in lively[:2]:
            assert np.linalg.norm(w_half @ (outputs.point + s_vec - b)) > sol.min_value + 1e-10
        # solution-set structure: witness + inverse image of ker W
        assert sol.solution_set.contains(sol.witness)
        assert check_normal(prob, sol.witness)

    @pytest.mark.parametrize("seed", range(15))
    def test_solvable_for_all_b_iff_complementable(self, seed):
        rng = np.random.default_rng(5100 + seed)
        n = int(rng.integers(2, 6))
        a = random_relation(rng, n, n)
        w = Weight(random_psd(rng, n), "psd")
        report = complementability(w, parts(a).ran)
        solvable_everywhere = all(
            solve(LssProblem(a, w, cvec(rng, n))).exists for _ in range(5)
        )
        if report.is_complementable:
            assert solvable_everywhere
        else:
            outside = subspace_complement(report.domain)
            assert not solve(LssProblem(a, w, outside.basis[:, 0])).exists


class TestNormalEquation:
    def test_classical_case_reduces_to_matrix_normal_equation(self):
        rng = np.random.default_rng(18)
        a_mat = cmat(rng, 3, 3)
        b = cvec(rng, 3)
        prob = LssProblem(graph_of_matrix(a_mat), Weight(np.eye(3), "psd"), b)
        x0 = np.linalg.lstsq(a_mat, b, rcond=None)[0]
        assert check_normal(prob, x0)
        assert np.linalg.norm(a_mat.conj().T @ (a_mat @ x0 - b)) < 1e-9

    def test_rejects_points_outside_domain(self):
        a = graph_of_matrix(np.diag([1.0, 0.0]))
        prob = LssProblem(
            product_of_subspaces(E2_LINE, E2_LINE), Weight(np.eye(2), "psd"), np.zeros(2)
        )
        with pytest.raises(ValueError):
            check_normal(prob, np.array([1.0, 0.0]))

    @pytest.mark.parametrize("seed", range(25))
    def test_agreement_with_solution_membership(self, seed):
        rng = np.random.default_rng(5200 + seed)
        n = int(rng.integers(2, 6))
        a = random_relation(rng, n, n)
        dom = parts(a).dom
        if dom.dim == 0:
            return
        w = Weight(random_psd(rng, n), "psd")
        b = cvec(rng, n)
        prob = LssProblem(a, w, b)
        sol = solve(prob)
        candidate = dom.basis @ cvec(rng, dom.dim)
        verdict = check_normal(prob, candidate)
        assert verdict == (sol.exists and sol.solution_set.contains(candidate))
        if sol.exists:
            assert check_normal(prob, sol.witness)


class TestTwoWeights:
    def test_degenerate_first_weight(self):
        a = graph_of_matrix(np.diag([1.0, 0.0]))
        coset = w1w2_solve(
            a, Weight(np.diag([0.0, 1.0]), "psd"), Weight(np.eye(2), "psd"), np.array([1.0, 1.0])
        )
        assert np.linalg.norm(coset.min_norm_point()) < 1e-10
        assert coset.direction.dim == 0

    def test_identity_weights_give_pseudoinverse_solution(self):
        rng = np.random.default_rng(19)
        a_mat = cmat(rng, 4, 4) @ np.diag([1.0, 1.0, 0.0, 0.0])
        b = cvec(rng, 4)
        eye = Weight(np.eye(4), "psd")
        coset = w1w2_solve(graph_of_matrix(a_mat), eye, eye, b)
        assert np.linalg.norm(coset.min_norm_point() - np.linalg.pinv(a_mat) @ b) < 1e-8

    def test_no_first_stage_solution_raises(self):
        a = graph_of_matrix(np.diag([1.0, 0.0]))
        w1 = Weight(borderline_neutral_weight(), "psd")
        with pytest.raises(NoSolutionError):
            w1w2_solve(a, w1, Weight(np.eye(2), "psd"), np.array([0.0, 1.0]))

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_two_stage_oracle(self, seed):
        rng = np.random.default_rng(5300 + seed)
        n = int(rng.integers(2, 6))
        a = random_relation(rng, n, n)
        w1 = Weight(random_psd(rng, n), "psd")
        w2 = Weight(random_psd(rng, n), "psd")
        b = cvec(rng, n)
        first = solve(LssProblem(a, w1, b))
        if not first.exists:
            with pytest.raises(NoSolutionError):
                w1w2_solve(a, w1, w2, b)
            return
        refined = w1w2_solve(a, w1, w2, b)
        point, flat = oracles.minimize_seminorm_over_coset(
            w2.matrix, first.solution_set.point, first.solution_set.direction.basis
        )
        expected_dir = orthonormalize(flat, ambient_dim=n)
        assert subspace_equals(refined.direction, expected_dir)
        assert refined.contains(point)
        # every member is a first-stage solution of minimal second seminorm
        w2_half = psd_sqrt(w2.matrix)
        assert first.solution_set.contains(refined.point)
        assert (
            abs(
                np.linalg.norm(w2_half @ refined.point)
                - np.linalg.norm(w2_half @ point)
            )
            < 1e-8
        )
