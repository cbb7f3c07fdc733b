"""Subspace arithmetic: examples, lattice laws, and the projector oracle."""

import numpy as np
import pytest

from relcalc import (
    Coset,
    DimensionMismatchError,
    Subspace,
    Tolerance,
    compare,
    full_space,
    lattice_op,
    orthonormalize,
    project,
    subspace_complement,
    subspace_contains,
    subspace_equals,
    subspace_intersect,
    subspace_sum,
    zero_space,
)

from genutil import cvec, cmat, random_subspace


def e(n, i):
    v = np.zeros(n)
    v[i] = 1.0
    return v


class TestOrthonormalize:
    def test_collinear_vectors_span_a_line(self):
        s = orthonormalize([np.array([1.0, 0.0]), np.array([2.0, 0.0])])
        assert s.dim == 1 and s.ambient_dim == 2

    def test_empty_span_is_zero_subspace(self):
        s = orthonormalize([], ambient_dim=2)
        assert s.dim == 0 and s.ambient_dim == 2

    def test_two_independent_vectors_fill_c2(self):
        # oracle: the projector of the full space is the identity
        s = orthonormalize([np.array([1.0, 1.0]), np.array([1.0, -1.0])])
        assert np.linalg.norm(s.projector() - np.eye(2)) < 1e-9

    def test_mismatched_lengths_rejected(self):
        with pytest.raises(DimensionMismatchError):
            orthonormalize([np.zeros(2), np.zeros(3)])

    def test_phase_convention_yields_reproducible_basis(self):
        rng = np.random.default_rng(7)
        mat = cmat(rng, 4, 2)
        a = orthonormalize(mat)
        b = orthonormalize(mat.copy())
        assert np.array_equal(a.basis, b.basis)
        # leading significant entry of each basis vector is real positive
        for j in range(a.dim):
            col = a.basis[:, j]
            lead = col[np.abs(col) > 1e-6 * np.abs(col).max()][0]
            assert abs(lead.imag) < 1e-14 and lead.real > 0


class TestLattice:
    def test_sum_of_axes_is_everything(self):
        s = subspace_sum(orthonormalize([e(2, 0)]), orthonormalize([e(2, 1)]))
        assert subspace_equals(s, full_space(2))

    def test_intersection_of_skew_lines_is_zero(self):
        s = subspace_intersect(
            orthonormalize([np.array([1.0, 1.0])]), orthonormalize([e(2, 0)])
        )
        assert s.dim == 0

    def test_complement_of_axis(self):
        c = subspace_complement(orthonormalize([e(2, 0)]))
        assert subspace_equals(c, orthonormalize([e(2, 1)]))

    def test_dispatch_form(self):
        s1, s2 = orthonormalize([e(2, 0)]), orthonormalize([e(2, 1)])
        assert subspace_equals(lattice_op("sum", s1, s2), full_space(2))
        assert lattice_op("intersect", s1, s2).dim == 0
        assert subspace_equals(lattice_op("complement", s1), s2)
        with pytest.raises(ValueError):
            lattice_op("complement", s1, s2)

    @pytest.mark.parametrize("seed", range(25))
    def test_modular_law_exact_dimension_count(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 9))
        s1, s2 = random_subspace(rng, n), random_subspace(rng, n)
        total = subspace_sum(s1, s2)
        meet = subspace_intersect(s1, s2)
        assert total.dim + meet.dim == s1.dim + s2.dim

    @pytest.mark.parametrize("seed", range(25))
    def test_double_complement_and_de_morgan(self, seed):
        rng = np.random.default_rng(100 + seed)
        n = int(rng.integers(2, 9))
        s1, s2 = random_subspace(rng, n), random_subspace(rng, n)
        assert subspace_equals(subspace_complement(subspace_complement(s1)), s1)
        # closedness of sums is vacuous here, surviving as the lattice identity
        lhs = subspace_complement(subspace_intersect(s1, s2))
        rhs = subspace_sum(subspace_complement(s1), subspace_complement(s2))
        assert subspace_equals(lhs, rhs)


class TestProject:
    def test_axis_projection(self):
        assert np.allclose(project(orthonormalize([e(2, 0)]), np.array([3.0, 4.0])), [3, 0])

    def test_rank_one_projector(self):
        got = project(orthonormalize([np.array([1.0, 1.0])]), np.array([1.0, 0.0]))
        assert np.allclose(got, [0.5, 0.5])

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_normal_equations_oracle(self, seed):
        # oracle: least-squares fit of v onto a raw (non-orthonormal) spanning set
        rng = np.random.default_rng(200 + seed)
        n = int(rng.integers(2, 9))
        raw = cmat(rng, n, int(rng.integers(1, n + 1)))
        v = cvec(rng, n)
        coeff, *_ = np.linalg.lstsq(raw, v, rcond=None)
        fitted = raw @ coeff
        assert np.linalg.norm(project(orthonormalize(raw), v) - fitted) < 1e-9

    @pytest.mark.parametrize("seed", range(20))
    def test_projector_idempotent_selfadjoint(self, seed):
        rng = np.random.default_rng(300 + seed)
        s = random_subspace(rng, int(rng.integers(2, 9)))
        p = s.projector()
        assert np.linalg.norm(p @ p - p) < 1e-10
        assert np.linalg.norm(p - p.conj().T) < 1e-10


class TestCompare:
    def test_full_space_equality(self):
        s = orthonormalize([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
        assert compare("equals", s, full_space(2))

    def test_containment(self):
        assert compare("contains", full_space(2), orthonormalize([e(2, 0)]))

    def test_distinct_lines_differ(self):
        a = orthonormalize([np.array([1.0, 1.0])])
        b = orthonormalize([np.array([1.0, -1.0])])
        assert not compare("equals", a, b)

    def test_zero_subspace_contained_everywhere(self):
        assert subspace_contains(zero_space(3), zero_space(3))
        assert subspace_contains(random_subspace(np.random.default_rng(1), 3), zero_space(3))


class TestTolerance:
    def test_negative_components_rejected(self):
        with pytest.raises(ValueError):
            Tolerance(abs_eps=-1.0)
        with pytest.raises(ValueError):
            Tolerance(rel_eps=-1.0)

    def test_rank_cut_follows_abs_eps(self):
        # a vector of norm below abs_eps is treated as zero
        tiny = orthonormalize([np.array([1e-13, 0.0])])
        assert tiny.dim == 0
        kept = orthonormalize([np.array([1e-13, 0.0])], Tolerance(abs_eps=1e-15))
        assert kept.dim == 1


class TestCoset:
    def test_membership(self):
        c = Coset.of(np.array([1.0, 0.0]), orthonormalize([e(2, 1)]))
        assert c.contains(np.array([1.0, 5.0]))
        assert not c.contains(np.array([2.0, 0.0]))

    def test_empty_is_a_value(self):
        c = Coset.empty(2)
        assert c.is_empty and not c.contains(np.zeros(2))

    def test_min_norm_point(self):
        c = Coset.of(np.array([1.0, 7.0]), orthonormalize([e(2, 1)]))
        assert np.allclose(c.min_norm_point(), [1.0, 0.0])

    def test_equality_ignores_representative(self):
        line = orthonormalize([e(2, 1)])
        a = Coset.of(np.array([1.0, 0.0]), line)
        b = Coset.of(np.array([1.0, 3.0]), line)
        assert a.equals(b)
        assert not a.equals(Coset.of(np.array([0.0, 0.0]), line))
        assert not a.equals(Coset.empty(2))


class TestSubspaceInvariants:
    def test_basis_is_readonly(self):
        s = orthonormalize([e(2, 0)])
        with pytest.raises(ValueError):
            s.basis[0, 0] = 5.0

    def test_non_orthonormal_basis_rejected(self):
        with pytest.raises(ValueError):
            Subspace(np.array([[1.0], [1.0]]))

    def test_too_many_columns_rejected(self):
        with pytest.raises(ValueError):
            Subspace(np.ones((2, 3)), validate=False)
