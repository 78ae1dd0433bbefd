"""Long-memory drift, Jacobian, and equilibrium-continuation tests.

The deepest check here compares the reduced fixed-point Jacobian against a
finite-difference linearization of the full n^2-dimensional affinity flow
a' = m G(sigma(a)) - a: the reduced spectrum must reappear inside the full
spectrum, with every remaining eigenvalue equal to -1.
"""

import numpy as np
import pytest

from endorse_dyn.choice import feature_grad_fd
from endorse_dyn.core import ModelParams
from endorse_dyn.errors import DomainError, NumericError
from endorse_dyn.stability import (
    ROOTDEG_FEATURES,
    dgamma_ds,
    egalitarian_root,
    f_degree,
    f_drift,
    f_pagerank_root_system,
    f_springrank,
    finite_memory_drift,
    fixed_point_jacobian,
    jacobian_egalitarian,
    critical_beta1,
    kind_features,
    pagerank_alternating_solve,
    state_of,
    state_rank_vector,
    state_rate_matrix,
    two_group_equilibria,
)

KINDS = ["rootdegree", "pagerank", "springrank"]


def params_for(kind, beta1, beta2=0.0, m=1, n=None):
    return ModelParams(lam=0.999, beta=(beta1, beta2), m=m, score_kind=kind)


def random_state(kind, n, rng):
    """A point in the kind's state space (positive degrees / positive scores
    summing to n / centered scores)."""
    if kind == "rootdegree":
        return rng.random(n) * 2 + 0.1
    if kind == "pagerank":
        s = rng.random(n) + 0.2
        return s * n / s.sum()
    s = rng.normal(size=n)
    return s - s.mean()


class TestFeatures:
    def test_rootdegree_feature_grads_match_fd(self):
        rng = np.random.default_rng(0)
        d = rng.random(5) * 3 + 0.5
        for feat in ROOTDEG_FEATURES:
            assert np.allclose(feat.grad(d), feature_grad_fd(feat, d), atol=1e-6), feat.name

    def test_kind_features_dispatch(self):
        assert kind_features("rootdegree") is ROOTDEG_FEATURES
        with pytest.raises(DomainError):
            kind_features("nope")


class TestStateMaps:
    def test_egalitarian_roots(self):
        assert np.allclose(egalitarian_root("rootdegree", 8, 3), 3 / 8)
        assert np.allclose(egalitarian_root("pagerank", 5, 2), 1.0)
        assert np.array_equal(egalitarian_root("springrank", 6, 1), np.zeros(6))

    @pytest.mark.parametrize("kind", KINDS)
    def test_rank_vector_composition(self, kind):
        from endorse_dyn.choice import choice_probabilities

        rng = np.random.default_rng(1)
        s = random_state(kind, 5, rng)
        beta = (1.2, -0.4)
        feats = kind_features(kind)
        u = np.zeros((5, 5))
        for b, f in zip(beta, feats):
            u += b * f.eval(s)
        p = choice_probabilities(u)
        assert np.allclose(state_rank_vector(kind, s, beta), p.mean(axis=0), atol=1e-14)
        assert np.allclose(state_rate_matrix(kind, s, beta), p / 5, atol=1e-14)

    @pytest.mark.parametrize("kind", KINDS)
    def test_dgamma_ds_matches_fd(self, kind):
        rng = np.random.default_rng(2)
        s = random_state(kind, 6, rng)
        beta = (0.9, -0.7)
        m_mat = dgamma_ds(kind, s, beta)
        fd = np.empty((6, 6))
        for k in range(6):
            h = 1e-6 * (1 + abs(s[k]))
            sp, sm = s.copy(), s.copy()
            sp[k] += h
            sm[k] -= h
            fd[:, k] = (
                state_rank_vector(kind, sp, beta) - state_rank_vector(kind, sm, beta)
            ) / (2 * h)
        assert np.allclose(m_mat, fd, atol=1e-7)

    @pytest.mark.parametrize("kind", KINDS)
    def test_dgamma_columns_sum_to_zero(self, kind):
        # gamma always sums to one, so every column of dgamma/ds does to zero
        rng = np.random.default_rng(3)
        s = random_state(kind, 7, rng)
        m_mat = dgamma_ds(kind, s, (2.0, -1.5))
        assert np.abs(m_mat.sum(axis=0)).max() < 1e-12

    def test_state_of_conventions(self):
        rng = np.random.default_rng(4)
        a = rng.random((5, 5))
        p = ModelParams(lam=0.9)
        assert np.array_equal(state_of("rootdegree", a, p), a.sum(axis=0))
        from endorse_dyn.scores import pagerank_score, springrank_score

        assert np.array_equal(state_of("pagerank", a, p), pagerank_score(a, p.alpha_p))
        assert np.array_equal(state_of("springrank", a, p), springrank_score(a, p.alpha_s))


class TestDrifts:
    def test_degree_drift_zero_at_egalitarian(self):
        for n, m in [(8, 1), (7, 3)]:
            p = params_for("rootdegree", 1.0, -2.0, m=m)
            f = f_degree(np.full(n, m / n), p)
            assert np.abs(f).max() < 1e-12

    def test_springrank_drift_zero_at_egalitarian(self):
        # odd n exercises the non dyadic 1/n arithmetic
        for n in (7, 8):
            p = params_for("springrank", 1.5, -0.5, m=2)
            a_egal = 2 * state_rate_matrix("springrank", np.zeros(n), p.beta)
            f = f_springrank(np.zeros(n), a_egal, p)
            assert np.abs(f).max() < 1e-10

    def test_pagerank_drift_zero_at_egalitarian(self):
        p = params_for("pagerank", 0.8, -1.0, m=2)
        e = np.ones(6)
        a_egal = 2 * state_rate_matrix("pagerank", e, p.beta)
        f = f_drift("pagerank", e, a_egal, p)
        assert np.abs(f).max() < 1e-10

    @pytest.mark.parametrize("kind", KINDS)
    def test_matches_generic_small_step_limit(self, kind):
        rng = np.random.default_rng(5)
        s = random_state(kind, 5, rng)
        p = params_for(kind, 1.1, -0.6, m=2)
        a = 2 * state_rate_matrix(kind, s, p.beta)  # consistent pair (s, a)
        if kind == "rootdegree":
            a = a * (s / a.sum(axis=0))[None, :]  # force in-degree = s exactly
        s_chk = state_of(kind, a, p)
        if kind != "rootdegree":
            s = s_chk  # re-anchor to the exact state of a
        closed = f_drift(kind, s, a, p)
        oracle = finite_memory_drift(kind, s, a, p, lam=1 - 1e-6)
        assert np.abs(closed - oracle).max() < 1e-4

    def test_degree_drift_rejects_negative_degrees(self):
        with pytest.raises(DomainError):
            f_degree(np.array([0.5, -0.1, 0.6]), params_for("rootdegree", 1.0))


class TestPagerankRootSystem:
    def test_alternating_solve_finds_hierarchical_root(self):
        p = params_for("pagerank", 2.0, 0.0, m=1)
        n = 6
        s0 = np.ones(n) + 0.3 * np.eye(n)[0] - 0.3 / n
        s0 *= n / s0.sum()
        s_star = pagerank_alternating_solve(s0, p)
        assert np.abs(f_pagerank_root_system(s_star, p)).max() < 1e-9
        assert s_star.sum() == pytest.approx(n, abs=1e-8)
        assert np.all(s_star > 0)
        assert s_star.max() > 1.5  # genuinely hierarchical, not egalitarian

    def test_egalitarian_is_exact_fixed_point_of_iteration(self):
        p = params_for("pagerank", 2.0, 0.0, m=1)
        s_star = pagerank_alternating_solve(np.ones(5), p)
        assert np.allclose(s_star, 1.0, atol=1e-12)

    def test_nonconvergence_raises_with_diagnostics(self):
        p = params_for("pagerank", 2.0, 0.0, m=1)
        s0 = np.ones(6) + 0.3 * np.eye(6)[0] - 0.05
        s0 *= 6 / s0.sum()
        with pytest.raises(NumericError) as exc:
            pagerank_alternating_solve(s0, p, max_iter=1)
        assert "last_residual" in exc.value.diagnostics

    def test_root_system_rejects_off_manifold_input(self):
        p = params_for("pagerank", 1.0, 0.0)
        with pytest.raises(DomainError):
            f_pagerank_root_system(np.array([2.0, 2.0, 2.0]), p)  # sums to 6, n = 3
        with pytest.raises(DomainError):
            f_pagerank_root_system(np.array([3.2, -0.1, -0.1]), p)


class TestEgalitarianJacobian:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("ratio", [0.5, 1.2])
    def test_leading_eigenvalue_is_beta_ratio_minus_one(self, kind, ratio):
        n, m = 5, 2
        bc = critical_beta1(kind, n, m)
        p = params_for(kind, ratio * bc, -1.0, m=m)
        _, _, eigs = jacobian_egalitarian(kind, p, n)
        assert eigs.real.max() == pytest.approx(ratio - 1.0, abs=1e-9)

    @pytest.mark.parametrize("kind", KINDS)
    def test_beta2_never_enters(self, kind):
        n = 6
        p0 = params_for(kind, 1.3, 0.0, m=2)
        p5 = params_for(kind, 1.3, -5.0, m=2)
        _, j0, _ = jacobian_egalitarian(kind, p0, n)
        _, j5, _ = jacobian_egalitarian(kind, p5, n)
        assert np.abs(j0 - j5).max() < 1e-12


def affinity_drift(kind, a, params):
    s = state_of(kind, a, params)
    return params.m * state_rate_matrix(kind, s, params.beta) - a


def affinity_jacobian_fd(kind, a_star, params):
    n = a_star.shape[0]
    jac = np.empty((n * n, n * n))
    flat = a_star.ravel()
    for col in range(n * n):
        h = 1e-6 * (1 + abs(flat[col]))
        ap, am = flat.copy(), flat.copy()
        ap[col] += h
        am[col] -= h
        diff = affinity_drift(kind, ap.reshape(n, n), params) - affinity_drift(
            kind, am.reshape(n, n), params
        )
        jac[:, col] = diff.ravel() / (2 * h)
    return jac


class TestFixedPointJacobian:
    def test_degree_jacobian_matches_fd_of_drift(self):
        rng = np.random.default_rng(6)
        s = rng.random(5) * 2 + 0.2
        p = params_for("rootdegree", 3.0, -0.8, m=2)
        jac = fixed_point_jacobian("rootdegree", s, p)
        fd = np.empty((5, 5))
        for k in range(5):
            h = 1e-6 * (1 + s[k])
            sp, sm = s.copy(), s.copy()
            sp[k] += h
            sm[k] -= h
            fd[:, k] = (f_degree(sp, p) - f_degree(sm, p)) / (2 * h)
        assert np.abs(jac - fd).max() < 1e-6

    @pytest.mark.parametrize("kind", KINDS)
    def test_reduced_spectrum_embeds_in_affinity_flow(self, kind):
        """At a hierarchical fixed point the n^2 affinity eigenvalues are the
        n reduced ones plus n^2 - n copies of -1."""
        n, m = 5, 2
        bc = critical_beta1(kind, n, m)
        p = params_for(kind, 1.5 * bc, -0.3, m=m)
        branches = two_group_equilibria(kind, p, n, 1, [1.5 * bc])
        hier = [
            eq
            for br in branches
            for eq in br.equilibria
            if eq.k_elite == 1 and eq.stable
        ]
        assert hier, "expected a stable one-elite equilibrium above threshold"
        eq = hier[0]
        a_star = p.m * state_rate_matrix(kind, eq.s_star, p.beta)
        full = np.linalg.eigvals(affinity_jacobian_fd(kind, a_star, p))
        reduced = eq.jacobian_eigs
        expected = np.concatenate([reduced, -np.ones(n * n - n)])
        assert np.allclose(
            np.sort_complex(full), np.sort_complex(expected), atol=1e-5
        )


class TestTwoGroupContinuation:
    @pytest.mark.parametrize("kind", KINDS)
    def test_supercritical_point_has_stable_elite_and_unstable_egalitarian(self, kind):
        n, m = 8, 1
        bc = critical_beta1(kind, n, m)
        p = params_for(kind, 0.0, 0.0, m=m)
        branches = two_group_equilibria(kind, p, n, 1, [1.5 * bc])
        eqs = [eq for br in branches for eq in br.equilibria]
        egal = [eq for eq in eqs if eq.k_elite == 0]
        hier = [eq for eq in eqs if eq.k_elite == 1]
        assert egal and not egal[0].stable
        assert any(eq.stable and eq.a > eq.b for eq in hier)
        assert all(eq.residual <= 1e-8 for eq in eqs)

    @pytest.mark.parametrize("kind", ["rootdegree", "pagerank"])
    def test_bistable_window_below_threshold(self, kind):
        n, m = 8, 1
        bc = critical_beta1(kind, n, m)
        p = params_for(kind, 0.0, 0.0, m=m)
        branches = two_group_equilibria(kind, p, n, 1, [0.9 * bc])
        eqs = [eq for br in branches for eq in br.equilibria]
        stable_egal = [eq for eq in eqs if eq.k_elite == 0 and eq.stable]
        stable_hier = [eq for eq in eqs if eq.k_elite == 1 and eq.stable]
        assert stable_egal and stable_hier

    def test_branches_span_grid_and_flip_stability(self):
        n, m = 8, 1
        bc = critical_beta1("rootdegree", n, m)
        grid = np.linspace(0.5 * bc, 1.5 * bc, 5)
        p = params_for("rootdegree", 0.0, 0.0, m=m)
        branches = two_group_equilibria("rootdegree", p, n, 1, grid)
        egal = [br for br in branches if br.k_elite == 0]
        assert len(egal) == 1
        br = egal[0]
        assert np.allclose(br.beta1, grid)
        stab = [eq.stable for eq in br.equilibria]
        assert stab[0] and not stab[-1]
        # each linked branch stores one equilibrium per covered grid point
        for other in branches:
            assert len(other.equilibria) == other.beta1.shape[0]

    def test_rejects_bad_group_size(self):
        p = params_for("rootdegree", 1.0)
        with pytest.raises(DomainError):
            two_group_equilibria("rootdegree", p, 6, 0, [1.0])
        with pytest.raises(DomainError):
            two_group_equilibria("rootdegree", p, 6, 6, [1.0])
