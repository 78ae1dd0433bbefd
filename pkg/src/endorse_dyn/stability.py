"""Long-memory-limit analysis: drift fields, critical values, equilibria.

As the memory parameter approaches 1 the stochastic dynamics slave to a
deterministic drift.  Each score kind has its own natural state space:

* rootdegree: the state is the in-degree vector d (the square root is
  folded into the feature maps), with drift f(d) = m*gamma(d) - d;
* pagerank: fixed points solve s = pagerank_score(m G(s)) with e^T s = n;
* springrank: the drift is a linear solve against the regularized
  Laplacian of the current adjacency (closed form below).

``two_group_equilibria`` continues fixed points with k nodes at one score
value and n-k at another across a beta1 grid and classifies their linear
stability, which is what a bifurcation diagram needs.  Equilibrium a/b
values are reported in each kind's own state space (in-degree units for
rootdegree, score units otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .choice import (
    CANONICAL_FEATURES,
    FeatureMap,
    choice_probabilities,
    feature_grad_fd,
    utility,
)
from .core import ModelParams
from .errors import DomainError, NumericError
from .parallel import parallel_map
from .scores import in_degree, out_degree, pagerank_score, springrank_score

# ---------------------------------------------------------------------------
# feature maps per score kind (state-space view)
# ---------------------------------------------------------------------------


def _sqrt_prestige_eval(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    return np.tile(np.sqrt(d), (n, 1))


def _sqrt_prestige_grad(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    t = np.zeros((n, n, n))
    idx = np.arange(n)
    with np.errstate(divide="ignore"):
        g = 0.5 / np.sqrt(d)
    t[:, idx, idx] = g
    return t


def _sqrt_proximity_eval(d: np.ndarray) -> np.ndarray:
    r = np.sqrt(d)
    diff = r[:, None] - r[None, :]
    return diff**2


def _sqrt_proximity_grad(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    r = np.sqrt(d)
    diff = r[:, None] - r[None, :]  # sqrt(d_i) - sqrt(d_j)
    with np.errstate(divide="ignore"):
        inv = 1.0 / r
    t = np.zeros((n, n, n))
    idx = np.arange(n)
    t[idx, :, idx] += diff * inv[:, None]
    t[:, idx, idx] -= diff * inv[None, :]
    return t


ROOTDEG_FEATURES = (
    FeatureMap("prestige-sqrt", _sqrt_prestige_eval, _sqrt_prestige_grad),
    FeatureMap("proximity-sqrt", _sqrt_proximity_eval, _sqrt_proximity_grad),
)


def kind_features(score_kind: str):
    """Feature maps acting on the kind's state variable."""
    if score_kind == "rootdegree":
        return ROOTDEG_FEATURES
    if score_kind in ("pagerank", "springrank"):
        return CANONICAL_FEATURES
    raise DomainError(f"unknown score kind {score_kind!r}")


def egalitarian_root(score_kind: str, n: int, m: int) -> np.ndarray:
    if score_kind == "rootdegree":
        return np.full(n, m / n)
    if score_kind == "pagerank":
        return np.ones(n)
    if score_kind == "springrank":
        return np.zeros(n)
    raise DomainError(f"unknown score kind {score_kind!r}")


# ---------------------------------------------------------------------------
# probabilities and their derivatives in state space
# ---------------------------------------------------------------------------


def state_probabilities(score_kind: str, s: np.ndarray, beta) -> np.ndarray:
    """Choice matrix p(s) with the kind's feature maps."""
    return choice_probabilities(utility(s, beta, kind_features(score_kind)))


def state_rate_matrix(score_kind: str, s: np.ndarray, beta) -> np.ndarray:
    p = state_probabilities(score_kind, s, beta)
    return p / p.shape[0]


def state_rank_vector(score_kind: str, s: np.ndarray, beta) -> np.ndarray:
    return state_probabilities(score_kind, s, beta).mean(axis=0)


def _combined_grad(s: np.ndarray, beta, features) -> np.ndarray:
    """D[i,j,k] = sum_l beta_l * d phi_l(s)_ij / d s_k."""
    n = s.shape[0]
    d = np.zeros((n, n, n))
    for b, feat in zip(beta, features):
        if b == 0.0:
            continue
        t = feat.grad(s) if feat.grad is not None else feature_grad_fd(feat, s)
        d += b * t
    return d


def dprob_tensor(s: np.ndarray, beta, features) -> np.ndarray:
    """dP[i,j,k] = d p_ij / d s_k for the logit choice built on `features`."""
    p = choice_probabilities(utility(s, beta, features))
    d = _combined_grad(s, beta, features)
    # dp_ij = p_ij (du_ij - sum_j' p_ij' du_ij')
    row_mean = np.einsum("ij,ijk->ik", p, d)
    return p[:, :, None] * (d - row_mean[:, None, :])


def dgamma_ds(score_kind: str, s: np.ndarray, beta) -> np.ndarray:
    """M(s)[j,k] = d gamma_j / d s_k, gamma = column means of p."""
    dp = dprob_tensor(s, beta, kind_features(score_kind))
    return dp.mean(axis=0)


# ---------------------------------------------------------------------------
# drift fields
# ---------------------------------------------------------------------------


def f_degree(s: np.ndarray, params: ModelParams) -> np.ndarray:
    """Drift of the in-degree vector: f(d) = m * gamma(d) - d."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise DomainError("in-degree state must be nonnegative")
    gamma = state_rank_vector("rootdegree", s, params.beta)
    return params.m * gamma - s


def f_pagerank_root_system(s: np.ndarray, params: ModelParams) -> np.ndarray:
    """Residual of [G^T(s) + a^-1 (1-a) n^-2 E] s - a^-1 n^-1 s, e^T s = n.

    Zero exactly at fixed points of the score-feedback loop.  The bracketed
    operator has constant column sums 1/(a n), so its leading eigenvalue is
    1/(a n) for any s; roots are located with `pagerank_alternating_solve`.
    """
    s = np.asarray(s, dtype=float)
    n = s.shape[0]
    if abs(s.sum() - n) > 1e-8 * n:
        raise DomainError("pagerank root candidates must satisfy e^T s = n")
    if np.any(s <= 0):
        raise DomainError("pagerank root candidates must be strictly positive")
    return _pagerank_residual(s, params)


def _pagerank_residual(s: np.ndarray, params: ModelParams) -> np.ndarray:
    n = s.shape[0]
    a = params.alpha_p
    g = state_rate_matrix("pagerank", s, params.beta)
    return g.T @ s + (1.0 - a) / (a * n * n) * s.sum() - s / (a * n)


def pagerank_alternating_solve(
    s0: np.ndarray,
    params: ModelParams,
    tol: float = 1e-12,
    max_iter: int = 10_000,
) -> np.ndarray:
    """Alternate the leading-eigenvector solve with refreshing G from s.

    Since rows of m G(s) sum to m/n, the eigen step is exactly
    pagerank_score(m G(s)); iterate s <- pagerank_score(m G(s)) to a fixed
    point.
    """
    s = np.asarray(s0, dtype=float).copy()
    for _ in range(max_iter):
        nxt = pagerank_score(params.m * state_rate_matrix("pagerank", s, params.beta),
                             params.alpha_p)
        delta = np.abs(nxt - s).max()
        s = nxt
        if delta <= tol:
            return s
    raise NumericError(
        "pagerank alternating solve did not converge",
        diagnostics={
            "iterations": max_iter,
            "last_step": float(delta),
            "last_residual": float(np.abs(_pagerank_residual(s, params)).max()),
        },
    )


def _springrank_lg(gamma: np.ndarray, g: np.ndarray) -> np.ndarray:
    n = gamma.shape[0]
    return np.diag(gamma) + np.eye(n) / n - (g + g.T)


def _l_alpha(a: np.ndarray, alpha_s: float) -> np.ndarray:
    lap = np.diag(in_degree(a) + out_degree(a)) - (a + a.T)
    lap[np.diag_indices_from(lap)] += alpha_s
    return lap


def _solve_projected(l_alpha: np.ndarray, rhs: np.ndarray, x_mean: float) -> np.ndarray:
    """Solve l_alpha x = rhs given the exact mean of the solution.

    l_alpha has the tiny eigenvalue alpha_s on e, so rounding noise in
    rhs's e-component is amplified by 1/alpha_s.  Solve on the mean-zero
    part and reattach the analytically known mean instead.
    """
    rhs_perp = rhs - rhs.mean()
    x = scipy.linalg.solve(l_alpha, rhs_perp, assume_a="pos")
    return x - x.mean() + x_mean


def f_springrank(s: np.ndarray, a: np.ndarray, params: ModelParams) -> np.ndarray:
    """Drift of the spring-embedding score at state (s, a) with s = sigma(a).

        f = -L_alpha(a)^-1 [ alpha_s s + m (L_G(s) s + (e/n - gamma(s))) ]
        L_G = diag(gamma) + I/n - (G + G^T)

    e^T of the bracket equals alpha_s e^T s exactly, so the bracket's
    e-component is replaced by that analytic value before the solve; the
    solution's e-component is then -mean(s).
    """
    s = np.asarray(s, dtype=float)
    a = np.asarray(a, dtype=float)
    n = s.shape[0]
    g = state_rate_matrix("springrank", s, params.beta)
    gamma = g.sum(axis=0)
    lg = _springrank_lg(gamma, g)
    forcing = params.alpha_s * s + params.m * (lg @ s + (1.0 / n - gamma))
    l_alpha = _l_alpha(a, params.alpha_s)
    # exact mean of L_alpha^-1 forcing is mean(s); f negates it
    y = _solve_projected(l_alpha, forcing, s.mean())
    return -y


def f_drift(score_kind: str, s: np.ndarray, a: np.ndarray | None, params: ModelParams) -> np.ndarray:
    """Unified closed-form drift; `a` is required for pagerank/springrank."""
    if score_kind == "rootdegree":
        return f_degree(s, params)
    if score_kind == "springrank":
        if a is None:
            a = params.m * state_rate_matrix("springrank", s, params.beta)
        return f_springrank(s, a, params)
    if score_kind == "pagerank":
        if a is None:
            a = params.m * state_rate_matrix("pagerank", s, params.beta)
        return _f_pagerank_drift(s, a, params)
    raise DomainError(f"unknown score kind {score_kind!r}")


def _f_pagerank_drift(s: np.ndarray, a: np.ndarray, params: ModelParams) -> np.ndarray:
    """d/d(eps) of pagerank_score(a + eps (mG(s) - a)) at eps = 0."""
    a = np.asarray(a, dtype=float)
    n = s.shape[0]
    dout = a.sum(axis=1)
    if np.any(dout <= 0):
        raise DomainError("pagerank drift needs strictly positive out-degrees")
    w = (a / dout[:, None]).T  # P^T
    h = params.m * state_rate_matrix("pagerank", s, params.beta) - a
    v = s / dout
    rhs = h.T @ v - w @ (h.sum(axis=1) * v)
    alpha = params.alpha_p
    return alpha * np.linalg.solve(np.eye(n) - alpha * w, rhs)


def finite_memory_drift(
    score_kind: str,
    s: np.ndarray,
    a: np.ndarray,
    params: ModelParams,
    lam: float = 1.0 - 1e-6,
) -> np.ndarray:
    """Defining-limit oracle: [sigma(lam a + (1-lam) m G(s)) - s] / (1-lam).

    Requires s = sigma(a) in the kind's state space.  Used in tests to pin
    the closed-form drifts; exposed because it is the model-agnostic way to
    attach a drift to a custom score function.
    """
    s = np.asarray(s, dtype=float)
    a = np.asarray(a, dtype=float)
    g = state_rate_matrix(score_kind, s, params.beta)
    a_next = lam * a + (1.0 - lam) * params.m * g
    if score_kind == "rootdegree":
        s_next = in_degree(a_next)
    elif score_kind == "pagerank":
        s_next = pagerank_score(a_next, params.alpha_p)
    elif score_kind == "springrank":
        s_next = springrank_score(a_next, params.alpha_s)
    else:
        raise DomainError(f"unknown score kind {score_kind!r}")
    return (s_next - s) / (1.0 - lam)


def state_of(score_kind: str, a: np.ndarray, params: ModelParams) -> np.ndarray:
    """The kind's state variable for an adjacency (in-degree or score)."""
    if score_kind == "rootdegree":
        return in_degree(a)
    if score_kind == "pagerank":
        return pagerank_score(a, params.alpha_p)
    if score_kind == "springrank":
        return springrank_score(a, params.alpha_s)
    raise DomainError(f"unknown score kind {score_kind!r}")


# ---------------------------------------------------------------------------
# jacobians and critical values
# ---------------------------------------------------------------------------


def critical_beta1(
    score_kind: str,
    n: int,
    m: float,
    alpha_p: float = 0.85,
    alpha_s: float = 1e-8,
) -> float:
    """Threshold on beta1 where the egalitarian root loses stability."""
    if n < 2 or m <= 0:
        raise DomainError("need n >= 2 and m > 0")
    if score_kind == "rootdegree":
        return 2.0 * np.sqrt(n / m)
    if score_kind == "pagerank":
        if not 0.0 < alpha_p < 1.0:
            raise DomainError("alpha_p must lie in (0, 1)")
        return 1.0 / alpha_p
    if score_kind == "springrank":
        if alpha_s <= 0:
            raise DomainError("alpha_s must be positive")
        return 2.0 + alpha_s * n / m
    raise DomainError(f"unknown score kind {score_kind!r}")


def jacobian_egalitarian(score_kind: str, params: ModelParams, n: int):
    """M = dgamma/ds and the assembled drift Jacobian at the egalitarian root.

    Returns (M, J, eigenvalues).  Only beta1 enters: the proximity feature's
    gradient vanishes identically at equal scores, so J is exactly invariant
    to beta2.
    """
    s0 = egalitarian_root(score_kind, n, params.m)
    m_mat = dgamma_ds(score_kind, s0, params.beta)
    jac = _assemble_jacobian(score_kind, s0, m_mat, params, n)
    return m_mat, jac, np.linalg.eigvals(jac)


def _assemble_jacobian(
    score_kind: str,
    s_star: np.ndarray,
    m_mat: np.ndarray,
    params: ModelParams,
    n: int,
) -> np.ndarray:
    """Jacobian of the drift at a fixed point s* (state A* = m G(s*)).

    All three reduce to J = m * Dsigma[A*] dG/ds - I; the A-space
    linearization shares this spectrum apart from extra -1 eigenvalues.
    """
    if score_kind == "rootdegree":
        return params.m * m_mat - np.eye(n)
    if score_kind == "pagerank":
        return _pagerank_fp_jacobian(s_star, m_mat, params, n)
    if score_kind == "springrank":
        return _springrank_fp_jacobian(s_star, m_mat, params, n)
    raise DomainError(f"unknown score kind {score_kind!r}")


def _pagerank_fp_jacobian(s_star, m_mat, params: ModelParams, n: int) -> np.ndarray:
    # A* = m G(s*): rows sum to m/n, so P = n G and (D_out)^-1 s = (n/m) s.
    beta = params.beta
    alpha = params.alpha_p
    g = state_rate_matrix("pagerank", s_star, beta)
    w = (n * g).T  # P^T, always positive: no dangling rows at a fixed point
    dg = dprob_tensor(s_star, beta, CANONICAL_FEATURES) / n
    # column k of the resolvent's input: n [dG_k^T s - P^T ((dG_k e) o s)]
    rhs = n * (
        np.einsum("ijk,i->jk", dg, s_star)
        - w @ (np.einsum("ijk->ik", dg) * s_star[:, None])
    )
    cols = alpha * np.linalg.solve(np.eye(n) - alpha * w, rhs)
    return cols - np.eye(n)


def _springrank_fp_jacobian(s_star, m_mat, params: ModelParams, n: int) -> np.ndarray:
    beta = params.beta
    alpha_s = params.alpha_s
    m = params.m
    g = state_rate_matrix("springrank", s_star, beta)
    gamma = g.sum(axis=0)
    lg = _springrank_lg(gamma, g)
    dg = dprob_tensor(s_star, beta, CANONICAL_FEATURES) / n
    # dF/ds columns: alpha_s I + m [L_G + diag(M v) s* - (dG + dG^T) s* - M]
    dsym = np.einsum("ijk,i->jk", dg, s_star) + np.einsum("jik,i->jk", dg, s_star)
    df = alpha_s * np.eye(n) + m * (lg + m_mat * s_star[:, None] - dsym - m_mat)
    l_alpha = m * lg + alpha_s * np.eye(n)
    # column sums of dF are exactly alpha_s; solve perp and e parts separately
    df_perp = df - df.mean(axis=0, keepdims=True)
    y = scipy.linalg.solve(l_alpha, df_perp, assume_a="pos")
    y -= y.mean(axis=0, keepdims=True)
    return -y - np.full((n, n), 1.0 / n)


def fixed_point_jacobian(score_kind: str, s_star: np.ndarray, params: ModelParams) -> np.ndarray:
    """Drift Jacobian at an arbitrary fixed point (egalitarian or not)."""
    s_star = np.asarray(s_star, dtype=float)
    n = s_star.shape[0]
    m_mat = dgamma_ds(score_kind, s_star, params.beta)
    return _assemble_jacobian(score_kind, s_star, m_mat, params, n)


# ---------------------------------------------------------------------------
# two-group equilibria and continuation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Equilibrium:
    s_star: np.ndarray
    residual: float
    jacobian_eigs: np.ndarray
    stable: bool
    marginal: bool
    k_elite: int  # 0 marks the egalitarian (degenerate a = b) root
    a: float
    b: float

    @property
    def max_eig_real(self) -> float:
        return float(self.jacobian_eigs.real.max())


@dataclass(frozen=True)
class Branch:
    k_elite: int
    beta1: np.ndarray
    equilibria: tuple


def _full_residual(score_kind: str, s: np.ndarray, params: ModelParams) -> np.ndarray:
    """The n-dimensional root system F(s); zero exactly at fixed points."""
    n = s.shape[0]
    if score_kind == "rootdegree":
        return f_degree(s, params)
    if score_kind == "pagerank":
        a = params.alpha_p
        g = state_rate_matrix("pagerank", s, params.beta)
        return a * n * (g.T @ s) + (1.0 - a) - s
    if score_kind == "springrank":
        g = state_rate_matrix("springrank", s, params.beta)
        gamma = g.sum(axis=0)
        lg = _springrank_lg(gamma, g)
        return params.alpha_s * s + params.m * (lg @ s + (1.0 / n - gamma))
    raise DomainError(f"unknown score kind {score_kind!r}")


def _reported_residual(score_kind: str, s: np.ndarray, params: ModelParams) -> float:
    if score_kind == "rootdegree":
        r = f_degree(s, params)
    elif score_kind == "pagerank":
        r = _pagerank_residual(s, params)
    else:
        r = f_springrank(s, params.m * state_rate_matrix("springrank", s, params.beta), params)
    return float(np.abs(r).max())


def _two_group_vector(a: float, b: float, k: int, n: int) -> np.ndarray:
    s = np.full(n, b, dtype=float)
    s[:k] = a
    return s


def _newton_two_group(
    score_kind: str,
    params: ModelParams,
    n: int,
    k: int,
    x0: np.ndarray,
    tol: float = 1e-11,
    max_iter: int = 80,
) -> np.ndarray | None:
    """Damped Newton on the 2-variable reduced system; None on failure."""

    nonneg = score_kind == "rootdegree"

    def resid(x):
        s = _two_group_vector(x[0], x[1], k, n)
        full = _full_residual(score_kind, s, params)
        return np.array([full[0], full[k]])

    x = np.asarray(x0, dtype=float).copy()
    if nonneg:
        x = np.maximum(x, 1e-12)
    fx = resid(x)
    norm = np.abs(fx).max()
    best_x, best_norm = x.copy(), norm
    # iterate past `tol` while steps still improve: downstream residual
    # reporting divides by a possibly small spectral gap, so polish to the
    # numerical floor when it is cheap
    for _ in range(max_iter):
        if norm <= 1e-15 * (1.0 + np.abs(x).max()):
            break
        jac = np.empty((2, 2))
        for j in range(2):
            h = 1e-7 * (1.0 + abs(x[j]))
            xp = x.copy()
            xm = x.copy()
            xp[j] += h
            xm[j] -= h
            if nonneg:
                xm[j] = max(xm[j], 0.0)
            jac[:, j] = (resid(xp) - resid(xm)) / (xp[j] - xm[j])
        try:
            dx = np.linalg.solve(jac, fx)
        except np.linalg.LinAlgError:
            break
        # backtrack until the residual actually drops (and stays in domain)
        step = 1.0
        improved = False
        for _ in range(40):
            xn = x - step * dx
            if nonneg and np.any(xn < 0):
                step *= 0.5
                continue
            fn = resid(xn)
            if np.abs(fn).max() < norm:
                x, fx = xn, fn
                norm = np.abs(fx).max()
                improved = True
                break
            step *= 0.5
        if not improved:
            break
        if norm < best_norm:
            best_x, best_norm = x.copy(), norm
    return best_x if best_norm <= tol else None


def _seed_points(score_kind: str, n: int, k: int, m: int) -> list[np.ndarray]:
    """Fresh starting guesses: egalitarian, perturbed, and elite-dominated."""
    seeds = []
    if score_kind == "rootdegree":
        e0 = m / n
        seeds.append(np.array([e0, e0]))
        seeds.append(np.array([1.3 * e0, e0 * (1 - 0.3 * k / (n - k))]))
        for frac in (0.6, 0.9, 0.99):
            seeds.append(np.array([frac * m / k, (1 - frac) * m / (n - k)]))
    elif score_kind == "pagerank":
        seeds.append(np.array([1.0, 1.0]))
        seeds.append(np.array([1.3, 1 - 0.3 * k / (n - k)]))
        for frac in (0.6, 0.9, 0.99):
            seeds.append(np.array([frac * n / k, (1 - frac) * n / (n - k)]))
    else:
        seeds.append(np.array([0.0, 0.0]))
        for c in (0.2, 1.0, 3.0, 6.0):
            seeds.append(np.array([c * (n - k) / n, -c * k / n]))
    return seeds


def _classify(score_kind: str, x: np.ndarray, k: int, n: int, params: ModelParams) -> Equilibrium:
    a, b = float(x[0]), float(x[1])
    tie = abs(a - b) < 1e-9 * (1.0 + abs(a) + abs(b))
    if tie:
        mid = 0.5 * (a + b)
        a = b = mid
        k_out = 0
        s = np.full(n, mid)
    elif a > b:
        k_out = k
        s = _two_group_vector(a, b, k, n)
    else:
        # canonical form: elite group = larger score value
        a, b = b, a
        k_out = n - k
        s = _two_group_vector(a, b, k_out, n)
    jac = fixed_point_jacobian(score_kind, s, params)
    eigs = np.linalg.eigvals(jac)
    max_re = float(eigs.real.max())
    return Equilibrium(
        s_star=s,
        residual=_reported_residual(score_kind, s, params),
        jacobian_eigs=eigs,
        stable=max_re < 0.0,
        marginal=abs(max_re) < 1e-10,
        k_elite=k_out,
        a=a,
        b=b,
    )


def two_group_equilibria(
    score_kind: str,
    params: ModelParams,
    n: int,
    k_elite: int,
    beta1_grid,
    threads: int | None = None,
) -> list[Branch]:
    """Continue two-group fixed points over a beta1 grid.

    For each beta1, roots of the reduced system with k_elite nodes at value
    a and n-k_elite at value b are found from fresh seeds plus continuation
    from the previous grid point, deduplicated, canonicalized to a >= b,
    and classified by the full drift-Jacobian spectrum.  A root-finder
    failure at one grid point leaves a gap in the affected branch rather
    than aborting the sweep.
    """
    if not 1 <= k_elite < n:
        raise DomainError("need 1 <= k_elite < n")
    beta1_grid = [float(b) for b in beta1_grid]

    def solve_point(item):
        idx, b1 = item
        p = params.with_(beta=(b1,) + params.beta[1:])
        sols = []
        for seed in _seed_points(score_kind, n, k_elite, p.m):
            x = _newton_two_group(score_kind, p, n, k_elite, seed)
            if x is not None:
                sols.append(x)
        return idx, sols

    # pass 1: fresh seeds at every grid point, in parallel
    fresh = dict(parallel_map(solve_point, enumerate(beta1_grid), threads=threads))

    # pass 2: sequential continuation sweep, then dedup + classify
    per_point: list[list[Equilibrium]] = []
    carried: list[np.ndarray] = []
    for idx, b1 in enumerate(beta1_grid):
        p = params.with_(beta=(b1,) + params.beta[1:])
        candidates = list(fresh.get(idx, []))
        for prev in carried:
            x = _newton_two_group(score_kind, p, n, k_elite, prev)
            if x is not None:
                candidates.append(x)
        uniq: list[np.ndarray] = []
        for x in candidates:
            scale = 1.0 + abs(x[0]) + abs(x[1])
            if not any(np.abs(x - u).max() < 1e-7 * scale for u in uniq):
                uniq.append(x)
        carried = uniq
        per_point.append([_classify(score_kind, x, k_elite, n, p) for x in uniq])

    return _link_branches(beta1_grid, per_point)


def _link_branches(beta1_grid, per_point) -> list[Branch]:
    """Greedy nearest-continuation linking of per-grid-point roots."""
    open_branches: list[dict] = []
    closed: list[dict] = []
    for idx, (b1, eqs) in enumerate(zip(beta1_grid, per_point)):
        still_open = []
        used = set()
        for br in open_branches:
            if br["last_idx"] != idx - 1:
                closed.append(br)
                continue
            last = br["eqs"][-1]
            best_j, best_d = None, np.inf
            for j, eq in enumerate(eqs):
                if j in used or eq.k_elite != br["k"]:
                    continue
                d = abs(eq.a - last.a) + abs(eq.b - last.b)
                if d < best_d:
                    best_j, best_d = j, d
            scale = 1.0 + abs(last.a) + abs(last.b)
            if best_j is not None and best_d < 0.5 * scale:
                br["beta1"].append(b1)
                br["eqs"].append(eqs[best_j])
                br["last_idx"] = idx
                used.add(best_j)
                still_open.append(br)
            else:
                closed.append(br)
        for j, eq in enumerate(eqs):
            if j not in used:
                still_open.append(
                    {"k": eq.k_elite, "beta1": [b1], "eqs": [eq], "last_idx": idx}
                )
        open_branches = still_open
    closed.extend(open_branches)
    return [
        Branch(k_elite=br["k"], beta1=np.array(br["beta1"]), equilibria=tuple(br["eqs"]))
        for br in closed
    ]
