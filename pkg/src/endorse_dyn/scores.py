"""The three score functions sigma: A -> s, plus a plug-in registry.

Degree conventions used throughout the package: the in-degree of node i is
the column sum ``sum_j a[j, i]`` (weight received), the out-degree the row
sum ``sum_j a[i, j]`` (weight given).
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DomainError, NumericError


def in_degree(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=float).sum(axis=0)


def out_degree(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=float).sum(axis=1)


def root_degree_score(a: np.ndarray) -> np.ndarray:
    """s_i = sqrt(in-degree of i)."""
    d = in_degree(a)
    if np.any(d < 0):
        raise DomainError("adjacency must be nonnegative")
    return np.sqrt(d)


def _row_stochastic(a: np.ndarray) -> np.ndarray:
    """Row-normalize a, patching zero-out-degree rows with the uniform row.

    The dangling patch keeps the chain stochastic; it matters early in
    simulations and in sparse data periods.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    dout = a.sum(axis=1)
    p = np.empty_like(a)
    dangling = dout <= 0.0
    if np.any(dangling):
        p[dangling] = 1.0 / n
    ok = ~dangling
    p[ok] = a[ok] / dout[ok, None]
    return p


def pagerank_score(
    a: np.ndarray,
    alpha_p: float = 0.85,
    tol: float = 1e-12,
    max_iter: int = 100_000,
) -> np.ndarray:
    """Stationary teleported random-walk score, normalized so e^T s = n.

    Solves [alpha_p A^T (D_out)^-1 + (1-alpha_p) n^-1 e e^T] s = s by power
    iteration on the probability-normalized vector pi = s/n, starting from
    the uniform vector.  The operator is a strict contraction with factor
    alpha_p, so the iteration is globally convergent.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("adjacency must be square")
    if not 0.0 < alpha_p < 1.0:
        raise DomainError("alpha_p must lie in (0, 1)")
    n = a.shape[0]
    pt = _row_stochastic(a).T
    pi = np.full(n, 1.0 / n)
    teleport = (1.0 - alpha_p) / n
    for it in range(max_iter):
        nxt = alpha_p * (pt @ pi) + teleport
        nxt /= nxt.sum()
        diff = np.abs(nxt - pi).sum()
        pi = nxt
        if diff <= tol:
            return n * pi
    raise NumericError(
        "pagerank power iteration did not converge",
        diagnostics={"iterations": max_iter, "last_l1_diff": float(diff)},
    )


def springrank_score(a: np.ndarray, alpha_s: float = 1e-8) -> np.ndarray:
    """Spring-embedding score: the unique solution of a regularized system.

    Solves [D_in + D_out - (A + A^T) + alpha_s I] s = (d_in - d_out) by a
    symmetric positive definite factorization.  The exact solution has zero
    mean (e is an eigenvector of the regularized Laplacian with eigenvalue
    alpha_s and the right side is orthogonal to e), so the computed mean is
    pure rounding noise amplified by 1/alpha_s and is subtracted.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("adjacency must be square")
    if alpha_s <= 0.0:
        raise DomainError("alpha_s must be positive")
    din = in_degree(a)
    dout = out_degree(a)
    sym = a + a.T
    lap = np.diag(din + dout) - sym
    lap[np.diag_indices_from(lap)] += alpha_s
    rhs = din - dout
    try:
        s = scipy.linalg.solve(lap, rhs, assume_a="pos")
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - alpha_s > 0 prevents this
        raise NumericError(f"springrank solve failed: {exc}") from exc
    return s - s.mean()


SCORE_FUNCTIONS = {
    "rootdegree": lambda a, params: root_degree_score(a),
    "pagerank": lambda a, params: pagerank_score(a, params.alpha_p),
    "springrank": lambda a, params: springrank_score(a, params.alpha_s),
}


def score(a: np.ndarray, params) -> np.ndarray:
    """Dispatch on params.score_kind; extensible via SCORE_FUNCTIONS."""
    try:
        fn = SCORE_FUNCTIONS[params.score_kind]
    except KeyError:
        raise DomainError(f"unknown score kind {params.score_kind!r}") from None
    return fn(a, params)
