"""Model state, parameters, and the geometric-memory update rule.

The system is a weighted directed network on ``n`` nodes whose adjacency
matrix ``a`` holds the remembered endorsement weight ``a_ij`` flowing from
``i`` to ``j``.  Each time step collects ``m`` fresh endorsements into an
update matrix ``delta`` and folds them in with memory parameter ``lam``:

    a(t+1) = lam * a(t) + (1 - lam) * delta(t)

so the total remembered weight relaxes geometrically toward ``m``.  Score
functions over ``a`` live in :mod:`endorse_dyn.scores`; utilities, choice
probabilities, and sampling live in :mod:`endorse_dyn.choice`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError

SCORE_KINDS = ("rootdegree", "pagerank", "springrank")


@dataclass(frozen=True)
class EndorsementState:
    """Remembered endorsement weights at one instant.

    Attributes
    ----------
    a : np.ndarray
        n x n nonnegative real matrix; ``a[i, j]`` is the remembered
        weight of endorsements i -> j.
    t : int
        Time index (number of updates applied).
    """

    a: np.ndarray
    t: int = 0

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"state matrix must be square, got shape {a.shape}")
        if a.shape[0] < 2:
            raise DomainError("need at least 2 nodes")
        if not np.all(np.isfinite(a)):
            raise DomainError("state matrix has non-finite entries")
        if np.any(a < 0):
            raise DomainError("state matrix has negative entries")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "a", a)
        if self.t < 0:
            raise DomainError("time index must be nonnegative")

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class ModelParams:
    """Everything that pins down one model instance.

    ``beta`` pairs with the canonical feature maps of
    :mod:`endorse_dyn.choice`: ``beta[0]`` weights the endorsee's score
    (prestige) and ``beta[1]`` the squared score gap (proximity).  Longer
    vectors are allowed when custom features are supplied.
    """

    lam: float
    beta: tuple = (0.0, 0.0)
    m: int = 1
    score_kind: str = "springrank"
    alpha_p: float = 0.85
    alpha_s: float = 1e-8
    seed: int = 0
    exclude_self: bool = False

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise DomainError(f"lambda must lie in [0, 1], got {self.lam}")
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        if not all(np.isfinite(self.beta)):
            raise DomainError("beta has non-finite entries")
        if self.m < 1:
            raise DomainError("m must be a positive integer")
        if self.score_kind not in SCORE_KINDS:
            raise DomainError(
                f"unknown score kind {self.score_kind!r}; choose from {SCORE_KINDS}"
            )
        if not 0.0 < self.alpha_p < 1.0:
            raise DomainError("alpha_p must lie in (0, 1)")
        if self.alpha_s <= 0.0:
            raise DomainError("alpha_s must be positive")

    def with_(self, **kw) -> "ModelParams":
        return replace(self, **kw)


def step(state: EndorsementState, delta: np.ndarray, lam: float) -> EndorsementState:
    """Apply one memory update: a' = lam*a + (1-lam)*delta, t' = t+1."""
    delta = np.asarray(delta, dtype=float)
    if delta.shape != state.a.shape:
        raise DomainError(
            f"delta shape {delta.shape} does not match state shape {state.a.shape}"
        )
    if np.any(delta < 0):
        raise DomainError("delta has negative entries")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    return EndorsementState(a=lam * state.a + (1.0 - lam) * delta, t=state.t + 1)


def rate_matrix(p: np.ndarray) -> np.ndarray:
    """G = [n^-1 p_ij]; rows sum to 1/n, total sum 1."""
    p = np.asarray(p, dtype=float)
    return p / p.shape[0]


def rank_vector(p: np.ndarray) -> np.ndarray:
    """gamma_j = n^-1 sum_i p_ij for a row-stochastic p.

    gamma_j is the probability that the next endorsement lands on j.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DomainError("p must be square")
    rows = p.sum(axis=1)
    if np.any(np.abs(rows - 1.0) > 1e-9) or np.any(p < 0):
        raise DomainError("p must be row-stochastic")
    return p.mean(axis=0)


def uniform_initial(n: int, m: int) -> np.ndarray:
    """Default A(0) = (m/n^2) E: uniform weights with stationary total m."""
    if n < 2 or m < 1:
        raise DomainError("need n >= 2 and m >= 1")
    return np.full((n, n), m / n**2)


def sparse_random_initial(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded sparse start: m endorsements scattered uniformly over cells."""
    if n < 2 or m < 1:
        raise DomainError("need n >= 2 and m >= 1")
    counts = rng.multinomial(m, np.full(n * n, 1.0 / (n * n)))
    return counts.reshape(n, n).astype(float)
