"""Trajectory engine: score -> utilities -> probabilities -> sample -> update.

One run iterates the full loop for a fixed number of steps, recording the
rank vector gamma(t) (the probability that the next endorsement lands on
each node) at every step.  Runs are bit-reproducible: the update matrix at
step t is drawn from a generator seeded with the pair (seed, t), so any
single step can be replayed in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import choice, scores
from .core import EndorsementState, ModelParams, rank_vector, step, uniform_initial
from .errors import DomainError, NumericError
from .parallel import parallel_map


@dataclass(frozen=True)
class Trajectory:
    gamma_t: np.ndarray  # steps x n rank-vector history
    a_final: np.ndarray  # adjacency after the last update
    params: ModelParams
    seed: int
    s_t: np.ndarray | None = None  # optional steps x n score history

    @property
    def steps(self) -> int:
        return self.gamma_t.shape[0]


def _step_rng(seed: int, t: int) -> np.random.Generator:
    return np.random.default_rng((int(seed), int(t)))


def run(
    params: ModelParams,
    a0: np.ndarray | None = None,
    steps: int = 2000,
    record_scores: bool = False,
) -> Trajectory:
    """Simulate `steps` updates from a0 (default: the uniform start).

    gamma(t) is recorded from the state *before* update t, so row t of the
    history describes A(t) for t = 0..steps-1 and a_final is A(steps).
    """
    if steps < 0:
        raise DomainError("steps must be nonnegative")
    if a0 is None:
        raise DomainError("a0 is required; use uniform_initial(n, m) for the default")
    state = EndorsementState(a=np.asarray(a0, dtype=float))
    n = state.n
    gamma_hist = np.empty((steps, n))
    s_hist = np.empty((steps, n)) if record_scores else None
    for t in range(steps):
        try:
            s = scores.score(state.a, params)
        except NumericError as exc:
            raise NumericError(f"score failed at step {t}: {exc}", exc.diagnostics) from exc
        u = choice.utility(s, params.beta)
        p = choice.choice_probabilities(u, exclude_self=params.exclude_self)
        gamma_hist[t] = rank_vector(p)
        if record_scores:
            s_hist[t] = s
        delta = choice.sample_delta(p, params.m, _step_rng(params.seed, t))
        state = step(state, delta, params.lam)
    return Trajectory(
        gamma_t=gamma_hist,
        a_final=np.asarray(state.a),
        params=params,
        seed=params.seed,
        s_t=s_hist,
    )


def rank_variance(traj: Trajectory, window: int = 500) -> float:
    """Population variance of gamma entries pooled over the final window.

    Zero for a constant egalitarian trajectory; larger values mean a more
    concentrated (more strongly hierarchical) endorsement flow.
    """
    if window < 1 or window > traj.steps:
        raise DomainError(f"window must lie in [1, {traj.steps}]")
    tail = traj.gamma_t[-window:]
    return float(np.var(tail))


def mean_gamma(traj: Trajectory, window: int = 500) -> np.ndarray:
    """Time-averaged rank vector over the final window."""
    if window < 1 or window > traj.steps:
        raise DomainError(f"window must lie in [1, {traj.steps}]")
    return traj.gamma_t[-window:].mean(axis=0)


def _cell_seed(base_seed: int, index: int) -> int:
    # Deterministic per-cell stream, independent of sweep evaluation order.
    return int(np.random.SeedSequence((int(base_seed), int(index))).generate_state(1)[0])


def variance_sweep(
    params: ModelParams,
    n: int,
    beta1_values,
    beta2_values,
    steps: int = 2000,
    window: int = 500,
    threads: int | None = None,
) -> list[tuple[float, float, float]]:
    """Grid of long-run rank variances over (beta1, beta2).

    Returns long-format rows (beta1, beta2, variance), ordered by the grid,
    regardless of which worker finished first.
    """
    grid = [(b1, b2) for b1 in beta1_values for b2 in beta2_values]
    a0 = uniform_initial(n, params.m)

    def one(item):
        index, (b1, b2) = item
        p = params.with_(beta=(float(b1), float(b2)), seed=_cell_seed(params.seed, index))
        traj = run(p, a0=a0, steps=steps)
        return (float(b1), float(b2), rank_variance(traj, window))

    return parallel_map(one, enumerate(grid), threads=threads)
