"""Exact and simulated payoffs for a pair of memory-one strategies.

The joint play of two memory-one strategies is a Markov chain on the four
outcomes (CC, CD, DC, DD), written from player X's perspective. Long-run
per-round payoffs come from the chain's stationary distribution when it has
a single recurrent class; deterministic pairs fall back to exact cycle
averages, and anything else to an absorption-weighted mixture of class
averages. A seeded finite-match simulator serves as the stochastic oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .rng import substream

#: Y's conditioning re-indexed to X's state ordering: Y sees (CC, DC, CD, DD).
SWAP = (0, 2, 1, 3)


class NotErgodic(RuntimeError):
    """The joint chain has several recurrent classes, so no opponent-free
    stationary distribution exists."""


@dataclass(frozen=True)
class MatchParams:
    rounds: int = 200
    noise_eps: float = 0.0
    seed: int = 0
    record_trace: bool = False

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if not 0.0 <= self.noise_eps <= 0.5:
            raise ValueError("noise_eps must lie in [0, 0.5]")


@dataclass(frozen=True)
class PayoffPair:
    """Long-run per-round expected payoffs of the two players."""

    s_x: float
    s_y: float
    method: str  # "stationary" | "cycle" | "absorbing" | "simulated"
    stderr: float | None = None


@dataclass(frozen=True)
class OutcomeDistribution:
    """Occupancy of the four joint states (CC, CD, DC, DD)."""

    v: tuple

    def __post_init__(self):
        v = tuple(float(x) for x in self.v)
        if len(v) != 4 or any(x < -1e-12 for x in v) or abs(sum(v) - 1.0) > 1e-12:
            raise ValueError(f"not a distribution over 4 states: {v}")
        object.__setattr__(self, "v", v)

    def array(self):
        return np.array(self.v)


def transition_matrix(p, q):
    """Row-stochastic 4x4 transition matrix of the joint chain.

    Rows and columns are indexed (CC, CD, DC, DD) from X's perspective;
    entry [s, s'] multiplies X's and Y's independent move probabilities.
    """
    px = p.probs()
    qy = q.probs()[list(SWAP)]
    coop_x = px[:, None]
    coop_y = qy[:, None]
    return np.hstack([coop_x * coop_y, coop_x * (1 - coop_y),
                      (1 - coop_x) * coop_y, (1 - coop_x) * (1 - coop_y)])


def recurrent_classes(M):
    """Recurrent classes of the support graph of M, each a sorted state list."""
    reach = (M > 0.0) | np.eye(4, dtype=bool)
    for _ in range(2):  # transitive closure on 4 nodes
        reach = reach @ reach
    classes = []
    seen = set()
    for i in range(4):
        if i in seen:
            continue
        if all(reach[j, i] for j in range(4) if reach[i, j]):
            cls = sorted(j for j in range(4) if reach[i, j] and reach[j, i])
            classes.append(cls)
            seen.update(cls)
    return classes


def _stationary_on_class(M, cls):
    k = len(cls)
    sub = M[np.ix_(cls, cls)]
    A = sub.T - np.eye(k)
    A[-1, :] = 1.0
    b = np.zeros(k)
    b[-1] = 1.0
    try:
        v = np.linalg.solve(A, b)
    except np.linalg.LinAlgError:
        A = np.vstack([sub.T - np.eye(k), np.ones(k)])
        b = np.zeros(k + 1)
        b[-1] = 1.0
        v, *_ = np.linalg.lstsq(A, b, rcond=None)
    v = np.clip(v, 0.0, None)
    v /= v.sum()
    full = np.zeros(4)
    full[cls] = v
    return full


def stationary_distribution(M):
    """Stationary distribution of the joint chain.

    Solved as a linear system (one balance row replaced by normalization),
    with a least-squares fallback for numerically singular cases. Raises
    NotErgodic when the chain has more than one recurrent class.
    """
    classes = recurrent_classes(M)
    if len(classes) != 1:
        raise NotErgodic(f"{len(classes)} recurrent classes: {classes}")
    v = _stationary_on_class(M, classes[0])
    residual = np.abs(v @ M - v).max()
    if residual > 1e-12:
        raise ArithmeticError(f"stationary residual {residual:.3e} above 1e-12")
    return OutcomeDistribution(tuple(v))


def _initial_distribution(p, q):
    a, b = p.initial_coop, q.initial_coop
    return np.array([a * b, a * (1 - b), (1 - a) * b, (1 - a) * (1 - b)])


def longrun_distribution(p, q, use_initial=False):
    """Exact long-run average state occupancy of the pair.

    With a single recurrent class this is the stationary distribution and
    the initial move is irrelevant. Otherwise the Cesaro average depends on
    where the chain starts, and `use_initial` must be set: class averages
    get weighted by absorption probabilities from the initial joint move.

    Returns (occupancy vector, method string).
    """
    M = transition_matrix(p, q)
    classes = recurrent_classes(M)
    if len(classes) == 1:
        return _stationary_on_class(M, classes[0]), "stationary"
    if not use_initial:
        raise NotErgodic(f"{len(classes)} recurrent classes: {classes}")
    d0 = _initial_distribution(p, q)
    rec = sorted(s for cls in classes for s in cls)
    trans = [s for s in range(4) if s not in rec]
    out = np.zeros(4)
    for cls in classes:
        weight = d0[cls].sum()
        if trans:
            Q = M[np.ix_(trans, trans)]
            hit = M[np.ix_(trans, cls)].sum(axis=1)
            absorb = np.linalg.solve(np.eye(len(trans)) - Q, hit)
            weight += d0[trans] @ absorb
        out += weight * _stationary_on_class(M, cls)
    return out, "absorbing"


def exact_payoffs(p, q, game):
    """Stationary per-round payoffs; raises NotErgodic for multi-class chains."""
    sx, sy = game.payoff_vectors()
    M = transition_matrix(p, q)
    v = stationary_distribution(M).array()
    return PayoffPair(float(v @ sx), float(v @ sy), "stationary")


def absorbing_payoffs(p, q, game):
    """Initial-move-aware exact payoffs, defined for every strategy pair."""
    sx, sy = game.payoff_vectors()
    v, method = longrun_distribution(p, q, use_initial=True)
    return PayoffPair(float(v @ sx), float(v @ sy), method)


def payoffs_with_fallback(p, q, game):
    """exact_payoffs when the chain is ergodic, otherwise the exact
    initial-move-aware average (cycle average for deterministic pairs)."""
    try:
        return exact_payoffs(p, q, game)
    except NotErgodic:
        if p.is_deterministic and q.is_deterministic:
            return cycle_payoffs(p, q, game)
        return absorbing_payoffs(p, q, game)


def cycle_payoffs(p, q, game, initial_moves=None):
    """Cycle-average payoffs of a deterministic strategy pair.

    The trajectory from the initial joint move enters a cycle within four
    steps; transient states are excluded from the average.
    """
    if not (p.is_deterministic and q.is_deterministic):
        raise ValueError("cycle_payoffs needs two deterministic strategies")
    if initial_moves is None:
        a, b = int(p.initial_coop), int(q.initial_coop)
    else:
        a, b = (int(bool(m)) for m in initial_moves)
    px = p.probs()
    qy = q.probs()[list(SWAP)]
    state = (1 - a) * 2 + (1 - b)
    seen = {}
    path = []
    while state not in seen:
        seen[state] = len(path)
        path.append(state)
        a = int(px[state])
        b = int(qy[state])
        state = (1 - a) * 2 + (1 - b)
    cycle = path[seen[state]:]
    sx, sy = game.payoff_vectors()
    mean_x = sum(sx[s] for s in cycle) / len(cycle)
    mean_y = sum(sy[s] for s in cycle) / len(cycle)
    return PayoffPair(float(mean_x), float(mean_y), "cycle")


def simulate_match(p, q, game, params):
    """Play a finite noisy match and return per-round mean payoffs.

    Execution noise flips each intended move independently with probability
    noise_eps, which is equivalent to playing the noise-adjusted conditional
    probabilities, so the simulator folds it in before sampling. The
    reported stderr is a batch-means estimate (robust to the chain's
    autocorrelation); the single value is the larger of the two players'.

    Fully determined by params.seed. Returns the PayoffPair, or the tuple
    (PayoffPair, int8 state sequence) when params.record_trace is set.
    """
    eps = params.noise_eps
    pn, qn = p.with_noise(eps), q.with_noise(eps)
    px = pn.probs()
    qy = qn.probs()[list(SWAP)]
    rng = substream(params.seed)
    n = params.rounds
    u_x = rng.random(n)
    u_y = rng.random(n)
    a0 = 1 if u_x[0] < pn.initial_coop else 0
    b0 = 1 if u_y[0] < qn.initial_coop else 0
    states = np.empty(n, dtype=np.int8)
    _kernels.state_sequence(px, qy, a0, b0, u_x, u_y, states)

    sx, sy = game.payoff_vectors()
    pay_x = sx[states]
    pay_y = sy[states]
    mean_x = float(pay_x.mean())
    mean_y = float(pay_y.mean())

    n_batches = min(500, n)
    if n_batches >= 2:
        blen = n // n_batches
        bx = pay_x[:n_batches * blen].reshape(n_batches, blen).mean(axis=1)
        by = pay_y[:n_batches * blen].reshape(n_batches, blen).mean(axis=1)
        stderr = float(max(bx.std(ddof=1), by.std(ddof=1)) / np.sqrt(n_batches))
    else:
        stderr = 0.0
    pair = PayoffPair(mean_x, mean_y, "simulated", stderr=stderr)
    return (pair, states) if params.record_trace else (pair, None)
