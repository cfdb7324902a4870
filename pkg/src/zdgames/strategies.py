"""Memory-one strategies, the classic roster, and zero-determinant compilation.

A memory-one strategy is four cooperation probabilities conditioned on the
previous joint outcome (own move listed first) plus a first-round cooperation
probability. Zero-determinant (ZD) strategies are memory-one strategies that
pin an exact linear relation between the two players' long-run payoffs, no
matter what the opponent does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .games import figure_pd

STATES = ("CC", "CD", "DC", "DD")


class UnknownStrategy(KeyError):
    """Requested name is not in the strategy catalog."""


class Infeasible(ValueError):
    """No probability-valid memory-one strategy realizes the requested
    ZD specification for this game."""


@dataclass(frozen=True)
class MemoryOneStrategy:
    """Cooperation probabilities (p_cc, p_cd, p_dc, p_dd) and initial move."""

    name: str
    p_cc: float
    p_cd: float
    p_dc: float
    p_dd: float
    initial_coop: float = 1.0

    def __post_init__(self):
        for label, v in zip(("p_cc", "p_cd", "p_dc", "p_dd", "initial_coop"),
                            self.vector5()):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{self.name}: {label}={v} outside [0, 1]")

    def probs(self):
        return np.array([self.p_cc, self.p_cd, self.p_dc, self.p_dd])

    def vector5(self):
        return (self.p_cc, self.p_cd, self.p_dc, self.p_dd, self.initial_coop)

    @property
    def is_deterministic(self):
        return all(v in (0.0, 1.0) for v in self.vector5())

    def with_noise(self, eps):
        """Execution-noise adjustment: each probability p becomes
        (1-eps)*p + eps*(1-p)."""
        if eps == 0.0:
            return self
        if not 0.0 <= eps <= 0.5:
            raise ValueError(f"noise eps={eps} outside [0, 0.5]")
        a, b, c, d, i = ((1 - eps) * v + eps * (1 - v) for v in self.vector5())
        return MemoryOneStrategy(self.name, a, b, c, d, i)


def _gtft_generosity(game):
    # standard generous-TFT forgiveness level for a symmetric PD
    t, r, p, s = game.trps()
    return min(1.0 - (t - r) / (r - s), (r - p) / (t - p))


def classic(name, game=None):
    """Look up a catalog strategy by name.

    GTFT's forgiveness probability depends on the game payoffs; the default
    is the standard Prisoner's Dilemma (T=5, R=3, P=1, S=0).
    """
    if game is None:
        game = figure_pd()
    catalog = {
        "TFT": (1, 0, 1, 0, 1),
        "GTFT": None,  # built below, needs the game
        "WSLS": (1, 0, 0, 1, 1),
        "AllC": (1, 1, 1, 1, 1),
        "AllD": (0, 0, 0, 0, 0),
        "Grim": (1, 0, 0, 0, 1),
        "Random": (0.5, 0.5, 0.5, 0.5, 0.5),
    }
    if name not in catalog:
        raise UnknownStrategy(f"{name!r}; known: {sorted(catalog)}")
    if name == "GTFT":
        g = _gtft_generosity(game)
        return MemoryOneStrategy("GTFT", 1.0, g, 1.0, g, 1.0)
    return MemoryOneStrategy(name, *map(float, catalog[name]))


CLASSIC_NAMES = ("TFT", "GTFT", "WSLS", "AllC", "AllD", "Grim", "Random")

ZD_KINDS = ("extortionate", "generous", "equalizer")


@dataclass(frozen=True)
class ZDSpec:
    """Recipe for a ZD strategy.

    kind "extortionate" enforces s_x - l = chi*(s_y - l) with l at the
    mutual-defection payoff P; "generous" enforces the same relation with l
    at the mutual-cooperation payoff R; "equalizer" pins the opponent's
    payoff to `target` regardless of their play. phi scales the strategy
    within the probability simplex: a positive number, "max", or "max/2"
    (the default, an interior point that keeps all probabilities off the
    0/1 boundary).
    """

    kind: str
    chi: float = 1.0
    phi: object = "max/2"
    baseline_l: float | None = None
    target: float | None = None

    def __post_init__(self):
        kind = str(self.kind).strip().lower()
        if kind not in ZD_KINDS:
            raise ValueError(f"kind must be one of {ZD_KINDS}, got {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind != "equalizer" and self.chi < 1.0:
            raise ValueError(f"chi must be >= 1, got {self.chi}")
        if kind == "equalizer" and self.target is None:
            raise ValueError("equalizer spec needs a target payoff")
        if isinstance(self.phi, str) and self.phi not in ("max", "max/2"):
            raise ValueError(f'phi must be a number, "max" or "max/2", got {self.phi!r}')
        if not isinstance(self.phi, str) and float(self.phi) <= 0:
            raise ValueError(f"phi must be positive, got {self.phi}")


def _require_symmetric_pd(game):
    t, r, p, s = game.trps()
    if not (t > r > p > s):
        raise Infeasible(f"ZD compilation needs T > R > P > S, got "
                         f"T={t}, R={r}, P={p}, S={s}")
    return t, r, p, s


def _zd_deltas(game, kind, chi, l, target):
    """Per-state increments d with (p_cc-1, p_cd-1, p_dc, p_dd) = phi * d."""
    sx, sy = game.payoff_vectors()
    if kind == "equalizer":
        return target - sy
    return (sx - l) - chi * (sy - l)


def _resolve_baseline(game, spec):
    t, r, p, s = _require_symmetric_pd(game)
    if spec.kind == "extortionate":
        l = p
    elif spec.kind == "generous":
        l = r
    else:
        l = None
    if spec.baseline_l is not None and l is not None and spec.baseline_l != l:
        raise Infeasible(f"{spec.kind} ZD requires baseline l={l}, "
                         f"got {spec.baseline_l}")
    if spec.kind == "equalizer" and not p <= spec.target <= r:
        raise Infeasible(f"equalizer target must lie in [P, R] = [{p}, {r}], "
                         f"got {spec.target}")
    return l


def max_phi(game, kind, l=None, chi=1.0, target=None):
    """Supremum of phi keeping all four probabilities in [0, 1]; 0 if the
    specification is infeasible at any scale."""
    kind = str(kind).strip().lower()
    if kind not in ZD_KINDS:
        raise ValueError(f"kind must be one of {ZD_KINDS}")
    d = _zd_deltas(game, kind, chi, l, target)
    # p = base + phi*d with base = (1, 1, 0, 0); need p in [0, 1]
    bound = math.inf
    for base, di in zip((1.0, 1.0, 0.0, 0.0), d):
        if di == 0.0:
            continue
        if base == 1.0:
            if di > 0:
                return 0.0  # p_c* would exceed 1 for every phi > 0
            bound = min(bound, -1.0 / di)
        else:
            if di < 0:
                return 0.0  # p_d* would go negative for every phi > 0
            bound = min(bound, 1.0 / di)
    return 0.0 if bound is math.inf else bound


def _zd_name(spec):
    if spec.kind == "extortionate":
        return f"Extort-{spec.chi:g}"
    if spec.kind == "generous":
        return f"ZDGTFT-{spec.chi:g}"
    return f"Equalizer-{spec.target:g}"


def compile_zd(game, spec, name=None):
    """Compile a ZDSpec into a feasible memory-one strategy.

    The returned strategy cooperates on round one; for ergodic pairings the
    enforced payoff relation is independent of the initial move.
    """
    l = _resolve_baseline(game, spec)
    phi_max = max_phi(game, spec.kind, l, spec.chi, spec.target)
    if phi_max <= 0.0:
        raise Infeasible(f"no phi > 0 realizes {spec} for game {game.name!r}")
    if spec.phi == "max":
        phi = phi_max
    elif spec.phi == "max/2":
        phi = phi_max / 2.0
    else:
        phi = float(spec.phi)
        if phi > phi_max * (1 + 1e-12):
            raise Infeasible(f"phi={phi} exceeds max feasible {phi_max}")
    d = phi * _zd_deltas(game, spec.kind, spec.chi, l, spec.target)
    probs = np.array([1.0, 1.0, 0.0, 0.0]) + d
    probs = np.clip(probs, 0.0, 1.0)  # guard float dust at the boundary
    return MemoryOneStrategy(name or _zd_name(spec), *probs, initial_coop=1.0)


def enforceable_opponent_range(game):
    """Payoff interval [max(S, P), min(R, T)] a ZD player can unilaterally
    pin the opponent's long-run payoff inside, for a symmetric 2x2 game."""
    t, r, p, s = game.trps()
    return max(s, p), min(r, t)
