"""One-shot game structures and equilibrium/dominance analysis.

Covers 2x2 bimatrix games (symmetric social dilemmas and asymmetric games
like the pedestrian/motorist due-care game), N-player threshold snowdrift
games, and the Traveler's Dilemma.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GAME_CLASSES = ("prisoners_dilemma", "chicken", "snowdrift", "due_care", "custom")

ROW = "row"
COL = "col"


class OrderingViolation(ValueError):
    """A declared game class requires a payoff ordering that does not hold."""


class NoUniqueEquilibrium(RuntimeError):
    """Pure-Nash enumeration found zero or several profiles where exactly one
    was expected; signals a payoff-rule bug."""


def _normalize_class(tag):
    t = str(tag).strip().lower().replace("-", "_").replace(" ", "_")
    aliases = {
        "pd": "prisoners_dilemma",
        "prisonersdilemma": "prisoners_dilemma",
        "duecare": "due_care",
    }
    t = aliases.get(t, t)
    if t not in GAME_CLASSES:
        raise ValueError(f"unknown game class {tag!r}; expected one of {GAME_CLASSES}")
    return t


@dataclass(frozen=True)
class Game2x2:
    """A two-player 2x2 bimatrix game.

    payoff_row[i][j] is the row player's payoff when row plays action i and
    column plays action j; payoff_col[i][j] is the column player's payoff at
    the same profile. For symmetric games payoff_col[i][j] == payoff_row[j][i].
    """

    name: str
    payoff_row: tuple
    payoff_col: tuple
    actions: tuple = (("C", "D"), ("C", "D"))
    class_tag: str = "custom"

    def __post_init__(self):
        pr = tuple(tuple(float(x) for x in row) for row in self.payoff_row)
        pc = tuple(tuple(float(x) for x in row) for row in self.payoff_col)
        if len(pr) != 2 or any(len(r) != 2 for r in pr):
            raise ValueError("payoff_row must be 2x2")
        if len(pc) != 2 or any(len(r) != 2 for r in pc):
            raise ValueError("payoff_col must be 2x2")
        object.__setattr__(self, "payoff_row", pr)
        object.__setattr__(self, "payoff_col", pc)
        object.__setattr__(self, "class_tag", _normalize_class(self.class_tag))
        acts = tuple(tuple(str(a) for a in side) for side in self.actions)
        object.__setattr__(self, "actions", acts)
        self._check_class_ordering()

    # -- symmetric-game accessors -------------------------------------------

    @property
    def is_symmetric(self):
        pr, pc = self.payoff_row, self.payoff_col
        return all(pc[i][j] == pr[j][i] for i in range(2) for j in range(2))

    def trps(self):
        """Return (T, R, P, S) for a symmetric game with actions (C, D)."""
        if not self.is_symmetric:
            raise ValueError(f"game {self.name!r} is not symmetric")
        pr = self.payoff_row
        return pr[1][0], pr[0][0], pr[1][1], pr[0][1]

    def payoff_vectors(self):
        """Per-round payoffs of (row, col) over joint states (CC, CD, DC, DD).

        State labels are from the row player's perspective: CD means row
        cooperated while column defected.
        """
        pr, pc = self.payoff_row, self.payoff_col
        sx = np.array([pr[0][0], pr[0][1], pr[1][0], pr[1][1]])
        sy = np.array([pc[0][0], pc[0][1], pc[1][0], pc[1][1]])
        return sx, sy

    def _check_class_ordering(self):
        if self.class_tag == "prisoners_dilemma":
            t, r, p, s = self.trps()
            for cond, desc in [
                (t > r, f"T > R fails ({t} <= {r})"),
                (r > p, f"R > P fails ({r} <= {p})"),
                (p > s, f"P > S fails ({p} <= {s})"),
                (2 * r > t + s, f"2R > T + S fails (2*{r} <= {t} + {s})"),
            ]:
                if not cond:
                    raise OrderingViolation(f"{self.name}: {desc}")
        elif self.class_tag in ("chicken", "snowdrift"):
            t, r, p, s = self.trps()
            for cond, desc in [
                (t > r, f"T > R fails ({t} <= {r})"),
                (r > s, f"R > S fails ({r} <= {s})"),
                (s > p, f"S > P fails ({s} <= {p})"),
            ]:
                if not cond:
                    raise OrderingViolation(f"{self.name}: {desc}")


def make_game(name, payoffs, class_tag="custom"):
    """Build a validated Game2x2.

    `payoffs` is either a mapping with keys T, R, P, S (symmetric game) or a
    pair (payoff_row, payoff_col) of 2x2 grids.
    """
    if isinstance(payoffs, dict):
        missing = {"T", "R", "P", "S"} - set(payoffs)
        if missing:
            raise ValueError(f"symmetric payoffs need T,R,P,S; missing {sorted(missing)}")
        t, r, p, s = (float(payoffs[k]) for k in "TRPS")
        payoff_row = ((r, s), (t, p))
        payoff_col = ((r, t), (s, p))
    else:
        payoff_row, payoff_col = payoffs
    return Game2x2(name=name, payoff_row=payoff_row, payoff_col=payoff_col,
                   class_tag=class_tag)


def figure_pd():
    """The standard Prisoner's Dilemma with T=5, R=3, P=1, S=0."""
    return make_game("pd", {"T": 5, "R": 3, "P": 1, "S": 0}, "prisoners_dilemma")


def figure_chicken():
    """The Chicken game with T=4, R=3, S=2, P=1."""
    return make_game("chicken", {"T": 4, "R": 3, "P": 1, "S": 2}, "chicken")


def due_care_game():
    """Pedestrian (row) vs. motorist (column) under a no-liability regime.

    The motorist never benefits from taking care; the pedestrian's best
    action depends on the motorist's.
    """
    return Game2x2(
        name="due_care",
        payoff_row=((-100, -100), (-110, -20)),
        payoff_col=((0, -10), (0, -10)),
        actions=(("NoCare", "DueCare"), ("NoCare", "DueCare")),
        class_tag="due_care",
    )


def strict_dominant_strategy(game, player):
    """Action strictly better against both opponent actions, or None.

    `player` is "row" or "col".
    """
    if player == ROW:
        pay = game.payoff_row
        better = [all(pay[i][j] > pay[1 - i][j] for j in range(2)) for i in range(2)]
        acts = game.actions[0]
    elif player == COL:
        pay = game.payoff_col
        better = [all(pay[i][j] > pay[i][1 - j] for i in range(2)) for j in range(2)]
        acts = game.actions[1]
    else:
        raise ValueError(f"player must be {ROW!r} or {COL!r}, got {player!r}")
    for k in range(2):
        if better[k]:
            return acts[k]
    return None


def pure_nash_equilibria(game):
    """All pure-strategy Nash profiles, in row-major enumeration order."""
    pr, pc = game.payoff_row, game.payoff_col
    out = []
    for i in range(2):
        for j in range(2):
            row_best = pr[i][j] >= pr[1 - i][j]
            col_best = pc[i][j] >= pc[i][1 - j]
            if row_best and col_best:
                out.append((game.actions[0][i], game.actions[1][j]))
    return out


@dataclass(frozen=True)
class ThresholdGame:
    """N-player snowdrift with a cooperator threshold.

    The group benefit b is produced only if at least `threshold_m` of the
    `n_players` cooperate. Above threshold the k cooperators split the cost
    c evenly (c/k each); below threshold cooperators sink c/m each and no
    benefit is produced.
    """

    n_players: int
    threshold_m: int
    benefit_b: float
    cost_c: float

    def __post_init__(self):
        if self.n_players < 2:
            raise ValueError("n_players must be >= 2")
        if not 1 <= self.threshold_m <= self.n_players:
            raise ValueError("threshold_m must lie in [1, n_players]")
        if self.benefit_b <= 0 or self.cost_c <= 0:
            raise ValueError("benefit_b and cost_c must be positive")
        if self.benefit_b <= self.cost_c / self.threshold_m:
            raise ValueError("need benefit_b > cost_c / threshold_m")


def threshold_payoffs(tg, k_cooperators):
    """Per-player payoffs (cooperator, defector) with k cooperators total."""
    k = int(k_cooperators)
    if not 0 <= k <= tg.n_players:
        raise ValueError(f"k_cooperators must lie in [0, {tg.n_players}]")
    if k == 0:
        return 0.0, 0.0
    if k >= tg.threshold_m:
        return tg.benefit_b - tg.cost_c / k, tg.benefit_b
    return -tg.cost_c / tg.threshold_m, 0.0


@dataclass(frozen=True)
class TravelersDilemma:
    low: int = 2
    high: int = 100
    bonus: float = 2.0

    def __post_init__(self):
        if self.low >= self.high:
            raise ValueError("low must be < high")
        if self.bonus <= 0:
            raise ValueError("bonus must be positive")


def travelers_payoffs(td, claim_a, claim_b):
    """Payoffs for a single claim profile (claim_a, claim_b)."""
    if claim_a == claim_b:
        return float(claim_a), float(claim_b)
    lo = min(claim_a, claim_b)
    pay_low, pay_high = lo + td.bonus, lo - td.bonus
    if claim_a < claim_b:
        return pay_low, pay_high
    return pay_high, pay_low


def travelers_nash(td):
    """Unique pure Nash claim profile, found by full enumeration.

    Builds the (high-low+1)^2 bimatrix and checks mutual best responses.
    Raises NoUniqueEquilibrium if the count differs from one.
    """
    claims = np.arange(td.low, td.high + 1)
    a = claims[:, None].astype(float)
    b = claims[None, :].astype(float)
    lo = np.minimum(a, b)
    pay_a = np.where(a == b, a, np.where(a < b, lo + td.bonus, lo - td.bonus))
    pay_b = np.where(a == b, b, np.where(b < a, lo + td.bonus, lo - td.bonus))
    best_a = pay_a >= pay_a.max(axis=0, keepdims=True)
    best_b = pay_b >= pay_b.max(axis=1, keepdims=True)
    ii, jj = np.nonzero(best_a & best_b)
    if len(ii) != 1:
        raise NoUniqueEquilibrium(
            f"expected exactly one pure Nash profile, found {len(ii)}")
    return int(claims[ii[0]]), int(claims[jj[0]])
