"""Classical payoff tables for the games under study.

Outcomes are computational-basis indices; player p's move is bit (n-1-p) of
the index (player 0 most significant), with bit 0 = first move label
(cooperate/opera) and bit 1 = second (defect/tv).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .engine import MAX_PLAYERS


@dataclass(frozen=True)
class GameSpec:
    """A classical n-player binary-move game."""

    name: str
    n_players: int
    move_labels: tuple[str, str]
    table: np.ndarray = field(repr=False)  # (2^n, n) float payoffs

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.shape != (2**self.n_players, self.n_players):
            raise ValueError(f"payoff table shape {t.shape} does not match {self.n_players} players")
        object.__setattr__(self, "table", t)

    @property
    def n_outcomes(self) -> int:
        return 2**self.n_players

    def move_of(self, outcome: int, player: int) -> int:
        return (outcome >> (self.n_players - 1 - player)) & 1

    def outcome_index(self, label: str) -> int:
        """'CD' -> 1 for two players: one character per player, MSB first."""
        if len(label) != self.n_players:
            raise ValueError(f"outcome label {label!r} needs {self.n_players} characters")
        idx = 0
        for ch in label.upper():
            try:
                bit = self.move_labels.index(ch)
            except ValueError:
                raise ValueError(f"move {ch!r} not in {self.move_labels}") from None
            idx = (idx << 1) | bit
        return idx

    def outcome_label(self, outcome: int) -> str:
        return "".join(self.move_labels[self.move_of(outcome, p)] for p in range(self.n_players))

    def payoff(self, outcome: int | str, player: int) -> float:
        if isinstance(outcome, str):
            outcome = self.outcome_index(outcome)
        return float(self.table[outcome, player])

    def payoff_row(self, outcome: int | str) -> np.ndarray:
        if isinstance(outcome, str):
            outcome = self.outcome_index(outcome)
        return self.table[outcome].copy()


def _two_player(name: str, labels: tuple[str, str], rows: dict[str, tuple[float, float]]) -> GameSpec:
    table = np.zeros((4, 2))
    game = GameSpec(name=name, n_players=2, move_labels=labels, table=table)
    for label, pair in rows.items():
        table[game.outcome_index(label)] = pair
    return GameSpec(name=name, n_players=2, move_labels=labels, table=table)


def prisoners_dilemma() -> GameSpec:
    """Standard dilemma numbers: temptation 5, reward 3, punishment 1, sucker 0."""
    return _two_player("pd", ("C", "D"), {
        "CC": (3, 3), "CD": (0, 5), "DC": (5, 0), "DD": (1, 1),
    })


def chicken() -> GameSpec:
    """Anti-coordination: mutual defection is the crash (0,0), lone swerver gets 1."""
    return _two_player("chicken", ("C", "D"), {
        "CC": (3, 3), "CD": (1, 4), "DC": (4, 1), "DD": (0, 0),
    })


def battle_of_sexes() -> GameSpec:
    """Coordination with conflicting favorites: player 0 prefers O, player 1 prefers T."""
    return _two_player("bos", ("O", "T"), {
        "OO": (2, 1), "OT": (0, 0), "TO": (0, 0), "TT": (1, 2),
    })


def n_player_pd(n: int) -> GameSpec:
    """n-player dilemma: a cooperator among c total cooperators earns 0 if alone
    else 4c-5; a defector facing c cooperators earns 1+4c. Reduces to the
    two-player numbers at n=2."""
    n = int(n)
    if n < 2 or n > MAX_PLAYERS:
        raise ValueError(f"player count must be in [2, {MAX_PLAYERS}], got {n}")
    table = np.zeros((2**n, n))
    for outcome in range(2**n):
        bits = [(outcome >> (n - 1 - p)) & 1 for p in range(n)]
        c = bits.count(0)
        for p in range(n):
            if bits[p] == 0:
                table[outcome, p] = 0.0 if c == 1 else 4.0 * c - 5.0
            else:
                table[outcome, p] = 1.0 + 4.0 * c
    name = "pd" if n == 2 else f"npd:{n}"
    return GameSpec(name=name, n_players=n, move_labels=("C", "D"), table=table)


@dataclass
class ValidationReport:
    """Outcome of the dilemma-structure audit; violations carry witnesses."""

    ok: bool
    violations: list[str]


def validate_npd(game: GameSpec) -> ValidationReport:
    """Audit the three dilemma axioms on an n-player binary game.

    (a) defection strictly dominates for every player in every context;
    (b) each player's payoff strictly increases with the number of other
        cooperators, their own move held fixed;
    (c) every pair of players, all other moves fixed, sees the 2x2 ordering
        temptation > reward > punishment > sucker.
    """
    n = game.n_players
    violations: list[str] = []

    for outcome in range(game.n_outcomes):
        for p in range(n):
            if game.move_of(outcome, p) == 0:
                flipped = outcome | (1 << (n - 1 - p))
                if not game.table[flipped, p] > game.table[outcome, p]:
                    violations.append(
                        f"(a) player {p}: defecting from {game.outcome_label(outcome)} "
                        f"pays {game.table[flipped, p]:g} <= {game.table[outcome, p]:g}"
                    )

    for outcome in range(game.n_outcomes):
        for q in range(n):
            if game.move_of(outcome, q) != 0:
                continue
            defected = outcome | (1 << (n - 1 - q))
            for p in range(n):
                if p == q:
                    continue
                if not game.table[outcome, p] > game.table[defected, p]:
                    violations.append(
                        f"(b) player {p}: gains nothing when player {q} cooperates "
                        f"in {game.outcome_label(defected)} -> {game.outcome_label(outcome)}"
                    )

    for p in range(n):
        for q in range(p + 1, n):
            bp, bq = 1 << (n - 1 - p), 1 << (n - 1 - q)
            for rest in range(game.n_outcomes):
                if rest & (bp | bq):
                    continue
                r = game.table[rest, p]                # both cooperate
                s = game.table[rest | bq, p]           # p cooperates, q defects
                t = game.table[rest | bp, p]           # p defects, q cooperates
                pun = game.table[rest | bp | bq, p]    # both defect
                if not (t > r > pun > s):
                    violations.append(
                        f"(c) players ({p},{q}) at {game.outcome_label(rest)}: "
                        f"ordering T={t:g} R={r:g} P={pun:g} S={s:g} broken"
                    )

    return ValidationReport(ok=not violations, violations=violations)


def parse_game(name: str) -> GameSpec:
    """Game by CLI name: pd, chicken, bos, or npd:<n>."""
    key = name.strip().lower()
    if key == "pd":
        return prisoners_dilemma()
    if key == "chicken":
        return chicken()
    if key == "bos":
        return battle_of_sexes()
    m = re.fullmatch(r"npd:(\d+)", key)
    if m:
        return n_player_pd(int(m.group(1)))
    raise ValueError(f"unknown game {name!r} (expected pd, chicken, bos, or npd:<n>)")
