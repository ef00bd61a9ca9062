"""Best-response search, equilibrium certification, and threshold location.

Strategy profiles are lists of (family, point) pairs, one per player. The
search is exhaustive on an inclusive coordinate lattice followed by a
coordinate-wise golden-section polish; ties on the lattice go to the lowest
row-major index, so every result is deterministic.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .engine import Entangler, apply_local
from .games import GameSpec, n_player_pd
from .strategies import (
    FULL3,
    S1,
    StrategyFamily,
    StrategyPoint,
    family_from_tag,
    lattice_coords,
    matrix_batch,
    parse_profile,
    point_from_coords,
    to_matrix,
)

Profile = list[tuple[StrategyFamily, StrategyPoint]]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_CHUNK_AMPLITUDES = 1 << 21  # per-batch state budget, ~32 MB of complex128
_POLISH_STARTS = 3  # distinct lattice basins handed to the polisher

DEFAULT_EPSILON = 1e-3
BISECT_TOL = 1e-4


class BracketError(ArithmeticError):
    """Both bracket ends give the same equilibrium verdict; nothing to bisect."""


@dataclass(frozen=True)
class Resolution:
    """Lattice step counts (~1 degree by default) and polish stopping rule."""

    steps_theta: int = 181
    steps_phi: int = 91
    steps_full3: int = 31
    polish_tol: float = 1e-6
    polish_rounds: int = 60

    def steps_for(self, family: StrategyFamily) -> tuple[int, ...]:
        if family.tag == "full3":
            return (self.steps_full3, self.steps_full3, self.steps_full3)
        return (self.steps_theta, self.steps_phi)


DEFAULT_RESOLUTION = Resolution()


def sin2_to_gamma(sin2gamma: float) -> float:
    s = float(sin2gamma)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"sin2gamma must lie in [0, 1], got {s}")
    return math.asin(math.sqrt(s))


def profile_payoffs(game: GameSpec, gamma: float, profile: Profile) -> np.ndarray:
    state = _fixed_state(game, gamma, profile, skip=None)
    probs = state.real**2 + state.imag**2
    return probs @ game.table


def _fixed_state(game: GameSpec, gamma: float, profile: Profile, skip: int | None) -> np.ndarray:
    if len(profile) != game.n_players:
        raise ValueError(
            f"profile has {len(profile)} entries, game has {game.n_players} players"
        )
    j = Entangler(gamma, game.n_players)
    psi = j.initial_state()
    for player, (family, point) in enumerate(profile):
        if player != skip:
            psi = apply_local(psi, to_matrix(family, point), player, game.n_players)
    if skip is None:
        psi = j.apply_adjoint(psi)
    return psi


class _ResponderPayoff:
    """Payoff of one responder against a frozen background; the other moves
    and the entangled start are applied once and reused across candidates."""

    def __init__(self, game: GameSpec, gamma: float, profile: Profile, responder: int):
        psi = _fixed_state(game, gamma, profile, skip=responder)
        self._t = psi.reshape(2**responder, 2, -1)
        self._j = Entangler(gamma, game.n_players)
        self._col = game.table[:, responder].copy()

    def of_matrix(self, mat: np.ndarray) -> float:
        out = np.einsum("ij,ajb->aib", mat, self._t).reshape(-1)
        out = self._j.apply_adjoint(out)
        probs = out.real**2 + out.imag**2
        return float(probs @ self._col)

    def of_coords(self, family: StrategyFamily, coords) -> float:
        return self.of_matrix(matrix_batch(family, np.asarray(coords, dtype=float)))

    def of_matrix_batch(self, mats: np.ndarray) -> np.ndarray:
        dim = self._t.size
        step = max(1, _CHUNK_AMPLITUDES // dim)
        out = np.empty(len(mats))
        for i in range(0, len(mats), step):
            chunk = np.einsum("nij,ajb->naib", mats[i:i + step], self._t)
            chunk = chunk.reshape(chunk.shape[0], -1)
            chunk = self._j.apply_adjoint(chunk)
            probs = chunk.real**2 + chunk.imag**2
            out[i:i + step] = probs @ self._col
        return out


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    a, b = lo, hi
    h = b - a
    if h <= tol:
        mid = 0.5 * (a + b)
        return mid, f(mid)
    c = b - _GOLDEN * h
    d = a + _GOLDEN * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc >= fd:  # plateau ties move left: deterministic
            b, d, fd = d, c, fc
            h = b - a
            c = b - _GOLDEN * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _GOLDEN * h
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _simplex_refine(f, x0, box, spacing, tol: float):
    """Bounded Nelder-Mead pass from an already-polished point. Coordinate
    descent stalls on curved ridges (each axis looks optimal while a joint
    move still gains); the simplex walks them."""
    x0 = np.asarray(x0, dtype=float)
    simplex = [x0]
    for i in range(len(x0)):
        vertex = x0.copy()
        step = spacing[i] if x0[i] + spacing[i] <= box[i][1] else -spacing[i]
        vertex[i] = min(max(vertex[i] + step, box[i][0]), box[i][1])
        simplex.append(vertex)
    result = minimize(
        lambda x: -f(x), x0, method="Nelder-Mead", bounds=box,
        options={"initial_simplex": np.asarray(simplex), "xatol": tol,
                 "fatol": 1e-10, "maxfev": 1500},
    )
    x = np.clip(result.x, [b[0] for b in box], [b[1] for b in box])
    return x, float(f(x))


def _coordinate_polish(f, x0, box, spacing, tol: float, rounds: int):
    x = np.array(x0, dtype=float)
    fx = f(x)
    for _ in range(rounds):
        moved = 0.0
        for i in range(len(x)):
            lo = max(box[i][0], x[i] - spacing[i])
            hi = min(box[i][1], x[i] + spacing[i])
            if hi - lo <= tol:
                continue

            def g(v, i=i):
                y = x.copy()
                y[i] = v
                return f(y)

            xn, fn = _golden_max(g, lo, hi, tol)
            if fn > fx:
                moved = max(moved, abs(xn - x[i]))
                x[i] = xn
                fx = fn
        if moved < tol:
            break
    return x, fx


@dataclass(frozen=True)
class BestResponse:
    player: int
    family: StrategyFamily
    point: StrategyPoint
    payoff: float
    lattice_payoff: float


def best_response(game: GameSpec, gamma: float, profile: Profile, responder: int,
                  space: StrategyFamily | None = None,
                  resolution: Resolution = DEFAULT_RESOLUTION) -> BestResponse:
    """Maximize the responder's payoff over their strategy box, all other
    moves fixed. Exhaustive lattice first (ties to the lowest index), then
    golden-section polish one coordinate at a time within one lattice cell,
    then a bounded simplex refinement from the polished point."""
    family = space if space is not None else profile[responder][0]
    ev = _ResponderPayoff(game, gamma, profile, responder)
    steps = resolution.steps_for(family)
    coords = lattice_coords(family, *steps)
    payoffs = ev.of_matrix_batch(matrix_batch(family, coords))
    box = family.box()
    spacing = [(hi - lo) / (n - 1) for (lo, hi), n in zip(box, steps)]
    objective = lambda c: ev.of_coords(family, c)

    # polish from the few best well-separated lattice points, not just the
    # argmax: phase periodicity duplicates optima, and a duplicate clipped by
    # the box edge can own the top lattice value while its basin peaks lower
    order = np.argsort(-payoffs, kind="stable")
    spacing_arr = np.asarray(spacing)
    starts: list[int] = []
    for idx in order:
        idx = int(idx)
        if any(np.all(np.abs(coords[idx] - coords[j]) <= 1.6 * spacing_arr)
               for j in starts):
            continue
        starts.append(idx)
        if len(starts) == _POLISH_STARTS:
            break

    x, fx = None, -math.inf
    for idx in starts:
        xc, fc = _coordinate_polish(
            objective, coords[idx], box, spacing,
            resolution.polish_tol, resolution.polish_rounds,
        )
        xs, fs = _simplex_refine(objective, xc, box, spacing, resolution.polish_tol)
        if fs > fc:
            xc, fc = xs, fs
        if fc > fx:
            x, fx = xc, fc
    return BestResponse(
        player=responder,
        family=family,
        point=point_from_coords(family, x),
        payoff=float(fx),
        lattice_payoff=float(payoffs[starts[0]]),
    )


@dataclass(frozen=True)
class NashReport:
    game: str
    gamma: float
    sin2gamma: float
    profile_label: str
    payoffs: tuple[float, ...]
    best_responses: tuple[BestResponse, ...]
    gains: tuple[float, ...]
    max_gain: float
    epsilon: float
    is_ne: bool


def _normalize_spaces(profile: Profile, spaces) -> list[StrategyFamily]:
    if spaces is None:
        return [family for family, _ in profile]
    if isinstance(spaces, StrategyFamily):
        return [spaces] * len(profile)
    spaces = list(spaces)
    if len(spaces) != len(profile):
        raise ValueError("need one search space per player")
    return spaces


def verify_ne(game: GameSpec, gamma: float, profile: Profile,
              spaces=None, epsilon: float = DEFAULT_EPSILON,
              resolution: Resolution = DEFAULT_RESOLUTION,
              label: str = "") -> NashReport:
    """Certify an epsilon-equilibrium: no player's best response may beat
    their staying payoff by more than epsilon."""
    staying = profile_payoffs(game, gamma, profile)
    search = _normalize_spaces(profile, spaces)
    responses = tuple(
        best_response(game, gamma, profile, p, search[p], resolution)
        for p in range(game.n_players)
    )
    gains = tuple(r.payoff - staying[r.player] for r in responses)
    max_gain = max(gains)
    return NashReport(
        game=game.name,
        gamma=float(gamma),
        sin2gamma=math.sin(gamma) ** 2,
        profile_label=label,
        payoffs=tuple(float(v) for v in staying),
        best_responses=responses,
        gains=gains,
        max_gain=float(max_gain),
        epsilon=float(epsilon),
        is_ne=bool(max_gain <= epsilon),
    )


@dataclass(frozen=True)
class ThresholdResult:
    game: str
    profile_label: str
    sin2gamma_star: float
    bracket_lo: float
    bracket_hi: float
    tolerance: float
    epsilon: float
    ne_lo: bool
    ne_hi: bool
    iterations: int


def threshold_bisect(game: GameSpec, profile_for, lo: float, hi: float,
                     spaces=None, epsilon: float = DEFAULT_EPSILON,
                     tolerance: float = BISECT_TOL,
                     resolution: Resolution = DEFAULT_RESOLUTION,
                     label: str = "") -> ThresholdResult:
    """Bisect on sin^2(gamma) for the edge of an equilibrium region.

    profile_for maps sin2gamma to a profile (a fixed profile is accepted and
    wrapped). The two bracket ends must give opposite verdicts.
    """
    if not callable(profile_for):
        fixed = profile_for
        profile_for = lambda _s: fixed  # noqa: E731
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"need 0 <= lo < hi <= 1, got [{lo}, {hi}]")

    def holds(s: float) -> bool:
        return verify_ne(game, sin2_to_gamma(s), profile_for(s), spaces,
                         epsilon, resolution).is_ne

    ne_lo = holds(lo)
    ne_hi = holds(hi)
    if ne_lo == ne_hi:
        raise BracketError(
            f"equilibrium verdict is {ne_lo} at both ends of [{lo:g}, {hi:g}]"
        )
    a, b = lo, hi
    iterations = 0
    while b - a > tolerance:
        mid = 0.5 * (a + b)
        if holds(mid) == ne_lo:
            a = mid
        else:
            b = mid
        iterations += 1
    return ThresholdResult(
        game=game.name, profile_label=label,
        sin2gamma_star=0.5 * (a + b), bracket_lo=lo, bracket_hi=hi,
        tolerance=tolerance, epsilon=epsilon,
        ne_lo=ne_lo, ne_hi=ne_hi, iterations=iterations,
    )


@dataclass(frozen=True)
class SweepRow:
    game: str
    space: str
    k: float | None
    gamma: float
    sin2gamma: float
    profile: str
    payoffs: tuple[float, ...]
    is_ne: bool
    max_gain: float


def _worker_count() -> int:
    raw = os.environ.get("QGAME_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def sweep(game: GameSpec, space_tag: str, sin2gamma_values, profile_texts,
          k_values=None, epsilon: float = DEFAULT_EPSILON,
          resolution: Resolution = DEFAULT_RESOLUTION) -> list[SweepRow]:
    """Equilibrium verdicts on the (k, sin2gamma, profile) grid, in that
    row order. QGAME_THREADS>1 evaluates rows in a thread pool; results are
    reassembled in order either way."""
    ks = list(k_values) if k_values is not None else [None]
    if not ks:
        ks = [None]
    tasks = []
    for k in ks:
        family = family_from_tag(space_tag, k)
        for s in sin2gamma_values:
            gamma = sin2_to_gamma(s)
            for text in profile_texts:
                profile = parse_profile(text, game.n_players, k=k)
                tasks.append((k, family, float(s), gamma, text, profile))

    def run(task) -> SweepRow:
        k, family, s, gamma, text, profile = task
        report = verify_ne(game, gamma, profile, family, epsilon, resolution, label=text)
        return SweepRow(
            game=game.name, space=space_tag, k=k, gamma=gamma, sin2gamma=s,
            profile=text, payoffs=report.payoffs, is_ne=report.is_ne,
            max_gain=report.max_gain,
        )

    workers = _worker_count()
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, tasks))
    return [run(task) for task in tasks]


@dataclass(frozen=True)
class NpdMapEntry:
    profile: str
    is_ne: bool
    payoffs: tuple[float, ...]
    max_gain: float
    placements: int
    placements_agree: bool


@dataclass(frozen=True)
class NpdMapRow:
    sin2gamma: float
    entries: tuple[NpdMapEntry, ...]


NPD_MAP_MAX_PLAYERS = 9


def npd_ne_map(n: int, space_tag: str, sin2gamma_values,
               epsilon: float = DEFAULT_EPSILON,
               resolution: Resolution = DEFAULT_RESOLUTION) -> list[NpdMapRow]:
    """Equilibrium verdicts for the named n-player dilemma profiles.

    Under s1: mutual defection, the lone phase-cooperator family (every
    placement checked, one representative reported), the partial-cooperation
    scan m = 2..n-1, and mutual phase-cooperation. Under s2: mutual defection
    and the symmetric phase-defector profile.
    """
    if not 2 <= n <= NPD_MAP_MAX_PLAYERS:
        raise ValueError(f"player count must be in [2, {NPD_MAP_MAX_PLAYERS}], got {n}")
    game = n_player_pd(n)
    family = family_from_tag(space_tag)
    if space_tag == "s1":
        labels = ["d^%d" % n, f"c2-d^{n - 1}"]
        labels += [f"c{m}^{m}-d^{n - m}" for m in range(2, n)]
        labels += [f"c{n}^{n}"]
    elif space_tag == "s2":
        labels = ["d^%d" % n, f"d2n_s2^{n}"]
    else:
        raise ValueError("the equilibrium map is defined for s1 or s2")

    rows = []
    for s in sin2gamma_values:
        gamma = sin2_to_gamma(float(s))
        entries = []
        for text in labels:
            profile = parse_profile(text, n)
            report = verify_ne(game, gamma, profile, family, epsilon, resolution, label=text)
            placements = 1
            agree = True
            if text.startswith("c2-"):
                # every seat of the lone phase-cooperator; game symmetry makes
                # them equivalent, which this checks rather than assumes
                placements = n
                for seat in range(1, n):
                    rotated = profile[-seat:] + profile[:-seat]
                    other = verify_ne(game, gamma, rotated, family, epsilon, resolution)
                    if other.is_ne != report.is_ne:
                        agree = False
            entries.append(NpdMapEntry(
                profile=text, is_ne=report.is_ne, payoffs=report.payoffs,
                max_gain=report.max_gain, placements=placements,
                placements_agree=agree,
            ))
        rows.append(NpdMapRow(sin2gamma=float(s), entries=tuple(entries)))
    return rows


@dataclass(frozen=True)
class CounterTrial:
    victim: StrategyPoint
    payoff: float


@dataclass(frozen=True)
class CounterReport:
    game: str
    gamma: float
    responder_space: str
    trials: tuple[CounterTrial, ...]
    min_payoff: float


def best_counter_payoff(game: GameSpec, gamma: float,
                        victim: tuple[StrategyFamily, StrategyPoint],
                        responder_space: StrategyFamily = FULL3,
                        resolution: Resolution = DEFAULT_RESOLUTION) -> BestResponse:
    """Responder's best-response payoff against a fixed two-player victim."""
    if game.n_players != 2:
        raise ValueError("counter-strategy analysis is for two-player games")
    profile = [victim, (S1, StrategyPoint(theta=0.0, phi=0.0))]
    return best_response(game, gamma, profile, 1, responder_space, resolution)


def counter_strategy_check(game: GameSpec, gamma: float, trials: int, seed: int,
                           victim_family: StrategyFamily = S1,
                           responder_space: StrategyFamily = FULL3,
                           resolution: Resolution = DEFAULT_RESOLUTION) -> CounterReport:
    """Best-response payoffs against seeded random victims; reports the worst
    case over trials."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    box = victim_family.box()
    results = []
    for _ in range(int(trials)):
        coords = [rng.uniform(lo, hi) for lo, hi in box]
        victim = point_from_coords(victim_family, coords)
        br = best_counter_payoff(game, gamma, (victim_family, victim),
                                 responder_space, resolution)
        results.append(CounterTrial(victim=victim, payoff=br.payoff))
    return CounterReport(
        game=game.name, gamma=float(gamma), responder_space=responder_space.label(),
        trials=tuple(results), min_payoff=min(t.payoff for t in results),
    )
