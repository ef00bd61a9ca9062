"""Acceptance gate: one test per numbered criterion at its stated tolerance.

Each test records one `ACCEPT <n>: PASS` line; conftest echoes the collected
lines in a summary block after the run (-s streams them live too). Criterion
3 is split:
its phase-cooperation half passes, while its phase-flip half is a strict
expected failure because the measured edge sits at sin^2(gamma) = 2/3 rather
than the claimed 1/3. The chicken-s2-threshold probe carries the measurement;
the implementation stays faithful to the numbers rather than to the claim.
"""

import math
import time

import numpy as np
import pytest

from qgame import engine, equilibrium as eq, oracles, probes
from qgame.games import battle_of_sexes, chicken, n_player_pd, prisoners_dilemma
from qgame.strategies import S1, S2, StrategyPoint, parse_profile, s1k, to_matrix


VERDICTS: list[str] = []


def accept(n, ok: bool, detail: str = "") -> None:
    tail = f" ({detail})" if detail else ""
    line = f"ACCEPT {n}: {'PASS' if ok else 'FAIL'}{tail}"
    VERDICTS.append(line)
    print(line, flush=True)
    assert ok, f"criterion {n} failed{tail}"


def test_criterion_1_dilemma_fold_points():
    start = time.perf_counter()
    game = prisoners_dilemma()
    upper = eq.threshold_bisect(game, parse_profile("cprime-cprime", 2), 0.0, 1.0, S1)
    lower = eq.threshold_bisect(game, parse_profile("dd", 2), 0.0, 0.3, S1)
    elapsed = time.perf_counter() - start
    ok = (abs(upper.sin2gamma_star - 0.400) <= 1e-3
          and abs(lower.sin2gamma_star - 0.200) <= 1e-3
          and elapsed < 60.0)
    accept(1, ok, f"folds {lower.sin2gamma_star:.4f}/{upper.sin2gamma_star:.4f}, {elapsed:.1f}s")


def test_criterion_2_phase_flip_equilibrium_curve():
    start = time.perf_counter()
    game = prisoners_dilemma()
    values = np.linspace(0.0, 1.0, 101)
    rows = eq.sweep(game, "s2", values, ["dprime-dprime"])
    all_ne = all(row.is_ne for row in rows)
    worst = max(abs(p - (1.0 + 2.0 * row.sin2gamma))
                for row in rows for p in row.payoffs)
    elapsed = time.perf_counter() - start
    ok = all_ne and worst <= 1e-6 and elapsed < 60.0
    accept(2, ok, f"101 points, payoff dev {worst:.1e}, {elapsed:.1f}s")


def test_criterion_3_anticoordination_phase_cooperation_half():
    game = chicken()
    res = eq.threshold_bisect(game, parse_profile("cprime-cprime", 2), 0.0, 1.0, S1)
    problems = []
    if abs(res.sin2gamma_star - 1.0 / 3.0) > 1e-3:
        problems.append(f"edge {res.sin2gamma_star:.4f}")
    for s, want in ((0.36, True), (0.30, False)):
        report = eq.verify_ne(game, eq.sin2_to_gamma(s), parse_profile("cprime-cprime", 2), S1)
        if report.is_ne is not want:
            problems.append(f"verdict at {s}")
    for s in (0.1, 0.2, 0.3):
        report = eq.verify_ne(game, eq.sin2_to_gamma(s), parse_profile("d-cprime", 2), S1)
        want = (4.0 - 3.0 * s, 1.0 + 3.0 * s)
        if not report.is_ne:
            problems.append(f"asym not NE at {s}")
        if max(abs(a - b) for a, b in zip(report.payoffs, want)) > 1e-6:
            problems.append(f"asym payoffs at {s}: {report.payoffs}")
    accept("3 (phase-cooperation half)", not problems, "; ".join(problems))


@pytest.mark.xfail(
    strict=True,
    reason="the phase-flip defector pair only becomes an equilibrium at "
    "sin^2(gamma) = 2/3; the claimed 1/3 edge is not reproducible "
    "(chicken-s2-threshold probe reports the measurement)",
)
def test_criterion_3_anticoordination_phase_flip_half():
    game = chicken()
    res = eq.threshold_bisect(game, parse_profile("dprime-dprime", 2), 0.05, 1.0, S2)
    ok = abs(res.sin2gamma_star - 1.0 / 3.0) <= 1e-3
    accept("3 (phase-flip half)", ok, f"measured edge {res.sin2gamma_star:.4f}, claimed 0.3333")


def test_criterion_4_coordination_role_reversal():
    game = battle_of_sexes()
    gamma = math.pi / 2
    problems = []
    tt = eq.verify_ne(game, gamma, parse_profile("t-t", 2), S1)
    oo = eq.verify_ne(game, gamma, parse_profile("o-o", 2), S1)
    if not (tt.is_ne and not oo.is_ne):
        problems.append("s1 verdicts")
    if max(abs(a - b) for a, b in zip(tt.payoffs, (1.0, 2.0))) > 1e-9:
        problems.append(f"s1 payoffs {tt.payoffs}")
    oo2 = eq.verify_ne(game, gamma, parse_profile("o-o", 2), S2)
    tt2 = eq.verify_ne(game, gamma, parse_profile("t-t", 2), S2)
    if not (oo2.is_ne and not tt2.is_ne):
        problems.append("s2 verdicts")
    _, rows, summary, notes = probes.run_check(
        "bos-s2-ne", grid=5, resolution=eq.Resolution(steps_theta=61, steps_phi=31))
    if not notes or summary["max_claim_deviation_at_ne"] <= 0.5:
        problems.append("probe does not surface the payoff-claim gap")
    if any(abs(row["payoff_0"] - 2.0) > 1e-9 for row in rows
           if row["profile"] == "o-o"):
        problems.append("computed ground truth drifted")
    accept(4, not problems, "; ".join(problems))


def test_criterion_5_four_player_regions():
    start = time.perf_counter()
    game = n_player_pd(4)
    problems = []

    rows = eq.npd_ne_map(4, "s1", [0.04, 0.2, 0.4, 0.7])
    want = {
        0.04: {"d^4": True, "c2-d^3": False, "c4^4": False},
        0.2: {"d^4": False, "c2-d^3": True, "c4^4": False},
        0.4: {"d^4": False, "c2-d^3": True, "c4^4": True},
        0.7: {"d^4": False, "c2-d^3": False, "c4^4": True},
    }
    for row in rows:
        verdicts = {e.profile: e.is_ne for e in row.entries}
        for profile, expected in want[round(row.sin2gamma, 2)].items():
            if verdicts[profile] is not expected:
                problems.append(f"{profile} at {row.sin2gamma}")
        asym = next(e for e in row.entries if e.profile == "c2-d^3")
        if not asym.placements_agree or asym.placements != 4:
            problems.append(f"placements at {row.sin2gamma}")

    defect_edge = eq.threshold_bisect(game, parse_profile("d^4", 4), 0.0, 0.2, None)
    coop_edge = eq.threshold_bisect(game, parse_profile("c4^4", 4), 0.1, 0.9, None)
    asym_edge = eq.threshold_bisect(game, parse_profile("c2-d^3", 4), 0.4, 0.7, None)
    if abs(defect_edge.sin2gamma_star - 1.0 / 13.0) > 1e-3:
        problems.append(f"defection fold {defect_edge.sin2gamma_star:.4f}")
    if abs(coop_edge.sin2gamma_star - 4.0 / 13.0) > 1e-3:
        problems.append(f"cooperation fold {coop_edge.sin2gamma_star:.4f}")
    if abs(asym_edge.sin2gamma_star - 0.5) > 1e-3:
        problems.append(f"coexistence edge {asym_edge.sin2gamma_star:.4f}")

    elapsed = time.perf_counter() - start
    if elapsed >= 600.0:
        problems.append(f"too slow: {elapsed:.0f}s")
    accept(5, not problems, "; ".join(problems) or
           f"folds {defect_edge.sin2gamma_star:.4f}/{coop_edge.sin2gamma_star:.4f}, "
           f"edge {asym_edge.sin2gamma_star:.4f}, {elapsed:.0f}s")


def test_criterion_6_coupled_family_surfaces():
    problems = []

    # region scan: engine verdict vs the closed-form curve on a 21 x 21 grid
    _, rows, summary, _ = probes.run_check("gammak", grid=21)
    side = 21
    formula = np.array([r["squared_condition"] for r in rows]).reshape(side, side)
    engine_v = np.array([r["engine_is_ne"] for r in rows]).reshape(side, side)
    for i in range(side):
        for j in range(side):
            if formula[i, j] == engine_v[i, j]:
                continue
            window = formula[max(0, i - 1):i + 2, max(0, j - 1):j + 2]
            if window.all() or not window.any():
                problems.append(f"mismatch off-boundary at cell {(i, j)}")
    if summary["squared_agreement"] <= summary["printed_agreement"]:
        problems.append("squared form does not dominate the printed one")

    # the k >= 1/2 defector point: equilibrium everywhere with a flat payoff law
    game = prisoners_dilemma()
    for k in (0.5, 0.75, 1.0, 1.5, 2.0):
        for s in (0.0, 0.25, 0.5, 0.75, 1.0):
            gamma = eq.sin2_to_gamma(s)
            report = eq.verify_ne(game, gamma, parse_profile("d4k-d4k", 2, k=k), s1k(k))
            want = 3.0 * s + (1.0 - s)
            if not report.is_ne:
                problems.append(f"d4k not NE at k={k}, s={s}")
            if max(abs(p - want) for p in report.payoffs) > 1e-6:
                problems.append(f"d4k payoff at k={k}, s={s}")

    # continuity across the k = 1/2 seam
    for s in (0.0, 0.3, 0.6, 1.0):
        gamma = eq.sin2_to_gamma(s)
        above = eq.profile_payoffs(game, gamma, parse_profile("d4k-d4k", 2, k=0.5 + 1e-7))
        at = eq.profile_payoffs(game, gamma, parse_profile("d2-d2", 2, k=0.5))
        if np.max(np.abs(above - at)) > 1e-6:
            problems.append(f"seam discontinuity at s={s}")
        if abs(at[0] - oracles.s1k_d2_payoff(gamma, 0.5)) > 1e-9:
            problems.append(f"seam value at s={s}")

    accept(6, not problems, "; ".join(problems))


def test_criterion_7_oracle_equivalence():
    _, _, s2_summary, _ = probes.run_check("s2-probs", trials=1000, seed=20260815)
    _, _, bos_summary, _ = probes.run_check("bos-probs", trials=1000, seed=20260815)
    ok = (s2_summary["max_abs_deviation"] < 1e-10
          and s2_summary["max_sum_deviation"] < 1e-10
          and bos_summary["max_abs_deviation"] < 1e-10)
    accept(7, ok, f"devs {s2_summary['max_abs_deviation']:.1e}, "
                  f"{bos_summary['max_abs_deviation']:.1e}")


def test_criterion_8_counter_strategy_property():
    report = eq.counter_strategy_check(prisoners_dilemma(), math.pi / 2,
                                       trials=100, seed=11)
    ok = report.min_payoff >= 5.0 - 1e-3
    accept(8, ok, f"min counter payoff {report.min_payoff:.6f} over 100 trials")


def test_criterion_9_classical_embedding():
    rng = np.random.default_rng(20260815)
    worst = 0.0
    flip = to_matrix(S1, StrategyPoint(theta=math.pi, phi=0.0))
    eye = to_matrix(S1, StrategyPoint(theta=0.0, phi=0.0))
    for gamma in rng.uniform(0.0, math.pi / 2, size=50):
        for n in (2, 3, 4):
            game = n_player_pd(n)
            for outcome in range(2 ** n):
                moves = [flip if (outcome >> (n - 1 - p)) & 1 else eye
                         for p in range(n)]
                payoffs = engine.play(float(gamma), moves, game.table)
                worst = max(worst, float(np.max(np.abs(payoffs - game.table[outcome]))))
    accept(9, worst <= 1e-12, f"max deviation {worst:.1e}")
