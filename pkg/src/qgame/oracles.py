"""Closed-form reference values for the simulator and equilibrium engine.

Everything here is hand algebra: outcome probabilities, equilibrium payoffs,
and classical-quantum threshold formulas for the games under study. None of it
calls the state-vector simulator; the test suite holds the two routes to each
other at 1e-10. Where a published closed form is known to disagree with exact
simulation, the function keeps the printed claim and says so in its docstring;
the probe checks report both sides.

Conventions: gamma is the entanglement parameter in radians; functions whose
natural variable is the squared sine take sin2gamma in [0, 1] and say so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .games import n_player_pd


@dataclass(frozen=True)
class HalfAngles:
    """sin/cos of the two players' half-angles; s*s + c*c = 1 per player."""

    s_a: float
    c_a: float
    s_b: float
    c_b: float

    @classmethod
    def of(cls, theta_a: float, theta_b: float) -> "HalfAngles":
        return cls(
            s_a=math.sin(theta_a / 2), c_a=math.cos(theta_a / 2),
            s_b=math.sin(theta_b / 2), c_b=math.cos(theta_b / 2),
        )


def _sin2(gamma: float) -> float:
    return math.sin(gamma) ** 2


def bos_probs_s1(gamma: float, theta_a: float, phi_a: float,
                 theta_b: float, phi_b: float) -> tuple[float, float]:
    """(p_OO, p_TT) for two s1 strategies in a coordination game.

    p_OO = [cos^2(gamma) sin^2(phiA+phiB) + cos^2(phiA+phiB)] cA^2 cB^2
    p_TT = sin^2(gamma) sin^2(phiA+phiB) cA^2 cB^2 + sA^2 sB^2
           - (1/2) sin(gamma) sin(thetaA) sin(thetaB) sin(phiA+phiB)
    """
    h = HalfAngles.of(theta_a, theta_b)
    phi = phi_a + phi_b
    s2g = _sin2(gamma)
    p_oo = ((1 - s2g) * math.sin(phi) ** 2 + math.cos(phi) ** 2) * h.c_a**2 * h.c_b**2
    p_tt = (s2g * math.sin(phi) ** 2 * h.c_a**2 * h.c_b**2
            + h.s_a**2 * h.s_b**2
            - 0.5 * math.sin(gamma) * math.sin(theta_a) * math.sin(theta_b) * math.sin(phi))
    return p_oo, p_tt


def s2_outcome_probs(gamma: float, theta_a: float, phi_a: float,
                     theta_b: float, phi_b: float) -> tuple[float, float, float, float]:
    """All four outcome probabilities (p_CC, p_CD, p_DC, p_DD) for two s2
    strategies. The four terms sum to 1 exactly."""
    h = HalfAngles.of(theta_a, theta_b)
    s2g = _sin2(gamma)
    c2g = 1 - s2g
    sg = math.sin(gamma)
    phi = phi_a + phi_b
    cross = 0.5 * sg * math.sin(theta_a) * math.sin(theta_b)
    p_cc = (s2g * math.sin(phi) ** 2 * h.s_a**2 * h.s_b**2
            + h.c_a**2 * h.c_b**2
            + cross * math.sin(phi))
    p_cd = ((c2g * math.sin(phi_b) ** 2 + math.cos(phi_b) ** 2) * h.c_a**2 * h.s_b**2
            + s2g * math.sin(phi_a) ** 2 * h.s_a**2 * h.c_b**2
            - cross * math.sin(phi_a) * math.cos(phi_b))
    p_dc = ((c2g * math.sin(phi_a) ** 2 + math.cos(phi_a) ** 2) * h.s_a**2 * h.c_b**2
            + s2g * math.sin(phi_b) ** 2 * h.c_a**2 * h.s_b**2
            - cross * math.cos(phi_a) * math.sin(phi_b))
    p_dd = (c2g * math.sin(phi) ** 2 + math.cos(phi) ** 2) * h.s_a**2 * h.s_b**2
    return p_cc, p_cd, p_dc, p_dd


def pd_s1_region_payoffs(sin2gamma: float) -> tuple[float, float]:
    """Equilibrium payoff pair for the dilemma under s1 at a given sin^2(gamma).

    Three regions: mutual phase-cooperation (3,3) for sin2gamma >= 2/5; the
    asymmetric pair (5 sin2gamma to the phase-cooperator, 5 cos2gamma to the
    defector) for 1/5 <= sin2gamma < 2/5; classical mutual defection (1,1)
    below 1/5.
    """
    s = float(sin2gamma)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"sin2gamma must lie in [0, 1], got {s}")
    if s >= 0.4:
        return 3.0, 3.0
    if s >= 0.2:
        return 5.0 * s, 5.0 * (1.0 - s)
    return 1.0, 1.0


PD_S1_FOLDS = (0.2, 0.4)  # sin^2(gamma) edges of the three regions above


def pd_s2_ne_payoff(gamma: float) -> float:
    """Symmetric equilibrium payoff 1 + 2 sin^2(gamma) of the s2 dilemma."""
    return 1.0 + 2.0 * _sin2(gamma)


def pd_s2_phi_interval(gamma: float) -> tuple[float, float]:
    """Open interval of sin^2(phi_a) values sustaining the anti-correlated s2
    dilemma equilibria, the family of theta = pi pairs with
    phi_a + phi_b = pi/2 (the symmetric focal point sits at phi = pi/4):

        (3 sin2g - 1)/(5 sin2g) < sin^2(phi_a) < (2 sin2g + 1)/(5 sin2g)

    clamped to [0, 1]. Undefined at gamma = 0.
    """
    s2g = _sin2(gamma)
    if s2g <= 0.0:
        raise ValueError("phi interval is undefined without entanglement")
    lo = (3.0 * s2g - 1.0) / (5.0 * s2g)
    hi = (2.0 * s2g + 1.0) / (5.0 * s2g)
    return max(lo, 0.0), min(hi, 1.0)


@dataclass(frozen=True)
class ChickenFormulas:
    """Published anti-coordination-game equilibrium formulas.

    threshold is the claimed classical-quantum edge in sin^2(gamma) for both
    families. For s1 it is exact. For s2 it disagrees with exact simulation:
    unilateral deviation from the symmetric profile to the identity earns
    1 + (3/2) sin^2(gamma) against 3 sin^2(gamma) for staying, so the true s2
    edge is 2/3. The equilibrium engine reports the computed truth; the
    chicken-s2-threshold probe prints both.
    """

    threshold: float = 1.0 / 3.0

    @staticmethod
    def asym_payoffs(gamma: float) -> tuple[float, float]:
        """(defector, phase-cooperator) payoffs on the asymmetric s1 branch:
        (4 - 3 sin2g, 1 + 3 sin2g)."""
        s2g = _sin2(gamma)
        return 4.0 - 3.0 * s2g, 1.0 + 3.0 * s2g

    @staticmethod
    def s2_mutual_payoff(gamma: float) -> float:
        """3 sin^2(gamma), both players, on the symmetric s2 branch."""
        return 3.0 * _sin2(gamma)

    @staticmethod
    def s2_phi_interval(gamma: float) -> tuple[float, float]:
        """Claimed open interval of sin^2(phi) around the symmetric s2 profile:
        1/(3 sin2g + 1) < sin^2(phi) < 3 sin2g/(3 sin2g + 1). Nonempty for all
        gamma > 0, which overstates the equilibrium region (see class note)."""
        s2g = _sin2(gamma)
        if s2g <= 0.0:
            raise ValueError("phi interval is undefined without entanglement")
        return 1.0 / (3.0 * s2g + 1.0), 3.0 * s2g / (3.0 * s2g + 1.0)


def chicken_thresholds() -> ChickenFormulas:
    return ChickenFormulas()


def bos_counter_payoffs(gamma: float, space: str = "s1") -> tuple[float, float]:
    """Published (player0, player1) payoffs after optimal phase-countering in
    the coordination game: (2 - sin2g, 1 + sin2g) under s1, the reverse under
    s2. The s2 pair disagrees with exact simulation, which pins the s2
    equilibrium at the classical (2, 1); the bos-s2-ne probe reports both.
    """
    s2g = _sin2(gamma)
    if space == "s1":
        return 2.0 - s2g, 1.0 + s2g
    if space == "s2":
        return 1.0 + s2g, 2.0 - s2g
    raise ValueError(f"space must be s1 or s2, got {space!r}")


def bos_s1_guaranteed_bounds(gamma: float) -> tuple[float, float]:
    """Phase-box-limited counter bounds: player0 can force at least
    2 - sin2g/2 while holding player1 to at most 1 + sin2g/2."""
    s2g = _sin2(gamma)
    return 2.0 - 0.5 * s2g, 1.0 + 0.5 * s2g


@dataclass(frozen=True)
class NpdThresholds:
    """sin^2(gamma) edges of the n-player dilemma equilibrium regions (s1)."""

    defect_upper: float      # mutual defection holds below this
    asym_lower: float        # lone phase-cooperator + defectors holds above this
    asym_upper: float        # ... and below this (derivation needs n >= 3)
    coop_lower: float        # mutual phase-cooperation holds above this


def npd_thresholds(n: int) -> NpdThresholds:
    """Region edges 1/(4n-3) and 4/((4n-3)(1-cos 2pi/n)) plus the asymmetric
    ceiling 1/2. The ceiling derivation assumes a third player exists; at n=2
    the true asymmetric region ends at 2/5 (= coop_lower), which tests note.
    """
    n = int(n)
    if n < 2:
        raise ValueError("need at least two players")
    edge = 1.0 / (4.0 * n - 3.0)
    coop = 4.0 / ((4.0 * n - 3.0) * (1.0 - math.cos(2.0 * math.pi / n)))
    return NpdThresholds(defect_upper=edge, asym_lower=edge, asym_upper=0.5,
                         coop_lower=coop)


def _npd_rewards(n: int):
    game = n_player_pd(n)
    return game


def npd_coop_deviation_payoff(n: int, gamma: float, theta: float, phi: float) -> float:
    """Payoff to the one player moving to M1(theta, phi) while the other n-1
    players hold the symmetric phase-cooperation point M1(0, pi/n).

    Four outcome classes arise (others' bits stay aligned): all-cooperate,
    deviator lone defector, deviator lone cooperator, all-defect.
    """
    game = _npd_rewards(n)
    last = n - 1
    p_all_c = game.payoff("C" * n, last)
    p_lone_d = game.payoff("C" * (n - 1) + "D", last)
    p_lone_c = game.payoff("D" * (n - 1) + "C", last)
    p_all_d = game.payoff("D" * n, last)
    s2g = _sin2(gamma)
    c2 = math.cos(theta / 2) ** 2
    s2 = math.sin(theta / 2) ** 2
    w = 0.5 * s2g * (1.0 - math.cos(2.0 * phi - 2.0 * math.pi / n))
    v = 0.5 * s2g * (1.0 - math.cos(2.0 * math.pi / n))
    return (p_all_c * c2 * (1.0 - w)
            + p_lone_d * s2 * (1.0 - v)
            + p_lone_c * s2 * v
            + p_all_d * c2 * w)


def npd_asym_defector_deviation_payoff(n: int, gamma: float, theta: float, phi: float) -> float:
    """Payoff to one of the defectors moving to M1(theta, phi) in the
    asymmetric profile (player0 at the two-player phase-cooperation point,
    everyone else defecting). Needs n >= 3 so that fixed defectors remain."""
    if n < 3:
        raise ValueError("the asymmetric deviation formula needs n >= 3")
    game = _npd_rewards(n)
    last = n - 1
    mid_d = "D" * (n - 2)
    p_csdc = game.payoff("C" + mid_d + "C", last)   # deviator cooperates with the phase player
    p_csd = game.payoff("C" + mid_d + "D", last)    # profile outcome class
    p_dcc = game.payoff("D" + "C" * (n - 2) + "C", last)
    p_dccd = game.payoff("D" + "C" * (n - 2) + "D", last)
    s2g = _sin2(gamma)
    c2 = math.cos(theta / 2) ** 2
    s2 = math.sin(theta / 2) ** 2
    z = 0.5 * s2g * (1.0 + math.cos(2.0 * phi))
    return (p_csdc * c2 * (1.0 - z)
            + p_csd * s2 * (1.0 - s2g)
            + p_dcc * s2 * s2g
            + p_dccd * c2 * z)


def npd_lone_deviation_payoff(n: int, gamma: float, theta: float, phi: float) -> float:
    """Payoff to the would-be lone phase-cooperator (player0) moving to
    M1(theta, phi) while the other n-1 players defect."""
    game = _npd_rewards(n)
    p_cd = game.payoff("C" + "D" * (n - 1), 0)
    p_dc = game.payoff("D" + "C" * (n - 1), 0)
    p_dd = game.payoff("D" * n, 0)
    s2g = _sin2(gamma)
    c2 = math.cos(theta / 2) ** 2
    s2 = math.sin(theta / 2) ** 2
    w = 0.5 * s2g * (1.0 - math.cos(2.0 * phi))
    return p_cd * c2 * (1.0 - w) + p_dc * c2 * w + p_dd * s2


def npd_s2_deviation_payoff(n: int, gamma: float, theta: float, phi: float) -> float:
    """Payoff to the last player moving to M2(theta, phi) while the other n-1
    players hold the symmetric s2 point M2(pi, pi/(2n))."""
    game = _npd_rewards(n)
    last = n - 1
    p_all_c = game.payoff("C" * n, last)
    p_lone_d = game.payoff("C" * (n - 1) + "D", last)
    p_lone_c = game.payoff("D" * (n - 1) + "C", last)
    p_all_d = game.payoff("D" * n, last)
    s2g = _sin2(gamma)
    c2 = math.cos(theta / 2) ** 2
    s2 = math.sin(theta / 2) ** 2
    w = 0.5 * (1.0 + math.cos(2.0 * phi - math.pi / n))
    v = 0.5 * (1.0 + math.cos(math.pi / n))
    return (p_all_c * s2 * s2g * w
            + p_lone_d * c2 * s2g * v
            + p_lone_c * c2 * (1.0 - s2g * v)
            + p_all_d * s2 * (1.0 - s2g * w))


def npd_s2_ne_margin(n: int, sin2gamma: float) -> float:
    """Stay-vs-deviate margin for the symmetric s2 n-player profile: positive
    means equilibrium. Staying earns 1 + (4n-6) sin2gamma; the best unilateral
    deviation (theta=0 branch) earns (4n-3) sin2gamma (1 + cos pi/n)/2."""
    stay = 1.0 + (4.0 * n - 6.0) * sin2gamma
    dev = (4.0 * n - 3.0) * sin2gamma * 0.5 * (1.0 + math.cos(math.pi / n))
    return stay - dev


def s1k_counter_payoff(gamma: float, k: float, phi: float,
                       cd: float = 5.0, dc: float = 0.0) -> float:
    """Defector's payoff countering the phase-cooperation point with
    M1k(pi, phi): cd (1 - sin2g cos^2(k phi)) + dc sin2g cos^2(k phi)."""
    s2g = _sin2(gamma)
    c2 = math.cos(k * phi) ** 2
    return cd * (1.0 - s2g * c2) + dc * s2g * c2


def s1k_cc_ne_condition(sin2gamma: float, k: float, variant: str = "squared") -> bool:
    """Whether mutual phase-cooperation survives in the k-coupled s1 family.

    The squared form sin2gamma * cos^2(k pi/2) >= 2/5 is the one consistent
    with the best-counter payoff (s1k_counter_payoff at phi=pi/2) and with
    exact simulation. variant="printed" keeps the unsquared cosine that also
    circulates; the gammak probe compares the two against the engine.
    """
    s = float(sin2gamma)
    if variant == "squared":
        return s * math.cos(k * math.pi / 2.0) ** 2 >= 0.4
    if variant == "printed":
        return s * math.cos(k * math.pi / 2.0) >= 0.4
    raise ValueError(f"variant must be 'squared' or 'printed', got {variant!r}")


def s1k_d4k_payoff(gamma: float, cc: float = 3.0, dd: float = 1.0) -> float:
    """Symmetric payoff cc sin2g + dd cos2g at the k >= 1/2 defector point
    M1k(pi, pi/(4k)); independent of k."""
    s2g = _sin2(gamma)
    return cc * s2g + dd * (1.0 - s2g)


def s1k_d2_payoff(gamma: float, k: float, cc: float = 3.0, dd: float = 1.0) -> float:
    """Symmetric payoff at the phi=pi/2 defector point M1k(pi, pi/2):
    cc sin2g sin^2(k pi) + dd (1 - sin2g sin^2(k pi)). Agrees with
    s1k_d4k_payoff at k = 1/2."""
    s2g = _sin2(gamma)
    w = s2g * math.sin(k * math.pi) ** 2
    return cc * w + dd * (1.0 - w)
