"""Parameterized SU(2) strategy families and named strategy points.

Every family is a slice of the three-parameter set

    M(theta, alpha, beta) = [[ e^{i alpha} cos(theta/2),  i e^{i beta} sin(theta/2)],
                             [ i e^{-i beta} sin(theta/2), e^{-i alpha} cos(theta/2)]]

with theta in [0, pi]. The two-parameter families pin or couple the phases:

    s1   : alpha = phi, beta = 0          phi in [0, pi/2]
    s2   : alpha = 0,   beta = phi        phi in [0, pi/2]
    s1k  : alpha = phi, beta = k*phi      phi in [0, pi/2], fixed real k
    s2k  : alpha = k*phi, beta = phi      phi in [0, pi/2], fixed real k
    full3: alpha, beta free in [-pi, pi]

s1k with k=0 is s1, s2k with k=0 is s2, and s1k(1) == s2k(1).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

TWO_PARAM_TAGS = ("s1", "s2", "s1k", "s2k")
FAMILY_TAGS = TWO_PARAM_TAGS + ("full3",)

_BOX_SLACK = 1e-9


@dataclass(frozen=True)
class StrategyFamily:
    """A strategy space; k is set only for the s1k/s2k families."""

    tag: str
    k: float | None = None

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ValueError(f"unknown strategy family {self.tag!r}")
        if self.tag in ("s1k", "s2k"):
            if self.k is None or not math.isfinite(self.k):
                raise ValueError(f"family {self.tag!r} needs a finite k")
        elif self.k is not None:
            raise ValueError(f"family {self.tag!r} does not take k")

    @property
    def n_coords(self) -> int:
        return 3 if self.tag == "full3" else 2

    def box(self) -> tuple[tuple[float, float], ...]:
        """Inclusive (lo, hi) bounds per coordinate."""
        if self.tag == "full3":
            return ((0.0, math.pi), (-math.pi, math.pi), (-math.pi, math.pi))
        return ((0.0, math.pi), (0.0, math.pi / 2))

    def label(self) -> str:
        if self.k is not None:
            return f"{self.tag}(k={self.k:g})"
        return self.tag


S1 = StrategyFamily("s1")
S2 = StrategyFamily("s2")
FULL3 = StrategyFamily("full3")


def s1k(k: float) -> StrategyFamily:
    return StrategyFamily("s1k", float(k))


def s2k(k: float) -> StrategyFamily:
    return StrategyFamily("s2k", float(k))


def family_from_tag(tag: str, k: float | None = None) -> StrategyFamily:
    tag = tag.lower()
    if tag in ("s1k", "s2k"):
        if k is None:
            raise ValueError(f"family {tag!r} requires k")
        return StrategyFamily(tag, float(k))
    return StrategyFamily(tag)


@dataclass(frozen=True)
class StrategyPoint:
    """Coordinates of one strategy; phi is used by two-parameter families,
    alpha/beta by full3."""

    theta: float
    phi: float | None = None
    alpha: float | None = None
    beta: float | None = None

    def coords(self, family: StrategyFamily) -> tuple[float, ...]:
        if family.tag == "full3":
            if self.alpha is None or self.beta is None:
                raise ValueError("full3 point needs alpha and beta")
            return (self.theta, self.alpha, self.beta)
        if self.phi is None:
            raise ValueError(f"{family.tag} point needs phi")
        return (self.theta, self.phi)


def point_from_coords(family: StrategyFamily, coords) -> StrategyPoint:
    coords = tuple(float(c) for c in coords)
    if len(coords) != family.n_coords:
        raise ValueError(f"{family.tag} takes {family.n_coords} coordinates, got {len(coords)}")
    coords = tuple(float(c) for c in _clip_to_box(family, coords))
    if family.tag == "full3":
        return StrategyPoint(theta=coords[0], alpha=coords[1], beta=coords[2])
    return StrategyPoint(theta=coords[0], phi=coords[1])


def _clip_to_box(family: StrategyFamily, coords) -> np.ndarray:
    arr = np.asarray(coords, dtype=float)
    box = family.box()
    for i, (lo, hi) in enumerate(box):
        c = arr[..., i]
        if np.any(c < lo - _BOX_SLACK) or np.any(c > hi + _BOX_SLACK):
            raise ValueError(
                f"coordinate {i} of a {family.tag} strategy must lie in "
                f"[{lo:.6g}, {hi:.6g}]"
            )
    return np.clip(arr, [b[0] for b in box], [b[1] for b in box])


def _phase_split(family: StrategyFamily, coords: np.ndarray):
    """Map family coordinates to (theta, alpha, beta) arrays."""
    theta = coords[..., 0]
    if family.tag == "full3":
        return theta, coords[..., 1], coords[..., 2]
    phi = coords[..., 1]
    zero = np.zeros_like(phi)
    if family.tag == "s1":
        return theta, phi, zero
    if family.tag == "s2":
        return theta, zero, phi
    if family.tag == "s1k":
        return theta, phi, family.k * phi
    return theta, family.k * phi, phi  # s2k


def matrix_batch(family: StrategyFamily, coords) -> np.ndarray:
    """(..., n_coords) coordinate array -> (..., 2, 2) unitary stack."""
    arr = _clip_to_box(family, coords)
    theta, alpha, beta = _phase_split(family, arr)
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = np.exp(1j * alpha) * c
    out[..., 0, 1] = 1j * np.exp(1j * beta) * s
    out[..., 1, 0] = 1j * np.exp(-1j * beta) * s
    out[..., 1, 1] = np.exp(-1j * alpha) * c
    return out


def to_matrix(family: StrategyFamily, point: StrategyPoint) -> np.ndarray:
    """2x2 unitary for one strategy point; raises outside the family box."""
    return matrix_batch(family, np.array(point.coords(family), dtype=float))


def grid(family: StrategyFamily, steps_theta: int, steps_phi: int,
         steps_beta: int | None = None) -> list[StrategyPoint]:
    """Row-major inclusive lattice over the family box.

    For full3 the phi step count is reused for alpha, and steps_beta
    (default: steps_phi) for beta, so grid(FULL3, 3, 3) has 27 points.
    """
    coords = lattice_coords(family, steps_theta, steps_phi, steps_beta)
    return [point_from_coords(family, row) for row in coords]


def lattice_coords(family: StrategyFamily, steps_theta: int, steps_phi: int,
                   steps_beta: int | None = None) -> np.ndarray:
    """(B, n_coords) row-major coordinate lattice over the family box."""
    if steps_theta < 2 or steps_phi < 2:
        raise ValueError("need at least 2 steps per coordinate")
    box = family.box()
    axes = [np.linspace(box[0][0], box[0][1], int(steps_theta)),
            np.linspace(box[1][0], box[1][1], int(steps_phi))]
    if family.tag == "full3":
        nb = int(steps_beta) if steps_beta is not None else int(steps_phi)
        if nb < 2:
            raise ValueError("need at least 2 steps per coordinate")
        axes.append(np.linspace(box[2][0], box[2][1], nb))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=-1)


# Named strategies. Single letters are the classical moves (o/t are the
# coordination-game aliases of c/d); the rest are the distinguished quantum
# strategies of each family. Names needing the player count take n, names
# living in a k-coupled family take k.
_NAMED_DOC = {
    "c": "classical cooperate, identity (s1: theta=0, phi=0)",
    "d": "classical defect, i*sigma_x (s1: theta=pi, phi=0)",
    "o": "alias of c for coordination games",
    "t": "alias of d for coordination games",
    "cprime": "phase cooperator, diag(i, -i) (s1: theta=0, phi=pi/2)",
    "dprime": "s2 defector-like move (s2: theta=pi, phi=pi/4)",
    "cn": "n-player phase cooperator (s1: theta=0, phi=pi/n); c<m> spells n=m",
    "d2n_s2": "n-player s2 defector (s2: theta=pi, phi=pi/(2n))",
    "d4k": "k-family defector (s1k: theta=pi, phi=pi/(4k)), needs k >= 1/2",
    "d2": "k-family defector at phi=pi/2 (s1k: theta=pi, phi=pi/2)",
    "dn_s1k": "k-family defector at phi=pi/n (s1k: theta=pi, phi=pi/n)",
    "c2": "two-player phase cooperator, same operator as cprime for every k",
}


def named_strategies() -> dict[str, str]:
    """Name -> description of the built-in strategy points."""
    return dict(_NAMED_DOC)


def resolve_named(name: str, n_players: int | None = None,
                  k: float | None = None) -> tuple[StrategyFamily, StrategyPoint]:
    """Resolve a strategy name to (family, point).

    n_players feeds the n-indexed names (cn, c<m>, d2n_s2, dn_s1k); k feeds the
    k-coupled family names (d4k, d2, dn_s1k). Unknown names raise ValueError.
    """
    key = name.strip().lower()
    if key in ("c", "o"):
        return S1, StrategyPoint(theta=0.0, phi=0.0)
    if key in ("d", "t"):
        return S1, StrategyPoint(theta=math.pi, phi=0.0)
    if key == "cprime":
        return S1, StrategyPoint(theta=0.0, phi=math.pi / 2)
    if key == "dprime":
        return S2, StrategyPoint(theta=math.pi, phi=math.pi / 4)
    if key == "cn":
        if n_players is None:
            raise ValueError("strategy 'cn' needs the player count")
        return _c_n(n_players)
    m = re.fullmatch(r"c(\d+)", key)
    if m:
        return _c_n(int(m.group(1)))
    if key == "d2n_s2":
        if n_players is None:
            raise ValueError("strategy 'd2n_s2' needs the player count")
        return S2, StrategyPoint(theta=math.pi, phi=math.pi / (2 * n_players))
    if key == "d4k":
        if k is None:
            raise ValueError("strategy 'd4k' needs k")
        if k < 0.5:
            raise ValueError(f"strategy 'd4k' needs k >= 1/2, got {k:g}")
        return s1k(k), StrategyPoint(theta=math.pi, phi=math.pi / (4 * k))
    if key == "d2":
        fam = s1k(k) if k is not None else S1
        return fam, StrategyPoint(theta=math.pi, phi=math.pi / 2)
    if key == "dn_s1k":
        if n_players is None or k is None:
            raise ValueError("strategy 'dn_s1k' needs the player count and k")
        return s1k(k), StrategyPoint(theta=math.pi, phi=math.pi / n_players)
    raise ValueError(f"unknown strategy name {name!r}")


def _c_n(n: int) -> tuple[StrategyFamily, StrategyPoint]:
    if n < 2:
        raise ValueError(f"c{n} needs n >= 2 to keep the phase inside [0, pi/2]")
    return S1, StrategyPoint(theta=0.0, phi=math.pi / n)


_SINGLE_LETTERS = frozenset("cdot")


def parse_profile(text: str, n_players: int,
                  k: float | None = None) -> list[tuple[StrategyFamily, StrategyPoint]]:
    """Parse a profile string into one (family, point) per player.

    Grammar: hyphen-separated parts, each `name` or `name^count`
    ("cprime-d", "c4^4", "c2-d^3"). A single unhyphenated run of one-letter
    moves is also accepted per character, so "dd" means "d-d".
    """
    text = text.strip().lower()
    if not text:
        raise ValueError("empty profile")
    parts = text.split("-")
    entries: list[tuple[StrategyFamily, StrategyPoint]] = []
    for part in parts:
        if not part:
            raise ValueError(f"empty profile component in {text!r}")
        name, _, rep = part.partition("^")
        count = 1
        if rep:
            if not rep.isdigit() or int(rep) < 1:
                raise ValueError(f"bad repetition {part!r}")
            count = int(rep)
        try:
            resolved = resolve_named(name, n_players=n_players, k=k)
        except ValueError:
            if len(parts) == 1 and not rep and set(name) <= _SINGLE_LETTERS and len(name) > 1:
                entries = [resolve_named(ch, n_players=n_players, k=k) for ch in name]
                break
            raise
        entries.extend([resolved] * count)
    if len(entries) != n_players:
        raise ValueError(
            f"profile {text!r} describes {len(entries)} players, game has {n_players}"
        )
    return entries
