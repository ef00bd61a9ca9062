"""Request and response schemas for the analysis service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ResolutionModel(BaseModel):
    steps_theta: int = Field(default=181, ge=2)
    steps_phi: int = Field(default=91, ge=2)
    steps_full3: int = Field(default=31, ge=2)


class GridModel(BaseModel):
    """Inclusive sin^2(gamma) (or k) range with a point count."""

    lo: float = 0.0
    hi: float = 1.0
    count: int = Field(default=11, ge=1)


class VerifyRequest(BaseModel):
    game: str
    space: str = "s1"
    k: float | None = None
    sin2gamma: float = Field(ge=0.0, le=1.0)
    profile: str
    epsilon: float = Field(default=1e-3, gt=0.0)
    resolution: ResolutionModel = ResolutionModel()


class VerifyResponse(BaseModel):
    game: str
    space: str
    k: float | None
    gamma: float
    sin2gamma: float
    profile: str
    payoffs: list[float]
    best_reply_payoffs: list[float]
    gains: list[float]
    max_gain: float
    epsilon: float
    is_ne: bool


class SweepRequest(BaseModel):
    game: str
    space: str = "s1"
    k: float | None = None
    k_grid: GridModel | None = None
    sin2gamma: GridModel = GridModel()
    profiles: list[str]
    epsilon: float = Field(default=1e-3, gt=0.0)
    resolution: ResolutionModel = ResolutionModel()


class SweepRowModel(BaseModel):
    game: str
    space: str
    k: float | None
    gamma: float
    sin2gamma: float
    profile: str
    payoffs: list[float]
    is_ne: bool
    max_gain: float


class SweepResponse(BaseModel):
    n_players: int
    rows: list[SweepRowModel]


class ThresholdRequest(BaseModel):
    game: str
    space: str = "s1"
    k: float | None = None
    profile: str
    lo: float = Field(default=0.0, ge=0.0, le=1.0)
    hi: float = Field(default=1.0, ge=0.0, le=1.0)
    epsilon: float = Field(default=1e-3, gt=0.0)
    tolerance: float = Field(default=1e-4, gt=0.0)
    resolution: ResolutionModel = ResolutionModel()


class ThresholdResponse(BaseModel):
    game: str
    space: str
    k: float | None
    profile: str
    sin2gamma_star: float
    bracket_lo: float
    bracket_hi: float
    tolerance: float
    epsilon: float
    ne_lo: bool
    ne_hi: bool
    iterations: int


class ProbeRequest(BaseModel):
    check: str
    trials: int = Field(default=200, ge=1)
    seed: int = 0
    nmax: int = Field(default=6, ge=2, le=9)
    grid: int = Field(default=21, ge=2)
    resolution: ResolutionModel = ResolutionModel()


class ProbeResponse(BaseModel):
    check: str
    columns: list[str]
    rows: list[dict]
    summary: dict
    notes: list[str]
