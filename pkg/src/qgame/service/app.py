"""HTTP facade over the core analysis functions."""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__, equilibrium, probes
from ..games import parse_game
from ..strategies import family_from_tag, parse_profile
from .models import (
    GridModel,
    ProbeRequest,
    ProbeResponse,
    ResolutionModel,
    SweepRequest,
    SweepResponse,
    SweepRowModel,
    ThresholdRequest,
    ThresholdResponse,
    VerifyRequest,
    VerifyResponse,
)


def _resolution(model: ResolutionModel) -> equilibrium.Resolution:
    return equilibrium.Resolution(
        steps_theta=model.steps_theta,
        steps_phi=model.steps_phi,
        steps_full3=model.steps_full3,
    )


def _grid_values(grid: GridModel) -> list[float]:
    if grid.count == 1:
        return [grid.lo]
    return [float(v) for v in np.linspace(grid.lo, grid.hi, grid.count)]


def create_app() -> FastAPI:
    app = FastAPI(title="qgame", version=__version__,
                  description="Equilibrium analysis for quantized 2x2 games")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        try:
            game = parse_game(req.game)
            family = family_from_tag(req.space, req.k)
            profile = parse_profile(req.profile, game.n_players, k=req.k)
            gamma = equilibrium.sin2_to_gamma(req.sin2gamma)
            report = equilibrium.verify_ne(
                game, gamma, profile, family, req.epsilon,
                _resolution(req.resolution), label=req.profile,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except ArithmeticError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return VerifyResponse(
            game=game.name, space=req.space, k=req.k,
            gamma=report.gamma, sin2gamma=report.sin2gamma, profile=req.profile,
            payoffs=list(report.payoffs),
            best_reply_payoffs=[r.payoff for r in report.best_responses],
            gains=list(report.gains), max_gain=report.max_gain,
            epsilon=report.epsilon, is_ne=report.is_ne,
        )

    @app.post("/sweep", response_model=SweepResponse)
    def run_sweep(req: SweepRequest) -> SweepResponse:
        try:
            game = parse_game(req.game)
            if req.k_grid is not None:
                k_values = _grid_values(req.k_grid)
            elif req.k is not None:
                k_values = [req.k]
            else:
                k_values = [None]
            rows = equilibrium.sweep(
                game, req.space, _grid_values(req.sin2gamma), req.profiles,
                k_values, req.epsilon, _resolution(req.resolution),
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except ArithmeticError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return SweepResponse(
            n_players=game.n_players,
            rows=[SweepRowModel(
                game=r.game, space=r.space, k=r.k, gamma=r.gamma,
                sin2gamma=r.sin2gamma, profile=r.profile,
                payoffs=list(r.payoffs), is_ne=r.is_ne, max_gain=r.max_gain,
            ) for r in rows],
        )

    @app.post("/threshold", response_model=ThresholdResponse)
    def threshold(req: ThresholdRequest) -> ThresholdResponse:
        try:
            game = parse_game(req.game)
            family = family_from_tag(req.space, req.k)
            profile = parse_profile(req.profile, game.n_players, k=req.k)
            result = equilibrium.threshold_bisect(
                game, profile, req.lo, req.hi, family, req.epsilon,
                req.tolerance, _resolution(req.resolution), label=req.profile,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except ArithmeticError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return ThresholdResponse(
            game=game.name, space=req.space, k=req.k, profile=req.profile,
            sin2gamma_star=result.sin2gamma_star,
            bracket_lo=result.bracket_lo, bracket_hi=result.bracket_hi,
            tolerance=result.tolerance, epsilon=result.epsilon,
            ne_lo=result.ne_lo, ne_hi=result.ne_hi, iterations=result.iterations,
        )

    @app.post("/probe", response_model=ProbeResponse)
    def probe(req: ProbeRequest) -> ProbeResponse:
        try:
            columns, rows, summary, notes = probes.run_check(
                req.check, trials=req.trials, seed=req.seed, nmax=req.nmax,
                grid=req.grid, resolution=_resolution(req.resolution),
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except ArithmeticError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return ProbeResponse(check=req.check, columns=columns, rows=rows,
                             summary=summary, notes=notes)

    return app
