"""Service handlers: typed request in, typed response out.

These are plain functions over the pydantic models, shared by the HTTP app
and the CLI (which calls them in-process when no server URL is given), so
the two front ends cannot drift apart.
"""

from .. import link_analytics as la
from .. import monte_carlo as mc
from ..channel import ChannelDraw
from ..params import require_valid
from ..sweep import PRESET_IDS, SweepSpec, run_figure, run_sweep
from .schemas import (AnalyzeRequest, AnalyzeResponse, BalanceRequest,
                      BalanceResponse, EstimateModel, FigureRequest,
                      ParamsModel, PresetListResponse, SimulateRequest,
                      SimulateResponse, SweepRequest, TableResponse)


def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
    p = require_valid(req.params.to_params())
    g1 = req.g1 if req.g1 is not None else p.gamma1_bar
    g2 = req.g2 if req.g2 is not None else p.gamma2_bar
    metrics = la.expected_link_metrics(p, ChannelDraw(g1=g1, g2=g2))
    return AnalyzeResponse(
        psi=metrics.psi,
        harvested_energy=metrics.harvested_energy,
        sensing_energy=metrics.sensing_energy,
        backscatter_energy=metrics.backscatter_energy,
        rate=metrics.rate,
        in_outage=metrics.in_outage,
        energy_shortage_prob=la.energy_shortage_prob(p),
        conditional_rate_outage_prob=la.conditional_rate_outage_prob(p),
        outage_probability=la.outage_probability(p),
    )


def _pack(r) -> EstimateModel:
    return EstimateModel(estimate=r.estimate, std_error=r.std_error,
                         n_trials=r.n_trials, seed=r.seed)


def simulate(req: SimulateRequest) -> SimulateResponse:
    p = require_valid(req.params.to_params())
    return SimulateResponse(
        outage=_pack(mc.estimate_outage(p, req.trials, req.seed, req.workers)),
        rate_mean=_pack(mc.estimate_mean_rate(p, req.trials, req.seed, req.workers)),
        harvest_mean=_pack(mc.estimate_mean_harvest(p, req.trials, req.seed, req.workers)),
    )


def balance(req: BalanceRequest) -> BalanceResponse:
    p = require_valid(req.params.to_params())
    g1 = req.g1 if req.g1 is not None else p.gamma1_bar
    g2 = req.g2 if req.g2 is not None else p.gamma2_bar
    return BalanceResponse(rho_star=la.balancing_rho(p, g1, g2), g1=g1, g2=g2)


def _table_response(table) -> TableResponse:
    return TableResponse(columns=table.columns, rows=table.rows,
                         params=ParamsModel.from_params(table.params),
                         seed=table.seed)


def sweep(req: SweepRequest) -> TableResponse:
    p = require_valid(req.params.to_params())
    spec = SweepSpec(axis=req.axis, values=list(req.values), base=p,
                     metrics=tuple(req.metrics), mc_trials=req.mc_trials,
                     seed=req.seed)
    return _table_response(run_sweep(spec, workers=req.workers))


def figure(fig_id: str, req: FigureRequest) -> TableResponse:
    p = require_valid(req.params.to_params())
    table = run_figure(fig_id, base=p, mc_trials=req.trials, seed=req.seed,
                       workers=req.workers)
    return _table_response(table)


def preset_list() -> PresetListResponse:
    return PresetListResponse(presets=list(PRESET_IDS))
