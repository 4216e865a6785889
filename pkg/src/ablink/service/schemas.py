"""Request/response models for the HTTP service.

The pydantic layer handles shape and typing only; range checking stays in
params.validate so the bounds live in exactly one place.
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict

from ..params import SystemParams


class ParamsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rho: float = 0.3
    alpha: float = 0.1
    eta: float = 0.5
    beta: float = 0.5
    theta: float = 2.0
    T: float = 1.0
    B: float = 1.0e6
    omega1: float = 10.0 ** 0.5
    omega2: float = 1.0
    d1: float = 5.0
    d2: float = 5.0
    phi: float = 2000.0
    gamma1_bar: float = 1.0
    gamma2_bar: float = 1.0
    f: float = 1000.0
    M: int = 5
    e: float = 1.0e-6
    E_m: float = 1.0e-4
    N: int = 1
    psi_override: Optional[float] = None

    def to_params(self) -> SystemParams:
        return SystemParams(**self.model_dump())

    @classmethod
    def from_params(cls, params: SystemParams) -> "ParamsModel":
        return cls(**{f: getattr(params, f) for f in cls.model_fields})


class AnalyzeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    g1: Optional[float] = None  # default: gamma1_bar
    g2: Optional[float] = None  # default: gamma2_bar


class AnalyzeResponse(BaseModel):
    psi: float
    harvested_energy: float
    sensing_energy: float
    backscatter_energy: float
    rate: float
    in_outage: bool
    energy_shortage_prob: float
    conditional_rate_outage_prob: float
    outage_probability: float


class SimulateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    trials: int = 100000
    seed: int = 0
    workers: int = 1


class EstimateModel(BaseModel):
    estimate: float
    std_error: float
    n_trials: int
    seed: int


class SimulateResponse(BaseModel):
    outage: EstimateModel
    rate_mean: EstimateModel
    harvest_mean: EstimateModel


class BalanceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    g1: Optional[float] = None
    g2: Optional[float] = None


class BalanceResponse(BaseModel):
    rho_star: float
    g1: float
    g2: float


class FigureRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    trials: int = 20000
    seed: int = 0
    workers: int = 1


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    axis: str
    values: List[float]
    metrics: List[str] = ["outage_closed"]
    mc_trials: int = 20000
    seed: int = 0
    workers: int = 1


class TableResponse(BaseModel):
    columns: List[str]
    rows: List[List[float]]
    params: ParamsModel
    seed: int


class PresetListResponse(BaseModel):
    presets: List[str]
