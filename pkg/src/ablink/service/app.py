"""FastAPI wiring around the service handlers."""

from fastapi import FastAPI, HTTPException
from fastapi.requests import Request
from fastapi.responses import JSONResponse

from ..params import ParameterError
from ..sweep import PRESET_IDS
from . import handlers
from .schemas import (AnalyzeRequest, AnalyzeResponse, BalanceRequest,
                      BalanceResponse, FigureRequest, PresetListResponse,
                      SimulateRequest, SimulateResponse, SweepRequest,
                      TableResponse)


def create_app() -> FastAPI:
    app = FastAPI(title="ablink", version="0.1.0")

    @app.exception_handler(ParameterError)
    async def parameter_error_handler(request: Request, exc: ParameterError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/presets", response_model=PresetListResponse)
    def presets():
        return handlers.preset_list()

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest):
        return handlers.analyze(req)

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest):
        return handlers.simulate(req)

    @app.post("/balance", response_model=BalanceResponse)
    def balance(req: BalanceRequest):
        return handlers.balance(req)

    @app.post("/sweep", response_model=TableResponse)
    def sweep(req: SweepRequest):
        return handlers.sweep(req)

    @app.post("/figures/{fig_id}", response_model=TableResponse)
    def figure(fig_id: str, req: FigureRequest):
        if fig_id not in PRESET_IDS:
            raise HTTPException(status_code=404, detail=f"unknown figure preset {fig_id!r}")
        return handlers.figure(fig_id, req)

    @app.get("/figures/{fig_id}", response_model=TableResponse)
    def figure_defaults(fig_id: str, trials: int = 20000, seed: int = 0, workers: int = 1):
        if fig_id not in PRESET_IDS:
            raise HTTPException(status_code=404, detail=f"unknown figure preset {fig_id!r}")
        return handlers.figure(fig_id, FigureRequest(trials=trials, seed=seed, workers=workers))

    return app


app = create_app()
