"""HTTP face of the simulator: run single experiments, sweeps, and figure presets."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ConfigError
from ..sweep import FIGURE_NAMES
from . import handlers
from .schemas import RunRequest, SweepRequest, SweepResponse

app = FastAPI(
    title="upcache",
    version=__version__,
    description=(
        "Slotted small-cell uplink cache simulator. POST a configuration to "
        "/run or /sweep, or GET a preset experiment grid from /figures/{name}."
    ),
)


@app.exception_handler(ConfigError)
async def config_error_handler(_: Request, exc: ConfigError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/run", response_model=SweepResponse)
def run(request: RunRequest) -> SweepResponse:
    """One configuration, one result row per requested policy."""
    return SweepResponse(rows=handlers.run_rows(request))


@app.post("/sweep", response_model=SweepResponse)
def sweep(request: SweepRequest) -> SweepResponse:
    """Vary one axis over increasing values, one row per (value, policy)."""
    return SweepResponse(rows=handlers.sweep_rows(request))


@app.get("/figures/{name}", response_model=SweepResponse)
def figure(name: str, runs: int | None = None, seed: int | None = None) -> SweepResponse:
    """Preset grids fig2..fig5; runs/seed may be overridden for quick looks."""
    if name not in FIGURE_NAMES:
        raise ConfigError(f"unknown figure {name!r}; pick one of {FIGURE_NAMES}")
    return SweepResponse(rows=handlers.figure_rows(name, runs=runs, seed=seed))
