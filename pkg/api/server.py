"""
FastAPI server exposing the batch commands over HTTP.
"""
import logging
import os
from contextlib import asynccontextmanager
from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field, ValidationError

from algebra.errors import HyperBesselError
from cli.commands import CommandResult, run_command
from cli.config import VERSION, RunConfig, default_api_port
from cli.main import exit_code_for

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Log the configuration the service runs with."""
    print(f"Hyper-Bessel service {VERSION} starting")
    print(f"  Threads: {os.getenv('HB_THREADS', '1')}")
    yield
    print("Shutting down hyper-Bessel service...")


app = FastAPI(title="Hyper-Bessel Harmonic Analysis", version=VERSION, lifespan=lifespan)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


class CommandRequest(BaseModel):
    """Fields of a RunConfig except the command, which the route fixes."""
    r: int = 2
    gamma: List[str] = Field(default_factory=lambda: ["-1/2"])
    truncation: Optional[int] = None
    mode: Optional[str] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: int = 0
    threads: Optional[int] = None


class CommandResponse(BaseModel):
    """Command output: exit code, and a JSON report or CSV text."""
    exit_code: int
    report: Optional[Dict[str, Any]] = None
    csv: Optional[str] = None


def _run(command: str, request: CommandRequest) -> CommandResponse:
    data = {k: v for k, v in request.model_dump().items() if v is not None}
    try:
        config = RunConfig.model_validate({"command": command, **data})
    except ValidationError as e:
        raise HTTPException(status_code=422, detail=e.errors(include_url=False, include_context=False))
    try:
        result: CommandResult = run_command(config)
    except (HyperBesselError, ValueError, OverflowError) as e:
        logger.warning("%s failed: %s", command, e)
        raise HTTPException(status_code=400, detail={"error": str(e), "exit_code": exit_code_for(e)})
    return CommandResponse(exit_code=result.exit_code, report=result.payload, csv=result.text)


@app.get("/")
async def root():
    """Root endpoint."""
    return {"service": "Hyper-Bessel Harmonic Analysis", "version": VERSION, "status": "running"}


@app.get("/health")
async def health():
    """Health check endpoint."""
    return {"status": "healthy", "version": VERSION}


@app.post("/eval", response_model=CommandResponse)
def eval_endpoint(request: CommandRequest):
    """j_gamma / G_gamma values with certified bounds, as CSV."""
    return _run("eval", request)


@app.post("/certify", response_model=CommandResponse)
def certify_endpoint(request: CommandRequest):
    """Chaos certificate of a convolution operator; exit_code 2 marks a refusal."""
    return _run("certify", request)


@app.post("/identities", response_model=CommandResponse)
def identities_endpoint(request: CommandRequest):
    """Run the identity suite."""
    return _run("identities", request)


def main():
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=default_api_port())


if __name__ == "__main__":
    main()
