from __future__ import annotations

import asyncio
import os
import tempfile
import time
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Literal, NoReturn, Optional

from dotenv import load_dotenv
from fastapi import FastAPI, File, HTTPException, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from mcsp.bench import generate_instance, load_fasta, t_test, InstanceSpec
from mcsp.blocks import validate_common_partition
from mcsp.exact import exact_solution
from mcsp.greedy import greedy_solution
from mcsp.heuristics import HeuristicWeights
from mcsp.mmas import MmasParams, Solution, solve

print("Booting MCSP solver...")
_boot_start_time = time.time()

print("Initializing environment configuration...")
_env_start_time = time.time()
load_dotenv()
print(f"[✓] Environment variables loaded in {time.time() - _env_start_time:.2f}s")

print("Loading solver settings...")
_settings_start_time = time.time()
from mcsp.config import load_settings  # noqa: E402

SETTINGS = load_settings(os.getenv("MCSP_CONFIG"))
print(f"[✓] Solver settings loaded in {time.time() - _settings_start_time:.2f}s")

print("Initializing FastAPI application...")
_api_start_time = time.time()
app = FastAPI(title="MCSP Solver API", version="1.0.0")
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)
print(f"[✓] FastAPI application initialized in {time.time() - _api_start_time:.2f}s")

# Upper bounds for request-driven MMAS runs.
API_MAX_TIME_SECS = float(os.getenv("MCSP_API_MAX_TIME_SECS", "30"))
API_MAX_LENGTH = int(os.getenv("MCSP_API_MAX_LENGTH", "2000"))


class MmasOverrides(BaseModel):
    alpha: Optional[float] = None
    beta: Optional[float] = None
    epsilon: Optional[float] = None
    n_ants: Optional[int] = None
    p_best: Optional[float] = None
    init_pheromone: Optional[float] = None
    max_time_secs: Optional[float] = None
    max_stale_iterations: Optional[int] = None
    max_iterations: Optional[int] = None
    target_cost: Optional[int] = None
    seed: Optional[int] = None
    a: Optional[float] = None
    b: Optional[float] = None


class SolveRequest(BaseModel):
    x: str
    y: str
    algo: Literal["greedy", "mmas", "exact"] = "mmas"
    params: Optional[MmasOverrides] = None


class SolveResponse(BaseModel):
    algo: str
    cost: int
    substrings: List[str]
    partition_list: List[List[int]]
    mapped_list: List[List[int]]
    valid: bool
    processing_time_seconds: float
    time_to_best_seconds: Optional[float] = None
    iterations: Optional[int] = None


class GenerateRequest(BaseModel):
    length: int = Field(..., ge=1)
    seed: int = Field(0, ge=0)


class TTestRequest(BaseModel):
    baseline: float
    costs: List[float]
    significance: float = Field(0.05, gt=0, lt=1)


def build_mmas_params(overrides: Optional[MmasOverrides]) -> MmasParams:
    params = SETTINGS.mmas_params()
    if overrides is None:
        return replace(params, max_time_secs=min(params.max_time_secs or API_MAX_TIME_SECS, API_MAX_TIME_SECS))

    values = overrides.model_dump(exclude_none=True)
    a = values.pop("a", params.weights.a)
    b = values.pop("b", params.weights.b)
    params = replace(params, weights=HeuristicWeights(a=a, b=b), **values)
    budget = min(params.max_time_secs or API_MAX_TIME_SECS, API_MAX_TIME_SECS)
    return replace(params, max_time_secs=budget)


def solution_payload(algo: str, solution: Solution, x: str, y: str, elapsed: float) -> Dict[str, Any]:
    partition = solution.common_partition
    return {
        "algo": algo,
        "cost": solution.cost,
        "substrings": list(partition.substrings(x)),
        "partition_list": [[b.id, b.i, b.j] for b in partition.partition_list],
        "mapped_list": [[b.id, b.i, b.j] for b in partition.mapped_list],
        "valid": bool(validate_common_partition(partition, x, y)),
        "processing_time_seconds": round(elapsed, 4),
    }


def raise_for(exc: Exception, action: str) -> NoReturn:
    status = 400 if isinstance(exc, ValueError) else 500
    message = f"{action} failed: {exc}"
    print(f"❌ {message}")
    raise HTTPException(
        status_code=status,
        detail={"success": False, "message": message, "error_type": type(exc).__name__},
    )


@app.get("/")
async def root() -> Dict[str, str]:
    return {"message": "MCSP Solver API v1.0", "status": "active"}


@app.get("/health")
async def health() -> Dict[str, Any]:
    return {
        "status": "healthy",
        "algorithms": ["greedy", "mmas", "exact"],
        "exact_limit": SETTINGS.exact_limit,
        "max_time_secs": API_MAX_TIME_SECS,
    }


@app.post("/api/solve", response_model=SolveResponse)
async def solve_instance(request: SolveRequest) -> SolveResponse:
    x, y = request.x.strip(), request.y.strip()
    if len(x) > API_MAX_LENGTH:
        raise_for(ValueError(f"strings longer than {API_MAX_LENGTH} are not accepted"), "Solve")

    print(f"🔄 Solving n={len(x)} with {request.algo}")
    started = time.time()
    try:
        if request.algo == "greedy":
            solution = await asyncio.to_thread(greedy_solution, x, y)
            payload = solution_payload("greedy", solution, x, y, time.time() - started)
        elif request.algo == "exact":
            solution = await asyncio.to_thread(exact_solution, x, y, SETTINGS.exact_limit)
            payload = solution_payload("exact", solution, x, y, time.time() - started)
        else:
            params = build_mmas_params(request.params)
            result = await asyncio.to_thread(solve, x, y, params, False)
            payload = solution_payload("mmas", result.best, x, y, time.time() - started)
            payload["time_to_best_seconds"] = round(result.runs[0].time_to_best_secs, 4)
            payload["iterations"] = sum(run.iterations for run in result.runs)
    except HTTPException:
        raise
    except Exception as exc:
        raise_for(exc, "Solve")

    print(f"✅ {request.algo} cost {payload['cost']} in {payload['processing_time_seconds']:.2f}s")
    return SolveResponse(**payload)


@app.post("/api/instances/generate")
async def generate(request: GenerateRequest) -> Dict[str, Any]:
    try:
        spec = InstanceSpec(id="api", source="generated", length=request.length, seed=request.seed)
        x, y = generate_instance(spec)
    except Exception as exc:
        raise_for(exc, "Instance generation")
    return {"x": x, "y": y, "length": request.length, "seed": request.seed}


@app.post("/api/fasta")
async def upload_fasta(file: UploadFile = File(...)) -> Dict[str, Any]:
    content = await file.read()
    with tempfile.NamedTemporaryFile("wb", suffix=".fasta", delete=False) as handle:
        handle.write(content)
        temp_path = Path(handle.name)
    try:
        records = load_fasta(temp_path)
    except Exception as exc:
        raise_for(exc, "FASTA parsing")
    finally:
        temp_path.unlink(missing_ok=True)

    print(f"📊 Parsed {len(records)} FASTA record(s) from {file.filename}")
    return {
        "filename": file.filename,
        "count": len(records),
        "records": [{"id": record_id, "length": len(seq), "sequence": seq} for record_id, seq in records],
    }


@app.post("/api/t-test")
async def significance(request: TTestRequest) -> Dict[str, Any]:
    try:
        result = t_test(request.baseline, request.costs, request.significance)
    except Exception as exc:
        raise_for(exc, "t-test")
    return {
        "t": result.t if abs(result.t) != float("inf") else str(result.t),
        "p": result.p,
        "mark": result.mark,
        "n": len(request.costs),
    }


print(f"[✓] MCSP solver booted in {time.time() - _boot_start_time:.2f}s")
