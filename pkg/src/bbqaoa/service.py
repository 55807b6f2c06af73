"""HTTP service wrapping the core operations.

Run with ``uvicorn bbqaoa.service:app`` or ``bbqaoa serve``. Requests carry
instances inline (same schema as the instance files) and protocols in their
E/X text form. The sweep endpoint is synchronous and meant for desk-scale
configurations; large campaigns belong in ``bbqaoa sweep``, which persists
records and a replay manifest.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .harness import SweepConfig, _run_cells, aggregate
from .optimizer import init_distribution, is_local_optimum, sample_initial, stochastic_descent
from .protocol import Protocol, correlator, evolve, objective, smooth, to_standard_qaoa
from .quantum import expectation
from .sat import Clause, ProblemInstance, brute_force_cmax, build_diagonal, random_instance

app = FastAPI(title="bbqaoa", version=__version__)


@app.exception_handler(ValueError)
async def _value_error_handler(_request: Request, exc: ValueError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


class InstanceModel(BaseModel):
    """Wire form of a problem instance; mirrors the instance file schema."""

    n_vars: int = Field(ge=2, le=24)
    clauses: list[list[int]]

    @classmethod
    def from_instance(cls, instance: ProblemInstance) -> "InstanceModel":
        return cls(n_vars=instance.n_vars, clauses=[c.as_row() for c in instance.sorted_clauses()])

    def to_instance(self) -> ProblemInstance:
        clauses = []
        for row in self.clauses:
            if len(row) != 4:
                raise ValueError(f"clause rows are [var_a, neg_a, var_b, neg_b], got {row!r}")
            clauses.append(Clause.make(row[0], row[1], row[2], row[3]))
        return ProblemInstance(self.n_vars, clauses)


class AnglesModel(BaseModel):
    p: int
    layers: list[tuple[float, float]]


class GenerateRequest(BaseModel):
    n_vars: int = Field(ge=2, le=24)
    n_clauses: int = Field(ge=1)
    seed: int = 0


class GenerateResponse(BaseModel):
    instance: InstanceModel
    c_max: int


class EvaluateRequest(BaseModel):
    instance: InstanceModel
    protocol: str
    total_time: float = Field(ge=0)


class EvaluateResponse(BaseModel):
    expectation: float
    objective: float
    c_max: int


class OptimizeRequest(BaseModel):
    instance: InstanceModel
    n_blocks: int = Field(default=200, ge=1)
    total_time: float = Field(ge=0)
    init: str = "uniform"
    k: int = Field(default=1, ge=1)
    seed: int = 0
    protocol: str | None = None


class OptimizeResponse(BaseModel):
    initial_objective: float
    final_objective: float
    accepted_updates: int
    evaluations: int
    protocol: str
    angles: AnglesModel
    local_optimum: bool


class TranslateRequest(BaseModel):
    protocol: str
    total_time: float = Field(ge=0)


class SmoothRequest(BaseModel):
    protocol: str
    window: int = Field(ge=1)


class SmoothResponse(BaseModel):
    window: int
    values: list[float]


class CorrelatorRequest(BaseModel):
    protocols: list[str]


class CorrelatorResponse(BaseModel):
    correlator: float


class SweepRequest(BaseModel):
    instance: InstanceModel
    n_blocks: int = Field(default=100, ge=1)
    time_grid: list[float]
    samples_per_time: int = Field(default=50, ge=1)
    init: str = "uniform"
    k: int = Field(default=1, ge=1)
    master_seed: int = 0


class AggregateRowModel(BaseModel):
    T: float
    p5: float
    p25: float
    p50: float
    p75: float
    p95: float
    base_p50: float
    correlator: float
    mean_iterations: float


class SweepResponse(BaseModel):
    n_records: int
    rows: list[AggregateRowModel]


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/instances/generate", response_model=GenerateResponse)
def generate(req: GenerateRequest) -> GenerateResponse:
    instance = random_instance(req.n_vars, req.n_clauses, np.random.default_rng(req.seed))
    return GenerateResponse(
        instance=InstanceModel.from_instance(instance), c_max=brute_force_cmax(instance)
    )


@app.post("/protocols/evaluate", response_model=EvaluateResponse)
def evaluate(req: EvaluateRequest) -> EvaluateResponse:
    instance = req.instance.to_instance()
    diag = build_diagonal(instance)
    c_max = brute_force_cmax(instance)
    proto = Protocol.from_string(req.protocol, req.total_time)
    value = expectation(evolve(proto, diag), diag)
    return EvaluateResponse(expectation=value, objective=value / c_max, c_max=c_max)


@app.post("/protocols/optimize", response_model=OptimizeResponse)
def optimize(req: OptimizeRequest) -> OptimizeResponse:
    instance = req.instance.to_instance()
    diag = build_diagonal(instance)
    c_max = brute_force_cmax(instance)
    rng = np.random.default_rng(req.seed)
    if req.protocol is not None:
        # Explicit protocol overrides random initialization; its length wins.
        initial = Protocol.from_string(req.protocol, req.total_time)
    else:
        initial = sample_initial(init_distribution(req.init), req.n_blocks, req.total_time, rng)
    result = stochastic_descent(initial, req.k, diag, c_max, rng)
    angles = to_standard_qaoa(result.final_protocol)
    return OptimizeResponse(
        initial_objective=result.objective_trajectory[0],
        final_objective=result.final_objective,
        accepted_updates=result.accepted_updates,
        evaluations=result.evaluations,
        protocol=result.final_protocol.to_string(),
        angles=AnglesModel(p=angles.p, layers=list(angles.layers)),
        local_optimum=is_local_optimum(result.final_protocol, req.k, diag, c_max),
    )


@app.post("/protocols/translate", response_model=AnglesModel)
def translate(req: TranslateRequest) -> AnglesModel:
    angles = to_standard_qaoa(Protocol.from_string(req.protocol, req.total_time))
    return AnglesModel(p=angles.p, layers=list(angles.layers))


@app.post("/protocols/smooth", response_model=SmoothResponse)
def smooth_protocol(req: SmoothRequest) -> SmoothResponse:
    # Window validation needs the block count; total time is irrelevant here.
    proto = Protocol.from_string(req.protocol, 0.0)
    smoothed = smooth(proto, req.window)
    return SmoothResponse(window=smoothed.window, values=[float(v) for v in smoothed.values])


@app.post("/protocols/correlator", response_model=CorrelatorResponse)
def correlator_endpoint(req: CorrelatorRequest) -> CorrelatorResponse:
    protos = [Protocol.from_string(s, 0.0) for s in req.protocols]
    return CorrelatorResponse(correlator=correlator(protos))


@app.post("/sweep", response_model=SweepResponse)
def sweep(req: SweepRequest) -> SweepResponse:
    instance = req.instance.to_instance()
    config = SweepConfig(
        instance_path="<inline>",
        n_blocks=req.n_blocks,
        time_grid=tuple(req.time_grid),
        samples_per_time=req.samples_per_time,
        init_kind=init_distribution(req.init).kind,
        k=req.k,
        master_seed=req.master_seed,
    )
    records = []
    for t_index in range(len(config.time_grid)):
        records.extend(_run_cells(config, instance, t_index, 0, config.samples_per_time))
    rows = aggregate(records)
    return SweepResponse(
        n_records=len(records),
        rows=[
            AggregateRowModel(
                T=row.T,
                p5=row.p5,
                p25=row.p25,
                p50=row.p50,
                p75=row.p75,
                p95=row.p95,
                base_p50=row.base_p50,
                correlator=row.correlator,
                mean_iterations=row.mean_iterations,
            )
            for row in rows
        ],
    )
