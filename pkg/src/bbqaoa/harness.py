"""Seeded time-sweep experiments and their aggregation/persistence.

Every (time-step, sample) cell derives its own RNG seed from the master
seed through numpy's SeedSequence spawn keys, so the set of records is a
pure function of the configuration: workers can run the cells in any order
or degree of parallelism and produce the same rows.

Persisted artifacts: a records CSV (one row per SD run), an aggregate CSV
(one row per time step), and a JSON manifest embedding the configuration,
the instance checksum and the tool version for exact replay.
"""

from __future__ import annotations

import csv
import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .optimizer import init_distribution, sample_initial, stochastic_descent
from .protocol import Protocol, correlator
from .sat import brute_force_cmax, build_diagonal, load_instance

PERCENTILES = (5, 25, 50, 75, 95)
SEED_SCHEME = "numpy-seedsequence-spawnkey(t_index,sample)"

RECORDS_HEADER = "T,sample,seed,initial_obj,final_obj,accepted_updates,evaluations,protocol"
AGGREGATE_HEADER = "T,p5,p25,p50,p75,p95,base_p50,correlator,mean_iterations"


def default_time_grid() -> tuple:
    """0.0 to 10.0 in steps of 0.25 (exact binary fractions)."""
    return tuple(float(t) for t in np.arange(0.0, 10.0 + 0.125, 0.25))


@dataclass(frozen=True)
class SweepConfig:
    instance_path: str
    n_blocks: int = 200
    time_grid: tuple = field(default_factory=default_time_grid)
    samples_per_time: int = 10_000
    init_kind: str = "uniform"
    k: int = 1
    master_seed: int = 0
    output_path: str | None = None
    parallelism: int = 1

    def __post_init__(self):
        object.__setattr__(self, "time_grid", tuple(float(t) for t in self.time_grid))
        init_distribution(self.init_kind)
        if not self.time_grid:
            raise ValueError("time_grid must be nonempty")
        if any(t < 0.0 for t in self.time_grid):
            raise ValueError("time_grid values must be nonnegative")
        if any(a >= b for a, b in zip(self.time_grid, self.time_grid[1:])):
            raise ValueError("time_grid must be strictly increasing")
        if self.samples_per_time < 1:
            raise ValueError("samples_per_time must be >= 1")
        if self.n_blocks < 1:
            raise ValueError("n_blocks must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")


@dataclass(frozen=True)
class SweepRecord:
    T: float
    sample: int
    seed: int
    initial_obj: float
    final_obj: float
    accepted_updates: int
    evaluations: int
    protocol: str


@dataclass(frozen=True)
class AggregateRow:
    T: float
    p5: float
    p25: float
    p50: float
    p75: float
    p95: float
    base_p5: float
    base_p25: float
    base_p50: float
    base_p75: float
    base_p95: float
    correlator: float
    mean_iterations: float


def child_seed(master_seed: int, t_index: int, sample: int) -> int:
    """128-bit child seed from the named splittable scheme (see SEED_SCHEME)."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(t_index, sample))
    return int.from_bytes(ss.generate_state(4, np.uint32).tobytes(), "little")


def _run_cells(config: SweepConfig, instance, t_index: int, sample_lo: int, sample_hi: int) -> list:
    """Run SD for samples [lo, hi) of one time step; pure given the arguments."""
    diag = build_diagonal(instance)
    c_max = brute_force_cmax(instance)
    dist = init_distribution(config.init_kind)
    total_time = config.time_grid[t_index]
    records = []
    for sample in range(sample_lo, sample_hi):
        seed = child_seed(config.master_seed, t_index, sample)
        rng = np.random.default_rng(seed)
        initial = sample_initial(dist, config.n_blocks, total_time, rng)
        result = stochastic_descent(initial, config.k, diag, c_max, rng)
        initial_obj = result.objective_trajectory[0]
        records.append(
            SweepRecord(
                T=total_time,
                sample=sample,
                seed=seed,
                initial_obj=initial_obj,
                final_obj=result.final_objective,
                accepted_updates=result.accepted_updates,
                evaluations=result.evaluations,
                protocol=result.final_protocol.to_string(),
            )
        )
    return records


def _worker(args) -> tuple:
    config, instance, t_index, lo, hi = args
    return (t_index, lo, _run_cells(config, instance, t_index, lo, hi))


def run_sweep(config: SweepConfig, instance=None) -> list:
    """All (T, sample) records for the config, sorted by (time step, sample)."""
    if instance is None:
        instance = load_instance(config.instance_path)
    tasks = []
    if config.parallelism > 1:
        # Chunks small enough to load every worker; sizing never affects results.
        chunk = max(1, -(-config.samples_per_time // (config.parallelism * 4)))
    else:
        chunk = config.samples_per_time
    for t_index in range(len(config.time_grid)):
        for lo in range(0, config.samples_per_time, chunk):
            hi = min(lo + chunk, config.samples_per_time)
            tasks.append((config, instance, t_index, lo, hi))
    if config.parallelism > 1:
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            parts = list(pool.map(_worker, tasks))
    else:
        parts = [_worker(t) for t in tasks]
    parts.sort(key=lambda part: (part[0], part[1]))
    records = []
    for _, _, chunk_records in parts:
        records.extend(chunk_records)
    return records


def aggregate(records) -> list:
    """Per-time-step percentile/correlator/iteration statistics."""
    records = list(records)
    if not records:
        raise ValueError("no records to aggregate")
    by_time: dict = {}
    for rec in records:
        by_time.setdefault(rec.T, []).append(rec)
    rows = []
    for total_time in sorted(by_time):
        group = by_time[total_time]
        finals = np.array([r.final_obj for r in group])
        initials = np.array([r.initial_obj for r in group])
        protos = [Protocol.from_string(r.protocol, r.T) for r in group]
        fp = np.percentile(finals, PERCENTILES)
        ip = np.percentile(initials, PERCENTILES)
        rows.append(
            AggregateRow(
                T=total_time,
                p5=float(fp[0]),
                p25=float(fp[1]),
                p50=float(fp[2]),
                p75=float(fp[3]),
                p95=float(fp[4]),
                base_p5=float(ip[0]),
                base_p25=float(ip[1]),
                base_p50=float(ip[2]),
                base_p75=float(ip[3]),
                base_p95=float(ip[4]),
                correlator=correlator(protos),
                mean_iterations=float(np.mean([r.accepted_updates for r in group])),
            )
        )
    return rows


def write_records_csv(records, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORDS_HEADER.split(","))
        for r in records:
            writer.writerow(
                [
                    repr(r.T),
                    r.sample,
                    r.seed,
                    repr(r.initial_obj),
                    repr(r.final_obj),
                    r.accepted_updates,
                    r.evaluations,
                    r.protocol,
                ]
            )


def read_records_csv(path) -> list:
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != RECORDS_HEADER.split(","):
            raise ValueError(f"{path}: unexpected records header {header!r}")
        for row in reader:
            records.append(
                SweepRecord(
                    T=float(row[0]),
                    sample=int(row[1]),
                    seed=int(row[2]),
                    initial_obj=float(row[3]),
                    final_obj=float(row[4]),
                    accepted_updates=int(row[5]),
                    evaluations=int(row[6]),
                    protocol=row[7],
                )
            )
    return records


def write_aggregate_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER.split(","))
        for row in rows:
            writer.writerow(
                [
                    repr(row.T),
                    repr(row.p5),
                    repr(row.p25),
                    repr(row.p50),
                    repr(row.p75),
                    repr(row.p95),
                    repr(row.base_p50),
                    repr(row.correlator),
                    repr(row.mean_iterations),
                ]
            )


def instance_checksum(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _manifest_payload(config: SweepConfig) -> dict:
    return {
        "tool": "bbqaoa",
        "version": __version__,
        "seed_scheme": SEED_SCHEME,
        "percentiles": list(PERCENTILES),
        "instance_sha256": instance_checksum(config.instance_path),
        "config": {
            "instance_path": str(config.instance_path),
            "n_blocks": config.n_blocks,
            "time_grid": list(config.time_grid),
            "samples_per_time": config.samples_per_time,
            "init_kind": config.init_kind,
            "k": config.k,
            "master_seed": config.master_seed,
            "output_path": config.output_path,
            "parallelism": config.parallelism,
        },
    }


def persist(rows, records, config: SweepConfig) -> dict:
    """Write records.csv, aggregate.csv and manifest.json under output_path."""
    if not config.output_path:
        raise ValueError("config.output_path is required to persist a sweep")
    out_dir = Path(config.output_path)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = {
            "records": out_dir / "records.csv",
            "aggregate": out_dir / "aggregate.csv",
            "manifest": out_dir / "manifest.json",
        }
        write_records_csv(records, paths["records"])
        write_aggregate_csv(rows, paths["aggregate"])
        paths["manifest"].write_text(
            json.dumps(_manifest_payload(config), indent=2) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise OSError(f"failed writing sweep outputs under {out_dir}: {exc}") from exc
    return paths


def load_manifest(path) -> SweepConfig:
    """Rebuild a SweepConfig from a manifest, verifying the instance checksum.

    A checksum mismatch is a hard error: the sweep would not reproduce.
    """
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    cfg = doc["config"]
    config = SweepConfig(
        instance_path=cfg["instance_path"],
        n_blocks=cfg["n_blocks"],
        time_grid=tuple(cfg["time_grid"]),
        samples_per_time=cfg["samples_per_time"],
        init_kind=cfg["init_kind"],
        k=cfg["k"],
        master_seed=cfg["master_seed"],
        output_path=cfg["output_path"],
        parallelism=cfg["parallelism"],
    )
    expected = doc["instance_sha256"]
    actual = instance_checksum(config.instance_path)
    if actual != expected:
        raise ValueError(
            f"instance checksum mismatch for {config.instance_path}: "
            f"manifest has {expected}, file has {actual}"
        )
    return config


def replay(manifest_path, output_path=None) -> dict:
    """Re-run a sweep from its manifest; returns the written paths."""
    config = load_manifest(manifest_path)
    if output_path is not None:
        config = replace(config, output_path=str(output_path))
    records = run_sweep(config)
    rows = aggregate(records)
    return persist(rows, records, config)
