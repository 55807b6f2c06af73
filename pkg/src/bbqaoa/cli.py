"""Command-line front end.

Subcommands: generate, optimize, sweep, aggregate, smooth, translate, serve.
stdout carries data, stderr carries diagnostics; exit codes are 0 (success),
2 (validation error, including bad flags and malformed inputs) and
1 (runtime error such as I/O failure).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__, harness
from .optimizer import init_distribution, sample_initial, stochastic_descent
from .protocol import Protocol, smooth, to_standard_qaoa
from .sat import brute_force_cmax, build_diagonal, load_instance, random_instance, save_instance


def _parse_times(text: str) -> tuple:
    """Accept 'start:stop:step' (stop inclusive) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"time range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("time range step must be positive")
        return tuple(float(t) for t in np.arange(start, stop + step / 2, step))
    return tuple(float(p) for p in text.split(","))


def _print_translation(proto: Protocol, out) -> None:
    angles = to_standard_qaoa(proto)
    print(f"p={angles.p}", file=out)
    for i, (gamma, beta) in enumerate(angles.layers, start=1):
        print(f"layer {i}: gamma={gamma!r} beta={beta!r}", file=out)


def _cmd_generate(args) -> int:
    rng = np.random.default_rng(args.seed)
    instance = random_instance(args.n_vars, args.n_clauses, rng)
    save_instance(instance, args.out)
    print(brute_force_cmax(instance))
    return 0


def _cmd_optimize(args) -> int:
    instance = load_instance(args.instance)
    diag = build_diagonal(instance)
    c_max = brute_force_cmax(instance)
    rng = np.random.default_rng(args.seed)
    if args.protocol is not None:
        initial = Protocol.from_string(args.protocol, args.time)
        if args.blocks is not None and args.blocks != initial.n_blocks:
            raise ValueError(
                f"--blocks {args.blocks} conflicts with --protocol of length {initial.n_blocks}"
            )
    else:
        if args.blocks is None:
            raise ValueError("either --blocks or --protocol is required")
        initial = sample_initial(init_distribution(args.init), args.blocks, args.time, rng)
    result = stochastic_descent(initial, args.k, diag, c_max, rng)
    print(f"initial_objective={result.objective_trajectory[0]!r}")
    print(f"final_objective={result.final_objective!r}")
    print(f"accepted_updates={result.accepted_updates}")
    print(f"evaluations={result.evaluations}")
    print(f"initial_protocol={initial.to_string()}")
    print("initial_translation:")
    _print_translation(initial, sys.stdout)
    print(f"final_protocol={result.final_protocol.to_string()}")
    print("final_translation:")
    _print_translation(result.final_protocol, sys.stdout)
    return 0


def _cmd_sweep(args) -> int:
    if args.manifest is not None:
        paths = harness.replay(args.manifest, output_path=args.out_dir)
    else:
        missing = [
            name
            for name, value in (("--instance", args.instance), ("--out-dir", args.out_dir))
            if value is None
        ]
        if missing:
            raise ValueError(f"sweep requires {' and '.join(missing)} (or --manifest)")
        config = harness.SweepConfig(
            instance_path=args.instance,
            n_blocks=args.blocks,
            time_grid=_parse_times(args.times),
            samples_per_time=args.samples,
            init_kind=init_distribution(args.init).kind,
            k=args.k,
            master_seed=args.seed,
            output_path=args.out_dir,
            parallelism=args.parallelism,
        )
        records = harness.run_sweep(config)
        rows = harness.aggregate(records)
        paths = harness.persist(rows, records, config)
    for name in ("records", "aggregate", "manifest"):
        print(paths[name])
    return 0


def _cmd_aggregate(args) -> int:
    records = harness.read_records_csv(args.records)
    rows = harness.aggregate(records)
    if args.out is not None:
        harness.write_aggregate_csv(rows, args.out)
        print(args.out)
    else:
        print(harness.AGGREGATE_HEADER)
        for row in rows:
            print(
                ",".join(
                    repr(v)
                    for v in (
                        row.T,
                        row.p5,
                        row.p25,
                        row.p50,
                        row.p75,
                        row.p95,
                        row.base_p50,
                        row.correlator,
                        row.mean_iterations,
                    )
                )
            )
    return 0


def _cmd_smooth(args) -> int:
    proto = Protocol.from_string(args.protocol, 0.0)
    smoothed = smooth(proto, args.window)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("index,value\n")
            for i, v in enumerate(smoothed.values):
                fh.write(f"{i},{float(v)!r}\n")
        print(args.out)
    else:
        print(",".join(f"{v:g}" for v in smoothed.values))
    return 0


def _cmd_translate(args) -> int:
    _print_translation(Protocol.from_string(args.protocol, args.time), sys.stdout)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("bbqaoa.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bbqaoa", description=__doc__)
    parser.add_argument("--version", action="version", version=f"bbqaoa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random instance file; prints its C_max")
    p.add_argument("--n-vars", type=int, required=True)
    p.add_argument("--n-clauses", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("optimize", help="run stochastic descent on one instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--blocks", type=int, default=None)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--init", default="uniform", choices=["adiabatic", "uniform", "anti-adiabatic"])
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--protocol", default=None, help="E/X string overriding random initialization")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("sweep", help="run a seeded time sweep and persist records/aggregate/manifest")
    p.add_argument("--instance", default=None)
    p.add_argument("--times", default="0:10:0.25", help="start:stop:step or comma-separated list")
    p.add_argument("--blocks", type=int, default=200)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--init", default="uniform", choices=["adiabatic", "uniform", "anti-adiabatic"])
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--manifest", default=None, help="replay an earlier sweep from its manifest")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("aggregate", help="aggregate a records CSV into per-time statistics")
    p.add_argument("records")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_aggregate)

    p = sub.add_parser("smooth", help="rolling average of a protocol string")
    p.add_argument("--protocol", required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--out", default=None, help="write index,value CSV instead of printing")
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("translate", help="run-length encode a protocol into QAOA angles")
    p.add_argument("--protocol", required=True)
    p.add_argument("--time", type=float, required=True)
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
