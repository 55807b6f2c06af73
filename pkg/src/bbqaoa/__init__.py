"""Bang-bang QAOA on MAX-2-SAT: state-vector simulation, stochastic descent,
and seeded experiment sweeps.

The package is organised around five layers:

* :mod:`bbqaoa.quantum` -- exact state vectors and the two block evolutions
  (diagonal phase, transverse-field mixer).
* :mod:`bbqaoa.sat` -- MAX-2-SAT instances, file I/O, random generation,
  diagonal Hamiltonians and the brute-force C_max scan.
* :mod:`bbqaoa.protocol` -- bang-bang protocols, evolution to an objective
  value, translation to standard (gamma, beta) QAOA angles, correlator and
  smoothing statistics.
* :mod:`bbqaoa.optimizer` -- stochastic descent over block flips with the
  three initialization distributions.
* :mod:`bbqaoa.harness` -- seeded time sweeps, aggregation, persistence.

:mod:`bbqaoa.service` exposes the same operations over HTTP (FastAPI), and
:mod:`bbqaoa.cli` is a thin command-line shell.
"""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatchError,
    InfeasibleInstanceError,
    ParseError,
    SizeError,
)
from .quantum import (
    MAX_QUBITS,
    StateVector,
    apply_constraint_phase,
    apply_mixer,
    expectation,
    uniform_superposition,
)
from .sat import (
    Clause,
    DiagonalHamiltonian,
    ProblemInstance,
    brute_force_cmax,
    build_diagonal,
    bundled_instance,
    bundled_instance_path,
    clause_satisfied,
    load_instance,
    parse_instance,
    random_instance,
    save_instance,
    serialize_instance,
)
from .protocol import (
    Protocol,
    QaoaAngles,
    SmoothedProtocol,
    correlator,
    evolve,
    evolve_angles,
    objective,
    smooth,
    to_standard_qaoa,
)
from .optimizer import (
    InitDistribution,
    SDResult,
    enumerate_updates,
    init_distribution,
    is_local_optimum,
    sample_initial,
    stochastic_descent,
)
from .harness import (
    AggregateRow,
    SweepConfig,
    SweepRecord,
    aggregate,
    persist,
    run_sweep,
)

__all__ = [
    "__version__",
    "AggregateRow",
    "Clause",
    "DiagonalHamiltonian",
    "DimensionMismatchError",
    "InfeasibleInstanceError",
    "InitDistribution",
    "MAX_QUBITS",
    "ParseError",
    "ProblemInstance",
    "Protocol",
    "QaoaAngles",
    "SDResult",
    "SizeError",
    "SmoothedProtocol",
    "StateVector",
    "SweepConfig",
    "SweepRecord",
    "aggregate",
    "apply_constraint_phase",
    "apply_mixer",
    "brute_force_cmax",
    "build_diagonal",
    "bundled_instance",
    "bundled_instance_path",
    "clause_satisfied",
    "correlator",
    "enumerate_updates",
    "evolve",
    "evolve_angles",
    "expectation",
    "init_distribution",
    "is_local_optimum",
    "load_instance",
    "objective",
    "parse_instance",
    "persist",
    "random_instance",
    "run_sweep",
    "sample_initial",
    "save_instance",
    "serialize_instance",
    "smooth",
    "stochastic_descent",
    "to_standard_qaoa",
    "uniform_superposition",
]
