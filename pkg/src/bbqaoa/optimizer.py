"""Stochastic descent over block flips (SD_k) and its initializations.

The descent repeatedly shuffles the list of all flip sets of size <= k,
scans it in order, moves to the first candidate whose objective is strictly
greater, and restarts the scan; it terminates when a full pass finds no
improvement, i.e. at a k-local optimum. Comparisons are strict float '>'
with no epsilon, so ties are never accepted and the walk always terminates.

Candidate objectives are evaluated by replaying evolution from the first
flipped block using cached prefix states. Both the cache and the replay run
through the same compiled per-block kernels as a from-scratch evolution, so
the replayed objective is bit-identical to evaluating the flipped protocol
directly (covered by tests).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .protocol import Protocol, phase_table
from .quantum import _diag_values, uniform_superposition

INIT_KINDS = ("adiabatic", "uniform", "anti-adiabatic")


@dataclass(frozen=True)
class InitDistribution:
    """Per-block probability that a block is +1 (the constraint Hamiltonian).

    With blocks indexed 1..N_b: adiabatic uses i/N_b (mixer early, constraint
    late), uniform uses 1/2, anti-adiabatic uses 1 - i/N_b.
    """

    kind: str

    def __post_init__(self):
        if self.kind not in INIT_KINDS:
            raise ValueError(f"unknown initialization {self.kind!r}; choose from {INIT_KINDS}")

    def bias(self, block: int, n_blocks: int) -> float:
        """Probability that 1-indexed block i comes out +1."""
        if not 1 <= block <= n_blocks:
            raise ValueError(f"block index must be in [1, {n_blocks}], got {block}")
        if self.kind == "adiabatic":
            return block / n_blocks
        if self.kind == "anti-adiabatic":
            return 1.0 - block / n_blocks
        return 0.5

    def bias_vector(self, n_blocks: int) -> np.ndarray:
        i = np.arange(1, n_blocks + 1, dtype=np.float64)
        if self.kind == "adiabatic":
            return i / n_blocks
        if self.kind == "anti-adiabatic":
            return 1.0 - i / n_blocks
        return np.full(n_blocks, 0.5)


ADIABATIC = InitDistribution("adiabatic")
UNIFORM = InitDistribution("uniform")
ANTI_ADIABATIC = InitDistribution("anti-adiabatic")


def init_distribution(kind: str) -> InitDistribution:
    """Accepts the CLI spellings, normalizing '_' to '-'."""
    return InitDistribution(str(kind).replace("_", "-"))


@dataclass(frozen=True)
class SDResult:
    """Outcome of one stochastic-descent run.

    accepted_updates counts accepted flips (the walk length); evaluations
    counts candidate objective evaluations, which the termination pass keeps
    strictly larger. objective_trajectory starts at the initial objective and
    appends every accepted value, so it is strictly increasing.
    """

    final_protocol: Protocol
    final_objective: float
    accepted_updates: int
    evaluations: int
    objective_trajectory: tuple


def sample_initial(
    dist: InitDistribution, n_blocks: int, total_time: float, rng: np.random.Generator
) -> Protocol:
    """Draw each block independently: +1 with probability bias(i, N_b)."""
    if n_blocks < 1:
        raise ValueError(f"n_blocks must be positive, got {n_blocks}")
    u = rng.random(n_blocks)
    blocks = np.where(u < dist.bias_vector(n_blocks), 1, -1)
    return Protocol(tuple(int(b) for b in blocks), total_time)


def enumerate_updates(n_blocks: int, k: int) -> list:
    """All nonempty flip sets of size <= k, as sorted index tuples."""
    if not 1 <= k <= n_blocks:
        raise ValueError(f"k must be in [1, {n_blocks}], got {k}")
    out = []
    for size in range(1, k + 1):
        out.extend(itertools.combinations(range(n_blocks), size))
    return out


class _FlipEvaluator:
    """Objective evaluation with cached prefix states for a fixed instance/T.

    prefix[j] holds the state before block j; flipping blocks at indices
    >= j0 only requires replaying from prefix[j0].
    """

    def __init__(self, diag, n_blocks: int, total_time: float, c_max: int):
        values = np.ascontiguousarray(_diag_values(diag), dtype=np.int64)
        self.n_qubits = int(values.size).bit_length() - 1
        actual_max = int(values.max())
        if actual_max < 1:
            raise ValueError("objective undefined: no assignment satisfies any clause")
        if int(c_max) != actual_max:
            raise ValueError(f"c_max={c_max} does not match the diagonal's maximum {actual_max}")
        self.c_max = int(c_max)
        self.n_blocks = int(n_blocks)
        self.dt = float(total_time) / int(n_blocks)
        self.phases = phase_table(values, self.dt)
        self.cos_dt = math.cos(self.dt)
        self.sin_dt = math.sin(self.dt)
        self.diag_f = values.astype(np.float64)
        dim = 1 << self.n_qubits
        self.prefix = np.empty((self.n_blocks + 1, dim), dtype=np.complex128)
        self.scratch = np.empty(dim, dtype=np.complex128)
        self.blocks = np.empty(self.n_blocks, dtype=np.int8)

    def set_protocol(self, blocks: np.ndarray) -> float:
        """Install a protocol, fill the prefix cache, return its objective."""
        if blocks.size != self.n_blocks:
            raise ValueError(f"expected {self.n_blocks} blocks, got {blocks.size}")
        self.blocks[:] = blocks
        self.prefix[0] = uniform_superposition(self.n_qubits).amplitudes
        _kernels.apply_blocks_recording(
            self.prefix, self.blocks, self.phases, self.n_qubits, self.cos_dt, self.sin_dt, 0
        )
        return self._objective_of(self.prefix[self.n_blocks])

    def _objective_of(self, amps: np.ndarray) -> float:
        return float(_kernels.expectation_value(amps, self.diag_f)) / self.c_max

    def objective_with_flips(self, flips) -> float:
        """Objective of the current protocol with the given blocks toggled.

        ``flips`` must be ascending (enumerate_updates emits sorted tuples).
        """
        j0 = flips[0]
        suffix = self.blocks[j0:].copy()
        for j in flips:
            suffix[j - j0] = -suffix[j - j0]
        buf = self.scratch
        np.copyto(buf, self.prefix[j0])
        _kernels.apply_blocks(buf, suffix, self.phases, self.n_qubits, self.cos_dt, self.sin_dt)
        return self._objective_of(buf)

    def accept(self, flips) -> None:
        """Toggle the flipped blocks and refresh the prefix cache from there."""
        for j in flips:
            self.blocks[j] = -self.blocks[j]
        _kernels.apply_blocks_recording(
            self.prefix, self.blocks, self.phases, self.n_qubits, self.cos_dt, self.sin_dt, flips[0]
        )

    def protocol(self, total_time: float) -> Protocol:
        return Protocol(tuple(int(b) for b in self.blocks), total_time)


def stochastic_descent(
    initial: Protocol,
    k: int,
    diag,
    c_max: int,
    rng: np.random.Generator,
) -> SDResult:
    """Run SD_k from the given protocol; see the module docstring for the rule."""
    updates = enumerate_updates(initial.n_blocks, k)
    evaluator = _FlipEvaluator(diag, initial.n_blocks, initial.total_time, c_max)
    current = evaluator.set_protocol(initial.block_array())
    trajectory = [current]
    order = np.arange(len(updates))
    accepted = 0
    evaluations = 0
    improved = True
    while improved:
        rng.shuffle(order)
        improved = False
        for idx in order:
            flips = updates[idx]
            evaluations += 1
            candidate = evaluator.objective_with_flips(flips)
            if candidate > current:
                evaluator.accept(flips)
                current = candidate
                trajectory.append(candidate)
                accepted += 1
                improved = True
                break
    return SDResult(
        final_protocol=evaluator.protocol(initial.total_time),
        final_objective=current,
        accepted_updates=accepted,
        evaluations=evaluations,
        objective_trajectory=tuple(trajectory),
    )


def is_local_optimum(protocol: Protocol, k: int, diag, c_max: int) -> bool:
    """True iff no flip set of size <= k strictly improves the objective."""
    evaluator = _FlipEvaluator(diag, protocol.n_blocks, protocol.total_time, c_max)
    base = evaluator.set_protocol(protocol.block_array())
    for flips in enumerate_updates(protocol.n_blocks, k):
        if evaluator.objective_with_flips(flips) > base:
            return False
    return True
