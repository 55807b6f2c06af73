"""Bang-bang protocols: evolution, angle translation, and set statistics.

A protocol is a length-N_b sequence over {-1, +1} plus a total time T; each
block lasts T / N_b. +1 applies the diagonal constraint Hamiltonian, -1 the
transverse-field mixer. Blocks apply left to right (index 0 first). The
text form maps +1 to 'E' and -1 to 'X'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, ParseError
from .quantum import MAX_QUBITS, StateVector, _diag_values, uniform_superposition

CONSTRAINT = 1
MIXER = -1

_BLOCK_CHARS = {CONSTRAINT: "E", MIXER: "X"}


@dataclass(frozen=True)
class Protocol:
    """Value object keyed by (blocks, total_time); equality is exact."""

    blocks: tuple
    total_time: float

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if len(blocks) < 1:
            raise ValueError("a protocol needs at least one block")
        if any(b not in (CONSTRAINT, MIXER) for b in blocks):
            raise ValueError("protocol blocks must be +1 or -1")
        total = float(self.total_time)
        if not math.isfinite(total) or total < 0.0:
            raise ValueError(f"total_time must be finite and nonnegative, got {total}")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "total_time", total)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def dt(self) -> float:
        return self.total_time / self.n_blocks

    @classmethod
    def from_string(cls, text: str, total_time: float) -> "Protocol":
        """Parse the E/X text form (E = constraint, X = mixer)."""
        blocks = []
        for pos, ch in enumerate(text):
            if ch == "E":
                blocks.append(CONSTRAINT)
            elif ch == "X":
                blocks.append(MIXER)
            else:
                raise ParseError(f"protocol strings use 'E'/'X' only; found {ch!r} at position {pos}")
        if not blocks:
            raise ParseError("empty protocol string")
        return cls(tuple(blocks), total_time)

    def to_string(self) -> str:
        return "".join(_BLOCK_CHARS[b] for b in self.blocks)

    def block_array(self) -> np.ndarray:
        return np.array(self.blocks, dtype=np.int8)


@dataclass(frozen=True)
class QaoaAngles:
    """Standard-form QAOA durations: per layer, constraint time then mixer time."""

    layers: tuple

    def __post_init__(self):
        layers = tuple((float(g), float(b)) for g, b in self.layers)
        if not layers:
            raise ValueError("at least one layer required")
        object.__setattr__(self, "layers", layers)

    @property
    def p(self) -> int:
        return len(self.layers)

    @property
    def total_time(self) -> float:
        return float(sum(g + b for g, b in self.layers))


@dataclass(frozen=True, eq=False)
class SmoothedProtocol:
    """Rolling block average: N_b - w + 1 values in [-1, 1]."""

    values: np.ndarray
    window: int

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))


@lru_cache(maxsize=64)
def _phase_table_cached(diag_bytes: bytes, size: int, dt: float) -> np.ndarray:
    values = np.frombuffer(diag_bytes, dtype=np.int64, count=size)
    table = np.exp(1j * dt * values.astype(np.float64))
    table.flags.writeable = False
    return table


def phase_table(diag, dt: float) -> np.ndarray:
    """exp(1j * dt * diag), memoized per (diag, dt); bit-identical to direct."""
    values = np.ascontiguousarray(_diag_values(diag), dtype=np.int64)
    return _phase_table_cached(values.tobytes(), values.size, float(dt))


def _qubit_count(values: np.ndarray) -> int:
    n = int(values.size).bit_length() - 1
    if values.ndim != 1 or values.size != 1 << n:
        raise DimensionMismatchError(f"diagonal length {values.size} is not a power of two")
    if n > MAX_QUBITS:
        raise DimensionMismatchError(f"diagonal implies {n} qubits, limit is {MAX_QUBITS}")
    return n


def evolve(protocol: Protocol, diag) -> StateVector:
    """Evolve the uniform superposition through the protocol's blocks."""
    values = _diag_values(diag)
    n = _qubit_count(values)
    dt = protocol.dt
    amps = uniform_superposition(n).amplitudes
    _kernels.apply_blocks(
        amps, protocol.block_array(), phase_table(values, dt), n, math.cos(dt), math.sin(dt)
    )
    return StateVector(n, amps)


def evolve_angles(angles: QaoaAngles, diag) -> StateVector:
    """Standard QAOA evolution: per layer, constraint for gamma then mixer for beta."""
    values = _diag_values(diag)
    n = _qubit_count(values)
    amps = uniform_superposition(n).amplitudes
    diag_f = values.astype(np.float64)
    for gamma, beta in angles.layers:
        if gamma < 0.0 or beta < 0.0:
            raise ValueError("angle durations must be nonnegative")
        _kernels.phase_block(amps, np.exp(1j * gamma * diag_f))
        _kernels.mixer_block(amps, n, math.cos(beta), math.sin(beta))
    return StateVector(n, amps)


def objective(protocol: Protocol, diag, c_max: int) -> float:
    """Expected approximation ratio <psi|E|psi> / C_max of the evolved state."""
    values = _diag_values(diag)
    actual_max = int(values.max())
    if actual_max < 1:
        raise ValueError("objective undefined: no assignment satisfies any clause")
    if int(c_max) != actual_max:
        raise ValueError(f"c_max={c_max} does not match the diagonal's maximum {actual_max}")
    state = evolve(protocol, values)
    return float(_kernels.expectation_value(state.amplitudes, values.astype(np.float64))) / c_max


def runs(protocol: Protocol) -> list:
    """Maximal constant runs as (block_value, length) pairs, in order."""
    out = []
    for b in protocol.blocks:
        if out and out[-1][0] == b:
            out[-1][1] += 1
        else:
            out.append([b, 1])
    return [(b, length) for b, length in out]


def to_standard_qaoa(protocol: Protocol) -> QaoaAngles:
    """Run-length encode into (constraint, mixer) durations.

    Standard form applies the constraint phase first, so a protocol that
    begins with the mixer gets a leading zero-duration constraint segment;
    similarly a trailing constraint run gets a zero-duration mixer segment.
    """
    dt = protocol.dt
    segs = runs(protocol)
    layers = []
    i = 0
    while i < len(segs):
        if segs[i][0] == CONSTRAINT:
            gamma = segs[i][1] * dt
            i += 1
            beta = 0.0
            if i < len(segs):
                beta = segs[i][1] * dt
                i += 1
        else:
            gamma = 0.0
            beta = segs[i][1] * dt
            i += 1
        layers.append((gamma, beta))
    return QaoaAngles(tuple(layers))


def correlator(protocols) -> float:
    """1 - mean over blocks of the squared empirical block average.

    Zero exactly when all protocols in the collection are identical; at most
    one. Duplicates are meaningful, so pass a sequence, not a deduplicated set.
    """
    ps = list(protocols)
    if not ps:
        raise ValueError("correlator needs at least one protocol")
    n_blocks = ps[0].n_blocks
    if any(p.n_blocks != n_blocks for p in ps):
        raise ValueError("all protocols must have the same number of blocks")
    mat = np.array([p.blocks for p in ps], dtype=np.float64)
    block_means = mat.mean(axis=0)
    return float(1.0 - np.mean(block_means**2))


def smooth(protocol: Protocol, window: int) -> SmoothedProtocol:
    """Rolling mean of the +-1 blocks over the given window."""
    window = int(window)
    if not 1 <= window <= protocol.n_blocks:
        raise ValueError(f"window must be in [1, {protocol.n_blocks}], got {window}")
    blocks = np.asarray(protocol.blocks, dtype=np.float64)
    sums = np.convolve(blocks, np.ones(window), mode="valid")
    return SmoothedProtocol(sums / window, window)
