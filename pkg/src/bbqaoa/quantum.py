"""Exact n-qubit state vectors and the two block evolutions.

Sign conventions: both exponentials carry +i, i.e. a constraint block is
exp(+i*E*dt) and a mixer block is the n-fold tensor power of
exp(+i*dt*X) = cos(dt)*I + i*sin(dt)*X. Variable x_0 occupies the leftmost
tensor slot, so the basis index of an assignment is sum_i x_i * 2^(n-1-i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, SizeError

MAX_QUBITS = 24


@dataclass(frozen=True, eq=False)
class StateVector:
    """A pure n-qubit state: 2^n complex amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise SizeError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size != 1 << self.n_qubits:
            raise DimensionMismatchError(
                f"expected {1 << self.n_qubits} amplitudes for {self.n_qubits} qubits, "
                f"got shape {np.shape(self.amplitudes)}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _diag_values(diag) -> np.ndarray:
    """Accept a DiagonalHamiltonian or a plain 1-D array of diagonal entries."""
    values = getattr(diag, "values", diag)
    return np.asarray(values)


def _check_dims(state: StateVector, values: np.ndarray) -> None:
    if values.ndim != 1 or values.size != state.dim:
        raise DimensionMismatchError(
            f"diagonal has {values.size} entries, state has {state.dim} amplitudes"
        )


def _check_dt(dt: float) -> float:
    dt = float(dt)
    if not math.isfinite(dt) or dt < 0.0:
        raise ValueError(f"block time must be finite and nonnegative, got {dt}")
    return dt


def uniform_superposition(n_qubits: int) -> StateVector:
    """H^(tensor n) acting on the all-zeros state: every amplitude 2^(-n/2)."""
    if not isinstance(n_qubits, (int, np.integer)) or not 1 <= n_qubits <= MAX_QUBITS:
        raise SizeError(f"n_qubits must be an integer in [1, {MAX_QUBITS}], got {n_qubits!r}")
    amp = 2.0 ** (-n_qubits / 2)
    return StateVector(int(n_qubits), np.full(1 << n_qubits, amp, dtype=np.complex128))


def apply_constraint_phase(state: StateVector, diag, dt: float) -> StateVector:
    """Advance the phase of amplitude x by diag[x] * dt; moduli untouched."""
    dt = _check_dt(dt)
    values = _diag_values(diag)
    _check_dims(state, values)
    out = state.amplitudes.copy()
    _kernels.phase_block(out, np.exp(1j * dt * values.astype(np.float64)))
    return StateVector(state.n_qubits, out)


def apply_mixer(state: StateVector, dt: float) -> StateVector:
    """Apply exp(+i*dt*X) = cos(dt)*I + i*sin(dt)*X to every qubit."""
    dt = _check_dt(dt)
    out = state.amplitudes.copy()
    _kernels.mixer_block(out, state.n_qubits, math.cos(dt), math.sin(dt))
    return StateVector(state.n_qubits, out)


def expectation(state: StateVector, diag) -> float:
    """<psi|E|psi> for a diagonal E: sum of |amp[x]|^2 * diag[x]."""
    values = _diag_values(diag)
    _check_dims(state, values)
    return float(_kernels.expectation_value(state.amplitudes, values.astype(np.float64)))
