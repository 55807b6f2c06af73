"""Compiled inner loops for block evolution.

One code path applies blocks everywhere (full evolutions, cached-prefix
replays inside the optimizer, the public single-block operations), which is
what makes resumed evolutions bit-identical to evolving from scratch: the
same floating-point operations run in the same order.

Conventions fixed here:

* a constraint block multiplies amplitude x by ``exp(+1j * diag[x] * dt)``
  (the caller passes the precomputed phase vector);
* a mixer block applies ``cos(dt)*I + 1j*sin(dt)*X`` to every qubit, qubit q
  living at bit position ``n - 1 - q`` (variable 0 is the most significant
  bit of the basis index).
"""

from __future__ import annotations

from numba import njit


@njit(cache=True)
def phase_block(amps, phases):
    """In-place elementwise phase multiply."""
    for i in range(amps.size):
        amps[i] *= phases[i]


@njit(cache=True)
def mixer_block(amps, n_qubits, cos_dt, sin_dt):
    """In-place application of the per-qubit rotation cos*I + i*sin*X."""
    dim = amps.size
    js = 1j * sin_dt
    for q in range(n_qubits):
        stride = 1 << (n_qubits - 1 - q)
        step = stride << 1
        for base in range(0, dim, step):
            for i0 in range(base, base + stride):
                i1 = i0 + stride
                a0 = amps[i0]
                a1 = amps[i1]
                amps[i0] = cos_dt * a0 + js * a1
                amps[i1] = js * a0 + cos_dt * a1


@njit(cache=True)
def apply_blocks(amps, blocks, phases, n_qubits, cos_dt, sin_dt):
    """Apply a +1/-1 block sequence in order (+1 = phase, -1 = mixer)."""
    for b in blocks:
        if b > 0:
            phase_block(amps, phases)
        else:
            mixer_block(amps, n_qubits, cos_dt, sin_dt)


@njit(cache=True)
def apply_blocks_recording(prefix, blocks, phases, n_qubits, cos_dt, sin_dt, start):
    """Fill ``prefix[j+1]`` with the state after block j, for j >= start.

    ``prefix`` has shape (n_blocks + 1, dim); row ``start`` must already hold
    the state before block ``start``.
    """
    dim = prefix.shape[1]
    for j in range(start, blocks.size):
        row = prefix[j]
        nxt = prefix[j + 1]
        for i in range(dim):
            nxt[i] = row[i]
        if blocks[j] > 0:
            phase_block(nxt, phases)
        else:
            mixer_block(nxt, n_qubits, cos_dt, sin_dt)


@njit(cache=True)
def expectation_value(amps, diag):
    """Sum of |amps[x]|^2 * diag[x] with a fixed left-to-right order."""
    total = 0.0
    for i in range(amps.size):
        a = amps[i]
        total += (a.real * a.real + a.imag * a.imag) * diag[i]
    return total
