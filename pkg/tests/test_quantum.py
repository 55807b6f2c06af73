import numpy as np
import pytest

from bbqaoa import (
    DimensionMismatchError,
    SizeError,
    StateVector,
    apply_constraint_phase,
    apply_mixer,
    expectation,
    uniform_superposition,
)


def random_state(n_qubits, rng):
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    amps /= np.linalg.norm(amps)
    return StateVector(n_qubits, amps)


def dense_mixer(n_qubits, dt):
    rot = np.array(
        [[np.cos(dt), 1j * np.sin(dt)], [1j * np.sin(dt), np.cos(dt)]], dtype=complex
    )
    out = np.array([[1.0 + 0j]])
    for _ in range(n_qubits):
        out = np.kron(out, rot)
    return out


@pytest.mark.parametrize("n", [1, 2, 10])
def test_uniform_superposition_amplitudes(n):
    state = uniform_superposition(n)
    assert state.amplitudes.size == 1 << n
    assert np.all(state.amplitudes == 2.0 ** (-n / 2))
    assert abs(state.norm() - 1.0) <= 1e-15


@pytest.mark.parametrize("n", [0, -3, 25])
def test_uniform_superposition_rejects_bad_sizes(n):
    with pytest.raises(SizeError):
        uniform_superposition(n)


def test_state_vector_validates_length():
    with pytest.raises(DimensionMismatchError):
        StateVector(2, np.ones(3, dtype=complex))


def test_constraint_phase_dt_zero_is_identity(rng):
    state = random_state(3, rng)
    diag = rng.integers(0, 5, size=8)
    out = apply_constraint_phase(state, diag, 0.0)
    assert np.array_equal(out.amplitudes, state.amplitudes)


def test_constraint_phase_pi_flips_marked_amplitude():
    state = uniform_superposition(1)
    out = apply_constraint_phase(state, np.array([0, 1]), np.pi)
    expected = np.array([1.0, -1.0]) / np.sqrt(2)
    assert np.abs(out.amplitudes - expected).max() <= 1e-15


def test_constraint_phase_preserves_probabilities(rng):
    for _ in range(20):
        n = int(rng.integers(1, 5))
        state = random_state(n, rng)
        diag = rng.integers(0, 30, size=1 << n)
        out = apply_constraint_phase(state, diag, float(rng.uniform(0, 10)))
        assert np.abs(out.probabilities() - state.probabilities()).max() <= 1e-14


def test_constraint_phase_dimension_mismatch(rng):
    state = random_state(2, rng)
    with pytest.raises(DimensionMismatchError):
        apply_constraint_phase(state, np.arange(8), 0.1)


def test_negative_dt_rejected(rng):
    state = random_state(1, rng)
    with pytest.raises(ValueError):
        apply_mixer(state, -0.5)
    with pytest.raises(ValueError):
        apply_constraint_phase(state, np.array([0, 1]), -1e-9)


def test_mixer_dt_zero_is_identity(rng):
    state = random_state(4, rng)
    out = apply_mixer(state, 0.0)
    assert np.array_equal(out.amplitudes, state.amplitudes)


def test_mixer_rotates_basis_state():
    state = StateVector(1, np.array([1.0, 0.0], dtype=complex))
    out = apply_mixer(state, np.pi / 2)
    assert np.abs(out.amplitudes - np.array([0.0, 1j])).max() <= 1e-15


def test_mixer_fixes_uniform_superposition_up_to_global_phase(rng):
    # |+...+> is an eigenvector of every X, so only a global phase appears.
    for n in (1, 3, 6):
        state = uniform_superposition(n)
        dt = float(rng.uniform(0, 4))
        out = apply_mixer(state, dt)
        assert np.abs(out.amplitudes - np.exp(1j * n * dt) * state.amplitudes).max() <= 1e-12
        assert np.abs(out.probabilities() - state.probabilities()).max() <= 1e-14


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mixer_matches_dense_tensor_power(n, rng):
    for _ in range(10):
        dt = float(rng.uniform(0, 5))
        state = random_state(n, rng)
        out = apply_mixer(state, dt)
        ref = dense_mixer(n, dt) @ state.amplitudes
        assert np.abs(out.amplitudes - ref).max() <= 1e-12


def test_expectation_on_basis_states(rng):
    diag = rng.integers(0, 9, size=8)
    for x in range(8):
        amps = np.zeros(8, dtype=complex)
        amps[x] = 1.0
        assert expectation(StateVector(3, amps), diag) == diag[x]


def test_expectation_zero_diagonal(rng):
    state = random_state(3, rng)
    assert expectation(state, np.zeros(8, dtype=int)) == 0.0


def test_expectation_uniform_superposition_is_mean(clauses10):
    _, diag, _ = clauses10
    value = expectation(uniform_superposition(10), diag)
    assert value == 7.5


def test_expectation_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatchError):
        expectation(random_state(2, rng), np.arange(16))


def test_evolution_order_matters(rng):
    # Constraint and mixer blocks do not commute in general.
    diag = np.array([0, 1, 2, 3])
    state = random_state(2, rng)
    ab = apply_mixer(apply_constraint_phase(state, diag, 0.7), 0.7)
    ba = apply_constraint_phase(apply_mixer(state, 0.7), diag, 0.7)
    assert np.abs(ab.amplitudes - ba.amplitudes).max() > 1e-6
