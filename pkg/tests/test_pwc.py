import numpy as np
import pytest
from conftest import random_pure_vector

from qrfasym.pwc import (
    HistoryState,
    angle_amplitude,
    conditional_probability,
    corrupt_tick,
    gaussian_clock_state,
    history_from_projection,
    overlap_decay,
    psw_clock,
    qubit_clock,
    relational_fidelities,
    relational_state,
    schrodinger_residual,
    system_charges_from_hamiltonian,
    time_state_angle_form,
)
from qrfasym.qmat import DensityOperator, HermitianOperator, commutator_norm
from qrfasym.symmetry import ChargeSpectrum, dephase, sectors

SX = HermitianOperator(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex), (2,))


def overlap_is_one(a, b, tol=1e-10):
    return abs(abs(np.vdot(a, b)) - 1.0) < tol


# ---------------------------------------------------------------------------
# clock models
# ---------------------------------------------------------------------------


def test_psw_clock_d2_pointer_basis():
    clock = psw_clock(2)
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    minus = np.array([1.0, -1.0]) / np.sqrt(2.0)
    assert overlap_is_one(clock.time_state(0), plus)
    assert overlap_is_one(clock.time_state(1), minus)


def test_psw_clock_full_cycle_is_identity():
    clock = psw_clock(4)
    energies = np.real(np.diagonal(clock.h_r.matrix))
    u_full = np.diag(np.exp(-1j * energies * 4))
    assert np.abs(u_full - np.eye(4)).max() < 1e-12


@pytest.mark.parametrize("d", [2, 3, 8, 17])
def test_psw_clock_pointer_states_orthonormal(d):
    basis = psw_clock(d).time_basis
    assert np.abs(basis.conj().T @ basis - np.eye(d)).max() < 1e-10


@pytest.mark.parametrize("d", [3, 8])
def test_psw_clock_shift_covariance(d):
    clock = psw_clock(d)
    for k in range(d):
        advanced = clock.advance(clock.time_state(k), 1.0)
        assert np.abs(advanced - clock.time_state((k + 1) % d)).max() < 1e-10


def test_psw_clock_mutually_unbiased_with_energy_basis():
    d = 7
    basis = psw_clock(d).time_basis
    assert np.abs(np.abs(basis) - 1.0 / np.sqrt(d)).max() < 1e-12


def test_psw_clock_orbit_covariance():
    d = 6
    clock = psw_clock(d)
    # advancing an orbit state equals the orbit state at the composed time
    for t1 in (0.7, 2.0):
        for t2 in (1.3, 4.0):
            lhs = clock.advance(clock.orbit_state(t1), t2)
            rhs = clock.orbit_state(t1 + t2)
            assert np.abs(lhs - rhs).max() < 1e-10


def test_psw_clock_rejects_small_dimension():
    with pytest.raises(ValueError):
        psw_clock(1)


def test_qubit_clock_hours():
    clock = qubit_clock()
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    assert clock.hour(plus) == "12h"
    evolved = clock.advance(plus, 1.0)  # one tick is a pi lag
    assert clock.hour(evolved) == "6h"
    assert overlap_is_one(evolved, np.array([1.0, -1.0]) / np.sqrt(2.0))


def test_qubit_clock_commutator_matrix():
    clock = qubit_clock()
    comm = clock.pauli_commutator()
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    assert np.abs(comm - 2j * sy).max() < 1e-12
    # not proportional to the identity: off-diagonal entries dominate
    assert abs(comm[0, 0]) < 1e-12 and abs(comm[0, 1]) > 1.0


def test_qubit_clock_generator_pointer_expectation_vanishes():
    clock = qubit_clock()
    comm = clock.h_r.matrix @ clock.t_r.matrix - clock.t_r.matrix @ clock.h_r.matrix
    for k in (0, 1):
        state = clock.time_state(k)
        assert abs(np.vdot(state, comm @ state)) < 1e-12


# ---------------------------------------------------------------------------
# gaussian clock states
# ---------------------------------------------------------------------------


def test_gaussian_clock_state_delta_limit():
    clock = psw_clock(16)
    vec = gaussian_clock_state(clock, 7.0, 0.1)
    assert abs(np.vdot(clock.time_state(7), vec)) > 0.999


def test_gaussian_clock_state_normalized():
    clock = psw_clock(32)
    vec = gaussian_clock_state(clock, 16.0, 2.0)
    assert abs(np.linalg.norm(vec) - 1.0) < 1e-12


def test_gaussian_clock_commutator_improves_with_dimension():
    values = {}
    for d in (16, 64):
        clock = psw_clock(d)
        vec = gaussian_clock_state(clock, d / 2.0, np.sqrt(d) / 2.0)
        comm = clock.t_r.matrix @ clock.h_r.matrix - clock.h_r.matrix @ clock.t_r.matrix
        values[d] = np.vdot(vec, comm @ vec).imag
    assert abs(values[64] - 1.0) < abs(values[16] - 1.0)


def test_gaussian_clock_state_validation():
    clock = psw_clock(8)
    with pytest.raises(ValueError, match="width"):
        gaussian_clock_state(clock, 4.0, 3.0)
    with pytest.raises(ValueError, match="center"):
        gaussian_clock_state(clock, 9.0, 1.0)


# ---------------------------------------------------------------------------
# angle representation
# ---------------------------------------------------------------------------


def test_angle_amplitude_peak_value():
    d = 12
    vec = psw_clock(d).time_state(0)
    assert abs(angle_amplitude(vec, 0.0) - np.sqrt(d / (2.0 * np.pi))) < 1e-12


def test_angle_amplitude_uniform_state_first_zero():
    d = 10
    vec = psw_clock(d).time_state(0)  # the uniform superposition
    assert abs(angle_amplitude(vec, 2.0 * np.pi / d)) < 1e-12
    peak = abs(angle_amplitude(vec, 0.0)) ** 2
    assert abs(angle_amplitude(vec, np.pi / d)) ** 2 < peak


def test_angle_amplitude_two_mode_beat():
    d = 9
    vec = np.zeros(d, dtype=complex)
    vec[0] = vec[d - 1] = 1.0 / np.sqrt(2.0)
    thetas = np.linspace(0.0, 2.0 * np.pi, 57, endpoint=False)
    density = np.abs(angle_amplitude(vec, thetas)) ** 2
    expected = (1.0 + np.cos((d - 1) * thetas)) / (2.0 * np.pi)
    assert np.abs(density - expected).max() < 1e-12


def test_angle_amplitude_matches_closed_form_everywhere():
    rng = np.random.default_rng(41)
    d = 11
    clock = psw_clock(d)
    k = 4
    vec = clock.time_state(k)
    thetas = rng.uniform(0.0, 2.0 * np.pi, size=1000)
    # force coverage of the removable singularities
    thetas[:d] = 2.0 * np.pi * np.arange(d) / d
    sampled = np.abs(angle_amplitude(vec, thetas))
    closed = np.abs(time_state_angle_form(d, k, thetas))
    assert np.abs(sampled - closed).max() < 1e-10


# ---------------------------------------------------------------------------
# history states
# ---------------------------------------------------------------------------


def plus_history(d=8):
    clock = psw_clock(d)
    psi = np.array([1.0, 1.0]) / np.sqrt(2.0)
    return history_from_projection(psi, ChargeSpectrum((0, 1)), clock)


def test_projection_d2_hand_computation():
    history = plus_history(d=2)
    expected = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    assert overlap_is_one(history.vector, expected)


def test_projection_constraint_residual():
    rng = np.random.default_rng(42)
    d = 8
    clock = psw_clock(d)
    charges = ChargeSpectrum(tuple(int(c) for c in rng.integers(0, d, size=3)))
    psi = random_pure_vector(rng, 3)
    history = history_from_projection(psi, charges, clock)
    assert history.constraint_residual() <= 1e-10
    assert abs(np.linalg.norm(history.vector) - 1.0) < 1e-10


def test_stationary_history_is_constant():
    d = 8
    clock = psw_clock(d)
    psi = np.zeros(3)
    psi[1] = 1.0  # an energy eigenstate
    history = history_from_projection(psi, ChargeSpectrum((0, 3, 5)), clock)
    first, _ = relational_state(history, 0)
    for k in range(d):
        psi_k, weight = relational_state(history, k)
        assert weight > 0.0
        assert overlap_is_one(psi_k / np.linalg.norm(psi_k), first / np.linalg.norm(first))
    assert schrodinger_residual(history) < 1e-12


def test_relational_tick_zero_recovers_initial_state():
    history = plus_history()
    psi0, _ = relational_state(history, 0)
    assert overlap_is_one(psi0 / np.linalg.norm(psi0), np.array([1.0, 1.0]) / np.sqrt(2.0))


def test_relational_weights_are_uniform():
    d = 8
    history = plus_history(d)
    for k in range(d):
        _, weight = relational_state(history, k)
        assert abs(weight - 1.0 / d) < 1e-12


def test_relational_state_rejects_bad_tick():
    with pytest.raises(ValueError):
        relational_state(plus_history(), 8)


def test_schrodinger_residual_random_commensurate():
    rng = np.random.default_rng(43)
    d = 8
    clock = psw_clock(d)
    for _ in range(5):
        n = int(rng.integers(2, 5))
        charges = ChargeSpectrum(tuple(int(c) for c in rng.integers(0, d, size=n)))
        history = history_from_projection(random_pure_vector(rng, n), charges, clock)
        assert schrodinger_residual(history) <= 1e-9
        fidelities = relational_fidelities(history)
        assert np.abs(fidelities - 1.0).max() < 1e-9


def test_corrupted_history_is_detected():
    history = plus_history()
    corrupted = corrupt_tick(history, 3)
    assert schrodinger_residual(corrupted) > 0.1
    assert corrupted.constraint_residual() > 0.1
    assert relational_fidelities(corrupted).min() < 0.9


def test_constraint_matches_symmetry_fixed_point():
    # commuting with the cyclic charge generator and being fixed by the
    # mod-d dephasing are the same statement about a history projector
    history = plus_history()
    d = history.clock.d
    labels = history.total_charge_labels()
    generator = np.diag(labels.astype(complex))
    rho = DensityOperator.from_pure(history.vector, (history.system_dim, d))
    dec = sectors(ChargeSpectrum(tuple(int(c) for c in labels)))
    assert commutator_norm(generator, rho.matrix) < 1e-9
    assert np.abs(dephase(rho, dec).matrix - rho.matrix).max() < 1e-9

    corrupted = corrupt_tick(history, 2)
    rho_bad = DensityOperator.from_pure(corrupted.vector, (corrupted.system_dim, d))
    assert commutator_norm(generator, rho_bad.matrix) > 1e-3
    assert np.abs(dephase(rho_bad, dec).matrix - rho_bad.matrix).max() > 1e-3


def test_history_rejects_unnormalized_vector():
    clock = psw_clock(4)
    with pytest.raises(ValueError, match="norm"):
        HistoryState(np.ones(8), clock, ChargeSpectrum((0, 1)))


def test_history_rejects_modulus_mismatch():
    clock = psw_clock(4)
    vec = np.zeros(8)
    vec[0] = 1.0
    with pytest.raises(ValueError, match="modulus"):
        HistoryState(vec, clock, ChargeSpectrum((0, 1), modulus=3))


def test_projection_rejects_unnormalized_input():
    clock = psw_clock(2)
    with pytest.raises(ValueError, match="norm"):
        history_from_projection(np.array([1.0, 1.0]), ChargeSpectrum((0, 1)), clock)


# ---------------------------------------------------------------------------
# conditional probabilities
# ---------------------------------------------------------------------------


def test_conditional_probability_completeness():
    history = plus_history(d=4)
    observable = HermitianOperator(np.array([[0.3, 0.1], [0.1, -0.2]], dtype=complex), (2,))
    for k in range(4):
        total = sum(conditional_probability(history, observable, o, k) for o in range(2))
        assert abs(total - 1.0) < 1e-10


def test_conditional_probability_qubit_golden():
    history = plus_history(d=2)
    # outcome index 1 is the +1 eigenvalue of sigma_x
    assert abs(conditional_probability(history, SX, 1, 0) - 1.0) < 1e-10
    assert abs(conditional_probability(history, SX, 1, 1)) < 1e-10
    assert abs(conditional_probability(history, SX, 0, 1) - 1.0) < 1e-10


def test_conditional_probability_matches_born_rule():
    rng = np.random.default_rng(44)
    d = 8
    clock = psw_clock(d)
    charges = ChargeSpectrum((0, 2, 5))
    history = history_from_projection(random_pure_vector(rng, 3), charges, clock)
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    observable = HermitianOperator((g + g.conj().T) / 2.0, (3,))
    # independent oracle: eigendecompose and apply the Born rule directly
    # (random spectra are nondegenerate, so ascending order fixes the indexing)
    _, vectors = np.linalg.eigh(observable.matrix)
    for k in range(d):
        psi_k, weight = relational_state(history, k)
        psi_k = psi_k / np.sqrt(weight)
        for outcome in range(3):
            born = abs(np.vdot(vectors[:, outcome], psi_k)) ** 2
            averaged = conditional_probability(history, observable, outcome, k)
            assert abs(averaged - born) < 1e-10


def test_conditional_probability_stationary_is_tick_independent():
    d = 8
    clock = psw_clock(d)
    psi = np.zeros(2)
    psi[0] = 1.0
    history = history_from_projection(psi, ChargeSpectrum((0, 3)), clock)
    values = [conditional_probability(history, SX, 1, k) for k in range(d)]
    assert np.abs(np.array(values) - values[0]).max() < 1e-10


def test_conditional_probability_accepts_projector_outcome():
    history = plus_history(d=2)
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    projector = np.outer(plus, plus.conj())
    assert abs(conditional_probability(history, SX, projector, 0) - 1.0) < 1e-10


# ---------------------------------------------------------------------------
# overlap decay
# ---------------------------------------------------------------------------


def test_overlap_decay_at_zero():
    assert abs(overlap_decay(psw_clock(12), 0.0) - 1.0) < 1e-12


def test_overlap_decay_design_zeros():
    d = 9
    clock = psw_clock(d)
    for j in range(1, d):
        assert overlap_decay(clock, 2.0 * np.pi * j / d) < 1e-12


def test_overlap_decay_matches_dirichlet_magnitude():
    rng = np.random.default_rng(45)
    d = 13
    clock = psw_clock(d)
    for theta in rng.uniform(0.0, 2.0 * np.pi, size=50):
        expected = abs(time_state_angle_form(d, 0, theta)) * np.sqrt(2.0 * np.pi / d)
        assert abs(overlap_decay(clock, theta) - expected) < 1e-10


def test_overlap_decay_shrinks_with_dimension():
    values = [overlap_decay(psw_clock(d), 0.5) for d in (10, 50, 150)]
    assert values[0] > values[1] > values[2]


# ---------------------------------------------------------------------------
# system Hamiltonian helper
# ---------------------------------------------------------------------------


def test_system_charges_from_hamiltonian():
    d = 8
    h = np.diag(2.0 * np.pi * np.array([0.0, 3.0, 5.0]) / d)
    charges = system_charges_from_hamiltonian(h, d)
    assert charges.charges == (0, 3, 5)
    assert charges.modulus == d


def test_system_charges_reject_incompatible_units():
    with pytest.raises(ValueError, match="multiples"):
        system_charges_from_hamiltonian(np.diag([0.0, 1.0]), 8)
