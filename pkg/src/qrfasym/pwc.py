"""Finite cyclic clock models and relational (conditioned-on-the-clock) dynamics.

A d-level clock with energies 2 pi m / d carries a pointer basis given by the
discrete Fourier transform of its energy basis; one unit of evolution advances
the pointer by exactly one tick, and d units return it to the start. A pure
state of system (x) clock annihilated by the total charge modulo d encodes the
system's whole Schrodinger evolution in its correlations: contracting against
the pointer state at tick k yields the system state at time k, and measurement
statistics conditioned on a clock reading follow from time-averaging both
projectors over the cyclic group, with no external time parameter left over.

Conventions: hbar = 1, one clock tick is one time unit, and a system
Hamiltonian is compatible with a d-level clock when its eigenvalues are
integer multiples of 2 pi / d. All state comparisons here are insensitive to
global phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qmat import HermitianOperator, eigh, kron
from .symmetry import ChargeSpectrum

#: Below this |sin| the Dirichlet ratio switches to its limit form.
_DIRICHLET_SWITCH = 1e-8


# ---------------------------------------------------------------------------
# clock models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClockModel:
    """A d-level cyclic clock.

    ``h_r`` generates the ticks, ``time_basis`` holds the pointer states
    (one column per tick, expressed in the energy basis), ``t_r`` is the
    pointer observable, and ``charges`` are the integer energy quantum
    numbers modulo d.
    """

    d: int
    h_r: HermitianOperator
    time_basis: np.ndarray
    t_r: HermitianOperator
    charges: ChargeSpectrum

    def __post_init__(self):
        basis = np.array(self.time_basis, dtype=complex)
        basis.setflags(write=False)
        object.__setattr__(self, "time_basis", basis)

    def time_state(self, k: int) -> np.ndarray:
        """Pointer state at tick k, as a vector in the energy basis."""
        if not 0 <= k < self.d:
            raise ValueError(f"tick {k} out of range for a {self.d}-level clock")
        return self.time_basis[:, k]

    def advance(self, state: np.ndarray, t: float) -> np.ndarray:
        """Evolve a clock vector by time t under the clock Hamiltonian."""
        energies = np.real(np.diagonal(self.h_r.matrix))
        return np.exp(-1j * energies * t) * np.asarray(state, dtype=complex)

    def orbit_state(self, t: float) -> np.ndarray:
        """The zero-hour pointer state carried along the group orbit."""
        return self.advance(self.time_state(0), t)


def psw_clock(d: int) -> ClockModel:
    """Peres-Salecker-Wigner clock on d levels.

    Energies 2 pi m / d; pointer states are the DFT of the energy basis,
    so one unit of evolution shifts tick k to k + 1 mod d.
    """
    d = int(d)
    if d < 2:
        raise ValueError(f"clock dimension must be at least 2, got {d}")
    m = np.arange(d)
    h_r = HermitianOperator.from_diagonal(2.0 * np.pi * m / d)
    time_basis = np.exp(-2j * np.pi * np.outer(m, m) / d) / np.sqrt(d)
    t_r = HermitianOperator(
        (time_basis * m) @ time_basis.conj().T, (d,)
    )
    return ClockModel(
        d=d,
        h_r=h_r,
        time_basis=time_basis,
        t_r=t_r,
        charges=ChargeSpectrum(tuple(range(d)), modulus=d),
    )


@dataclass(frozen=True)
class QubitClock(ClockModel):
    """Two-level clock: a binary of tics, 12h and 6h, one pi-lag apart.

    The pointer states are the balanced superpositions (|0> +- |1>)/sqrt(2).
    Being two-dimensional, the generator and pointer observable cannot be
    canonically conjugate; see :meth:`pauli_commutator`.
    """

    hour_names: tuple[str, str] = ("12h", "6h")

    def hour(self, state: np.ndarray) -> str:
        """Name of the pointer state closest to the given clock vector."""
        overlaps = np.abs(self.time_basis.conj().T @ np.asarray(state, dtype=complex))
        return self.hour_names[int(np.argmax(overlaps))]

    def pauli_commutator(self) -> np.ndarray:
        """The matrix [sigma_z, sigma_x] of the underlying Pauli pair.

        Equals 2i sigma_y: proportional to a Pauli, not to the identity, so
        the two-level clock cannot satisfy the canonical commutation
        relation. (Halving the generator, as some conventions do, changes
        the prefactor but not the conclusion.)
        """
        sz = np.diag([1.0, -1.0]).astype(complex)
        sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
        return sz @ sx - sx @ sz


def qubit_clock() -> QubitClock:
    """The d = 2 clock with its hour labels."""
    base = psw_clock(2)
    return QubitClock(
        d=base.d,
        h_r=base.h_r,
        time_basis=base.time_basis,
        t_r=base.t_r,
        charges=base.charges,
    )


def gaussian_clock_state(clock: ClockModel, center: float, width: float) -> np.ndarray:
    """Normalized Gaussian superposition of pointer states, wrapped on the ring.

    Tick amplitudes have magnitude proportional to
    exp(-(k - center)^2 / (4 width^2)) with periodic images summed in, and
    carry the linear phase that centers the energy distribution
    mid-spectrum, away from the spectral wrap. On such states the pointer
    and generator come close to canonical conjugates
    ([T, H] |psi> about i |psi>), improving with the clock dimension.
    """
    d = clock.d
    center = float(center)
    width = float(width)
    if not 0.0 < width < d / 4.0:
        raise ValueError(f"width must lie in (0, d/4), got {width}")
    if not 0.0 <= center < d:
        raise ValueError(f"center must lie in [0, d), got {center}")
    k = np.arange(d, dtype=float)
    amplitudes = np.zeros(d)
    for image in range(-2, 3):
        amplitudes += np.exp(-((k - center + image * d) ** 2) / (4.0 * width**2))
    amplitudes /= np.linalg.norm(amplitudes)
    phased = amplitudes * np.exp(2j * np.pi * (d // 2) * k / d)
    vec = clock.time_basis @ phased
    return vec / np.linalg.norm(vec)


# ---------------------------------------------------------------------------
# angle representation
# ---------------------------------------------------------------------------


def angle_amplitude(state, theta):
    """Wave function over the angle circle, psi(theta) = sum_m v_m e^{i m theta} / sqrt(2 pi).

    ``state`` holds amplitudes in the energy basis (index m). Accepts a
    scalar angle or an array of angles; 2 pi periodic.
    """
    v = np.asarray(state, dtype=complex).reshape(-1)
    th = np.asarray(theta, dtype=float)
    m = np.arange(v.size)
    amp = np.exp(1j * np.multiply.outer(th, m)) @ v / np.sqrt(2.0 * np.pi)
    return complex(amp) if th.ndim == 0 else amp


def time_state_angle_form(d: int, k: int, theta):
    """Closed form of a pointer state's angle wave function (real Dirichlet ratio).

    sin(d delta / 2) / sin(delta / 2) / sqrt(2 pi d) with delta = theta -
    2 pi k / d; the removable singularities take their limit value, which
    at the peak is sqrt(d / (2 pi)).
    """
    th = np.asarray(theta, dtype=float)
    delta = th - 2.0 * np.pi * k / d
    num = np.sin(d * delta / 2.0)
    den = np.sin(delta / 2.0)
    near = np.abs(den) < _DIRICHLET_SWITCH
    safe_den = np.where(near, 1.0, den)
    ratio = np.where(
        near,
        d * np.cos(d * delta / 2.0) / np.cos(delta / 2.0),
        num / safe_den,
    )
    value = ratio / np.sqrt(2.0 * np.pi * d)
    return float(value) if th.ndim == 0 else value


def overlap_decay(clock: ClockModel, theta: float) -> float:
    """|<phi(0)| U(theta) |phi(0)>| for the uniform (maximum likelihood) pointer state.

    Vanishes at every nonzero multiple of 2 pi / d and decays with the clock
    dimension at fixed angle: larger clocks distinguish orientations better.
    """
    phi0 = clock.time_state(0)
    u = np.exp(-1j * float(theta) * clock.charges.as_array())
    return float(abs(np.vdot(phi0, u * phi0)))


# ---------------------------------------------------------------------------
# history states and relational dynamics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HistoryState:
    """Pure state of system (x) clock read as a record of the system's history.

    ``amplitudes[k]`` is the weight of tick k. The physically meaningful
    histories sit in the zero sector of the total charge modulo d;
    :meth:`constraint_residual` measures the violation, which factory-built
    histories keep at round-off level.
    """

    vector: np.ndarray
    clock: ClockModel
    s_charges: ChargeSpectrum
    h_s: HermitianOperator = field(init=False)
    amplitudes: np.ndarray = field(init=False)

    def __post_init__(self):
        d = self.clock.d
        if self.s_charges.modulus is None:
            reduced = ChargeSpectrum(self.s_charges.charges, modulus=d)
        elif self.s_charges.modulus == d:
            reduced = self.s_charges
        else:
            raise ValueError(
                f"system charges carry modulus {self.s_charges.modulus}, clock has {d}"
            )
        v = np.array(self.vector, dtype=complex).reshape(-1)
        if v.size != reduced.dim * d:
            raise ValueError(
                f"vector length {v.size} is not system ({reduced.dim}) times clock ({d})"
            )
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"history vector norm is {norm!r}, not 1")
        v.setflags(write=False)
        h_s = HermitianOperator.from_diagonal(
            2.0 * np.pi * reduced.as_array() / d
        )
        amplitudes = np.array(
            [np.linalg.norm(v.reshape(reduced.dim, d) @ self.clock.time_basis[:, k].conj())
             for k in range(d)]
        )
        amplitudes.setflags(write=False)
        object.__setattr__(self, "vector", v)
        object.__setattr__(self, "s_charges", reduced)
        object.__setattr__(self, "h_s", h_s)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def system_dim(self) -> int:
        return self.s_charges.dim

    def total_charge_labels(self) -> np.ndarray:
        """Total charge modulo d of every joint basis index."""
        d = self.clock.d
        return (
            np.add.outer(self.s_charges.as_array(), np.arange(d)) % d
        ).reshape(-1)

    def constraint_residual(self) -> float:
        """Norm of the component outside the zero total-charge sector."""
        outside = self.vector[self.total_charge_labels() != 0]
        return float(np.linalg.norm(outside))


def history_from_projection(
    psi_s0: np.ndarray, s_charges: ChargeSpectrum, clock: ClockModel
) -> HistoryState:
    """History state from projecting psi_S (x) |tick 0> onto the symmetric sector.

    The projection never needs unitary evolution, yet its relational states
    reproduce the Schrodinger orbit of ``psi_s0`` exactly, one tick per time
    unit. Raises if the product state has no weight in the zero sector.
    """
    psi = np.asarray(psi_s0, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"initial system state norm is {norm!r}, not 1")
    if s_charges.dim != psi.size:
        raise ValueError(
            f"charge count {s_charges.dim} does not match system dimension {psi.size}"
        )
    d = clock.d
    reduced = ChargeSpectrum(s_charges.charges, modulus=d)
    joint = np.kron(psi, clock.time_state(0))
    labels = (np.add.outer(reduced.as_array(), np.arange(d)) % d).reshape(-1)
    projected = np.where(labels == 0, joint, 0.0)
    weight = float(np.linalg.norm(projected))
    if weight < 1e-12:
        raise ValueError("initial state has no weight in the zero total-charge sector")
    return HistoryState(projected / weight, clock, reduced)


def relational_state(history: HistoryState, k: int) -> tuple[np.ndarray, float]:
    """System state conditioned on the clock reading tick k.

    Returns the unnormalized contraction <tick k | history> and its squared
    norm (the probability weight of that tick).
    """
    d = history.clock.d
    if not 0 <= k < d:
        raise ValueError(f"tick {k} out of range for a {d}-level clock")
    bra = history.clock.time_basis[:, k].conj()
    psi = history.vector.reshape(history.system_dim, d) @ bra
    return psi, float(np.vdot(psi, psi).real)


def _phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """min over phi of ||a - e^{i phi} b|| for unit vectors, computed stably."""
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
    return float(np.linalg.norm(a - phase * b))


def schrodinger_residual(history: HistoryState) -> float:
    """Worst-tick distance between relational states and direct evolution.

    For each tick k, compares the normalized relational state with
    exp(-i H_S k) applied to the tick-0 state, up to global phase; returns
    the maximum over ticks. Zero (to round-off) for projection-built
    histories with clock-compatible system Hamiltonians.
    """
    psi0, w0 = relational_state(history, 0)
    if w0 < 1e-14:
        raise ValueError("tick 0 carries no weight; no initial state to evolve")
    psi0 = psi0 / np.sqrt(w0)
    energies = np.real(np.diagonal(history.h_s.matrix))
    worst = 0.0
    for k in range(history.clock.d):
        psi_k, w_k = relational_state(history, k)
        if w_k < 1e-14:
            continue
        evolved = np.exp(-1j * energies * k) * psi0
        worst = max(worst, _phase_aligned_distance(evolved, psi_k / np.sqrt(w_k)))
    return worst


def relational_fidelities(history: HistoryState) -> np.ndarray:
    """Per-tick |<relational state | directly evolved state>|^2."""
    psi0, w0 = relational_state(history, 0)
    if w0 < 1e-14:
        raise ValueError("tick 0 carries no weight; no initial state to evolve")
    psi0 = psi0 / np.sqrt(w0)
    energies = np.real(np.diagonal(history.h_s.matrix))
    out = np.empty(history.clock.d)
    for k in range(history.clock.d):
        psi_k, w_k = relational_state(history, k)
        if w_k < 1e-14:
            out[k] = np.nan
            continue
        evolved = np.exp(-1j * energies * k) * psi0
        out[k] = abs(np.vdot(psi_k / np.sqrt(w_k), evolved)) ** 2
    return out


def _outcome_projector(observable: HermitianOperator, outcome) -> np.ndarray:
    """Projector for an outcome: an int indexes the distinct eigenvalues ascending."""
    if isinstance(outcome, np.ndarray) or hasattr(outcome, "matrix"):
        proj = np.asarray(getattr(outcome, "matrix", outcome), dtype=complex)
        if np.abs(proj @ proj - proj).max() > 1e-10:
            raise ValueError("outcome projector is not idempotent")
        return proj
    dec = eigh(observable)
    distinct: list[list[int]] = []
    for i, w in enumerate(dec.eigenvalues):
        if distinct and abs(w - dec.eigenvalues[distinct[-1][-1]]) <= 1e-9:
            distinct[-1].append(i)
        else:
            distinct.append([i])
    index = int(outcome)
    if not 0 <= index < len(distinct):
        raise ValueError(
            f"outcome index {index} out of range for {len(distinct)} distinct eigenvalues"
        )
    cols = dec.eigenvectors[:, distinct[index]]
    return cols @ cols.conj().T


def conditional_probability(
    history: HistoryState, observable: HermitianOperator, outcome, k: int
) -> float:
    """Probability of an outcome on the system given the clock reads tick k.

    Evaluates the two-projector time average

        p(o|k) = sum_T tr[P_o(T) P_k(T) rho P_k(T)] / sum_T tr[P_k(T) rho]

    with T running over one full clock cycle (the exact cyclic average, so
    no coordinate-time limit is needed). For symmetric pure histories the
    summand is T-independent and the value reduces to the Born rule on the
    relational state at tick k.
    """
    d = history.clock.d
    if not 0 <= k < d:
        raise ValueError(f"tick {k} out of range for a {d}-level clock")
    ds = history.system_dim
    p_o = np.kron(_outcome_projector(observable, outcome), np.eye(d))
    tick = history.clock.time_state(k)
    p_k = np.kron(np.eye(ds), np.outer(tick, tick.conj()))
    rho = np.outer(history.vector, history.vector.conj())
    h_total = kron(history.h_s, np.eye(d)) + kron(np.eye(ds), history.clock.h_r)
    dec = eigh(h_total)
    v = dec.eigenvectors
    numerator = 0.0
    denominator = 0.0
    for t in range(d):
        u = (v * np.exp(-1j * dec.eigenvalues * t)) @ v.conj().T
        rho_t = u @ rho @ u.conj().T
        pinched = p_k @ rho_t @ p_k
        denominator += float(np.trace(pinched).real)
        numerator += float(np.trace(p_o @ pinched).real)
    if denominator < 1e-12:
        raise ValueError(f"the clock never reads tick {k}; conditional undefined")
    return numerator / denominator


def corrupt_tick(history: HistoryState, tick: int) -> HistoryState:
    """Replace one tick's relational state with an orthogonal one.

    Diagnostic negative control: the result breaks the symmetry constraint
    and the relational dynamics, which the residual checks must detect.
    """
    psi, weight = relational_state(history, tick)
    if weight < 1e-14:
        raise ValueError(f"tick {tick} carries no weight; nothing to corrupt")
    psi_hat = psi / np.sqrt(weight)
    j = int(np.argmin(np.abs(psi_hat)))
    basis = np.zeros_like(psi_hat)
    basis[j] = 1.0
    orth = basis - np.vdot(psi_hat, basis) * psi_hat
    orth /= np.linalg.norm(orth)
    pointer = history.clock.time_state(tick)
    vector = history.vector + np.kron(np.sqrt(weight) * orth - psi, pointer)
    vector /= np.linalg.norm(vector)
    return HistoryState(vector, history.clock, history.s_charges)


def system_charges_from_hamiltonian(
    hamiltonian, d: int, tol: float = 1e-9
) -> ChargeSpectrum:
    """Integer mod-d charges of a diagonal system Hamiltonian.

    Valid system Hamiltonians for a d-level clock have eigenvalues that are
    integer multiples of 2 pi / d; anything else is rejected.
    """
    mat = np.asarray(getattr(hamiltonian, "matrix", hamiltonian))
    off = float(np.abs(mat - np.diag(np.diagonal(mat))).max())
    if off > 1e-12:
        raise ValueError("system Hamiltonian must be diagonal in the charge basis")
    ratios = np.real(np.diagonal(mat)) * d / (2.0 * np.pi)
    rounded = np.rint(ratios)
    if float(np.abs(ratios - rounded).max()) > tol:
        raise ValueError(
            f"eigenvalues are not multiples of 2 pi / {d} within {tol}"
        )
    return ChargeSpectrum(tuple(int(c) for c in rounded), modulus=int(d))
